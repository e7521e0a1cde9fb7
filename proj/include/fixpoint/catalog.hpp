#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fixpoint/poset.hpp"

namespace fixpoint {

/// One representative per isomorphism class of posets on n elements, sorted
/// by canonical form. Classes on n elements are grown from those on n - 1 by
/// adding a new maximal element above every down-set.
std::vector<Poset> iso_classes(std::size_t n);

/// Representatives for every size 0..max_n (index = size).
std::vector<std::vector<Poset>> catalog_up_to(std::size_t max_n);

enum class SelectionOutcome { Sat, Unsat, Skipped };

const char* to_string(SelectionOutcome s);

struct ScanRecord {
  std::string canonical;  // hex encoding of canonical_form
  std::size_t n = 0;
  bool connected = false;
  bool fpp = false;
  bool dismantlable = false;
  SelectionOutcome selection = SelectionOutcome::Skipped;
  std::optional<std::size_t> map_count;
  /// Has a least or greatest element.
  bool has_extremum = false;
  /// Whether the iterate certificate verified; unset when not applicable.
  std::optional<bool> iterate_certificate;
  /// Map-space bound the record was computed under.
  std::size_t map_bound = 0;
  std::vector<Cover> covers;

  friend bool operator==(const ScanRecord&, const ScanRecord&) = default;
};

nlohmann::json to_json(const ScanRecord& r);
ScanRecord record_from_json(const nlohmann::json& j);

struct ClassifyOptions {
  std::size_t max_maps = 50000;
};

/// Runs every decision procedure on p and checks the implication lattice
/// (dismantlable => selection => fpp => connected, extremum => iterate
/// certificate). Throws ConsistencyViolation on any breach.
ScanRecord classify(const Poset& p, ClassifyOptions options = {});

/// Append-only JSON-lines store keyed by canonical form. Unreadable lines are
/// skipped with a warning.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  std::optional<ScanRecord> lookup(const std::string& canonical, std::size_t map_bound) const;
  void store(const ScanRecord& record);

  std::size_t skipped_lines() const noexcept { return skipped_lines_; }
  const std::filesystem::path& file() const noexcept { return file_; }

 private:
  std::filesystem::path file_;
  std::map<std::string, ScanRecord> records_;
  std::size_t skipped_lines_ = 0;
  mutable std::mutex mutex_;
};

struct ScanOptions {
  std::size_t max_n = 5;
  std::size_t jobs = 0;  // 0: hardware concurrency
  std::optional<std::filesystem::path> cache_dir;
  ClassifyOptions classify;
  std::size_t max_n_bound = 7;
};

struct ScanSummary {
  std::size_t n = 0;
  std::size_t classes = 0;
  std::size_t connected = 0;
  std::size_t fpp = 0;
  std::size_t dismantlable = 0;
  std::size_t sat = 0;
  std::size_t unsat = 0;
  std::size_t skipped = 0;
  /// FPP holds but no selection map exists.
  std::size_t fpp_without_selection = 0;
  /// Unsat posets; each has a minimal element, so each contradicts the
  /// literal "minimal or maximal element" reading.
  std::size_t minimal_reading_counterexamples = 0;
};

struct ScanResult {
  std::vector<ScanRecord> records;
  std::vector<ScanSummary> summary;
  std::size_t computed = 0;
  std::size_t cache_hits = 0;
};

nlohmann::json to_json(const ScanSummary& s);

/// Classifies every isomorphism class with 1..max_n elements on a worker
/// pool. Records reach `emit` in (n, canonical) order regardless of the
/// number of workers.
ScanResult scan(const ScanOptions& options,
                const std::function<void(const ScanRecord&)>& emit = nullptr);

}  // namespace fixpoint
