#include "fixpoint/catalog.hpp"

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <thread>

#include "fixpoint/dismantle.hpp"
#include "fixpoint/selection.hpp"

namespace fixpoint {

std::vector<std::vector<Poset>> catalog_up_to(std::size_t max_n) {
  std::vector<std::vector<Poset>> out;
  out.push_back({Poset()});
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::map<std::string, Poset> seen;
    for (const Poset& base : out.back()) {
      const FiniteSpace ideals = to_space(base);
      for (const SubSet& below : ideals.opens) {
        std::vector<SubSet> up(n, SubSet(n));
        for (std::size_t i = 0; i + 1 < n; ++i) {
          for (std::size_t j = 0; j + 1 < n; ++j) {
            if (base.leq(static_cast<Element>(i), static_cast<Element>(j))) up[i].set(j);
          }
          if (below.test(i)) up[i].set(n - 1);
        }
        up[n - 1].set(n - 1);
        Poset candidate = Poset::from_relation(std::move(up));
        auto key = canonical_form(candidate);
        seen.try_emplace(std::move(key), std::move(candidate));
      }
    }
    std::vector<Poset> level;
    level.reserve(seen.size());
    for (auto& [key, p] : seen) level.push_back(std::move(p));
    out.push_back(std::move(level));
  }
  return out;
}

std::vector<Poset> iso_classes(std::size_t n) { return catalog_up_to(n).back(); }

const char* to_string(SelectionOutcome s) {
  switch (s) {
    case SelectionOutcome::Sat: return "sat";
    case SelectionOutcome::Unsat: return "unsat";
    case SelectionOutcome::Skipped: return "skipped(size)";
  }
  return "unknown";
}

nlohmann::json to_json(const ScanRecord& r) {
  nlohmann::json j;
  j["canonical"] = r.canonical;
  j["n"] = r.n;
  j["connected"] = r.connected;
  j["fpp"] = r.fpp;
  j["dismantlable"] = r.dismantlable;
  j["selection"] = to_string(r.selection);
  j["map_count"] = r.map_count ? nlohmann::json(*r.map_count) : nlohmann::json("skipped(size)");
  j["has_extremum"] = r.has_extremum;
  j["iterate_certificate"] =
      r.iterate_certificate ? nlohmann::json(*r.iterate_certificate) : nlohmann::json(nullptr);
  j["map_bound"] = r.map_bound;
  auto covers = nlohmann::json::array();
  for (auto [lo, hi] : r.covers) covers.push_back({lo, hi});
  j["covers"] = covers;
  return j;
}

ScanRecord record_from_json(const nlohmann::json& j) {
  ScanRecord r;
  r.canonical = j.at("canonical").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  r.connected = j.at("connected").get<bool>();
  r.fpp = j.at("fpp").get<bool>();
  r.dismantlable = j.at("dismantlable").get<bool>();
  const auto sel = j.at("selection").get<std::string>();
  if (sel == "sat") {
    r.selection = SelectionOutcome::Sat;
  } else if (sel == "unsat") {
    r.selection = SelectionOutcome::Unsat;
  } else if (sel == "skipped(size)") {
    r.selection = SelectionOutcome::Skipped;
  } else {
    throw Error(ErrorCode::ParseError, "unknown selection outcome '" + sel + "'");
  }
  if (j.at("map_count").is_number()) r.map_count = j.at("map_count").get<std::size_t>();
  r.has_extremum = j.at("has_extremum").get<bool>();
  if (!j.at("iterate_certificate").is_null()) {
    r.iterate_certificate = j.at("iterate_certificate").get<bool>();
  }
  r.map_bound = j.at("map_bound").get<std::size_t>();
  for (const auto& c : j.at("covers")) r.covers.emplace_back(c.at(0).get<Element>(), c.at(1).get<Element>());
  return r;
}

ScanRecord classify(const Poset& p, ClassifyOptions options) {
  ScanRecord r;
  r.canonical = to_hex(canonical_form(p));
  r.n = p.size();
  r.covers = p.covers();
  r.map_bound = options.max_maps;
  r.connected = is_connected(p);
  r.fpp = has_fpp(p).holds;
  r.dismantlable = core(p).dismantlable;
  r.has_extremum = p.top().has_value() || p.bottom().has_value();

  std::shared_ptr<const MapPoset> space;
  try {
    MapSpaceOptions map_options;
    map_options.max_maps = options.max_maps;
    space = std::make_shared<const MapPoset>(enumerate_maps(share(p), share(p), map_options));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SizeLimit) throw;
  }
  if (space) {
    r.map_count = space->size();
    const auto result = find_selection_map(space);
    r.selection = result.sat() ? SelectionOutcome::Sat : SelectionOutcome::Unsat;
    if (r.has_extremum) {
      const auto phi = iterate_selection(space, p.top().has_value());
      r.iterate_certificate = !verify_selection(p, phi).has_value();
    }
    if (r.fpp != has_fpp_by_enumeration(*space)) {
      throw Error(ErrorCode::ConsistencyViolation,
                  "witness search and enumeration disagree on " + r.canonical);
    }
  }

  auto violation = [&](const std::string& what) {
    throw Error(ErrorCode::ConsistencyViolation, what + " for poset " + r.canonical);
  };
  if (r.fpp && !r.connected) violation("fpp without connectivity");
  if (r.dismantlable && !r.fpp) violation("dismantlable without fpp");
  if (r.selection == SelectionOutcome::Sat && !r.fpp) violation("selection map without fpp");
  if (r.dismantlable && r.selection == SelectionOutcome::Unsat) {
    violation("dismantlable without selection map");
  }
  if (r.has_extremum && r.selection == SelectionOutcome::Unsat) {
    violation("extremum without selection map");
  }
  if (r.iterate_certificate && !*r.iterate_certificate) violation("iterate certificate invalid");
  return r;
}

ResultCache::ResultCache(std::filesystem::path dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create cache directory " + dir.string());
  file_ = dir / "scan-records.jsonl";
  std::ifstream in(file_);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      auto record = record_from_json(nlohmann::json::parse(line));
      std::string key = record.canonical;
      records_.insert_or_assign(std::move(key), std::move(record));
    } catch (const std::exception& e) {
      ++skipped_lines_;
      std::cerr << "warning: skipping corrupted cache line " << lineno << " in " << file_.string()
                << ": " << e.what() << "\n";
    }
  }
}

std::optional<ScanRecord> ResultCache::lookup(const std::string& canonical,
                                              std::size_t map_bound) const {
  std::lock_guard lock(mutex_);
  auto it = records_.find(canonical);
  if (it == records_.end() || it->second.map_bound != map_bound) return std::nullopt;
  return it->second;
}

void ResultCache::store(const ScanRecord& record) {
  std::lock_guard lock(mutex_);
  std::ofstream out(file_, std::ios::app);
  if (!out) throw Error(ErrorCode::IoError, "cannot append to " + file_.string());
  out << to_json(record).dump() << "\n";
  records_.insert_or_assign(record.canonical, record);
}

nlohmann::json to_json(const ScanSummary& s) {
  return {{"n", s.n},
          {"classes", s.classes},
          {"connected", s.connected},
          {"fpp", s.fpp},
          {"dismantlable", s.dismantlable},
          {"sat", s.sat},
          {"unsat", s.unsat},
          {"skipped", s.skipped},
          {"fpp_without_selection", s.fpp_without_selection},
          {"minimal_reading_counterexamples", s.minimal_reading_counterexamples}};
}

ScanResult scan(const ScanOptions& options, const std::function<void(const ScanRecord&)>& emit) {
  if (options.max_n > options.max_n_bound) {
    throw_size_limit("scan size", options.max_n, options.max_n_bound);
  }
  const auto catalog = catalog_up_to(options.max_n);
  std::vector<const Poset*> tasks;
  for (std::size_t n = 1; n <= options.max_n; ++n) {
    for (const auto& p : catalog[n]) tasks.push_back(&p);
  }

  std::optional<ResultCache> cache;
  if (options.cache_dir) cache.emplace(*options.cache_dir);

  ScanResult result;
  std::vector<std::optional<ScanRecord>> slots(tasks.size());
  std::vector<char> from_cache(tasks.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::condition_variable ready;
  std::exception_ptr failure;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        std::optional<ScanRecord> record;
        bool hit = false;
        if (cache) {
          record = cache->lookup(to_hex(canonical_form(*tasks[i])), options.classify.max_maps);
          hit = record.has_value();
        }
        if (!record) {
          record = classify(*tasks[i], options.classify);
          if (cache) cache->store(*record);
        }
        std::lock_guard lock(mutex);
        slots[i] = std::move(record);
        from_cache[i] = hit;
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks.size());
      }
      ready.notify_all();
    }
  };

  std::size_t jobs = options.jobs ? options.jobs : std::thread::hardware_concurrency();
  jobs = std::max<std::size_t>(1, std::min(jobs, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);

  // Sequencer: hand records out strictly in task order.
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    std::unique_lock lock(mutex);
    ready.wait(lock, [&] { return slots[i].has_value() || failure; });
    if (failure) break;
    ScanRecord record = *slots[i];
    const bool hit = from_cache[i];
    lock.unlock();
    if (hit) {
      ++result.cache_hits;
    } else {
      ++result.computed;
    }
    if (emit) emit(record);
    result.records.push_back(std::move(record));
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  result.summary.resize(options.max_n);
  for (std::size_t n = 1; n <= options.max_n; ++n) result.summary[n - 1].n = n;
  for (const auto& r : result.records) {
    auto& s = result.summary[r.n - 1];
    ++s.classes;
    s.connected += r.connected;
    s.fpp += r.fpp;
    s.dismantlable += r.dismantlable;
    s.sat += r.selection == SelectionOutcome::Sat;
    s.unsat += r.selection == SelectionOutcome::Unsat;
    s.skipped += r.selection == SelectionOutcome::Skipped;
    s.fpp_without_selection += r.fpp && r.selection == SelectionOutcome::Unsat;
    s.minimal_reading_counterexamples += r.selection == SelectionOutcome::Unsat;
  }
  return result;
}

}  // namespace fixpoint
