#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fixpoint/dismantle.hpp"
#include "fixpoint/selection.hpp"

namespace fixpoint {

struct PosetDocument {
  std::string name;
  Poset poset;
};

/// Parses either the JSON format
///   {"name": ..., "elements": [...], "covers": [[lower, upper], ...]}
/// or the plain format: a line with n, then one "i j" line per cover i < j.
/// Blank lines and lines starting with '#' are ignored in the plain format.
PosetDocument parse_poset(std::string_view text);

PosetDocument read_poset_file(const std::filesystem::path& path);

/// JSON document in the input format; covers are the Hasse diagram.
nlohmann::json poset_to_json(const Poset& p, const std::string& name = "");

nlohmann::json fpp_report_json(const FppReport& fpp, const UniversalReport* universal);
nlohmann::json selection_json(const SelectionResult& result);
nlohmann::json core_json(const Poset& p, const CoreReport& report);

}  // namespace fixpoint
