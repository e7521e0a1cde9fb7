#include "fixpoint/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace fixpoint {

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n';
  return line;
}

PosetDocument parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(line_of(text, e.byte), e.what());
  }
  if (!doc.is_object()) throw ParseError(1, "top-level value must be an object");
  PosetDocument out;
  try {
    out.name = doc.value("name", "");
    std::vector<std::string> labels = doc.at("elements").get<std::vector<std::string>>();
    std::map<std::string, Element> index;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!index.emplace(labels[i], static_cast<Element>(i)).second) {
        throw Error(ErrorCode::DuplicateElement, "element '" + labels[i] + "' listed twice");
      }
    }
    std::vector<Cover> covers;
    for (const auto& c : doc.value("covers", nlohmann::json::array())) {
      if (!c.is_array() || c.size() != 2) throw ParseError(1, "cover must be a [lower, upper] pair");
      Element ends[2];
      for (int k = 0; k < 2; ++k) {
        const auto name = c[k].get<std::string>();
        auto it = index.find(name);
        if (it == index.end()) throw ParseError(1, "cover mentions unknown element '" + name + "'");
        ends[k] = it->second;
      }
      covers.emplace_back(ends[0], ends[1]);
    }
    const std::size_t n = labels.size();
    out.poset = Poset::from_covers(n, covers, std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, e.what());
  }
  return out;
}

PosetDocument parse_plain(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<Cover> covers;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!n) {
      long long value = -1;
      std::string rest;
      if (!(fields >> value) || value < 0 || (fields >> rest)) {
        throw ParseError(lineno, "expected element count");
      }
      n = static_cast<std::size_t>(value);
      continue;
    }
    long long lo = -1;
    long long hi = -1;
    std::string rest;
    if (!(fields >> lo >> hi) || (fields >> rest)) throw ParseError(lineno, "expected 'i j'");
    if (lo < 0 || hi < 0 || static_cast<std::size_t>(lo) >= *n ||
        static_cast<std::size_t>(hi) >= *n) {
      throw ParseError(lineno, "cover index out of range");
    }
    covers.emplace_back(static_cast<Element>(lo), static_cast<Element>(hi));
  }
  if (!n) throw ParseError(lineno, "missing element count");
  return {"", Poset::from_covers(*n, covers)};
}

}  // namespace

PosetDocument parse_poset(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text);
  return parse_plain(text);
}

PosetDocument read_poset_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  auto doc = parse_poset(buf.str());
  if (doc.name.empty()) doc.name = path.stem().string();
  return doc;
}

nlohmann::json poset_to_json(const Poset& p, const std::string& name) {
  nlohmann::json out;
  out["name"] = name;
  std::vector<std::string> elements;
  for (std::size_t i = 0; i < p.size(); ++i) elements.push_back(p.label(static_cast<Element>(i)));
  out["elements"] = elements;
  auto covers = nlohmann::json::array();
  for (auto [lo, hi] : p.covers()) covers.push_back({p.label(lo), p.label(hi)});
  out["covers"] = covers;
  return out;
}

nlohmann::json fpp_report_json(const FppReport& fpp, const UniversalReport* universal) {
  nlohmann::json out;
  out["fpp"] = fpp.holds;
  out["witness"] = fpp.witness ? nlohmann::json(fpp.witness->image()) : nlohmann::json(nullptr);
  if (universal) {
    out["universal"] = universal->holds;
  } else {
    out["universal"] = "skipped(size)";
  }
  out["nodes"] = fpp.stats.nodes;
  return out;
}

nlohmann::json selection_json(const SelectionResult& result) {
  nlohmann::json out;
  out["sat"] = result.sat();
  if (result.selection) {
    nlohmann::json choice = nlohmann::json::object();
    for (std::size_t k = 0; k < result.selection->choice.size(); ++k) {
      choice[std::to_string(k)] = result.selection->choice[k];
    }
    out["choice"] = choice;
  } else {
    out["choice"] = nullptr;
  }
  return out;
}

nlohmann::json core_json(const Poset& p, const CoreReport& report) {
  nlohmann::json out;
  out["dismantlable"] = report.dismantlable;
  auto seq = nlohmann::json::array();
  for (const auto& step : report.removal_sequence) {
    seq.push_back({{"element", p.label(step.element)}, {"kind", to_string(step.kind)}});
  }
  out["removal_sequence"] = seq;
  nlohmann::json core;
  std::vector<std::string> elements;
  for (Element e : report.core_elements) elements.push_back(p.label(e));
  core["elements"] = elements;
  auto covers = nlohmann::json::array();
  for (auto [lo, hi] : report.core.covers()) covers.push_back({elements[lo], elements[hi]});
  core["covers"] = covers;
  out["core"] = core;
  return out;
}

}  // namespace fixpoint
