// Command-line front end for the fixpoint library.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "fixpoint/catalog.hpp"
#include "fixpoint/dismantle.hpp"
#include "fixpoint/interval_lab.hpp"
#include "fixpoint/io.hpp"
#include "fixpoint/selection.hpp"

namespace {

using namespace fixpoint;
namespace iv = fixpoint::interval;

constexpr int kExitFalse = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitSizeLimit = 66;
constexpr int kExitInternal = 70;

struct Common {
  bool json = false;
  bool strict = false;
  std::size_t max_maps = 50000;
};

std::string join(const std::vector<Element>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << "]";
  return os.str();
}

MapSpaceOptions map_options(const Common& c) {
  MapSpaceOptions o;
  o.max_maps = c.max_maps;
  return o;
}

int run_check(const std::string& file, const Common& c) {
  const auto doc = read_poset_file(file);
  const auto p = share(doc.poset);
  const auto fpp = has_fpp(p);
  std::optional<UniversalReport> universal;
  try {
    universal = has_universal_fpp(p, map_options(c));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SizeLimit) throw;
  }
  if (c.json) {
    std::cout << fpp_report_json(fpp, universal ? &*universal : nullptr).dump() << "\n";
  } else {
    std::cout << "poset: " << doc.name << " (" << p->size() << " elements)\n";
    std::cout << "fixed point property: " << (fpp.holds ? "yes" : "no") << "\n";
    if (fpp.witness) std::cout << "fixed-point-free map: " << join(fpp.witness->image()) << "\n";
    std::cout << "universal (selection map): "
              << (universal ? (universal->holds ? "yes" : "no") : "skipped(size)") << "\n";
    std::cout << "search nodes: " << fpp.stats.nodes << "\n";
  }
  return c.strict && !fpp.holds ? kExitFalse : 0;
}

int run_selection(const std::string& file, const Common& c) {
  const auto doc = read_poset_file(file);
  const auto p = share(doc.poset);
  const auto result = find_selection_map(p, map_options(c));
  if (result.selection && verify_selection(*p, *result.selection)) {
    throw Error(ErrorCode::VerificationFailure, "certificate failed verification");
  }
  if (c.json) {
    std::cout << selection_json(result).dump() << "\n";
  } else {
    std::cout << "poset: " << doc.name << " (" << p->size() << " elements)\n";
    std::cout << "self-maps: " << result.space->size() << "\n";
    std::cout << "selection map: " << to_string(result.status) << "\n";
    if (result.fixed_point_free_map) {
      std::cout << "map " << *result.fixed_point_free_map << " has no fixed point: "
                << join(std::vector<Element>(result.space->image(*result.fixed_point_free_map).begin(),
                                             result.space->image(*result.fixed_point_free_map).end()))
                << "\n";
    }
    if (result.selection) std::cout << "certificate verified\n";
    std::cout << "search nodes: " << result.stats.nodes << "\n";
  }
  return c.strict && !result.sat() ? kExitFalse : 0;
}

int run_core(const std::string& file, const Common& c) {
  const auto doc = read_poset_file(file);
  const auto report = core(doc.poset);
  if (c.json) {
    std::cout << core_json(doc.poset, report).dump() << "\n";
  } else {
    std::cout << "poset: " << doc.name << " (" << doc.poset.size() << " elements)\n";
    for (const auto& step : report.removal_sequence) {
      std::cout << "remove " << doc.poset.label(step.element) << " (" << to_string(step.kind)
                << ")\n";
    }
    std::cout << "core: " << report.core.size() << " elements {";
    for (std::size_t i = 0; i < report.core_elements.size(); ++i) {
      std::cout << (i ? ", " : "") << doc.poset.label(report.core_elements[i]);
    }
    std::cout << "}\n";
    std::cout << "dismantlable: " << (report.dismantlable ? "yes" : "no") << "\n";
  }
  return c.strict && !report.dismantlable ? kExitFalse : 0;
}

int run_maps(const std::string& file, bool count_only, const Common& c) {
  const auto doc = read_poset_file(file);
  const auto space = enumerate_maps(doc.poset, doc.poset, map_options(c));
  if (c.json) {
    nlohmann::json out{{"count", space.size()}};
    if (!count_only) {
      auto tables = nlohmann::json::array();
      for (std::size_t k = 0; k < space.size(); ++k) {
        auto img = space.image(k);
        tables.push_back(std::vector<Element>(img.begin(), img.end()));
      }
      out["maps"] = tables;
    }
    std::cout << out.dump() << "\n";
  } else {
    std::cout << space.size() << "\n";
    if (!count_only) {
      for (std::size_t k = 0; k < space.size(); ++k) {
        auto img = space.image(k);
        std::cout << k << ": " << join(std::vector<Element>(img.begin(), img.end())) << "\n";
      }
    }
  }
  return 0;
}

int run_retract(const std::string& yfile, const std::string& xfile, const Common& c) {
  const auto y = read_poset_file(yfile);
  const auto x = read_poset_file(xfile);
  const auto found = find_retraction(share(y.poset), share(x.poset));
  if (c.json) {
    nlohmann::json out{{"retract", found.has_value()}};
    out["s"] = found ? nlohmann::json(found->section.image()) : nlohmann::json(nullptr);
    out["r"] = found ? nlohmann::json(found->retraction.image()) : nlohmann::json(nullptr);
    std::cout << out.dump() << "\n";
  } else if (found) {
    std::cout << x.name << " is a retract of " << y.name << "\n";
    std::cout << "s: " << join(found->section.image()) << "\n";
    std::cout << "r: " << join(found->retraction.image()) << "\n";
  } else {
    std::cout << x.name << " is not a retract of " << y.name << "\n";
  }
  return c.strict && !found ? kExitFalse : 0;
}

int run_scan(std::size_t max_n, std::size_t jobs, std::string cache_dir, const Common& c) {
  ScanOptions options;
  options.max_n = max_n;
  options.jobs = jobs;
  options.classify.max_maps = c.max_maps;
  if (cache_dir.empty()) {
    if (const char* env = std::getenv("FIXPOINT_CACHE"); env && *env) cache_dir = env;
  }
  if (!cache_dir.empty()) options.cache_dir = cache_dir;

  const auto result = scan(options, [&](const ScanRecord& r) {
    if (c.json) {
      std::cout << to_json(r).dump() << "\n";
    } else {
      std::cout << "n=" << r.n << " " << r.canonical << " connected=" << r.connected
                << " fpp=" << r.fpp << " dismantlable=" << r.dismantlable
                << " selection=" << to_string(r.selection) << " maps="
                << (r.map_count ? std::to_string(*r.map_count) : "skipped(size)") << "\n";
    }
  });
  if (c.json) {
    auto summary = nlohmann::json::array();
    for (const auto& s : result.summary) summary.push_back(to_json(s));
    std::cout << nlohmann::json{{"summary", summary}}.dump() << "\n";
  } else {
    for (const auto& s : result.summary) std::cout << "summary " << to_json(s).dump() << "\n";
  }
  std::cerr << "computed " << result.computed << ", cached " << result.cache_hits << "\n";
  return 0;
}

std::vector<iv::Rational> parse_point(const std::string& text) {
  std::vector<iv::Rational> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(iv::parse_rational(part));
  return out;
}

int run_demo_interval(const std::string& t_text, const Common& c) {
  const auto t = iv::parse_rational(t_text);
  const auto fix = iv::fixed_point_set(t);
  if (c.json) {
    std::cout << nlohmann::json{{"t", iv::to_string(t)}, {"fixed_points", iv::to_string(fix)}}.dump()
              << "\n";
  } else {
    std::cout << "Fix(f_" << iv::to_string(t) << ") = " << iv::to_string(fix) << "\n";
    const auto [left, right] = iv::no_selection_certificate();
    std::cout << "fixed point for t < 1: " << iv::to_string(left)
              << ", for t > 1: " << iv::to_string(right) << "\n";
  }
  return 0;
}

int run_demo_retraction(const std::string& x_text, bool outside, const Common& c) {
  const auto x = parse_point(x_text);
  const auto r = iv::radial_retraction(x, outside);
  std::vector<std::string> coords;
  for (const auto& q : r.point) coords.push_back(iv::to_string(q));
  if (c.json) {
    std::cout << nlohmann::json{{"point", coords},
                                {"exact", r.exact},
                                {"error_bound", iv::to_string(r.error_bound)}}
                     .dump()
              << "\n";
  } else {
    std::cout << "r(x) = (";
    for (std::size_t i = 0; i < coords.size(); ++i) std::cout << (i ? ", " : "") << coords[i];
    std::cout << ")" << (r.exact ? "" : " +- " + iv::to_string(r.error_bound)) << "\n";
  }
  return 0;
}

int run_demo_banach(const std::string& k_text, const std::string& eps_text, const Common& c) {
  const auto k = iv::parse_rational(k_text);
  const auto eps = iv::parse_rational(eps_text);
  const auto f = iv::PiecewiseLinear::affine(k, 0);
  const auto g = iv::PiecewiseLinear::affine(k, eps);
  const auto gap = iv::banach_stability_gap(f, g, k);
  const auto pf = iv::banach_fixed_point(f, k);
  const auto pg = iv::banach_fixed_point(g, k);
  if (c.json) {
    std::cout << nlohmann::json{{"k", iv::to_string(k)},
                                {"epsilon", iv::to_string(eps)},
                                {"p_f", iv::to_string(pf)},
                                {"p_g", iv::to_string(pg)},
                                {"lhs", iv::to_string(gap.lhs)},
                                {"rhs", iv::to_string(gap.rhs)}}
                     .dump()
              << "\n";
  } else {
    std::cout << "f(x) = " << iv::to_string(k) << " x, g(x) = f(x) + " << iv::to_string(eps) << "\n";
    std::cout << "p(f) = " << iv::to_string(pf) << ", p(g) = " << iv::to_string(pg) << "\n";
    std::cout << "|p(f) - p(g)| = " << iv::to_string(gap.lhs)
              << " <= sup|f - g| / (1 - K) = " << iv::to_string(gap.rhs) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed point properties of finite posets and finite spaces"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", common.json, "Machine-readable output");
    sub->add_flag("--strict", common.strict, "Exit with status 2 when the answer is negative");
    sub->add_option("--max-maps", common.max_maps, "Bound on the number of self-maps enumerated");
  };

  std::string file;
  std::string yfile;
  std::string xfile;
  bool count_only = false;
  std::size_t max_n = 5;
  std::size_t jobs = 0;
  std::string cache_dir;
  std::string t_text = "1/2";
  std::string x_text;
  bool outside = false;
  std::string k_text = "1/2";
  std::string eps_text = "1/8";

  auto* check = app.add_subcommand("check", "Decide the fixed point property");
  check->add_option("FILE", file, "Poset file")->required();
  add_common(check);

  auto* selection = app.add_subcommand("selection", "Search for a selection map");
  selection->add_option("FILE", file, "Poset file")->required();
  add_common(selection);

  auto* core_cmd = app.add_subcommand("core", "Remove beat points and report the core");
  core_cmd->add_option("FILE", file, "Poset file")->required();
  add_common(core_cmd);

  auto* maps = app.add_subcommand("maps", "Enumerate monotone self-maps");
  maps->add_option("FILE", file, "Poset file")->required();
  maps->add_flag("--count-only", count_only, "Print only the number of maps");
  add_common(maps);

  auto* scan_cmd = app.add_subcommand("scan", "Classify all posets up to isomorphism");
  scan_cmd->add_option("--max-n", max_n, "Largest poset size")->required();
  scan_cmd->add_option("--jobs", jobs, "Worker threads (default: all cores)");
  scan_cmd->add_option("--cache", cache_dir, "Result cache directory (env FIXPOINT_CACHE)");
  add_common(scan_cmd);

  auto* retract = app.add_subcommand("retract", "Search for a retraction of Y onto X");
  retract->add_option("YFILE", yfile, "Poset Y")->required();
  retract->add_option("XFILE", xfile, "Poset X")->required();
  add_common(retract);

  auto* demo = app.add_subcommand("demo", "Exact interval demonstrations");
  demo->require_subcommand(1);
  auto* demo_interval = demo->add_subcommand("interval", "Fixed points of the family f_t");
  demo_interval->add_option("--t", t_text, "Parameter t in [0, 2] as NUM/DEN");
  add_common(demo_interval);
  auto* demo_retraction = demo->add_subcommand("retraction", "Radial retraction onto the disk");
  demo_retraction->add_option("--x", x_text, "Point a/b,c/d[,e/f]")->required();
  demo_retraction->add_flag("--outside", outside, "Point lies outside the chart");
  add_common(demo_retraction);
  auto* demo_banach = demo->add_subcommand("banach", "Stability of Banach fixed points");
  demo_banach->add_option("--k", k_text, "Contraction constant K as NUM/DEN");
  demo_banach->add_option("--eps", eps_text, "Perturbation epsilon as NUM/DEN");
  add_common(demo_banach);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) return run_check(file, common);
    if (*selection) return run_selection(file, common);
    if (*core_cmd) return run_core(file, common);
    if (*maps) return run_maps(file, count_only, common);
    if (*scan_cmd) return run_scan(max_n, jobs, cache_dir, common);
    if (*retract) return run_retract(yfile, xfile, common);
    if (*demo_interval) return run_demo_interval(t_text, common);
    if (*demo_retraction) return run_demo_retraction(x_text, outside, common);
    if (*demo_banach) return run_demo_banach(k_text, eps_text, common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::CycleDetected:
      case ErrorCode::DuplicateElement:
      case ErrorCode::IoError:
      case ErrorCode::IndexOutOfRange:
      case ErrorCode::OutOfDomain:
      case ErrorCode::NotAContraction:
        return kExitData;
      case ErrorCode::SizeLimit:
        return kExitSizeLimit;
      default:
        return kExitInternal;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
