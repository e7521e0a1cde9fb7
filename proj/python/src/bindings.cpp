#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fixpoint/catalog.hpp"
#include "fixpoint/dismantle.hpp"
#include "fixpoint/fpp.hpp"
#include "fixpoint/interval_lab.hpp"
#include "fixpoint/io.hpp"
#include "fixpoint/selection.hpp"

namespace py = pybind11;
using namespace fixpoint;
namespace iv = fixpoint::interval;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::string rat(const iv::Rational& q) { return iv::to_string(q); }

py::list intervals(const iv::IntervalSet& s) {
  py::list out;
  for (const auto& i : s.intervals()) out.append(py::make_tuple(rat(i.lo), rat(i.hi)));
  return out;
}

}  // namespace

PYBIND11_MODULE(_fixpoint, m) {
  m.doc() = "Fixed point properties of finite posets and finite T0 spaces";

  py::register_exception<Error>(m, "FixpointError", PyExc_ValueError);

  py::class_<Poset>(m, "Poset")
      .def(py::init([](std::size_t n, std::vector<Cover> covers, std::vector<std::string> labels) {
             return Poset::from_covers(n, covers, std::move(labels));
           }),
           py::arg("n"), py::arg("covers") = std::vector<Cover>{}, py::arg("labels") = std::vector<std::string>{})
      .def_static("chain", &Poset::chain)
      .def_static("antichain", &Poset::antichain)
      .def("__len__", &Poset::size)
      .def("leq", &Poset::leq)
      .def("covers", &Poset::covers)
      .def("label", &Poset::label)
      .def_property_readonly("labels", &Poset::labels)
      .def_property_readonly("top", &Poset::top)
      .def_property_readonly("bottom", &Poset::bottom)
      .def("__eq__", [](const Poset& a, const Poset& b) { return a == b; })
      .def("to_json", [](const Poset& p, const std::string& name) { return to_py(poset_to_json(p, name)); },
           py::arg("name") = "")
      .def("__repr__", [](const Poset& p) { return "<Poset with " + std::to_string(p.size()) + " elements>"; });

  m.def("parse_poset", [](const std::string& text) {
    auto doc = parse_poset(text);
    return py::make_tuple(doc.name, doc.poset);
  });
  m.def("read_poset_file", [](const std::filesystem::path& path) {
    auto doc = read_poset_file(path);
    return py::make_tuple(doc.name, doc.poset);
  });
  m.def("product", [](const Poset& a, const Poset& b) { return product(a, b); });
  m.def("dual", &dual);
  m.def("is_connected", &is_connected);
  m.def("canonical_form", [](const Poset& p) { return to_hex(canonical_form(p)); });
  m.def("iso_classes", &iso_classes);

  m.def("map_count", [](const Poset& dom, const Poset& cod, std::size_t max_maps) {
    MapSpaceOptions options;
    options.max_maps = max_maps;
    return enumerate_maps(dom, cod, options).size();
  }, py::arg("dom"), py::arg("cod"), py::arg("max_maps") = MapSpaceOptions{}.max_maps);

  m.def("has_fpp", [](const Poset& p) {
    const auto r = has_fpp(p);
    return py::make_tuple(r.holds, r.witness ? py::cast(r.witness->image()) : py::none());
  }, "Returns (holds, fixed-point-free map image or None).");

  m.def("find_selection_map", [](const Poset& p) { return to_py(selection_json(find_selection_map(p))); });

  m.def("core", [](const Poset& p) { return to_py(core_json(p, core(p))); });

  m.def("is_retract", [](const Poset& y, const Poset& x) { return find_retraction(share(y), share(x)).has_value(); },
        py::arg("y"), py::arg("x"));

  m.def("fpp_with_respect_to", [](const Poset& x, const Poset& t) { return fpp_with_respect_to(share(x), share(t)).holds; },
        py::arg("x"), py::arg("t"));

  m.def("classify", [](const Poset& p) { return to_py(to_json(classify(p))); });

  m.def("scan", [](std::size_t max_n, std::size_t jobs, std::optional<std::filesystem::path> cache_dir) {
    ScanOptions options;
    options.max_n = max_n;
    options.jobs = jobs;
    options.cache_dir = std::move(cache_dir);
    ScanResult result;
    {
      py::gil_scoped_release release;
      result = scan(options);
    }
    py::list records;
    for (const auto& r : result.records) records.append(to_py(to_json(r)));
    py::list summary;
    for (const auto& s : result.summary) summary.append(to_py(to_json(s)));
    py::dict out;
    out["records"] = records;
    out["summary"] = summary;
    out["computed"] = result.computed;
    out["cache_hits"] = result.cache_hits;
    return out;
  }, py::arg("max_n"), py::arg("jobs") = 0, py::arg("cache_dir") = py::none());

  m.def("fixed_point_set", [](const std::string& t) { return intervals(iv::fixed_point_set(iv::parse_rational(t))); },
        "Fixed points of the interval family at t, as (lo, hi) pairs of 'num/den' strings.");

  m.def("radial_retraction", [](const std::vector<std::string>& x, bool outside_chart) {
    std::vector<iv::Rational> point;
    for (const auto& c : x) point.push_back(iv::parse_rational(c));
    const auto r = iv::radial_retraction(point, outside_chart);
    std::vector<std::string> coords;
    for (const auto& c : r.point) coords.push_back(rat(c));
    return py::make_tuple(coords, r.exact, rat(r.error_bound));
  }, py::arg("x"), py::arg("outside_chart") = false);

  m.def("banach_stability_gap", [](const std::string& k, const std::string& eps) {
    const auto kk = iv::parse_rational(k);
    const auto gap = iv::banach_stability_gap(iv::PiecewiseLinear::affine(kk, 0),
                                              iv::PiecewiseLinear::affine(kk, iv::parse_rational(eps)), kk);
    return py::make_tuple(rat(gap.lhs), rat(gap.rhs));
  }, py::arg("k"), py::arg("eps"), "Gap for f(x) = kx against g(x) = kx + eps on [0, 1].");
}
