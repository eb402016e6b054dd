#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hbc/fixtures.hpp"
#include "hbc/report.hpp"

namespace py = pybind11;
using namespace hbc;

namespace {

std::optional<genus::Normalization> normalization(const std::optional<std::pair<int, int>>& n) {
  if (!n) return std::nullopt;
  return genus::Normalization{n->first, n->second};
}

GroupPtr group_of(const std::string& pc3) { return std::make_shared<const PcPresentation>(parse_pc3(pc3)); }

}  // namespace

// Every function returns the JSON text of the corresponding report; the
// Python package decodes it.
PYBIND11_MODULE(_hbc, m) {
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  m.attr("__version__") = report::kVersion;

  m.def("classify", [](long long c) { return report::classify(c).dump(); }, py::arg("c"));
  m.def(
      "scan",
      [](long long max_c, int threads) {
        py::gil_scoped_release nogil;
        return report::scan(max_c, threads).dump();
      },
      py::arg("max_c"), py::arg("threads") = 0);
  m.def(
      "lattice",
      [](long long q1, long long q2, long long q3, std::optional<std::pair<int, int>> n) {
        std::string dot;
        auto r = report::lattice(genus::make_triple(q1, q2, q3), normalization(n), &dot);
        return py::make_tuple(r.dump(), dot);
      },
      py::arg("q1"), py::arg("q2"), py::arg("q3"), py::arg("normalization") = py::none());
  m.def(
      "predict",
      [](long long c, std::optional<std::pair<int, int>> n, bool tower) {
        py::gil_scoped_release nogil;
        return report::predict(c, normalization(n), tower).dump();
      },
      py::arg("c"), py::arg("normalization") = py::none(), py::arg("tower") = false);
  m.def(
      "census",
      [](std::optional<std::string> scenario, std::uint64_t seed) {
        py::gil_scoped_release nogil;
        return report::census(scenario, seed).dump();
      },
      py::arg("scenario") = py::none(), py::arg("seed") = 20240917);
  m.def("polynomial", [](long long c) { return report::polynomial(c).dump(); }, py::arg("c"));
  m.def(
      "validate_fixtures",
      [](std::optional<std::string> dir) { return report::validate_fixtures(dir ? *dir : fixtures::data_dir()).dump(); },
      py::arg("dir") = py::none());
  m.def(
      "pattern",
      [](const std::string& pc3, bool second_order) {
        const GroupPtr g = group_of(pc3);
        py::gil_scoped_release nogil;
        return report::pattern(g, second_order).dump();
      },
      py::arg("pc3"), py::arg("second_order") = true);
  m.def(
      "hbc_search",
      [](int max_log_order, int threads, std::uint64_t seed) {
        py::gil_scoped_release nogil;
        AutOptions aut;
        aut.seed = seed;
        std::string dot;
        auto r = report::hbc_search(max_log_order, threads, aut, &dot);
        return std::make_pair(r.dump(), dot);
      },
      py::arg("max_log_order") = 8, py::arg("threads") = 0, py::arg("seed") = 20240917);
  m.def(
      "tree",
      [](const std::string& root, int max_log_order, bool all_descendants, bool prune, bool fingerprints, int threads) {
        report::TreeRequest req;
        req.root = root == "2" || root == "3"
                       ? std::make_shared<const PcPresentation>(PcPresentation::elementary_abelian(std::stoi(root)))
                       : group_of(root);
        req.max_log_order = max_log_order;
        req.all_descendants = all_descendants;
        req.closed_hbc_pruning = prune;
        req.fingerprints = fingerprints;
        req.threads = threads;
        py::gil_scoped_release nogil;
        std::string dot;
        auto r = report::tree(req, &dot);
        return std::make_pair(r.dump(), dot);
      },
      py::arg("root") = "3", py::arg("max_log_order") = 6, py::arg("all_descendants") = false, py::arg("prune") = false,
      py::arg("fingerprints") = false, py::arg("threads") = 0);
}
