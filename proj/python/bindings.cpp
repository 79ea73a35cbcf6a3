#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include <sstream>

#include "evendct/cli.hpp"
#include "evendct/complexity.hpp"
#include "evendct/factorizer.hpp"
#include "evendct/fold.hpp"
#include "evendct/oracle.hpp"
#include "evendct/plan_io.hpp"

namespace py = pybind11;
using namespace evendct;

namespace {

py::array_t<double> to_numpy(const DenseMatrix& m) {
  py::array_t<double> a({m.rows(), m.cols()});
  auto v = a.mutable_unchecked<2>();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v(r, c) = m(r, c);
  return a;
}

py::tuple counts_tuple(const OpCount& c) { return py::make_tuple(c.mu, c.alpha, c.sigma); }

}  // namespace

PYBIND11_MODULE(_evendct, m) {
  m.doc() = "Fast even-length DCT flowgraphs";

  py::class_<OpCount>(m, "OpCount")
      .def_readonly("mu", &OpCount::mu)
      .def_readonly("alpha", &OpCount::alpha)
      .def_readonly("sigma", &OpCount::sigma)
      .def("as_tuple", &counts_tuple)
      .def("__eq__", [](const OpCount& a, const OpCount& b) { return a == b; })
      .def("__repr__", [](const OpCount& c) { return "OpCount(" + c.to_string() + ")"; });

  py::class_<PlanGraph>(m, "Plan")
      .def_property_readonly("n_inputs", &PlanGraph::n_inputs)
      .def_property_readonly("n_outputs", &PlanGraph::n_outputs)
      .def_property_readonly("n_nodes", [](const PlanGraph& p) { return p.nodes().size(); })
      .def("evaluate", [](const PlanGraph& p, const std::vector<double>& x) { return evaluate(p, x); }, py::arg("x"))
      .def("to_matrix", [](const PlanGraph& p) { return to_numpy(to_matrix(p)); })
      .def("count_ops", &count_ops)
      .def("transpose", &transpose)
      .def("fold", [](const PlanGraph& p) { return fold(p); })
      .def("to_json", [](const PlanGraph& p) { return to_json(p); })
      .def("to_dot", &to_dot);

  py::class_<ScaledFactorization>(m, "ScaledFactorization")
      .def_readonly("plan", &ScaledFactorization::plan)
      .def_readonly("pi", &ScaledFactorization::pi)
      .def_readonly("delta", &ScaledFactorization::delta)
      .def("reconstruct", [](const ScaledFactorization& s) { return to_numpy(reconstruct_matrix(s)); })
      .def("apply", [](const ScaledFactorization& s, const std::vector<double>& x) { return apply_scaled(s, x); },
           py::arg("x"))
      .def("to_json", [](const ScaledFactorization& s) { return to_json(s.plan, &s.pi, &s.delta); });

  m.def("kok_plan", [](std::size_t n) { return kok_plan(n); }, py::arg("n"));
  m.def("scaled_plan", [](std::size_t n) { return scaled_plan(n); }, py::arg("n"));
  m.def("dct3_plan", [](std::size_t n) { return dct3_plan(n); }, py::arg("n"));
  m.def("dct3_plan_via_scaled", [](std::size_t n) { return dct3_plan_via_scaled(n); }, py::arg("n"));
  m.def("fold", [](const PlanGraph& p) { return fold(p); }, py::arg("plan"));
  m.def("fold_scaled", [](const ScaledFactorization& s) { return fold(s); }, py::arg("factorization"));
  m.def("plan_from_json", [](const std::string& text) {
    PlanFile f = plan_from_json(text);
    if (f.pi) return py::cast(ScaledFactorization{f.plan, *f.pi, *f.delta});
    return py::cast(f.plan);
  });
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line in-process; returns (exit_code, stdout, stderr).");

  py::module_ o = m.def_submodule("oracle", "Dense reference matrices");
  o.def("dct2", [](std::size_t n) { return to_numpy(oracle::dct2_matrix(n)); });
  o.def("dct3", [](std::size_t n) { return to_numpy(oracle::dct3_matrix(n)); });
  o.def("dct4", [](std::size_t n) { return to_numpy(oracle::dct4_matrix(n)); });
  o.def("r", [](std::size_t n) { return to_numpy(oracle::r_matrix(n)); });
  o.def("d", [](std::size_t n) { return to_numpy(oracle::d_matrix(n)); });
  o.def("j", [](std::size_t n) { return to_numpy(oracle::j_matrix(n)); });
  o.def("b", [](std::size_t n) { return to_numpy(oracle::b_matrix(n)); });
  o.def("p", [](std::size_t n) { return to_numpy(oracle::p_matrix(n)); });

  py::module_ c = m.def_submodule("complexity", "Closed-form operation counts");
  auto base = [](long long q) { return complexity::ComplexityRegistry::standard().at(q); };
  c.def("kok_counts", [base](long long q, unsigned mm) { return complexity::kok_counts(base(q), mm); });
  c.def("scaled_counts", [base](long long q, unsigned mm) { return complexity::scaled_counts(base(q), mm); });
  c.def("savings", [base](long long q, unsigned mm) { return complexity::savings(base(q), mm); });
  c.def("pfa_scaled_bound", [base](long long q, unsigned mm) { return complexity::pfa_scaled_bound(base(q), mm); });
  c.def("pfa_unscaled_lower_bound",
        [base](long long q, unsigned mm) { return complexity::pfa_unscaled_lower_bound(base(q), mm); });
  c.def("dyadic_scaled_folded", &complexity::dyadic_scaled_folded);
  c.def("three_scaled_folded", &complexity::three_scaled_folded);
  c.def("matches_pfa", &complexity::matches_pfa);
  c.def("registry_lengths", [] {
    std::vector<long long> qs;
    for (const auto& e : complexity::ComplexityRegistry::standard().entries()) qs.push_back(e.q);
    return qs;
  });
  c.def("table2_csv", &complexity::table2_csv);
  c.def("fig5_csv", &complexity::fig5_csv, py::arg("max_m") = 7);
}
