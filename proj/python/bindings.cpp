#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "semilab/character.hpp"
#include "semilab/complexio.hpp"
#include "semilab/derivation.hpp"
#include "semilab/fock.hpp"
#include "semilab/json_io.hpp"
#include "semilab/profile.hpp"

namespace py = pybind11;
using namespace semilab;

// Objects built on a graph hold a pointer to it; the keep_alive policies on
// the factory functions below tie the graph's lifetime to the direct result.
// Collections of graph-backed values (bases, witnesses) follow the usual
// pybind11 rule: keep the graph referenced while you use them.
PYBIND11_MODULE(_semilab, m) {
  m.doc() = "graph-algebra representations, point derivations, and characters";

  py::class_<PathWord>(m, "PathWord")
      .def(py::init<>())
      .def_readwrite("edges", &PathWord::edges)
      .def("length", &PathWord::length)
      .def("__eq__", [](const PathWord& a, const PathWord& b) { return a == b; });

  py::class_<DirectedGraph>(m, "DirectedGraph")
      .def_static("cycle", &cycle_graph, py::arg("n"))
      .def_static("single_vertex", &single_vertex_graph, py::arg("n"))
      .def_static("gilfeather", &gilfeather_graph, py::arg("n"))
      .def_static("from_json",
                  [](const std::string& s) { return graph_from_json(Json::parse(s)); })
      .def("to_json", [](const DirectedGraph& g) { return graph_to_json(g).dump(2); })
      .def_property_readonly("num_vertices", &DirectedGraph::num_vertices)
      .def_property_readonly("num_edges", &DirectedGraph::num_edges)
      .def("vertex_id", &DirectedGraph::vertex_id)
      .def("edge_id", [](const DirectedGraph& g, int e) { return g.edge(e).id; })
      .def("source", &DirectedGraph::source)
      .def("range", &DirectedGraph::range)
      .def("vertex_index", &DirectedGraph::vertex_index)
      .def("edge_index", &DirectedGraph::edge_index)
      .def("make_path", &DirectedGraph::make_path)
      .def("is_path", &DirectedGraph::is_path)
      .def("is_cycle", &DirectedGraph::is_cycle)
      .def("is_primitive", &DirectedGraph::is_primitive)
      .def("is_transitive", &DirectedGraph::is_transitive)
      .def("primitive_cycles", &DirectedGraph::enumerate_primitive_cycles,
           py::arg("max_len"));

  py::class_<Word>(m, "Word")
      .def(py::init<>())
      .def_readwrite("edges", &Word::edges)
      .def_readwrite("vertex", &Word::vertex)
      .def_static("at_vertex", &Word::at_vertex)
      .def("degree", &Word::degree);

  py::class_<NcPoly>(m, "NcPoly")
      .def_static("vertex", &NcPoly::vertex, py::keep_alive<0, 1>())
      .def_static("edge", &NcPoly::edge, py::keep_alive<0, 1>())
      .def_static("word", &NcPoly::word, py::keep_alive<0, 1>())
      .def_static("unit", &NcPoly::unit, py::keep_alive<0, 1>())
      .def("degree", &NcPoly::degree)
      .def("is_zero", &NcPoly::is_zero)
      .def("coeff_norm", &NcPoly::coeff_norm)
      .def("in_commutator_ideal", &NcPoly::in_commutator_ideal)
      .def("terms",
           [](const NcPoly& p) {
             std::vector<std::pair<std::pair<std::vector<int>, int>, Complex>> out;
             for (const auto& [w, c] : p.terms()) out.push_back({{w.edges, w.vertex}, c});
             return out;
           })
      .def("to_json", [](const NcPoly& p) { return ncpoly_to_json(p).dump(2); })
      .def("__add__", [](const NcPoly& a, const NcPoly& b) { return a + b; })
      .def("__sub__", [](const NcPoly& a, const NcPoly& b) { return a - b; })
      .def("__mul__", [](const NcPoly& a, const NcPoly& b) { return a * b; })
      .def("__rmul__", [](const NcPoly& a, Complex c) { return a * c; });

  m.def("commutator", &commutator, py::arg("a"), py::arg("b"),
        py::arg("degree_cap") = RunConfig{}.degree_cap);
  m.def(
      "ncpoly_from_json",
      [](const std::string& s, const DirectedGraph& g) {
        return ncpoly_from_json(Json::parse(s), g);
      },
      py::keep_alive<0, 2>());
  m.def("fock_norm_lower_bound",
        py::overload_cast<const NcPoly&, int>(&fock_norm_lower_bound));

  py::class_<GradedMatrixFn>(m, "GradedMatrixFn")
      .def(py::init<int>(), py::arg("n"))
      .def("size", &GradedMatrixFn::size)
      .def("is_zero", &GradedMatrixFn::is_zero)
      .def("degree", &GradedMatrixFn::degree)
      .def("add_monomial", &GradedMatrixFn::add_monomial)
      .def("coeff_norm", &GradedMatrixFn::coeff_norm)
      .def("coefficients", &GradedMatrixFn::coefficients)
      .def_static("identity", &GradedMatrixFn::identity)
      .def("__add__",
           [](const GradedMatrixFn& a, const GradedMatrixFn& b) { return a + b; })
      .def("__sub__",
           [](const GradedMatrixFn& a, const GradedMatrixFn& b) { return a - b; })
      .def("__mul__",
           [](const GradedMatrixFn& a, const GradedMatrixFn& b) { return a * b; })
      .def("__rmul__", [](const GradedMatrixFn& a, Complex c) { return a * c; });

  py::enum_<TwistRoute>(m, "TwistRoute")
      .value("WrapCount", TwistRoute::WrapCount)
      .value("GeneratorRewrite", TwistRoute::GeneratorRewrite)
      .value("Rotation", TwistRoute::Rotation);

  m.def("z_gen", &z_gen, py::arg("n"), py::arg("i"));
  m.def("unit_proj", &unit_proj, py::arg("n"), py::arg("i"));
  m.def("iota_w", &iota_w, py::arg("a"), py::arg("w"),
        py::arg("degree_cap") = RunConfig{}.degree_cap);
  m.def("iota_onto_predicate", &iota_onto_predicate);
  m.def("ran_iota_contains", &ran_iota_contains, py::arg("graph"), py::arg("F"),
        py::arg("w"), py::arg("deg_bound"));
  m.def("mu_twist", &mu_twist, py::arg("F"), py::arg("mu"),
        py::arg("route") = TwistRoute::WrapCount);
  m.def("eval_at", &eval_at, py::arg("F"), py::arg("lambda"));
  m.def("circle_sup_norm", &circle_sup_norm, py::arg("F"), py::arg("grid_size"));
  m.def("circle_sup_norm_levels", &circle_sup_norm_levels, py::arg("F"),
        py::arg("grid_size"));

  py::class_<MatrixRep>(m, "MatrixRep")
      .def_readonly("dim", &MatrixRep::dim)
      .def_readonly("vertex_images", &MatrixRep::vertex_images)
      .def_readonly("edge_images", &MatrixRep::edge_images)
      .def("to_json", [](const MatrixRep& r) { return rep_to_json(r).dump(2); });

  py::class_<CheckItem>(m, "CheckItem")
      .def_readonly("condition", &CheckItem::condition)
      .def_readonly("pass_", &CheckItem::pass)
      .def_readonly("value", &CheckItem::value)
      .def_readonly("witness", &CheckItem::witness);

  py::class_<CcReport>(m, "CcReport")
      .def_readonly("pass_", &CcReport::pass)
      .def_readonly("row_norm", &CcReport::row_norm)
      .def_readonly("items", &CcReport::items);

  m.def("pi_w_lambda_mu", &pi_w_lambda_mu, py::arg("graph"), py::arg("cycle"),
        py::arg("lam"), py::arg("mu"), py::keep_alive<0, 1>());
  m.def(
      "rep_from_json",
      [](const std::string& s, const DirectedGraph& g) {
        return rep_from_json(Json::parse(s), g);
      },
      py::keep_alive<0, 2>());
  m.def("validate_cc", &validate_cc, py::arg("rep"), py::arg("tol") = RunConfig{}.tol);
  m.def("apply", &apply);
  m.def("image_dimension", &image_dimension);
  m.def("spectral_norm", &spectral_norm);

  py::class_<FactorizationReport>(m, "FactorizationReport")
      .def_readonly("pass_", &FactorizationReport::pass)
      .def_readonly("max_discrepancy", &FactorizationReport::max_discrepancy)
      .def_readonly("words_checked", &FactorizationReport::words_checked);

  m.def("verify_factorization", &verify_factorization, py::arg("graph"), py::arg("cycle"),
        py::arg("lam"), py::arg("mu"), py::arg("max_len") = 8,
        py::arg("tol") = RunConfig{}.tol);

  py::class_<DerivationAtRep>(m, "DerivationAtRep")
      .def_readonly("rep", &DerivationAtRep::rep)
      .def_readwrite("dP", &DerivationAtRep::dP)
      .def_readwrite("dL", &DerivationAtRep::dL)
      .def("to_json", [](const DerivationAtRep& d) { return derivation_to_json(d).dump(2); });

  py::class_<DerivationReport>(m, "DerivationReport")
      .def_readonly("pass_", &DerivationReport::pass)
      .def_readonly("items", &DerivationReport::items);

  py::class_<InnerSolve>(m, "InnerSolve")
      .def_readonly("success", &InnerSolve::success)
      .def_readonly("residual", &InnerSolve::residual)
      .def_readonly("X", &InnerSolve::X);

  py::class_<KernelAgreement>(m, "KernelAgreement")
      .def_readonly("inner", &KernelAgreement::inner)
      .def_readonly("inner_residual", &KernelAgreement::inner_residual)
      .def_readonly("kernel_vanishes", &KernelAgreement::kernel_vanishes)
      .def_readonly("max_kernel_value", &KernelAgreement::max_kernel_value)
      .def_readonly("agree", &KernelAgreement::agree)
      .def_readonly("words_checked", &KernelAgreement::words_checked);

  py::class_<FactorsResult>(m, "FactorsResult")
      .def_readonly("factors", &FactorsResult::factors)
      .def_readonly("max_violation", &FactorsResult::max_violation)
      .def_readonly("words_checked", &FactorsResult::words_checked)
      .def_readonly("witnesses", &FactorsResult::witnesses)
      .def_readonly("witness_values", &FactorsResult::witness_values);

  py::class_<NoninnerCertificate>(m, "NoninnerCertificate")
      .def_readonly("case_id", &NoninnerCertificate::case_id)
      .def_readonly("edge", &NoninnerCertificate::edge)
      .def_readonly("j", &NoninnerCertificate::j)
      .def_readonly("i", &NoninnerCertificate::i);

  py::class_<NoninnerResult>(m, "NoninnerResult")
      .def_readonly("exists", &NoninnerResult::exists)
      .def_readonly("certificates", &NoninnerResult::certificates);

  m.def("zero_derivation", &zero_derivation);
  m.def("derivation_norm", &derivation_norm);
  m.def("validate_derivation", &validate, py::arg("d"), py::arg("tol") = 1e-9);
  m.def("extend", &extend);
  m.def("derivation_space", &derivation_space);
  m.def("inner_from", &inner_from);
  m.def("solve_inner", &solve_inner, py::arg("d"), py::arg("tol") = 1e-9);
  m.def("inner_dimension", &inner_dimension);
  m.def("outer_dimension", &outer_dimension);
  m.def("inner_iff_kernel_vanishing",
        py::overload_cast<const DerivationAtRep&, double>(&inner_iff_kernel_vanishing),
        py::arg("d"), py::arg("tol") = 1e-9);
  m.def("factors_through_cycle", &factors_through_cycle, py::arg("d"), py::arg("cycle"),
        py::arg("max_len") = 8, py::arg("tol") = 1e-9);
  m.def("noninner_exists", &noninner_exists);
  m.def("build_noninner_case_i", &build_noninner_case_i, py::keep_alive<0, 1>());
  m.def("build_noninner_case_ii", &build_noninner_case_ii, py::keep_alive<0, 1>());

  py::class_<ProfilePoint>(m, "ProfilePoint")
      .def_readonly("degree", &ProfilePoint::degree)
      .def_readonly("value", &ProfilePoint::value)
      .def_readonly("witness", &ProfilePoint::witness);

  m.def("make_circle_norm_oracle", &make_circle_norm_oracle, py::arg("graph"),
        py::arg("cycle"), py::arg("grid_size") = RunConfig{}.grid);
  m.def("make_fock_oracle", &make_fock_oracle);
  m.def("derivation_norm_profile", &derivation_norm_profile, py::arg("d"),
        py::arg("degrees"), py::arg("oracle"), py::arg("seed") = RunConfig{}.seed);

  py::class_<Character>(m, "Character")
      .def_readonly("v0", &Character::v0)
      .def_readonly("loop_edges", &Character::loop_edges)
      .def_readonly("lambda_", &Character::lambda)
      .def("to_json", [](const Character& chi) { return character_to_json(chi).dump(2); });

  py::class_<CharDerivation>(m, "CharDerivation")
      .def_readonly("chi", &CharDerivation::chi)
      .def_readonly("d", &CharDerivation::d);

  py::class_<DerivativeFormulaReport>(m, "DerivativeFormulaReport")
      .def_readonly("pass_", &DerivativeFormulaReport::pass)
      .def_readonly("max_error", &DerivativeFormulaReport::max_error)
      .def_readonly("samples", &DerivativeFormulaReport::samples);

  py::class_<PeakingReport>(m, "PeakingReport")
      .def_readonly("pass_", &PeakingReport::pass)
      .def_readonly("peak_value", &PeakingReport::peak_value)
      .def_readonly("off_peak_max", &PeakingReport::off_peak_max)
      .def_readonly("gap", &PeakingReport::gap)
      .def_readonly("grid_points", &PeakingReport::grid_points);

  py::class_<RangeCommutatorReport>(m, "RangeCommutatorReport")
      .def_readonly("pass_", &RangeCommutatorReport::pass)
      .def_readonly("samples", &RangeCommutatorReport::samples)
      .def_readonly("max_abelian_norm", &RangeCommutatorReport::max_abelian_norm)
      .def_readonly("max_char_value", &RangeCommutatorReport::max_char_value);

  py::class_<D1ProfilePoint>(m, "D1ProfilePoint")
      .def_readonly("degree", &D1ProfilePoint::degree)
      .def_readonly("value", &D1ProfilePoint::value);

  m.def("make_character", &make_character, py::arg("graph"), py::arg("v0"),
        py::arg("lam"), py::keep_alive<0, 1>());
  m.def("enumerate_character_structures", &enumerate_character_structures,
        py::keep_alive<0, 1>());
  m.def("char_symbol", &char_symbol);
  m.def("eval_character", &eval_character);
  m.def("char_derivation", &char_derivation, py::keep_alive<0, 1>());
  m.def("extend_char", &extend_char);
  m.def("canonical_derivation", &canonical_derivation, py::keep_alive<0, 1>());
  m.def("decompose", &decompose);
  m.def("derivative_formula_check", &derivative_formula_check, py::arg("D"),
        py::arg("samples") = 100, py::arg("max_degree") = 5, py::arg("tol") = 1e-10,
        py::arg("seed") = RunConfig{}.seed);
  m.def("boundary_peaking_witness", &boundary_peaking_witness, py::arg("lam"),
        py::arg("grid") = 512, py::arg("margin") = 0.1);
  m.def("inner_range_in_commutator_check", &inner_range_in_commutator_check,
        py::arg("X"), py::arg("samples") = 50, py::arg("max_degree") = 4,
        py::arg("tol") = 1e-12, py::arg("seed") = RunConfig{}.seed);
  m.def("exp_orbit_coefficients", &exp_orbit_coefficients, py::arg("chi"), py::arg("X"),
        py::arg("a"), py::arg("order") = 4);
  m.def("d1_profile", &d1_profile, py::arg("D"), py::arg("degrees"));

  py::class_<CommPoly>(m, "CommPoly")
      .def("nvars", &CommPoly::nvars)
      .def("is_zero", &CommPoly::is_zero)
      .def("total_degree", &CommPoly::total_degree)
      .def("eval", &CommPoly::eval)
      .def("terms", [](const CommPoly& p) {
        std::vector<std::pair<std::vector<int>, Complex>> out;
        for (const auto& [e, c] : p.terms()) out.push_back({e, c});
        return out;
      });

  m.def("parse_complex", &parse_complex);
  m.def("format_complex", &format_complex);
}
