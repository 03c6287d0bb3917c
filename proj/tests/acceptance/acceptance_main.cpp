// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.
//
// Each criterion is self-contained and prints the quantities it measured
// (counts, worst defects, elapsed time). Tolerances are pinned in-line; the
// deterministic seed makes every run byte-identical.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "semilab/character.hpp"
#include "semilab/cycle_algebra.hpp"
#include "semilab/derivation.hpp"
#include "semilab/graph.hpp"
#include "semilab/ncpoly.hpp"
#include "semilab/profile.hpp"
#include "semilab/repn.hpp"

namespace {

using namespace semilab;

constexpr std::uint64_t kSeed = RunConfig{}.seed;
const Complex kOne{1.0, 0.0};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ----------------------------------------------------------------------------
// Shared fixtures.

struct Fixture {
  std::string name;
  DirectedGraph g;
};

DirectedGraph two_cycle_with_parallel_edge() {
  return DirectedGraph({"v1", "v2"},
                       {{"e1", "v2", "v1"}, {"e2", "v1", "v2"}, {"c", "v2", "v1"}});
}

DirectedGraph loop_on_three_cycle() {
  return DirectedGraph({"v1", "v2"},
                       {{"a", "v1", "v1"}, {"b", "v1", "v2"}, {"c", "v2", "v1"}});
}

DirectedGraph vertex_with_two_loops() {
  return DirectedGraph({"u"}, {{"f1", "u", "u"}, {"g1", "u", "u"}});
}

// The graph family every representation-level criterion sweeps.
std::vector<Fixture> rep_fixtures() {
  std::vector<Fixture> out;
  for (int n = 1; n <= 5; ++n) out.push_back({"C" + std::to_string(n), cycle_graph(n)});
  for (int n = 1; n <= 3; ++n)
    out.push_back({"B" + std::to_string(n), single_vertex_graph(n)});
  out.push_back({"C2+chord", two_cycle_with_parallel_edge()});
  out.push_back({"B1+loop", vertex_with_two_loops()});
  out.push_back({"gilfeather2", gilfeather_graph(2)});
  return out;
}

PathWord full_cycle(const DirectedGraph& g, int n) {
  std::vector<std::string> ids;
  for (int i = 1; i <= n; ++i) ids.push_back("e" + std::to_string(i));
  return g.make_path(ids);
}

std::vector<Complex> lambda_grid() {
  return {Complex{0.0, 0.0}, Complex{0.5, 0.0},
          Complex{0.9, 0.0}, Complex{0.3, 0.2},
          Complex{1.0, 0.0}, std::polar(1.0, std::numbers::pi / 3.0)};
}

std::vector<Complex> mu_grid() {
  std::vector<Complex> out;
  for (int k = 0; k < 5; ++k)
    out.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / 5.0));
  return out;
}

// Random sampling helpers (single-vertex graphs: every edge word is a path).
Eigen::MatrixXcd random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = Complex(nd(rng), nd(rng));
  return x;
}

NcPoly random_loop_poly(const DirectedGraph& g, int max_deg, std::mt19937_64& rng,
                        int terms = 6) {
  std::uniform_int_distribution<int> len_dist(0, max_deg);
  std::uniform_int_distribution<int> edge_dist(0, g.num_edges() - 1);
  std::normal_distribution<double> nd;
  NcPoly p(&g);
  for (int t = 0; t < terms; ++t) {
    const int len = len_dist(rng);
    Word w = Word::at_vertex(0);
    if (len > 0) {
      w.vertex = -1;
      for (int k = 0; k < len; ++k) w.edges.push_back(edge_dist(rng));
    }
    p.add_term(w, Complex(nd(rng), nd(rng)));
  }
  return p;
}

// ----------------------------------------------------------------------------
// 1. Every cycle representation over the full (fixture, cycle, lambda, mu)
//    grid satisfies the complete-contractivity conditions at 1e-10.

Outcome criterion_contractivity() {
  const double tol = 1e-10;
  long reps = 0;
  long cycles_total = 0;
  for (const Fixture& fx : rep_fixtures()) {
    const auto cycles = fx.g.enumerate_primitive_cycles(6);
    cycles_total += static_cast<long>(cycles.size());
    if (fx.name == "gilfeather2" && !cycles.empty())
      return {false, "gilfeather2 is acyclic yet reported cycles"};
    for (const PathWord& w : cycles)
      for (Complex lam : lambda_grid())
        for (Complex mu : mu_grid()) {
          const MatrixRep rep = pi_w_lambda_mu(fx.g, w, lam, mu);
          const CcReport r = validate_cc(rep, tol);
          ++reps;
          if (!r.pass) {
            std::ostringstream os;
            os << fx.name << " cycle len " << w.length() << " lambda=("
               << lam.real() << "," << lam.imag() << ") fails:";
            for (const auto& item : r.items)
              if (!item.pass) os << " " << item.condition << "=" << fmt(item.value);
            return {false, os.str()};
          }
        }
  }
  std::ostringstream os;
  os << "reps=" << reps << " cycles=" << cycles_total << " tol=1e-10";
  return {true, os.str()};
}

// ----------------------------------------------------------------------------
// 2. image_dimension(rep, 2n) equals n^2 exactly when lambda != 0; for
//    lambda = 0 it drops strictly below n^2 on every cycle of length >= 2
//    (a length-1 cycle still hits M_1 through its vertex idempotent).

Outcome criterion_onto_dimension() {
  const std::vector<Complex> mus = {kOne, std::polar(1.0, 2.0 * std::numbers::pi / 5.0)};
  long checks = 0;
  for (const Fixture& fx : rep_fixtures()) {
    for (const PathWord& w : fx.g.enumerate_primitive_cycles(6)) {
      const int n = w.length();
      for (Complex lam : lambda_grid())
        for (Complex mu : mus) {
          const MatrixRep rep = pi_w_lambda_mu(fx.g, w, lam, mu);
          const int dim = image_dimension(rep, 2 * n);
          ++checks;
          const bool ok = (lam != Complex{0.0, 0.0}) ? dim == n * n
                          : (n == 1 ? dim == 1 : dim < n * n);
          if (!ok) {
            std::ostringstream os;
            os << fx.name << " cycle len " << n << " lambda=(" << lam.real() << ","
               << lam.imag() << "): image dim " << dim << " vs n^2=" << n * n;
            return {false, os.str()};
          }
        }
    }
  }
  std::ostringstream os;
  os << "checks=" << checks << " exact integer ranks";
  return {true, os.str()};
}

// ----------------------------------------------------------------------------
// 3. Evaluating the twisted cycle-model image reproduces the representation on
//    every word of length <= 8, discrepancy <= 1e-11, over the full grid.

Outcome criterion_factorization() {
  const double tol = 1e-11;
  long calls = 0;
  long words = 0;
  double worst = 0.0;
  for (const Fixture& fx : rep_fixtures()) {
    for (const PathWord& w : fx.g.enumerate_primitive_cycles(6))
      for (Complex lam : lambda_grid())
        for (Complex mu : mu_grid()) {
          const FactorizationReport r =
              verify_factorization(fx.g, w, lam, mu, 8, tol);
          ++calls;
          words += r.words_checked;
          worst = std::max(worst, r.max_discrepancy);
          if (!r.pass) {
            std::ostringstream os;
            os << fx.name << " cycle len " << w.length() << ": discrepancy "
               << fmt(r.max_discrepancy);
            return {false, os.str()};
          }
        }
  }
  std::ostringstream os;
  os << "grids=" << calls << " words=" << words << " max_discrepancy=" << fmt(worst);
  return {true, os.str()};
}

// ----------------------------------------------------------------------------
// 4. The wrap-count twist equals the generator-rewrite twist on every graph
//    word of length <= 8 (cycle graphs C_1..C_5 and the two-loop vertex),
//    coefficientwise within 1e-13.

Outcome criterion_twist_consistency() {
  const double tol = 1e-13;
  double worst = 0.0;
  long checks = 0;

  struct Case {
    DirectedGraph g;
    PathWord w;
  };
  std::vector<Case> cases;
  for (int n = 1; n <= 5; ++n) {
    DirectedGraph g = cycle_graph(n);
    PathWord w = full_cycle(g, n);
    cases.push_back({std::move(g), std::move(w)});
  }
  {
    DirectedGraph g = single_vertex_graph(2);
    PathWord w = g.make_path({"f1", "f2"});
    cases.push_back({std::move(g), std::move(w)});
  }

  for (const Case& cs : cases) {
    for (const Word& wd : enumerate_words(cs.g, 8, true)) {
      const NcPoly p = NcPoly::word(cs.g, wd);
      const GradedMatrixFn f = iota_w(p, cs.w, 9);
      for (Complex mu : mu_grid()) {
        const GradedMatrixFn a = mu_twist(f, mu, TwistRoute::WrapCount);
        const GradedMatrixFn b = mu_twist(f, mu, TwistRoute::GeneratorRewrite);
        worst = std::max(worst, (a - b).coeff_norm());
        ++checks;
      }
    }
  }
  if (worst > tol) return {false, "routes differ by " + fmt(worst)};
  std::ostringstream os;
  os << "checks=" << checks << " max_gap=" << fmt(worst);
  return {true, os.str()};
}

// ----------------------------------------------------------------------------
// 5. For onto representations, least-squares innerness agrees with the
//    kernel-vanishing criterion on 100 randomized validated derivations per
//    fixture (tolerance 1e-9 on both sides).

Outcome criterion_inner_agreement() {
  struct OntoCase {
    std::string name;
    DirectedGraph g;
    std::vector<std::string> cycle_ids;
  };
  std::vector<OntoCase> cases;
  for (int n = 2; n <= 5; ++n) {
    std::vector<std::string> ids;
    for (int i = 1; i <= n; ++i) ids.push_back("e" + std::to_string(i));
    cases.push_back({"C" + std::to_string(n), cycle_graph(n), ids});
  }
  cases.push_back({"C2+chord", two_cycle_with_parallel_edge(), {"e1", "e2"}});
  cases.push_back({"B1", single_vertex_graph(1), {"f1"}});
  cases.push_back({"B1+loop", vertex_with_two_loops(), {"f1", "g1"}});
  cases.push_back({"B2", single_vertex_graph(2), {"f1", "f2"}});
  cases.push_back({"B3", single_vertex_graph(3), {"f1", "f2"}});

  const Complex lam{0.3, 0.2};
  const Complex mu = std::polar(1.0, 2.0 * std::numbers::pi / 5.0);
  long total = 0;
  long inner_count = 0;
  std::ostringstream os;
  for (const OntoCase& cs : cases) {
    const PathWord w = cs.g.make_path(cs.cycle_ids);
    const MatrixRep rep = pi_w_lambda_mu(cs.g, w, lam, mu);
    const auto [dim, basis] = derivation_space(rep);
    std::mt19937_64 rng(kSeed ^ std::hash<std::string>{}(cs.name));
    std::normal_distribution<double> nd;
    for (int k = 0; k < 100; ++k) {
      DerivationAtRep d = zero_derivation(rep);
      if (k % 2 == 0) {
        std::vector<Complex> coeffs;
        for (int i = 0; i < dim; ++i) coeffs.emplace_back(nd(rng), nd(rng));
        d = lincomb(rep, basis, coeffs);
      } else {
        d = inner_from(rep, random_matrix(rep.dim, rng));
      }
      if (!validate(d, 1e-9).pass)
        return {false, cs.name + ": sampled derivation fails validation"};
      const KernelAgreement ka = inner_iff_kernel_vanishing(d, 4 * rep.dim, 1e-9);
      ++total;
      if (ka.inner) ++inner_count;
      if (!ka.agree) {
        std::ostringstream bad;
        bad << cs.name << " sample " << k << ": solver says "
            << (ka.inner ? "inner" : "non-inner") << " (residual "
            << fmt(ka.inner_residual) << ") but kernel max is "
            << fmt(ka.max_kernel_value);
        return {false, bad.str()};
      }
    }
  }
  os << "fixtures=" << cases.size() << " samples=" << total << " agree=100%"
     << " inner=" << inner_count << " non_inner=" << (total - inner_count);
  return {true, os.str()};
}

// ----------------------------------------------------------------------------
// 6. Non-inner constructions: plain cycles carry no structural certificate;
//    the parallel-edge and loop-carrying fixtures do. The constructed
//    derivations validate, resist the inner solver (relative residual >= 0.1),
//    fail to factor with the expected witnesses, and obey the continuity bound
//    at lambda = 0.4 over 100 samples each.

Outcome criterion_noninner_constructions() {
  const Complex lam{0.4, 0.0};
  for (int n = 2; n <= 5; ++n) {
    const DirectedGraph g = cycle_graph(n);
    if (noninner_exists(g, full_cycle(g, n)).exists)
      return {false, "plain C" + std::to_string(n) + " reports a certificate"};
  }

  // Parallel edge: certificate names the off-cycle edge between cycle sources.
  const DirectedGraph gp = two_cycle_with_parallel_edge();
  const PathWord wp = gp.make_path({"e1", "e2"});
  const int c = gp.edge_index("c");
  {
    const NoninnerResult r = noninner_exists(gp, wp);
    bool cert = false;
    for (const auto& ct : r.certificates)
      if (ct.case_id == 1 && ct.edge == c) cert = true;
    if (!r.exists || !cert) return {false, "parallel-edge certificate missing"};
  }
  const DerivationAtRep d1 = build_noninner_case_i(gp, wp, lam, kOne, c);
  if (!validate(d1, 1e-9).pass) return {false, "parallel-edge construction invalid"};
  const InnerSolve s1 = solve_inner(d1, 1e-9);
  if (s1.success || s1.residual < 0.1)
    return {false, "parallel-edge construction looks inner, residual " + fmt(s1.residual)};
  const FactorsResult f1 = factors_through_cycle(d1, wp, 8, 1e-9);
  if (f1.factors) return {false, "parallel-edge construction factors"};
  // Documented witness: the off-cycle edge word itself is killed by the model
  // map yet carries a unit derivation value.
  const NcPoly lc = NcPoly::edge(gp, c);
  if (iota_w(lc, wp, 2).coeff_norm() != 0.0)
    return {false, "model map fails to kill the off-cycle edge"};
  const double wit1 = extend(d1, lc).norm();
  if (wit1 < 0.1) return {false, "off-cycle witness value " + fmt(wit1) + " < 0.1"};

  // Loop on a longer cycle: certificate names the loop; the loop squared is
  // the factoring witness.
  const DirectedGraph gl = loop_on_three_cycle();
  const PathWord wl = gl.make_path({"b", "a", "c"});
  const int a = gl.edge_index("a");
  {
    const NoninnerResult r = noninner_exists(gl, wl);
    bool cert = false;
    for (const auto& ct : r.certificates)
      if (ct.case_id == 2 && ct.edge == a) cert = true;
    if (!r.exists || !cert) return {false, "loop-on-cycle certificate missing"};
  }
  const DerivationAtRep d2 = build_noninner_case_ii(gl, wl, lam, kOne, a);
  if (!validate(d2, 1e-9).pass) return {false, "loop-on-cycle construction invalid"};
  const InnerSolve s2 = solve_inner(d2, 1e-9);
  if (s2.success || s2.residual < 0.1)
    return {false, "loop-on-cycle construction looks inner, residual " + fmt(s2.residual)};
  const FactorsResult f2 = factors_through_cycle(d2, wl, 8, 1e-9);
  if (f2.factors) return {false, "loop-on-cycle construction factors"};
  // Documented witness: the loop squared (multiplicity + 1) dies in the model
  // yet its derivation value is nonzero.
  const NcPoly la2 = NcPoly::word(gl, Word{{a, a}, -1});
  if (iota_w(la2, wl, 3).coeff_norm() != 0.0)
    return {false, "model map fails to kill the squared loop"};
  const double wit2 = extend(d2, la2).norm();
  if (wit2 < 0.1) return {false, "squared-loop witness value " + fmt(wit2) + " < 0.1"};

  // Two loops at one vertex: the loop certificate exists and the construction
  // is non-inner. (On a length-1 cycle the model is the whole algebra, so the
  // factoring clause is vacuous there.)
  const DirectedGraph gb = vertex_with_two_loops();
  const PathWord wb = gb.make_path({"f1"});
  const int f1e = gb.edge_index("f1");
  {
    const NoninnerResult r = noninner_exists(gb, wb);
    bool cert = false;
    for (const auto& ct : r.certificates)
      if (ct.case_id == 2 && ct.edge == f1e) cert = true;
    if (!r.exists || !cert) return {false, "two-loop certificate missing"};
  }
  const DerivationAtRep d3 = build_noninner_case_ii(gb, wb, lam, kOne, f1e);
  if (!validate(d3, 1e-9).pass) return {false, "two-loop construction invalid"};
  const InnerSolve s3 = solve_inner(d3, 1e-9);
  if (s3.success || s3.residual < 0.1)
    return {false, "two-loop construction looks inner, residual " + fmt(s3.residual)};

  // The non-factoring witness on the two-loop vertex comes from the off-cycle
  // loop (the on-cycle construction factors because a length-1 cycle's model
  // is the whole algebra).
  const int g1e = gb.edge_index("g1");
  const DerivationAtRep d4 = build_noninner_case_i(gb, wb, lam, kOne, g1e);
  if (!validate(d4, 1e-9).pass) return {false, "off-cycle-loop construction invalid"};
  const InnerSolve s4 = solve_inner(d4, 1e-9);
  if (s4.success || s4.residual < 0.1)
    return {false, "off-cycle-loop construction looks inner, residual " + fmt(s4.residual)};
  const FactorsResult f4 = factors_through_cycle(d4, wb, 8, 1e-9);
  if (f4.factors) return {false, "off-cycle-loop construction factors"};
  const NcPoly lg = NcPoly::edge(gb, g1e);
  if (iota_w(lg, wb, 2).coeff_norm() != 0.0)
    return {false, "model map fails to kill the off-cycle loop"};
  const double wit4 = extend(d4, lg).norm();
  if (wit4 < 0.1) return {false, "off-cycle-loop witness value " + fmt(wit4) + " < 0.1"};

  double worst_ratio = 0.0;
  const struct {
    const DerivationAtRep* d;
    int edge;
  } cont[] = {{&d1, c}, {&d2, a}, {&d3, f1e}, {&d4, g1e}};
  for (const auto& cc : cont) {
    const ContinuityReport cr =
        continuity_bound_check(*cc.d, cc.edge, 100, 3, 10, kSeed, 1e-9);
    worst_ratio = std::max(worst_ratio, cr.max_ratio);
    if (!cr.pass)
      return {false, "continuity ratio " + fmt(cr.max_ratio) + " exceeds 1+1e-9"};
  }

  std::ostringstream os;
  os << "plain cycles clean; 4 constructions on 3 fixtures;"
     << " residuals>=" << fmt(std::min({s1.residual, s2.residual, s3.residual, s4.residual}))
     << " witnesses=" << fmt(wit1) << "/" << fmt(wit2) << "/" << fmt(wit4)
     << " continuity_max=" << fmt(worst_ratio) << " (400 samples)";
  return {true, os.str()};
}

// ----------------------------------------------------------------------------
// 7. On plain cycle graphs the whole derivation space factors through the
//    cycle model (tolerance 1e-9).

Outcome criterion_factor_completeness() {
  const Complex mu = std::polar(1.0, 2.0 * std::numbers::pi / 5.0);
  long elements = 0;
  double worst = 0.0;
  for (int n = 2; n <= 5; ++n) {
    const DirectedGraph g = cycle_graph(n);
    const PathWord w = full_cycle(g, n);
    const MatrixRep rep = pi_w_lambda_mu(g, w, Complex{0.5, 0.0}, mu);
    const auto [dim, basis] = derivation_space(rep);
    for (const DerivationAtRep& d : basis) {
      const FactorsResult fr = factors_through_cycle(d, w, 4 * n, 1e-9);
      ++elements;
      worst = std::max(worst, fr.max_violation);
      if (!fr.factors) {
        std::ostringstream os;
        os << "C" << n << " basis element violates factoring by " << fmt(fr.max_violation);
        return {false, os.str()};
      }
    }
  }
  std::ostringstream os;
  os << "basis_elements=" << elements << " max_violation=" << fmt(worst);
  return {true, os.str()};
}

// ----------------------------------------------------------------------------
// 8. Norm-growth dichotomy on the one-loop model with D(z) = 1: bounded
//    profile at lambda = 0.5 (<= 4/3 + 0.1 for all N <= 64), linear growth at
//    lambda = 1 (>= N - 1e-6, witnessed by z^N). Must finish within 60 s.

Outcome criterion_growth_dichotomy() {
  const auto t0 = std::chrono::steady_clock::now();
  const DirectedGraph g = single_vertex_graph(1);
  const PathWord w = g.make_path({"f1"});
  std::vector<int> degrees;
  for (int n = 1; n <= 64; ++n) degrees.push_back(n);
  const NormOracle oracle = make_circle_norm_oracle(g, w, 2048);

  double interior_max = 0.0;
  double boundary_min_slack = 1e300;
  for (double lv : {0.5, 1.0}) {
    const MatrixRep rep = pi_w_lambda_mu(g, w, Complex{lv, 0.0}, kOne);
    DerivationAtRep d = zero_derivation(rep);
    d.dL[0](0, 0) = kOne;
    if (!validate(d, 1e-12).pass) return {false, "D(z)=1 fails validation"};
    const auto prof = derivation_norm_profile(d, degrees, oracle, kSeed);
    for (const ProfilePoint& p : prof) {
      if (lv == 0.5) {
        interior_max = std::max(interior_max, p.value);
        if (p.value > 4.0 / 3.0 + 0.1) {
          std::ostringstream os;
          os << "interior profile " << fmt(p.value) << " at N=" << p.degree
             << " exceeds 4/3+0.1";
          return {false, os.str()};
        }
      } else {
        boundary_min_slack = std::min(boundary_min_slack, p.value - (p.degree - 1e-6));
        if (p.value < p.degree - 1e-6) {
          std::ostringstream os;
          os << "boundary profile " << fmt(p.value) << " at N=" << p.degree
             << " below N-1e-6";
          return {false, os.str()};
        }
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > 60.0) return {false, "profile run took " + fmt(secs) + "s > 60s"};
  std::ostringstream os;
  os << "N<=64 interior_max=" << fmt(interior_max)
     << " boundary_slack=" << fmt(boundary_min_slack) << " in " << fmt(secs) << "s";
  return {true, os.str()};
}

// ----------------------------------------------------------------------------
// 9. Character derivations: the canonical split D = D1 + D2 is an identity on
//    all words of length <= 8 (1e-12); commutators die exactly; the extension
//    equals the directional derivative of the symbol (1e-10, 100 random
//    polynomials of degree <= 5); canonical derivations kill 100 sampled
//    products of character-kernel elements (1e-12).

Outcome criterion_character_derivations() {
  struct Case {
    std::string name;
    DirectedGraph g;
    std::vector<Complex> lambda;
    std::vector<Complex> d;
    int canonical_index;                  // coordinate with lambda[i] == 0
    std::vector<Complex> canonical_lambda;  // character used for the D_i check
  };
  std::vector<Case> cases;
  cases.push_back({"B2",
                   single_vertex_graph(2),
                   {Complex{0.5, 0.25}, Complex{0.0, 0.0}},
                   {Complex{0.8, 0.0}, Complex{-0.6, 0.3}},
                   1,
                   {Complex{0.0, 0.6}, Complex{0.0, 0.0}}});
  cases.push_back({"B3",
                   single_vertex_graph(3),
                   {Complex{0.4, 0.2}, Complex{0.0, 0.0}, Complex{0.35, 0.0}},
                   {Complex{0.7, 0.0}, Complex{-0.3, 0.1}, Complex{0.0, 0.2}},
                   1,
                   {Complex{0.0, 0.5}, Complex{0.0, 0.0}, Complex{-0.3, 0.0}}});

  long split_words = 0;
  long kernel_products = 0;
  double worst_split = 0.0;
  double worst_formula = 0.0;
  double worst_kernel = 0.0;
  for (const Case& cs : cases) {
    const Character chi = make_character(cs.g, 0, cs.lambda);
    const CharDerivation D = char_derivation(chi, cs.d);
    const auto [D1, D2] = decompose(D);

    for (const Word& wd : enumerate_words(cs.g, 8, true)) {
      const NcPoly p = NcPoly::word(cs.g, wd);
      const double gap =
          std::abs(extend_char(D, p) - extend_char(D1, p) - extend_char(D2, p));
      worst_split = std::max(worst_split, gap);
      ++split_words;
      if (gap > 1e-12)
        return {false, cs.name + ": split misses by " + fmt(gap) + " on a word"};
    }

    std::mt19937_64 rng(kSeed + 9);
    for (int k = 0; k < 50; ++k) {
      const NcPoly x = random_loop_poly(cs.g, 4, rng);
      const NcPoly y = random_loop_poly(cs.g, 4, rng);
      const Complex val = extend_char(D, commutator(x, y));
      if (val != Complex{0.0, 0.0})
        return {false, cs.name + ": commutator image " + fmt(std::abs(val)) + " != 0"};
    }

    const DerivativeFormulaReport fr = derivative_formula_check(D, 100, 5, 1e-10, kSeed);
    worst_formula = std::max(worst_formula, fr.max_error);
    if (!fr.pass)
      return {false, cs.name + ": derivative formula off by " + fmt(fr.max_error)};

    const Character chic = make_character(cs.g, 0, cs.canonical_lambda);
    const CharDerivation Dc = canonical_derivation(chic, cs.canonical_index);
    const NcPoly unit = NcPoly::unit(cs.g);
    for (int k = 0; k < 100; ++k) {
      NcPoly x = random_loop_poly(cs.g, 3, rng);
      NcPoly y = random_loop_poly(cs.g, 3, rng);
      x = x - unit * eval_character(chic, x);
      y = y - unit * eval_character(chic, y);
      const double val = std::abs(extend_char(Dc, NcPoly::mul(x, y, 16)));
      worst_kernel = std::max(worst_kernel, val);
      ++kernel_products;
      if (val > 1e-12)
        return {false, cs.name + ": canonical derivation leaks " + fmt(val) +
                           " on a kernel product"};
    }
  }
  std::ostringstream os;
  os << "split_words=" << split_words << " max_split=" << fmt(worst_split)
     << " formula_max=" << fmt(worst_formula) << " kernel_products=" << kernel_products
     << " kernel_max=" << fmt(worst_kernel);
  return {true, os.str()};
}

// ----------------------------------------------------------------------------
// 10. Boundary behaviour: random unit-sphere characters with all coordinates
//     nonzero admit a peaking witness (margin 0.1, grid 512, strict gap),
//     and the ball-normalized growth profile of the boundary derivation with
//     d = lambda strictly doubles from N/2 to N at N in {8, 16, 32}.

Outcome criterion_boundary_behaviour() {
  std::vector<DirectedGraph> graphs;
  for (int m = 1; m <= 4; ++m) graphs.push_back(single_vertex_graph(m));

  std::mt19937_64 rng(kSeed + 10);
  std::uniform_real_distribution<double> mag(0.35, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  double min_gap = 1e300;
  for (int k = 0; k < 20; ++k) {
    const int m = 1 + (k % 4);
    std::vector<Complex> lambda;
    double norm2 = 0.0;
    for (int i = 0; i < m; ++i) {
      lambda.push_back(std::polar(mag(rng), phase(rng)));
      norm2 += std::norm(lambda.back());
    }
    for (Complex& v : lambda) v /= std::sqrt(norm2);

    const PeakingReport pr = boundary_peaking_witness(lambda, 512, 0.1);
    min_gap = std::min(min_gap, pr.gap);
    if (!pr.pass || pr.gap <= 0.0)
      return {false, "sample " + std::to_string(k) + ": peaking gap " + fmt(pr.gap)};

    const Character chi = make_character(graphs[m - 1], 0, lambda);
    const CharDerivation D = char_derivation(chi, lambda);
    const auto prof = d1_profile(D, {4, 8, 16, 32});
    for (int j = 1; j < 4; ++j)
      if (!(prof[j].value > prof[j - 1].value)) {
        std::ostringstream os;
        os << "sample " << k << ": profile(" << prof[j].degree
           << ")=" << fmt(prof[j].value) << " fails to exceed profile("
           << prof[j - 1].degree << ")=" << fmt(prof[j - 1].value);
        return {false, os.str()};
      }
  }
  std::ostringstream os;
  os << "samples=20 min_gap=" << fmt(min_gap) << " profile doubles at N=8,16,32";
  return {true, os.str()};
}

// ----------------------------------------------------------------------------
// 11. Range of an inner derivation lies in the commutator ideal: the
//     abelianization of aX - Xa vanishes exactly on 50 random (X, a) pairs
//     per loop graph, degree <= 4.

Outcome criterion_commutator_range() {
  long pairs = 0;
  double worst_char = 0.0;
  for (int m : {2, 3}) {
    const DirectedGraph g = single_vertex_graph(m);
    std::mt19937_64 rng(kSeed + 11 + m);
    for (int k = 0; k < 50; ++k) {
      const NcPoly x = random_loop_poly(g, 4, rng);
      const RangeCommutatorReport r =
          inner_range_in_commutator_check(x, 1, 4, 1e-12, kSeed + k);
      ++pairs;
      worst_char = std::max(worst_char, r.max_char_value);
      if (!r.pass || r.max_abelian_norm != 0.0) {
        std::ostringstream os;
        os << "B" << m << " pair " << k << ": abelian norm "
           << fmt(r.max_abelian_norm);
        return {false, os.str()};
      }
    }
  }
  std::ostringstream os;
  os << "pairs=" << pairs << " abelianization exactly 0 max_char=" << fmt(worst_char);
  return {true, os.str()};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {"representation-contractivity", criterion_contractivity},
      {"onto-image-dimension", criterion_onto_dimension},
      {"cycle-model-factorization", criterion_factorization},
      {"twist-route-consistency", criterion_twist_consistency},
      {"inner-vs-kernel-agreement", criterion_inner_agreement},
      {"noninner-constructions", criterion_noninner_constructions},
      {"derivation-space-factoring", criterion_factor_completeness},
      {"norm-growth-dichotomy", criterion_growth_dichotomy},
      {"character-derivations", criterion_character_derivations},
      {"boundary-peaking-and-growth", criterion_boundary_behaviour},
      {"commutator-ideal-range", criterion_commutator_range},
  };

  int failures = 0;
  const auto suite_start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = entries[i].run();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!out.pass) ++failures;
    std::printf("%s %2zu %-28s %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", i + 1,
                entries[i].name, out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start)
          .count();
  std::printf("%d/%zu criteria passed in %.1fs\n",
              static_cast<int>(entries.size()) - failures, entries.size(), total);
  return failures == 0 ? 0 : 1;
}
