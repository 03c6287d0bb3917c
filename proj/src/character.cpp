#include "semilab/character.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "semilab/config.hpp"

namespace semilab {

namespace {

Complex int_pow(Complex z, int k) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

// Multiplicity classes of a polynomial over the loop edges at chi.v0.
// Key: exponent vector over loop indices (all-zero for P_{v0}); value:
// (coefficient sum, accumulated absolute mass). Words that leave the loops
// and foreign vertex idempotents are dropped (the character kills them).
// A class whose sum is negligible against its mass is rounding debris from
// reordered cancellation and is pruned, so commutator-ideal elements come
// out with no classes at all.
std::map<std::vector<int>, Complex> character_classes(const Character& chi,
                                                      const NcPoly& a) {
  if (!chi.graph) throw std::invalid_argument("character has no graph");
  if (a.graph() != chi.graph)
    throw std::invalid_argument("polynomial and character live on different graphs");
  const int m = static_cast<int>(chi.loop_edges.size());
  std::vector<int> loop_index(chi.graph->num_edges(), -1);
  for (int i = 0; i < m; ++i) loop_index[chi.loop_edges[i]] = i;

  std::map<std::vector<int>, std::pair<Complex, double>> acc;
  std::vector<int> expo(m);
  for (const auto& [w, c] : a.terms()) {
    std::fill(expo.begin(), expo.end(), 0);
    if (w.is_vertex()) {
      if (w.vertex != chi.v0) continue;
    } else {
      bool killed = false;
      for (int e : w.edges) {
        const int li = loop_index[e];
        if (li < 0) {
          killed = true;
          break;
        }
        expo[li] += 1;
      }
      if (killed) continue;
    }
    auto& slot = acc[expo];
    slot.first += c;
    slot.second += std::abs(c);
  }

  std::map<std::vector<int>, Complex> out;
  for (const auto& [e, slot] : acc)
    if (std::abs(slot.first) > kCoeffPrune * (1.0 + slot.second))
      out.emplace(e, slot.first);
  return out;
}

Complex class_monomial_value(const std::vector<Complex>& lambda,
                             const std::vector<int>& expo) {
  Complex v{1.0, 0.0};
  for (std::size_t i = 0; i < expo.size(); ++i) v *= int_pow(lambda[i], expo[i]);
  return v;
}

Complex rand_box(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return Complex{u(rng), u(rng)};
}

// Random polynomial supported on vertex idempotents and loop words at v0.
NcPoly random_loop_poly(const Character& chi, int max_degree, std::mt19937_64& rng) {
  const DirectedGraph& g = *chi.graph;
  NcPoly p(&g);
  std::uniform_int_distribution<int> len(0, std::max(max_degree, 0));
  const int nterms = 3 * std::max(max_degree, 1) + 2;
  for (int t = 0; t < nterms; ++t) {
    const int l = len(rng);
    if (l == 0 || chi.loop_edges.empty()) {
      std::uniform_int_distribution<int> vv(0, g.num_vertices() - 1);
      p.add_term(Word::at_vertex(vv(rng)), rand_box(rng));
      continue;
    }
    std::uniform_int_distribution<int> le(0, static_cast<int>(chi.loop_edges.size()) - 1);
    Word w;
    w.edges.resize(l);
    for (int j = 0; j < l; ++j) w.edges[j] = chi.loop_edges[le(rng)];
    p.add_term(w, rand_box(rng));
  }
  return p;
}

// Random polynomial over all edges of a single-vertex graph.
NcPoly random_free_poly(const DirectedGraph& g, int max_degree, std::mt19937_64& rng) {
  NcPoly p(&g);
  std::uniform_int_distribution<int> len(0, std::max(max_degree, 0));
  const int nterms = 3 * std::max(max_degree, 1) + 2;
  for (int t = 0; t < nterms; ++t) {
    const int l = len(rng);
    if (l == 0 || g.num_edges() == 0) {
      p.add_term(Word::at_vertex(0), rand_box(rng));
      continue;
    }
    std::uniform_int_distribution<int> ee(0, g.num_edges() - 1);
    Word w;
    w.edges.resize(l);
    for (int j = 0; j < l; ++j) w.edges[j] = ee(rng);
    p.add_term(w, rand_box(rng));
  }
  return p;
}

}  // namespace

Character make_character(const DirectedGraph& g, int v0, std::vector<Complex> lambda) {
  if (v0 < 0 || v0 >= g.num_vertices())
    throw std::invalid_argument("make_character: vertex index out of range");
  Character chi;
  chi.graph = &g;
  chi.v0 = v0;
  for (int e = 0; e < g.num_edges(); ++e)
    if (g.source(e) == v0 && g.range(e) == v0) chi.loop_edges.push_back(e);
  if (lambda.size() != chi.loop_edges.size())
    throw std::invalid_argument("make_character: expected " +
                                std::to_string(chi.loop_edges.size()) +
                                " loop values, got " + std::to_string(lambda.size()));
  double nrm2 = 0.0;
  for (const Complex& z : lambda) nrm2 += std::norm(z);
  if (std::sqrt(nrm2) > 1.0 + 1e-12)
    throw std::invalid_argument("make_character: loop vector leaves the closed unit ball");
  chi.lambda = std::move(lambda);
  return chi;
}

std::vector<Character> enumerate_character_structures(const DirectedGraph& g) {
  std::vector<Character> out;
  out.reserve(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    int loops = 0;
    for (int e = 0; e < g.num_edges(); ++e)
      if (g.source(e) == v && g.range(e) == v) ++loops;
    out.push_back(make_character(g, v, std::vector<Complex>(loops, Complex{0.0, 0.0})));
  }
  return out;
}

CommPoly char_symbol(const Character& chi, const NcPoly& a) {
  CommPoly out(static_cast<int>(chi.loop_edges.size()));
  for (const auto& [expo, s] : character_classes(chi, a)) out.add_term(expo, s);
  return out;
}

Complex eval_character(const Character& chi, const NcPoly& a) {
  Complex total{0.0, 0.0};
  for (const auto& [expo, s] : character_classes(chi, a))
    total += s * class_monomial_value(chi.lambda, expo);
  return total;
}

CharDerivation char_derivation(const Character& chi, std::vector<Complex> d) {
  if (d.size() != chi.loop_edges.size())
    throw std::invalid_argument("char_derivation: expected " +
                                std::to_string(chi.loop_edges.size()) +
                                " loop values, got " + std::to_string(d.size()));
  return CharDerivation{chi, std::move(d)};
}

Complex extend_char(const CharDerivation& D, const NcPoly& a) {
  const Character& chi = D.chi;
  if (D.d.size() != chi.loop_edges.size())
    throw std::invalid_argument("extend_char: derivation/character size mismatch");
  const int m = static_cast<int>(chi.loop_edges.size());
  Complex total{0.0, 0.0};
  std::vector<int> letters;
  for (const auto& [expo, s] : character_classes(chi, a)) {
    letters.clear();
    for (int i = 0; i < m; ++i)
      for (int rep = 0; rep < expo[i]; ++rep) letters.push_back(i);
    const int k = static_cast<int>(letters.size());
    if (k == 0) continue;  // vertex idempotents and the unit are killed
    // Position-by-position Leibniz sum over a representative word of the
    // class (the value only depends on the multiplicities).
    std::vector<Complex> suffix(k + 1);
    suffix[k] = Complex{1.0, 0.0};
    for (int t = k - 1; t >= 0; --t) suffix[t] = chi.lambda[letters[t]] * suffix[t + 1];
    Complex prefix{1.0, 0.0};
    Complex val{0.0, 0.0};
    for (int t = 0; t < k; ++t) {
      val += prefix * D.d[letters[t]] * suffix[t + 1];
      prefix *= chi.lambda[letters[t]];
    }
    total += s * val;
  }
  return total;
}

CharDerivation canonical_derivation(const Character& chi, int i) {
  if (i < 0 || i >= static_cast<int>(chi.loop_edges.size()))
    throw std::invalid_argument("canonical_derivation: loop index out of range");
  if (chi.lambda[i] != Complex{0.0, 0.0})
    throw std::invalid_argument(
        "canonical_derivation: coordinate " + std::to_string(i) + " is nonzero");
  std::vector<Complex> d(chi.loop_edges.size(), Complex{0.0, 0.0});
  d[i] = Complex{1.0, 0.0};
  return CharDerivation{chi, std::move(d)};
}

std::pair<CharDerivation, CharDerivation> decompose(const CharDerivation& D) {
  CharDerivation d1{D.chi, std::vector<Complex>(D.d.size(), Complex{0.0, 0.0})};
  CharDerivation d2{D.chi, std::vector<Complex>(D.d.size(), Complex{0.0, 0.0})};
  for (std::size_t i = 0; i < D.d.size(); ++i) {
    if (D.chi.lambda[i] == Complex{0.0, 0.0})
      d2.d[i] = D.d[i];
    else
      d1.d[i] = D.d[i];
  }
  return {d1, d2};
}

DerivativeFormulaReport derivative_formula_check(const CharDerivation& D, int samples,
                                                 int max_degree, double tol,
                                                 std::uint64_t seed) {
  const Character& chi = D.chi;
  const int m = static_cast<int>(chi.loop_edges.size());
  std::mt19937_64 rng(seed);
  DerivativeFormulaReport rep;
  rep.samples = samples;
  const bool single_vertex = chi.graph->num_vertices() == 1;
  for (int s = 0; s < samples; ++s) {
    const NcPoly a = random_loop_poly(chi, max_degree, rng);
    const Complex lhs = extend_char(D, a);
    const CommPoly symbol = single_vertex ? a.abelianize() : char_symbol(chi, a);
    Complex rhs{0.0, 0.0};
    for (int i = 0; i < m; ++i)
      rhs += D.d[i] * symbol.partial(i).eval(chi.lambda);
    rep.max_error = std::max(rep.max_error, std::abs(lhs - rhs));
  }
  rep.pass = rep.max_error <= tol;
  return rep;
}

PeakingReport boundary_peaking_witness(const std::vector<Complex>& lambda, int grid,
                                       double margin) {
  if (lambda.empty()) throw std::invalid_argument("boundary_peaking_witness: empty vector");
  double nrm2 = 0.0;
  for (const Complex& z : lambda) nrm2 += std::norm(z);
  if (std::abs(std::sqrt(nrm2) - 1.0) > 1e-12)
    throw std::invalid_argument("boundary_peaking_witness: vector is not on the unit sphere");
  const Complex l1 = lambda[0];
  const double r1 = std::abs(l1);
  if (r1 == 0.0)
    throw std::invalid_argument("boundary_peaking_witness: first coordinate vanishes");
  if (margin >= 2.0 * r1)
    throw std::invalid_argument("boundary_peaking_witness: margin swallows the slice disk");
  PeakingReport rep;
  rep.peak_value = std::abs((l1 + l1) / (2.0 * l1));
  const int gr = std::max(grid, 2);
  double off = 0.0;
  int count = 0;
  for (int j = 0; j < gr; ++j) {
    const double r = r1 * static_cast<double>(j) / (gr - 1);
    for (int k = 0; k < gr; ++k) {
      const double th = 2.0 * M_PI * k / gr;
      const Complex z = r * Complex{std::cos(th), std::sin(th)};
      if (std::abs(z - l1) < margin) continue;
      off = std::max(off, std::abs(z + l1) / (2.0 * r1));
      ++count;
    }
  }
  rep.off_peak_max = off;
  rep.gap = 1.0 - off;
  rep.grid_points = count;
  rep.pass = std::abs(rep.peak_value - 1.0) <= 1e-9 && count > 0 && rep.gap > 0.0;
  return rep;
}

RangeCommutatorReport inner_range_in_commutator_check(const NcPoly& X, int samples,
                                                      int max_degree, double tol,
                                                      std::uint64_t seed) {
  if (!X.graph()) throw std::invalid_argument("inner_range_in_commutator_check: zero graph");
  const DirectedGraph& g = *X.graph();
  if (g.num_vertices() != 1)
    throw std::invalid_argument("inner_range_in_commutator_check: single-vertex graph required");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  RangeCommutatorReport rep;
  rep.samples = samples;
  const int cap = std::max(1, std::max(max_degree, X.degree()) * 2 + 2);
  for (int s = 0; s < samples; ++s) {
    const NcPoly a = random_free_poly(g, max_degree, rng);
    const NcPoly r = commutator(a, X, cap);
    const CommPoly ab = r.abelianize();
    for (const auto& [expo, c] : ab.terms())
      rep.max_abelian_norm = std::max(rep.max_abelian_norm, std::abs(c));
    // A few random characters must also kill the commutator.
    for (int t = 0; t < 3; ++t) {
      std::vector<Complex> lam(g.num_edges());
      double nrm = 0.0;
      for (Complex& z : lam) {
        z = rand_box(rng);
        nrm += std::norm(z);
      }
      nrm = std::sqrt(nrm);
      if (nrm > 1.0)
        for (Complex& z : lam) z /= nrm;
      const Character chi = make_character(g, 0, lam);
      rep.max_char_value = std::max(rep.max_char_value, std::abs(eval_character(chi, r)));
    }
  }
  rep.pass = rep.max_abelian_norm == 0.0 && rep.max_char_value <= tol;
  return rep;
}

std::vector<Complex> exp_orbit_coefficients(const Character& chi, const NcPoly& X,
                                            const NcPoly& a, int order) {
  if (order < 0) throw std::invalid_argument("exp_orbit_coefficients: negative order");
  std::vector<Complex> out;
  out.reserve(order + 1);
  NcPoly b = a;
  double fact = 1.0;
  out.push_back(eval_character(chi, b));
  for (int k = 1; k <= order; ++k) {
    const int cap = std::max(1, std::max(b.degree(), 0) + std::max(X.degree(), 0));
    b = commutator(b, X, cap);
    fact *= k;
    out.push_back(eval_character(chi, b) / fact);
  }
  return out;
}

std::vector<D1ProfilePoint> d1_profile(const CharDerivation& D,
                                       const std::vector<int>& degrees) {
  const Character& chi = D.chi;
  const int m = static_cast<int>(chi.loop_edges.size());
  std::vector<int> degs = degrees;
  std::sort(degs.begin(), degs.end());
  std::vector<D1ProfilePoint> out;
  if (degs.empty()) return out;
  if (m == 0) {
    for (int n : degs) out.push_back({n, 0.0});
    return out;
  }

  // All candidate symbols have closed-form derivatives at lambda and
  // closed-form ball-sup bounds, so each ratio is computed directly. With
  // p = sum_i conj(lambda_i) z_i: p(lambda) = s^2 for s = ||lambda||_2, and
  // sum_i d_i (d/dz_i) applied to p^N contracts to N p^{N-1}(lambda) c with
  // c = sum_i d_i conj(lambda_i).
  double s2 = 0.0;
  Complex c{0.0, 0.0};
  for (int i = 0; i < m; ++i) {
    s2 += std::norm(chi.lambda[i]);
    c += D.d[i] * std::conj(chi.lambda[i]);
  }
  const double s = std::sqrt(s2);

  double running = 0.0;
  for (int n : degs) {
    const int nn = std::max(n, 1);
    double best = 0.0;
    if (s > 0.0) {
      // pairing^N: |D| = N |c| s^{2(N-1)}, sup = s^N.
      best = std::max(best, nn * std::abs(c) * std::pow(s, nn - 2));
      // peak^N with peak = (1 + p)/2: |D| = (N/2) |c| ((1+s^2)/2)^{N-1},
      // sup = ((1+s)/2)^N.
      best = std::max(best, 0.5 * nn * std::abs(c) *
                                std::pow(0.5 * (1.0 + s2), nn - 1) /
                                std::pow(0.5 * (1.0 + s), nn));
    }
    for (int i = 0; i < m; ++i) {
      // z_i^N: |D| = N |d_i| |lambda_i|^{N-1}, sup = 1.
      best = std::max(best, nn * std::abs(D.d[i]) *
                                std::pow(std::abs(chi.lambda[i]), nn - 1));
      if (s > 0.0 && nn >= 2) {
        // z_i p^{N-1}: |D| = |d_i s^{2(N-1)} + (N-1) lambda_i s^{2(N-2)} c|,
        // sup <= s^{N-1}.
        const Complex dv = D.d[i] * std::pow(s2, nn - 1) +
                           chi.lambda[i] * static_cast<double>(nn - 1) *
                               std::pow(s2, nn - 2) * c;
        best = std::max(best, std::abs(dv) / std::pow(s, nn - 1));
      }
    }
    running = std::max(running, best);
    out.push_back({n, running});
  }
  return out;
}

}  // namespace semilab
