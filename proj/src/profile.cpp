#include "semilab/profile.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "semilab/fock.hpp"

namespace semilab {

namespace {

constexpr std::size_t kMaxCandidateWords = 4096;
constexpr std::size_t kMaxRefinementBasis = 1024;

Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  return Complex(nd(rng), nd(rng)) / std::sqrt(2.0);
}

// Words of length <= max_len (plus vertices), truncated at a size cap so the
// candidate set stays affordable on graphs with many edges.
std::vector<Word> bounded_words(const DirectedGraph& g, int max_len,
                                std::size_t cap) {
  std::vector<Word> out;
  for (int v = 0; v < g.num_vertices(); ++v) out.push_back(Word::at_vertex(v));
  std::vector<Word> level;
  for (int e = 0; e < g.num_edges(); ++e) level.push_back(Word{{e}, -1});
  for (int len = 1; len <= max_len && !level.empty(); ++len) {
    for (const Word& w : level) {
      if (out.size() >= cap) return out;
      out.push_back(w);
    }
    std::vector<Word> next;
    for (const Word& w : level) {
      const int tail = g.source(w.edges.back());
      for (int e = 0; e < g.num_edges(); ++e) {
        if (g.range(e) != tail) continue;
        Word child = w;
        child.edges.push_back(e);
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace

NormOracle make_circle_norm_oracle(const DirectedGraph& g, const PathWord& w,
                                   int grid_size) {
  if (!g.is_cycle(w))
    throw std::invalid_argument("circle norm oracle requires a cycle word");
  const DirectedGraph* gp = &g;
  return [gp, w, grid_size](const NcPoly& p) -> double {
    if (p.is_zero()) return 0.0;
    if (p.graph() != gp)
      throw std::invalid_argument("polynomial belongs to a different graph");
    GradedMatrixFn F = iota_w(p, w, std::max(p.degree(), 1));
    return circle_sup_norm(F, grid_size);
  };
}

NormOracle make_fock_oracle(const DirectedGraph& g, int max_len) {
  const DirectedGraph* gp = &g;
  return [gp, max_len](const NcPoly& p) -> double {
    if (p.is_zero()) return 0.0;
    if (p.graph() != gp)
      throw std::invalid_argument("polynomial belongs to a different graph");
    return fock_norm_lower_bound(p, max_len);
  };
}

std::vector<ProfilePoint> derivation_norm_profile(const DerivationAtRep& d,
                                                  const std::vector<int>& degrees,
                                                  const NormOracle& oracle,
                                                  std::uint64_t seed) {
  const DirectedGraph& g = *d.rep.graph;
  int max_deg = 1;
  for (int n : degrees) max_deg = std::max(max_deg, n);
  std::vector<Word> words = bounded_words(g, max_deg, kMaxCandidateWords);
  std::mt19937_64 rng(seed);

  std::vector<ProfilePoint> out;
  for (int N : degrees) {
    ProfilePoint point;
    point.degree = N;
    point.witness = NcPoly(&g);

    auto consider = [&](const NcPoly& f) {
      if (f.is_zero()) return;
      const double den = oracle(f);
      if (den <= 1e-14) return;
      const double val = spectral_norm(extend(d, f)) / den;
      if (val > point.value) {
        point.value = val;
        point.witness = f * Complex(1.0 / den, 0.0);
      }
    };

    std::vector<Word> basis;
    for (const Word& w : words)
      if (w.degree() <= N) basis.push_back(w);

    // Single words.
    for (const Word& w : basis) consider(NcPoly::word(g, w));

    // Truncated Mobius peak (z - a) * sum_k conj(a)^k z^k at the evaluation
    // point of a one-dimensional one-loop representation; its derivative at
    // a realises the Schwarz-Pick bound in the limit.
    if (g.num_vertices() == 1 && g.num_edges() == 1 && d.rep.dim == 1) {
      const Complex a = d.rep.edge_images[0](0, 0);
      if (std::abs(a) > 1e-12 && std::abs(a) < 1.0 - 1e-9 && N >= 1) {
        NcPoly f(&g);
        const Complex ca = std::conj(a);
        f.add_term(Word::at_vertex(0), -a);
        Complex cpow = 1.0;  // conj(a)^(k-1)
        for (int k = 1; k < N; ++k) {
          f.add_term(Word{{std::vector<int>(static_cast<std::size_t>(k), 0)}, -1},
                     cpow * (1.0 - std::norm(a)));
          cpow *= ca;
        }
        f.add_term(Word{{std::vector<int>(static_cast<std::size_t>(N), 0)}, -1}, cpow);
        consider(f);
      }
    }

    // Random polynomials over the candidate words.
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    for (int trial = 0; trial < 8 && !basis.empty(); ++trial) {
      NcPoly f(&g);
      if (basis.size() <= 32) {
        for (const Word& w : basis) f.add_term(w, random_complex(rng));
      } else {
        for (int t = 0; t < 32; ++t) f.add_term(basis[pick(rng)], random_complex(rng));
      }
      consider(f);
    }

    // Mean-square refinement: the top right singular vector of the extension
    // operator on the candidate basis, re-scored under the oracle norm.
    if (basis.size() <= kMaxRefinementBasis) {
      const int nn = d.rep.dim * d.rep.dim;
      Eigen::MatrixXcd E(nn, static_cast<int>(basis.size()));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        Eigen::MatrixXcd val = extend_word(d, basis[j]);
        E.col(static_cast<int>(j)) =
            Eigen::Map<const Eigen::VectorXcd>(val.data(), val.size());
      }
      if (E.norm() > 0.0) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(E, Eigen::ComputeThinV);
        NcPoly f(&g);
        for (std::size_t j = 0; j < basis.size(); ++j) {
          Complex c = svd.matrixV()(static_cast<int>(j), 0);
          if (std::abs(c) > kCoeffPrune) f.add_term(basis[j], c);
        }
        consider(f);
      }
    }

    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace semilab
