#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "semilab/config.hpp"
#include "semilab/graph.hpp"

namespace semilab {

using Complex = std::complex<double>;

// Basis element of the free semigroupoid algebra of a graph: either a vertex
// idempotent P_v (edges empty, vertex set) or an edge word L_{e_1}...L_{e_k}
// (a path, rightmost edge acts first).
struct Word {
  std::vector<int> edges;
  int vertex = -1;  // meaningful iff edges.empty()

  bool is_vertex() const { return edges.empty(); }
  int degree() const { return static_cast<int>(edges.size()); }

  static Word at_vertex(int v) { return Word{{}, v}; }
  static Word from_path(const PathWord& w) { return Word{w.edges, -1}; }

  friend bool operator==(const Word& a, const Word& b) {
    return a.edges == b.edges && (!a.edges.empty() || a.vertex == b.vertex);
  }
  friend bool operator<(const Word& a, const Word& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    if (a.edges.empty()) return a.vertex < b.vertex;
    return a.edges < b.edges;
  }
};

// Commutative polynomial in nvars variables, used for abelianizations and
// character-side symbol calculus. Keys are exponent vectors of length nvars.
class CommPoly {
 public:
  explicit CommPoly(int nvars = 0) : nvars_(nvars) {}

  int nvars() const { return nvars_; }
  const std::map<std::vector<int>, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  void add_term(const std::vector<int>& expo, Complex c);
  CommPoly operator+(const CommPoly& o) const;
  CommPoly operator-(const CommPoly& o) const;
  CommPoly operator*(const CommPoly& o) const;
  CommPoly operator*(Complex c) const;

  Complex eval(const std::vector<Complex>& z) const;
  CommPoly partial(int i) const;  // d/dz_i

  static CommPoly constant(int nvars, Complex c);
  static CommPoly variable(int nvars, int i);

 private:
  int nvars_;
  std::map<std::vector<int>, Complex> terms_;
  void prune();
};

// Element of the free semigroupoid algebra CQ: finite complex combination of
// vertex idempotents and path words. Immutable-value style; the graph must
// outlive the polynomial.
class NcPoly {
 public:
  NcPoly() = default;
  explicit NcPoly(const DirectedGraph* g) : graph_(g) {}

  static NcPoly vertex(const DirectedGraph& g, int v);
  static NcPoly edge(const DirectedGraph& g, int e);
  static NcPoly word(const DirectedGraph& g, const Word& w);  // validates paths
  static NcPoly unit(const DirectedGraph& g);                 // sum of all P_v

  const DirectedGraph* graph() const { return graph_; }
  const std::map<Word, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // max word length, 0 for vertex terms; -1 if zero

  NcPoly operator+(const NcPoly& o) const;
  NcPoly operator-(const NcPoly& o) const;
  NcPoly operator*(Complex c) const;
  NcPoly operator*(const NcPoly& o) const;  // default degree cap

  void add_term(const Word& w, Complex c);
  double coeff_norm() const;  // l2 norm of the coefficient vector

  static NcPoly mul(const NcPoly& a, const NcPoly& b, int degree_cap);

  // Assumes a single-vertex graph; maps L_{f_i} to z_i and P_u to 1.
  CommPoly abelianize() const;
  // True iff the abelianization is the zero polynomial (after pruning).
  bool in_commutator_ideal() const;

 private:
  const DirectedGraph* graph_ = nullptr;
  std::map<Word, Complex> terms_;
  void prune();
};

inline NcPoly commutator(const NcPoly& a, const NcPoly& b,
                         int degree_cap = RunConfig{}.degree_cap) {
  return NcPoly::mul(a, b, degree_cap) - NcPoly::mul(b, a, degree_cap);
}

// Word product in the path algebra; nullopt encodes zero.
std::optional<Word> word_product(const DirectedGraph& g, const Word& a, const Word& b);

// Vertices (in index order) followed by all edge words of length 1..max_len
// in (length, lexicographic) order.
std::vector<Word> enumerate_words(const DirectedGraph& g, int max_len,
                                  bool include_vertices = true);

// All paths of length <= max_len including the empty paths at each vertex.
// Used as the truncated Fock basis.
std::vector<Word> enumerate_fock_paths(const DirectedGraph& g, int max_len);

}  // namespace semilab
