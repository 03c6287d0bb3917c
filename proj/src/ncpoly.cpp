#include "semilab/ncpoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semilab {

// ---- CommPoly ----

int CommPoly::total_degree() const {
  int d = 0;
  for (auto& [expo, c] : terms_) {
    int s = 0;
    for (int k : expo) s += k;
    d = std::max(d, s);
  }
  return terms_.empty() ? -1 : d;
}

void CommPoly::add_term(const std::vector<int>& expo, Complex c) {
  if (static_cast<int>(expo.size()) != nvars_)
    throw std::invalid_argument("CommPoly: exponent arity mismatch");
  auto it = terms_.find(expo);
  if (it == terms_.end()) {
    if (std::abs(c) > kCoeffPrune) terms_.emplace(expo, c);
  } else {
    it->second += c;
    if (std::abs(it->second) <= kCoeffPrune) terms_.erase(it);
  }
}

void CommPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = std::abs(it->second) <= kCoeffPrune ? terms_.erase(it) : std::next(it);
}

CommPoly CommPoly::operator+(const CommPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("CommPoly: arity mismatch");
  CommPoly r(*this);
  for (auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

CommPoly CommPoly::operator-(const CommPoly& o) const { return *this + o * Complex(-1); }

CommPoly CommPoly::operator*(Complex c) const {
  CommPoly r(nvars_);
  for (auto& [e, v] : terms_) r.add_term(e, v * c);
  return r;
}

CommPoly CommPoly::operator*(const CommPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("CommPoly: arity mismatch");
  CommPoly r(nvars_);
  std::vector<int> expo(nvars_);
  for (auto& [e1, c1] : terms_)
    for (auto& [e2, c2] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) expo[i] = e1[i] + e2[i];
      r.add_term(expo, c1 * c2);
    }
  return r;
}

Complex CommPoly::eval(const std::vector<Complex>& z) const {
  if (static_cast<int>(z.size()) != nvars_)
    throw std::invalid_argument("CommPoly::eval: arity mismatch");
  Complex out = 0;
  for (auto& [expo, c] : terms_) {
    Complex t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < expo[i]; ++k) t *= z[i];
    out += t;
  }
  return out;
}

CommPoly CommPoly::partial(int i) const {
  if (i < 0 || i >= nvars_) throw std::invalid_argument("CommPoly::partial: bad index");
  CommPoly r(nvars_);
  for (auto& [expo, c] : terms_) {
    if (expo[i] == 0) continue;
    std::vector<int> e = expo;
    e[i] -= 1;
    r.add_term(e, c * static_cast<double>(expo[i]));
  }
  return r;
}

CommPoly CommPoly::constant(int nvars, Complex c) {
  CommPoly r(nvars);
  r.add_term(std::vector<int>(nvars, 0), c);
  return r;
}

CommPoly CommPoly::variable(int nvars, int i) {
  CommPoly r(nvars);
  std::vector<int> e(nvars, 0);
  e.at(i) = 1;
  r.add_term(e, 1.0);
  return r;
}

// ---- NcPoly ----

NcPoly NcPoly::vertex(const DirectedGraph& g, int v) {
  if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("NcPoly: bad vertex");
  NcPoly p(&g);
  p.terms_.emplace(Word::at_vertex(v), 1.0);
  return p;
}

NcPoly NcPoly::edge(const DirectedGraph& g, int e) {
  if (e < 0 || e >= g.num_edges()) throw std::invalid_argument("NcPoly: bad edge");
  NcPoly p(&g);
  p.terms_.emplace(Word{{e}, -1}, 1.0);
  return p;
}

NcPoly NcPoly::word(const DirectedGraph& g, const Word& w) {
  if (w.is_vertex()) return vertex(g, w.vertex);
  if (!g.is_path(PathWord{w.edges}))
    throw std::invalid_argument("NcPoly::word: edge sequence is not a path");
  NcPoly p(&g);
  p.terms_.emplace(w, 1.0);
  return p;
}

NcPoly NcPoly::unit(const DirectedGraph& g) {
  NcPoly p(&g);
  for (int v = 0; v < g.num_vertices(); ++v) p.terms_.emplace(Word::at_vertex(v), 1.0);
  return p;
}

int NcPoly::degree() const {
  int d = -1;
  for (auto& [w, c] : terms_) d = std::max(d, w.degree());
  return d;
}

void NcPoly::add_term(const Word& w, Complex c) {
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    if (std::abs(c) > kCoeffPrune) terms_.emplace(w, c);
  } else {
    it->second += c;
    if (std::abs(it->second) <= kCoeffPrune) terms_.erase(it);
  }
}

void NcPoly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = std::abs(it->second) <= kCoeffPrune ? terms_.erase(it) : std::next(it);
}

double NcPoly::coeff_norm() const {
  double s = 0;
  for (auto& [w, c] : terms_) s += std::norm(c);
  return std::sqrt(s);
}

static void check_same_graph(const NcPoly& a, const NcPoly& b) {
  if (a.graph() && b.graph() && a.graph() != b.graph())
    throw std::invalid_argument("NcPoly: operands live over different graphs");
}

NcPoly NcPoly::operator+(const NcPoly& o) const {
  check_same_graph(*this, o);
  NcPoly r(*this);
  if (!r.graph_) r.graph_ = o.graph_;
  for (auto& [w, c] : o.terms_) r.add_term(w, c);
  return r;
}

NcPoly NcPoly::operator-(const NcPoly& o) const { return *this + o * Complex(-1); }

NcPoly NcPoly::operator*(Complex c) const {
  NcPoly r(graph_);
  for (auto& [w, v] : terms_) r.add_term(w, v * c);
  return r;
}

std::optional<Word> word_product(const DirectedGraph& g, const Word& a, const Word& b) {
  if (a.is_vertex() && b.is_vertex())
    return a.vertex == b.vertex ? std::optional<Word>(a) : std::nullopt;
  if (a.is_vertex()) {
    // P_v L_w = L_w iff v = r(first edge of w)
    return a.vertex == g.range(b.edges.front()) ? std::optional<Word>(b) : std::nullopt;
  }
  if (b.is_vertex()) {
    return b.vertex == g.source(a.edges.back()) ? std::optional<Word>(a) : std::nullopt;
  }
  // L_a L_b: junction needs r(b_1) = s(a_last)
  if (g.range(b.edges.front()) != g.source(a.edges.back())) return std::nullopt;
  Word out;
  out.edges = a.edges;
  out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
  return out;
}

NcPoly NcPoly::mul(const NcPoly& a, const NcPoly& b, int degree_cap) {
  check_same_graph(a, b);
  const DirectedGraph* g = a.graph_ ? a.graph_ : b.graph_;
  NcPoly r(g);
  if (!g) return r;
  for (auto& [wa, ca] : a.terms_)
    for (auto& [wb, cb] : b.terms_) {
      auto w = word_product(*g, wa, wb);
      if (!w) continue;
      if (w->degree() > degree_cap)
        throw std::invalid_argument("NcPoly::mul: product degree exceeds cap (" +
                                    std::to_string(degree_cap) + ")");
      r.add_term(*w, ca * cb);
    }
  return r;
}

NcPoly NcPoly::operator*(const NcPoly& o) const {
  return mul(*this, o, RunConfig{}.degree_cap);
}

CommPoly NcPoly::abelianize() const {
  if (!graph_) return CommPoly(0);
  if (graph_->num_vertices() != 1)
    throw std::invalid_argument("abelianize: graph must have a single vertex");
  const int n = graph_->num_edges();
  // Accumulate each exponent class together with its absolute mass; a class
  // whose sum is negligible against its mass is rounding debris from
  // reordered cancellation (e.g. the two halves of a commutator) and is
  // dropped, so genuinely commutator-ideal elements abelianize to exactly 0.
  std::map<std::vector<int>, std::pair<Complex, double>> acc;
  std::vector<int> expo(n);
  for (auto& [w, c] : terms_) {
    std::fill(expo.begin(), expo.end(), 0);
    for (int e : w.edges) expo[e] += 1;
    auto& slot = acc[expo];
    slot.first += c;
    slot.second += std::abs(c);
  }
  CommPoly out(n);
  for (auto& [e, slot] : acc)
    if (std::abs(slot.first) > kCoeffPrune * (1.0 + slot.second))
      out.add_term(e, slot.first);
  return out;
}

bool NcPoly::in_commutator_ideal() const { return abelianize().is_zero(); }

std::vector<Word> enumerate_words(const DirectedGraph& g, int max_len,
                                  bool include_vertices) {
  std::vector<Word> out;
  if (include_vertices)
    for (int v = 0; v < g.num_vertices(); ++v) out.push_back(Word::at_vertex(v));
  std::vector<std::vector<int>> cur;  // words of the previous length
  for (int e = 0; e < g.num_edges(); ++e) cur.push_back({e});
  for (int len = 1; len <= max_len && !cur.empty(); ++len) {
    for (auto& w : cur) out.push_back(Word{w, -1});
    std::vector<std::vector<int>> next;
    if (len == max_len) break;
    for (auto& w : cur)
      for (int e = 0; e < g.num_edges(); ++e)
        if (g.range(e) == g.source(w.back())) {
          auto w2 = w;
          w2.push_back(e);
          next.push_back(std::move(w2));
        }
    cur = std::move(next);
  }
  return out;
}

std::vector<Word> enumerate_fock_paths(const DirectedGraph& g, int max_len) {
  return enumerate_words(g, max_len, true);
}

}  // namespace semilab
