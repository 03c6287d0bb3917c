#include "semilab/cycle_algebra.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace semilab {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

Complex int_pow(Complex base, int k) {
  Complex out = 1.0;
  for (int t = 0; t < k; ++t) out *= base;
  return out;
}

void check_unimodular(Complex mu) {
  if (std::abs(std::abs(mu) - 1.0) > 1e-12)
    throw std::invalid_argument("mu must be unimodular");
}

}  // namespace

GradedMatrixFn::GradedMatrixFn(int n) : n_(n), entries_(n * n) {
  if (n <= 0) throw std::invalid_argument("GradedMatrixFn: size must be positive");
}

bool GradedMatrixFn::is_zero() const {
  for (auto& e : entries_)
    if (!e.empty()) return false;
  return true;
}

int GradedMatrixFn::degree() const {
  int d = -1;
  for (auto& e : entries_)
    if (!e.empty()) d = std::max(d, e.rbegin()->first);
  return d;
}

const std::map<int, Complex>& GradedMatrixFn::entry(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_)
    throw std::invalid_argument("GradedMatrixFn::entry: index out of range");
  return entries_[i * n_ + j];
}

void GradedMatrixFn::add_monomial(int i, int j, int k, Complex c) {
  if (i < 0 || i >= n_ || j < 0 || j >= n_)
    throw std::invalid_argument("GradedMatrixFn::add_monomial: index out of range");
  if (k < 0 || mod(k, n_) != mod(j - i, n_))
    throw std::invalid_argument("GradedMatrixFn::add_monomial: exponent violates grading");
  auto& e = entries_[i * n_ + j];
  auto it = e.find(k);
  if (it == e.end()) {
    if (std::abs(c) > kCoeffPrune) e.emplace(k, c);
  } else {
    it->second += c;
    if (std::abs(it->second) <= kCoeffPrune) e.erase(it);
  }
}

GradedMatrixFn GradedMatrixFn::operator+(const GradedMatrixFn& o) const {
  if (n_ != o.n_) throw std::invalid_argument("GradedMatrixFn: size mismatch");
  GradedMatrixFn r(*this);
  for (int idx = 0; idx < n_ * n_; ++idx)
    for (auto& [k, c] : o.entries_[idx]) r.add_monomial(idx / n_, idx % n_, k, c);
  return r;
}

GradedMatrixFn GradedMatrixFn::operator-(const GradedMatrixFn& o) const {
  return *this + o * Complex(-1);
}

GradedMatrixFn GradedMatrixFn::operator*(Complex c) const {
  GradedMatrixFn r(n_);
  for (int idx = 0; idx < n_ * n_; ++idx)
    for (auto& [k, v] : entries_[idx]) r.add_monomial(idx / n_, idx % n_, k, v * c);
  return r;
}

GradedMatrixFn GradedMatrixFn::operator*(const GradedMatrixFn& o) const {
  if (n_ != o.n_) throw std::invalid_argument("GradedMatrixFn: size mismatch");
  GradedMatrixFn r(n_);
  for (int i = 0; i < n_; ++i)
    for (int m = 0; m < n_; ++m) {
      const auto& left = entries_[i * n_ + m];
      if (left.empty()) continue;
      for (int j = 0; j < n_; ++j) {
        const auto& right = o.entries_[m * n_ + j];
        for (auto& [k1, c1] : left)
          for (auto& [k2, c2] : right) r.add_monomial(i, j, k1 + k2, c1 * c2);
      }
    }
  return r;
}

double GradedMatrixFn::coeff_norm() const {
  double s = 0;
  for (auto& e : entries_)
    for (auto& [k, c] : e) s += std::norm(c);
  return std::sqrt(s);
}

void GradedMatrixFn::prune() {
  for (auto& e : entries_)
    for (auto it = e.begin(); it != e.end();)
      it = std::abs(it->second) <= kCoeffPrune ? e.erase(it) : std::next(it);
}

std::vector<std::pair<std::array<int, 3>, Complex>> GradedMatrixFn::coefficients() const {
  std::vector<std::pair<std::array<int, 3>, Complex>> out;
  for (int idx = 0; idx < n_ * n_; ++idx)
    for (auto& [k, c] : entries_[idx])
      out.push_back({{idx / n_, idx % n_, k}, c});
  return out;
}

GradedMatrixFn GradedMatrixFn::identity(int n) {
  GradedMatrixFn r(n);
  for (int i = 0; i < n; ++i) r.add_monomial(i, i, 0, 1.0);
  return r;
}

GradedMatrixFn z_gen(int n, int i) {
  if (i < 1 || i > n) throw std::invalid_argument("z_gen: index out of range");
  GradedMatrixFn r(n);
  r.add_monomial(i - 1, i % n, 1, 1.0);
  return r;
}

GradedMatrixFn unit_proj(int n, int i) {
  if (i < 1 || i > n) throw std::invalid_argument("unit_proj: index out of range");
  GradedMatrixFn r(n);
  r.add_monomial(i - 1, i - 1, 0, 1.0);
  return r;
}

GradedMatrixFn iota_w(const NcPoly& a, const PathWord& w, int degree_cap) {
  const DirectedGraph& g = *a.graph();
  if (!g.is_path(w) || w.length() == 0)
    throw std::invalid_argument("iota_w: w must be a nonempty path");
  const int n = w.length();

  std::vector<GradedMatrixFn> vimg(g.num_vertices(), GradedMatrixFn(n));
  std::vector<GradedMatrixFn> eimg(g.num_edges(), GradedMatrixFn(n));
  for (int j = 1; j <= n; ++j) {
    const int ej = w.edges[j - 1];
    vimg[g.source(ej)] = vimg[g.source(ej)] + unit_proj(n, j);
    eimg[ej] = eimg[ej] + z_gen(n, j >= 2 ? j - 1 : n);
  }

  GradedMatrixFn out(n);
  for (const auto& [word, c] : a.terms()) {
    if (word.degree() > degree_cap)
      throw std::invalid_argument("iota_w: word degree exceeds cap");
    GradedMatrixFn img(n);
    if (word.is_vertex()) {
      img = vimg[word.vertex];
    } else {
      img = eimg[word.edges[0]];
      for (std::size_t t = 1; t < word.edges.size(); ++t)
        img = img * eimg[word.edges[t]];
    }
    out = out + img * c;
  }
  return out;
}

bool iota_onto_predicate(const DirectedGraph& g, const PathWord& w) {
  if (!g.is_cycle(w) || !g.is_primitive(w))
    throw std::invalid_argument("iota_onto_predicate: w must be a primitive cycle");
  std::vector<int> sources;
  for (int e : w.edges) sources.push_back(g.source(e));
  std::sort(sources.begin(), sources.end());
  return std::adjacent_find(sources.begin(), sources.end()) == sources.end();
}

bool ran_iota_contains(const DirectedGraph& g, const GradedMatrixFn& F,
                       const PathWord& w, int deg_bound) {
  if (!g.is_cycle(w) || !g.is_primitive(w))
    throw std::invalid_argument("ran_iota_contains: w must be a primitive cycle");
  const int n = w.length();
  if (F.size() != n)
    throw std::invalid_argument("ran_iota_contains: size mismatch with cycle length");
  if (F.degree() > deg_bound)
    throw std::invalid_argument("ran_iota_contains: F exceeds the stated degree bound");
  const int max_len = n * deg_bound + n;
  const double tol = 1e-10 * (1.0 + F.coeff_norm());

  // A graph word has a nonzero iota image only when it reads off consecutive
  // cycle edges, and then the image is the sum of one monomial z^l at
  // (a-1, a-1+l mod n) per run start producing that word (a = the shifted
  // generator label of the start). Runs of the same length with equal edge
  // sequences are therefore tied together: F is in the span iff its degree-l
  // coefficients are constant on each tied group of slots. Primitivity makes
  // every group with l >= n a singleton, which recovers the classical graded
  // containment of high-degree monomials.
  for (const auto& [ijk_probe, c_probe] : F.coefficients()) {
    const int k = ijk_probe[2];
    if (k == 0) continue;
    if (k > max_len) return false;
  }

  // Degrees present in F with k >= 1.
  std::vector<int> degrees;
  for (const auto& [ijk, c] : F.coefficients())
    if (ijk[2] >= 1) degrees.push_back(ijk[2]);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());

  for (int k : degrees) {
    // Group run starts by the word they spell.
    std::map<std::vector<int>, std::vector<std::pair<int, int>>> groups;
    for (int j0 = 1; j0 <= n; ++j0) {
      std::vector<int> word(k);
      for (int t = 0; t < k; ++t) word[t] = w.edges[mod(j0 - 1 + t, n)];
      const int a = j0 >= 2 ? j0 - 1 : n;
      groups[word].push_back({a - 1, mod(a - 1 + k, n)});
    }
    for (const auto& [word, slots] : groups) {
      Complex first = 0.0;
      bool have_first = false;
      for (const auto& [row, col] : slots) {
        const auto& poly = F.entry(row, col);
        auto it = poly.find(k);
        const Complex val = it == poly.end() ? Complex(0.0) : it->second;
        if (!have_first) {
          first = val;
          have_first = true;
        } else if (std::abs(val - first) > tol) {
          return false;
        }
      }
    }
  }

  // Degree-0 part: grading forces it onto the diagonal; it must lie in the
  // span of the 0/1 vertex-image patterns.
  std::vector<Eigen::VectorXcd> diag_basis;
  for (int v = 0; v < g.num_vertices(); ++v) {
    Eigen::VectorXcd pat = Eigen::VectorXcd::Zero(n);
    for (int j = 1; j <= n; ++j)
      if (g.source(w.edges[j - 1]) == v) pat(j - 1) = 1.0;
    if (pat.norm() == 0) continue;
    for (const auto& b : diag_basis) pat -= b.dot(pat) * b;
    if (pat.norm() > 1e-10) diag_basis.push_back(pat.normalized());
  }
  Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(n);
  for (const auto& [ijk, c] : F.coefficients())
    if (ijk[2] == 0) diag(ijk[0]) = c;
  for (const auto& b : diag_basis) diag -= b.dot(diag) * b;
  return diag.norm() <= tol;
}

GradedMatrixFn mu_twist(const GradedMatrixFn& F, Complex mu, TwistRoute route) {
  check_unimodular(mu);
  const int n = F.size();
  GradedMatrixFn out(n);
  const double theta = std::arg(mu);
  for (const auto& [ijk, c] : F.coefficients()) {
    const auto [i, j, k] = ijk;
    Complex scaled = c;
    switch (route) {
      case TwistRoute::WrapCount:
        scaled = c * int_pow(mu, (i + k) / n);
        break;
      case TwistRoute::GeneratorRewrite: {
        // The monomial z^k at (i, j) is the chain Z_{i+1} Z_{i+2} ... of
        // length k (1-indexed labels, wrapping); count the Z_n factors.
        int pos = i, wraps = 0;
        for (int t = 0; t < k; ++t) {
          if (pos == n - 1) ++wraps;
          pos = (pos + 1) % n;
        }
        scaled = c * int_pow(mu, wraps);
        break;
      }
      case TwistRoute::Rotation:
        scaled = c * std::exp(Complex(0.0, theta * double(k + i - j) / double(n)));
        break;
    }
    out.add_monomial(i, j, k, scaled);
  }
  return out;
}

Eigen::MatrixXcd eval_at(const GradedMatrixFn& F, Complex lambda) {
  if (std::abs(lambda) > 1.0 + 1e-12)
    throw std::invalid_argument("eval_at: |lambda| must be at most 1");
  const int n = F.size();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (auto& [k, c] : F.entry(i, j)) M(i, j) += c * int_pow(lambda, k);
  return M;
}

std::pair<double, double> circle_sup_norm_levels(const GradedMatrixFn& F,
                                                 int grid_size) {
  if (grid_size < 8) throw std::invalid_argument("circle_sup_norm: grid too small");
  const int M = 2 * grid_size;
  double coarse = 0.0, fine = 0.0;
  for (int t = 0; t < M; ++t) {
    const double ang = 2.0 * std::numbers::pi * t / M;
    Eigen::MatrixXcd val = eval_at(F, Complex(std::cos(ang), std::sin(ang)));
    const double s = val.jacobiSvd().singularValues()(0);
    fine = std::max(fine, s);
    if (t % 2 == 0) coarse = std::max(coarse, s);
  }
  return {coarse, fine};
}

double circle_sup_norm(const GradedMatrixFn& F, int grid_size) {
  return circle_sup_norm_levels(F, grid_size).second;
}

}  // namespace semilab
