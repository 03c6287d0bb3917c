#include "semilab/derivation.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

#include "semilab/fock.hpp"

namespace semilab {

namespace {

constexpr double kRankTol = 1e-10;
constexpr double kSpanTol = 1e-9;

Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int n) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void check_derivation_shape(const DerivationAtRep& d) {
  const DirectedGraph* g = d.rep.graph;
  if (g == nullptr) throw std::invalid_argument("derivation has no graph");
  if (static_cast<int>(d.dP.size()) != g->num_vertices() ||
      static_cast<int>(d.dL.size()) != g->num_edges())
    throw std::invalid_argument("derivation value count does not match graph");
  for (const auto& m : d.dP)
    if (m.rows() != d.rep.dim || m.cols() != d.rep.dim)
      throw std::invalid_argument("derivation vertex value has wrong shape");
  for (const auto& m : d.dL)
    if (m.rows() != d.rep.dim || m.cols() != d.rep.dim)
      throw std::invalid_argument("derivation edge value has wrong shape");
}

// Stacked operator X -> [pi(g), X] over all generators; its kernel is the
// commutant of the image and it is the coefficient matrix of the inner
// equation D(g) = pi(g) X - X pi(g).
Eigen::MatrixXcd commutator_operator(const MatrixRep& rep) {
  const int n = rep.dim;
  const int blocks = static_cast<int>(rep.vertex_images.size() + rep.edge_images.size());
  Eigen::MatrixXcd A(blocks * n * n, n * n);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  int row = 0;
  auto put = [&](const Eigen::MatrixXcd& G) {
    A.block(row, 0, n * n, n * n) = kron(id, G) - kron(G.transpose(), id);
    row += n * n;
  };
  for (const auto& P : rep.vertex_images) put(P);
  for (const auto& L : rep.edge_images) put(L);
  return A;
}

Eigen::VectorXcd stacked_values(const DerivationAtRep& d) {
  const int n = d.rep.dim;
  const int blocks = static_cast<int>(d.dP.size() + d.dL.size());
  Eigen::VectorXcd b(blocks * n * n);
  int row = 0;
  for (const auto& m : d.dP) {
    b.segment(row, n * n) = vec(m);
    row += n * n;
  }
  for (const auto& m : d.dL) {
    b.segment(row, n * n) = vec(m);
    row += n * n;
  }
  return b;
}

// Incremental span of image vectors together with the induced linear
// prediction of derivation values: offering a vector either adds a pivot or
// reports the predicted value and the expansion over earlier pivot words.
class SpanTracker {
 public:
  struct Membership {
    Eigen::VectorXcd predicted;
    std::vector<Complex> gamma;  // expansion over pivot_words
  };

  std::optional<Membership> offer(const Eigen::VectorXcd& p,
                                  const Eigen::VectorXcd& dv, const Word& w) {
    const double scale = p.norm();
    Eigen::VectorXcd r = p;
    std::vector<Complex> c(q_.size(), Complex(0, 0));
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t t = 0; t < q_.size(); ++t) {
        Complex ct = q_[t].dot(r);
        r -= ct * q_[t];
        c[t] += ct;
      }
    const double rnorm = r.norm();
    if (rnorm > kSpanTol * scale && scale > 0.0) {
      // New pivot: transport the companion value and word expansion through
      // the same Gram-Schmidt step.
      Eigen::VectorXcd comp = dv;
      std::vector<Complex> alpha(words_.size() + 1, Complex(0, 0));
      alpha[words_.size()] = 1.0;
      for (std::size_t t = 0; t < q_.size(); ++t) {
        comp -= c[t] * comp_[t];
        for (std::size_t s = 0; s < alpha_[t].size(); ++s) alpha[s] -= c[t] * alpha_[t][s];
      }
      q_.push_back(r / rnorm);
      comp_.push_back(comp / rnorm);
      alpha_.push_back(std::move(alpha));
      words_.push_back(w);
      return std::nullopt;
    }
    Membership m;
    m.predicted = Eigen::VectorXcd::Zero(dv.size());
    m.gamma.assign(words_.size(), Complex(0, 0));
    for (std::size_t t = 0; t < q_.size(); ++t) {
      m.predicted += c[t] * comp_[t];
      for (std::size_t s = 0; s < alpha_[t].size(); ++s) m.gamma[s] += c[t] * alpha_[t][s];
    }
    return m;
  }

  const std::vector<Word>& pivot_words() const { return words_; }
  int rank() const { return static_cast<int>(q_.size()); }

 private:
  std::vector<Eigen::VectorXcd> q_;
  std::vector<Eigen::VectorXcd> comp_;
  std::vector<std::vector<Complex>> alpha_;
  std::vector<Word> words_;
};

struct KernelStreamResult {
  double max_violation = 0.0;
  long words_checked = 0;
  std::vector<NcPoly> witnesses;
  std::vector<double> witness_values;
};

// Shared streaming sweep: ImageCarrier supplies the image algebra whose
// kernel is being probed (matrix representation or cycle model). The
// derivation value is carried alongside via the Leibniz recursion; a word
// whose image lies in the span of earlier ones yields a kernel element whose
// derivation value must be the predicted combination.
template <typename Img, typename Ops>
KernelStreamResult stream_kernel(const DerivationAtRep& d, const Ops& ops,
                                 int max_len, double tol, std::size_t witness_cap) {
  const DirectedGraph& g = *d.rep.graph;
  const int n = d.rep.dim;
  KernelStreamResult out;
  SpanTracker tracker;
  const double dscale = std::max(derivation_norm(d), 1e-30);

  auto push_witness = [&](const Word& w, const std::vector<Complex>& gamma,
                          double value) {
    if (out.witnesses.size() >= witness_cap) return;
    NcPoly p(&g);
    p.add_term(w, Complex(1, 0));
    const auto& pivots = tracker.pivot_words();
    for (std::size_t s = 0; s < gamma.size(); ++s)
      if (std::abs(gamma[s]) > kCoeffPrune) p.add_term(pivots[s], -gamma[s]);
    out.witnesses.push_back(std::move(p));
    out.witness_values.push_back(value);
  };

  auto record = [&](const Word& w, const Eigen::MatrixXcd& dval,
                    const Eigen::VectorXcd& image_vec) {
    ++out.words_checked;
    // Fast path: a word killed by the probed map is itself a kernel element,
    // so the derivation value must vanish on it outright. These dominate the
    // sweep on graphs with many edges, so skip the span machinery for them.
    if (image_vec.norm() == 0.0) {
      const double value = dval.norm() / dscale;
      out.max_violation = std::max(out.max_violation, value);
      if (value > tol) push_witness(w, {}, value);
      return;
    }
    auto member = tracker.offer(image_vec, vec(dval), w);
    if (!member) return;
    double violation = (vec(dval) - member->predicted).norm();
    double wnorm = 1.0;
    for (const auto& cgamma : member->gamma) wnorm += std::norm(cgamma);
    wnorm = std::sqrt(wnorm);
    const double value = violation / (wnorm * dscale);
    out.max_violation = std::max(out.max_violation, value);
    if (value > tol) push_witness(w, member->gamma, value);
  };

  // Vertices first, then a depth-first sweep over valid paths. A node whose
  // probed image, representation image and derivation value all vanish
  // exactly cannot contribute anything downstream.
  for (int v = 0; v < g.num_vertices(); ++v)
    record(Word::at_vertex(v), d.dP[v], ops.vec_image(ops.vertex_image(v)));

  struct Node {
    Word w;
    Img img;
    Eigen::MatrixXcd pi;
    Eigen::MatrixXcd dval;
  };
  std::vector<Node> stack;
  for (int e = g.num_edges() - 1; e >= 0; --e)
    stack.push_back({Word{{e}, -1}, ops.edge_image(e), d.rep.edge_images[e], d.dL[e]});
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    record(node.w, node.dval, ops.vec_image(node.img));
    if (node.w.degree() >= max_len) continue;
    if (ops.is_zero(node.img) && node.pi.norm() == 0.0 && node.dval.norm() == 0.0)
      continue;
    const int tail = g.source(node.w.edges.back());
    for (int e = g.num_edges() - 1; e >= 0; --e) {
      if (g.range(e) != tail) continue;  // only valid paths are basis words
      Node child;
      child.w = node.w;
      child.w.edges.push_back(e);
      child.img = ops.mul_edge(node.img, e);
      child.pi = node.pi * d.rep.edge_images[e];
      child.dval = node.dval * d.rep.edge_images[e] + node.pi * d.dL[e];
      stack.push_back(std::move(child));
    }
  }
  (void)n;
  return out;
}

struct RepOps {
  const MatrixRep* rep;
  using ImgT = Eigen::MatrixXcd;
  Eigen::MatrixXcd vertex_image(int v) const { return rep->vertex_images[v]; }
  Eigen::MatrixXcd edge_image(int e) const { return rep->edge_images[e]; }
  Eigen::MatrixXcd mul_edge(const Eigen::MatrixXcd& m, int e) const {
    return m * rep->edge_images[e];
  }
  bool is_zero(const Eigen::MatrixXcd& m) const { return m.norm() == 0.0; }
  Eigen::VectorXcd vec_image(const Eigen::MatrixXcd& m) const { return vec(m); }
};

struct ModelOps {
  const DirectedGraph* g;
  PathWord w;
  int max_deg;
  std::vector<GradedMatrixFn> vimg;
  std::vector<GradedMatrixFn> eimg;

  using ImgT = GradedMatrixFn;
  GradedMatrixFn vertex_image(int v) const { return vimg[v]; }
  GradedMatrixFn edge_image(int e) const { return eimg[e]; }
  GradedMatrixFn mul_edge(const GradedMatrixFn& m, int e) const { return m * eimg[e]; }
  bool is_zero(const GradedMatrixFn& m) const { return m.is_zero(); }
  Eigen::VectorXcd vec_image(const GradedMatrixFn& m) const {
    const int n = m.size();
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n * n * (max_deg + 1));
    for (const auto& [ijk, c] : m.coefficients()) {
      if (ijk[2] > max_deg) throw std::logic_error("model degree exceeds bound");
      v((ijk[0] * n + ijk[1]) * (max_deg + 1) + ijk[2]) = c;
    }
    return v;
  }
};

Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  return Complex(nd(rng), nd(rng)) / std::sqrt(2.0);
}

}  // namespace

DerivationAtRep zero_derivation(const MatrixRep& rep) {
  DerivationAtRep d;
  d.rep = rep;
  d.dP.assign(rep.vertex_images.size(), Eigen::MatrixXcd::Zero(rep.dim, rep.dim));
  d.dL.assign(rep.edge_images.size(), Eigen::MatrixXcd::Zero(rep.dim, rep.dim));
  return d;
}

double derivation_norm(const DerivationAtRep& d) {
  double s = 0.0;
  for (const auto& m : d.dP) s += m.squaredNorm();
  for (const auto& m : d.dL) s += m.squaredNorm();
  return std::sqrt(s);
}

DerivationAtRep lincomb(const MatrixRep& rep,
                        const std::vector<DerivationAtRep>& basis,
                        const std::vector<Complex>& coeffs) {
  if (basis.size() != coeffs.size())
    throw std::invalid_argument("lincomb: basis and coefficient counts differ");
  DerivationAtRep out = zero_derivation(rep);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t v = 0; v < out.dP.size(); ++v) out.dP[v] += coeffs[i] * basis[i].dP[v];
    for (std::size_t e = 0; e < out.dL.size(); ++e) out.dL[e] += coeffs[i] * basis[i].dL[e];
  }
  return out;
}

DerivationReport validate(const DerivationAtRep& d, double tol) {
  check_derivation_shape(d);
  const DirectedGraph& g = *d.rep.graph;
  DerivationReport report;
  report.pass = true;
  auto push = [&](const std::string& cond, double value, const std::string& who) {
    CheckItem item;
    item.condition = cond;
    item.value = value;
    item.pass = value <= tol;
    if (!item.pass) item.witness = who;
    report.pass = report.pass && item.pass;
    report.items.push_back(item);
  };

  const auto& P = d.rep.vertex_images;
  const auto& L = d.rep.edge_images;
  for (int v = 0; v < g.num_vertices(); ++v)
    push("idempotent-leibniz", (d.dP[v] - d.dP[v] * P[v] - P[v] * d.dP[v]).norm(),
         g.vertex_id(v));
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int u = 0; u < g.num_vertices(); ++u) {
      if (u == v) continue;
      push("orthogonality-leibniz", (P[v] * d.dP[u] + d.dP[v] * P[u]).norm(),
           g.vertex_id(v) + "," + g.vertex_id(u));
    }
  Eigen::MatrixXcd unit_sum = Eigen::MatrixXcd::Zero(d.rep.dim, d.rep.dim);
  for (const auto& m : d.dP) unit_sum += m;
  push("unit-derivation", unit_sum.norm(), "sum of vertex values");
  for (int e = 0; e < g.num_edges(); ++e) {
    const int r = g.range(e), s = g.source(e);
    Eigen::MatrixXcd rhs =
        d.dP[r] * (L[e] * P[s]) + P[r] * d.dL[e] * P[s] + (P[r] * L[e]) * d.dP[s];
    push("edge-sandwich-leibniz", (d.dL[e] - rhs).norm(), g.edge(e).id);
  }
  return report;
}

Eigen::MatrixXcd extend_word(const DerivationAtRep& d, const Word& w) {
  check_derivation_shape(d);
  if (w.is_vertex()) return d.dP[w.vertex];
  Eigen::MatrixXcd prefix = Eigen::MatrixXcd::Identity(d.rep.dim, d.rep.dim);
  Eigen::MatrixXcd value = Eigen::MatrixXcd::Zero(d.rep.dim, d.rep.dim);
  for (int e : w.edges) {
    value = value * d.rep.edge_images[e] + prefix * d.dL[e];
    prefix = prefix * d.rep.edge_images[e];
  }
  return value;
}

Eigen::MatrixXcd extend(const DerivationAtRep& d, const NcPoly& a) {
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d.rep.dim, d.rep.dim);
  for (const auto& [wd, c] : a.terms()) acc += c * extend_word(d, wd);
  return acc;
}

std::pair<int, std::vector<DerivationAtRep>> derivation_space(const MatrixRep& rep) {
  const DirectedGraph& g = *rep.graph;
  const int n = rep.dim;
  const int nn = n * n;
  const int nv = g.num_vertices(), ne = g.num_edges();
  const int unknowns = (nv + ne) * nn;
  const int rows = (nv + nv * (nv - 1) + 1 + ne) * nn;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(rows, unknowns);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd idnn = Eigen::MatrixXcd::Identity(nn, nn);
  const auto& P = rep.vertex_images;
  const auto& L = rep.edge_images;
  auto pcol = [&](int v) { return v * nn; };
  auto lcol = [&](int e) { return (nv + e) * nn; };

  int row = 0;
  // D(P_v) = D(P_v) P_v + P_v D(P_v)
  for (int v = 0; v < nv; ++v) {
    A.block(row, pcol(v), nn, nn) =
        idnn - kron(P[v].transpose(), id) - kron(id, P[v]);
    row += nn;
  }
  // P_v D(P_u) + D(P_v) P_u = 0 for v != u
  for (int v = 0; v < nv; ++v)
    for (int u = 0; u < nv; ++u) {
      if (u == v) continue;
      A.block(row, pcol(u), nn, nn) += kron(id, P[v]);
      A.block(row, pcol(v), nn, nn) += kron(P[u].transpose(), id);
      row += nn;
    }
  // sum_v D(P_v) = 0
  for (int v = 0; v < nv; ++v) A.block(row, pcol(v), nn, nn) = idnn;
  row += nn;
  // D(L_e) = D(P_r) L_e P_s + P_r D(L_e) P_s + P_r L_e D(P_s)
  for (int e = 0; e < ne; ++e) {
    const int r = g.range(e), s = g.source(e);
    A.block(row, lcol(e), nn, nn) += idnn - kron(P[s].transpose(), P[r]);
    A.block(row, pcol(r), nn, nn) -= kron((L[e] * P[s]).transpose(), id);
    A.block(row, pcol(s), nn, nn) -= kron(id, P[r] * L[e]);
    row += nn;
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = (sv.size() > 0 ? sv(0) : 0.0) * kRankTol;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > thresh) ++rank;

  std::vector<DerivationAtRep> basis;
  for (int j = rank; j < unknowns; ++j) {
    DerivationAtRep d = zero_derivation(rep);
    const auto col = svd.matrixV().col(j);
    for (int v = 0; v < nv; ++v) d.dP[v] = unvec(col.segment(pcol(v), nn), n);
    for (int e = 0; e < ne; ++e) d.dL[e] = unvec(col.segment(lcol(e), nn), n);
    basis.push_back(std::move(d));
  }
  return {static_cast<int>(basis.size()), std::move(basis)};
}

DerivationAtRep inner_from(const MatrixRep& rep, const Eigen::MatrixXcd& X) {
  DerivationAtRep d = zero_derivation(rep);
  for (std::size_t v = 0; v < rep.vertex_images.size(); ++v)
    d.dP[v] = rep.vertex_images[v] * X - X * rep.vertex_images[v];
  for (std::size_t e = 0; e < rep.edge_images.size(); ++e)
    d.dL[e] = rep.edge_images[e] * X - X * rep.edge_images[e];
  return d;
}

InnerSolve solve_inner(const DerivationAtRep& d, double tol) {
  check_derivation_shape(d);
  const int n = d.rep.dim;
  Eigen::MatrixXcd A = commutator_operator(d.rep);
  Eigen::VectorXcd b = stacked_values(d);
  InnerSolve out;
  const double bnorm = b.norm();
  if (bnorm < 1e-300) {
    out.success = true;
    out.residual = 0.0;
    out.X = Eigen::MatrixXcd::Zero(n, n);
    return out;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(A);
  Eigen::VectorXcd x = cod.solve(b);
  out.residual = (A * x - b).norm() / bnorm;
  out.success = out.residual <= tol;
  out.X = unvec(x, n);
  return out;
}

int inner_dimension(const MatrixRep& rep) {
  Eigen::MatrixXcd A = commutator_operator(rep);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const auto& sv = svd.singularValues();
  const double thresh = (sv.size() > 0 ? sv(0) : 0.0) * kRankTol;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > thresh) ++rank;
  return rank;  // rank of X -> [pi(.), X], i.e. dim^2 - dim commutant
}

int outer_dimension(const MatrixRep& rep) {
  return derivation_space(rep).first - inner_dimension(rep);
}

KernelAgreement inner_iff_kernel_vanishing(const DerivationAtRep& d, int max_len,
                                           double tol) {
  check_derivation_shape(d);
  const int n = d.rep.dim;
  if (image_dimension(d.rep, 2 * n) != n * n)
    throw std::invalid_argument(
        "kernel criterion requires the representation to be onto the full matrix algebra");

  KernelAgreement out;
  InnerSolve solve = solve_inner(d, tol);
  out.inner = solve.success;
  out.inner_residual = solve.residual;

  RepOps ops{&d.rep};
  KernelStreamResult ks = stream_kernel<Eigen::MatrixXcd>(d, ops, max_len, tol, 8);
  out.max_kernel_value = ks.max_violation;
  out.kernel_vanishes = ks.max_violation <= tol;
  out.words_checked = ks.words_checked;
  out.witnesses = std::move(ks.witnesses);
  out.agree = out.inner == out.kernel_vanishes;
  return out;
}

KernelAgreement inner_iff_kernel_vanishing(const DerivationAtRep& d, double tol) {
  return inner_iff_kernel_vanishing(d, 4 * d.rep.dim, tol);
}

FactorsResult factors_through_cycle(const DerivationAtRep& d, const PathWord& w,
                                    int max_len, double tol) {
  check_derivation_shape(d);
  const DirectedGraph& g = *d.rep.graph;
  if (!g.is_cycle(w)) throw std::invalid_argument("factoring requires a cycle word");

  ModelOps ops;
  ops.g = &g;
  ops.w = w;
  ops.max_deg = max_len;
  for (int v = 0; v < g.num_vertices(); ++v)
    ops.vimg.push_back(iota_w(NcPoly::vertex(g, v), w, max_len + 1));
  for (int e = 0; e < g.num_edges(); ++e)
    ops.eimg.push_back(iota_w(NcPoly::edge(g, e), w, max_len + 1));

  KernelStreamResult ks = stream_kernel<GradedMatrixFn>(d, ops, max_len, tol, 8);
  FactorsResult out;
  out.max_violation = ks.max_violation;
  out.factors = ks.max_violation <= tol;
  out.words_checked = ks.words_checked;
  out.witnesses = std::move(ks.witnesses);
  out.witness_values = std::move(ks.witness_values);
  return out;
}

NoninnerResult noninner_exists(const DirectedGraph& g, const PathWord& w) {
  if (!g.is_cycle(w) || !g.is_primitive(w))
    throw std::invalid_argument("noninner_exists requires a primitive cycle");
  const int n = w.length();
  std::vector<bool> on_cycle(g.num_edges(), false);
  for (int e : w.edges) on_cycle[e] = true;

  NoninnerResult out;
  // Off-cycle edge whose endpoints are both sources of cycle positions.
  for (int e = 0; e < g.num_edges(); ++e) {
    if (on_cycle[e]) continue;
    int j = 0, i = 0;
    for (int t = 1; t <= n; ++t) {
      if (j == 0 && g.source(w.edges[t - 1]) == g.range(e)) j = t;
      if (i == 0 && g.source(w.edges[t - 1]) == g.source(e)) i = t;
    }
    if (j > 0 && i > 0) out.certificates.push_back({1, e, j, i});
  }
  // Loop sitting on the cycle.
  for (int t = 1; t <= n; ++t) {
    const int e = w.edges[t - 1];
    if (g.source(e) == g.range(e)) {
      bool seen = false;
      for (const auto& cert : out.certificates)
        if (cert.case_id == 2 && cert.edge == e) seen = true;
      if (!seen) out.certificates.push_back({2, e, t, t});
    }
  }
  out.exists = !out.certificates.empty();
  return out;
}

DerivationAtRep build_noninner_case_i(const DirectedGraph& g, const PathWord& w,
                                      Complex lambda, Complex mu, int edge) {
  if (!g.is_cycle(w) || !g.is_primitive(w))
    throw std::invalid_argument("construction requires a primitive cycle");
  for (int e : w.edges)
    if (e == edge)
      throw std::invalid_argument("the chosen edge must lie outside the cycle");
  const int n = w.length();
  int j = 0, i = 0;
  for (int t = 1; t <= n; ++t) {
    if (j == 0 && g.source(w.edges[t - 1]) == g.range(edge)) j = t;
    if (i == 0 && g.source(w.edges[t - 1]) == g.source(edge)) i = t;
  }
  if (j == 0 || i == 0)
    throw std::invalid_argument(
        "the edge endpoints must both be sources of cycle positions");
  MatrixRep rep = pi_w_lambda_mu(g, w, lambda, mu);
  DerivationAtRep d = zero_derivation(rep);
  d.dL[edge] = Eigen::MatrixXcd::Zero(n, n);
  d.dL[edge](j - 1, i - 1) = 1.0;
  return d;
}

DerivationAtRep build_noninner_case_ii(const DirectedGraph& g, const PathWord& w,
                                       Complex lambda, Complex mu, int edge) {
  if (!g.is_cycle(w) || !g.is_primitive(w))
    throw std::invalid_argument("construction requires a primitive cycle");
  if (g.source(edge) != g.range(edge))
    throw std::invalid_argument("the chosen edge must be a loop");
  bool on_cycle = false;
  for (int e : w.edges) on_cycle = on_cycle || (e == edge);
  if (!on_cycle)
    throw std::invalid_argument("the loop must be one of the cycle edges");
  MatrixRep rep = pi_w_lambda_mu(g, w, lambda, mu);
  DerivationAtRep d = zero_derivation(rep);
  d.dL[edge] = rep.vertex_images[g.source(edge)];
  return d;
}

ContinuityReport continuity_bound_check(const DerivationAtRep& d, int edge,
                                        int samples, int sample_degree,
                                        int fock_len, std::uint64_t seed,
                                        double tol) {
  check_derivation_shape(d);
  const DirectedGraph& g = *d.rep.graph;
  const double edge_norm = spectral_norm(d.dL[edge]);
  if (edge_norm == 0.0)
    throw std::invalid_argument("continuity check needs D(L_e) != 0");

  // Candidate right factors: anything L_e can multiply without vanishing.
  std::vector<Word> candidates;
  for (const Word& u : enumerate_words(g, sample_degree, true)) {
    if (u.is_vertex() ? (u.vertex == g.source(edge))
                      : (g.range(u.edges.front()) == g.source(edge)))
      candidates.push_back(u);
  }
  if (candidates.empty())
    throw std::invalid_argument("no words can follow the chosen edge");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double keep = std::min(1.0, 16.0 / static_cast<double>(candidates.size()));
  NcPoly edge_poly = NcPoly::edge(g, edge);

  ContinuityReport report;
  report.pass = true;
  for (int s = 0; s < samples; ++s) {
    NcPoly xt(&g);
    for (const Word& u : candidates)
      if (unif(rng) <= keep) xt.add_term(u, random_complex(rng));
    if (xt.is_zero()) xt.add_term(candidates[0], Complex(1, 0));
    NcPoly X = NcPoly::mul(edge_poly, xt, sample_degree + 1);
    if (X.is_zero()) continue;
    const double numer = spectral_norm(extend(d, X));
    const double denom = edge_norm * fock_norm_lower_bound(X, fock_len);
    if (denom == 0.0) continue;
    report.max_ratio = std::max(report.max_ratio, numer / denom);
    ++report.samples;
  }
  report.pass = report.max_ratio <= 1.0 + tol;
  return report;
}

}  // namespace semilab
