#include <doctest.h>

#include <random>

#include "semilab/ncpoly.hpp"

using namespace semilab;

namespace {

NcPoly random_poly(const DirectedGraph& g, int max_degree, std::mt19937_64& rng) {
  NcPoly p(&g);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> len(0, max_degree);
  std::uniform_int_distribution<int> ee(0, g.num_edges() - 1);
  for (int t = 0; t < 12; ++t) {
    const int l = len(rng);
    if (l == 0) {
      p.add_term(Word::at_vertex(0), Complex{u(rng), u(rng)});
      continue;
    }
    Word w;
    for (int j = 0; j < l; ++j) w.edges.push_back(ee(rng));
    p.add_term(w, Complex{u(rng), u(rng)});
  }
  return p;
}

}  // namespace

TEST_CASE("word products respect path composition") {
  const DirectedGraph g = cycle_graph(2);
  // (e1)*(e2) concatenates to the path (e1,e2).
  const auto p12 = word_product(g, Word{{0}}, Word{{1}});
  REQUIRE(p12.has_value());
  CHECK(p12->edges == std::vector<int>{0, 1});
  // (e1)*(e1) breaks the linking condition: zero.
  CHECK(!word_product(g, Word{{0}}, Word{{0}}).has_value());
  // P_{v1} * e1 = e1 (range of e1 is v1); P_{v2} * e1 = 0.
  CHECK(word_product(g, Word::at_vertex(0), Word{{0}}).has_value());
  CHECK(!word_product(g, Word::at_vertex(1), Word{{0}}).has_value());
}

TEST_CASE("vertex idempotents act as local units") {
  const DirectedGraph g = cycle_graph(2);
  const NcPoly unit = NcPoly::unit(g);
  const NcPoly e1 = NcPoly::edge(g, 0);
  CHECK((unit * e1 - e1).is_zero());
  CHECK((e1 * unit - e1).is_zero());
  CHECK((unit * unit - unit).is_zero());
}

TEST_CASE("multiplication throws above the degree cap") {
  const DirectedGraph g = single_vertex_graph(1);
  NcPoly f = NcPoly::edge(g, 0);
  NcPoly p = f;
  for (int i = 0; i < 3; ++i) p = NcPoly::mul(p, p, 16);
  CHECK(p.degree() == 8);
  CHECK_THROWS_AS((void)NcPoly::mul(p, p, 8), std::invalid_argument);
}

TEST_CASE("enumerate_words respects path validity") {
  const DirectedGraph g = cycle_graph(2);
  // 2 vertices + {e1, e2} + {e1e2, e2e1}: the invalid pairs drop out.
  CHECK(enumerate_words(g, 2, true).size() == 6);
  CHECK(enumerate_words(g, 2, false).size() == 4);
}

TEST_CASE("abelianization kills commutators exactly") {
  const DirectedGraph g = single_vertex_graph(3);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const NcPoly a = random_poly(g, 4, rng);
    const NcPoly b = random_poly(g, 4, rng);
    const NcPoly c = commutator(a, b);
    CHECK(c.in_commutator_ideal());
    CHECK(c.abelianize().is_zero());
  }
  // Non-commutators survive.
  const NcPoly f1 = NcPoly::edge(g, 0);
  CHECK(!f1.in_commutator_ideal());
  CHECK(!(f1 * f1 + f1).in_commutator_ideal());
}

TEST_CASE("abelianize matches the monomial count") {
  const DirectedGraph g = single_vertex_graph(2);
  const NcPoly f1 = NcPoly::edge(g, 0);
  const NcPoly f2 = NcPoly::edge(g, 1);
  // f1 f2 + f2 f1 abelianizes to 2 z1 z2.
  const CommPoly ab = (f1 * f2 + f2 * f1).abelianize();
  REQUIRE(ab.terms().size() == 1);
  const auto& [expo, c] = *ab.terms().begin();
  CHECK(expo == std::vector<int>{1, 1});
  CHECK(c == Complex{2.0, 0.0});
}

TEST_CASE("CommPoly calculus") {
  CommPoly p(2);  // 3 z1^2 z2 + z2
  p.add_term({2, 1}, Complex{3.0, 0.0});
  p.add_term({0, 1}, Complex{1.0, 0.0});
  const CommPoly d1 = p.partial(0);  // 6 z1 z2
  CHECK(d1.eval({Complex{2.0, 0.0}, Complex{5.0, 0.0}}) == Complex{60.0, 0.0});
  const CommPoly d2 = p.partial(1);  // 3 z1^2 + 1
  CHECK(d2.eval({Complex{2.0, 0.0}, Complex{0.0, 0.0}}) == Complex{13.0, 0.0});
  CHECK(p.total_degree() == 3);
  // Product rule spot check: d/dz1 (p*p) = 2 p d1.
  const CommPoly prod = p * p;
  const std::vector<Complex> at{Complex{0.3, 0.1}, Complex{-0.2, 0.4}};
  const Complex lhs = prod.partial(0).eval(at);
  const Complex rhs = 2.0 * p.eval(at) * d1.eval(at);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("enumerate_fock_paths counts") {
  const DirectedGraph b2 = single_vertex_graph(2);
  // 1 empty + 2 + 4 + 8 paths.
  CHECK(enumerate_fock_paths(b2, 3).size() == 15);
  const DirectedGraph c2 = cycle_graph(2);
  // 2 empty + 2 + 2 + 2.
  CHECK(enumerate_fock_paths(c2, 3).size() == 8);
}
