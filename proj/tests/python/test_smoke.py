"""End-to-end smoke tests for the python module."""

import json

import semilab as sl


def test_graph_fixture_and_json_round_trip():
    g = sl.DirectedGraph.cycle(3)
    assert g.num_vertices == 3
    assert g.num_edges == 3
    back = sl.DirectedGraph.from_json(g.to_json())
    assert back.to_json() == g.to_json()
    payload = json.loads(g.to_json())
    assert payload["vertices"] == ["v1", "v2", "v3"]


def test_representation_validates_and_factors():
    g = sl.DirectedGraph.cycle(2)
    w = g.make_path(["e1", "e2"])
    rep = sl.pi_w_lambda_mu(g, w, 0.5, 1.0)
    assert rep.dim == 2

    cc = sl.validate_cc(rep, 1e-10)
    assert cc.pass_
    assert cc.row_norm <= 1.0 + 1e-10

    assert sl.image_dimension(rep, 4) == 4  # onto for nonzero lambda

    fac = sl.verify_factorization(g, w, 0.5, 1.0, 6, 1e-11)
    assert fac.pass_
    assert fac.max_discrepancy <= 1e-11


def test_derivation_space_and_classification():
    g = sl.DirectedGraph.cycle(2)
    w = g.make_path(["e1", "e2"])
    rep = sl.pi_w_lambda_mu(g, w, 0.5, 1.0)
    dim, basis = sl.derivation_space(rep)
    assert dim == 4
    assert sl.inner_dimension(rep) == 3
    assert sl.outer_dimension(rep) == 1
    for d in basis:
        assert sl.validate_derivation(d, 1e-10).pass_
        assert sl.factors_through_cycle(d, w, 6, 1e-9).factors
        assert sl.inner_iff_kernel_vanishing(d, 1e-9).agree


def test_noninner_construction_on_loop_graph():
    g = sl.DirectedGraph.single_vertex(1)
    w = g.make_path(["f1"])
    res = sl.noninner_exists(g, w)
    assert res.exists
    assert res.certificates[0].case_id == 2

    d = sl.build_noninner_case_ii(g, w, 0.4, 1.0, 0)
    assert sl.validate_derivation(d, 1e-10).pass_
    assert not sl.solve_inner(d, 1e-9).success


def test_polynomials_and_commutator_ideal():
    g = sl.DirectedGraph.single_vertex(2)
    f1 = sl.NcPoly.edge(g, 0)
    f2 = sl.NcPoly.edge(g, 1)
    c = sl.commutator(f1, f2)
    assert c.in_commutator_ideal()
    assert not (f1 * f2).in_commutator_ideal()


def test_characters_decompose_and_peaking():
    g = sl.DirectedGraph.single_vertex(2)
    chi = sl.make_character(g, 0, [0.5, 0.0])
    D = sl.char_derivation(chi, [2.0, 3.0])
    d1, d2 = sl.decompose(D)
    assert d1.d == [2.0, 0.0]
    assert d2.d == [0.0, 3.0]

    report = sl.derivative_formula_check(D, 30, 4, 1e-10, 7)
    assert report.pass_

    peek = sl.boundary_peaking_witness([0.6, 0.8], 256, 0.1)
    assert peek.pass_
    assert peek.gap > 0.0

    profile = sl.d1_profile(sl.char_derivation(chi, [1.0, 0.0]), [1, 2, 4, 8])
    assert [p.degree for p in profile] == [1, 2, 4, 8]


def test_cycle_model_embedding():
    g = sl.DirectedGraph.cycle(2)
    w = g.primitive_cycles(2)[0]
    a = sl.NcPoly.edge(g, 0) * sl.NcPoly.edge(g, 1)
    f = sl.iota_w(a, w)
    assert not f.is_zero()
    assert f.degree() == 2
    twisted = sl.mu_twist(f, complex(0.0, 1.0))
    m = sl.eval_at(twisted, 0.5)
    assert m.shape == (2, 2)
