import networkx as nx
import numpy as np
import pytest

import dbrg.characterize as ch
from dbrg.characterize import (FAIL, NOT_APPLICABLE, PASS, Verdict, check_dbrg_diametral,
                               check_drg_diametral, classify, cospectral_girth_dbrg, halved_route_dbrg,
                               locally_distance_regular, predicted_excess, pseudo_dr_set, pseudo_dr_vertex,
                               spectral_excess_dbrg, spectral_excess_drg, weighted_locally_distance_regular)
from dbrg.corpus import generate
from dbrg.errors import (EigenvalueCountMismatch, GirthTooSmall, NotBipartite, NotSemiregular,
                         RouteDisagreement, UnequalEccentricities)
from dbrg.graph import Graph, bipartition, distance_data, girth
from dbrg.spectral import decompose, eigenvalue_support, perron
from oracles import intersection_profile, to_nx


def _ctx(g):
    dec = decompose(g)
    return dec, perron(g, dec), distance_data(g)


# oracle ---------------------------------------------------------------------

def test_q3_intersection_numbers():
    g = generate("hypercube", 3)
    dd = distance_data(g)
    for u in range(8):
        v = locally_distance_regular(g, dd, u)
        assert v.passed
        nums = v.evidence["intersection_numbers"]
        assert nums.array() == ((0, 0, 3), (1, 0, 2), (2, 0, 1), (3, 0, 0))
        assert all(sum(t) == 3 for t in nums.array())


def test_delorme_not_locally_regular(delorme):
    dd = distance_data(delorme)
    v = locally_distance_regular(delorme, dd, 10)  # black (2,2)
    assert v.outcome == FAIL
    x, y = v.evidence["vertices"]
    assert v.evidence["distance"] == 3 and dd.distance[10, x] == dd.distance[10, y] == 3


def test_k23_locally_regular(k23):
    dd = distance_data(k23)
    assert all(locally_distance_regular(k23, dd, u).passed for u in range(5))


def test_oracle_matches_bfs(corpus, random_graphs):
    for g in [g for _, g in corpus] + random_graphs:
        dd = distance_data(g)
        h = to_nx(g)
        for u in range(g.n):
            ref = intersection_profile(h, u)
            v = locally_distance_regular(g, dd, u)
            assert v.passed == (ref is not None)
            if ref is not None:
                assert list(v.evidence["intersection_numbers"].array()) == ref


# pseudo-distance-regularity --------------------------------------------------

def test_pseudo_vertex_c6():
    g = generate("cycle", 6)
    dec, pv, dd = _ctx(g)
    assert all(pseudo_dr_vertex(dec, pv, dd, u).passed for u in range(6))


def test_pseudo_vertex_delorme_fails_on_equality(delorme):
    dec, pv, dd = _ctx(delorme)
    for u in range(32):
        v = pseudo_dr_vertex(dec, pv, dd, u)
        # every vertex is spectrally extremal, so the Q-equality is what fails
        assert v.outcome == FAIL and "reason" not in v.evidence
        assert v.evidence["value"] < v.evidence["bound"]


def test_pseudo_vertex_subdivision(sub_k4):
    dec, pv, dd = _ctx(sub_k4)
    for u in range(10):
        v = pseudo_dr_vertex(dec, pv, dd, u)
        assert v.passed and "certificate" in v.evidence


def test_pseudo_set():
    g = generate("cycle", 6)
    dec, pv, dd = _ctx(g)
    assert pseudo_dr_set(dec, pv, dd, range(6)).passed


def test_pseudo_set_subdivision(sub_k4):
    dec, pv, dd = _ctx(sub_k4)
    part = bipartition(sub_k4)
    assert pseudo_dr_set(dec, pv, dd, part.side_b).passed
    assert pseudo_dr_set(dec, pv, dd, part.side_c).passed


def test_pseudo_set_delorme(delorme):
    dec, pv, dd = _ctx(delorme)
    assert pseudo_dr_set(dec, pv, dd, range(32)).outcome == FAIL


def test_pseudo_set_unequal_eccentricities():
    g = generate("path", 3)
    dec, pv, dd = _ctx(g)
    with pytest.raises(UnequalEccentricities):
        pseudo_dr_set(dec, pv, dd, range(3))


def _vertex_equivalence_graphs(corpus, small_bipartite, random_graphs):
    atlas = [Graph.from_edges(len(h), h.edges()) for h in nx.graph_atlas_g()[1:] if nx.is_connected(h)]
    return [g for _, g in corpus] + small_bipartite[:2000] + random_graphs + atlas


def test_pseudo_vertex_equivalence(corpus, small_bipartite, random_graphs):
    """pseudo-DR at u  <=>  Perron-weighted locally DR at u and |Phi_u| = e + 1, on every graph;
    the unweighted oracle suffices whenever the Perron vector is constant per color class."""
    for g in _vertex_equivalence_graphs(corpus, small_bipartite, random_graphs):
        dec, pv, dd = _ctx(g)
        flat = g.is_regular()
        if not flat:
            try:
                flat = bipartition(g).semiregular
            except NotBipartite:
                pass
        for u in range(g.n):
            extremal = len(eigenvalue_support(dec, u)) == dd.ecc[u] + 1
            got = pseudo_dr_vertex(dec, pv, dd, u).passed
            assert got == (weighted_locally_distance_regular(g, dd, pv, u).passed and extremal)
            if flat:
                assert got == (locally_distance_regular(g, dd, u).passed and extremal)


# diametral polynomials -------------------------------------------------------

def test_drg_diametral_c6():
    g = generate("cycle", 6)
    dec, _, dd = _ctx(g)
    v = check_drg_diametral(g, dec, dd)
    assert v.passed and v.residual <= 1e-8
    p = np.polynomial.Polynomial(v.evidence["polynomial"])
    assert p.degree() == 3
    # x^3 - 3x is the distance-3 polynomial of C6 up to the factor 1/2
    assert np.allclose(p.coef, [0, -1.5, 0, 0.5], atol=1e-9)


def test_drg_diametral_delorme(delorme):
    dec, _, dd = _ctx(delorme)
    v = check_drg_diametral(delorme, dec, dd)
    assert v.outcome == FAIL and v.residual > 1e-8
    u, w = v.evidence["entry"]
    assert 0 <= u < 32 and 0 <= w < 32


def test_drg_diametral_cay_d8(cay_d8):
    dec, _, dd = _ctx(cay_d8)
    v = check_drg_diametral(cay_d8, dec, dd)
    assert v.outcome == FAIL
    assert v.evidence["distinct_eigenvalues"] == 6 and v.evidence["diameter"] == 4


def test_dbrg_diametral_positive(k23, sub_k4):
    for g in (k23, sub_k4):
        dec, _, dd = _ctx(g)
        assert check_dbrg_diametral(g, dec, dd, bipartition(g)).passed


def test_dbrg_diametral_delorme(delorme):
    dec, _, dd = _ctx(delorme)
    v = check_dbrg_diametral(delorme, dec, dd, bipartition(delorme))
    assert v.outcome == FAIL and "entry" in v.evidence


# spectral excess ---------------------------------------------------------------

@pytest.mark.parametrize("name,params", [("hypercube", (3,)), ("cycle", (6,))])
def test_spectral_excess_drg_antipodal(name, params):
    g = generate(name, *params)
    dec, _, dd = _ctx(g)
    v, rep = spectral_excess_drg(g, dec, dd)
    assert v.passed and abs(rep.predistance_value - 1) < 1e-9 and rep.t == 1


def test_spectral_excess_drg_delorme(delorme):
    dec, _, dd = _ctx(delorme)
    v, rep = spectral_excess_drg(delorme, dec, dd)
    assert v.outcome == FAIL
    # the graph has d + 1 eigenvalues; it is the per-vertex excess clause that fails
    assert "reason" not in v.evidence
    assert not np.all(rep.excess == round(rep.predistance_value))


def test_spectral_excess_drg_irregular(k23):
    dec, _, dd = _ctx(k23)
    v, _ = spectral_excess_drg(k23, dec, dd)
    assert v.outcome == FAIL and v.evidence["reason"] == "not regular"


def test_spectral_excess_dbrg_subdivision(sub_k4):
    dec, _, dd = _ctx(sub_k4)
    v, rep = spectral_excess_dbrg(sub_k4, dec, dd, bipartition(sub_k4))
    assert v.passed
    assert abs(rep.side_values["B"] - 1) < 1e-9 and rep.side_values["C"] == 0
    assert rep.t == 1


def test_spectral_excess_dbrg_k23(k23):
    dec, _, dd = _ctx(k23)
    assert spectral_excess_dbrg(k23, dec, dd, bipartition(k23))[0].passed


def test_spectral_excess_dbrg_delorme(delorme):
    dec, _, dd = _ctx(delorme)
    assert spectral_excess_dbrg(delorme, dec, dd, bipartition(delorme))[0].outcome == FAIL


def test_spectral_excess_dbrg_errors(cay_d8):
    dec, _, dd = _ctx(cay_d8)
    with pytest.raises(EigenvalueCountMismatch):
        spectral_excess_dbrg(cay_d8, dec, dd, bipartition(cay_d8))
    g = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5)])
    dec, _, dd = _ctx(g)
    with pytest.raises(NotSemiregular):
        spectral_excess_dbrg(g, dec, dd, bipartition(g))


# halved graphs ---------------------------------------------------------------

def test_halved_route_positive(sub_k4, k23):
    for g in (sub_k4, k23):
        v = halved_route_dbrg(g)
        assert v.passed and v.evidence["correspondence"]


def test_halved_route_regular(delorme, cay_d8):
    for g in (delorme, cay_d8):
        assert halved_route_dbrg(g).outcome == NOT_APPLICABLE


def test_halved_route_cross_check_is_fatal(sub_k4, monkeypatch):
    monkeypatch.setattr(ch, "check_dbrg_diametral", lambda *a, **k: Verdict(FAIL, "dbrg_diametral"))
    with pytest.raises(RouteDisagreement):
        halved_route_dbrg(sub_k4)


# girth route -----------------------------------------------------------------

def test_predicted_excess_formulas():
    assert predicted_excess(3, 4, 4, 3, 3) == 1      # Q3
    assert predicted_excess(3, 7, 7, 3, 3) == 4      # Heawood
    assert predicted_excess(3, 3, 3, 2, 2) == 1      # C6
    assert predicted_excess(4, 4, 4, 2, 2) == 1      # C8
    assert predicted_excess(4, 6, 4, 2, 3) == 1      # subdivision of K4, degree-2 side
    assert predicted_excess(4, 4, 6, 3, 2) == 0      # and its degree-3 side
    assert predicted_excess(2, 4, 1, 1, 4) == 3      # leaves of K_{1,4}


def test_cospectral_girth_heawood():
    g = generate("heawood")
    v = cospectral_girth_dbrg(g)
    assert v.passed and v.evidence["kd_b"] == v.evidence["kd_c"] == 4
    assert girth(g) == 6 and v.evidence["d"] == 3


def test_cospectral_girth_subdivision(sub_k4):
    v = cospectral_girth_dbrg(sub_k4)
    assert v.passed and (v.evidence["kd_b"], v.evidence["kd_c"]) == (1, 0)


def test_cospectral_girth_guards():
    chord = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)] + [(0, 3)])
    with pytest.raises((GirthTooSmall, NotSemiregular)):
        cospectral_girth_dbrg(chord)
    with pytest.raises(GirthTooSmall):
        cospectral_girth_dbrg(generate("hypercube", 4))
    # six eigenvalues put d at 5, so diameter 4 passes and girth 6 < 8 trips
    with pytest.raises(GirthTooSmall):
        cospectral_girth_dbrg(generate("cay_d8"))
    # (2,3)-semiregular, diameter 4, seven distinct eigenvalues
    far = Graph.from_edges(10, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 7), (3, 7), (4, 5), (4, 6),
                                (5, 9), (6, 9), (7, 8), (8, 9)])
    with pytest.raises(EigenvalueCountMismatch):
        cospectral_girth_dbrg(far)


def test_predicted_excess_matches_bfs(small_bipartite):
    checked = 0
    for g in small_bipartite:
        part = bipartition(g)
        if not part.semiregular:
            continue
        dec, _, dd = _ctx(g)
        d = dec.num_distinct - 1
        if dd.diameter != d or girth(g) < 2 * d - 2:
            continue
        for side, own, other, k, ell in ((part.side_b, part.side_b, part.side_c, part.k, part.ell),
                                         (part.side_c, part.side_c, part.side_b, part.ell, part.k)):
            want = predicted_excess(d, len(own), len(other), k, ell)
            assert all(len(dd.sphere(u, d)) == want for u in side)
        checked += 1
    assert checked > 10


# classification -----------------------------------------------------------------

@pytest.mark.parametrize("name,params,label", [
    ("hypercube", (3,), "BOTH"), ("cycle", (6,), "BOTH"), ("complete_bipartite", (2, 3), "DBRG"),
    ("subdivision_k4", (), "DBRG"), ("heawood", (), "BOTH"), ("petersen", (), "DRG"),
    ("delorme", (), "NEITHER"), ("cay_d8", (), "NEITHER"), ("path", (5,), "NEITHER"),
    ("cycle", (7,), "DRG"),
])
def test_classify(name, params, label):
    assert classify(generate(name, *params)).label == label


def test_classify_disagreement_is_fatal(monkeypatch):
    monkeypatch.setattr(ch, "check_drg_diametral", lambda *a, **k: Verdict(PASS, "drg_diametral"))
    with pytest.raises(RouteDisagreement) as info:
        classify(generate("delorme"))
    assert info.value.evidence["routes"][0]["theorem"] == "drg_diametral"


def test_odd_diameter_semiregular_is_regular(corpus, small_bipartite):
    seen = 0
    for g in [g for _, g in corpus] + small_bipartite:
        try:
            part = bipartition(g)
        except NotBipartite:
            continue
        if not part.semiregular:
            continue
        dec, _, dd = _ctx(g)
        if dec.num_distinct == dd.diameter + 1 and dd.diameter % 2:
            assert g.is_regular()
            seen += 1
    assert seen > 0
