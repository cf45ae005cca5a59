import numpy as np
import pytest
from numpy.polynomial import Polynomial

from dbrg.corpus import generate
from dbrg.errors import DegenerateMeasure
from dbrg.graph import distance_data
from dbrg.orthopoly import (adjacency_polynomial, apply_poly, excess_bound, orthogonality_residual,
                            orthonormal_sequence, predistance_sequence, recurrence_residual)
from dbrg.spectral import Measure, decompose, local_measure, perron
from oracles import max_value_at

DELORME_P4 = Polynomial([4.5, 0, -4, 0, 0.5])


def _measure(points, weights):
    pts = np.asarray(points, dtype=float)
    return Measure(pts, np.asarray(weights, dtype=float), tuple(range(len(pts))), "custom")


def test_two_point_measure():
    seq = orthonormal_sequence(_measure([1, -1], [0.5, 0.5]))
    assert np.allclose(seq.polys[0].coef, [1])
    assert np.allclose(seq.polys[1].coef, [0, 1])


def test_cycle_recurrence_has_zero_a():
    m = local_measure(decompose(generate("cycle", 6)), "global")
    seq = orthonormal_sequence(m)
    assert all(abs(a) < 1e-12 for a, _, _ in seq.recurrence)


def test_q3_vertex_measure_orthogonality():
    dec = decompose(generate("hypercube", 3))
    seq = orthonormal_sequence(local_measure(dec, 0))
    assert orthogonality_residual(seq) < 1e-10


def test_degenerate_measure():
    with pytest.raises(DegenerateMeasure):
        orthonormal_sequence(_measure([1.0, 1.0 + 1e-14, 0.0], [0.3, 0.3, 0.4]))
    with pytest.raises(DegenerateMeasure):
        orthonormal_sequence(_measure([1.0, 0.0], [0.5, 0.0]))


def test_delorme_p4(delorme):
    dec = decompose(delorme)
    pre = predistance_sequence(local_measure(dec, "global"), dec.lam)
    assert np.allclose(pre.polys[4].coef, DELORME_P4.coef, atol=1e-9)
    assert abs(pre.evaluate(3.0)[4] - 9) < 1e-9
    a4 = distance_data(delorme).distance_matrix(4)
    assert np.abs(apply_poly(dec, DELORME_P4) - a4).max() <= 1e-8


def test_p0_is_one(corpus):
    for _, g in corpus:
        dec = decompose(g)
        pre = predistance_sequence(local_measure(dec, "global"), dec.lam)
        assert np.allclose(pre.polys[0].coef, [1.0])


def test_q3_top_predistance():
    dec = decompose(generate("hypercube", 3))
    pre = predistance_sequence(local_measure(dec, "global"), dec.lam)
    assert abs(pre.evaluate(dec.lam)[3] - 1) < 1e-10


def test_apply_poly_identities(corpus):
    for _, g in corpus:
        dec = decompose(g)
        assert np.abs(apply_poly(dec, Polynomial([0, 1])) - g.adjacency).max() < 1e-9
        annihilator = Polynomial.fromroots(dec.eigs)
        assert np.abs(apply_poly(dec, annihilator)).max() < 1e-8 * max(1, dec.lam) ** dec.num_distinct
        cols = [0, g.n - 1]
        assert np.allclose(apply_poly(dec, Polynomial([0, 1]), cols), g.adjacency[:, cols])


def test_q0_is_constant():
    dec = decompose(generate("petersen"))
    q, value = adjacency_polynomial(local_measure(dec, 0), 0, dec.lam)
    assert np.allclose(q.coef, [1.0]) and abs(value - 1) < 1e-12


def _sequences(graphs):
    for g in graphs:
        dec = decompose(g)
        scopes = ["global", 0, list(range(0, g.n, 2))]
        for scope in scopes:
            yield dec, local_measure(dec, scope)


def test_sequence_residuals(corpus, random_graphs):
    for dec, m in _sequences([g for _, g in corpus] + random_graphs):
        seq = orthonormal_sequence(m)
        assert orthogonality_residual(seq) <= 1e-8
        assert recurrence_residual(seq) <= 1e-8
        pre = predistance_sequence(m, dec.lam, seq)
        at = pre.evaluate(dec.lam)
        norms = np.array([m.inner(v, v) for v in pre.values])
        assert np.all(np.abs(norms - at) <= 1e-8 * at)
        # coefficient form and value form agree on the support, up to the
        # cancellation inherent in summing monomial terms
        for p, vals in zip(seq.polys, seq.values):
            terms = Polynomial(np.abs(p.coef))(np.abs(m.points))
            assert np.all(np.abs(p(m.points) - vals) <= 1e-8 + 1e-12 * terms)


def test_adjacency_polynomial_against_gram_oracle(corpus, random_graphs):
    for dec, m in _sequences([g for _, g in corpus] + random_graphs[:40]):
        seq = orthonormal_sequence(m)
        for k in range(min(seq.degree, 4) + 1):
            q, value = adjacency_polynomial(m, k, dec.lam, seq)
            assert abs(value - max_value_at(m.points, m.weights, dec.lam, k)) <= 1e-6 * value
            assert abs(m.inner(q(m.points), q(m.points)) - 1) < 1e-8
            assert abs(q(dec.lam) - value) < 1e-8 * value


def test_bound_dominates_q(corpus, random_graphs):
    for g in [g for _, g in corpus] + random_graphs:
        dec = decompose(g)
        dd = distance_data(g)
        pv = perron(g, dec)
        for u in range(g.n):
            m = local_measure(dec, u)
            seq = orthonormal_sequence(m)
            prev = 0.0
            for k in range(int(dd.ecc[u]) + 1):
                _, value = adjacency_polynomial(m, k, pv.lam, seq)
                assert value - excess_bound(pv, dd, u, k) <= 1e-8
                assert value >= prev - 1e-12
                prev = value


def test_excess_bound_regular(delorme):
    dec = decompose(delorme)
    dd = distance_data(delorme)
    pv = perron(delorme, dec)
    for u in range(32):
        assert abs(excess_bound(pv, dd, u, 5) - np.sqrt(32)) < 1e-12
        assert abs(excess_bound(pv, dd, u, 4) - np.sqrt(32 - len(dd.sphere(u, 5)))) < 1e-12
        assert abs(excess_bound(pv, dd, u, 2) - np.sqrt(len(dd.ball(u, 2)))) < 1e-12


def test_excess_bound_full_ball(random_graphs):
    for g in random_graphs[:20]:
        dec = decompose(g)
        dd = distance_data(g)
        pv = perron(g, dec)
        for u in range(g.n):
            assert abs(excess_bound(pv, dd, u, int(dd.ecc[u])) - 1 / pv.v[u]) < 1e-9
