"""Decision procedures for distance-regularity and distance-biregularity.

Each spectral route returns a :class:`Verdict`; :func:`classify` runs all of
them next to the combinatorial oracle and refuses to answer when they
disagree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.polynomial import Polynomial

from .errors import (EigenvalueCountMismatch, GirthTooSmall, InvariantViolation, NotBipartite,
                     NotSemiregular, RouteDisagreement, SupportMismatch, UnequalEccentricities)
from .graph import (Bipartition, DistanceData, Graph, bipartition, distance_data, girth,
                    halved_graphs, semiregular_profile)
from .orthopoly import (adjacency_polynomial, excess_bound, orthonormal_sequence,
                        predistance_sequence)
from .spectral import (DEFAULT_TOL, PerronVector, SpectralDecomposition, decompose,
                       eigenvalue_support, local_measure, perron, set_support)

PASS, FAIL, NOT_APPLICABLE = "PASS", "FAIL", "NOT_APPLICABLE"


@dataclass
class Verdict:
    outcome: str
    theorem: str
    evidence: dict = field(default_factory=dict)
    residual: Optional[float] = None
    tolerances: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.outcome == PASS

    @property
    def applicable(self) -> bool:
        return self.outcome != NOT_APPLICABLE


@dataclass(frozen=True)
class IntersectionNumbers:
    """Neighbor counts seen from ``root``: a vertex at distance ``i`` has
    ``c[i]`` neighbors at distance ``i - 1``, ``a[i]`` at ``i`` and ``b[i]``
    at ``i + 1``."""

    root: int
    c: tuple
    a: tuple
    b: tuple

    def array(self) -> tuple:
        return tuple(zip(self.c, self.a, self.b))


@dataclass
class ExcessReport:
    excess: np.ndarray
    predistance_value: Optional[float] = None
    side_values: dict = field(default_factory=dict)
    t: Optional[int] = None
    kd_b: Optional[int] = None
    kd_c: Optional[int] = None
    average_excess: Optional[float] = None


def _matches_integer(value: float, count: int, tol: float) -> bool:
    # sphere sizes are integers; p(lambda) is only numerically integral
    nearest = round(value)
    return abs(value - nearest) <= tol * max(1.0, abs(value)) and nearest == count


# combinatorial oracle ------------------------------------------------------

def locally_distance_regular(g: Graph, dd: DistanceData, u: int) -> Verdict:
    """Check that neighbor counts toward each distance layer of ``u`` are constant per layer."""
    du = dd.distance[u]
    e = int(dd.ecc[u])
    layers = np.zeros((g.n, e + 3), dtype=np.int64)
    layers[np.arange(g.n), du + 1] = 1
    counts = g.adjacency @ layers  # counts[v, j + 1] = neighbors of v at distance j
    c, a, b = [], [], []
    for i in range(e + 1):
        members = np.flatnonzero(du == i)
        rows = counts[members][:, [i, i + 1, i + 2]]
        bad = np.flatnonzero((rows != rows[0]).any(axis=1))
        if bad.size:
            v, w = int(members[0]), int(members[bad[0]])
            return Verdict(FAIL, "locally_distance_regular", {
                "root": u, "distance": i, "vertices": [v, w],
                "counts": [rows[0].tolist(), rows[bad[0]].tolist()]})
        c.append(int(rows[0, 0]))
        a.append(int(rows[0, 1]))
        b.append(int(rows[0, 2]))
    numbers = IntersectionNumbers(u, tuple(c), tuple(a), tuple(b))
    return Verdict(PASS, "locally_distance_regular", {"root": u, "intersection_numbers": numbers})


def weighted_locally_distance_regular(g: Graph, dd: DistanceData, pv: PerronVector, u: int,
                                     tol: float = DEFAULT_TOL) -> Verdict:
    """Perron-weighted neighbor counts ``sum v_w / v_v`` toward each layer, constant per layer.

    Coincides with :func:`locally_distance_regular` when the Perron vector is
    constant on each color class (regular or semiregular bipartite graphs).
    """
    du = dd.distance[u]
    e = int(dd.ecc[u])
    layers = np.zeros((g.n, e + 3))
    layers[np.arange(g.n), du + 1] = pv.v
    counts = (g.adjacency @ layers) / pv.v[:, None]
    for i in range(e + 1):
        members = np.flatnonzero(du == i)
        rows = counts[members][:, [i, i + 1, i + 2]]
        dev = np.abs(rows - rows[0]).max(axis=1)
        bad = np.flatnonzero(dev > tol * max(1.0, float(np.abs(rows).max())))
        if bad.size:
            return Verdict(FAIL, "weighted_locally_distance_regular", {
                "root": u, "distance": i, "vertices": [int(members[0]), int(members[bad[0]])],
                "counts": [rows[0].tolist(), rows[bad[0]].tolist()]}, float(dev.max()))
    return Verdict(PASS, "weighted_locally_distance_regular", {"root": u}, 0.0, {"tol": tol})


def oracle(g: Graph, dd: DistanceData, part: Optional[Bipartition] = None) -> dict:
    """Brute-force DRG / DBRG decision from intersection numbers at every vertex."""
    local = [locally_distance_regular(g, dd, u) for u in range(g.n)]
    arrays = [v.evidence["intersection_numbers"].array() if v.passed else None for v in local]
    all_local = all(v.passed for v in local)
    drg = all_local and len(set(arrays)) == 1
    dbrg = False
    if part is not None and all_local:
        dbrg = all(len({arrays[u] for u in side}) <= 1 for side in (part.side_b, part.side_c))
    return {"drg": drg, "dbrg": dbrg, "all_local": all_local, "local": local}


# pseudo-distance-regularity ------------------------------------------------

def _support_pattern(vec: np.ndarray, tol: float) -> np.ndarray:
    return np.flatnonzero(np.abs(vec) > tol * max(1.0, float(np.abs(vec).max())))


def pseudo_dr_vertex(dec: SpectralDecomposition, pv: PerronVector, dd: DistanceData, u: int,
                     tol: Optional[float] = None) -> Verdict:
    """Spectrally extremal ``u`` whose local adjacency polynomial meets its Perron bound.

    On success the degree-``e`` certificate ``q_e - q_{e-1}`` is built and its
    support checked against the outermost sphere; a mismatch there raises
    :class:`SupportMismatch`.
    """
    tol = dec.tol if tol is None else tol
    e = int(dd.ecc[u])
    phi = eigenvalue_support(dec, u, tol)
    tols = {"tol": tol}
    if len(phi) != e + 1:
        return Verdict(FAIL, "pseudo_dr_vertex", {"vertex": u, "reason": "not spectrally extremal",
                                                   "support_size": len(phi), "eccentricity": e},
                       tolerances=tols)
    if e == 0:
        return Verdict(PASS, "pseudo_dr_vertex", {"vertex": u}, 0.0, tols)
    m = local_measure(dec, u, tol)
    seq = orthonormal_sequence(m)
    big_q, value = adjacency_polynomial(m, e - 1, pv.lam, seq)
    bound = excess_bound(pv, dd, u, e - 1)
    residual = abs(value - bound) / bound
    evidence = {"vertex": u, "value": value, "bound": bound}
    if residual > tol:
        return Verdict(FAIL, "pseudo_dr_vertex", evidence, residual, tols)
    # q_{e-1} = Q(lam) Q ; q_e = e_lam / v_u^2 on the support
    vals = np.zeros(dec.num_distinct)
    support = np.asarray(m.support)
    vals[support] = -value * big_q(m.points)
    vals[0] += 1 / pv.v[u] ** 2
    vec = dec.evaluate(vals, [u])[:, 0]
    got = _support_pattern(vec, tol)
    want = dd.sphere(u, e)
    if not np.array_equal(got, want):
        raise SupportMismatch(f"certificate at vertex {u} is supported off the outer sphere",
                              vertex=u, support=got.tolist(), sphere=want.tolist())
    evidence["certificate"] = (Polynomial([1 / pv.v[u] ** 2]) * _lagrange_at_top(m.points)
                               - value * big_q).coef.tolist()
    return Verdict(PASS, "pseudo_dr_vertex", evidence, residual, tols)


def _lagrange_at_top(points: np.ndarray) -> Polynomial:
    top, rest = points[0], points[1:]
    p = Polynomial([1.0])
    for t in rest:
        p = p * Polynomial([-t, 1.0]) / (top - t)
    return p


def pseudo_dr_set(dec: SpectralDecomposition, pv: PerronVector, dd: DistanceData, vertices,
                  tol: Optional[float] = None) -> Verdict:
    """Set version: averaged local norm against the mean squared Perron bound."""
    tol = dec.tol if tol is None else tol
    members = sorted(int(x) for x in vertices)
    eccs = dd.ecc[members]
    if eccs.min() != eccs.max():
        raise UnequalEccentricities("vertices of the set have different eccentricities",
                                    eccentricities=sorted(set(eccs.tolist())))
    e = int(eccs[0])
    tols = {"tol": tol}
    phi = set_support(dec, members, tol)
    if len(phi) != e + 1:
        return Verdict(FAIL, "pseudo_dr_set", {"size": len(members), "reason": "support size",
                                                "support_size": len(phi), "eccentricity": e},
                       tolerances=tols)
    if e == 0:
        return Verdict(PASS, "pseudo_dr_set", {"size": len(members)}, 0.0, tols)
    m = local_measure(dec, members, tol)
    seq = orthonormal_sequence(m)
    _, value = adjacency_polynomial(m, e - 1, pv.lam, seq)
    bounds = np.array([excess_bound(pv, dd, u, e - 1) for u in members])
    target = float(np.sqrt(np.mean(bounds ** 2)))
    residual = abs(value - target) / target
    evidence = {"size": len(members), "value": value, "bound": target}
    if residual > tol:
        return Verdict(FAIL, "pseudo_dr_set", evidence, residual, tols)
    pre = predistance_sequence(m, pv.lam, seq)
    scale = seq.evaluate(pv.lam)[e]
    vals = scale * seq.evaluate(dec.eigs)[e]
    block = dec.evaluate(vals, members)
    for j, u in enumerate(members):
        got = _support_pattern(block[:, j], tol)
        want = dd.sphere(u, e)
        if not np.array_equal(got, want):
            raise SupportMismatch(f"set certificate column {u} is supported off the outer sphere",
                                  vertex=u, support=got.tolist(), sphere=want.tolist())
    evidence["certificate"] = pre.polys[e].coef.tolist()
    return Verdict(PASS, "pseudo_dr_set", evidence, residual, tols)


# diametral polynomial routes -----------------------------------------------

def _fit(points: np.ndarray, values: np.ndarray) -> Polynomial:
    return Polynomial.fit(points, values, len(points) - 1).convert()


def _trace_ratio(dec: SpectralDecomposition, ad: np.ndarray, rows=None) -> np.ndarray:
    # p(theta_r) = sum_{v in rows} (E_r A_d)_{vv} / sum_{v in rows} (E_r)_{vv}
    v = dec.vectors
    av = ad @ v
    sel = slice(None) if rows is None else np.asarray(rows, dtype=np.int64)
    per_vec = np.sum(v[sel] * av[sel], axis=0)
    num = np.bincount(dec.cluster, weights=per_vec, minlength=dec.num_distinct)
    den = dec.diag[:, sel].sum(axis=1)
    out = np.zeros(dec.num_distinct)
    ok = den > dec.tol
    out[ok] = num[ok] / den[ok]
    return out


def check_drg_diametral(g: Graph, dec: SpectralDecomposition, dd: DistanceData,
                        tol: Optional[float] = None) -> Verdict:
    """``d + 1`` eigenvalues and a degree-``d`` polynomial ``p`` with ``p(A) = A_d``.

    The candidate is the trace-ratio interpolant, which is the Frobenius-best
    polynomial in ``A``; its residual therefore certifies nonexistence.
    """
    tol = dec.tol if tol is None else tol
    d = dd.diameter
    tols = {"tol": tol}
    if dec.num_distinct != d + 1:
        return Verdict(FAIL, "drg_diametral", {"reason": "eigenvalue count",
                                                "distinct_eigenvalues": dec.num_distinct, "diameter": d},
                       tolerances=tols)
    ad = dd.distance_matrix(d)
    vals = _trace_ratio(dec, ad)
    diff = np.abs(dec.evaluate(vals) - ad)
    residual = float(diff.max())
    poly = _fit(dec.eigs, vals)
    evidence = {"polynomial": poly.coef.tolist()}
    if residual > tol:
        u, v = np.unravel_index(int(diff.argmax()), diff.shape)
        evidence["entry"] = [int(u), int(v)]
        evidence["distance"] = int(dd.distance[u, v])
        return Verdict(FAIL, "drg_diametral", evidence, residual, tols)
    return Verdict(PASS, "drg_diametral", evidence, residual, tols)


def check_dbrg_diametral(g: Graph, dec: SpectralDecomposition, dd: DistanceData, part: Bipartition,
                         tol: Optional[float] = None) -> Verdict:
    """Side-restricted diametral polynomials ``p^B(A) chi_B = A_d chi_B``, same for ``C``."""
    tol = dec.tol if tol is None else tol
    d = dd.diameter
    tols = {"tol": tol}
    if dec.num_distinct != d + 1:
        return Verdict(FAIL, "dbrg_diametral", {"reason": "eigenvalue count",
                                                 "distinct_eigenvalues": dec.num_distinct, "diameter": d},
                       tolerances=tols)
    ad = dd.distance_matrix(d)
    evidence = {}
    worst = 0.0
    for label, side in (("B", part.side_b), ("C", part.side_c)):
        vals = _trace_ratio(dec, ad, side)
        diff = np.abs(dec.evaluate(vals, side) - ad[:, list(side)])
        res = float(diff.max())
        evidence[f"polynomial_{label}"] = _fit(dec.eigs, vals).coef.tolist()
        evidence[f"residual_{label}"] = res
        if res > worst:
            worst = res
            if res > tol:
                u, j = np.unravel_index(int(diff.argmax()), diff.shape)
                evidence["entry"] = [int(u), int(side[j])]
    return Verdict(PASS if worst <= tol else FAIL, "dbrg_diametral", evidence, worst, tols)


# spectral excess routes ----------------------------------------------------

def spectral_excess_drg(g: Graph, dec: SpectralDecomposition, dd: DistanceData,
                        tol: Optional[float] = None):
    """Regular, ``d + 1`` eigenvalues and ``p_d(lam)`` equal to the excess at every vertex."""
    tol = dec.tol if tol is None else tol
    d = dd.diameter
    excess = np.array([int(np.sum(dd.distance[u] == d)) for u in range(g.n)])
    report = ExcessReport(excess, average_excess=float(excess.mean()))
    tols = {"tol": tol}
    if not g.is_regular():
        return Verdict(FAIL, "drg_spectral_excess", {"reason": "not regular"}, tolerances=tols), report
    if dec.num_distinct != d + 1:
        return Verdict(FAIL, "drg_spectral_excess", {"reason": "eigenvalue count",
                                                      "distinct_eigenvalues": dec.num_distinct,
                                                      "diameter": d}, tolerances=tols), report
    m = local_measure(dec, "global", tol)
    pre = predistance_sequence(m, dec.lam)
    value = float(pre.evaluate(dec.lam)[d])
    report.predistance_value = value
    residual = float(np.abs(excess - value).max())
    bad = [u for u in range(g.n) if not _matches_integer(value, int(excess[u]), tol)]
    evidence = {"predistance_value": value, "polynomial": pre.polys[d].coef.tolist()}
    if bad:
        evidence.update(vertex=bad[0], excess=int(excess[bad[0]]))
        return Verdict(FAIL, "drg_spectral_excess", evidence, residual, tols), report
    report.t = int(excess[0])
    return Verdict(PASS, "drg_spectral_excess", evidence, residual, tols), report


def _side_polynomial(dec: SpectralDecomposition, side, d: int, tol: float):
    """Degree-``d`` polynomial with ``||p||_S^2 = p(lam)`` and that common value.

    A side whose support has only ``d`` eigenvalues gets the annihilator of
    that support (times ``x`` to reach degree ``d``), whose norm and value
    at ``lam`` are both zero.
    """
    m = local_measure(dec, list(side), tol)
    if m.size == d + 1:
        pre = predistance_sequence(m, dec.lam)
        return pre.polys[d], float(pre.evaluate(dec.lam)[d]), m
    p = Polynomial.fromroots(m.points) * Polynomial([0.0, 1.0]) ** max(0, d - m.size)
    return p, 0.0, m


def spectral_excess_dbrg(g: Graph, dec: SpectralDecomposition, dd: DistanceData, part: Bipartition,
                         tol: Optional[float] = None):
    """Per-side predistance values against the excess of every vertex on that side."""
    tol = dec.tol if tol is None else tol
    semiregular_profile(g, part)
    d = dd.diameter
    if dec.num_distinct != d + 1:
        raise EigenvalueCountMismatch(f"{dec.num_distinct} distinct eigenvalues for diameter {d}",
                                      distinct_eigenvalues=dec.num_distinct, diameter=d)
    excess = np.array([int(np.sum(dd.distance[u] == d)) for u in range(g.n)])
    report = ExcessReport(excess, average_excess=float(excess.mean()))
    evidence = {}
    residual = 0.0
    outcome = PASS
    for label, side in (("B", part.side_b), ("C", part.side_c)):
        p, value, m = _side_polynomial(dec, side, d, tol)
        norm2 = m.inner(p(m.points), p(m.points))
        report.side_values[label] = value
        evidence[f"value_{label}"] = value
        evidence[f"norm_{label}"] = norm2
        evidence[f"polynomial_{label}"] = p.coef.tolist()
        ex = excess[list(side)]
        residual = max(residual, float(np.abs(ex - value).max()), abs(norm2 - value))
        bad = [u for u in side if not _matches_integer(value, int(excess[u]), tol)]
        if bad and outcome == PASS:
            outcome = FAIL
            evidence.update(vertex=int(bad[0]), excess=int(excess[bad[0]]), side=label)
    if outcome == PASS:
        report.t = int(excess[part.side_b[0]])
    return Verdict(outcome, "dbrg_spectral_excess", evidence, residual, {"tol": tol}), report


# halved graphs -------------------------------------------------------------

def _same_values(x, y, atol: float) -> bool:
    x, y = np.sort(np.asarray(x)), np.sort(np.asarray(y))
    ux = x[np.concatenate([[True], np.diff(x) > atol])]
    uy = y[np.concatenate([[True], np.diff(y) > atol])]
    return len(ux) == len(uy) and bool(np.abs(ux - uy).max(initial=0.0) <= atol)


def halved_route_dbrg(g: Graph, tol: float = DEFAULT_TOL, dec: Optional[SpectralDecomposition] = None,
                      dd: Optional[DistanceData] = None) -> Verdict:
    """Distance-regular halves with a compatible eigenvalue correspondence (needs ``k < ell``)."""
    part = bipartition(g)
    k, ell = semiregular_profile(g, part)
    tols = {"tol": tol}
    if k == ell:
        return Verdict(NOT_APPLICABLE, "halved_dbrg", {"reason": "regular input", "k": k, "ell": ell},
                       tolerances=tols)
    dec = dec if dec is not None else decompose(g, tol)
    dd = dd if dd is not None else distance_data(g)
    halves = halved_graphs(g, part)
    evidence = {"k": k, "ell": ell, "r": halves.r, "s": halves.s}
    half_eigs = {}
    ok = True
    for label, h in (("B", halves.h_b), ("C", halves.h_c)):
        hdec = decompose(h, tol)
        hv = check_drg_diametral(h, hdec, distance_data(h), tol)
        evidence[f"half_{label}_drg"] = hv.outcome
        half_eigs[label] = np.repeat(hdec.eigs, hdec.mult)
        ok &= hv.passed
    if halves.r is None or halves.s is None:
        evidence["reason"] = "N N^T or N^T N is not a multiple of the halved adjacency"
        ok = False
    else:
        root = lambda vals, c, const: np.sqrt(np.clip(c * vals + const, 0.0, None))
        from_b = root(half_eigs["B"], halves.r, k)
        from_c = root(half_eigs["C"], halves.s, ell)
        set_b = np.concatenate([from_b, -from_b])
        set_c = np.concatenate([from_c, -from_c, [0.0] * (len(part.side_b) > len(part.side_c))])
        atol = 10 * tol * dec.scale
        corr = _same_values(set_b, set_c, atol) and _same_values(set_b, dec.eigs, atol)
        evidence["correspondence"] = corr
        ok &= corr
    verdict = Verdict(PASS if ok else FAIL, "halved_dbrg", evidence, tolerances=tols)
    if verdict.passed:
        cross = check_dbrg_diametral(g, dec, dd, part, tol)
        if not cross.passed:
            raise RouteDisagreement("halved-graph route passed but the diametral route failed",
                                    halved=evidence, diametral=cross.evidence)
    return verdict


# cospectral girth route ----------------------------------------------------

def predicted_excess(d: int, own: int, other: int, deg: int, other_deg: int) -> int:
    """Vertices at distance ``d`` from a vertex of degree ``deg`` on a side of size ``own``,
    assuming girth at least ``2d - 2`` so that shorter layers grow like a tree."""
    if d % 2:
        # odd layers 1, 3, .., d - 2 sit on the other side
        return other - sum(deg * (other_deg - 1) ** i * (deg - 1) ** i for i in range((d - 1) // 2))
    return own - sum(deg * (other_deg - 1) ** i * (deg - 1) ** (i - 1) for i in range(1, d // 2)) - 1


def cospectral_girth_dbrg(g: Graph, tol: float = DEFAULT_TOL, dec: Optional[SpectralDecomposition] = None,
                          dd: Optional[DistanceData] = None) -> Verdict:
    """Semiregular bipartite graph with ``d + 1`` eigenvalues and girth at least ``2d - 2``."""
    part = bipartition(g)
    k, ell = semiregular_profile(g, part)
    dec = dec if dec is not None else decompose(g, tol)
    dd = dd if dd is not None else distance_data(g)
    d = dec.num_distinct - 1
    if dd.diameter not in (d, d - 1):
        raise EigenvalueCountMismatch(f"diameter {dd.diameter} with {dec.num_distinct} distinct eigenvalues",
                                      distinct_eigenvalues=dec.num_distinct, diameter=dd.diameter)
    gi = girth(g)
    if gi < 2 * d - 2:
        raise GirthTooSmall(f"girth {gi} below 2d - 2 = {2 * d - 2}", girth=gi, d=d)
    tols = {"tol": tol}
    evidence = {"d": d, "girth": None if math.isinf(gi) else int(gi), "diameter": dd.diameter}
    if dd.diameter == d - 1 and gi == 2 * d - 2:
        evidence["generalized_polygon"] = True
        return Verdict(PASS, "cospectral_girth_dbrg", evidence, tolerances=tols)
    nb, nc = len(part.side_b), len(part.side_c)
    kd_b = predicted_excess(d, nb, nc, k, ell)
    kd_c = predicted_excess(d, nc, nb, ell, k)
    evidence.update(kd_b=kd_b, kd_c=kd_c)
    excess = np.array([int(np.sum(dd.distance[u] == d)) for u in range(g.n)])
    ok = True
    residual = 0.0
    for label, side, predicted in (("B", part.side_b, kd_b), ("C", part.side_c, kd_c)):
        _, value, _ = _side_polynomial(dec, side, d, tol)
        evidence[f"value_{label}"] = value
        residual = max(residual, abs(value - predicted))
        ok &= _matches_integer(value, predicted, tol)
        ok &= bool(np.all(excess[list(side)] == predicted))
    return Verdict(PASS if ok else FAIL, "cospectral_girth_dbrg", evidence, residual, tols)


# classifier ----------------------------------------------------------------

@dataclass
class Classification:
    label: str
    regular: bool
    bipartite: bool
    partition: Optional[Bipartition]
    verdicts: list
    oracle: dict
    pseudo_vertices: list
    excess: Optional[ExcessReport]
    tol: float


def _applicable(fn, *args, theorem):
    try:
        return fn(*args)
    except (NotSemiregular, EigenvalueCountMismatch, GirthTooSmall, UnequalEccentricities) as exc:
        return Verdict(NOT_APPLICABLE, theorem, {"reason": type(exc).__name__, "message": str(exc)})


def classify(g: Graph, tol: float = DEFAULT_TOL) -> Classification:
    """DRG / DBRG / BOTH / NEITHER, with every applicable route cross-checked.

    Raises :class:`RouteDisagreement` when any route contradicts the
    combinatorial oracle.
    """
    g.require_connected()
    dec = decompose(g, tol)
    dd = distance_data(g)
    pv = perron(g, dec)
    try:
        part = bipartition(g)
    except NotBipartite:
        part = None
    truth = oracle(g, dd, part)
    regular = g.is_regular()
    verdicts = []
    excess_report = None

    drg_routes = [check_drg_diametral(g, dec, dd, tol)]
    v, excess_report = spectral_excess_drg(g, dec, dd, tol)
    drg_routes.append(v)
    pv_set = _applicable(pseudo_dr_set, dec, pv, dd, range(g.n), tol, theorem="pseudo_dr_set")
    if not pv_set.applicable:
        pv_set = Verdict(FAIL, "pseudo_dr_set", {"reason": "unequal eccentricities"})
    pv_set.evidence["scope"] = "V"
    drg_routes.append(pv_set)
    verdicts += drg_routes

    dbrg_routes = []
    if part is not None:
        dbrg_routes.append(check_dbrg_diametral(g, dec, dd, part, tol))
        try:
            v, rep = spectral_excess_dbrg(g, dec, dd, part, tol)
            if not regular:
                excess_report = rep
        except (NotSemiregular, EigenvalueCountMismatch) as exc:
            v = Verdict(FAIL, "dbrg_spectral_excess", {"reason": type(exc).__name__})
        dbrg_routes.append(v)
        sides = []
        for label, side in (("B", part.side_b), ("C", part.side_c)):
            sv = _applicable(pseudo_dr_set, dec, pv, dd, side, tol, theorem="pseudo_dr_set")
            sides.append(sv.passed)
        dbrg_routes.append(Verdict(PASS if all(sides) else FAIL, "pseudo_dr_sides",
                                   {"B": sides[0], "C": sides[1]}))
        for fn, name in ((halved_route_dbrg, "halved_dbrg"), (cospectral_girth_dbrg, "cospectral_girth_dbrg")):
            dbrg_routes.append(_applicable(fn, g, tol, dec, dd, theorem=name))
        verdicts += dbrg_routes

        if part.semiregular and dec.num_distinct == dd.diameter + 1 and dd.diameter % 2 and not regular:
            raise InvariantViolation("semiregular bipartite graph with odd diameter and d + 1 "
                                     "eigenvalues is not regular")

    pseudo = [pseudo_dr_vertex(dec, pv, dd, u, tol) for u in range(g.n)]
    all_pseudo = all(p.passed for p in pseudo)
    verdicts.append(Verdict(PASS if all_pseudo else FAIL, "pseudo_dr_all_vertices",
                            {"failing": [u for u, p in enumerate(pseudo) if not p.passed]}))

    disagreements = [v for v in drg_routes if v.applicable and v.passed != truth["drg"]]
    disagreements += [v for v in dbrg_routes if v.applicable and v.passed != truth["dbrg"]]
    if all_pseudo != (truth["drg"] or truth["dbrg"]):
        disagreements.append(verdicts[-1])
    if disagreements:
        raise RouteDisagreement(
            "spectral routes disagree with the combinatorial oracle",
            oracle={"drg": truth["drg"], "dbrg": truth["dbrg"]},
            routes=[{"theorem": v.theorem, "outcome": v.outcome, "evidence": _summary(v.evidence)}
                    for v in disagreements])

    if truth["drg"] and truth["dbrg"]:
        label = "BOTH"
    elif truth["drg"]:
        label = "DRG"
    elif truth["dbrg"]:
        label = "DBRG"
    else:
        label = "NEITHER"
    return Classification(label, regular, part is not None, part, verdicts, truth, pseudo,
                          excess_report, tol)


def _summary(evidence: dict) -> dict:
    return {k: v for k, v in evidence.items() if not isinstance(v, (IntersectionNumbers, np.ndarray))}
