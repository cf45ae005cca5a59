"""Orthogonal polynomials on discrete eigenvalue measures.

Sequences are built by a Stieltjes/Lanczos sweep in value space (values on
the support points) with full re-orthogonalization, and the monomial
coefficients are carried along by the same linear operations.  Evaluation
off the support goes through the three-term recurrence, which stays stable
where the monomial form would not.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DegenerateMeasure, ZeroAtLambda
from .graph import DistanceData
from .spectral import Measure, PerronVector, SpectralDecomposition

Poly = Polynomial

_RANK_TOL = 1e-10
_SNAP = 1e-12


@dataclass(frozen=True, eq=False)
class PolySequence:
    """``p_0..p_s`` orthogonal for ``measure``.

    ``recurrence[i] = (a_i, b_{i-1}, c_{i+1})`` with
    ``x p_i = c_{i+1} p_{i+1} + a_i p_i + b_{i-1} p_{i-1}``; the last entry
    uses the monic annihilator of the support as ``p_{s+1}``.
    """

    polys: tuple
    norms: np.ndarray
    recurrence: tuple
    measure: Measure
    values: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.polys) - 1

    def evaluate(self, x) -> np.ndarray:
        """``out[i, ...] = p_i(x)`` via the recurrence.

        Arguments that coincide with a support point (to 1e-12 relative) take
        the stored values instead, which avoids the cancellation the
        recurrence suffers where ``p_i`` is tiny at an extreme point.
        """
        x = np.asarray(x, dtype=float)
        out = np.empty((len(self.polys),) + x.shape)
        out[0] = self.polys[0].coef[0]
        for i in range(len(self.polys) - 1):
            a, b, c = self.recurrence[i]
            prev = out[i - 1] if i else 0.0
            out[i + 1] = ((x - a) * out[i] - b * prev) / c
        pts = self.measure.points
        near = np.abs(x[..., None] - pts) <= _SNAP * np.maximum(1.0, np.abs(pts))
        hit = near.any(axis=-1)
        if hit.any():
            out[:, hit] = self.values[:, near[hit].argmax(axis=-1)]
        return out

    def annihilator(self) -> Polynomial:
        return Polynomial.fromroots(self.measure.points)


def _recurrence(values, polys, norms, measure):
    x = measure.points
    rec = []
    s = len(polys) - 1
    for i in range(s + 1):
        xp = x * values[i]
        a = measure.inner(xp, values[i]) / norms[i]
        b = measure.inner(xp, values[i - 1]) / norms[i - 1] if i else 0.0
        c = measure.inner(xp, values[i + 1]) / norms[i + 1] if i < s else polys[i].coef[-1]
        rec.append((float(a), float(b), float(c)))
    return tuple(rec)


def orthonormal_sequence(m: Measure) -> PolySequence:
    """Orthonormal ``q_0..q_s`` for a measure with ``s + 1`` support points."""
    if m.size == 0:
        raise DegenerateMeasure("measure has empty support")
    if (m.weights <= 0).any():
        raise DegenerateMeasure("measure weights must be positive on the support")
    x, w = m.points, m.weights
    total = w.sum()
    vals = [np.full(m.size, 1 / np.sqrt(total))]
    coefs = [np.array([1 / np.sqrt(total)])]
    for i in range(m.size - 1):
        v = x * vals[i]
        c = np.concatenate([[0.0], coefs[i]])
        ref = np.sqrt(np.sum(w * v * v))
        for _ in range(2):
            for j in range(i + 1):
                h = np.sum(w * v * vals[j])
                v = v - h * vals[j]
                c[: j + 1] -= h * coefs[j]
        nrm = np.sqrt(np.sum(w * v * v))
        if nrm <= _RANK_TOL * ref:
            raise DegenerateMeasure(
                f"moment matrix has numerical rank {i + 1} < {m.size}", rank=i + 1)
        vals.append(v / nrm)
        coefs.append(c / nrm)
    values = np.array(vals)
    polys = tuple(Polynomial(c) for c in coefs)
    norms = np.ones(len(polys))
    return PolySequence(polys, norms, _recurrence(values, polys, norms, m), m, values)


def predistance_sequence(m: Measure, lam: float, seq: Optional[PolySequence] = None) -> PolySequence:
    """Rescale the orthonormal sequence so that ``||p_i||^2 = p_i(lam)``."""
    if m.size == 0 or abs(lam - m.points.max()) > 1e-9 * max(1.0, abs(lam)):
        raise ValueError("lam must be the largest point of the measure's support")
    seq = seq if seq is not None else orthonormal_sequence(m)
    at_lam = seq.evaluate(lam)
    if (np.abs(at_lam) <= _RANK_TOL).any():
        i = int(np.flatnonzero(np.abs(at_lam) <= _RANK_TOL)[0])
        raise ZeroAtLambda(f"orthogonal polynomial of degree {i} vanishes at lambda", degree=i)
    polys = tuple(Polynomial(q.coef * t) for q, t in zip(seq.polys, at_lam))
    values = seq.values * at_lam[:, None]
    norms = at_lam ** 2
    return PolySequence(polys, norms, _recurrence(values, polys, norms, m), m, values)


def apply_poly(dec: SpectralDecomposition, p: Union[Polynomial, Callable], cols: Optional[Sequence[int]] = None) -> np.ndarray:
    """``p(A)`` restricted to ``cols``, evaluated spectrally as ``sum_r p(theta_r) E_r``."""
    return dec.evaluate(np.asarray(p(dec.eigs), dtype=float), cols)


def adjacency_polynomial(m: Measure, k: int, lam: float, seq: Optional[PolySequence] = None):
    """Local ``k``-adjacency polynomial ``Q_k`` and its value at ``lam``.

    ``Q_k`` maximizes ``p(lam)`` over degree-``k`` polynomials of unit norm;
    by Cauchy-Schwarz in the orthonormal basis the maximizer is the
    normalized reproducing kernel ``sum_i q_i(lam) q_i``.
    """
    seq = seq if seq is not None else orthonormal_sequence(m)
    if not 0 <= k <= seq.degree:
        raise ValueError(f"k={k} outside 0..{seq.degree}")
    at_lam = seq.evaluate(lam)[: k + 1]
    value = float(np.sqrt(np.sum(at_lam ** 2)))
    q = sum((t * p for t, p in zip(at_lam, seq.polys[: k + 1])), Polynomial([0.0]))
    return q / value, value


def excess_bound(pv: PerronVector, dd: DistanceData, u: int, k: int) -> float:
    """Upper bound ``sqrt(sum_{v in N_k(u)} v_v^2) / v_u`` on ``Q_k(lam)``."""
    if not 0 <= k <= dd.ecc[u]:
        raise ValueError(f"k={k} outside 0..ecc({u})={dd.ecc[u]}")
    ball = dd.ball(u, k)
    return float(np.sqrt(np.sum(pv.v[ball] ** 2)) / pv.v[u])


def orthogonality_residual(seq: PolySequence) -> float:
    """``max_{i != j} |<p_i, p_j>|`` relative to ``max_i ||p_i||^2``."""
    g = (seq.values * seq.measure.weights) @ seq.values.T
    off = g - np.diag(np.diag(g))
    return float(np.abs(off).max(initial=0.0) / np.abs(np.diag(g)).max())


def recurrence_residual(seq: PolySequence) -> float:
    """Pointwise residual of the three-term recurrence on the support, relative to ``max |x p_i|``."""
    x = seq.measure.points
    vals = seq.values
    s = seq.degree
    worst = 0.0
    scale = max(1.0, float(np.abs(x[:, None] * vals.T).max()))
    for i in range(s + 1):
        a, b, c = seq.recurrence[i]
        rhs = a * vals[i] + (b * vals[i - 1] if i else 0.0)
        if i < s:
            rhs = rhs + c * vals[i + 1]
        worst = max(worst, float(np.abs(x * vals[i] - rhs).max()))
    return worst / scale
