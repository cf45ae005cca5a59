"""Spectral decomposition of the adjacency matrix.

Eigenvalues come from a dense symmetric eigensolve and are clustered with a
relative tolerance; each cluster keeps its orthonormal eigenvector block so
idempotents ``E_r = U_r U_r^T`` are only materialized on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (AmbiguousClustering, CheckFailed, InvariantViolation, NonPositiveEntry,
                     NotBipartite, NotSemiregular)
from .graph import Bipartition, Graph, bipartition, semiregular_profile

DEFAULT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Distinct eigenvalues (descending) with multiplicities and eigenbases.

    ``vectors`` is the full orthonormal eigenvector matrix with columns
    grouped by cluster; ``cluster`` maps each column to its eigenvalue index.
    """

    adjacency: np.ndarray
    eigs: np.ndarray
    mult: np.ndarray
    vectors: np.ndarray
    cluster: np.ndarray
    tol: float
    scale: float

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def num_distinct(self) -> int:
        return len(self.eigs)

    @property
    def lam(self) -> float:
        return float(self.eigs[0])

    def block(self, r: int) -> np.ndarray:
        """Orthonormal basis ``U_r`` of the ``r``-th eigenspace."""
        return self.vectors[:, self.cluster == r]

    def idempotent(self, r: int) -> np.ndarray:
        u = self.block(r)
        return u @ u.T

    @cached_property
    def idem(self) -> tuple:
        return tuple(self.idempotent(r) for r in range(self.num_distinct))

    @cached_property
    def diag(self) -> np.ndarray:
        """``diag[r, u] = (E_r)_{uu}``."""
        sq = self.vectors ** 2
        out = np.zeros((self.num_distinct, self.n))
        np.add.at(out, self.cluster, sq.T)
        out.setflags(write=False)
        return out

    def index_of(self, theta: float) -> Optional[int]:
        hit = np.flatnonzero(np.abs(self.eigs - theta) <= self.tol * self.scale)
        return int(hit[0]) if hit.size else None

    def evaluate(self, values: np.ndarray, cols=None) -> np.ndarray:
        """``sum_r values[r] * E_r`` restricted to the given columns."""
        per_vec = np.asarray(values, dtype=float)[self.cluster]
        right = self.vectors if cols is None else self.vectors[np.asarray(cols, dtype=np.int64)]
        return (self.vectors * per_vec) @ right.T


def _cluster(w: np.ndarray, tol: float, scale: float):
    gaps = w[:-1] - w[1:]
    breaks = gaps > tol * scale
    ambiguous = breaks & (gaps <= 10 * tol * scale)
    if ambiguous.any():
        i = int(np.flatnonzero(ambiguous)[0])
        raise AmbiguousClustering(
            f"eigenvalues {w[i]!r} and {w[i + 1]!r} are separated by {gaps[i]:.3e}, "
            f"inside the guard band ({tol * scale:.1e}, {10 * tol * scale:.1e}]",
            pair=[float(w[i]), float(w[i + 1])])
    return np.concatenate([[0], np.cumsum(breaks)])


def decompose(g: Union[Graph, np.ndarray], tol: float = DEFAULT_TOL) -> SpectralDecomposition:
    """Eigendecompose the adjacency matrix of ``g`` (or a symmetric matrix).

    Eigenvalues closer than ``tol * max(1, rho(A))`` are merged; pairs whose
    gap falls in the guard band up to ten times that raise
    :class:`AmbiguousClustering`.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if isinstance(g, Graph):
        g.require_connected()
        a = g.adjacency.astype(float)
    else:
        a = np.asarray(g, dtype=float)
    w, v = np.linalg.eigh(a)
    w, v = w[::-1], v[:, ::-1]
    scale = max(1.0, float(np.abs(w).max()))
    cluster = _cluster(w, tol, scale)
    m = int(cluster[-1]) + 1
    eigs = np.array([w[cluster == r].mean() for r in range(m)])
    mult = np.bincount(cluster, minlength=m)
    for arr in (a, eigs, mult, v, cluster):
        arr.setflags(write=False)
    dec = SpectralDecomposition(a, eigs, mult, v, cluster, tol, scale)
    _verify(dec)
    return dec


def _verify(dec: SpectralDecomposition) -> None:
    # with U orthonormal every E_r = U_r U_r^T is idempotent, the E_r are
    # mutually orthogonal and tr(E_r) = m_r; only completeness and the
    # reconstruction of A need checking on top of that
    n, tol = dec.n, dec.tol
    v = dec.vectors
    ortho = np.abs(v.T @ v - np.eye(n)).max() if n else 0.0
    complete = np.abs(v @ v.T - np.eye(n)).max() if n else 0.0
    recon = np.abs(dec.evaluate(dec.eigs) - dec.adjacency).max() if n else 0.0
    if ortho > 10 * tol or complete > 10 * tol:
        raise InvariantViolation("eigenvector basis is not orthonormal",
                                 orthogonality=float(ortho), completeness=float(complete))
    if recon > 10 * tol * (1 + abs(dec.lam)):
        raise InvariantViolation("sum of theta_r E_r does not reproduce A", residual=float(recon))


def idempotent_residuals(dec: SpectralDecomposition) -> dict:
    """Max-norm residuals of the idempotent identities, computed on the E_r themselves."""
    n = dec.n
    eye = np.eye(n)
    idem = dec.idem
    square = max(np.abs(e @ e - e).max() for e in idem)
    cross = 0.0
    for r in range(len(idem)):
        for s in range(r + 1, len(idem)):
            cross = max(cross, np.abs(idem[r] @ idem[s]).max())
    total = np.abs(sum(idem) - eye).max()
    recon = np.abs(sum(t * e for t, e in zip(dec.eigs, idem)) - dec.adjacency).max()
    trace = max(abs(np.trace(e) - m) for e, m in zip(idem, dec.mult))
    return {"square": float(square), "cross": float(cross), "sum": float(total),
            "reconstruction": float(recon), "trace": float(trace)}


def eigenvalue_support(dec: SpectralDecomposition, u: int, tol: Optional[float] = None) -> frozenset:
    """Indices ``r`` with ``(E_r)_{uu} > tol``.

    ``E_r`` is positive semidefinite, so a vanishing diagonal entry already
    forces ``E_r e_u = 0``.
    """
    tol = dec.tol if tol is None else tol
    return frozenset(int(r) for r in np.flatnonzero(dec.diag[:, u] > tol))


def set_support(dec: SpectralDecomposition, vertices, tol: Optional[float] = None) -> frozenset:
    tol = dec.tol if tol is None else tol
    idx = np.asarray(list(vertices), dtype=np.int64)
    return frozenset(int(r) for r in np.flatnonzero((dec.diag[:, idx] > tol).any(axis=1)))


@dataclass(frozen=True, eq=False)
class PerronVector:
    lam: float
    v: np.ndarray


def perron(g: Graph, dec: SpectralDecomposition) -> PerronVector:
    """Positive unit eigenvector for the largest eigenvalue.

    Regular and semiregular bipartite graphs use their closed forms; other
    graphs take the (simple) top eigenvector from the decomposition.
    """
    g.require_connected()
    if dec.mult[0] != 1:
        raise InvariantViolation("largest eigenvalue of a connected graph must be simple",
                                 multiplicity=int(dec.mult[0]))
    n = g.n
    if g.is_regular():
        return PerronVector(float(g.degrees[0]), np.full(n, 1 / np.sqrt(n)))
    try:
        part = bipartition(g)
        k, ell = semiregular_profile(g, part)
    except (NotBipartite, NotSemiregular):
        vec = dec.block(0)[:, 0]
        vec = vec if vec.sum() > 0 else -vec
        if (vec <= 0).any():
            raise NonPositiveEntry("Perron vector has non-positive entries",
                                   vertex=int(np.argmin(vec)), value=float(vec.min()))
        return PerronVector(dec.lam, vec / np.linalg.norm(vec))
    vec = np.empty(n)
    vec[list(part.side_b)] = np.sqrt(k)
    vec[list(part.side_c)] = np.sqrt(ell)
    return PerronVector(float(np.sqrt(k * ell)), vec / np.linalg.norm(vec))


@dataclass(frozen=True, eq=False)
class Measure:
    """Discrete measure on the eigenvalues.

    ``points`` and ``weights`` are restricted to ``support`` (indices into
    ``dec.eigs``), in decreasing order of eigenvalue.
    """

    points: np.ndarray
    weights: np.ndarray
    support: tuple
    kind: str
    scope: object = None

    @property
    def size(self) -> int:
        return len(self.points)

    def inner(self, f: np.ndarray, h: np.ndarray) -> float:
        """Inner product of two functions given by their values on ``points``."""
        return float(np.sum(self.weights * f * h))


def local_measure(dec: SpectralDecomposition, scope: Union[int, Sequence[int], str, None] = "global",
                  tol: Optional[float] = None) -> Measure:
    """Vertex (``int``), set (iterable of vertices) or ``"global"`` measure."""
    tol = dec.tol if tol is None else tol
    if scope is None or (isinstance(scope, str) and scope == "global"):
        w = dec.mult / dec.n
        kind = "global"
        scope = None
    elif isinstance(scope, (int, np.integer)):
        w = dec.diag[:, int(scope)]
        kind = "vertex"
        scope = int(scope)
    else:
        members = sorted(int(x) for x in scope)
        if not members:
            raise ValueError("set measure needs a nonempty vertex set")
        w = dec.diag[:, members].mean(axis=1)
        kind = "set"
        scope = tuple(members)
    keep = np.flatnonzero(w > tol)
    return Measure(dec.eigs[keep].copy(), np.asarray(w[keep], dtype=float), tuple(int(r) for r in keep),
                   kind, scope)


@dataclass(frozen=True)
class BlockReport:
    symmetric_spectrum: float
    idempotent_pairing: float
    trace_split: float
    zero_multiplicity: int
    side_gap: int


def bipartite_block_checks(dec: SpectralDecomposition, part: Bipartition,
                           tol: Optional[float] = None) -> BlockReport:
    """Verify the block structure forced on idempotents by a bipartition.

    Raises :class:`CheckFailed` on the first violated identity.  Residuals
    are compared against ``10 * tol``, the same band the idempotent suite uses.
    """
    tol = dec.tol if tol is None else tol
    band = 10 * tol
    a = dec.adjacency
    b_idx, c_idx = list(part.side_b), list(part.side_c)
    if np.abs(a[np.ix_(b_idx, b_idx)]).max(initial=0) or np.abs(a[np.ix_(c_idx, c_idx)]).max(initial=0):
        raise CheckFailed("bipartition has an edge inside one side", check="partition")
    sign = np.ones(dec.n)
    sign[c_idx] = -1.0

    spec_res = 0.0
    pair_res = 0.0
    trace_res = 0.0
    for r, theta in enumerate(dec.eigs):
        s = dec.index_of(-theta)
        if s is None or dec.mult[s] != dec.mult[r]:
            raise CheckFailed(f"eigenvalue {theta!r} has no partner of equal multiplicity",
                              check="symmetric_spectrum", eigenvalue=float(theta))
        spec_res = max(spec_res, abs(dec.eigs[s] + theta))
        flipped = sign[:, None] * dec.block(r)
        pair_res = max(pair_res, np.abs(dec.idempotent(s) - flipped @ flipped.T).max())
        if abs(theta) > tol * dec.scale:
            d = dec.diag[r]
            half = dec.mult[r] / 2
            trace_res = max(trace_res, abs(d[b_idx].sum() - half), abs(d[c_idx].sum() - half))
    if spec_res > band * dec.scale:
        raise CheckFailed("spectrum is not symmetric about 0", check="symmetric_spectrum",
                          residual=float(spec_res))
    if pair_res > band:
        raise CheckFailed("E_{-theta} is not E_theta with negated off-diagonal blocks",
                          check="idempotent_pairing", residual=float(pair_res))
    if trace_res > band:
        raise CheckFailed("tr(B_theta) = tr(C_theta) = tr(E_theta)/2 fails", check="trace_split",
                          residual=float(trace_res))
    z = dec.index_of(0.0)
    zero_mult = int(dec.mult[z]) if z is not None else 0
    gap = abs(len(b_idx) - len(c_idx))
    if zero_mult < gap:
        raise CheckFailed("multiplicity of 0 is below ||B|-|C||", check="zero_multiplicity",
                          multiplicity=zero_mult, gap=gap)
    return BlockReport(float(spec_res), float(pair_res), float(trace_res), zero_mult, gap)
