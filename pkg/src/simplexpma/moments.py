"""Second moment assembly and spectral decomposition.

The measure's second moment is M2 = X A X^T with A an n x n coefficient
matrix assembled per simplex. For a barycentric-uniform measure on an
m-vertex simplex, the expected product of barycentric coordinates is
E[w_i w_j] = (1 + delta_ij) / (m (m + 1)), which gives the closed-form
per-simplex contribution w/(m(m+1)) * (C C^T + (C 1)(C 1)^T) where the
columns of C hold the vertices' sample coefficients.

Decomposition runs along one of two equivalent paths: eigendecomposing
the p x p matrix X A X^T directly (feature path), or the c x c Gram
matrix of Y = X B with A = B B^T (sample path), mapping Gram
eigenvectors u to axes v = Y u / sigma.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DecompositionError, EmptyMeasureError, RankZeroError
from .frame import DataFrame
from .simplexes import Simplex, SimplexSet, vertex_matrix

DEFAULT_RANK_TOL = 1e-12
EIGENVALUE_CLAMP = 1e-10
DEGENERATE_GAP_TOL = 1e-8


def simplex_second_moment_coeffs(simplex: Simplex, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Unnormalized contribution (A_g, B_g) of one simplex, mass = its weight.

    A_g is n x n, B_g is n x (m+1) with A_g = B_g B_g^T.
    """
    c = vertex_matrix(simplex, n)
    m = simplex.m
    s = c.sum(axis=1, keepdims=True)
    scale = simplex.weight / (m * (m + 1))
    a = scale * (c @ c.T + s @ s.T)
    b = np.sqrt(scale) * np.hstack([c, s])
    return a, b


@dataclass(frozen=True)
class MomentCoefficients:
    """Sample-space representation of the normalized measure's moments.

    M2 = X a X^T, a = b b^T, first moment M1 = X mean_coeffs.
    """

    a: np.ndarray
    b: np.ndarray
    mean_coeffs: np.ndarray
    total_weight: float

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def c(self) -> int:
        return self.b.shape[1]


def assemble(sset: SimplexSet) -> MomentCoefficients:
    """Sum per-simplex contributions and normalize by total weight."""
    w = sset.total_weight
    if w <= 0:
        raise EmptyMeasureError("total weight is zero")
    n = sset.n
    a = np.zeros((n, n))
    b_blocks = []
    mean = np.zeros(n)
    for s in sset.simplexes:
        a_g, b_g = simplex_second_moment_coeffs(s, n)
        a += a_g
        b_blocks.append(b_g)
        mean += (s.weight / s.m) * vertex_matrix(s, n).sum(axis=1)
    a /= w
    b = np.hstack(b_blocks) / np.sqrt(w)
    mean /= w
    return MomentCoefficients(a, b, mean, w)


def first_moment(sset: SimplexSet, frame: DataFrame) -> np.ndarray:
    """Mean of the normalized measure: average of simplex centroids."""
    return frame.values @ assemble(sset).mean_coeffs


@dataclass(frozen=True)
class PmaModel:
    """Fitted decomposition: principal moments, axes, and scores."""

    eigenvalues: np.ndarray  # (r,), descending, > 0
    axes: np.ndarray  # p x r, orthonormal
    sample_scores: np.ndarray  # r x n
    dual_coefficients: np.ndarray  # r x c, axis k = X B dual_k
    trace_total: float  # includes discarded tail mass
    mean: Optional[np.ndarray]  # subtracted from columns when centered
    frame: DataFrame
    coeffs: MomentCoefficients
    simplexes: Optional[SimplexSet] = None
    config: dict = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.eigenvalues)

    def centered_values(self) -> np.ndarray:
        if self.mean is None:
            return self.frame.values
        return self.frame.values - self.mean[:, None]

    def degenerate_gap(self, s: int) -> bool:
        """True when the rank-s projection is not uniquely defined."""
        if s >= self.rank:
            return False
        lam = self.eigenvalues
        return (lam[s - 1] - lam[s]) < DEGENERATE_GAP_TOL * lam[0]


def fit(
    frame: DataFrame,
    coeffs: MomentCoefficients,
    *,
    center: bool = False,
    rank_tol: float = DEFAULT_RANK_TOL,
    max_rank: int | None = None,
    path: str = "auto",
    simplexes: SimplexSet | None = None,
    config: dict | None = None,
) -> PmaModel:
    """Decompose M2 = X A X^T into principal moments, axes, and scores."""
    if coeffs.n != frame.n:
        raise ValueError("coefficients and frame disagree on sample count")
    mean = None
    x = frame.values
    if center:
        mean = x @ coeffs.mean_coeffs
        x = x - mean[:, None]
    p, c = frame.p, coeffs.c
    if path == "auto":
        path = "sample" if c < p else "feature"
    y = x @ coeffs.b  # p x c
    trace_total = float(np.einsum("ij,ij->", y, y))

    try:
        if path == "feature":
            m2 = y @ y.T
            lam, vecs = np.linalg.eigh(m2)
        elif path == "sample":
            gram = y.T @ y
            lam, vecs = np.linalg.eigh(gram)
        else:
            raise ValueError(f"unknown path {path!r}")
    except np.linalg.LinAlgError as exc:
        raise DecompositionError(str(exc)) from exc

    order = np.argsort(lam)[::-1]
    lam = lam[order]
    vecs = vecs[:, order]
    lam_max = lam[0] if len(lam) else 0.0
    if lam_max <= 0:
        raise RankZeroError("second moment has no positive eigenvalues")
    # clamp eigensolver noise, then truncate below the rank tolerance
    lam = np.where(lam > -EIGENVALUE_CLAMP * lam_max, np.maximum(lam, 0.0), lam)
    keep = lam > rank_tol * lam_max
    r = int(np.count_nonzero(keep))
    if max_rank is not None:
        r = min(r, max_rank)
    if r == 0:
        raise RankZeroError("all eigenvalues below rank tolerance")
    lam = lam[:r]
    vecs = vecs[:, :r]
    sigma = np.sqrt(lam)

    if path == "feature":
        axes = vecs
        dual = (y.T @ axes) / lam[None, :]  # u_k / sigma_k with u_k = Y^T v_k / sigma_k
    else:
        axes = (y @ vecs) / sigma[None, :]
        dual = vecs / sigma[None, :]

    signs = np.ones(r)
    for k in range(r):
        idx = int(np.argmax(np.abs(axes[:, k])))
        if axes[idx, k] < 0:
            signs[k] = -1.0
    axes = axes * signs[None, :]
    dual = dual * signs[None, :]

    scores = axes.T @ x
    cfg = dict(config or {})
    cfg.setdefault("center", center)
    cfg.setdefault("rank_tol", rank_tol)
    cfg.setdefault("path", path)
    return PmaModel(
        eigenvalues=lam,
        axes=axes,
        sample_scores=scores,
        dual_coefficients=dual.T,
        trace_total=trace_total,
        mean=mean,
        frame=frame,
        coeffs=coeffs,
        simplexes=simplexes,
        config=cfg,
    )


def fit_pma(
    frame: DataFrame,
    sset: SimplexSet,
    *,
    center: bool = False,
    rank_tol: float = DEFAULT_RANK_TOL,
    max_rank: int | None = None,
    path: str = "auto",
    config: dict | None = None,
) -> PmaModel:
    """Assemble the measure's coefficients and fit in one step."""
    coeffs = assemble(sset)
    return fit(
        frame,
        coeffs,
        center=center,
        rank_tol=rank_tol,
        max_rank=max_rank,
        path=path,
        simplexes=sset,
        config=config,
    )


def principal_functional(model: PmaModel, k: int, x: np.ndarray) -> float:
    """Dual functional u_k(x) = lambda_k^{-1/2} (x . v_k)."""
    if not 1 <= k <= model.rank:
        raise ValueError(f"k={k} out of range [1, {model.rank}]")
    return float(model.axes[:, k - 1] @ np.asarray(x)) / np.sqrt(model.eigenvalues[k - 1])


def project(model: PmaModel, s: int, pts: np.ndarray) -> np.ndarray:
    """Coordinates of p x q points in the optimal rank-s subspace."""
    if not 1 <= s <= model.rank:
        raise ValueError(f"s={s} out of range [1, {model.rank}]")
    return model.axes[:, :s].T @ np.asarray(pts)
