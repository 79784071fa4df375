"""Construction of simplex measures over the sample cloud.

A measure is a weighted sum of barycentric-uniform measures, one per
simplex. Each simplex vertex is a convex combination of sample columns;
all built-in strategies emit singleton-sample vertices, but general
combinations are representable.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, EmptyMeasureError
from .frame import MISSING, DataFrame


@dataclass(frozen=True)
class Vertex:
    """Convex combination of sample indices: ((index, coefficient), ...)."""

    combo: tuple[tuple[int, float], ...]

    def __post_init__(self):
        if not self.combo:
            raise ValueError("vertex needs at least one sample")
        indices = [i for i, _ in self.combo]
        if len(set(indices)) != len(indices):
            raise ValueError("duplicate sample index within a vertex")
        if any(c <= 0 for _, c in self.combo):
            raise ValueError("vertex coefficients must be positive")
        if abs(sum(c for _, c in self.combo) - 1.0) > 1e-9:
            raise ValueError("vertex coefficients must sum to 1")
        object.__setattr__(self, "combo", tuple(sorted(self.combo)))

    @property
    def min_index(self) -> int:
        return self.combo[0][0]


def sample_vertex(index: int) -> Vertex:
    return Vertex(((index, 1.0),))


@dataclass(frozen=True)
class Simplex:
    """m vertices carrying total mass `weight`; vertex order is canonical."""

    vertices: tuple[Vertex, ...]
    weight: float = 1.0

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("simplex needs at least one vertex")
        if self.weight <= 0:
            raise ValueError("simplex weight must be positive")
        ordered = tuple(sorted(self.vertices, key=lambda v: (v.min_index, v.combo)))
        object.__setattr__(self, "vertices", ordered)

    @property
    def m(self) -> int:
        return len(self.vertices)

    def key(self) -> tuple:
        """Identity of the vertex set, ignoring weight."""
        return tuple(v.combo for v in self.vertices)


@dataclass(frozen=True)
class SimplexSet:
    """Deduplicated collection of weighted simplexes over n samples."""

    simplexes: tuple[Simplex, ...]
    n: int

    def __post_init__(self):
        if not self.simplexes:
            raise EmptyMeasureError("simplex set is empty")
        keys = [s.key() for s in self.simplexes]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate vertex sets; merge weights first")
        for s in self.simplexes:
            for v in s.vertices:
                for i, _ in v.combo:
                    if not 0 <= i < self.n:
                        raise ValueError(f"sample index {i} out of range for n={self.n}")

    @property
    def total_weight(self) -> float:
        return sum(s.weight for s in self.simplexes)


def simplex_set(simplexes, n: int) -> SimplexSet:
    """Build a SimplexSet, merging duplicate vertex sets by summing weights."""
    merged: dict[tuple, Simplex] = {}
    for s in simplexes:
        key = s.key()
        if key in merged:
            prev = merged[key]
            merged[key] = Simplex(prev.vertices, prev.weight + s.weight)
        else:
            merged[key] = s
    return SimplexSet(tuple(merged.values()), n)


def vertex_matrix(simplex: Simplex, n: int) -> np.ndarray:
    """n x m matrix C whose columns are the vertices' sample coefficients."""
    c = np.zeros((n, simplex.m))
    for j, v in enumerate(simplex.vertices):
        for i, coeff in v.combo:
            c[i, j] = coeff
    return c


def vertex_points(simplex: Simplex, frame: DataFrame) -> np.ndarray:
    """p x m matrix of vertex coordinates in feature space."""
    return frame.values @ vertex_matrix(simplex, frame.n)


def points(frame: DataFrame) -> SimplexSet:
    """One point simplex per sample, equal mass: the Dirac-sum design."""
    return simplex_set(
        (Simplex((sample_vertex(i),)) for i in range(frame.n)), frame.n
    )


def group_by(frame: DataFrame, annotation: str) -> SimplexSet:
    """One simplex per distinct annotation value; missing values stay points."""
    column = frame.annotation(annotation)
    groups: dict[str, list[int]] = {}
    singles: list[int] = []
    for i, value in enumerate(column):
        if value == MISSING:
            singles.append(i)
        else:
            groups.setdefault(value, []).append(i)
    simplexes = [
        Simplex(tuple(sample_vertex(i) for i in members)) for members in groups.values()
    ]
    simplexes.extend(Simplex((sample_vertex(i),)) for i in singles)
    return simplex_set(simplexes, frame.n)


def knn(frame: DataFrame, k: int, metric: str = "euclidean") -> SimplexSet:
    """One simplex per sample spanning it and its k nearest neighbors.

    Exact Euclidean distances on sample columns; ties broken by smaller
    sample index. Duplicate vertex sets are dropped (weight stays 1).
    """
    if metric != "euclidean":
        raise ConfigError(f"unsupported metric {metric!r}")
    n = frame.n
    if not 1 <= k <= n - 1:
        raise ConfigError(f"k={k} out of range [1, {n - 1}]")
    x = frame.values
    sq = np.einsum("ij,ij->j", x, x)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (x.T @ x)
    np.fill_diagonal(d2, np.inf)
    simplexes = []
    seen: set[tuple] = set()
    for i in range(n):
        # lexsort: primary key distance, secondary key index
        order = np.lexsort((np.arange(n), d2[i]))
        members = sorted([i, *order[:k].tolist()])
        s = Simplex(tuple(sample_vertex(j) for j in members))
        if s.key() not in seen:
            seen.add(s.key())
            simplexes.append(s)
    return simplex_set(simplexes, n)


def chain(
    frame: DataFrame, order_annotation: str, series_annotation: str | None = None
) -> SimplexSet:
    """Segments between consecutive samples ordered by a numeric annotation.

    With a series annotation, chains are built per distinct series value;
    singleton series yield point simplexes.
    """
    order_values = frame.annotation(order_annotation)
    keys = []
    for i, cell in enumerate(order_values):
        try:
            keys.append(float(cell))
        except ValueError:
            raise ConfigError(
                f"order annotation {order_annotation!r} has non-numeric value {cell!r} "
                f"for sample {frame.sample_ids[i]!r}"
            ) from None
    if series_annotation is not None:
        series = frame.annotation(series_annotation)
    else:
        series = ("",) * frame.n
    chains: dict[str, list[int]] = {}
    for i, tag in enumerate(series):
        chains.setdefault(tag, []).append(i)
    simplexes = []
    for members in chains.values():
        members = sorted(members, key=lambda i: (keys[i], i))
        if len(members) == 1:
            simplexes.append(Simplex((sample_vertex(members[0]),)))
        for a, b in zip(members, members[1:]):
            simplexes.append(Simplex((sample_vertex(a), sample_vertex(b))))
    return simplex_set(simplexes, frame.n)


def simplex_volume(simplex: Simplex, frame: DataFrame) -> float:
    """(m-1)-dimensional volume via the Gram determinant of edge vectors."""
    if simplex.m == 1:
        return 1.0
    pts = vertex_points(simplex, frame)
    edges = pts[:, 1:] - pts[:, :1]
    gram = edges.T @ edges
    det = float(np.linalg.det(gram))
    if det <= 0:
        return 0.0
    return math.sqrt(det) / math.factorial(simplex.m - 1)


def apply_volume_weights(sset: SimplexSet, frame: DataFrame, tol: float = 1e-12) -> SimplexSet:
    """Scale each simplex weight by its volume; drop degenerate simplexes.

    Point simplexes keep their weight (multiplier 1). A simplex whose
    volume is zero relative to its edge scale is dropped with a warning.
    """
    kept = []
    dropped = 0
    for s in sset.simplexes:
        if s.m == 1:
            kept.append(s)
            continue
        pts = vertex_points(s, frame)
        edges = pts[:, 1:] - pts[:, :1]
        scale = float(np.abs(edges).max(initial=0.0))
        vol = simplex_volume(s, frame)
        if vol <= tol * max(scale, 1.0) ** (s.m - 1):
            dropped += 1
            continue
        kept.append(Simplex(s.vertices, s.weight * vol))
    if dropped:
        warnings.warn(f"dropped {dropped} degenerate simplex(es) with zero volume")
    if not kept:
        raise EmptyMeasureError("all simplexes degenerate under volume weighting")
    return simplex_set(kept, sset.n)
