import math

import numpy as np
import pytest

from simplexpma.errors import ConfigError, EmptyMeasureError, UnknownAnnotationError
from simplexpma.frame import DataFrame
from simplexpma.simplexes import (
    Simplex,
    apply_volume_weights,
    chain,
    group_by,
    knn,
    points,
    sample_vertex,
    simplex_set,
    simplex_volume,
)


def make_frame(values, annotations=None):
    values = np.atleast_2d(np.asarray(values, dtype=float))
    p, n = values.shape
    frame = DataFrame(
        tuple(f"v{i}" for i in range(p)), tuple(f"s{j}" for j in range(n)), values
    )
    if annotations:
        frame = frame.with_annotations(
            {k: tuple(v) for k, v in annotations.items()}
        )
    return frame


def member_sets(sset):
    return sorted(
        tuple(v.combo[0][0] for v in s.vertices) for s in sset.simplexes
    )


# ---------------------------------------------------------------- points

def test_points_one_simplex_per_sample():
    sset = points(make_frame([[1, 2, 3]]))
    assert member_sets(sset) == [(0,), (1,), (2,)]
    assert all(s.weight == 1 for s in sset.simplexes)


def test_points_single_sample():
    sset = points(make_frame([[7]]))
    assert member_sets(sset) == [(0,)]


# ---------------------------------------------------------------- group_by

def test_group_by_basic():
    frame = make_frame([[0, 0, 0]], {"g": ["A", "A", "B"]})
    assert member_sets(group_by(frame, "g")) == [(0, 1), (2,)]


def test_group_by_sentinel_becomes_point():
    frame = make_frame([[0, 0, 0]], {"g": ["A", "", "A"]})
    assert member_sets(group_by(frame, "g")) == [(0, 2), (1,)]


def test_group_by_all_distinct_equals_points():
    frame = make_frame([[0, 0, 0]], {"g": ["a", "b", "c"]})
    assert member_sets(group_by(frame, "g")) == member_sets(points(frame))


def test_group_by_unknown_annotation():
    with pytest.raises(UnknownAnnotationError):
        group_by(make_frame([[0]]), "nope")


# ---------------------------------------------------------------- knn

def brute_force_knn_sets(values, k):
    """Oracle: naive O(n^2) neighbor search with (distance, index) ordering."""
    x = np.atleast_2d(np.asarray(values, dtype=float))
    n = x.shape[1]
    out = set()
    for i in range(n):
        cand = sorted(
            (math.dist(x[:, i], x[:, j]), j) for j in range(n) if j != i
        )
        out.add(tuple(sorted([i] + [j for _, j in cand[:k]])))
    return sorted(out)


def test_knn_line_tie_broken_by_index():
    # samples at 0, 1, 2: s1's nearest is s0 (tie with s2, lower index wins)
    frame = make_frame([[0, 1, 2]])
    assert member_sets(knn(frame, 1)) == [(0, 1), (1, 2)]
    assert member_sets(knn(frame, 1)) == brute_force_knn_sets([[0, 1, 2]], 1)


def test_knn_full_neighborhood_dedups_to_one():
    frame = make_frame([[0, 1, 2]])
    assert member_sets(knn(frame, 2)) == [(0, 1, 2)]


def test_knn_duplicate_points_allowed():
    frame = make_frame([[0, 0, 5]])
    sset = knn(frame, 1)
    assert (0, 1) in member_sets(sset)


def test_knn_matches_bruteforce_random():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = rng.integers(3, 9)
        p = rng.integers(1, 5)
        x = rng.standard_normal((p, n))
        k = int(rng.integers(1, n))
        assert member_sets(knn(make_frame(x), k)) == brute_force_knn_sets(x, k)


def test_knn_k_out_of_range():
    frame = make_frame([[0, 1, 2]])
    with pytest.raises(ConfigError):
        knn(frame, 0)
    with pytest.raises(ConfigError):
        knn(frame, 3)


def test_knn_permutation_invariant_up_to_relabeling():
    rng = np.random.default_rng(11)
    x = rng.standard_normal((3, 7))
    perm = rng.permutation(7)
    base = member_sets(knn(make_frame(x), 2))
    permuted = member_sets(knn(make_frame(x[:, perm]), 2))
    inv = np.argsort(perm)
    relabeled = sorted(tuple(sorted(int(inv[i]) for i in s)) for s in base)
    # relabeled indices point into the permuted frame
    assert relabeled == sorted(tuple(sorted(s)) for s in permuted)


# ---------------------------------------------------------------- chain

def test_chain_single_series():
    frame = make_frame([[0, 0, 0]], {"t": ["10", "20", "30"]})
    assert member_sets(chain(frame, "t")) == [(0, 1), (1, 2)]


def test_chain_two_series():
    frame = make_frame(
        [[0, 0, 0]], {"t": ["1", "2", "1"], "subject": ["a", "a", "b"]}
    )
    assert member_sets(chain(frame, "t", "subject")) == [(0, 1), (2,)]


def test_chain_equal_orders_tie_by_index():
    frame = make_frame([[0, 0, 0]], {"t": ["5", "5", "5"]})
    assert member_sets(chain(frame, "t")) == [(0, 1), (1, 2)]


def test_chain_non_numeric_order():
    frame = make_frame([[0]], {"t": ["abc"]})
    with pytest.raises(ConfigError):
        chain(frame, "t")


# ---------------------------------------------------------------- volumes

def cayley_menger_volume(pts):
    """Oracle: simplex volume from the Cayley-Menger determinant."""
    pts = np.asarray(pts, dtype=float)
    m = pts.shape[1]
    if m == 1:
        return 1.0
    d2 = np.zeros((m + 1, m + 1))
    d2[0, 1:] = d2[1:, 0] = 1.0
    for i in range(m):
        for j in range(m):
            d2[i + 1, j + 1] = np.sum((pts[:, i] - pts[:, j]) ** 2)
    det = np.linalg.det(d2)
    k = m - 1
    vol2 = (-1) ** (k + 1) / (2**k * math.factorial(k) ** 2) * det
    return math.sqrt(max(vol2, 0.0))


def full_simplex(indices):
    return Simplex(tuple(sample_vertex(i) for i in indices))


def test_unit_segment_volume():
    frame = make_frame([[0, 1], [0, 0]])
    assert simplex_volume(full_simplex([0, 1]), frame) == pytest.approx(1.0)


def test_triangle_volume_shoelace_oracle():
    pts = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    # shoelace oracle for the 2-D triangle area
    (x0, x1, x2), (y0, y1, y2) = pts
    shoelace = abs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)) / 2
    assert shoelace == 0.5
    frame = make_frame(pts)
    assert simplex_volume(full_simplex([0, 1, 2]), frame) == pytest.approx(shoelace)


def test_collinear_triangle_dropped():
    frame = make_frame([[0, 1, 2], [0, 1, 2]])
    sset = simplex_set([full_simplex([0, 1, 2]), full_simplex([0, 1])], 3)
    with pytest.warns(UserWarning):
        weighted = apply_volume_weights(sset, frame)
    assert member_sets(weighted) == [(0, 1)]


def test_all_degenerate_raises():
    frame = make_frame([[0, 0]])
    sset = simplex_set([full_simplex([0, 1])], 2)
    with pytest.warns(UserWarning):
        with pytest.raises(EmptyMeasureError):
            apply_volume_weights(sset, frame)


def test_point_simplex_weight_unchanged():
    frame = make_frame([[3.0]])
    sset = points(frame)
    weighted = apply_volume_weights(sset, frame)
    assert weighted.simplexes[0].weight == 1.0


def test_gram_volume_matches_cayley_menger_random():
    rng = np.random.default_rng(3)
    for _ in range(40):
        p = int(rng.integers(1, 9))
        m = int(rng.integers(1, min(5, p + 1) + 1))
        pts = rng.standard_normal((p, m))
        frame = make_frame(pts)
        got = simplex_volume(full_simplex(range(m)), frame)
        want = cayley_menger_volume(pts)
        assert got == pytest.approx(want, rel=1e-9, abs=1e-12)


# ---------------------------------------------------------------- set semantics

def test_duplicate_simplexes_merge_weights():
    sset = simplex_set([full_simplex([0, 1]), full_simplex([1, 0])], 2)
    assert len(sset.simplexes) == 1
    assert sset.simplexes[0].weight == 2.0


def test_vertex_order_canonical():
    a = full_simplex([2, 0, 1])
    assert tuple(v.combo[0][0] for v in a.vertices) == (0, 1, 2)
