import itertools

import numpy as np
import pytest

from locmod import CapExceeded, DomainError, compare_with_admissible, enumerate_gl_points, enumerate_gsp_points
from locmod.lattice_chain import (ChainConfiguration, field, gl_shape, gsp_shape, parahoric_nodes,
                                  subspaces)


def _gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_field_axioms(q):
    F = field(q)
    els = range(q)
    for a, b, c in itertools.product(els, repeat=3):
        assert F.mul[a, F.add[b, c]] == F.add[F.mul[a, b], F.mul[a, c]]
        assert F.add[a, F.add[b, c]] == F.add[F.add[a, b], c]
        assert F.mul[a, F.mul[b, c]] == F.mul[F.mul[a, b], c]
    for a in range(1, q):
        assert F.mul[a, F.inv[a]] == 1
    for a in els:
        assert F.add[a, F.neg[a]] == 0


@pytest.mark.parametrize("n, d, q", [(2, 1, 2), (3, 1, 3), (3, 2, 2), (4, 2, 2), (4, 2, 3), (4, 1, 4)])
def test_grassmannian_sizes(n, d, q):
    assert len(subspaces(n, d, q)) == _gaussian_binomial(n, d, q)


def _brute_force(shape, d, q):
    """Count tuples of subspaces satisfying the chain conditions one tuple at a time."""
    subs = subspaces(shape.n, d, q)
    return sum(ChainConfiguration(shape, q, tup).validate()
               for tup in itertools.product(subs, repeat=shape.period))


@pytest.mark.parametrize("n, d, shape, q", [
    (2, 1, "maximal", 2), (2, 1, "maximal", 3), (2, 1, "maximal", 4), (3, 1, "maximal", 2),
    (3, 2, "2,1", 2), (3, 1, "standard", 3), (2, 1, "maximal", 5),
])
def test_gl_counts_match_brute_force(n, d, shape, q):
    sh = gl_shape(n, shape)
    assert enumerate_gl_points(n, d, sh, q) == _brute_force(sh, d, q)


@pytest.mark.parametrize("n, shape, q", [(2, "maximal", 2), (2, "maximal", 3), (4, "standard", 2),
                                         (4, "standard", 3)])
def test_gsp_counts_match_brute_force(n, shape, q):
    sh = gsp_shape(n, shape)
    assert enumerate_gsp_points(n, sh, q) == _brute_force(sh, n // 2, q)


# Frozen from the brute-force and admissible-side runs.
GL_VALUES = [
    (2, 1, "maximal", 2, 5), (2, 1, "maximal", 3, 7), (2, 1, "maximal", 4, 9),
    (3, 1, "maximal", 2, 19), (3, 2, "maximal", 2, 19), (3, 1, "1,2", 3, 25),
    (3, 1, "2,1", 2, 13), (4, 2, "maximal", 2, 241), (4, 2, "2,2", 2, 105), (4, 1, "1,3", 3, 79),
]
GSP_VALUES = [
    (2, "maximal", 2, 5), (4, "standard", 2, 15), (4, "standard", 3, 40),
    (4, "maximal", 2, 59), (4, "maximal", 3, 163), (4, "2,2", 2, 41), (4, "1,2,1", 2, 33),
]


@pytest.mark.parametrize("n, d, shape, q, value", GL_VALUES)
def test_gl_frozen_values_and_admissible_side(n, d, shape, q, value):
    r = compare_with_admissible("gl", n, d, shape, q)
    assert r["count"] == value
    assert r["match"] and r["formulas_agree"]


@pytest.mark.parametrize("n, shape, q, value", GSP_VALUES)
def test_gsp_frozen_values_and_admissible_side(n, shape, q, value):
    r = compare_with_admissible("gsp", n, None, shape, q)
    assert r["count"] == value
    assert r["match"] and r["formulas_agree"]


def test_listed_points_validate():
    count, pts = enumerate_gl_points(3, 1, "maximal", 2, list_points=True)
    assert count == len(pts) == 19
    assert all(p.validate() for p in pts)
    assert len({tuple(S.tobytes() for S in p.subspaces) for p in pts}) == 19
    count, pts = enumerate_gsp_points(4, "maximal", 2, list_points=True)
    assert count == len(pts) == 59
    assert all(p.validate() for p in pts)


def test_parallel_matches_serial():
    assert enumerate_gsp_points(4, "maximal", 2, jobs=2) == enumerate_gsp_points(4, "maximal", 2)


def test_parahoric_nodes():
    assert parahoric_nodes(gl_shape(3, "maximal")) == ()
    assert parahoric_nodes(gl_shape(3, "standard")) == (1, 2)
    assert parahoric_nodes(gsp_shape(4, "standard")) == (1, 2)
    assert parahoric_nodes(gsp_shape(4, "2,2")) == (1,)


def test_shape_validation():
    with pytest.raises(DomainError):
        gl_shape(3, "1,1")
    with pytest.raises(DomainError):
        gsp_shape(4, "1,3")
    with pytest.raises(DomainError):
        gsp_shape(3, "standard")
    with pytest.raises(DomainError):
        enumerate_gl_points(2, 1, "maximal", 7)
    with pytest.raises(CapExceeded):
        enumerate_gl_points(5, 1, "maximal", 2)
    with pytest.raises(DomainError):
        compare_with_admissible("gu", 2)


def test_pure_numpy_kernel_agrees(monkeypatch):
    from locmod import _kernels
    ann = np.array([[[1, 1]], [[0, 1]]], dtype=np.int64)
    img = np.array([[[1, 1]], [[1, 0]]], dtype=np.int64)
    F = field(2)
    a = _kernels.subspace_compat_numpy(ann, img, F.add, F.mul)
    b = _kernels.subspace_compat(ann, img, F.add, F.mul)
    assert np.array_equal(a, b)
