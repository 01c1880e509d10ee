import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conekit import (
    DimensionMismatchError,
    InvariantViolationError,
    Subspace,
    affine_hull_dim,
    as_vector,
    orthogonal_complement,
    orthonormalize,
    project,
    subspaces_equal,
)
from conekit.randgen import make_rng


def test_as_vector_rejects_nan_and_mismatch():
    with pytest.raises(InvariantViolationError):
        as_vector([1.0, np.nan])
    with pytest.raises(InvariantViolationError):
        as_vector([])
    with pytest.raises(DimensionMismatchError):
        as_vector([1.0, 2.0], dim=3)


def test_orthonormalize_collinear():
    s = orthonormalize([[1.0, 0.0], [2.0, 0.0]])
    assert s.rank == 1
    assert np.allclose(np.abs(s.basis[0]), [1.0, 0.0])


def test_orthonormalize_empty():
    s = orthonormalize([], ambient_dim=4)
    assert s.rank == 0
    assert s.ambient_dim == 4


def test_orthonormalize_random_full_rank():
    # 50 random vectors in dim 8: rank 8, every input reconstructs from the
    # basis; the oracle is a second orthonormalization pass applied twice.
    rng = make_rng(7)
    vecs = rng.standard_normal((50, 8))
    s = orthonormalize(vecs)
    assert s.rank == 8
    for v in vecs:
        resid = v - project(s, v)
        assert np.linalg.norm(resid) < 1e-10
    again = orthonormalize(s.basis)
    twice = orthonormalize(again.basis)
    assert np.max(np.abs(again.basis - twice.basis)) < 1e-8


def test_project_coordinate_subspace():
    s = Subspace(2, np.array([[1.0, 0.0]]))
    assert np.allclose(project(s, [3.0, 4.0]), [3.0, 0.0])


def test_project_rank_zero():
    s = Subspace.zero(3)
    assert np.allclose(project(s, [1.0, 2.0, 3.0]), 0.0)


def test_project_pythagoras_random():
    rng = make_rng(21)
    for _ in range(50):
        s = orthonormalize(rng.standard_normal((3, 6)))
        x = rng.standard_normal(6)
        p = project(s, x)
        assert abs(x @ x - (p @ p + (x - p) @ (x - p))) < 1e-9


def test_complement_of_axis():
    s = Subspace(3, np.array([[1.0, 0.0, 0.0]]))
    c = orthogonal_complement(s)
    assert c.rank == 2
    assert np.max(np.abs(c.basis @ s.basis.T)) < 1e-12


def test_complement_of_zero_is_full():
    c = orthogonal_complement(Subspace.zero(4))
    assert c.rank == 4


def test_double_complement_respans():
    rng = make_rng(3)
    s = orthonormalize(rng.standard_normal((3, 7)))
    back = orthogonal_complement(orthogonal_complement(s))
    assert subspaces_equal(s, back)


def test_affine_hull_dim_examples():
    assert affine_hull_dim([[1.0, 2.0, 3.0]]) == 0
    line = [[0.0, 0.0, 0.0], [1.0, 1.0, 0.0], [2.0, 2.0, 0.0]]
    assert affine_hull_dim(line) == 1
    cube = [[x, y, z] for x in (0.0, 1.0) for y in (0.0, 1.0) for z in (0.0, 1.0)]
    # oracle: rank of the difference set by direct elimination
    diffs = np.array(cube[1:]) - np.array(cube[0])
    assert np.linalg.matrix_rank(diffs) == 3
    assert affine_hull_dim(cube) == 3


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=5, max_size=5),
       st.integers(0, 10**6))
def test_projection_idempotent_and_complement_dual(coords, seed):
    rng = make_rng(seed)
    s = orthonormalize(rng.standard_normal((2, 5)))
    x = np.asarray(coords)
    p = project(s, x)
    assert np.linalg.norm(project(s, p) - p) <= 1e-8 * (1 + np.linalg.norm(x))
    q = project(orthogonal_complement(s), x)
    assert np.linalg.norm(p + q - x) <= 1e-8 * (1 + np.linalg.norm(x))


def test_orthonormalize_stability():
    rng = make_rng(9)
    vecs = rng.standard_normal((4, 6))
    s = orthonormalize(vecs)
    s2 = orthonormalize(s.basis)
    assert np.max(np.abs(s.basis - s2.basis)) <= 1e-8
