import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hilbert_embed.errors import DimensionMismatch, NonFiniteEntry
from hilbert_embed.symmat import (
    Definiteness,
    batched_jacobi_eigenvalues,
    centered_sum_of_squares,
    definiteness,
    double_center,
    jacobi_eigen,
    symmetrize,
)


def random_symmetric(rng, n):
    a = rng.standard_normal((n, n))
    return (a + a.T) / 2


def test_jacobi_diagonal_already():
    eig = jacobi_eigen(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_array_equal(eig.eigenvalues, [-1.0, 2.0, 3.0])


def test_jacobi_known_2x2():
    eig = jacobi_eigen([[2.0, 1.0], [1.0, 2.0]])
    np.testing.assert_allclose(eig.eigenvalues, [1.0, 3.0], atol=1e-15)
    np.testing.assert_allclose(np.abs(eig.eigenvectors), np.full((2, 2), 2**-0.5), atol=1e-15)


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_jacobi_matches_numpy(n):
    rng = np.random.default_rng(n)
    for _ in range(10):
        a = random_symmetric(rng, n)
        eig = jacobi_eigen(a)
        np.testing.assert_allclose(eig.eigenvalues, np.linalg.eigvalsh(a), atol=1e-12)
        np.testing.assert_allclose(eig.reconstruct(), a, atol=1e-12)
        v = eig.eigenvectors
        np.testing.assert_allclose(v.T @ v, np.eye(n), atol=1e-12)


def test_jacobi_sign_convention():
    rng = np.random.default_rng(0)
    v = jacobi_eigen(random_symmetric(rng, 6)).eigenvectors
    for col in v.T:
        first = col[np.abs(col) > 1e-12][0]
        assert first > 0


def test_jacobi_rejects_nonfinite():
    with pytest.raises(NonFiniteEntry):
        jacobi_eigen([[0.0, np.inf], [np.inf, 0.0]])


def test_jacobi_extreme_scale():
    a = np.array([[1e150, 1e-150], [1e-150, -1e150]])
    np.testing.assert_allclose(jacobi_eigen(a).eigenvalues, [-1e150, 1e150])


def test_batched_matches_scalar():
    rng = np.random.default_rng(5)
    a = np.stack([random_symmetric(rng, 6) for _ in range(50)])
    got = batched_jacobi_eigenvalues(a)
    want = np.stack([jacobi_eigen(x).eigenvalues for x in a])
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_symmetrize_averages():
    np.testing.assert_array_equal(symmetrize([[0, 1], [3, 0]]), [[0, 2], [2, 0]])


def test_double_center_rows_and_columns_sum_to_zero():
    rng = np.random.default_rng(1)
    c = double_center(random_symmetric(rng, 7))
    np.testing.assert_allclose(c.sum(axis=0), 0, atol=1e-12)
    np.testing.assert_allclose(c.sum(axis=1), 0, atol=1e-12)


def test_double_center_matches_projection():
    rng = np.random.default_rng(2)
    a = random_symmetric(rng, 5)
    p = np.eye(5) - np.ones((5, 5)) / 5
    np.testing.assert_allclose(double_center(a), p @ a @ p, atol=1e-13)


def test_double_center_p3_squared():
    # squared P3 distances center to -2 v v^T with v = (-1, 0, 1)
    d2 = np.array([[0, 1, 4], [1, 0, 1], [4, 1, 0]], dtype=float)
    np.testing.assert_allclose(double_center(d2), [[-2, 0, 2], [0, 0, 0], [2, 0, -2]], atol=1e-14)


@pytest.mark.parametrize(
    "a, kind",
    [
        (np.diag([-1.0, -2.0]), Definiteness.NEGATIVE_SEMIDEFINITE),
        (np.diag([1.0, 0.0]), Definiteness.POSITIVE_SEMIDEFINITE),
        (np.diag([1.0, -1.0]), Definiteness.INDEFINITE),
        (np.zeros((3, 3)), Definiteness.ZERO),
    ],
)
def test_definiteness(a, kind):
    assert definiteness(a).kind == kind


def test_definiteness_tolerance_is_relative():
    assert definiteness(np.diag([-1e6, 1e-5])).kind == Definiteness.NEGATIVE_SEMIDEFINITE
    assert definiteness(np.diag([-1.0, 1e-5])).kind == Definiteness.INDEFINITE


def test_variance_identity_small():
    lhs, rhs = centered_sum_of_squares([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    assert lhs == pytest.approx(4.0) and rhs == pytest.approx(4.0)


def test_variance_identity_ragged():
    with pytest.raises(DimensionMismatch):
        centered_sum_of_squares([[0.0, 1.0], [1.0]])


@settings(max_examples=200, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 10), st.integers(1, 4)),
              elements=st.floats(-100, 100)))
def test_variance_identity_property(points):
    lhs, rhs = centered_sum_of_squares(points)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


@settings(max_examples=100, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 8), st.integers(1, 8)),
              elements=st.floats(-10, 10)))
def test_jacobi_trace_property(a):
    if a.shape[0] != a.shape[1]:
        a = a[: min(a.shape), : min(a.shape)]
    a = (a + a.T) / 2
    eig = jacobi_eigen(a)
    norm = max(1.0, np.linalg.norm(a))
    assert abs(eig.eigenvalues.sum() - np.trace(a)) <= 1e-9 * norm
    assert np.linalg.norm(eig.reconstruct() - a) <= 1e-10 * norm
