import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bcsep.gaussian import det_identity_sides
from bcsep.linalg import NotPSDError, as_matrix, block, check_spd, det, inv, loewner_leq


def _laplace_det(a):
    a = [list(r) for r in a]
    if len(a) == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * _laplace_det([r[:j] + r[j + 1:] for r in a[1:]]) for j in range(len(a)))


def _random_pd(rng, ell):
    b = rng.standard_normal((ell, ell))
    return b @ b.T + 0.1 * np.eye(ell)


def test_small_examples():
    assert det(np.eye(3)) == 1.0
    assert np.array_equal(inv(np.eye(3)), np.eye(3))
    assert det(np.diag([2.0, 3.0])) == pytest.approx(6.0)
    assert as_matrix(2.5).shape == (1, 1)


@given(st.integers(1, 4), st.integers(0, 10_000))
@settings(max_examples=40)
def test_det_and_inverse_against_cofactors(ell, seed):
    a = _random_pd(np.random.default_rng(seed), ell)
    ref = _laplace_det(a.tolist())
    assert det(a) == pytest.approx(ref, rel=1e-12)
    assert np.allclose(inv(a) @ a, np.eye(ell), atol=1e-10)


def test_inverse_of_singular_matrix():
    with pytest.raises(ValueError):
        inv(np.ones((2, 2)))


def test_not_psd_reports_eigenvalue():
    with pytest.raises(NotPSDError) as exc:
        check_spd(np.diag([1.0, -0.5]), "D1")
    assert exc.value.eigenvalue == pytest.approx(-0.5)
    assert "D1" in str(exc.value)
    check_spd(np.diag([1.0, 0.0]), strict=False)
    with pytest.raises(NotPSDError):
        check_spd(np.diag([1.0, 0.0]))


def test_shape_and_symmetry_errors():
    with pytest.raises(ValueError):
        check_spd([[1.0, 0.5], [0.0, 1.0]])
    with pytest.raises(ValueError):
        as_matrix(np.eye(5))
    with pytest.raises(ValueError):
        as_matrix(np.ones((2, 3)))


def test_blocks_and_loewner():
    a = np.arange(16.0).reshape(4, 4)
    assert np.array_equal(block(a, 1, 0, 1), a[:1, 1:])
    assert np.array_equal(block(a, 3, 1, 1), a[3:, 3:])
    with pytest.raises(ValueError):
        block(a, 0, 0, 0)
    assert loewner_leq(0.5 * np.eye(2), np.eye(2))
    assert not loewner_leq(np.diag([2.0, 0.1]), np.eye(2))


@given(st.integers(1, 4), st.integers(0, 10_000))
@settings(max_examples=40)
def test_determinant_identity(ell, seed):
    rng = np.random.default_rng(seed)
    lhs, rhs = det_identity_sides(_random_pd(rng, ell), _random_pd(rng, ell), _random_pd(rng, ell))
    assert lhs == pytest.approx(rhs, rel=1e-9)
