import numpy as np
import pytest

from nostretch import linalg as la
from nostretch.su2 import haar_sample, wigner_D


def test_tensor_identities():
    np.testing.assert_array_equal(la.tensor(np.eye(2), np.eye(3)), np.eye(6))


def test_tensor_index_convention():
    v = la.tensor(la.ket(2, 0), la.ket(2, 1))
    np.testing.assert_array_equal(v, la.ket(4, 1))


def test_trace_of_tensor(rng):
    a, b = rng.normal(size=(2, 2)), rng.normal(size=(3, 3))
    expected = sum(a[i, i] for i in range(2)) * sum(b[i, i] for i in range(3))
    assert np.trace(la.tensor(a, b)) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("keep", [0, 1])
def test_partial_trace_of_product(rng, keep):
    a, b = la.random_hermitian(2, rng), la.random_hermitian(3, rng)
    red = la.partial_trace(la.tensor(a, b), keep, (2, 3))
    expected = a * np.trace(b) if keep == 0 else b * np.trace(a)
    np.testing.assert_allclose(red, expected, atol=1e-12)


def test_partial_trace_of_unnormalized_omega():
    omega = sum(la.tensor(la.ket(3, i), la.ket(3, i)) for i in range(3))
    np.testing.assert_allclose(la.partial_trace(la.projector(omega), 1, (3, 3)), np.eye(3), atol=1e-15)


def test_partial_trace_preserves_trace(rng):
    m = la.random_hermitian(6, rng)
    for keep in (0, 1):
        assert np.trace(la.partial_trace(m, keep, (2, 3))) == pytest.approx(np.trace(m), abs=1e-12)


def test_partial_trace_dimension_mismatch():
    with pytest.raises(ValueError):
        la.partial_trace(np.eye(5), 0, (2, 3))


def test_transpose_dagger_conj(rng):
    assert np.array_equal(la.transpose(np.eye(3)), np.eye(3))
    m = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
    np.testing.assert_array_equal(la.dagger(la.dagger(m)), m)
    d = wigner_D(3, haar_sample(rng))
    t, cd = la.transpose(d), la.conj(la.dagger(d))
    for i in range(4):
        for j in range(4):
            assert t[i, j] == d[j, i] == cd[i, j]


def test_pure_fidelity(rng):
    psi = rng.normal(size=3) + 1j * rng.normal(size=3)
    psi /= np.linalg.norm(psi)
    assert la.pure_fidelity(la.projector(psi), psi) == pytest.approx(1, abs=1e-12)
    assert la.pure_fidelity(la.projector(la.ket(2, 0)), la.ket(2, 1)) == 0
    assert la.pure_fidelity(np.eye(3) / 3, psi) == pytest.approx(1 / 3, abs=1e-12)
    # global phase invariance
    rho = la.random_density(3, rng)
    assert la.pure_fidelity(rho, psi) == pytest.approx(la.pure_fidelity(rho, np.exp(0.7j) * psi), abs=1e-14)


def test_pure_fidelity_errors():
    with pytest.raises(ValueError):
        la.pure_fidelity(np.eye(2) / 2, la.ket(3, 0))
    with pytest.raises(ValueError):
        la.pure_fidelity(np.array([[0, 1j], [0, 0]]), np.array([1, 1]) / np.sqrt(2))


def test_eigvals():
    np.testing.assert_allclose(la.eigvals_hermitian(np.eye(3)), [1, 1, 1])
    np.testing.assert_allclose(la.eigvals_hermitian(np.diag([2.0, -1.0])), [-1, 2])
    with pytest.raises(ValueError):
        la.eigvals_hermitian(np.array([[0, 1], [0, 0]]))


def test_eigvals_sum_to_trace(rng):
    m = la.random_hermitian(7, rng)
    assert la.eigvals_hermitian(m).sum() == pytest.approx(np.trace(m).real, abs=1e-10)


def test_norms():
    x = np.array([[0, 1], [1, 0]])
    frob, mx = la.operator_norms(x)
    assert frob == pytest.approx(np.sqrt(sum(abs(v) ** 2 for v in x.ravel())))
    assert frob == pytest.approx(np.sqrt(2))
    assert mx == 1


def test_random_density_is_density(rng):
    assert la.is_density(la.random_density(4, rng))
    assert not la.is_density(np.diag([1.5, -0.5]))


def test_trace_distance():
    assert la.trace_distance(la.projector(la.ket(2, 0)), la.projector(la.ket(2, 1))) == pytest.approx(1)
