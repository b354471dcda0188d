import math

import numpy as np
import pytest

from nostretch import linalg as la
from nostretch.channel import build_channel, stretch_fidelity
from nostretch.estimation import (
    IMPOSSIBLE,
    CovariantPovm,
    coherent_states,
    conditional_densities,
    evolved_covariant_form,
    evolved_povm_density,
    haar_grid,
    likelihood,
    mutual_information_check,
    no_stretching_witness,
    povm_density,
    povm_likelihood,
    witness_is_impossible,
)
from nostretch.su2 import GroupElement, compose, haar_angles, haar_sample, inverse, wigner_D


def test_povm_spin_zero_is_scalar_one(rng):
    for _ in range(3):
        np.testing.assert_allclose(povm_density(0, haar_sample(rng)), [[1.0]])


@pytest.mark.parametrize("two_j", [1, 2, 5, 10])
def test_povm_trace_and_positivity(two_j, rng):
    p = CovariantPovm(two_j).density(haar_sample(rng))
    assert np.trace(p).real == pytest.approx(two_j + 1, abs=1e-12)
    assert la.eigvals_hermitian(p)[0] >= -1e-12


@pytest.mark.parametrize("two_j", [1, 3])
def test_povm_covariance(two_j, rng):
    g, h = haar_sample(rng), haar_sample(rng)
    d = wigner_D(two_j, g)
    lhs = povm_density(two_j, compose(g, h))
    assert np.abs(lhs - d @ povm_density(two_j, h) @ d.conj().T).max() <= 1e-12


def test_likelihood_values():
    assert likelihood(0) == 1
    assert likelihood(1) == pytest.approx(2, abs=1e-15)
    assert likelihood(20) == pytest.approx(21, abs=1e-12)


def test_witness_reference_values():
    assert no_stretching_witness(1, 2, math.pi / 2) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert witness_is_impossible(no_stretching_witness(1, 2, math.pi / 2))
    assert no_stretching_witness(2, 1, math.pi / 2) == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert not witness_is_impossible(no_stretching_witness(2, 1, math.pi / 2))


@pytest.mark.parametrize("pair", [(0, 0), (1, 2), (4, 1), (3, 3)])
def test_witness_trivial_rotation(pair):
    assert no_stretching_witness(*pair, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_witness_antipodal_sentinel():
    assert no_stretching_witness(1, 2, math.pi) is IMPOSSIBLE
    assert no_stretching_witness(2, 1, math.pi) == 0.0
    with pytest.raises(ValueError):
        no_stretching_witness(1, 2, 4.0)


@pytest.mark.parametrize("two_j,two_l", [(1, 2), (2, 1), (3, 8), (6, 2), (2, 2)])
def test_witness_branch_matches_spin_order(two_j, two_l):
    for beta in np.linspace(0.05, math.pi - 0.05, 9):
        w = no_stretching_witness(two_j, two_l, beta)
        assert w == pytest.approx(math.cos(beta / 2) ** (two_j - two_l), rel=1e-12)
        assert witness_is_impossible(w) == (two_l > two_j)


@pytest.mark.parametrize("pair", [(1, 2), (2, 4), (0, 3), (3, 5)])
def test_evolved_povm_at_identity(pair):
    two_j, two_l = pair
    e = GroupElement.identity()
    expected = (two_j + 1) * la.projector(np.eye(two_j + 1)[0])
    np.testing.assert_allclose(evolved_povm_density(two_j, two_l, e), expected, atol=1e-12)


@pytest.mark.parametrize("pair", [(1, 2), (2, 1), (3, 3), (2, 5)])
def test_evolved_povm_covariant_form(pair, rng):
    ch = build_channel(*pair)
    for _ in range(5):
        g = haar_sample(rng)
        assert np.abs(evolved_povm_density(*pair, g, ch) - evolved_covariant_form(*pair, g, ch)).max() <= 1e-10


@pytest.mark.parametrize("pair", [(1, 2), (2, 1), (3, 7), (4, 4), (6, 3)])
def test_evolved_likelihood_chain(pair):
    two_j, two_l = pair
    lik = povm_likelihood(evolved_povm_density(two_j, two_l, GroupElement.identity()), two_j)
    assert lik == pytest.approx((two_l + 1) * stretch_fidelity(two_j, two_l), abs=1e-12)
    assert lik <= two_j + 1 + 1e-12


def test_evolved_povm_identity_channel(rng):
    g = haar_sample(rng)
    np.testing.assert_allclose(evolved_povm_density(3, 3, g), povm_density(3, g), atol=1e-10)


@pytest.mark.parametrize("two_j", [1, 2, 4])
def test_densities_at_truth(two_j, rng):
    h = haar_sample(rng)
    p, q = conditional_densities(two_j, 2 * two_j, h, h)
    assert p == pytest.approx(two_j + 1, abs=1e-10)
    assert q == pytest.approx(two_j + 1, abs=1e-10)


def test_q_vanishes_on_antipode():
    _, q = conditional_densities(1, 2, GroupElement(0, math.pi, 0), GroupElement.identity())
    assert q == pytest.approx(0, abs=1e-15)


@pytest.mark.parametrize("pair", [(1, 2), (2, 4), (3, 6), (1, 5)])
def test_p_equals_q_when_stretching(pair, rng):
    ch = build_channel(*pair)
    worst = max(abs(np.subtract(*conditional_densities(*pair, haar_sample(rng), haar_sample(rng), ch)))
                for _ in range(100))
    assert worst <= 1e-9


def test_p_differs_from_q_when_shrinking(rng):
    ch = build_channel(4, 1)
    gaps = [abs(np.subtract(*conditional_densities(4, 1, haar_sample(rng), haar_sample(rng), ch)))
            for _ in range(20)]
    assert max(gaps) > 1e-3


@pytest.mark.parametrize("two_j", [1, 2, 5])
def test_q_depends_only_on_relative_beta(two_j, rng):
    for _ in range(20):
        g, h = haar_sample(rng), haar_sample(rng)
        beta = compose(inverse(h), g).beta
        _, q = conditional_densities(two_j, two_j, g, h)
        assert q == pytest.approx((two_j + 1) * math.cos(beta / 2) ** (2 * two_j), abs=1e-10)


def test_coherent_states_match_wigner_columns(rng):
    a = haar_angles(rng, 6)
    for two_j in (1, 2, 5):
        rows = coherent_states(two_j, a)
        for i in range(6):
            assert np.abs(rows[i] - wigner_D(two_j, GroupElement(*a[i]))[:, 0]).max() <= 1e-13


def test_haar_grid_weights():
    pts, w = haar_grid(8)
    assert pts.shape == (512, 3) and w.sum() == pytest.approx(1.0)
    # integrates the coherent-state completeness diagonal exactly
    assert w @ (2 * np.cos(pts[:, 1] / 2) ** 2) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        haar_grid(4)


def test_povm_completeness_monte_carlo():
    n = 100_000
    a = haar_angles(np.random.default_rng(5), n)
    for two_j in (1, 2, 10):
        psi = coherent_states(two_j, a)
        avg = (two_j + 1) * (psi.T @ psi.conj()) / n
        assert np.abs(avg - np.eye(two_j + 1)).max() <= 5 / math.sqrt(n)


def test_mutual_information_identity_channel_exact():
    mi_in, mi_out = mutual_information_check(2, 2, 12, 2000, np.random.default_rng(1))
    assert mi_in == mi_out


def test_mutual_information_spin_zero():
    mi_in, mi_out = mutual_information_check(0, 0, 8, 500, np.random.default_rng(1))
    assert mi_in == pytest.approx(0, abs=1e-12) and mi_out == pytest.approx(0, abs=1e-12)


def test_mutual_information_spin_half_analytic():
    # q(g|h) = 1 + cos(beta), so I = int_{-1}^{1} (1+u)/2 log(1+u) du = ln 2 - 1/2
    mi_in, mi_out = mutual_information_check(1, 2, 32, 20_000, np.random.default_rng(2))
    assert mi_in == pytest.approx(math.log(2) - 0.5, abs=5e-3)
    assert abs(mi_in - mi_out) <= 0.01


def test_mutual_information_grid_validation():
    with pytest.raises(ValueError):
        mutual_information_check(1, 2, 4, 10)


def test_povm_completeness_within_empirical_standard_errors():
    # entry variances grow with j (up to ~2.2^2 at j=5), so also check z-scores
    n = 100_000
    a = haar_angles(np.random.default_rng(0xC0FFEE), n)
    for two_j in (1, 2, 10):
        psi = coherent_states(two_j, a)
        samples = (two_j + 1) * np.einsum("ni,nj->nij", psi, psi.conj())
        dev = np.abs(samples.mean(axis=0) - np.eye(two_j + 1))
        stderr = np.sqrt((np.abs(samples - np.eye(two_j + 1)) ** 2).mean(axis=0) / n)
        assert (dev <= 5 * stderr + 1e-15).all()
