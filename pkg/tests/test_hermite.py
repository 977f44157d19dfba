import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from oracles import FROZEN_PSI, hermite_oracle
from pauli_pairs.hermite import (HermiteFunction, basis_matrix, decay_margins, derivative_matrix,
                                 fourier, gaussian_decay_margin, position_matrix, sample_on_nodes)
from pauli_pairs.nodes import NodeSet

ROOT4_2 = 2 ** 0.25

finite = st.floats(-3, 3, allow_nan=False)
coeff_vectors = st.integers(1, 24).flatmap(
    lambda n: st.tuples(arrays(float, n, elements=finite), arrays(float, n, elements=finite))
).map(lambda ri: ri[0] + 1j * ri[1])


@pytest.fixture(scope="module")
def oracle():
    return hermite_oracle(32)


def test_psi0_at_zero():
    assert HermiteFunction([1]).eval(0.0) == pytest.approx(1.18920712, abs=1e-8)
    assert HermiteFunction([1]).eval(0.0) == ROOT4_2


def test_psi1_is_odd_at_zero():
    assert HermiteFunction([0, 1]).eval(0.0) == 0


@pytest.mark.parametrize("n,x", sorted(FROZEN_PSI))
def test_eval_matches_frozen_oracle(n, x):
    expected = float(mp.mpf(FROZEN_PSI[(n, x)]))
    got = HermiteFunction.basis(n).eval(x)
    assert abs(got - expected) <= 1e-13 * max(1.0, abs(expected))


def test_eval_matches_gram_schmidt_oracle(oracle):
    x = np.linspace(-6, 6, 97)
    B = basis_matrix(33, x)
    worst = 0.0
    for n in range(33):
        ref = np.array([float(oracle(n, t)) for t in x])
        big = np.abs(ref) > 1e-5
        assert np.all(np.abs(B[~big, n] - ref[~big]) <= 1e-14)
        worst = max(worst, float(np.max(np.abs(B[big, n] / ref[big] - 1))))
    assert worst <= 1e-9


def test_fourier_examples():
    assert np.array_equal(fourier(HermiteFunction([1])).coeffs, [1])
    assert np.array_equal(fourier(HermiteFunction([0, 0, 1])).coeffs, [0, 0, -1])


@given(coeff_vectors)
def test_fourier_has_period_four(c):
    h = HermiteFunction(c)
    h4 = h.fourier().fourier().fourier().fourier()
    assert np.array_equal(h4.coeffs, h.coeffs)


@given(coeff_vectors)
def test_parseval_is_exact(c):
    h = HermiteFunction(c)
    assert h.fourier().l2_norm() == h.l2_norm()


def test_norms_examples():
    assert HermiteFunction([1]).norms()["l2"] == 1
    assert HermiteFunction(np.array([3, 4]) / 5).norms()["l2"] == pytest.approx(1, abs=1e-15)
    # int |psi_0'|^2 = pi, checked against quadrature of |2 pi x 2^{1/4} e^{-pi x^2}|^2
    x = np.linspace(-10, 10, 20001)
    grad = np.trapezoid(np.abs(2 * np.pi * x * ROOT4_2 * np.exp(-np.pi * x ** 2)) ** 2, x)
    assert grad == pytest.approx(np.pi, rel=1e-12)
    assert HermiteFunction([1]).norms()["h1"] ** 2 == pytest.approx(1 + np.pi, rel=1e-14)


@given(coeff_vectors)
def test_h1_norm_from_ladder(c):
    h = HermiteFunction(c)
    d = derivative_matrix(c.size) @ c
    assert h.norms()["h1"] ** 2 == pytest.approx(np.sum(np.abs(c) ** 2) + np.sum(np.abs(d) ** 2), rel=1e-12)


def test_ladder_actions_match_pointwise():
    rng = np.random.default_rng(1)
    c = rng.normal(size=16) + 1j * rng.normal(size=16)
    h = HermiteFunction(c)
    x = np.linspace(-4, 4, 161)
    assert np.allclose(h.times_x().eval(x), x * h.eval(x), atol=1e-12)
    step = 1e-4
    fd = (h.eval(x + step) - h.eval(x - step)) / (2 * step)
    assert np.allclose(h.derivative().eval(x), fd, atol=1e-6)
    assert position_matrix(4).shape == (5, 4)


def test_orthonormality_on_quadrature_grid():
    x = np.arange(-12, 12 + 1 / 128, 1 / 64)
    B = basis_matrix(64, x)
    G = (B.T @ B) / 64
    assert np.max(np.abs(G - np.eye(64))) <= 1e-8


def test_project_round_trip():
    h = HermiteFunction([0.5, 0, -0.25j, 0.1])
    p = HermiteFunction.project(h.eval, 8)
    assert np.allclose(p.coeffs[:4], h.coeffs, atol=1e-12)
    assert np.allclose(p.coeffs[4:], 0, atol=1e-12)


def test_sample_on_nodes_examples():
    ns0 = NodeSet([0.0])
    assert sample_on_nodes(HermiteFunction([1]), ns0, "space")[0] == ROOT4_2
    v = sample_on_nodes(HermiteFunction([0, 1]), NodeSet([-1.0, 0.0, 1.0]), "space")
    assert v[1] == 0 and v[0] == -v[2] and v[2] != 0


@given(coeff_vectors)
def test_frequency_samples_are_space_samples_of_transform(c):
    h = HermiteFunction(c)
    ns = NodeSet(np.linspace(-3, 3, 13))
    assert np.array_equal(sample_on_nodes(h, ns, "frequency"), sample_on_nodes(h.fourier(), ns, "space"))


def test_sample_on_nodes_rejects_bad_side():
    with pytest.raises(ValueError):
        sample_on_nodes(HermiteFunction([1]), NodeSet([0.0]), "time")


def test_decay_margin_examples():
    psi0 = HermiteFunction([1])
    assert gaussian_decay_margin(psi0, np.pi, 6) == pytest.approx(ROOT4_2, rel=1e-13)
    # alpha above the decay rate: attained at the window edge
    assert gaussian_decay_margin(psi0, 2 * np.pi, 6) == pytest.approx(ROOT4_2 * math.exp(36 * np.pi), rel=1e-12)
    psi1 = HermiteFunction([0, 1])
    assert gaussian_decay_margin(psi1, np.pi, 6) == pytest.approx(ROOT4_2 * math.sqrt(4 * np.pi) * 6, rel=1e-12)
    with pytest.raises(ValueError):
        gaussian_decay_margin(psi0, 0.0, 6)
    rows = decay_margins(psi0, [np.pi], 6)
    assert rows[0]["space"] == pytest.approx(rows[0]["frequency"], rel=1e-15)


def test_decay_margin_is_window_lower_bound():
    h = HermiteFunction([1, 0.3, 0.2])
    assert gaussian_decay_margin(h, 1.0, 3) <= gaussian_decay_margin(h, 1.0, 5)


def test_invalid_coefficients_rejected():
    with pytest.raises(ValueError):
        HermiteFunction([])
    with pytest.raises(ValueError):
        HermiteFunction([1, np.nan])
    with pytest.raises(ValueError):
        basis_matrix(0, [0.0])
