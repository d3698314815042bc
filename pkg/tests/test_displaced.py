"""Displaced-state entropy series, finiteness prediction, and witnesses."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from petz_renyi.displaced import (
    DisplacedThermalSpec,
    covariance_equivalence,
    d_alpha_displaced,
    diagonal_divergence_witness,
    predict_finiteness,
    relative_displacement,
)
from petz_renyi.states import ModeVector
from petz_renyi.thermal import d_alpha_thermal
from petz_renyi.weyl import weyl_diag, weyl_element

# frozen arbitrary-precision double sums (60-digit evaluation, truncation 220)
# for r=(1,), s=(2,), u1=(1,), u2=(0,): trace argument sum
Q_REF = {
    0.3: 0.75837517852375365812,
    0.7: 0.69855723911090313681,
    1.5: 40.855405522999270326,
}

finite_temps = st.floats(0.1, 10)


def spec(temps, disp=None):
    return DisplacedThermalSpec(ModeVector(temps), disp)


def test_spec_validation():
    s = spec([1.0, 2.0])
    assert s.displacement == (0j, 0j)
    assert s.faithful
    assert not spec([1.0, math.inf]).faithful
    with pytest.raises(ValueError):
        DisplacedThermalSpec(ModeVector([1.0]), [1.0, 2.0])


def test_relative_displacement():
    a = spec([1.0, 2.0], [1 + 1j, 0.5])
    b = spec([1.0, 2.0], [1j, 0.5])
    assert relative_displacement(a, b) == (1.0, 0j)
    with pytest.raises(ValueError):
        relative_displacement(a, spec([1.0]))


def test_series_matches_frozen_reference():
    rho = spec([1.0], [1.0])
    sigma = spec([2.0], [0.0])
    for alpha, q in Q_REF.items():
        res = d_alpha_displaced(rho, sigma, alpha)
        assert res.entropy.finite
        assert math.exp(res.series.log_sum) == pytest.approx(q, rel=1e-12)
        assert res.entropy.value == pytest.approx(
            math.log(q) / (alpha - 1.0), rel=1e-12, abs=1e-12
        )


def test_tail_bound_is_honest():
    # the reported relative tail bound covers the actual deficit to the
    # arbitrary-precision value
    rho = spec([1.0], [1.0])
    sigma = spec([2.0], [0.0])
    for alpha, q in Q_REF.items():
        for tol in (1e-4, 1e-8):
            res = d_alpha_displaced(rho, sigma, alpha, tol=tol)
            got = math.exp(res.series.log_sum)
            assert res.series.converged
            assert res.series.tail_bound <= tol
            assert abs(got - q) / q <= res.series.tail_bound + 1e-12


def test_zero_displacement_matches_thermal():
    r, s = [0.8, 1.7], [1.4, 2.5]
    for alpha in (0.3, 0.9, 1.2):
        res = d_alpha_displaced(spec(r), spec(s), alpha)
        ref = d_alpha_thermal(ModeVector(r), ModeVector(s), alpha)
        assert res.entropy.value == pytest.approx(ref.value, rel=1e-10, abs=1e-12)


def test_common_shift_invariance():
    r, s = [1.0, 2.0], [1.5, 2.5]
    u1 = [0.4 + 0.3j, -0.2j]
    u2 = [0.1, 0.5]
    shift = [0.7 - 1.1j, 0.3 + 0.2j]
    for alpha in (0.4, 1.3):
        base = d_alpha_displaced(spec(r, u1), spec(s, u2), alpha)
        moved = d_alpha_displaced(
            spec(r, [a + c for a, c in zip(u1, shift)]),
            spec(s, [b + c for b, c in zip(u2, shift)]),
            alpha,
        )
        assert moved.entropy.value == pytest.approx(
            base.entropy.value, rel=1e-10, abs=1e-10
        )


def test_tensor_additivity_against_single_modes():
    rho = spec([1.0, 0.7], [1.0, 0.5j])
    sigma = spec([2.0, 1.9], [0.0, 0.2])
    for alpha in (0.35, 1.4):
        joint = d_alpha_displaced(rho, sigma, alpha)
        total = 0.0
        for j in range(2):
            total += d_alpha_displaced(
                spec([rho.temps[j]], [rho.displacement[j]]),
                spec([sigma.temps[j]], [sigma.displacement[j]]),
                alpha,
            ).entropy.value
        assert joint.entropy.value == pytest.approx(total, rel=1e-10, abs=1e-10)


def test_against_unfactorized_two_mode_sum():
    # direct four-index double sum at small truncation, no per-mode
    # factorization shortcut
    rho = spec([1.0, 1.3], [0.5, 0.0])
    sigma = spec([2.0, 1.7], [0.0, 0.3j])
    alpha = 0.5
    u = relative_displacement(rho, sigma)
    kmax = 30
    total = 0.0
    lam = lambda k, t: (1 - math.exp(-t)) * math.exp(-k * t)
    for k1 in range(kmax):
        for l1 in range(kmax):
            w1 = abs(weyl_element(l1, k1, u[0])) ** 2
            a1 = lam(k1, rho.temps[0]) ** alpha * lam(l1, sigma.temps[0]) ** (1 - alpha)
            if a1 * w1 == 0.0:
                continue
            for k2 in range(kmax):
                for l2 in range(kmax):
                    w2 = abs(weyl_element(l2, k2, u[1])) ** 2
                    a2 = (
                        lam(k2, rho.temps[1]) ** alpha
                        * lam(l2, sigma.temps[1]) ** (1 - alpha)
                    )
                    total += a1 * w1 * a2 * w2
    res = d_alpha_displaced(rho, sigma, alpha)
    assert math.exp(res.series.log_sum) == pytest.approx(total, rel=1e-6)


def test_log_sum_nondecreasing_in_cap():
    rho = spec([0.4], [1.5])
    sigma = spec([0.5], [0.0])
    prev = -math.inf
    for cap in (400, 2000, 20000, 10**6):
        res = d_alpha_displaced(rho, sigma, 0.6, cap=cap)
        assert res.series.log_sum >= prev - 1e-13
        prev = res.series.log_sum
    assert res.series.converged


def test_vacuum_branches_have_exact_closed_forms():
    # rho vacuum: only the k=0 row of the double series survives
    res = d_alpha_displaced(spec([math.inf], [1.0]), spec([2.0]), 0.5)
    beta = (0.5 - 1.0) * 2.0
    expect = 0.5 * math.log(1 - math.exp(-2.0)) + 1.0 * math.expm1(beta)
    assert res.series.log_sum == pytest.approx(expect, rel=1e-14)
    # sigma vacuum: only the l=0 column survives
    res = d_alpha_displaced(spec([1.0], [1.0]), spec([math.inf]), 0.5)
    expect = 0.5 * math.log(1 - math.exp(-1.0)) - 1.0 + 1.0 * math.exp(-0.5)
    assert res.series.log_sum == pytest.approx(expect, rel=1e-14)
    # both vacuum: overlap of two coherent states
    res = d_alpha_displaced(spec([math.inf], [1.0]), spec([math.inf], [0.5j]), 0.5)
    assert res.series.log_sum == pytest.approx(-abs(1.0 - 0.5j) ** 2, rel=1e-14)


def test_predicted_divergence_skips_series():
    res = d_alpha_displaced(spec([1.0], [1.0]), spec([2.0], [0.0]), 2.5)
    assert not res.entropy.finite
    assert res.entropy.witness.kind == "threshold"
    assert res.series.terms_used == 0


def test_alpha_above_one_requires_faithful():
    with pytest.raises(ValueError):
        d_alpha_displaced(spec([math.inf], [1.0]), spec([2.0]), 1.5)
    with pytest.raises(ValueError):
        predict_finiteness(spec([1.0], [1.0]), spec([math.inf]), 1.5)


def test_diagonal_witness_examples():
    r, s = ModeVector([1.0]), ModeVector([2.0])
    w = diagonal_divergence_witness(r, s, [1.0], 3.0)
    assert w is not None
    assert w.exponent == pytest.approx(3.0 * 1.0 - 2.0 * 2.0)
    assert w.sample_indices
    # sampled diagonal terms are bounded below by 1
    for k in w.sample_indices:
        assert math.exp(k) * weyl_diag(k, 1.0) ** 2 >= 1.0
    assert diagonal_divergence_witness(r, s, [1.0], 1.5) is None


def test_diagonal_witness_zero_displacement_samples():
    w = diagonal_divergence_witness(ModeVector([1.0]), ModeVector([2.0]), [0.0], 3.0)
    assert w is not None
    # every diagonal element is 1 at u=0; indices are arbitrary but present
    assert len(w.sample_indices) == 16


@given(
    r=st.lists(finite_temps, min_size=1, max_size=3),
    s_seed=st.lists(finite_temps, min_size=3, max_size=3),
    u_seed=st.lists(st.floats(-2, 2), min_size=6, max_size=6),
    alpha=st.floats(1.0, 20.0, exclude_min=True),
)
@settings(max_examples=80, deadline=None)
def test_equivalence_triangle(r, s_seed, u_seed, alpha):
    n = len(r)
    s = s_seed[:n]
    u = [complex(u_seed[2 * j], u_seed[2 * j + 1]) for j in range(n)]
    rho = spec(r, u)
    sigma = spec(s)
    finite, _ = predict_finiteness(rho, sigma, alpha)
    by_cov = covariance_equivalence(rho, sigma, alpha)
    no_witness = (
        diagonal_divergence_witness(rho.temps, sigma.temps, u, alpha) is None
    )
    assert finite == by_cov == no_witness


@given(
    r=finite_temps,
    s=finite_temps,
    re=st.floats(-1.5, 1.5),
    im=st.floats(-1.5, 1.5),
    alpha=st.floats(0.1, 0.9),
)
@settings(max_examples=40, deadline=None)
def test_nonnegativity_below_one(r, s, re, im, alpha):
    res = d_alpha_displaced(spec([r], [complex(re, im)]), spec([s]), alpha)
    assert res.entropy.value >= -1e-10


def test_identical_displaced_states_give_zero():
    rho = spec([0.9, 1.8], [0.5 + 0.5j, -1.0])
    for alpha in (0.5, 2.0):
        res = d_alpha_displaced(rho, rho, alpha)
        assert res.entropy.value == pytest.approx(0.0, abs=1e-10)
