import cmath
import math

import numpy as np
import pytest
import sympy as sp

from hartman.errors import RangeExceeded
from hartman.numerics import residual_norm
from hartman.phasetime import detect_saturation, length_series, saturated_phase_time
from hartman.ring import (
    Leads,
    RingSpec,
    flux_phase,
    ring_one_lead_system,
    ring_phase_time,
    ring_reflection_closed_form,
    solve_ring,
    solve_ring_one_lead,
    solve_ring_two_lead,
    tau_rs_saturated,
    tau_ts_saturated,
)
from hartman.scattering1d import BarrierSpec, Mode


@pytest.fixture(scope="module")
def symbolic_reflection():
    """Oracle: solve the single-barrier ring matching conditions symbolically.

    psi(x) = a exp(-kappa x) + b exp(kappa x) on [0, L], closed on itself with
    the flux phase exp(i alpha) picked up once around the loop.
    """
    k, kappa, L, alpha = sp.symbols("k kappa L alpha", positive=True)
    r, a, b = sp.symbols("r a b")
    psi = lambda x: a * sp.exp(-kappa * x) + b * sp.exp(kappa * x)
    dpsi = lambda x: -kappa * a * sp.exp(-kappa * x) + kappa * b * sp.exp(kappa * x)
    u = sp.exp(sp.I * alpha)
    eqs = [1 + r - psi(0), psi(0) - u * psi(L), sp.I * k * (1 - r) - dpsi(0) + u * dpsi(L)]
    sol = sp.solve(eqs, [r, a, b], dict=True)[0]
    return sp.lambdify((k, kappa, L, alpha), sol[r], "mpmath")


@pytest.mark.parametrize("k, kappa, L, alpha", [
    (1.0, 2.0, 6.0, 0.0), (1.0, 2.0, 1.0, 1.0), (0.7, 1.3, 3.0, 2.5), (1.5, 0.4, 2.0, 4.0),
])
def test_closed_form_matches_symbolic(symbolic_reflection, k, kappa, L, alpha):
    expected = complex(symbolic_reflection(k, kappa, L, alpha))
    assert abs(ring_reflection_closed_form(k, kappa, L, alpha) - expected) <= 1e-12


def test_closed_form_modulus():
    for args in ((1.0, 2.0, 6.0, 0.3), (0.2, 3.0, 1.0, 2.0), (2.0, 0.5, 40.0, 1.0)):
        assert abs(ring_reflection_closed_form(*args)) == pytest.approx(1, abs=1e-15)
        assert abs(ring_reflection_closed_form(*args, opaque=True)) == pytest.approx(1, abs=1e-15)


def test_closed_form_phase_value():
    r = ring_reflection_closed_form(1.0, 2.0, 6.0, 0.0)
    assert cmath.phase(r) == pytest.approx(-2.651630, abs=1e-6)
    assert cmath.phase(ring_reflection_closed_form(1.0, 2.0, 6.0, 0.0, opaque=True)) == pytest.approx(
        -2.651630, abs=1e-6)


def test_growth_with_wavenumber_exponent_disagrees_with_solver():
    # the large-L expression written with exp(k L) instead of exp(kappa L)
    k, kappa, L = 1.0, 2.0, 6.0
    e = math.exp(k * L)
    r_kl = (-kappa * (2 - e) + 0.5j * k * e) / (kappa * (2 - e) + 0.5j * k * e)
    assert cmath.phase(r_kl) == pytest.approx(-2.6493, abs=1e-4)
    r = solve_ring_one_lead(RingSpec(BarrierSpec(5.0, L)), 1.0).r
    assert abs(r - r_kl) > 1e-3
    assert abs(r - ring_reflection_closed_form(k, kappa, L, 0.0)) <= 1e-12


def test_quarter_flux_opaque_form_independent_of_length():
    k, kappa = 1.0, 2.0
    expected = (kappa + 0.5j * k) / (-kappa + 0.5j * k)
    for L in (0.5, 3.0, 10.0):
        assert ring_reflection_closed_form(k, kappa, L, math.pi / 2, opaque=True) == pytest.approx(expected, abs=1e-14)
    # the exact form approaches it exponentially fast
    for L in (6.0, 10.0):
        assert abs(ring_reflection_closed_form(k, kappa, L, math.pi / 2) - expected) <= 4 * math.exp(-2 * kappa * L)


def test_closed_form_range():
    with pytest.raises(RangeExceeded):
        ring_reflection_closed_form(1.0, 2.0, 301.0, 0.0)


@pytest.mark.parametrize("V, L, phi", [(5.0, 6.0, 0.0), (5.0, 2.0, 0.3), (3.0, 9.0, 0.75), (3.0, 1.0, 0.5)])
def test_solver_matches_closed_form(V, L, phi):
    r = solve_ring_one_lead(RingSpec(BarrierSpec(V, L), flux=phi), 1.0).r
    expected = ring_reflection_closed_form(1.0, math.sqrt(V - 1.0), L, flux_phase(phi))
    assert abs(r - expected) <= 1e-10


def test_one_lead_unitary(rng):
    for _ in range(200):
        E = rng.uniform(0.2, 3.0)
        b1 = BarrierSpec(rng.uniform(0, 10) + 2e-3 * (rng.random() < 0.5), rng.uniform(0.01, 10))
        b2 = BarrierSpec(rng.uniform(0, 10), rng.uniform(0, 10)) if rng.random() < 0.5 else None
        w = rng.uniform(0, 10) if rng.random() < 0.5 else 0.0
        spec = RingSpec(b1, b2, w, rng.uniform(-2, 2))
        if any(abs(b.v_re - E) < 1e-6 for b in (b1, b2) if b is not None):
            continue
        assert abs(abs(solve_ring_one_lead(spec, E).r) - 1) <= 1e-10


def test_absorptive_ring_loses_flux():
    assert abs(solve_ring_one_lead(RingSpec(BarrierSpec(2.0, 3.0, v_im=5.0)), 1.0).r) < 1


def test_flux_period():
    for spec in (RingSpec(BarrierSpec(5.0, 6.0)), RingSpec(BarrierSpec(2.0, 5.0), BarrierSpec(2.0, 5.0), 1.3)):
        for phi in (0.0, 0.125, 0.5, 0.8125):
            a = solve_ring_one_lead(RingSpec(spec.barrier1, spec.barrier2, spec.well_length, phi), 1.0)
            b = solve_ring_one_lead(RingSpec(spec.barrier1, spec.barrier2, spec.well_length, phi + 1), 1.0)
            assert abs(a.r - b.r) <= 1e-12


def test_flux_parity():
    for phi in (0.1, 0.25, 0.4):
        spec = lambda f: RingSpec(BarrierSpec(5.0, 6.0), flux=f)
        assert ring_phase_time(spec(phi), 1.0) == pytest.approx(ring_phase_time(spec(-phi), 1.0), abs=1e-9)


@pytest.mark.parametrize("spec", [
    RingSpec(BarrierSpec(5.0, 6.0), flux=0.3),
    RingSpec(BarrierSpec(2.0, 5.0), BarrierSpec(2.0, 5.0), 2.2, flux=0.7),
    RingSpec(BarrierSpec(3.0, 1.0), BarrierSpec(1.0, 2.0), 0.5, flux=0.45),
])
def test_gauge_independence(spec):
    a = solve_ring_one_lead(spec, 1.2, gauge="proportional")
    b = solve_ring_one_lead(spec, 1.2, gauge="first")
    assert abs(a.r - b.r) <= 1e-12


def test_unknown_gauge():
    with pytest.raises(ValueError):
        ring_one_lead_system(RingSpec(BarrierSpec(5.0, 6.0)), 1.0, gauge="last")


def test_system_size():
    A, _ = ring_one_lead_system(RingSpec(BarrierSpec(2.0, 5.0), BarrierSpec(2.0, 5.0), 1.0), 1.0)
    assert A.shape == (7, 7)


def test_spec_validation():
    with pytest.raises(ValueError):
        RingSpec(BarrierSpec(5.0, 0.0))
    with pytest.raises(ValueError):
        RingSpec(BarrierSpec(5.0, 1.0), well_length=-1.0)
    with pytest.raises(ValueError):
        RingSpec(BarrierSpec(5.0, 1.0), leads=Leads.TWO)
    with pytest.raises(ValueError):
        RingSpec(BarrierSpec(5.0, 1.0), BarrierSpec(5.0, 1.0), 1.0, leads=Leads.TWO)
    assert RingSpec(BarrierSpec(5.0, 1.0), BarrierSpec(5.0, 2.0), 3.0).circumference == 6.0


def test_saturated_formulas():
    assert tau_rs_saturated(1.0, 2.0) == pytest.approx(0.294118, abs=1e-6)
    assert tau_rs_saturated(1.0, math.sqrt(2)) == pytest.approx(0.471405, abs=1e-6)
    assert tau_ts_saturated(1.0, 2.0) == pytest.approx(0.294118, abs=1e-6)
    assert tau_rs_saturated(1.0, 1e6) < 1e-5
    assert tau_ts_saturated(1.0, 1e-6) > 1e5


def test_saturated_formulas_reduce_to_common_form():
    k, kappa = np.meshgrid(np.linspace(0.1, 3, 50), np.linspace(0.1, 5, 50))
    common = 2 * (kappa**2 + k**2) / (k * kappa * (4 * kappa**2 + k**2))
    np.testing.assert_allclose(tau_rs_saturated(k, kappa), common, rtol=1e-13)
    np.testing.assert_allclose(tau_ts_saturated(k, kappa), common, rtol=1e-13)


def test_one_lead_plateau():
    s = detect_saturation(length_series(lambda L: RingSpec(BarrierSpec(5.0, L)), np.arange(1.0, 13.0),
                                        1.0, Mode.REFLECTION))
    assert s.saturated
    assert s.saturated_value == pytest.approx(0.2941, abs=1e-3)
    assert s.saturated_value == pytest.approx(tau_rs_saturated(1.0, 2.0), abs=1e-4)


def test_space_collapse():
    vals = []
    for w in (0.0, 5.0, 10.0):
        s = saturated_phase_time(lambda lb, w=w: RingSpec(BarrierSpec(2.0, lb), BarrierSpec(2.0, 5.0), w),
                                 1.0, Mode.REFLECTION)
        assert s.saturated
        vals.append(s.saturated_value)
    assert max(vals) - min(vals) <= 1e-3


def test_complex_ring_saturation_shifts():
    sat = {}
    for vim in (10.0, 5.0):
        s = saturated_phase_time(lambda L, vim=vim: RingSpec(BarrierSpec(2.0, L, v_im=vim)), 1.0, Mode.REFLECTION)
        assert s.saturated
        sat[vim] = s.saturated_value
    assert abs(sat[10.0] - sat[5.0]) > 1e-3


def test_well_resonances_present():
    h = 1.5e-9
    ws = np.arange(0.5, 3.0, 0.01)
    taus = np.array([ring_phase_time(RingSpec(BarrierSpec(2.0, 5.0), BarrierSpec(2.0, 5.0), w), 1.5, h=h)
                     for w in ws])
    # sharp peaks far above the off-resonance plateau
    assert taus.max() > 50 * np.median(np.abs(taus))


def two_lead(lb1, lb2, phi=0.0, V=5.0):
    return RingSpec(BarrierSpec(V, lb1), BarrierSpec(V, lb2), flux=phi, leads=Leads.TWO)


def test_two_lead_unitary(rng):
    for _ in range(200):
        E = rng.uniform(0.2, 3.0)
        vs = rng.uniform(0, 10, 2)
        if np.any(np.abs(vs - E) < 1e-6):
            continue
        spec = RingSpec(BarrierSpec(vs[0], rng.uniform(0.01, 10)), BarrierSpec(vs[1], rng.uniform(0.01, 10)),
                        flux=rng.uniform(-1, 1), leads=Leads.TWO)
        sol = solve_ring_two_lead(spec, E)
        assert abs(abs(sol.r) ** 2 + abs(sol.t) ** 2 - 1) <= 1e-10


def test_two_lead_saturated_transmission():
    tau = ring_phase_time(two_lead(15.0, 15.0), 1.0, Mode.TRANSMISSION)
    assert tau == pytest.approx(tau_ts_saturated(1.0, 2.0), abs=1e-4)
    # independent of the flux as well
    assert ring_phase_time(two_lead(15.0, 15.0, 0.3), 1.0, Mode.TRANSMISSION) == pytest.approx(tau, abs=1e-4)


def test_two_lead_arm_ratio():
    sym = ring_phase_time(two_lead(15.0, 15.0), 1.0, Mode.TRANSMISSION)
    asym = ring_phase_time(two_lead(20.0, 10.0), 1.0, Mode.TRANSMISSION)
    assert asym == pytest.approx(sym, abs=1e-4)


def test_two_lead_arm_swap():
    a = RingSpec(BarrierSpec(5.0, 2.0), BarrierSpec(3.0, 1.0), leads=Leads.TWO)
    b = RingSpec(BarrierSpec(3.0, 1.0), BarrierSpec(5.0, 2.0), leads=Leads.TWO)
    assert abs(solve_ring_two_lead(a, 1.0).t - solve_ring_two_lead(b, 1.0).t) <= 1e-15
    assert abs(solve_ring_two_lead(a, 1.0).r - solve_ring_two_lead(b, 1.0).r) <= 1e-15


def test_two_lead_flux_override():
    spec = two_lead(1.0, 2.0, 0.2)
    assert solve_ring_two_lead(spec, 1.0, flux=0.2).t == solve_ring_two_lead(spec, 1.0).t
    assert abs(solve_ring_two_lead(spec, 1.0, flux=1.2).t - solve_ring_two_lead(spec, 1.0).t) <= 1e-12


def test_two_lead_flux_reversal_symmetry():
    # reciprocity: |t(phi)| = |t(-phi)|
    spec = two_lead(1.0, 2.0, 0.2)
    assert abs(solve_ring_two_lead(spec, 1.0).t) == pytest.approx(abs(solve_ring_two_lead(spec, 1.0, flux=-0.2).t),
                                                                   abs=1e-14)


def test_mode_checks():
    one = RingSpec(BarrierSpec(5.0, 2.0))
    with pytest.raises(ValueError):
        ring_phase_time(one, 1.0, Mode.TRANSMISSION)
    with pytest.raises(ValueError):
        solve_ring_two_lead(one, 1.0)
    with pytest.raises(ValueError):
        solve_ring_one_lead(two_lead(1.0, 1.0), 1.0)
    assert solve_ring(two_lead(1.0, 1.0), 1.0).t is not None


def test_residuals(captured_systems):
    solve_ring_one_lead(RingSpec(BarrierSpec(2.0, 30.0), BarrierSpec(2.0, 30.0), 4.0, 0.3), 1.0)
    solve_ring_two_lead(two_lead(40.0, 20.0, 0.1), 1.0)
    solve_ring_one_lead(RingSpec(BarrierSpec(2.0, 40.0, v_im=10.0)), 1.0)
    assert len(captured_systems) == 3
    for A, b, x in captured_systems:
        assert residual_norm(A, x, b) <= 1e-10 * (1 + np.max(np.abs(b)))
