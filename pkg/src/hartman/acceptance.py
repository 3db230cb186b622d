"""Reproduction checks for the headline results.

Each ``criterion_*`` function computes the measured quantity, compares it
with its target at a fixed tolerance and returns a :class:`CriterionResult`.
``run_all`` evaluates every check; the ``verify`` CLI subcommand and the
acceptance tests both go through it.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .phasetime import detect_saturation, length_series, saturated_phase_time
from .ring import (
    Leads,
    RingSpec,
    flux_phase,
    ring_phase_time,
    ring_reflection_closed_form,
    solve_ring_one_lead,
    solve_ring_two_lead,
    tau_rs_saturated,
    tau_ts_saturated,
)
from .scattering1d import BarrierSpec, Mode, step_phase_time
from .splitter import ArmSpec, Buttiker, Griffith, SplitterSpec, solve_splitter, y_splitter

SATURATION_TOL = 1e-6


@dataclass
class CriterionResult:
    number: int
    name: str
    measured: object
    target: object
    tolerance: object
    passed: bool
    detail: str = ""

    def line(self):
        verdict = "PASS" if self.passed else "FAIL"
        text = (f"[{verdict}] {self.number:2d} {self.name}: measured={self.measured} "
                f"target={self.target} tol={self.tolerance}")
        return text + (f" ({self.detail})" if self.detail else "")


def _plateau(make_system, E, mode, arm=1, start=1.0):
    s = saturated_phase_time(make_system, E, mode, arm, start=start)
    if not s.saturated:
        raise RuntimeError("no plateau found")
    return s.saturated_value


def criterion_ring_golden():
    tau = _plateau(lambda L: RingSpec(BarrierSpec(5.0, L)), 1.0, Mode.REFLECTION)
    closed = tau_rs_saturated(1.0, 2.0)
    ok = abs(tau - 0.2941) <= 1e-3 and abs(closed - 0.294118) <= 1e-6
    return CriterionResult(1, "one-lead ring plateau V=5 E=1",
                           f"{tau:.7f} / closed {closed:.7f}", "0.2941 / 0.294118",
                           "1e-3 / 1e-6", ok)


def criterion_splitter_ultra_hartman():
    tau = _plateau(lambda lb: y_splitter(15.0, lb, 2.5, 5.0, 0.5, 2.5), 1.0, Mode.TRANSMISSION, 1)
    return CriterionResult(2, "splitter negative saturation tau_1s", f"{tau:.5f}", -4.514, 0.01,
                           abs(tau + 4.514) <= 0.01)


def criterion_closed_form_identity():
    k, kappa = np.meshgrid(np.linspace(0.1, 3.0, 50), np.linspace(0.1, 5.0, 50))
    rs = tau_rs_saturated(k, kappa)
    ts = tau_ts_saturated(k, kappa)
    err = float(np.max(np.abs(rs - ts)))
    return CriterionResult(3, "tau_rs == tau_ts on 50x50 grid", f"{err:.2e}", 0.0, 1e-12, err <= 1e-12)


def junction_equivalence_error(epsilon=4 / 9):
    """Largest amplitude difference between Griffith and Buttiker(epsilon)."""
    worst = 0.0
    for v1 in (2.0, 3.5, 5.0, 6.5, 8.0):
        for lb1 in (0.5, 1.0, 2.0, 4.0, 8.0):
            for E in (0.5, 0.8, 1.0, 1.3):
                kw = dict(v1=v1, lb1=lb1, w1=3.0, v2=4.0, lb2=1.0, w2=2.0)
                g = solve_splitter(y_splitter(**kw, junction=Griffith()), E)
                b = solve_splitter(y_splitter(**kw, junction=Buttiker(epsilon)), E)
                diffs = [abs(g.r - b.r)] + [abs(x - y) for x, y in zip(g.t, b.t)]
                worst = max(worst, max(diffs))
    return worst


def criterion_junction_equivalence(epsilon=4 / 9):
    err = junction_equivalence_error(epsilon)
    return CriterionResult(4, f"Griffith == Buttiker(eps={epsilon:.6g}) on 100 points",
                           f"{err:.2e}", 0.0, 1e-9, err <= 1e-9)


def _random_barrier(rng, E, offset=True):
    while True:
        v = rng.uniform(0.0, 10.0)
        if abs(v - E) > 1e-3:
            break
    return BarrierSpec(v, rng.uniform(0.0, 10.0), offset=rng.uniform(0.0, 5.0) if offset else 0.0)


def unitarity_errors(n=1000, seed=20240601):
    rng = np.random.default_rng(seed)
    split = ring2 = ring1 = 0.0
    for _ in range(n):
        E = rng.uniform(0.2, 3.0)
        junction = Griffith() if rng.random() < 0.5 else Buttiker(rng.uniform(0.05, 0.5))
        bars = [_random_barrier(rng, E) if rng.random() < 0.8 else None for _ in range(2)]
        spec = SplitterSpec((ArmSpec(bars[0]), ArmSpec(bars[1])), junction)
        split = max(split, abs(solve_splitter(spec, E).flux - 1))

        b1, b2 = _random_barrier(rng, E, False), _random_barrier(rng, E, False)
        phi = rng.uniform(-1, 1)
        if b1.length + b2.length > 0:
            sol = solve_ring_two_lead(RingSpec(b1, b2, flux=phi, leads=Leads.TWO), E)
            ring2 = max(ring2, abs(abs(sol.r) ** 2 + abs(sol.t) ** 2 - 1))
        w = rng.uniform(0.0, 10.0) if rng.random() < 0.5 else 0.0
        spec1 = RingSpec(_random_barrier(rng, E, False), b2 if rng.random() < 0.5 else None, w, phi)
        if spec1.circumference > 0:
            ring1 = max(ring1, abs(abs(solve_ring_one_lead(spec1, E).r) - 1))
    return split, ring2, ring1


def criterion_unitarity():
    split, ring2, ring1 = unitarity_errors()
    worst = max(split, ring2, ring1)
    return CriterionResult(5, "flux conservation, 1000 random configs each",
                           f"splitter {split:.1e}, ring2 {ring2:.1e}, ring1 {ring1:.1e}",
                           0.0, 1e-10, worst <= 1e-10)


def closed_form_error():
    worst = 0.0
    for v in (3.0, 5.0):
        kappa = math.sqrt(v - 1.0)
        for L in np.linspace(1.0, 15.0, 15):
            for phi in np.arange(16) / 16:
                r = solve_ring_one_lead(RingSpec(BarrierSpec(v, L), flux=phi), 1.0).r
                worst = max(worst, abs(r - ring_reflection_closed_form(1.0, kappa, L, flux_phase(phi))))
    return worst


def criterion_closed_form():
    err = closed_form_error()
    return CriterionResult(6, "numeric ring reflection == closed form", f"{err:.2e}", 0.0, 1e-10,
                           err <= 1e-10)


def flux_oscillations(lengths=(6.0, 7.0, 9.0), n=64):
    # dyadic samples keep phi + 1 exactly representable
    phis = np.arange(n) / n
    out = {}
    for L in lengths:
        taus = np.array([ring_phase_time(RingSpec(BarrierSpec(5.0, L), flux=p), 1.0) for p in phis])
        shifted = np.array([ring_phase_time(RingSpec(BarrierSpec(5.0, L), flux=p + 1), 1.0) for p in phis])
        out[L] = (float(np.ptp(taus)), float(taus.mean()), float(np.max(np.abs(taus - shifted))))
    return out


def criterion_flux():
    osc = flux_oscillations()
    amps = [osc[L][0] for L in (6.0, 7.0, 9.0)]
    period = max(o[2] for o in osc.values())
    plateau = _plateau(lambda L: RingSpec(BarrierSpec(5.0, L)), 1.0, Mode.REFLECTION)
    mean_err = max(abs(o[1] - plateau) for o in osc.values())
    ok = period <= 1e-12 and amps[0] > amps[1] > amps[2] and mean_err <= 1e-3
    return CriterionResult(7, "flux periodicity and decaying AB oscillations",
                           f"period err {period:.1e}, p2p {amps[0]:.2e} > {amps[1]:.2e} > {amps[2]:.2e}, "
                           f"mean err {mean_err:.1e}",
                           "periodic, decreasing", "1e-12 / 1e-3", ok)


def space_collapse_values(wells=(0.0, 5.0, 10.0)):
    return {
        w: _plateau(lambda lb: RingSpec(BarrierSpec(2.0, lb), BarrierSpec(2.0, 5.0), w), 1.0,
                    Mode.REFLECTION)
        for w in wells
    }


def criterion_space_collapse():
    vals = space_collapse_values()
    spread = max(vals.values()) - min(vals.values())
    return CriterionResult(8, "saturated tau_rs independent of well length",
                           ", ".join(f"w={w:g}: {v:.6f}" for w, v in vals.items()),
                           "equal", 1e-3, spread <= 1e-3, f"spread {spread:.2e}")


def first_resonance(E, step=0.01, w_max=4.0):
    """Position and height of the first tau_r(w) peak for the two-barrier ring.

    The peak is located on a grid of spacing ``step`` and refined with
    bounded Brent (parabolic) maximisation between its grid neighbours.
    """
    h = 1e-9 * E

    def tau(w):
        return ring_phase_time(RingSpec(BarrierSpec(2.0, 5.0), BarrierSpec(2.0, 5.0), w), E, h=h)

    ws = np.arange(1, int(round(w_max / step)) + 1) * step
    taus = np.array([tau(w) for w in ws])
    for j in range(1, len(ws) - 1):
        if taus[j] > taus[j - 1] and taus[j] >= taus[j + 1]:
            res = minimize_scalar(lambda w: -tau(w), bounds=(ws[j - 1], ws[j + 1]),
                                  method="bounded", options={"xatol": 1e-12})
            return float(res.x), float(-res.fun)
    raise RuntimeError(f"no resonance below w={w_max} at E={E}")


def criterion_resonance_ordering(energies=(1.01, 1.2, 1.4, 1.6)):
    peaks = [first_resonance(E) for E in energies]
    pos = [p[0] for p in peaks]
    height = [p[1] for p in peaks]
    ok = all(a > b for a, b in zip(pos, pos[1:])) and all(a > b for a, b in zip(height, height[1:]))
    return CriterionResult(9, "first resonance shifts to lower w, lower peak, as E rises",
                           "; ".join(f"E={E:g}: w*={p:.4f} tau*={t:.4g}" for E, (p, t) in zip(energies, peaks)),
                           "strictly decreasing", "-", ok)


def absorption_series():
    lengths = np.arange(5.0, 51.0, 1.0)
    bar = lambda L: BarrierSpec(2.0, L, v_im=10.0)
    trans = length_series(bar, lengths, 1.0, Mode.TRANSMISSION)
    refl = detect_saturation(length_series(bar, lengths, 1.0, Mode.REFLECTION), SATURATION_TOL)
    return trans, refl, step_phase_time(1.0, 2.0, 10.0)


def criterion_absorption():
    trans, refl, step = absorption_series()
    increasing = all(b > a for a, b in zip(trans.values, trans.values[1:]))
    no_plateau = not detect_saturation(trans, SATURATION_TOL).saturated
    err = abs(refl.saturated_value - step) if refl.saturated else math.inf
    ok = increasing and no_plateau and err <= 1e-6
    return CriterionResult(10, "absorptive barrier: tau_t grows, tau_r saturates to step value",
                           f"tau_t {trans.values[0]:.3f}->{trans.values[-1]:.3f}, tau_r plateau "
                           f"{refl.saturated_value} vs step {step:.8f}",
                           "increasing / step value", 1e-6, ok)


def nonlocal_sweep(v2_values=None):
    """Saturated tau_1 over the V_2 sweep (V_1 = 5, lb_2 = 1, w = 3, E = 1)."""
    if v2_values is None:
        v2_values = np.linspace(2.5, 12.5, 41)
    taus = [
        _plateau(lambda lb, v2=v2: y_splitter(5.0, lb, 3.0, v2, 1.0, 3.0), 1.0, Mode.TRANSMISSION, 1)
        for v2 in v2_values
    ]
    return np.asarray(v2_values), np.asarray(taus)


def criterion_nonlocal():
    v2, taus = nonlocal_sweep()
    spread = float(taus.max() - taus.min())
    at = float(v2[int(np.argmin(taus))])
    nearest = float(v2[int(np.argmin(np.abs(v2 - 5.0)))])
    ok = spread > 10 * SATURATION_TOL and at == nearest
    return CriterionResult(11, "tau_1s(V_2) tunable, minimum at V_2 = V_1",
                           f"spread {spread:.3e}, argmin V_2={at:g}", f"argmin V_2={nearest:g}",
                           "grid step 0.25", ok)


def coupling_values(epsilons=(1 / 9, 1 / 3, 4 / 9)):
    out = []
    for eps in epsilons:
        make = lambda lb, eps=eps: y_splitter(3.0, lb, 3.0, junction=Buttiker(eps))
        out.append((_plateau(make, 1.0, Mode.TRANSMISSION, 1), _plateau(make, 1.0, Mode.TRANSMISSION, 2)))
    return out


def criterion_coupling():
    vals = coupling_values()
    t1 = [v[0] for v in vals]
    t2 = [v[1] for v in vals]
    ok = all(a < b for a, b in zip(t1, t1[1:])) and all(a < b for a, b in zip(t2, t2[1:]))
    return CriterionResult(12, "tau_1s, tau_2s increase with junction coupling",
                           "tau_1s " + ", ".join(f"{x:.4f}" for x in t1) + "; tau_2s " + ", ".join(f"{x:.4f}" for x in t2),
                           "increasing", "-", ok)


CRITERIA = (
    criterion_ring_golden,
    criterion_splitter_ultra_hartman,
    criterion_closed_form_identity,
    criterion_junction_equivalence,
    criterion_unitarity,
    criterion_closed_form,
    criterion_flux,
    criterion_space_collapse,
    criterion_resonance_ordering,
    criterion_absorption,
    criterion_nonlocal,
    criterion_coupling,
)


def run_all(echo=None):
    results = []
    for check in CRITERIA:
        result = check()
        if echo is not None:
            echo(result.line())
        results.append(result)
    return results
