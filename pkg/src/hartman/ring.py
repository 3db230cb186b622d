"""Aharonov-Bohm rings with evanescent (barrier) segments.

One-lead ring: a single lead meets the ring at J1. Going clockwise from J1
the ring is a chain of segments: barrier 1 (``lb_1``), an optional free well
(``w``) and an optional barrier 2 (``lb_2``), closing back on J1. Two-lead
ring: leads at J1 and J2, the upper arm is barrier 1 and the lower arm is
barrier 2, both running from J1 to J2.

Inside every segment the field-free solution is written as
``a exp(-kappa x) + b exp(kappa (x - l))``; the flux enters only through
phase factors ``exp(i alpha_s)`` on the far end of each segment, with
``sum(alpha_s) = 2 pi phi / phi_0`` around the loop.
"""

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, RangeExceeded
from .numerics import MAX_GROWTH_EXPONENT, phase_derivative, solve_dense
from .scattering1d import BarrierSpec, Mode, decay_constant, evanescent_edges, wavenumber


class Leads(enum.Enum):
    ONE = "one"
    TWO = "two"


@dataclass(frozen=True)
class RingSpec:
    """Ring geometry; ``flux`` is in units of the flux quantum."""

    barrier1: BarrierSpec
    barrier2: BarrierSpec | None = None
    well_length: float = 0.0
    flux: float = 0.0
    leads: Leads = Leads.ONE

    def __post_init__(self):
        object.__setattr__(self, "leads", Leads(self.leads))
        if not self.well_length >= 0:
            raise ValueError(f"well length must be >= 0, got {self.well_length!r}")
        if not self.circumference > 0:
            raise ValueError("ring circumference must be positive")
        if self.leads is Leads.TWO and (self.barrier2 is None or self.well_length != 0):
            raise ValueError("a two-lead ring needs both barriers and no well")

    @property
    def circumference(self):
        lb2 = 0.0 if self.barrier2 is None else self.barrier2.length
        return self.barrier1.length + lb2 + self.well_length


@dataclass
class RingSolution:
    r: complex
    t: complex | None = None
    interior: dict = field(default_factory=dict)


def flux_phase(flux):
    """Total Aharonov-Bohm phase, reduced to one flux period."""
    return 2 * math.pi * (flux % 1.0)


def _segments(spec, E):
    """``(name, kappa, length)`` for the non-empty segments, clockwise from J1."""
    segs = [("1", decay_constant(E, spec.barrier1.v_re, spec.barrier1.v_im), spec.barrier1.length)]
    if spec.well_length > 0:
        segs.append(("w", decay_constant(E, 0.0), spec.well_length))
    if spec.barrier2 is not None:
        b = spec.barrier2
        segs.append(("2", decay_constant(E, b.v_re, b.v_im), b.length))
    return [s for s in segs if s[2] > 0]


def _apportion(alpha, lengths, gauge):
    if gauge == "proportional":
        total = sum(lengths)
        return [alpha * l / total for l in lengths]
    if gauge == "first":
        return [alpha] + [0.0] * (len(lengths) - 1)
    raise ValueError(f"unknown gauge {gauge!r}")


def ring_one_lead_system(spec, E, gauge="proportional"):
    """Boundary-condition system for ``(r, a_1, b_1, ..., a_m, b_m)``.

    ``gauge`` chooses how the flux phase is split between segments:
    ``"proportional"`` (to segment length) or ``"first"`` (all of it on the
    first segment). Observables do not depend on the choice.
    """
    k = wavenumber(E)
    segs = _segments(spec, E)
    m = len(segs)
    n = 1 + 2 * m
    phases = _apportion(flux_phase(spec.flux), [s[2] for s in segs], gauge)
    edges = [evanescent_edges(kappa, length) for _, kappa, length in segs]
    A = np.zeros((n, n), dtype=np.complex128)
    rhs = np.zeros(n, dtype=np.complex128)

    def cols(i):
        return [1 + 2 * i, 2 + 2 * i]

    # J1: lead = start of first segment = end of last segment (times flux phase)
    s0, ds0, _, _ = edges[0]
    _, _, fl, dfl = edges[-1]
    u = cmath.exp(1j * phases[-1])
    A[0, 0] = 1
    A[0, cols(0)] = -s0
    rhs[0] = -1
    A[1, 0] = 1
    A[1, cols(m - 1)] += -u * fl
    rhs[1] = -1
    # ik (1 - r) = phi_1'(0) - u phi_m'(l_m)
    A[2, 0] = -1j * k
    A[2, cols(0)] += -ds0
    A[2, cols(m - 1)] += u * dfl
    rhs[2] = -1j * k
    row = 3
    for i in range(m - 1):
        _, _, f, df = edges[i]
        s, ds, _, _ = edges[i + 1]
        u = cmath.exp(1j * phases[i])
        A[row, cols(i)] = u * f
        A[row, cols(i + 1)] = -s
        A[row + 1, cols(i)] = u * df
        A[row + 1, cols(i + 1)] = -ds
        row += 2
    if row != n:
        raise DimensionMismatch(f"assembled {row} equations for {n} unknowns")
    return A, rhs


def _named_amplitudes(segs, x):
    """Map the scaled ``(a, b)`` pairs onto named interior amplitudes."""
    out = {}
    for i, (name, kappa, length) in enumerate(segs):
        a, b = x[1 + 2 * i], x[2 + 2 * i]
        grow = complex(b * np.exp(-kappa * length))
        if name == "w":
            # kappa = i k: a exp(-ikx) + grow exp(ikx)
            out["C"], out["D"] = grow, complex(a)
        else:
            out["A" + name], out["B" + name] = complex(a), grow
    return out


def solve_ring_one_lead(spec, E, gauge="proportional"):
    if spec.leads is not Leads.ONE:
        raise ValueError("spec describes a two-lead ring")
    A, rhs = ring_one_lead_system(spec, E, gauge)
    x = solve_dense(A, rhs)
    return RingSolution(r=complex(x[0]), interior=_named_amplitudes(_segments(spec, E), x))


def ring_two_lead_system(spec, E):
    """System for ``(r, a_u, b_u, a_l, b_l, t)``; both arms run J1 -> J2."""
    k = wavenumber(E)
    b1, b2 = spec.barrier1, spec.barrier2
    ku = decay_constant(E, b1.v_re, b1.v_im)
    kl = decay_constant(E, b2.v_re, b2.v_im)
    su, dsu, fu, dfu = evanescent_edges(ku, b1.length)
    sl, dsl, fl, dfl = evanescent_edges(kl, b2.length)
    alpha = flux_phase(spec.flux)
    L = spec.circumference
    # lower arm is traversed backwards in the clockwise loop
    uu = cmath.exp(1j * alpha * b1.length / L)
    ul = cmath.exp(-1j * alpha * b2.length / L)
    A = np.zeros((6, 6), dtype=np.complex128)
    rhs = np.zeros(6, dtype=np.complex128)
    U, Lo, T = [1, 2], [3, 4], 5
    A[0, 0] = 1
    A[0, U] = -su
    rhs[0] = -1
    A[1, 0] = 1
    A[1, Lo] = -sl
    rhs[1] = -1
    A[2, 0] = -1j * k
    A[2, U] = -dsu
    A[2, Lo] = -dsl
    rhs[2] = -1j * k
    A[3, U] = uu * fu
    A[3, T] = -1
    A[4, Lo] = ul * fl
    A[4, T] = -1
    A[5, U] = uu * dfu
    A[5, Lo] = ul * dfl
    A[5, T] = -1j * k
    return A, rhs


def solve_ring_two_lead(spec, E, flux=None):
    """Reflection at J1 and transmission into the lead at J2.

    ``flux`` overrides ``spec.flux`` when given.
    """
    if spec.leads is not Leads.TWO:
        raise ValueError("spec describes a one-lead ring")
    if flux is not None:
        spec = RingSpec(spec.barrier1, spec.barrier2, spec.well_length, flux, spec.leads)
    A, rhs = ring_two_lead_system(spec, E)
    x = solve_dense(A, rhs)
    ku = decay_constant(E, spec.barrier1.v_re, spec.barrier1.v_im)
    kl = decay_constant(E, spec.barrier2.v_re, spec.barrier2.v_im)
    interior = {
        "A1": complex(x[1]), "B1": complex(x[2] * np.exp(-ku * spec.barrier1.length)),
        "A2": complex(x[3]), "B2": complex(x[4] * np.exp(-kl * spec.barrier2.length)),
    }
    return RingSolution(r=complex(x[0]), t=complex(x[5]), interior=interior)


def solve_ring(spec, E):
    if spec.leads is Leads.ONE:
        return solve_ring_one_lead(spec, E)
    return solve_ring_two_lead(spec, E)


def ring_reflection_closed_form(k, kappa, L, alpha, opaque=False):
    """Reflection amplitude of a one-lead ring fully covered by one barrier.

    With ``X = kappa L`` the exact result of the matching conditions is::

        r = (i k sinh X - 2 kappa (cos(alpha) - cosh X))
            / (i k sinh X + 2 kappa (cos(alpha) - cosh X))

    ``opaque=True`` returns its large-``X`` form where ``sinh`` and ``cosh``
    are both replaced by ``exp(X) / 2``.
    """
    X = kappa * L
    if X > MAX_GROWTH_EXPONENT:
        raise RangeExceeded(f"kappa*L = {X:.1f} exceeds {MAX_GROWTH_EXPONENT:g}")
    c = math.cos(alpha)
    if opaque:
        e = math.exp(X)
        return (-kappa * (2 * c - e) + 0.5j * k * e) / (kappa * (2 * c - e) + 0.5j * k * e)
    # divide through by cosh X to keep the terms bounded
    th = math.tanh(X)
    q = c / math.cosh(X) - 1
    return (1j * k * th - 2 * kappa * q) / (1j * k * th + 2 * kappa * q)


def tau_rs_saturated(k, kappa):
    """Saturated reflection phase time of the one-lead single-barrier ring."""
    return (1 / (k * kappa) + k / kappa**3) / (2 + k**2 / (2 * kappa**2))


def tau_ts_saturated(k, kappa):
    """Saturated transmission phase time of the two-lead ring."""
    return (4 * kappa**3 + 5 * k**2 * kappa + k**4 / kappa) / (
        2 * k * ((2 * kappa**2 - k**2 / 2) ** 2 + 4 * k**2 * kappa**2)
    )


def ring_phase_time(spec, E, mode=Mode.REFLECTION, h=None):
    """``d Arg(r) / dE`` (or of ``t`` for a two-lead ring)."""
    if Mode(mode) is Mode.TRANSMISSION:
        if spec.leads is not Leads.TWO:
            raise ValueError("transmission phase time needs a two-lead ring")
        return phase_derivative(lambda e: solve_ring_two_lead(spec, e).t, E, h)
    return phase_derivative(lambda e: solve_ring(spec, e).r, E, h)
