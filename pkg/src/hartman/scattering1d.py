"""Rectangular barrier and step potential on an infinite line.

Units: hbar = 1 and 2m = 1, so ``E = k**2`` and inside a segment of
(possibly complex) height ``V`` the decay constant is ``kappa = sqrt(V - E)``.
A complex potential is written ``V = v_re - 1j * v_im`` with ``v_im >= 0``
describing absorption.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEnergy
from .numerics import check_growth, decaying_sqrt, phase_derivative, solve_dense


class Mode(enum.Enum):
    TRANSMISSION = "transmission"
    REFLECTION = "reflection"


@dataclass(frozen=True)
class BarrierSpec:
    """One rectangular segment.

    ``length`` is in units of 1/k, ``offset`` is the free distance between the
    reference point (junction, or the origin of the line) and the barrier.
    """

    v_re: float
    length: float
    v_im: float = 0.0
    offset: float = 0.0

    def __post_init__(self):
        if not self.length >= 0:
            raise ValueError(f"barrier length must be >= 0, got {self.length!r}")
        if not self.offset >= 0:
            raise ValueError(f"barrier offset must be >= 0, got {self.offset!r}")
        if not self.v_im >= 0:
            raise ValueError(f"absorption v_im must be >= 0, got {self.v_im!r}")

    @property
    def potential(self):
        return complex(self.v_re, -self.v_im)


def wavenumber(E):
    if not E > 0:
        raise ValueError(f"energy must be positive, got {E!r}")
    return math.sqrt(E)


def decay_constant(E, v_re, v_im=0.0):
    """``kappa`` for a segment of height ``v_re - i v_im`` at energy ``E``."""
    if v_im == 0 and abs(E - v_re) < 1e-12:
        raise DegenerateEnergy(f"E = {E!r} coincides with the barrier height {v_re!r}")
    return decaying_sqrt(complex(v_re, -v_im) - E)


def evanescent_edges(kappa, length):
    """Edge values of ``phi(x) = a exp(-kappa x) + b exp(kappa (x - length))``.

    Returns four length-2 arrays giving the coefficients of ``(a, b)`` in
    ``phi(0)``, ``phi'(0)``, ``phi(length)`` and ``phi'(length)``. The
    ``b`` amplitude is referenced to the far edge so no entry exceeds
    ``|kappa|`` in magnitude, however long the segment.
    """
    check_growth(kappa, length)
    e = np.exp(-kappa * length)
    start = np.array([1.0, e])
    dstart = np.array([-kappa, kappa * e])
    end = np.array([e, 1.0])
    dend = np.array([-kappa * e, kappa])
    return start, dstart, end, dend


def barrier_system(E, barrier):
    """Linear system for the unknowns ``(r, a, b, t)`` of a single barrier.

    The incident wave is ``exp(ikx)`` with ``x`` measured from the origin,
    the barrier occupies ``[offset, offset + length]`` and ``t`` multiplies
    ``exp(ik(x - offset - length))``.
    """
    k = wavenumber(E)
    kappa = decay_constant(E, barrier.v_re, barrier.v_im)
    w = barrier.offset
    s, ds, f, df = evanescent_edges(kappa, barrier.length)
    ein, eout = np.exp(1j * k * w), np.exp(-1j * k * w)
    A = np.zeros((4, 4), dtype=np.complex128)
    rhs = np.zeros(4, dtype=np.complex128)
    A[0] = [eout, -s[0], -s[1], 0]
    rhs[0] = -ein
    A[1] = [-1j * k * eout, -ds[0], -ds[1], 0]
    rhs[1] = -1j * k * ein
    A[2] = [0, f[0], f[1], -1]
    A[3] = [0, df[0], df[1], -1j * k]
    return A, rhs


def barrier_amplitudes(E, barrier):
    """Reflection and transmission amplitudes ``(r, t)`` of one barrier."""
    A, rhs = barrier_system(E, barrier)
    r, _, _, t = solve_dense(A, rhs)
    return complex(r), complex(t)


def step_reflection(E, v_re, v_im=0.0):
    """Reflection amplitude of a step of height ``v_re - i v_im`` at ``x = 0``."""
    k = wavenumber(E)
    kappa = decay_constant(E, v_re, v_im)
    return (1j * k + kappa) / (1j * k - kappa)


def phase_time_1d(E, barrier, mode=Mode.TRANSMISSION, h=None):
    """Phase time ``d Arg(t or r) / dE`` of a single barrier."""
    index = 1 if Mode(mode) is Mode.TRANSMISSION else 0
    return phase_derivative(lambda e: barrier_amplitudes(e, barrier)[index], E, h)


def step_phase_time(E, v_re, v_im=0.0, h=None):
    return phase_derivative(lambda e: step_reflection(e, v_re, v_im), E, h)
