"""Y-junction (and N-branch) waveguide splitters.

A base wire carries the incident wave ``exp(ik x0)`` towards the junction J.
Each side arm ``n`` is a wire with coordinate ``x_n`` measured outward from
J; it either is free or holds one rectangular barrier occupying
``[w_n, w_n + lb_n]``:

    region I    A_n exp(ik x) + B_n exp(-ik x)             0 < x < w_n
    region II   C_n exp(-kappa_n (x - w_n)) + D_n exp(kappa_n (x - w_n))
    region III  t_n exp(ik (x - w_n - lb_n))                x > w_n + lb_n

so ``t_n`` is referenced to the far edge of the barrier. A free arm carries
the outgoing wave ``t_n exp(ik x)`` referenced at the junction.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CouplingOutOfRange, DimensionMismatch
from .numerics import phase_derivative, solve_dense
from .scattering1d import BarrierSpec, decay_constant, evanescent_edges, wavenumber


@dataclass(frozen=True)
class Griffith:
    """Wavefunction continuity plus vanishing sum of outward derivatives."""


@dataclass(frozen=True)
class Buttiker:
    """Three-port junction scattering matrix with coupling ``0 < epsilon <= 1/2``."""

    epsilon: float

    def __post_init__(self):
        if not 0 < self.epsilon <= 0.5:
            raise CouplingOutOfRange(f"coupling must satisfy 0 < epsilon <= 0.5, got {self.epsilon!r}")


@dataclass(frozen=True)
class ArmSpec:
    barrier: BarrierSpec | None = None


@dataclass(frozen=True)
class SplitterSpec:
    arms: tuple
    junction: Griffith | Buttiker = Griffith()

    def __post_init__(self):
        object.__setattr__(self, "arms", tuple(self.arms))
        if len(self.arms) < 2:
            raise ValueError(f"a splitter needs at least two side arms, got {len(self.arms)}")
        if isinstance(self.junction, Buttiker) and len(self.arms) != 2:
            raise ValueError("the Buttiker junction is a three-port: exactly two side arms")


@dataclass
class SplitterSolution:
    r: complex
    t: list
    interior: list = field(default_factory=list)

    @property
    def flux(self):
        """``|r|^2 + sum |t_n|^2``; one for loss-free arms."""
        return abs(self.r) ** 2 + sum(abs(t) ** 2 for t in self.t)


def junction_smatrix(epsilon):
    """Three-port junction S-matrix ordered (base, arm 1, arm 2)."""
    if not 0 < epsilon <= 0.5:
        raise CouplingOutOfRange(f"coupling must satisfy 0 < epsilon <= 0.5, got {epsilon!r}")
    root = math.sqrt(1 - 2 * epsilon)
    a = (root - 1) / 2
    b = (root + 1) / 2
    s = math.sqrt(epsilon)
    return np.array([[-(a + b), s, s], [s, a, b], [s, b, a]], dtype=np.complex128)


def _layout(spec):
    """Column index of every unknown: R first, then per arm (A, B, C, D, t) or (t,)."""
    cols = []
    i = 1
    for arm in spec.arms:
        if arm.barrier is None:
            cols.append({"t": i})
            i += 1
        else:
            cols.append({"A": i, "B": i + 1, "C": i + 2, "D": i + 3, "t": i + 4})
            i += 5
    return cols, i


def splitter_system(spec, E):
    """Assemble the boundary-condition system ``(A, b)`` for ``spec`` at ``E``."""
    k = wavenumber(E)
    cols, n = _layout(spec)
    A = np.zeros((n, n), dtype=np.complex128)
    rhs = np.zeros(n, dtype=np.complex128)
    row = 0

    def outgoing(c):
        return c.get("A", c["t"])

    if isinstance(spec.junction, Griffith):
        for c in cols:
            # 1 + R = A_n + B_n
            A[row, 0] = 1
            A[row, outgoing(c)] -= 1
            if "B" in c:
                A[row, c["B"]] -= 1
            rhs[row] = -1
            row += 1
        # 1 - R = sum_n (A_n - B_n)
        A[row, 0] = 1
        for c in cols:
            A[row, outgoing(c)] += 1
            if "B" in c:
                A[row, c["B"]] -= 1
        rhs[row] = 1
        row += 1
    else:
        S = junction_smatrix(spec.junction.epsilon)
        out_cols = [0] + [outgoing(c) for c in cols]
        in_cols = [None] + [c.get("B") for c in cols]
        for i in range(3):
            A[row, out_cols[i]] += 1
            rhs[row] = S[i, 0]
            for j in (1, 2):
                if in_cols[j] is not None:
                    A[row, in_cols[j]] -= S[i, j]
            row += 1

    for arm, c in zip(spec.arms, cols):
        if arm.barrier is None:
            continue
        bar = arm.barrier
        kappa = decay_constant(E, bar.v_re, bar.v_im)
        s, ds, f, df = evanescent_edges(kappa, bar.length)
        ein, eout = np.exp(1j * k * bar.offset), np.exp(-1j * k * bar.offset)
        cd = [c["C"], c["D"]]
        A[row, c["A"]], A[row, c["B"]] = ein, eout
        A[row, cd] = -s
        row += 1
        A[row, c["A"]], A[row, c["B"]] = 1j * k * ein, -1j * k * eout
        A[row, cd] = -ds
        row += 1
        A[row, cd] = f
        A[row, c["t"]] = -1
        row += 1
        A[row, cd] = df
        A[row, c["t"]] = -1j * k
        row += 1
    if row != n:
        raise DimensionMismatch(f"assembled {row} equations for {n} unknowns")
    return A, rhs


def solve_splitter(spec, E):
    """Reflection, transmissions and interior amplitudes at energy ``E``."""
    A, rhs = splitter_system(spec, E)
    x = solve_dense(A, rhs)
    cols, _ = _layout(spec)
    interior = []
    for arm, c in zip(spec.arms, cols):
        if arm.barrier is None:
            interior.append({"A": complex(x[c["t"]]), "B": 0j})
            continue
        kappa = decay_constant(E, arm.barrier.v_re, arm.barrier.v_im)
        interior.append({
            "A": complex(x[c["A"]]),
            "B": complex(x[c["B"]]),
            "C": complex(x[c["C"]]),
            "D": complex(x[c["D"]] * np.exp(-kappa * arm.barrier.length)),
        })
    return SplitterSolution(
        r=complex(x[0]),
        t=[complex(x[c["t"]]) for c in cols],
        interior=interior,
    )


def splitter_phase_times(spec, E, h=None):
    """Phase times ``(tau_r, [tau_1, ..., tau_N])`` at energy ``E``.

    ``tau_r`` is referenced at the junction on the base wire, ``tau_n`` at the
    far edge of the barrier in arm ``n`` (at the junction for a free arm).
    """
    cache = {}

    def solution(e):
        if e not in cache:
            cache[e] = solve_splitter(spec, e)
        return cache[e]

    tau_r = phase_derivative(lambda e: solution(e).r, E, h)
    taus = [
        phase_derivative(lambda e, n=n: solution(e).t[n], E, h)
        for n in range(len(spec.arms))
    ]
    return tau_r, taus


def y_splitter(v1=None, lb1=0.0, w1=0.0, v2=None, lb2=0.0, w2=0.0,
               v_im1=0.0, v_im2=0.0, junction=Griffith()):
    """Two-arm splitter; an arm with ``v = None`` is barrier-free."""
    arms = []
    for v, lb, w, vim in ((v1, lb1, w1, v_im1), (v2, lb2, w2, v_im2)):
        barrier = None if v is None else BarrierSpec(v, lb, v_im=vim, offset=w)
        arms.append(ArmSpec(barrier))
    return SplitterSpec(tuple(arms), junction)
