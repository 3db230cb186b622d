"""Small numerical kernels used by every solver.

Complex scalars are plain Python ``complex``; matrices and vectors are
``numpy`` arrays of dtype ``complex128``.
"""

import cmath
import math

import numpy as np

from .errors import (
    DimensionMismatch,
    NonConvergentDerivative,
    RangeExceeded,
    SingularMatrix,
    ZeroArgument,
)

PIVOT_FLOOR = 1e-300
MAX_GROWTH_EXPONENT = 600.0
DEFAULT_RELATIVE_STEP = 1e-6
ONE_SIDED_TOLERANCE = 1e-3


def lu_factor(A):
    """LU factorisation with partial (row) pivoting.

    Returns ``(LU, perm)`` where the strict lower triangle of ``LU`` holds the
    multipliers of the unit lower factor, the upper triangle holds ``U`` and
    ``perm`` is the row permutation applied to ``A``.
    """
    LU = np.array(A, dtype=np.complex128, copy=True)
    if LU.ndim != 2 or LU.shape[0] != LU.shape[1] or LU.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {LU.shape}")
    n = LU.shape[0]
    perm = np.arange(n)
    for j in range(n):
        p = j + int(np.argmax(np.abs(LU[j:, j])))
        if abs(LU[p, j]) < PIVOT_FLOOR:
            raise SingularMatrix(f"pivot {abs(LU[p, j]):.3e} in column {j}")
        if p != j:
            LU[[j, p]] = LU[[p, j]]
            perm[[j, p]] = perm[[p, j]]
        LU[j + 1:, j] /= LU[j, j]
        LU[j + 1:, j + 1:] -= np.outer(LU[j + 1:, j], LU[j, j + 1:])
    return LU, perm


def lu_solve(LU, perm, b):
    n = LU.shape[0]
    x = np.asarray(b, dtype=np.complex128)[perm].copy()
    for i in range(1, n):
        x[i] -= LU[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - LU[i, i + 1:] @ x[i + 1:]) / LU[i, i]
    return x


def solve_dense(A, b):
    """Solve ``A x = b`` for a square complex system.

    Parameters
    ----------
    A : array_like, shape (n, n)
    b : array_like, shape (n,)

    Raises
    ------
    DimensionMismatch
        If ``A`` is not square or ``b`` has the wrong length.
    SingularMatrix
        If a pivot magnitude drops below ``1e-300``.
    """
    A = np.asarray(A, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got shape {A.shape}")
    if b.shape != (A.shape[0],):
        raise DimensionMismatch(f"rhs shape {b.shape} does not match matrix {A.shape}")
    LU, perm = lu_factor(A)
    return lu_solve(LU, perm, b)


def residual_norm(A, x, b):
    """Max-norm residual ``||A x - b||_inf``."""
    return float(np.max(np.abs(np.asarray(A) @ np.asarray(x) - np.asarray(b))))


def decaying_sqrt(z):
    """Square root on the branch with ``Re(w) > 0`` (or ``Re(w) = 0, Im(w) > 0``).

    With this branch ``exp(-w x)`` never grows for ``x > 0``; for a negative
    real argument the result is ``+i sqrt(|z|)``.
    """
    z = complex(z)
    if abs(z) < 1e-14:
        raise ZeroArgument(f"square root argument {z!r} is too close to zero")
    w = cmath.sqrt(z)
    if w.real < 0 or (w.real == 0 and w.imag < 0):
        w = -w
    return w


def check_growth(kappa, length):
    """Raise :class:`RangeExceeded` if ``exp(Re(kappa) * length)`` is out of range."""
    x = abs(complex(kappa).real) * length
    if x > MAX_GROWTH_EXPONENT:
        raise RangeExceeded(
            f"Re(kappa)*L = {x:.1f} exceeds {MAX_GROWTH_EXPONENT:g}"
        )


def unwrap_phases(angles):
    """Remove 2*pi jumps from a sequence of principal-value phases.

    Each successive difference is mapped into ``(-pi, pi]`` and accumulated,
    so the first entry is kept as is.
    """
    a = np.asarray(angles, dtype=float)
    if a.size < 2:
        return a.copy()
    d = np.diff(a)
    # d + 2*pi*n lies in (-pi, pi]; only the integer corrections are
    # accumulated so jump-free input comes back unchanged
    n = np.floor((math.pi - d) / (2 * math.pi))
    return a + 2 * math.pi * np.concatenate(([0.0], np.cumsum(n)))


def central_derivative(f, x, h):
    """Symmetric difference ``(f(x+h) - f(x-h)) / (2h)``."""
    if not h > 0:
        raise ValueError(f"step must be positive, got {h!r}")
    return (f(x + h) - f(x - h)) / (2 * h)


def _stencil_phase(amplitude, E, h):
    phases = unwrap_phases([cmath.phase(amplitude(e)) for e in (E - h, E, E + h)])
    return phases


def phase_derivative(amplitude, E, h=None, tolerance=ONE_SIDED_TOLERANCE):
    """Energy derivative of ``Arg amplitude(E)`` on a three-point stencil.

    The phase is sampled at ``E - h, E, E + h``, unwrapped and differenced
    centrally. If the forward and backward one-sided slopes disagree by more
    than ``tolerance`` (relative) the step is halved once; a second
    disagreement raises :class:`NonConvergentDerivative`.

    ``h`` defaults to ``1e-6 * E``.
    """
    if h is None:
        h = DEFAULT_RELATIVE_STEP * E
    for attempt in range(2):
        p = _stencil_phase(amplitude, E, h)
        forward = (p[2] - p[1]) / h
        backward = (p[1] - p[0]) / h
        # absolute floor covers rounding noise in the sampled phases
        floor = 1e-12 / h
        if abs(forward - backward) <= tolerance * max(abs(forward), abs(backward)) + floor:
            return (p[2] - p[0]) / (2 * h)
        if attempt == 0:
            h = h / 2
    raise NonConvergentDerivative(
        f"one-sided phase slopes {backward:.6g} and {forward:.6g} disagree at E={E!r}, h={h!r}"
    )
