"""Phase times for any supported system, plateau detection and parameter sweeps."""

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import HartmanError, PlanInvalid
from .ring import Leads, RingSpec, ring_phase_time, solve_ring, tau_rs_saturated, tau_ts_saturated
from .scattering1d import (
    BarrierSpec,
    Mode,
    barrier_amplitudes,
    decay_constant,
    phase_time_1d,
    wavenumber,
)
from .splitter import SplitterSpec, solve_splitter, splitter_phase_times

DEFAULT_TOLERANCE = 1e-6
DEFAULT_WINDOW = 5


def phase_time_of(system, E, mode=Mode.TRANSMISSION, arm=1, h=None):
    """Phase time of one scattering channel of ``system`` at energy ``E``.

    ``arm`` (1-based) selects the side arm of a splitter in transmission
    mode and is ignored otherwise.
    """
    mode = Mode(mode)
    if isinstance(system, BarrierSpec):
        return phase_time_1d(E, system, mode, h)
    if isinstance(system, RingSpec):
        return ring_phase_time(system, E, mode, h)
    if isinstance(system, SplitterSpec):
        tau_r, taus = splitter_phase_times(system, E, h)
        return tau_r if mode is Mode.REFLECTION else taus[arm - 1]
    raise TypeError(f"unsupported system {type(system).__name__}")


@dataclass(frozen=True)
class PhaseTimeSeries:
    parameter_name: str
    parameters: tuple
    values: tuple
    saturated_value: float | None = None
    saturation_index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "parameters", tuple(float(p) for p in self.parameters))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.parameters) != len(self.values):
            raise ValueError("parameters and values differ in length")
        if any(b <= a for a, b in zip(self.parameters, self.parameters[1:])):
            raise ValueError("parameter values must be strictly increasing")

    @property
    def saturated(self):
        return self.saturated_value is not None


def detect_saturation(series, tol=DEFAULT_TOLERANCE, window=DEFAULT_WINDOW):
    """Locate the first plateau of ``series``.

    The plateau starts at the first index ``i`` whose trailing ``window``
    samples spread by less than ``tol * (1 + |mean|)``; the window mean is the
    saturated value. Without a plateau both fields are ``None``.
    """
    if len(series.values) < window:
        raise ValueError(f"need at least {window} samples, got {len(series.values)}")
    v = np.asarray(series.values)
    for i in range(window - 1, len(v)):
        chunk = v[i - window + 1:i + 1]
        if not np.all(np.isfinite(chunk)):
            continue
        mean = float(chunk.mean())
        if chunk.max() - chunk.min() < tol * (1 + abs(mean)):
            return dataclasses.replace(series, saturated_value=mean, saturation_index=i)
    return dataclasses.replace(series, saturated_value=None, saturation_index=None)


def length_series(make_system, lengths, E, mode=Mode.TRANSMISSION, arm=1, name="L", h=None):
    """``PhaseTimeSeries`` of ``phase_time_of(make_system(L), E, ...)`` over ``lengths``."""
    values = [phase_time_of(make_system(L), E, mode, arm, h) for L in lengths]
    return PhaseTimeSeries(name, tuple(lengths), tuple(values))


def saturated_phase_time(make_system, E, mode=Mode.TRANSMISSION, arm=1, start=1.0,
                         stop=60.0, step=1.0, tol=DEFAULT_TOLERANCE, window=DEFAULT_WINDOW, h=None):
    """Sweep a length from ``start`` in steps of ``step`` and return the plateau.

    Stops as soon as a plateau appears; returns the detected series.
    """
    lengths, values = [], []
    L = start
    while L <= stop + 1e-12:
        lengths.append(L)
        values.append(phase_time_of(make_system(L), E, mode, arm, h))
        if len(values) >= window:
            s = detect_saturation(PhaseTimeSeries("L", lengths, values), tol, window)
            if s.saturated:
                return s
        L += step
    return detect_saturation(PhaseTimeSeries("L", lengths, values), tol, window)


# --- sweeps -----------------------------------------------------------------

OBSERVABLES = ("tau_r", "tau_t", "r_sq", "t_sq", "tau_rs", "tau_ts")


def _arm_observable(name):
    """``tau_3 -> ("tau", 3)``, ``t3_sq -> ("t_sq", 3)``, otherwise ``None``."""
    if name.startswith("tau_") and name[4:].isdigit():
        return "tau", int(name[4:])
    if name.startswith("t") and name.endswith("_sq") and name[1:-3].isdigit():
        return "t_sq", int(name[1:-3])
    return None


def _get_path(obj, parts):
    for p in parts:
        if isinstance(obj, tuple):
            try:
                obj = obj[int(p)]
            except (ValueError, IndexError):
                raise PlanInvalid(f"cannot index {p!r}") from None
        elif dataclasses.is_dataclass(obj) and hasattr(obj, p):
            obj = getattr(obj, p)
        else:
            raise PlanInvalid(f"path element {p!r} does not resolve")
    return obj


def set_path(obj, path, value):
    """Return a copy of the frozen dataclass tree ``obj`` with ``path`` set."""
    parts = path.split(".") if isinstance(path, str) else list(path)
    if not parts:
        return value
    head, rest = parts[0], parts[1:]
    if isinstance(obj, tuple):
        i = int(head)
        return obj[:i] + (set_path(obj[i], rest, value),) + obj[i + 1:]
    if dataclasses.is_dataclass(obj) and hasattr(obj, head):
        return dataclasses.replace(obj, **{head: set_path(getattr(obj, head), rest, value)})
    raise PlanInvalid(f"path element {head!r} does not resolve")


@dataclass(frozen=True)
class SweepPlan:
    """One-parameter sweep of a system.

    ``swept`` is a dotted attribute path into ``system`` (for example
    ``"arms.0.barrier.length"``) or ``"E"`` for the energy. Grid values are
    multiplied by ``scale`` before being applied; ``tied`` paths receive the
    same value as ``swept``.
    """

    system: object
    swept: str
    start: float
    stop: float
    step: float
    observables: tuple = ()
    energy: float = 1.0
    tied: tuple = ()
    label: str | None = None
    scale: float = 1.0
    h: float | None = None

    def grid(self):
        if not self.step > 0:
            raise PlanInvalid(f"step must be positive, got {self.step!r}")
        if self.stop < self.start:
            raise PlanInvalid("empty grid: stop < start")
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return self.start + self.step * np.arange(n)

    def validate(self):
        self.grid()
        for path in (self.swept,) + tuple(self.tied):
            if path != "E":
                _get_path(self.system, path.split("."))
        for name in self.observables:
            if name not in OBSERVABLES and _arm_observable(name) is None:
                raise PlanInvalid(f"unknown observable {name!r}")

    def point(self, value):
        """``(system, energy)`` at one grid value."""
        value = float(value) * self.scale
        system, E = self.system, self.energy
        for path in (self.swept,) + tuple(self.tied):
            if path == "E":
                E = value
            else:
                system = set_path(system, path, value)
        return system, E


@dataclass
class SweepTable:
    columns: list
    rows: list = field(default_factory=list)

    def column(self, name):
        i = self.columns.index(name)
        return np.array([row[i] for row in self.rows], dtype=float)

    @property
    def errors(self):
        return [row[-1] for row in self.rows]


def _closed_form_kappa(system, E):
    b = system.barrier1
    if b.v_im != 0 or E >= b.v_re:
        return math.nan
    return decay_constant(E, b.v_re).real


def evaluate_observables(system, E, observables, h=None):
    """Map of observable name to value for one ``(system, E)`` point."""
    out = {}
    need_tau = any(o.startswith("tau_") and o not in ("tau_rs", "tau_ts") for o in observables)
    if isinstance(system, SplitterSpec):
        sol = solve_splitter(system, E)
        taus = splitter_phase_times(system, E, h) if need_tau else None
        for o in observables:
            arm = _arm_observable(o)
            if o == "tau_r":
                out[o] = taus[0]
            elif o == "r_sq":
                out[o] = abs(sol.r) ** 2
            elif arm and arm[0] == "tau":
                out[o] = taus[1][arm[1] - 1]
            elif arm:
                out[o] = abs(sol.t[arm[1] - 1]) ** 2
            else:
                raise PlanInvalid(f"observable {o!r} does not apply to a splitter")
        return out
    if isinstance(system, BarrierSpec):
        r, t = barrier_amplitudes(E, system)
        table = {
            "r_sq": lambda: abs(r) ** 2,
            "t_sq": lambda: abs(t) ** 2,
            "tau_r": lambda: phase_time_1d(E, system, Mode.REFLECTION, h),
            "tau_t": lambda: phase_time_1d(E, system, Mode.TRANSMISSION, h),
        }
    elif isinstance(system, RingSpec):
        sol = solve_ring(system, E)
        two = system.leads is Leads.TWO
        table = {
            "r_sq": lambda: abs(sol.r) ** 2,
            "tau_r": lambda: ring_phase_time(system, E, Mode.REFLECTION, h),
            "tau_rs": lambda: tau_rs_saturated(wavenumber(E), _closed_form_kappa(system, E)),
        }
        if two:
            table["t_sq"] = lambda: abs(sol.t) ** 2
            table["tau_t"] = lambda: ring_phase_time(system, E, Mode.TRANSMISSION, h)
            table["tau_ts"] = lambda: tau_ts_saturated(wavenumber(E), _closed_form_kappa(system, E))
    else:
        raise PlanInvalid(f"unsupported system {type(system).__name__}")
    for o in observables:
        if o not in table:
            raise PlanInvalid(f"observable {o!r} does not apply to {type(system).__name__}")
        out[o] = float(table[o]())
    return out


def _row(plan, value):
    try:
        system, E = plan.point(value)
        obs = evaluate_observables(system, E, plan.observables, plan.h)
        return [float(value)] + [float(obs[o]) for o in plan.observables] + [""]
    except (HartmanError, ValueError, ArithmeticError) as exc:
        return [float(value)] + [math.nan] * len(plan.observables) + [f"{type(exc).__name__}: {exc}"]


def run_sweep(plan, executor=None):
    """Evaluate every grid point of ``plan``.

    Points that fail keep their row, with NaN observables and the error in
    the trailing ``error`` column. ``executor`` (anything with an
    order-preserving ``map``) may be used to evaluate points concurrently.
    """
    plan.validate()
    label = plan.label or plan.swept
    if not plan.observables:
        return SweepTable([label])
    columns = [label] + list(plan.observables) + ["error"]
    grid = plan.grid()
    mapper = map if executor is None else executor.map
    rows = list(mapper(_row, [plan] * len(grid), grid))
    return SweepTable(columns, rows)
