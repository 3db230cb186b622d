"""Wigner phase times for tunnelling through barriers, Y-junctions and Aharonov-Bohm rings."""

from .errors import (
    CouplingOutOfRange,
    DegenerateEnergy,
    DimensionMismatch,
    HartmanError,
    NonConvergentDerivative,
    PlanInvalid,
    RangeExceeded,
    SingularMatrix,
    ZeroArgument,
)
from .numerics import central_derivative, decaying_sqrt, phase_derivative, solve_dense, unwrap_phases
from .phasetime import (
    PhaseTimeSeries,
    SweepPlan,
    detect_saturation,
    phase_time_of,
    run_sweep,
    saturated_phase_time,
)
from .ring import (
    Leads,
    RingSpec,
    ring_phase_time,
    ring_reflection_closed_form,
    solve_ring_one_lead,
    solve_ring_two_lead,
    tau_rs_saturated,
    tau_ts_saturated,
)
from .scattering1d import BarrierSpec, Mode, barrier_amplitudes, phase_time_1d, step_reflection
from .splitter import (
    ArmSpec,
    Buttiker,
    Griffith,
    SplitterSpec,
    junction_smatrix,
    solve_splitter,
    splitter_phase_times,
    y_splitter,
)

__version__ = "0.1.0"
