"""Experiment configuration files.

The format is line oriented ``key = value`` under the section headers
``[system]``, ``[sweep]`` and ``[output]``; ``#`` starts a comment. Numbers
may be written as decimals or fractions (``epsilon = 4/9``).
"""

import configparser
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError, MissingKey, OutOfRange, UnknownKey
from .phasetime import SweepPlan
from .ring import Leads, RingSpec
from .scattering1d import BarrierSpec
from .splitter import ArmSpec, Buttiker, Griffith, SplitterSpec

KINDS = ("barrier", "splitter", "ring1", "ring2")

SYSTEM_KEYS = {
    "barrier": ("E", "V", "v_im", "length", "offset"),
    "splitter": ("E", "V_1", "v_im_1", "lb_1", "w_1", "V_2", "v_im_2", "lb_2", "w_2",
                 "junction", "epsilon"),
    "ring1": ("E", "V_1", "v_im_1", "lb_1", "V_2", "v_im_2", "lb_2", "w", "phi"),
    "ring2": ("E", "V_1", "v_im_1", "lb_1", "V_2", "v_im_2", "lb_2", "phi"),
}
REQUIRED = {
    "barrier": ("E", "V", "length"),
    "splitter": ("E",),
    "ring1": ("E", "V_1", "lb_1"),
    "ring2": ("E", "V_1", "lb_1", "V_2", "lb_2"),
}
SWEEP_KEYS = ("parameter", "start", "stop", "step", "observables", "tied",
              "series_parameter", "series_values", "h")
OUTPUT_KEYS = ("path",)
NONNEGATIVE = {"v_im", "length", "offset", "v_im_1", "lb_1", "w_1", "v_im_2", "lb_2", "w_2", "w"}

# swept-key -> attribute path into the built system
PATHS = {
    "barrier": {"V": "v_re", "v_im": "v_im", "length": "length", "offset": "offset"},
    "splitter": {
        "V_1": "arms.0.barrier.v_re", "v_im_1": "arms.0.barrier.v_im",
        "lb_1": "arms.0.barrier.length", "w_1": "arms.0.barrier.offset",
        "V_2": "arms.1.barrier.v_re", "v_im_2": "arms.1.barrier.v_im",
        "lb_2": "arms.1.barrier.length", "w_2": "arms.1.barrier.offset",
        "epsilon": "junction.epsilon",
    },
    "ring1": {
        "V_1": "barrier1.v_re", "v_im_1": "barrier1.v_im", "lb_1": "barrier1.length",
        "V_2": "barrier2.v_re", "v_im_2": "barrier2.v_im", "lb_2": "barrier2.length",
        "w": "well_length", "phi": "flux",
    },
}
PATHS["ring2"] = {k: v for k, v in PATHS["ring1"].items() if k != "w"}


def parse_number(key, text):
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        try:
            value = float(text)
        except ValueError:
            raise ConfigError(key, f"not a number: {text!r}") from None
        if not math.isfinite(value):
            raise OutOfRange(key, value, "must be finite")
        return value


def _parse_list(text):
    return tuple(s.strip() for s in text.split(",") if s.strip())


@dataclass(frozen=True)
class SweepConfig:
    parameter: str
    start: float
    stop: float
    step: float
    observables: tuple = ()
    tied: tuple = ()
    series_parameter: str | None = None
    series_values: tuple = ()
    h: float | None = None


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    params: dict = field(default_factory=dict)
    sweep: SweepConfig | None = None
    output: str | None = None


def parse_config(text, overrides=()):
    """Parse and validate configuration ``text``.

    ``overrides`` is a sequence of ``"key=value"`` strings applied on top of
    the file; ``key`` is ``section.name`` or a bare ``name`` in ``[system]``.
    """
    cp = configparser.ConfigParser(comment_prefixes=("#",), inline_comment_prefixes=("#",),
                                   interpolation=None)
    cp.optionxform = str
    cp.read_string(text)
    for item in overrides:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(item, "override must look like key=value")
        section, dot, name = key.strip().rpartition(".")
        section = section if dot else "system"
        if not cp.has_section(section):
            cp.add_section(section)
        cp.set(section, name, value.strip())

    for section in cp.sections():
        if section not in ("system", "sweep", "output"):
            raise UnknownKey(f"[{section}]", "unknown section")
    if not cp.has_section("system"):
        raise MissingKey("[system]", "section is required")
    system = dict(cp.items("system"))
    kind = system.pop("kind", None)
    if kind is None:
        raise MissingKey("system.kind", "required")
    if kind not in KINDS:
        raise OutOfRange("system.kind", kind, f"must be one of {', '.join(KINDS)}")

    params = {}
    for key, raw in system.items():
        if key not in SYSTEM_KEYS[kind]:
            raise UnknownKey(f"system.{key}", f"not a parameter of a {kind} system")
        params[key] = raw.strip().lower() if key == "junction" else parse_number(f"system.{key}", raw)

    sweep = None
    if cp.has_section("sweep"):
        raw = dict(cp.items("sweep"))
        for key in raw:
            if key not in SWEEP_KEYS:
                raise UnknownKey(f"sweep.{key}", "unknown sweep key")
        for key in ("parameter", "start", "stop", "step"):
            if key not in raw:
                raise MissingKey(f"sweep.{key}", "required")
        sweep = SweepConfig(
            parameter=raw["parameter"].strip(),
            start=parse_number("sweep.start", raw["start"]),
            stop=parse_number("sweep.stop", raw["stop"]),
            step=parse_number("sweep.step", raw["step"]),
            observables=_parse_list(raw.get("observables", "")),
            tied=_parse_list(raw.get("tied", "")),
            series_parameter=raw["series_parameter"].strip() if "series_parameter" in raw else None,
            series_values=tuple(parse_number("sweep.series_values", v)
                                for v in _parse_list(raw.get("series_values", ""))),
            h=parse_number("sweep.h", raw["h"]) if "h" in raw else None,
        )

    output = None
    if cp.has_section("output"):
        for key in cp.options("output"):
            if key not in OUTPUT_KEYS:
                raise UnknownKey(f"output.{key}", "unknown output key")
        output = cp.get("output", "path", fallback=None)

    config = ExperimentConfig(kind, params, sweep, output)
    validate_config(config)
    return config


def validate_config(config):
    kind, params, sweep = config.kind, config.params, config.sweep
    swept = set()
    if sweep is not None:
        swept = {sweep.parameter, *sweep.tied}
        if sweep.parameter == "E_over_V":
            swept.add("E")
        allowed = set(PATHS[kind]) | {"E"}
        if kind in ("ring1", "ring2"):
            allowed.add("E_over_V")
        for key in (sweep.parameter, *sweep.tied):
            if key not in allowed:
                raise OutOfRange("sweep.parameter", key, f"is not sweepable for a {kind} system")
        if sweep.series_parameter is not None:
            if sweep.series_parameter not in SYSTEM_KEYS[kind] or sweep.series_parameter == "junction":
                raise OutOfRange("sweep.series_parameter", sweep.series_parameter, "is not a system parameter")
            if not sweep.series_values:
                raise MissingKey("sweep.series_values", "required with series_parameter")
        if not sweep.step > 0:
            raise OutOfRange("sweep.step", sweep.step, "must be positive")
        if sweep.stop < sweep.start:
            raise OutOfRange("sweep.stop", sweep.stop, "must not be below sweep.start")
        if sweep.h is not None and not sweep.h > 0:
            raise OutOfRange("sweep.h", sweep.h, "must be positive")
    for key in REQUIRED[kind]:
        if key not in params and key not in swept and not (
                sweep and sweep.series_parameter == key):
            raise MissingKey(f"system.{key}", "required")
    for key, value in params.items():
        if key in NONNEGATIVE and not value >= 0:
            raise OutOfRange(f"system.{key}", value, "must be >= 0")
    if "E" in params and not params["E"] > 0:
        raise OutOfRange("system.E", params["E"], "must be positive")
    if kind == "splitter":
        junction = params.get("junction", "griffith")
        if junction not in ("griffith", "buttiker"):
            raise OutOfRange("system.junction", junction, "must be griffith or buttiker")
        if "epsilon" in params and not 0 < params["epsilon"] <= 0.5:
            raise OutOfRange("system.epsilon", params["epsilon"], "coupling must satisfy 0 < epsilon <= 0.5")
        if junction == "buttiker" and "epsilon" not in params and "epsilon" not in swept:
            raise MissingKey("system.epsilon", "required for the buttiker junction")
    if sweep is not None and kind in ("ring1", "ring2") and sweep.parameter == "E_over_V" \
            and "V_1" not in params:
        raise MissingKey("system.V_1", "required to scale E_over_V")


def _fmt(value):
    return value if isinstance(value, str) else repr(float(value))


def emit_config(config):
    """Serialise ``config`` so that ``parse_config(emit_config(c)) == c``."""
    lines = ["[system]", f"kind = {config.kind}"]
    lines += [f"{k} = {_fmt(v)}" for k, v in config.params.items()]
    s = config.sweep
    if s is not None:
        lines += ["", "[sweep]", f"parameter = {s.parameter}", f"start = {_fmt(s.start)}",
                  f"stop = {_fmt(s.stop)}", f"step = {_fmt(s.step)}",
                  f"observables = {', '.join(s.observables)}"]
        if s.tied:
            lines.append(f"tied = {', '.join(s.tied)}")
        if s.series_parameter is not None:
            lines.append(f"series_parameter = {s.series_parameter}")
            lines.append(f"series_values = {', '.join(_fmt(v) for v in s.series_values)}")
        if s.h is not None:
            lines.append(f"h = {_fmt(s.h)}")
    if config.output is not None:
        lines += ["", "[output]", f"path = {config.output}"]
    return "\n".join(lines) + "\n"


def build_system(kind, params):
    """Construct the physical system described by a flat parameter map."""
    p = params

    def barrier(n, offset=0.0):
        if f"V_{n}" not in p:
            return None
        return BarrierSpec(p[f"V_{n}"], p.get(f"lb_{n}", 0.0), v_im=p.get(f"v_im_{n}", 0.0), offset=offset)

    if kind == "barrier":
        return BarrierSpec(p["V"], p.get("length", 0.0), v_im=p.get("v_im", 0.0), offset=p.get("offset", 0.0))
    if kind == "splitter":
        junction = Griffith() if p.get("junction", "griffith") == "griffith" else Buttiker(p["epsilon"])
        arms = (ArmSpec(barrier(1, p.get("w_1", 0.0))), ArmSpec(barrier(2, p.get("w_2", 0.0))))
        return SplitterSpec(arms, junction)
    if kind == "ring1":
        return RingSpec(barrier(1), barrier(2), p.get("w", 0.0), p.get("phi", 0.0), Leads.ONE)
    if kind == "ring2":
        return RingSpec(barrier(1), barrier(2), 0.0, p.get("phi", 0.0), Leads.TWO)
    raise OutOfRange("system.kind", kind, "unknown")


def build_plan(config, params=None):
    """``SweepPlan`` for ``config`` (optionally with substituted ``params``)."""
    s = config.sweep
    params = dict(config.params if params is None else params)
    scale = 1.0
    swept = s.parameter
    if swept == "E_over_V":
        scale = params["V_1"]
        swept = "E"
    first = s.start * scale
    for key in (s.parameter, *s.tied):
        if key == "E_over_V":
            params["E"] = first
        else:
            params[key] = first
    system = build_system(config.kind, params)
    paths = PATHS[config.kind]
    return SweepPlan(
        system=system,
        swept="E" if swept == "E" else paths[swept],
        start=s.start, stop=s.stop, step=s.step,
        observables=tuple(s.observables),
        energy=params["E"],
        tied=tuple("E" if t == "E" else paths[t] for t in s.tied),
        label=s.parameter,
        scale=scale,
        h=s.h,
    )
