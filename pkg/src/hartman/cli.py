"""Command line front end.

    python -m hartman splitter --preset fig2 --out fig2.csv
    python -m hartman ring1 --config my.ini --set lb_1=8 --set sweep.step=0.05
    python -m hartman verify
"""

import argparse
import csv
import io
import math
import sys
from importlib import resources

from . import acceptance
from .config import KINDS, parse_config, build_plan
from .errors import HartmanError
from .phasetime import SweepTable, run_sweep

PRESET_PACKAGE = "hartman.presets"


def preset_names():
    return sorted(p.name[:-4] for p in resources.files(PRESET_PACKAGE).iterdir() if p.name.endswith(".ini"))


def preset_text(name):
    path = resources.files(PRESET_PACKAGE) / f"{name}.ini"
    if not path.is_file():
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return path.read_text()


def _series_label(key, value):
    return f"{key}={value:.12g}"


def run_experiment(config, executor=None):
    """Run the sweep described by ``config`` and return one merged table.

    With a series the observable columns are repeated per series value and
    suffixed ``@key=value``; errors of all series share the ``error`` column.
    """
    s = config.sweep
    if s is None:
        raise HartmanError("configuration has no [sweep] section")
    if s.series_parameter is None:
        return run_sweep(build_plan(config), executor)
    tables = []
    for value in s.series_values:
        params = dict(config.params)
        params[s.series_parameter] = value
        tables.append((value, run_sweep(build_plan(config, params), executor)))
    first = tables[0][1]
    if not s.observables:
        return SweepTable(first.columns)
    columns = [first.columns[0]]
    for value, _ in tables:
        columns += [f"{o}@{_series_label(s.series_parameter, value)}" for o in s.observables]
    columns.append("error")
    rows = []
    for i, base in enumerate(first.rows):
        row = [base[0]]
        errors = []
        for value, t in tables:
            row += t.rows[i][1:-1]
            if t.rows[i][-1]:
                errors.append(f"{_series_label(s.series_parameter, value)}: {t.rows[i][-1]}")
        row.append("; ".join(errors))
        rows.append(row)
    return SweepTable(columns, rows)


def _cell(value):
    if isinstance(value, str):
        return value
    if math.isnan(value):
        return "nan"
    return format(value, ".17g")


def write_csv(table, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_cell(v) for v in row])


def table_to_csv(table):
    buf = io.StringIO()
    write_csv(table, buf)
    return buf.getvalue()


def _load_config(args):
    if args.config and args.preset:
        raise HartmanError("give either --config or --preset, not both")
    if args.config:
        with open(args.config) as fh:
            text = fh.read()
    elif args.preset:
        text = preset_text(args.preset)
    else:
        text = f"[system]\nkind = {args.command}\n"
    return parse_config(text, args.set or ())


def build_parser():
    parser = argparse.ArgumentParser(prog="hartman", description="Phase times of tunnelling networks and rings.")
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in KINDS:
        p = sub.add_parser(kind, help=f"run a {kind} sweep")
        p.add_argument("--config", help="configuration file")
        p.add_argument("--preset", help="bundled configuration (" + ", ".join(preset_names()) + ")")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a key; section.key or a bare [system] key")
        p.add_argument("--out", help="CSV output path (default: [output] path, else stdout)")
    sub.add_parser("verify", help="run the reproduction checks")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        results = acceptance.run_all(echo=print)
        failed = [r.number for r in results if not r.passed]
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
        return 1 if failed else 0
    try:
        config = _load_config(args)
        if config.kind != args.command:
            raise HartmanError(f"configuration is for '{config.kind}', not '{args.command}'")
        table = run_experiment(config)
    except (HartmanError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = args.out or config.output
    if out:
        with open(out, "w", newline="") as fh:
            write_csv(table, fh)
    else:
        write_csv(table, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
