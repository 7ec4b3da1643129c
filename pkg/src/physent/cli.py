"""Command-line front end.

Subcommands::

    physent point --epsilon E [--gamma-fraction G]
    physent sweep-epsilon [--gamma-fraction G] [--grid N]
    physent sweep-dlr [--epsilon E1,E2,...] [--grid N]
    physent preset-hom [--epsilon E1,E2,...]

Shared flags: ``--statistics boson|fermion``, ``--output PATH`` (stdout by
default), ``--output-format csv|json`` and ``--config FILE``. A config file
holds ``key=value`` lines (``#`` starts a comment) using the flag names with
or without dashes; explicit flags win over file values.

Angles accept plain numbers or multiples of pi such as ``3pi/4``.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import re
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import __version__
from .errors import PhysentError
from .scenarios import (
    DEFAULT_GRID,
    INSET_EPSILONS,
    SplitterGeometry,
    SweepPoint,
    dlr_grid,
    dlr_sweep,
    epsilon_grid,
    epsilon_sweep,
    evaluate_point,
)
from .states import Statistics

COMMANDS = ("point", "sweep-epsilon", "sweep-dlr", "preset-hom")
FORMATS = ("csv", "json")
CSV_COLUMNS = (
    "theta", "eta", "epsilon", "delta", "d_lr", "d_rl", "gamma",
    "t", "c_d", "p_d", "s_d", "residual", "oracle_delta_max", "status",
)
HOM_EPSILONS = (math.pi / 4, 3 * math.pi / 4)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3

_KEYS = ("statistics", "gamma_fraction", "epsilon", "grid", "output", "output_format")
# flags that make no sense for a given subcommand
_FORBIDDEN = {
    "point": {"grid"},
    "sweep-epsilon": {"epsilon"},
    "sweep-dlr": {"gamma_fraction"},
    "preset-hom": {"gamma_fraction", "grid"},
}

_PI_RE = re.compile(r"^([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?$")


class UsageError(Exception):
    pass


def parse_angle(text: str) -> float:
    s = text.strip().lower()
    m = _PI_RE.match(s)
    if m:
        coef = m.group(1)
        num = float(coef) if coef not in ("", "+", "-") else (-1.0 if coef == "-" else 1.0)
        den = float(m.group(2)) if m.group(2) else 1.0
        return num * math.pi / den
    try:
        val = float(s)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None
    if not math.isfinite(val):
        raise UsageError(f"angle must be finite, got {text!r}")
    return val


def parse_angle_list(text: str) -> tuple[float, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise UsageError("empty epsilon list")
    return tuple(parse_angle(p) for p in parts)


@dataclass(frozen=True)
class RunConfig:
    command: str
    statistics: Statistics = Statistics.BOSON
    gamma_fraction: float = 1.0
    epsilon: tuple[float, ...] = ()
    grid_size: int = DEFAULT_GRID
    output_path: str | None = None
    output_format: str = "csv"

    def echo(self) -> str:
        # output path left out so identical runs give identical bytes wherever they land
        eps = ",".join(format(e, ".17g") for e in self.epsilon)
        return (
            f"command={self.command} statistics={self.statistics.name.lower()} "
            f"gamma_fraction={self.gamma_fraction:.17g} epsilon={eps or '-'} grid={self.grid_size} "
            f"output_format={self.output_format}"
        )


def read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (p.strip() for p in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "grid_size":
            key = "grid"
        if key not in _KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    sup = argparse.SUPPRESS
    common.add_argument("--statistics", default=sup, help="boson (default) or fermion")
    common.add_argument("--gamma-fraction", dest="gamma_fraction", default=sup,
                        help="gamma = -fraction * gamma_max, in [0, 1] (default 1)")
    common.add_argument("--epsilon", default=sup, help="angle, or comma-separated list for sweep-dlr/preset-hom")
    common.add_argument("--grid", default=sup, help=f"number of sweep grid points (default {DEFAULT_GRID})")
    common.add_argument("--output", "-o", default=sup, help="output file (default stdout)")
    common.add_argument("--output-format", dest="output_format", default=sup, help="csv (default) or json")
    common.add_argument("--config", default=None, help="key=value config file; flags override it")

    parser = argparse.ArgumentParser(prog="physent", description="Detector-level entanglement of identical particles")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    helps = {
        "point": "one parameter point at balanced splitting",
        "sweep-epsilon": "sweep epsilon over [0, pi] at balanced splitting",
        "sweep-dlr": "sweep D_LR over [0, 1/4] at gamma = -gamma_max",
        "preset-hom": "Hong-Ou-Mandel setting (balanced, gamma = -gamma_max)",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _resolve(command: str, flags: dict, file_values: dict) -> RunConfig:
    for key in _FORBIDDEN[command]:
        if key in flags:
            raise UsageError(f"--{key.replace('_', '-')} is not valid for {command}")
    merged = {k: v for k, v in file_values.items() if k not in _FORBIDDEN[command]}
    merged.update(flags)

    kwargs: dict = {"command": command}
    if "statistics" in merged:
        try:
            kwargs["statistics"] = Statistics.parse(merged["statistics"])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if "gamma_fraction" in merged:
        try:
            gf = float(merged["gamma_fraction"])
        except ValueError:
            raise UsageError(f"invalid gamma fraction {merged['gamma_fraction']!r}") from None
        if not 0.0 <= gf <= 1.0:
            raise UsageError(f"gamma fraction must lie in [0, 1], got {gf}")
        kwargs["gamma_fraction"] = gf
    if "grid" in merged:
        try:
            n = int(merged["grid"])
        except ValueError:
            raise UsageError(f"invalid grid size {merged['grid']!r}") from None
        if n < 2:
            raise UsageError(f"grid size must be at least 2, got {n}")
        kwargs["grid_size"] = n
    if "output" in merged and merged["output"] not in ("", "-"):
        kwargs["output_path"] = merged["output"]
    if "output_format" in merged:
        fmt = merged["output_format"].strip().lower()
        if fmt not in FORMATS:
            raise UsageError(f"output format must be one of {FORMATS}, got {fmt!r}")
        kwargs["output_format"] = fmt

    if "epsilon" in merged:
        eps = parse_angle_list(merged["epsilon"])
    elif command == "point":
        raise UsageError("point requires --epsilon")
    elif command == "sweep-dlr":
        eps = INSET_EPSILONS
    elif command == "preset-hom":
        eps = HOM_EPSILONS
    else:
        eps = ()
    if command == "point" and len(eps) != 1:
        raise UsageError("point takes a single --epsilon value")
    kwargs["epsilon"] = tuple(float(e) for e in eps)
    return RunConfig(**kwargs)


def parse_config(args: Sequence[str], config_file: str | None = None) -> RunConfig:
    """Turn command-line arguments (and an optional config file) into a :class:`RunConfig`.

    Raises :class:`UsageError` on bad values or flag combinations; argparse
    itself exits with status 2 on unknown flags.
    """
    ns = vars(_build_parser().parse_args(list(args)))
    command = ns.pop("command")
    path = ns.pop("config", None) or config_file
    file_values = read_config_file(path) if path else {}
    return _resolve(command, ns, file_values)


def evaluate(config: RunConfig) -> list[SweepPoint]:
    stats = config.statistics
    if config.command == "point":
        return [evaluate_point(SplitterGeometry.balanced(config.gamma_fraction), config.epsilon[0], stats)]
    if config.command == "preset-hom":
        return [evaluate_point(SplitterGeometry.balanced(1.0), e, stats) for e in config.epsilon]
    if config.command == "sweep-epsilon":
        return epsilon_sweep(config.gamma_fraction, stats, epsilon_grid(config.grid_size))
    return dlr_sweep(config.epsilon, stats, dlr_grid(config.grid_size))


def point_record(p: SweepPoint) -> dict:
    rec = {
        "theta": p.theta,
        "eta": p.eta,
        "epsilon": p.params.epsilon,
        "delta": p.params.delta,
        "d_lr": p.params.d_lr,
        "d_rl": p.params.d_rl,
        "gamma": p.params.gamma,
    }
    if p.pipeline is not None:
        rec.update(p.pipeline.as_dict())
    else:
        rec.update(t=p.rate, c_d=None, p_d=None, s_d=None, residual=None)
    rec["oracle_delta_max"] = p.oracle_delta_max
    rec["status"] = p.status
    rec["oracle"] = p.oracle.as_dict() if p.oracle is not None else None
    return rec


def _num(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".17g")


def _json_value(x) -> str:
    if x is None or isinstance(x, (str, bool)):
        return json.dumps(x)
    if isinstance(x, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in x.items()) + "}"
    return _num(x)


def render(points: Sequence[SweepPoint], config: RunConfig) -> str:
    records = [point_record(p) for p in points]
    out = io.StringIO()
    if config.output_format == "json":
        out.write("[\n")
        out.write(",\n".join("  " + _json_value(r) for r in records))
        out.write("\n]\n")
        return out.getvalue()
    out.write(f"# physent {__version__} {config.echo()}\n")
    out.write(",".join(CSV_COLUMNS) + "\n")
    for r in records:
        out.write(",".join(r[c] if c == "status" else _num(r[c]) for c in CSV_COLUMNS) + "\n")
    return out.getvalue()


def summarize(points: Sequence[SweepPoint]) -> str:
    ok = [p for p in points if p.ok]
    lines = [f"{len(points)} points: {len(ok)} ok, {len(points) - len(ok)} no_coincidences"]
    if ok:
        res = max(abs(p.pipeline.residual) for p in ok)
        delta = max(p.oracle_delta_max for p in ok)
        lines.append(f"max |complementarity residual| {res:.2e}, max |rho_d - closed form| {delta:.2e}")
    if len(points) == 1 and ok:
        m = ok[0].pipeline
        lines.append(f"T={m.t:.12g} C_d={m.c_d:.12g} P_d={m.p_d:.12g} S_d={m.s_d:.12g}")
    return "\n".join(lines)


def run(config: RunConfig, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        points = evaluate(config)
    except PhysentError as exc:
        print(f"physent: error: {exc}", file=stderr)
        return EXIT_USAGE
    text = render(points, config)
    if config.output_path is None:
        stdout.write(text)
    else:
        try:
            with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"physent: error: cannot write {config.output_path}: {exc.strerror}", file=stderr)
            return EXIT_IO
    print(summarize(points), file=stderr)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        config = parse_config(argv)
    except UsageError as exc:
        print(f"physent: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
