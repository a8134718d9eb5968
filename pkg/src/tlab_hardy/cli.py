"""
Command-line front end.

Every command runs one verification sweep and writes a report, JSON or
CSV, to ``--out`` or standard output. The exit status is suitable for CI:

====  =========================================================
0     every check passed
1     some inequality check failed
2     some computation did not converge or a search hit a fault
64    usage error (bad flag, config file or function spec)
====  =========================================================

Reports contain no timestamps, so the same configuration always produces
the same bytes.
"""
from __future__ import annotations

import argparse
import dataclasses
import enum
import json
import logging
import math
import pathlib
import sys
import typing as t
from collections import abc

import numpy as np

from tlab_hardy import __version__, analytic_fn, errors, extremal, hardy_norms
from tlab_hardy import quadrature, records, singular_quad, toeplitz, utils

logger = logging.getLogger(__name__)

COMMANDS = (
    "constants",
    "verify-hardy",
    "verify-thm1",
    "kernel-sup",
    "toeplitz-check",
    "reconstruct-check",
    "extremal",
)
FORMATS = ("json", "csv")
CORPUS_DEGREES = (1, 2, 4, 8, 16, 32)
CORPUS_PER_DEGREE = 10
LOGFAM_SIZES = (2, 4, 8, 16, 32, 64, 128, 256)
SUBSET_SIZE = 20
RECONSTRUCT_RADIUS = 0.9


class ExitCode(enum.IntEnum):
    OK = 0
    INEQUALITY_FAILURE = 1
    NUMERICS_FAILURE = 2
    USAGE = 64


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """
    One validated invocation of the command-line tool.
    """

    command: str
    specs: tuple[str, ...] = ()
    """Function specs; an empty tuple selects the command's default corpus."""
    eta_grid: int = 64
    theta_grid: int = 128
    tol: float = 1e-8
    """Tolerance of the equality checks (constants, reconstruction)."""
    seed: int = 0
    format: str = "json"
    out: str | None = None
    budget: int = 500
    family: str = "logspan:8"
    objective: str = "hardy"
    points: int = 100
    """Interior points per function of ``reconstruct-check``."""

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        for name in ("eta_grid", "theta_grid", "budget", "points"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.objective not in extremal.OBJECTIVES:
            raise ValueError(f"unknown objective {self.objective!r}")
        extremal.family_from_name(self.family)

    def to_dict(self) -> dict[str, t.Any]:
        """The configuration as reported; the output path is left out."""
        payload = dataclasses.asdict(self)
        payload["specs"] = list(self.specs)
        del payload["out"]
        return payload


def parse_spec(spec: str) -> analytic_fn.TaylorPoly:
    """
    Parses a function spec string.

    >>> parse_spec("poly:1+2j,0,3").coeffs
    ((1+2j), 0j, (3+0j))

    Raises
    ------
    tlab_hardy.errors.SpecError
        If the string is malformed.
    """
    return analytic_fn.from_spec(spec)


def _functions(config: RunConfig) -> list[analytic_fn.TaylorPoly]:
    if config.specs:
        return [parse_spec(s) for s in config.specs]
    members = analytic_fn.corpus(CORPUS_DEGREES, CORPUS_PER_DEGREE, config.seed)
    match config.command:
        case "verify-hardy":
            return members + [analytic_fn.make_log_family(n) for n in LOGFAM_SIZES]
        case "toeplitz-check" | "reconstruct-check":
            return members[:: len(members) // SUBSET_SIZE][:SUBSET_SIZE]
        case _:
            return members


Details = t.Any
Outcome = tuple[list[records.VerifyRecord], Details]


def _equality(
    name: str, result: quadrature.QuadResult, target: float, tol: float
) -> records.VerifyRecord:
    return records.VerifyRecord(
        name, None, abs(float(result.value) - target), tol, converged=result.converged
    )


def _run_constants(config: RunConfig) -> Outcome:
    constant = singular_quad.reference_constant()
    unit = singular_quad.log_ratio_integral(0.0, 1.0)
    series = singular_quad.log_ratio_series()
    outer = singular_quad.log_ratio_integral(1.0, 10.0)
    inner = singular_quad.log_ratio_integral(0.1, 1.0)
    quarter = math.pi**2 / 4
    out = [
        _equality("reference_constant", constant, math.pi, config.tol),
        _equality("log_ratio_integral:0,1", unit, quarter, config.tol),
        _equality("log_ratio_series", series, quarter, config.tol),
        _equality("log_ratio_fold:1,10", outer, float(inner.value), config.tol),
    ]
    details = {
        "reference_constant": float(constant.value),
        "log_ratio_integral": float(unit.value),
        "log_ratio_series": float(series.value),
        "pi": math.pi,
    }
    return out, details


def _run_kernel_sup(config: RunConfig) -> Outcome:
    out = []
    for j in range(1, config.theta_grid + 1):
        theta = math.pi * j / config.theta_grid
        try:
            value = singular_quad.kernel_integral(theta)
        except errors.QuadratureError as e:
            out.append(records.VerifyRecord.failed("kernel", theta, e, math.pi))
            continue
        out.append(
            records.VerifyRecord(
                "kernel", theta, float(value.value), math.pi, value.err_est
            )
        )
    best = max(out, key=lambda r: r.lhs)
    return out, {"max": best.lhs, "argmax": best.eta_angle}


def _run_verify_hardy(config: RunConfig) -> Outcome:
    out = []
    for f in _functions(config):
        try:
            out.append(hardy_norms.verify_hardy(f))
        except errors.QuadratureError as e:
            out.append(records.VerifyRecord.failed(f.spec, None, e))
    return out, None


def _run_verify_thm1(config: RunConfig) -> Outcome:
    grid = analytic_fn.eta_grid(config.eta_grid)
    out = []
    for f in _functions(config):
        try:
            out.extend(singular_quad.verify_theorem1(f, grid))
        except errors.QuadratureError as e:
            out.append(records.VerifyRecord.failed(f.spec, None, e))
    return out, None


def _run_toeplitz_check(config: RunConfig) -> Outcome:
    corpus = toeplitz.default_h_corpus(config.seed)
    out = []
    details = []
    for f in _functions(config):
        try:
            bound = toeplitz.operator_bound(f)
            checks = toeplitz.verify_theorem2(f, corpus)
        except errors.QuadratureError as e:
            out.append(records.VerifyRecord.failed(f.spec, None, e))
            continue
        lower, witness = toeplitz.norm_witness(f, corpus)
        out.extend(checks)
        out.append(records.VerifyRecord(f"{f.spec}|lower_bound", None, lower, bound))
        details.append(
            {
                "f": f.spec,
                "bound": bound,
                "empirical_lb": lower,
                "witness_h": witness.spec,
            }
        )
    return out, details


def _run_reconstruct_check(config: RunConfig) -> Outcome:
    rng = np.random.default_rng(config.seed)
    out = []
    for f in _functions(config):
        radii = RECONSTRUCT_RADIUS * np.sqrt(rng.random(config.points))
        angles = 2.0 * math.pi * rng.random(config.points)
        for z in radii * np.exp(1j * angles):
            try:
                value = singular_quad.reconstruct(f, complex(z))
            except errors.QuadratureError as e:
                out.append(records.VerifyRecord.failed(f.spec, None, e, config.tol))
                continue
            error = abs(value - analytic_fn.eval(f, complex(z)))
            out.append(records.VerifyRecord(f.spec, None, error, config.tol))
    return out, None


def _run_extremal(config: RunConfig) -> Outcome:
    family = extremal.family_from_name(config.family)
    cfg = extremal.SearchConfig(
        budget=config.budget, seed=config.seed, eta_grid=config.eta_grid
    )
    state = extremal.search(family, config.objective, cfg)
    accepted = math.isfinite(state.objective)
    record = records.VerifyRecord(
        f"{family.name}/{config.objective}",
        None,
        state.objective if accepted else math.nan,
        extremal.CEILING * (1 + extremal.CEILING_RTOL),
        converged=accepted and not state.fault,
    )
    return [record], state.to_dict()


_RUNNERS: dict[str, abc.Callable[[RunConfig], Outcome]] = {
    "constants": _run_constants,
    "kernel-sup": _run_kernel_sup,
    "verify-hardy": _run_verify_hardy,
    "verify-thm1": _run_verify_thm1,
    "toeplitz-check": _run_toeplitz_check,
    "reconstruct-check": _run_reconstruct_check,
    "extremal": _run_extremal,
}


def build_report(
    config: RunConfig, out: list[records.VerifyRecord], details: Details
) -> dict[str, t.Any]:
    return {
        "command": config.command,
        "config": config.to_dict(),
        "records": [r.to_dict() for r in out],
        "summary": {
            "total": len(out),
            "passed": sum(r.passed for r in out),
            "unconverged": sum(not r.converged for r in out),
            "max_violation": max(
                (r.violation for r in out if r.converged), default=0.0
            ),
        },
        "details": details,
    }


def render(
    config: RunConfig, out: list[records.VerifyRecord], details: Details
) -> str:
    if config.format == "csv":
        return utils.dump_csv(records.CSV_HEADER, (r.to_dict() for r in out))
    return utils.dump_json(build_report(config, out, details))


def exit_code(out: abc.Sequence[records.VerifyRecord]) -> ExitCode:
    """
    Numerics failures take precedence over inequality failures.
    """
    if any(not r.converged for r in out):
        return ExitCode.NUMERICS_FAILURE
    if any(not r.passed for r in out):
        return ExitCode.INEQUALITY_FAILURE
    return ExitCode.OK


def _spec_diagnostic(error: errors.SpecError) -> str:
    return f"{error}\n  {error.spec}\n  {' ' * error.position}^"


def run(config: RunConfig) -> ExitCode:
    """
    Executes one command and writes its report.

    Returns
    -------
    tlab_hardy.cli.ExitCode
        The exit status. A malformed spec gives `ExitCode.USAGE` before any
        computation, and no report is written.
    """
    try:
        for spec in config.specs:
            parse_spec(spec)
    except errors.SpecError as e:
        logger.error("%s", _spec_diagnostic(e))
        return ExitCode.USAGE
    logger.info("running %s", config.command)
    try:
        out, details = _RUNNERS[config.command](config)
    except errors.QuadratureError as e:
        out, details = [records.VerifyRecord.failed(config.command, None, e)], None
    text = render(config, out, details)
    if config.out is None:
        sys.stdout.write(text)
    else:
        pathlib.Path(config.out).write_text(text, encoding="utf-8")
    code = exit_code(out)
    passed = sum(r.passed for r in out)
    logger.info("%s: %d/%d passed, exit %d", config.command, passed, len(out), code)
    return code


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> t.NoReturn:
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tlab-hardy", description="Hardy-space inequality checks.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument(
        "--spec", dest="specs", action="append", help="function spec (repeatable)"
    )
    parser.add_argument("--eta-grid", type=int, help="number of rotations η")
    parser.add_argument("--theta-grid", type=int, help="number of kernel angles")
    parser.add_argument("--tol", type=float, help="tolerance of equality checks")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("--out", help="report path (default: standard output)")
    parser.add_argument("--budget", type=int, help="objective evaluations of a search")
    parser.add_argument(
        "--family", help="search family: monomial:P,..., logspan:N or free:D"
    )
    parser.add_argument("--objective", choices=extremal.OBJECTIVES)
    parser.add_argument("--points", type=int, help="interior points per function")
    parser.add_argument("--config", help="flat JSON file of defaults for the flags")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("-q", "--quiet", action="count", default=0)
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    return parser


def load_config_file(path: str) -> dict[str, t.Any]:
    """
    Reads a flat JSON object whose keys are flag names.

    Dashes and underscores are interchangeable, and ``spec`` may be given
    for ``specs``.

    Raises
    ------
    ValueError
        If the file is not a JSON object or has unknown keys.
    """
    with open(path, encoding="utf-8") as file:
        payload = json.load(file)
    if not isinstance(payload, dict):
        raise ValueError(f"{path} must hold a JSON object")
    known = {f.name for f in dataclasses.fields(RunConfig)} - {"command"}
    values = {}
    for key, value in payload.items():
        name = key.replace("-", "_")
        name = "specs" if name == "spec" else name
        if name not in known:
            raise ValueError(f"unknown key {key!r} in {path}")
        values[name] = value
    if isinstance(values.get("specs"), str):
        values["specs"] = [values["specs"]]
    return values


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    Merges defaults, the config file and explicit flags, in that order.
    """
    values: dict[str, t.Any] = {}
    if args.config is not None:
        values.update(load_config_file(args.config))
    for field in dataclasses.fields(RunConfig):
        flag = getattr(args, field.name, None)
        if flag is not None:
            values[field.name] = flag
    values["command"] = args.command
    if "specs" in values:
        values["specs"] = tuple(values["specs"])
    return RunConfig(**values)


def main(argv: abc.Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * args.verbose + 10 * args.quiet,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = config_from_args(args)
    except (OSError, ValueError, TypeError) as e:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return ExitCode.USAGE
    return int(run(config))
