"""Command-line interface: body configs in, CSV/JSON out.

Exit status: 0 on success, 1 on argument/config/domain errors, 2 when a
quadrature cannot reach its tolerance.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

import numpy as np

from . import certify, fourier, fracderiv, io, radon, sections
from .errors import AccuracyError, ConfigError, SectionTomoError
from .geometry import Direction, make_counterexample_body
from .numerics import DEFAULT_CONFIG
from .selfcheck import run_selfcheck

COMMANDS = ("sections", "fracderiv", "fourier", "certify", "counterexample", "radon", "selfcheck")
NEEDS_BODY = {"sections", "fracderiv", "fourier", "certify", "radon"}


class UsageError(SectionTomoError):
    pass


@dataclass(frozen=True)
class RunSpec:
    command: str
    body_config_path: str | None = None
    output_path: str | None = None
    parameters: dict = field(default_factory=dict)

    def validate(self) -> None:
        p = self.parameters
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.command in NEEDS_BODY and not self.body_config_path:
            raise UsageError(f"{self.command} needs --body")
        if self.command == "sections" and p.get("grid") is None:
            raise UsageError("sections needs --grid lo:hi:step")
        if self.command == "fracderiv" and p.get("q") is None and p.get("grid") is None:
            raise UsageError("fracderiv needs --q or --grid")
        if self.command == "fourier" and (p.get("q") is None) == (p.get("k") is None):
            raise UsageError("fourier needs exactly one of --q and --k")
        if self.command == "counterexample" and p.get("epsilon") is None:
            raise UsageError("counterexample needs --epsilon")
        if self.command == "certify" and p.get("directions", 1) < 1:
            raise UsageError("--directions must be >= 1")


def parse_reals(text: str, flag: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated reals, got {text!r}") from None


def parse_grid(text: str) -> np.ndarray:
    """``lo:hi:step`` with both ends included."""
    parts = text.split(":")
    try:
        lo, hi, step = (float(v) for v in parts)
    except ValueError:
        raise UsageError(f"--grid expects lo:hi:step, got {text!r}") from None
    if step <= 0 or hi < lo:
        raise UsageError("--grid needs step > 0 and hi >= lo")
    count = int(round((hi - lo) / step)) + 1
    return lo + step * np.arange(count)


def _direction(spec: RunSpec, n: int) -> Direction:
    xi = spec.parameters.get("xi")
    if xi is None:
        return Direction.axis(n, n - 1)
    if len(xi) != n:
        raise UsageError(f"--xi has {len(xi)} components, body dimension is {n}")
    return Direction.from_vector(xi)


def _emit(spec: RunSpec, text: str) -> None:
    if spec.output_path:
        io.write_text_atomic(spec.output_path, text)
    else:
        sys.stdout.write(text)


def _run_sections(spec, body):
    xi = spec.parameters.get("xi") or Direction.axis(body.dimension, body.dimension - 1).coordinates.tolist()
    if len(xi) != body.dimension:
        raise UsageError(f"--xi has {len(xi)} components, body dimension is {body.dimension}")
    # A non-unit xi follows the scaling rule A_xi(z) = A_(xi/|xi|)(z/|xi|) / |xi|.
    norm = float(np.linalg.norm(xi))
    if norm == 0:
        raise UsageError("--xi must be non-zero")
    sf = sections.section_function(body, np.asarray(xi) / norm, DEFAULT_CONFIG)
    rows = [(z, float(sf(z / norm)) / norm) for z in spec.parameters["grid"]]
    return io.csv_text(io.SECTION_HEADER, rows)


def _q_values(spec):
    p = spec.parameters
    return list(p["q"]) if p.get("q") is not None else list(p["grid"])


def _run_fracderiv(spec, body):
    sf = sections.section_function(body, _direction(spec, body.dimension), DEFAULT_CONFIG)
    branch = spec.parameters.get("branch", "strip")
    values = [fracderiv.fractional_section_derivative(sf, q, DEFAULT_CONFIG, branch=branch) for q in _q_values(spec)]
    return io.csv_text(io.FRACTIONAL_HEADER, fracderiv.fractional_rows(values))


def _run_fourier(spec, body):
    xi = _direction(spec, body.dimension)
    sf = sections.section_function(body, xi, DEFAULT_CONFIG)
    if spec.parameters.get("k") is not None:
        k = spec.parameters["k"]
        if k % 2:
            values = [fourier.radial_power_ft_odd(body, k, xi, DEFAULT_CONFIG, sf=sf)]
        else:
            values = [fourier.radial_power_ft(body, k, xi, DEFAULT_CONFIG, sf=sf)]
    else:
        values = [fourier.radial_power_ft(body, q, xi, DEFAULT_CONFIG, sf=sf) for q in spec.parameters["q"]]
    return io.csv_text(io.FOURIER_HEADER, fourier.fourier_rows(values))


def _run_certify(spec, body):
    p = spec.parameters
    cert = certify.certify_intersection(body, p.get("directions", 100), DEFAULT_CONFIG, seed=p.get("seed", 0), tol=p.get("tol"))
    return io.json_text(cert.to_dict())


def _run_counterexample(spec, _body):
    p = spec.parameters
    eps = p["epsilon"]
    body = make_counterexample_body(eps)
    parts = certify.bp_integral_parts(eps, DEFAULT_CONFIG)
    cert = certify.certify_intersection(body, p.get("directions", 20), DEFAULT_CONFIG, seed=p.get("seed", 0), tol=p.get("tol"))
    payload = {
        "epsilon": eps,
        "integral": parts["total"],
        "closed_form": parts["total_closed_form"],
        "parts": parts,
        "test_value_e5": certify.intersection_test_value(body, Direction.axis(5, 4), DEFAULT_CONFIG),
        "verdict": cert.verdict,
        "certificate": cert.to_dict(),
    }
    return io.json_text(payload)


def _run_radon(spec, body):
    xi = _direction(spec, body.dimension)
    lhs, rhs = radon.radon_fourier_relation_check(body, xi, DEFAULT_CONFIG)
    payload = {
        "xi": xi.coordinates.tolist(),
        "inverse_radon": radon.inverse_radon_3d(body, xi, DEFAULT_CONFIG),
        "lhs_8pi2_inverse_radon": lhs,
        "rhs_fourier": rhs,
        "body": body.config(),
    }
    return io.json_text(payload)


RUNNERS = {
    "sections": _run_sections,
    "fracderiv": _run_fracderiv,
    "fourier": _run_fourier,
    "certify": _run_certify,
    "counterexample": _run_counterexample,
    "radon": _run_radon,
}


def run(spec: RunSpec) -> int:
    """Execute ``spec``; returns the exit status and reports errors on stderr."""
    try:
        spec.validate()
        if spec.command == "selfcheck":
            results = run_selfcheck(DEFAULT_CONFIG)
            text = "\n".join(c.line() for c in results) + "\n"
            passed = sum(c.passed for c in results)
            text += f"{passed}/{len(results)} checks passed\n"
            _emit(spec, text)
            return 0 if passed == len(results) else 1
        body = io.load_body(spec.body_config_path) if spec.body_config_path else None
        _emit(spec, RUNNERS[spec.command](spec, body))
        return 0
    except AccuracyError as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        key = f" (key {exc.key!r})" if exc.key else ""
        print(f"config error{key}: {exc}", file=sys.stderr)
        return 1
    except SectionTomoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sectiontomo", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--body", help="body config (YAML or JSON)")
    parser.add_argument("--xi", help="direction as comma-separated reals (default: last axis)")
    parser.add_argument("--q", help="order(s), comma-separated")
    parser.add_argument("--k", type=int, help="integer order")
    parser.add_argument("--epsilon", type=float, help="quartic-body parameter in (0, 1)")
    parser.add_argument("--grid", help="lo:hi:step (z for sections, q for fracderiv)")
    parser.add_argument("--directions", type=int, help="random directions to probe")
    parser.add_argument("--branch", choices=("strip", "general"), default="strip")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--tol", type=float, help="certificate tolerance")
    parser.add_argument("--seed", type=int, default=0, help="direction-sampling seed")
    return parser


def spec_from_args(args: argparse.Namespace) -> RunSpec:
    params: dict = {"seed": args.seed, "branch": args.branch}
    if args.xi is not None:
        params["xi"] = parse_reals(args.xi, "--xi")
    if args.q is not None:
        params["q"] = parse_reals(args.q, "--q")
    if args.grid is not None:
        params["grid"] = parse_grid(args.grid)
    for name in ("k", "epsilon", "directions", "tol"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    return RunSpec(args.command, args.body, args.out, params)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = spec_from_args(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
