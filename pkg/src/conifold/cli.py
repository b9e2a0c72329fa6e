"""Command-line front end.

Exit codes: 0 success, 1 hypothesis violated (origin not strictly inside the
Newton polytope), 2 input or parse error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .errors import ConifoldError, HypothesisViolated, InputError, NoCertificate, NumericalError
from .laurent import from_json, parse_polynomial, to_json, to_text
from .moments import dk_report, growth_estimate, moment_sequence, moments_csv
from .polytope import nonvanishing_certificate, validate_support
from .solver import SolverOptions, find_conifold_point
from .toric import builtin_fan, load_fan, potential_from_fan, toric_report

EXIT_OK, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3

log = logging.getLogger("conifold")


def _common(parser):
    parser.add_argument("--poly", help="polynomial text, e.g. 'x1 + x1^-1'")
    parser.add_argument("--poly-file", help="file with polynomial text or JSON")
    parser.add_argument("--tol", type=float, default=1e-10, help="gradient tolerance")
    parser.add_argument("--max-iter", type=int, default=200)
    parser.add_argument("--kmax", type=int, default=None, help="compute moments up to this k")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conifold",
        description="Conifold point, critical value and moment growth of positive Laurent polynomials.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("analyze", help="full report for a polynomial"))
    _common(sub.add_parser("validate", help="Newton polytope hypothesis check only"))
    p = sub.add_parser("moments", help="exact moment sequence and growth estimate")
    _common(p)
    p.add_argument("--csv", metavar="PATH", help="also write k,M_k as CSV")
    p = sub.add_parser("toric", help="toric Fano potential from a fan")
    _common(p)
    p.add_argument("--fan", help="builtin fan name (P1..P4, P1xP1, P1xP2, dP7, dP6, dP5, hexagon)")
    p.add_argument("--fan-file", help='fan JSON {"d": int, "rays": [[int,...],...]}')
    p.add_argument("--moments", type=int, default=None, metavar="KMAX",
                   help="compare moment growth with T up to KMAX")
    return parser


def _read_polynomial(args):
    if (args.poly is None) == (args.poly_file is None):
        raise InputError("give exactly one of --poly or --poly-file")
    if args.poly is not None:
        return parse_polynomial(args.poly)
    try:
        with open(args.poly_file, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.poly_file}: {exc}") from exc
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON in {args.poly_file}: {exc}") from exc
        return from_json(doc)
    return parse_polynomial(text)


def _options(args):
    try:
        return SolverOptions(gradient_tolerance=args.tol, max_iterations=args.max_iter)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _moments_block(W, kmax, critical_value=None):
    seq = moment_sequence(W, kmax)
    doc = {"sequence": seq.to_json()}
    if len(seq.support) >= 10:
        doc["growth_estimate"] = growth_estimate(seq)
        if critical_value is not None:
            doc["dk"] = dk_report(W, kmax, seq=seq, critical_value=critical_value).to_json()
    return seq, doc


def _cmd_validate(args):
    W = _read_polynomial(args)
    validation = validate_support(W)
    doc = {
        "tool_version": __version__,
        "input_echo": to_text(W),
        "validation": validation.to_json(),
    }
    if validation.origin_interior:
        weights, period = nonvanishing_certificate(validation)
        doc["nonvanishing"] = {
            "weights": [{"e": list(e), "m": m} for e, m in weights.items()],
            "period": period,
        }
    return doc, EXIT_OK if validation.origin_interior else EXIT_HYPOTHESIS


def _cmd_analyze(args):
    W = _read_polynomial(args)
    validation = validate_support(W)
    doc = {
        "tool_version": __version__,
        "input_echo": to_text(W),
        "input": to_json(W),
        "validation": validation.to_json(),
    }
    if not validation.origin_interior:
        return doc, EXIT_HYPOTHESIS
    report = find_conifold_point(W, _options(args), validation=validation)
    doc["conifold"] = report.to_json()
    doc["radius_of_convergence"] = 1.0 / report.critical_value
    if args.kmax is not None:
        _, block = _moments_block(W, args.kmax, report.critical_value)
        doc["moments"] = block.pop("sequence")
        doc.update(block)
    return doc, EXIT_OK


def _cmd_moments(args):
    W = _read_polynomial(args)
    kmax = 100 if args.kmax is None else args.kmax
    if kmax < 0:
        raise InputError("--kmax must be non-negative")
    validation = validate_support(W)
    T = None
    if validation.origin_interior:
        T = find_conifold_point(W, _options(args), validation=validation).critical_value
    seq, block = _moments_block(W, kmax, T)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as f:
            f.write(moments_csv(seq))
    doc = {
        "tool_version": __version__,
        "input_echo": to_text(W),
        "origin_interior": validation.origin_interior,
        "moments": block.pop("sequence"),
    }
    doc.update(block)
    return doc, EXIT_OK


def _cmd_toric(args):
    if (args.fan is None) == (args.fan_file is None):
        raise InputError("give exactly one of --fan or --fan-file")
    if args.fan is not None:
        fan = builtin_fan(args.fan)
    else:
        try:
            fan = load_fan(args.fan_file)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read fan file: {exc}") from exc
    W = potential_from_fan(fan)
    report = toric_report(fan, _options(args))
    doc = {
        "tool_version": __version__,
        "fan": fan.to_json(),
        "input_echo": to_text(W),
        "toric": report.to_json(),
    }
    kmax = args.moments if args.moments is not None else args.kmax
    if kmax is not None:
        _, block = _moments_block(W, kmax, report.T)
        doc["moments"] = block.pop("sequence")
        doc.update(block)
    return doc, EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "validate": _cmd_validate,
    "moments": _cmd_moments,
    "toric": _cmd_toric,
}


def _text(doc, prefix="") -> list[str]:
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.extend(_text(value, f"{prefix}{key}."))
        elif isinstance(value, list) and len(value) > 12:
            lines.append(f"{prefix}{key}: [{len(value)} entries]")
        else:
            lines.append(f"{prefix}{key}: {json.dumps(value)}")
    return lines


def render(doc, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_text(doc)) + "\n"
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def dispatch(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=stderr)
    try:
        doc, code = _COMMANDS[args.command](args)
    except HypothesisViolated as exc:
        doc = {"tool_version": __version__, "error": str(exc)}
        if exc.validation is not None:
            doc["validation"] = exc.validation.to_json()
        stdout.write(render(doc, args.format))
        print(f"conifold: hypothesis violated: {exc}", file=stderr)
        return EXIT_HYPOTHESIS
    except NoCertificate as exc:
        print(f"conifold: {exc}", file=stderr)
        return EXIT_HYPOTHESIS
    except InputError as exc:
        print(f"conifold: input error: {exc}", file=stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"conifold: numerical failure: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_NUMERICAL
    except ConifoldError as exc:
        print(f"conifold: {exc}", file=stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"conifold: input error: {exc}", file=stderr)
        return EXIT_INPUT
    stdout.write(render(doc, args.format))
    return code


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
