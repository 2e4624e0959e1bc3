"""Command-line front end.

Subcommands: lattice-check, parse, eval, interference, nogo, scan, super.
Every run produces a verdict line plus a body, or the same facts as JSON
with ``--format json``. Exit codes: 0 for pass/consistent, 1 when a check
fails (lattice violations, no-go fails, corners survive a scan), 2 for
usage or input errors. Output is deterministic: identical inputs give
byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import lattice as lattice_mod
from .formula import Atom, Not, ParseError, desugar_xor, parse, render
from .nogo import (
    BindingAtExtreme,
    Certificate,
    GridReport,
    Scenario,
    ScenarioError,
    check_supervaluation,
    run_nogo,
    scan_grid,
)
from .probability import (
    InterferenceInputs,
    MissingEntry,
    OutOfRange,
    amplitude_interference,
    interference_term,
)
from .valuation import (
    UNDEFINED,
    InadmissibleValue,
    InfeasibleFrozen,
    TruthFunction,
    UnboundAtom,
    ValueSystem,
    evaluate_degrees,
    evaluate_lattice,
    evaluate_supervaluation,
    formula_element,
)

__all__ = ["Report", "dispatch", "main", "UsageError"]


class UsageError(Exception):
    """Bad flags or malformed option values."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class Report:
    verdict: str
    body: str
    payload: dict
    exit_code: int
    format: str = "text"

    def render(self) -> str:
        if self.format == "json":
            return json.dumps(self.payload, indent=2)
        if self.body:
            return f"{self.verdict}\n{self.body}"
        return self.verdict


def _fraction(text: str, what: str = "value") -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read {what} {text!r} as an exact rational") from None


def _fmt(value) -> str:
    if value is UNDEFINED:
        return "undefined"
    if value is None:
        return "unconstrained"
    return str(value)


def _jsonable(value):
    if value is UNDEFINED:
        return "undefined"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _parse_pairs(text: str, what: str) -> list[tuple[str, str]]:
    pairs = []
    seen = set()
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise UsageError(f"{what} entry {chunk!r} is not of the form name=value")
        key, _, val = chunk.partition("=")
        key, val = key.strip(), val.strip()
        if not key or not val:
            raise UsageError(f"{what} entry {chunk!r} is not of the form name=value")
        if key in seen:
            raise UsageError(f"{what} assigns {key!r} twice")
        seen.add(key)
        pairs.append((key, val))
    if not pairs:
        raise UsageError(f"{what} is empty")
    return pairs


def _amplitude(text: str, what: str) -> tuple[Fraction, Fraction]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"{what} must be re,im")
    return (_fraction(parts[0], what), _fraction(parts[1], what))


def _resolve_lattice(ref: str) -> lattice_mod.Lattice:
    if ref.startswith("builtin:"):
        parts = ref.split(":")
        if len(parts) != 3:
            raise UsageError("builtin lattice reference must be builtin:family:n")
        try:
            n = int(parts[2])
        except ValueError:
            raise UsageError(f"builtin size {parts[2]!r} is not an integer") from None
        return lattice_mod.builtin(parts[1], n)
    return lattice_mod.load(ref)


def _interference_from_args(ns) -> InterferenceInputs:
    direct = [ns.p_or, ns.p1, ns.p2]
    if any(v is not None for v in direct):
        if not all(v is not None for v in direct):
            raise UsageError("give all of --p-or, --p1, --p2 or none")
        return InterferenceInputs(
            _fraction(ns.p_or, "--p-or"),
            _fraction(ns.p1, "--p1"),
            _fraction(ns.p2, "--p2"),
        )
    return amplitude_interference(
        _amplitude(ns.amp1, "--amp1"), _amplitude(ns.amp2, "--amp2")
    )


def _scenario_from_args(ns) -> Scenario:
    lattice = _resolve_lattice(ns.lattice)
    binding = _parse_pairs(ns.bind, "--bind")
    if len(binding) != 2:
        raise UsageError("--bind must name exactly two atoms")
    inputs = _interference_from_args(ns)
    return Scenario.build(
        lattice,
        binding,
        inputs,
        equal_priors=ns.equal_priors,
        allow_degenerate=ns.allow_degenerate,
    )


# ---------------------------------------------------------------- handlers


def _cmd_lattice_check(ns) -> Report:
    lat = _resolve_lattice(ns.lattice_ref)
    violations = lattice_mod.verify_axioms(lat)
    if violations:
        verdict = f"{len(violations)} lattice law violation(s)"
        body = "\n".join(f"  {v}" for v in violations)
        code = 1
    else:
        verdict = f"ok: all lattice laws hold ({lat.describe()})"
        body = ""
        code = 0
    payload = {
        "command": "lattice-check",
        "verdict": verdict,
        "elements": list(lat.elements),
        "bottom": lat.bottom,
        "top": lat.top,
        "violations": [
            {"law": v.law, "elements": list(v.elements), "message": v.message}
            for v in violations
        ],
    }
    return Report(verdict, body, payload, code, ns.format)


def _tree_lines(f, depth: int = 0) -> list[str]:
    pad = "  " * depth
    if isinstance(f, Atom):
        return [f"{pad}Atom {f.name}"]
    if isinstance(f, Not):
        return [f"{pad}Not"] + _tree_lines(f.child, depth + 1)
    label = type(f).__name__
    return [f"{pad}{label}"] + _tree_lines(f.left, depth + 1) + _tree_lines(f.right, depth + 1)


def _tree_payload(f):
    if isinstance(f, Atom):
        return {"node": "Atom", "name": f.name}
    if isinstance(f, Not):
        return {"node": "Not", "child": _tree_payload(f.child)}
    return {
        "node": type(f).__name__,
        "left": _tree_payload(f.left),
        "right": _tree_payload(f.right),
    }


def _cmd_parse(ns) -> Report:
    f = parse(ns.text)
    desugared = desugar_xor(f)
    body_lines = _tree_lines(f)
    body_lines.append(f"desugared: {render(desugared)}")
    verdict = f"ok: {render(f)}"
    payload = {
        "command": "parse",
        "verdict": verdict,
        "formula": render(f),
        "tree": _tree_payload(f),
        "desugared": render(desugared),
    }
    return Report(verdict, "\n".join(body_lines), payload, 0, ns.format)


def _cmd_eval(ns) -> Report:
    f = parse(ns.formula)
    assigns = _parse_pairs(ns.assign, "--assign")
    element = None
    if ns.mode == "lukasiewicz":
        atom_values = {k: _fraction(v, f"value for {k}") for k, v in assigns}
        value = evaluate_degrees(f, atom_values)
    else:
        if ns.lattice is None:
            raise UsageError(f"--mode {ns.mode} needs --lattice")
        lat = _resolve_lattice(ns.lattice)
        binding = dict(assigns)
        element = formula_element(f, binding, lat)
        if ns.mode == "super":
            value = evaluate_supervaluation(f, binding, lat)
        else:
            entries = dict(_parse_pairs(ns.values, "--values")) if ns.values else {}
            tf_values: dict[str, object] = {
                lat.bottom: Fraction(0),
                lat.top: Fraction(1),
            }
            for el, raw in entries.items():
                tf_values[el] = (
                    UNDEFINED if raw == "undefined" else _fraction(raw, f"value for {el}")
                )
            missing = [e for e in lat.elements if e not in tf_values]
            if missing:
                raise UsageError(
                    "--mode lattice needs --values entries for " + ", ".join(missing)
                )
            tf = TruthFunction(lat, tf_values)
            value = evaluate_lattice(f, binding, tf)
    verdict = f"value: {_fmt(value)}"
    body = f"element: {element}" if element is not None else ""
    payload = {
        "command": "eval",
        "verdict": verdict,
        "mode": ns.mode,
        "formula": render(f),
        "value": _jsonable(value),
    }
    if element is not None:
        payload["element"] = element
    return Report(verdict, body, payload, 0, ns.format)


def _cmd_interference(ns) -> Report:
    inputs = _interference_from_args(ns)
    term = interference_term(inputs)
    verdict = f"I12 = {term}"
    body = f"p_or = {inputs.p_or}; p1 = {inputs.p1}; p2 = {inputs.p2}"
    payload = {
        "command": "interference",
        "verdict": verdict,
        "p_or": _jsonable(inputs.p_or),
        "p1": _jsonable(inputs.p1),
        "p2": _jsonable(inputs.p2),
        "i12": _jsonable(term),
    }
    return Report(verdict, body, payload, 0, ns.format)


def _assignment_text(assignment) -> str:
    return "(" + ", ".join(f"{a}={_fmt(v)}" for a, v in assignment) + ")"


def _result_line(result) -> str:
    if result.violation is None:
        return f"{_assignment_text(result.assignment)} -> consistent"
    v = result.violation
    line = f"{_assignment_text(result.assignment)} -> violates {v.constraint}"
    if v.also_violates:
        line += f" (also: {', '.join(v.also_violates)})"
    return line


def _violation_payload(violation) -> dict | None:
    if violation is None:
        return None
    return {
        "constraint": violation.constraint,
        "also_violates": list(violation.also_violates),
        "assignment": {a: _jsonable(v) for a, v in violation.assignment},
        "trace": [
            {
                "rule": s.rule,
                "operands": _jsonable(s.operands),
                "result": _jsonable(s.result),
                "note": s.note,
            }
            for s in violation.trace
        ],
    }


def _scenario_lines(scenario: Scenario) -> list[str]:
    inp = scenario.interference
    return [
        f"lattice: {scenario.lattice.describe()}",
        "binding: " + ", ".join(f"{a}={e}" for a, e in scenario.binding),
        (
            f"observed: P[R|both]={inp.p_or}, P[R|path1]={inp.p1}, "
            f"P[R|path2]={inp.p2}, I12={scenario.observed_interference()}"
        ),
        f"equal priors: {'yes' if scenario.equal_priors else 'no'}",
    ]


def _scenario_payload(scenario: Scenario) -> dict:
    return {
        "lattice": {
            "elements": list(scenario.lattice.elements),
            "bottom": scenario.lattice.bottom,
            "top": scenario.lattice.top,
        },
        "binding": {a: e for a, e in scenario.binding},
        "interference": {
            "p_or": _jsonable(scenario.interference.p_or),
            "p1": _jsonable(scenario.interference.p1),
            "p2": _jsonable(scenario.interference.p2),
            "i12": _jsonable(scenario.observed_interference()),
        },
        "equal_priors": scenario.equal_priors,
    }


def _certificate_body(cert: Certificate) -> str:
    lines = _scenario_lines(cert.scenario)
    lines.append("")
    lines.append(f"corner assignments ({len(cert.corner_results)}):")
    for r in cert.corner_results:
        lines.append(f"  {_result_line(r)}")
    lines.append("")
    lines.append(f"bivalent truth functions ({len(cert.function_results)}):")
    for fr in cert.function_results:
        tf_text = "{" + ", ".join(f"{e}={_fmt(v)}" for e, v in fr.function_values) + "}"
        lines.append(f"  {tf_text} -> {_result_line(fr.result)}")
    lines.append("")
    lines.append("derivation traces:")
    for r in cert.corner_results:
        lines.append(f"  {_result_line(r)}")
        if r.violation:
            for step in r.violation.trace:
                lines.append(f"    {step}")
    return "\n".join(lines)


def _certificate_payload(cert: Certificate) -> dict:
    return {
        "command": "nogo",
        "verdict": cert.verdict,
        "scenario": _scenario_payload(cert.scenario),
        "enumerated": cert.enumerated,
        "corners": [
            {
                "assignment": {a: _jsonable(v) for a, v in r.assignment},
                "violation": _violation_payload(r.violation),
            }
            for r in cert.corner_results
        ],
        "truth_functions": [
            {
                "values": {e: _jsonable(v) for e, v in fr.function_values},
                "assignment": {a: _jsonable(v) for a, v in fr.result.assignment},
                "violation": _violation_payload(fr.result.violation),
            }
            for fr in cert.function_results
        ],
    }


def _cmd_nogo(ns) -> Report:
    scenario = _scenario_from_args(ns)
    cert = run_nogo(scenario)
    body = _certificate_body(cert)
    return Report(
        cert.verdict,
        body,
        _certificate_payload(cert),
        0 if cert.holds else 1,
        ns.format,
    )


def _grid_body(report: GridReport) -> str:
    lines = _scenario_lines(report.scenario)
    values = ", ".join(_fmt(v) for v in report.value_system.scan_values())
    lines.append(f"value system: {report.value_system.kind} over {{{values}}}")
    violated = report.violated_pairs()
    consistent = report.consistent_pairs()
    lines.append(
        f"assignments checked: {len(report.results)}; "
        f"violated: {len(violated)}; consistent: {len(consistent)}"
    )
    corner_text = "; ".join(
        f"({_fmt(r.values[0])}, {_fmt(r.values[1])}) -> "
        + (r.violation.constraint if r.violation else "consistent")
        for r in report.corner_results()
    )
    lines.append(f"corners: {corner_text}")
    lines.append(
        "consistent: "
        + (
            ", ".join(f"({_fmt(a)}, {_fmt(b)})" for a, b in consistent)
            if consistent
            else "none"
        )
    )
    lines.append("table:")
    for r in report.results:
        lines.append(f"  {_result_line(r)}")
    return "\n".join(lines)


def _cmd_scan(ns) -> Report:
    if ns.values is not None and ns.denominator is not None:
        raise UsageError("give --values or --denominator, not both")
    if ns.values is not None:
        system = ValueSystem.finite(ns.values)
    else:
        system = ValueSystem.infinite(ns.denominator if ns.denominator is not None else 10)
    scenario = _scenario_from_args(ns)
    report = scan_grid(scenario, system)
    corner_results = report.corner_results()
    corners_violated = sum(1 for r in corner_results if r.violation)
    consistent = report.consistent_pairs()
    verdict = (
        f"corners violated: {corners_violated}/{len(corner_results)}; "
        f"consistent: {len(consistent)}/{len(report.results)}"
    )
    payload = {
        "command": "scan",
        "verdict": verdict,
        "scenario": _scenario_payload(scenario),
        "value_system": report.value_system.kind,
        "values": _jsonable(report.value_system.scan_values()),
        "results": [
            {
                "assignment": {a: _jsonable(v) for a, v in r.assignment},
                "violation": _violation_payload(r.violation),
            }
            for r in report.results
        ],
        "consistent": [_jsonable(pair) for pair in consistent],
        "corners": {
            f"({_fmt(r.values[0])}, {_fmt(r.values[1])})": (
                r.violation.constraint if r.violation else "consistent"
            )
            for r in corner_results
        },
    }
    code = 0 if corners_violated == len(corner_results) else 1
    return Report(verdict, _grid_body(report), payload, code, ns.format)


def _cmd_super(ns) -> Report:
    scenario = _scenario_from_args(ns)
    report = check_supervaluation(scenario)
    verdict = "supervaluation consistent" if report.consistent else "supervaluation inconsistent"
    lines = ["binding: " + ", ".join(f"{a}={e}" for a, e in scenario.binding)]
    for atom, value in report.atom_values:
        lines.append(f"{atom} -> {_fmt(value)}")
    lines.append(f"compound reduces to element: {report.compound_element}")
    lines.append(f"compound value: {_fmt(report.compound_value)}")
    lines.append(f"bridges fired: {'yes' if report.bridges_fired else 'no'}")
    payload = {
        "command": "super",
        "verdict": verdict,
        "scenario": _scenario_payload(scenario),
        "atoms": {a: _jsonable(v) for a, v in report.atom_values},
        "compound_element": report.compound_element,
        "compound_value": _jsonable(report.compound_value),
        "bridges_fired": report.bridges_fired,
        "consistent": report.consistent,
    }
    return Report(verdict, "\n".join(lines), payload, 0 if report.consistent else 1, ns.format)


# ---------------------------------------------------------------- parser


def _add_format(p) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")


def _add_scenario_args(p) -> None:
    p.add_argument("--lattice", default="builtin:boolean:2")
    p.add_argument("--bind", default="X1=a,X2=b", help="atom=element pairs, e.g. X1=a,X2=b")
    p.add_argument("--amp1", default="1/2,1/2", help="path 1 amplitude as re,im")
    p.add_argument("--amp2", default="1/2,1/2", help="path 2 amplitude as re,im")
    p.add_argument("--p-or", dest="p_or", default=None, help="P[R|both paths open]")
    p.add_argument("--p1", default=None, help="P[R|path 1]")
    p.add_argument("--p2", default=None, help="P[R|path 2]")
    p.add_argument("--equal-priors", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--allow-degenerate", action="store_true",
                   help="accept a scenario with zero interference")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="slitlogic", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)

    p = sub.add_parser("lattice-check", help="verify every lattice law of a lattice file")
    p.add_argument("lattice_ref", help="lattice file path or builtin:family:n")
    _add_format(p)
    p.set_defaults(func=_cmd_lattice_check)

    p = sub.add_parser("parse", help="echo a formula as a tree plus its desugared form")
    p.add_argument("text")
    _add_format(p)
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("eval", help="evaluate a formula under one of the semantics")
    p.add_argument("--formula", required=True)
    p.add_argument("--mode", choices=("lattice", "lukasiewicz", "super"), required=True)
    p.add_argument("--lattice", default=None)
    p.add_argument("--assign", required=True,
                   help="atom=element (lattice/super) or atom=value (lukasiewicz) pairs")
    p.add_argument("--values", default=None,
                   help="element=value truth-function entries for --mode lattice")
    _add_format(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("interference", help="compute the two-path interference term")
    p.add_argument("--p-or", dest="p_or", default=None)
    p.add_argument("--p1", default=None)
    p.add_argument("--p2", default=None)
    p.add_argument("--amp1", default="1/2,1/2")
    p.add_argument("--amp2", default="1/2,1/2")
    _add_format(p)
    p.set_defaults(func=_cmd_interference)

    p = sub.add_parser("nogo", help="certify all bivalent assignments of a scenario")
    _add_scenario_args(p)
    _add_format(p)
    p.set_defaults(func=_cmd_nogo)

    p = sub.add_parser("scan", help="sweep every admissible value pair of a grid")
    p.add_argument("--values", type=int, default=None,
                   help="finite system with N equally spaced values")
    p.add_argument("--denominator", type=int, default=None,
                   help="rational grid k/d standing in for the unit interval")
    _add_scenario_args(p)
    _add_format(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("super", help="evaluate the scenario with no-value atoms")
    _add_scenario_args(p)
    _add_format(p)
    p.set_defaults(func=_cmd_super)

    return parser


_INPUT_ERRORS = (
    UsageError,
    ParseError,
    lattice_mod.LatticeError,
    UnboundAtom,
    InfeasibleFrozen,
    InadmissibleValue,
    ScenarioError,
    BindingAtExtreme,
    MissingEntry,
    OutOfRange,
    ValueError,
    TypeError,
    OSError,
    json.JSONDecodeError,
)


def dispatch(argv: Sequence[str]) -> Report:
    """Route argv to a subcommand; every failure becomes an exit-2 report."""
    parser = build_parser()
    fmt = "json" if "--format" in argv and "json" in argv else "text"
    try:
        ns = parser.parse_args(list(argv))
        if getattr(ns, "command", None) is None:
            raise UsageError("a subcommand is required (see --help)")
        return ns.func(ns)
    except _INPUT_ERRORS as exc:
        message = str(exc) or type(exc).__name__
        verdict = f"error: {message}"
        return Report(verdict, "", {"verdict": verdict, "error": message}, 2, fmt)


def main(argv: Sequence[str] | None = None) -> int:
    report = dispatch(sys.argv[1:] if argv is None else list(argv))
    print(report.render())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
