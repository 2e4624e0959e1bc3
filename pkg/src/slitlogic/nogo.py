"""Exhaustive certification of pre-assigned truth values against a
two-path interference scenario.

A scenario fixes a lattice, a binding of the two which-path atoms X1 and X2
to lattice elements, the observed detection probabilities (with a nonzero
interference term), and the equal-priors assumption. Three constraints
govern any assignment of truth values to the atoms before verification:

  C-COLLAPSE  both detectors cannot click: the conjunction must not be true.
  C-TRUE      the exactly-one-path proposition is verified true, so values
              that already make it false are inconsistent.
  C-INT       when the bridge forces all four probabilities (atoms,
              disjunction, conjunction), additivity plus the equal-priors
              split expand the two-path pattern into the even mixture of
              one-path patterns, zeroing the interference term that the
              scenario observed to be nonzero.

``check_assignment`` applies the constraints to one value pair and returns
the first violation with a replayable derivation trace (an assignment can
break several constraints; the rest land in ``also_violates``).
``run_nogo`` certifies the four bivalent corner assignments together with
every bivalent truth function on the scenario lattice, ``scan_grid`` sweeps
a whole value grid, and ``check_supervaluation`` exercises the reading in
which unverified propositions carry no truth value at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .formula import Atom, Formula, Xor
from .lattice import Lattice
from .probability import InterferenceInputs, bridge, interference_term
from .valuation import (
    InadmissibleValue,
    TruthValue,
    ValueSystem,
    as_value,
    enumerate_truth_functions,
    evaluate_supervaluation,
    formula_element,
    lukasiewicz_and,
    lukasiewicz_neg,
    lukasiewicz_or,
)

__all__ = [
    "C_INT",
    "C_COLLAPSE",
    "C_TRUE",
    "CONSTRAINTS",
    "Scenario",
    "TraceStep",
    "Violation",
    "AssignmentResult",
    "FunctionResult",
    "Certificate",
    "GridReport",
    "SupervaluationReport",
    "check_assignment",
    "run_nogo",
    "scan_grid",
    "check_supervaluation",
    "replay_trace",
    "ScenarioError",
    "BindingAtExtreme",
]

C_INT = "C-INT"
C_COLLAPSE = "C-COLLAPSE"
C_TRUE = "C-TRUE"
CONSTRAINTS = (C_INT, C_COLLAPSE, C_TRUE)

# Reporting priority. A double-click both falsifies the compound and breaks
# collapse; collapse is the sharper diagnosis, so it outranks C-TRUE.
_CHECK_ORDER = (C_COLLAPSE, C_TRUE, C_INT)

_ZERO = Fraction(0)
_ONE = Fraction(1)
_HALF = Fraction(1, 2)


class ScenarioError(Exception):
    """Scenario construction rejected (zero interference, bad binding)."""


class BindingAtExtreme(Exception):
    """An atom is bound to the bottom or top element, which always carries
    a truth value; the no-value analysis needs non-extreme bindings."""


@dataclass(frozen=True)
class Scenario:
    """The fixed constraint context for one two-path analysis."""

    lattice: Lattice
    binding: tuple[tuple[str, str], tuple[str, str]]
    formula_x12: Formula
    interference: InterferenceInputs
    equal_priors: bool = True

    @classmethod
    def build(
        cls,
        lattice: Lattice,
        binding: Mapping[str, str] | Iterable[Iterable[str]],
        interference: InterferenceInputs,
        equal_priors: bool = True,
        allow_degenerate: bool = False,
    ) -> "Scenario":
        if isinstance(binding, Mapping):
            items = tuple(binding.items())
        else:
            items = tuple(tuple(pair) for pair in binding)
        if len(items) != 2:
            raise ScenarioError("binding must pair exactly two atoms with elements")
        (a1, e1), (a2, e2) = items
        if a1 == a2:
            raise ScenarioError("the two bound atoms must be distinct")
        lattice.index(e1)
        lattice.index(e2)
        if e1 == e2:
            raise ScenarioError("the two atoms must be bound to distinct elements")
        if not allow_degenerate and interference_term(interference) == 0:
            raise ScenarioError(
                "interference term is zero; the scenario models observed "
                "two-path interference (pass allow_degenerate to override)"
            )
        formula = Xor(Atom(a1), Atom(a2))
        return cls(lattice, (items[0], items[1]), formula, interference, equal_priors)

    @property
    def atom_names(self) -> tuple[str, str]:
        return (self.binding[0][0], self.binding[1][0])

    @property
    def bound_elements(self) -> tuple[str, str]:
        return (self.binding[0][1], self.binding[1][1])

    def binding_map(self) -> dict[str, str]:
        return dict(self.binding)

    def observed_interference(self) -> Fraction:
        return interference_term(self.interference)


@dataclass(frozen=True)
class TraceStep:
    """One derivation step: a named rule applied to exact operands."""

    rule: str
    operands: tuple
    result: object
    note: str = ""

    def __str__(self) -> str:
        ops = ", ".join(str(o) for o in self.operands)
        text = f"{self.rule}({ops}) = {self.result}"
        if self.note:
            text += f"   [{self.note}]"
        return text


@dataclass(frozen=True)
class Violation:
    """A constraint broken by one assignment, with its derivation."""

    constraint: str
    assignment: tuple[tuple[str, TruthValue], ...]
    trace: tuple[TraceStep, ...]
    also_violates: tuple[str, ...] = ()


@dataclass(frozen=True)
class AssignmentResult:
    assignment: tuple[tuple[str, TruthValue], ...]
    violation: Violation | None

    @property
    def consistent(self) -> bool:
        return self.violation is None

    @property
    def values(self) -> tuple[TruthValue, ...]:
        return tuple(v for _, v in self.assignment)


@dataclass(frozen=True)
class FunctionResult:
    """One enumerated truth function and the verdict on its restriction to
    the bound elements."""

    function_values: tuple[tuple[str, TruthValue], ...]
    result: AssignmentResult


@dataclass(frozen=True)
class Certificate:
    """The full no-go record: every checked assignment and its violation."""

    scenario: Scenario
    corner_results: tuple[AssignmentResult, ...]
    function_results: tuple[FunctionResult, ...]
    verdict: str
    enumerated: int

    @property
    def holds(self) -> bool:
        return self.verdict == "no-go holds"


@dataclass(frozen=True)
class GridReport:
    """Outcome of sweeping every admissible value pair of a value system."""

    scenario: Scenario
    value_system: ValueSystem
    results: tuple[AssignmentResult, ...]

    def consistent_pairs(self) -> tuple[tuple[TruthValue, TruthValue], ...]:
        return tuple(r.values for r in self.results if r.consistent)

    def violated_pairs(self) -> tuple[tuple[tuple[TruthValue, TruthValue], str], ...]:
        return tuple(
            (r.values, r.violation.constraint) for r in self.results if r.violation
        )

    def corner_results(self) -> tuple[AssignmentResult, ...]:
        corners = {(_ZERO, _ZERO), (_ZERO, _ONE), (_ONE, _ZERO), (_ONE, _ONE)}
        return tuple(r for r in self.results if r.values in corners)


@dataclass(frozen=True)
class SupervaluationReport:
    """Pre-verification picture when non-extreme elements carry no value."""

    atom_values: tuple[tuple[str, TruthValue], ...]
    compound_element: str
    compound_value: TruthValue
    bridges_fired: bool
    consistent: bool


def check_assignment(
    scenario: Scenario,
    v1,
    v2,
    value_system: ValueSystem | None = None,
) -> Violation | None:
    """Check one pre-assigned value pair against the scenario constraints.

    Evaluates the disjunction, conjunction, and exactly-one compound through
    the degree functions, then applies the constraints in the fixed
    reporting order. Returns the first violation (others recorded in
    ``also_violates``), or None when the pair is consistent.
    """
    v1, v2 = as_value(v1), as_value(v2)
    if value_system is not None:
        for v in (v1, v2):
            if not value_system.admits(v):
                raise InadmissibleValue(
                    f"value {v} is not admissible in {value_system.kind}"
                )

    a1, a2 = scenario.atom_names
    steps: list[TraceStep] = []
    or12 = lukasiewicz_or(v1, v2)
    steps.append(TraceStep("degree-or", (v1, v2), or12, f"value of {a1} | {a2}"))
    and12 = lukasiewicz_and(v1, v2)
    steps.append(TraceStep("degree-and", (v1, v2), and12, f"value of {a1} & {a2}"))
    neg_and = lukasiewicz_neg(and12)
    steps.append(TraceStep("degree-neg", (and12,), neg_and, f"value of !({a1} & {a2})"))
    x12 = lukasiewicz_and(or12, neg_and)
    steps.append(TraceStep("degree-and", (or12, neg_and), x12, f"value of {a1} ^ {a2}"))

    observed = scenario.observed_interference()
    fired: list[str] = []
    if and12 == _ONE:
        fired.append(C_COLLAPSE)
    if x12 == _ZERO:
        fired.append(C_TRUE)
    int_fires = (
        scenario.equal_priors
        and observed != 0
        and bridge(or12) == _ONE
        and bridge(and12) == _ZERO
        and bridge(v1) is not None
        and bridge(v2) is not None
    )
    if int_fires:
        fired.append(C_INT)
    if not fired:
        return None

    primary = next(c for c in _CHECK_ORDER if c in fired)
    also = tuple(c for c in _CHECK_ORDER if c in fired and c != primary)

    if primary == C_COLLAPSE:
        steps.append(TraceStep(
            "contradiction", (and12,), C_COLLAPSE,
            "conjunction true: both detectors click, collapse allows one"))
    elif primary == C_TRUE:
        steps.append(TraceStep(
            "contradiction", (x12,), C_TRUE,
            "pre-assigned reading: the verified exactly-one proposition is already false"))
    else:
        p_or_b = bridge(or12)
        p_and_b = bridge(and12)
        pb1 = bridge(v1)
        pb2 = bridge(v2)
        steps.append(TraceStep("bridge", (or12,), p_or_b, f"P[{a1} | {a2}] forced"))
        steps.append(TraceStep("bridge", (and12,), p_and_b, f"P[{a1} & {a2}] forced"))
        steps.append(TraceStep("bridge", (v1,), pb1, f"P[{a1}] forced"))
        steps.append(TraceStep("bridge", (v2,), pb2, f"P[{a2}] forced"))
        total = pb1 + pb2
        steps.append(TraceStep(
            "additivity", (p_or_b, p_and_b, pb1, pb2), total,
            f"P[{a1}] + P[{a2}] = P[or] + P[and]"))
        prior = total / 2
        steps.append(TraceStep(
            "equal-priors", (total,), prior, "equal priors split the total evenly"))
        p1, p2 = scenario.interference.p1, scenario.interference.p2
        predicted = _HALF * p1 + _HALF * p2
        steps.append(TraceStep(
            "total-probability", (p1, p2), predicted,
            "two-path pattern = even mixture of one-path patterns"))
        steps.append(TraceStep(
            "interference-zero", (predicted, p1, p2), _ZERO,
            "the predicted pattern has no interference term"))
        steps.append(TraceStep(
            "contradiction", (scenario.interference.p_or, p1, p2), C_INT,
            f"observed interference term {observed} is nonzero"))

    assignment = ((a1, v1), (a2, v2))
    return Violation(primary, assignment, tuple(steps), also)


def run_nogo(scenario: Scenario) -> Certificate:
    """Certify every bivalent assignment of the scenario.

    Covers the four corner value pairs directly, then every bivalent truth
    function on the scenario lattice restricted to the bound elements. The
    verdict is "no-go holds" exactly when all of them violate a constraint.
    """
    a1, a2 = scenario.atom_names
    corner_results = []
    for v1 in (_ZERO, _ONE):
        for v2 in (_ZERO, _ONE):
            violation = check_assignment(scenario, v1, v2)
            corner_results.append(
                AssignmentResult(((a1, v1), (a2, v2)), violation)
            )

    system = ValueSystem.bivalent()
    e1, e2 = scenario.bound_elements
    function_results = []
    for tf in enumerate_truth_functions(scenario.lattice, system):
        w1, w2 = tf(e1), tf(e2)
        violation = check_assignment(scenario, w1, w2, value_system=system)
        function_results.append(FunctionResult(
            tuple(tf.values.items()),
            AssignmentResult(((a1, w1), (a2, w2)), violation),
        ))

    all_violated = all(r.violation for r in corner_results) and all(
        f.result.violation for f in function_results
    )
    verdict = "no-go holds" if all_violated else "no-go fails"
    return Certificate(
        scenario=scenario,
        corner_results=tuple(corner_results),
        function_results=tuple(function_results),
        verdict=verdict,
        enumerated=len(corner_results) + len(function_results),
    )


def scan_grid(scenario: Scenario, value_system: ValueSystem) -> GridReport:
    """Check every admissible value pair of the system, in ascending order."""
    a1, a2 = scenario.atom_names
    results = []
    for v1 in value_system.scan_values():
        for v2 in value_system.scan_values():
            violation = check_assignment(scenario, v1, v2, value_system=value_system)
            results.append(AssignmentResult(((a1, v1), (a2, v2)), violation))
    return GridReport(scenario, value_system, tuple(results))


def check_supervaluation(scenario: Scenario) -> SupervaluationReport:
    """Evaluate the scenario when unverified propositions carry no value.

    The atoms must be bound to non-extreme elements (otherwise
    :class:`BindingAtExtreme` is raised); they come out undefined, no bridge
    fires, and no constraint applies. The exactly-one compound still reduces
    to a lattice element, which may be the top and hence carry value 1
    despite its parts having none.
    """
    lattice = scenario.lattice
    binding = scenario.binding_map()
    for atom, element in scenario.binding:
        if element in (lattice.bottom, lattice.top):
            raise BindingAtExtreme(
                f"atom {atom!r} is bound to extreme element {element!r}"
            )
    atom_values = tuple(
        (atom, evaluate_supervaluation(Atom(atom), binding, lattice))
        for atom, _ in scenario.binding
    )
    compound_element = formula_element(scenario.formula_x12, binding, lattice)
    compound_value = evaluate_supervaluation(scenario.formula_x12, binding, lattice)
    bridges = [bridge(v) for _, v in atom_values]
    violation = check_assignment(scenario, atom_values[0][1], atom_values[1][1])
    return SupervaluationReport(
        atom_values=atom_values,
        compound_element=compound_element,
        compound_value=compound_value,
        bridges_fired=any(b is not None for b in bridges),
        consistent=violation is None,
    )


def replay_trace(violation: Violation, scenario: Scenario) -> bool:
    """Re-execute every derivation step of a violation.

    Returns True when each recorded result matches recomputation through the
    valuation and probability operations and the trace ends at a
    contradiction naming the violated constraint.
    """
    steps = violation.trace
    if not steps:
        return False
    last = steps[-1]
    if last.rule != "contradiction" or last.result != violation.constraint:
        return False
    for step in steps:
        ops = step.operands
        if step.rule == "degree-or":
            ok = lukasiewicz_or(*ops) == step.result
        elif step.rule == "degree-and":
            ok = lukasiewicz_and(*ops) == step.result
        elif step.rule == "degree-neg":
            ok = lukasiewicz_neg(*ops) == step.result
        elif step.rule == "bridge":
            ok = step.result is not None and bridge(ops[0]) == step.result
        elif step.rule == "additivity":
            p_or_b, p_and_b, pb1, pb2 = ops
            ok = pb1 + pb2 == step.result and p_or_b + p_and_b == step.result
        elif step.rule == "equal-priors":
            ok = scenario.equal_priors and step.result * 2 == ops[0]
        elif step.rule == "total-probability":
            ok = step.result == _HALF * ops[0] + _HALF * ops[1]
        elif step.rule == "interference-zero":
            predicted, p1, p2 = ops
            ok = (
                step.result == _ZERO
                and interference_term(InterferenceInputs(predicted, p1, p2)) == _ZERO
            )
        elif step.rule == "contradiction":
            if step.result == C_COLLAPSE:
                ok = ops[0] == _ONE
            elif step.result == C_TRUE:
                ok = ops[0] == _ZERO
            elif step.result == C_INT:
                ok = (
                    ops == (
                        scenario.interference.p_or,
                        scenario.interference.p1,
                        scenario.interference.p2,
                    )
                    and interference_term(scenario.interference) != 0
                )
            else:
                ok = False
        else:
            ok = False
        if not ok:
            return False
    return True
