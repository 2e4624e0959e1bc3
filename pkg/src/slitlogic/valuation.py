"""Truth values and the evaluation semantics over lattices.

Truth values are exact rationals in [0, 1] plus the distinguished gap value
``UNDEFINED`` used by the partial semantics. The degree functions are the
bounded-sum family: not t = 1 - t, s or t = min(s + t, 1), s and t =
max(s + t - 1, 0); an undefined input makes any result undefined.

Two routes assign a value to a formula whose atoms are bound to lattice
elements. ``evaluate_lattice`` folds the connectives as join, meet, and
involution, reducing the formula to a single element before applying a truth
function once. ``evaluate_degrees`` instead combines atom truth values
directly through the degree functions. ``check_valuational_axioms``
measures exactly where the two routes part company for a given truth
function, skipping comparisons that involve undefined values.

All arithmetic is exact (``fractions.Fraction``); floats are rejected so
axiom checks never see representation noise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping, Union

from .formula import Atom, And, Formula, Not, Or, desugar_xor
from .lattice import Lattice, UnknownElement

__all__ = [
    "UNDEFINED",
    "TruthValue",
    "as_value",
    "is_defined",
    "lukasiewicz_neg",
    "lukasiewicz_or",
    "lukasiewicz_and",
    "ValueSystem",
    "TruthFunction",
    "formula_element",
    "evaluate_lattice",
    "evaluate_degrees",
    "evaluate_supervaluation",
    "AxiomViolation",
    "AxiomReport",
    "check_valuational_axioms",
    "enumerate_truth_functions",
    "UnboundAtom",
    "InfeasibleFrozen",
    "InadmissibleValue",
]


class UnboundAtom(Exception):
    """A formula atom has no entry in the binding or value map."""


class InfeasibleFrozen(Exception):
    """Frozen truth-function entries contradict the boundary conditions."""


class InadmissibleValue(Exception):
    """A truth value outside the governing value system's admissible set."""


class _UndefinedType:
    """Singleton truth-value gap; absorbing under every degree function."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "undefined"


UNDEFINED = _UndefinedType()

TruthValue = Union[Fraction, _UndefinedType]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_value(value) -> TruthValue:
    """Coerce to an exact truth value in [0, 1] or ``UNDEFINED``.

    Accepts Fraction, int, and numeric strings (including decimals, parsed
    exactly in base 10). Floats are rejected: binary rounding would leak
    into the exact-equality checks downstream.
    """
    if value is UNDEFINED:
        return UNDEFINED
    if isinstance(value, float):
        raise TypeError("floats are inexact; pass a Fraction, int, or decimal string")
    v = Fraction(value)
    if not _ZERO <= v <= _ONE:
        raise ValueError(f"truth value {v} outside [0, 1]")
    return v


def is_defined(value: TruthValue) -> bool:
    return value is not UNDEFINED


def lukasiewicz_neg(t) -> TruthValue:
    """1 - t, with undefined absorbing."""
    t = as_value(t)
    if t is UNDEFINED:
        return UNDEFINED
    return _ONE - t


def lukasiewicz_or(s, t) -> TruthValue:
    """min(s + t, 1), with undefined absorbing."""
    s, t = as_value(s), as_value(t)
    if s is UNDEFINED or t is UNDEFINED:
        return UNDEFINED
    return min(s + t, _ONE)


def lukasiewicz_and(s, t) -> TruthValue:
    """max(s + t - 1, 0), with undefined absorbing."""
    s, t = as_value(s), as_value(t)
    if s is UNDEFINED or t is UNDEFINED:
        return UNDEFINED
    return max(s + t - _ONE, _ZERO)


@dataclass(frozen=True)
class ValueSystem:
    """The admissible truth values for an analysis run.

    ``values`` holds the defined admissible values in ascending order;
    ``allows_undefined`` marks the partial system, where every non-extreme
    element carries no value at all.
    """

    kind: str
    values: tuple[Fraction, ...]
    allows_undefined: bool = False

    @classmethod
    def bivalent(cls) -> "ValueSystem":
        return cls("bivalent", (_ZERO, _ONE))

    @classmethod
    def finite(cls, n: int) -> "ValueSystem":
        """n equally spaced values from 0 to 1 inclusive (n >= 2)."""
        if n < 2:
            raise ValueError("a finite value system needs at least the two extremes")
        return cls(f"finite({n})", tuple(Fraction(k, n - 1) for k in range(n)))

    @classmethod
    def infinite(cls, denominator: int = 10) -> "ValueSystem":
        """Rational grid {k/d} standing in for the full unit interval."""
        if denominator < 1:
            raise ValueError("denominator must be positive")
        return cls(
            f"infinite({denominator})",
            tuple(Fraction(k, denominator) for k in range(denominator + 1)),
        )

    @classmethod
    def partial(cls) -> "ValueSystem":
        return cls("partial", (_ZERO, _ONE), allows_undefined=True)

    def admits(self, value: TruthValue) -> bool:
        if value is UNDEFINED:
            return self.allows_undefined
        return value in self.values

    def scan_values(self) -> tuple[TruthValue, ...]:
        """Admissible values in enumeration order, undefined last."""
        if self.allows_undefined:
            return self.values + (UNDEFINED,)
        return self.values


@dataclass(frozen=True)
class TruthFunction:
    """A total map from lattice elements to truth values.

    The boundary conditions are enforced at construction: the bottom element
    maps to 0 and the top to 1. Other entries may be any exact value in
    [0, 1], or ``UNDEFINED``.
    """

    lattice: Lattice
    values: Mapping[str, TruthValue]

    def __post_init__(self):
        normalized = {}
        for element in self.lattice.elements:
            if element not in self.values:
                raise ValueError(f"truth function is missing element {element!r}")
            normalized[element] = as_value(self.values[element])
        extras = set(self.values) - set(self.lattice.elements)
        if extras:
            raise ValueError(f"truth function mentions unknown elements {sorted(extras)}")
        if normalized[self.lattice.bottom] != _ZERO:
            raise ValueError("bottom element must have truth value 0")
        if normalized[self.lattice.top] != _ONE:
            raise ValueError("top element must have truth value 1")
        object.__setattr__(self, "values", normalized)

    def __call__(self, element: str) -> TruthValue:
        try:
            return self.values[element]
        except KeyError:
            raise UnknownElement(f"{element!r} is not an element of this lattice") from None


def formula_element(formula: Formula, binding: Mapping[str, str], lattice: Lattice) -> str:
    """Reduce a formula to one lattice element via join/meet/involution.

    Exclusive disjunctions are desugared first, so only the three lattice
    operations are ever applied.
    """
    f = desugar_xor(formula)

    def walk(node: Formula) -> str:
        if isinstance(node, Atom):
            if node.name not in binding:
                raise UnboundAtom(f"atom {node.name!r} has no bound lattice element")
            element = binding[node.name]
            lattice.index(element)
            return element
        if isinstance(node, Not):
            return lattice.involute(walk(node.child))
        if isinstance(node, And):
            return lattice.meet(walk(node.left), walk(node.right))
        if isinstance(node, Or):
            return lattice.join(walk(node.left), walk(node.right))
        raise TypeError(f"unexpected node {node!r}")

    return walk(f)


def evaluate_lattice(
    formula: Formula, binding: Mapping[str, str], truth_function: TruthFunction
) -> TruthValue:
    """Reduce the formula to a lattice element, then apply the truth function."""
    element = formula_element(formula, binding, truth_function.lattice)
    return truth_function(element)


def evaluate_degrees(formula: Formula, atom_values: Mapping[str, object]) -> TruthValue:
    """Combine atom truth values through the degree functions."""
    f = desugar_xor(formula)

    def walk(node: Formula) -> TruthValue:
        if isinstance(node, Atom):
            if node.name not in atom_values:
                raise UnboundAtom(f"atom {node.name!r} has no truth value")
            return as_value(atom_values[node.name])
        if isinstance(node, Not):
            return lukasiewicz_neg(walk(node.child))
        if isinstance(node, And):
            return lukasiewicz_and(walk(node.left), walk(node.right))
        if isinstance(node, Or):
            return lukasiewicz_or(walk(node.left), walk(node.right))
        raise TypeError(f"unexpected node {node!r}")

    return walk(f)


def evaluate_supervaluation(
    formula: Formula, binding: Mapping[str, str], lattice: Lattice
) -> TruthValue:
    """Value the reduced element: 0 at bottom, 1 at top, no value elsewhere."""
    element = formula_element(formula, binding, lattice)
    if element == lattice.bottom:
        return _ZERO
    if element == lattice.top:
        return _ONE
    return UNDEFINED


@dataclass(frozen=True)
class AxiomViolation:
    """One spot where the truth function and the degree functions disagree."""

    operation: str  # "join", "meet", or "neg"
    elements: tuple[str, ...]
    lattice_value: TruthValue
    degree_value: TruthValue

    def __str__(self) -> str:
        where = ", ".join(self.elements)
        return (
            f"{self.operation} at ({where}): truth function gives "
            f"{self.lattice_value}, degree function gives {self.degree_value}"
        )


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple[AxiomViolation, ...]
    skipped: int

    @property
    def ok(self) -> bool:
        return not self.violations


def check_valuational_axioms(lattice: Lattice, truth_function: TruthFunction) -> AxiomReport:
    """Compare v(y op z) against the degree functions for every pair.

    Checks v(y join z) = min(v(y)+v(z), 1) and v(y meet z) =
    max(v(y)+v(z)-1, 0) over all ordered pairs, and v(~y) = 1 - v(y) for
    every element. Comparisons touching an undefined value are skipped and
    counted, since the degree functions only constrain defined values.
    """
    violations: list[AxiomViolation] = []
    skipped = 0
    for y in lattice.elements:
        vy = truth_function(y)
        for z in lattice.elements:
            vz = truth_function(z)
            v_join = truth_function(lattice.join(y, z))
            if vy is UNDEFINED or vz is UNDEFINED or v_join is UNDEFINED:
                skipped += 1
            else:
                expected = min(vy + vz, _ONE)
                if v_join != expected:
                    violations.append(AxiomViolation("join", (y, z), v_join, expected))
            v_meet = truth_function(lattice.meet(y, z))
            if vy is UNDEFINED or vz is UNDEFINED or v_meet is UNDEFINED:
                skipped += 1
            else:
                expected = max(vy + vz - _ONE, _ZERO)
                if v_meet != expected:
                    violations.append(AxiomViolation("meet", (y, z), v_meet, expected))
    for y in lattice.elements:
        vy = truth_function(y)
        v_neg = truth_function(lattice.involute(y))
        if vy is UNDEFINED or v_neg is UNDEFINED:
            skipped += 1
            continue
        expected = _ONE - vy
        if v_neg != expected:
            violations.append(AxiomViolation("neg", (y,), v_neg, expected))
    return AxiomReport(tuple(violations), skipped)


def enumerate_truth_functions(
    lattice: Lattice,
    value_system: ValueSystem,
    frozen: Mapping[str, object] | None = None,
) -> Iterator[TruthFunction]:
    """Yield every admissible truth function, in a fixed order.

    Bottom and top are pinned to 0 and 1; ``frozen`` pins further elements.
    Enumeration runs over the remaining elements in declaration order with
    values ascending, so the stream is deterministic and its length is
    |admissible| ** free. Under the partial system the non-extreme elements
    have no defined value, so exactly one function is produced.
    """
    pinned: dict[str, TruthValue] = {
        lattice.bottom: _ZERO,
        lattice.top: _ONE,
    }
    for element, raw in (frozen or {}).items():
        value = as_value(raw)
        lattice.index(element)
        if element in (lattice.bottom, lattice.top) and pinned[element] != value:
            raise InfeasibleFrozen(
                f"frozen value {value} for {element!r} contradicts the boundary conditions"
            )
        if not value_system.admits(value):
            raise InfeasibleFrozen(
                f"frozen value {value} for {element!r} is not admissible in {value_system.kind}"
            )
        pinned[element] = value

    free = [e for e in lattice.elements if e not in pinned]
    domain: tuple[TruthValue, ...]
    if value_system.allows_undefined:
        domain = (UNDEFINED,)
    else:
        domain = value_system.values
    for combo in product(domain, repeat=len(free)):
        values = dict(pinned)
        values.update(zip(free, combo))
        yield TruthFunction(lattice, values)
