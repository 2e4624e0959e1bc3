"""Truth-to-probability bridge and two-path interference bookkeeping.

The bridge is deliberately minimal: a true proposition gets probability 1, a
false one gets 0, and anything else (intermediate degrees included) leaves
the probability unconstrained. The interference term of a two-path setup is
p_or - p1/2 - p2/2, where p_or is the detection probability with both paths
open and p1, p2 the single-path probabilities. All quantities are exact
rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .formula import And, Formula, Or, render
from .valuation import UNDEFINED, as_value

__all__ = [
    "bridge",
    "InterferenceInputs",
    "interference_term",
    "amplitude_interference",
    "ProbabilityAssignment",
    "AdditivityViolation",
    "check_additivity",
    "MissingEntry",
    "OutOfRange",
]


class MissingEntry(Exception):
    """A probability assignment lacks an entry the check needs."""


class OutOfRange(Exception):
    """A probability or squared amplitude left the unit interval."""


def _exact(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floats are inexact; pass a Fraction, int, or decimal string")
    return Fraction(value)


def _unit(value, what: str) -> Fraction:
    v = _exact(value)
    if not 0 <= v <= 1:
        raise OutOfRange(f"{what} = {v} is outside [0, 1]")
    return v


def bridge(truth) -> Fraction | None:
    """Forced probability for a truth value: 1 for true, 0 for false,
    ``None`` (unconstrained) for everything else including undefined."""
    t = as_value(truth)
    if t is UNDEFINED:
        return None
    if t == 1:
        return Fraction(1)
    if t == 0:
        return Fraction(0)
    return None


@dataclass(frozen=True)
class InterferenceInputs:
    """The three conditional detection probabilities of a two-path run."""

    p_or: Fraction
    p1: Fraction
    p2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p_or", _unit(self.p_or, "p_or"))
        object.__setattr__(self, "p1", _unit(self.p1, "p1"))
        object.__setattr__(self, "p2", _unit(self.p2, "p2"))


def interference_term(inputs: InterferenceInputs) -> Fraction:
    """p_or - p1/2 - p2/2, exactly."""
    return inputs.p_or - inputs.p1 / 2 - inputs.p2 / 2


def amplitude_interference(a1, a2) -> InterferenceInputs:
    """Detection probabilities induced by two path amplitudes.

    Amplitudes are (re, im) pairs of exact rationals. The single-path
    probabilities are the squared moduli and the both-open probability is
    |a1 + a2|^2 / 2, so the induced interference term equals
    re1*re2 + im1*im2 (the real part of a1 * conj(a2)).
    """
    re1, im1 = (_exact(x) for x in a1)
    re2, im2 = (_exact(x) for x in a2)
    p1 = re1 * re1 + im1 * im1
    p2 = re2 * re2 + im2 * im2
    p_or = ((re1 + re2) ** 2 + (im1 + im2) ** 2) / 2
    if p1 > 1:
        raise OutOfRange(f"|a1|^2 = {p1} exceeds 1")
    if p2 > 1:
        raise OutOfRange(f"|a2|^2 = {p2} exceeds 1")
    if p_or > 1:
        raise OutOfRange(f"|a1+a2|^2/2 = {p_or} exceeds 1")
    return InterferenceInputs(p_or, p1, p2)


def _key(proposition) -> str:
    if isinstance(proposition, str):
        return proposition
    return render(proposition)


class ProbabilityAssignment:
    """Exact probabilities keyed by rendered formula text.

    Marginal entries map a proposition to [0, 1]; conditional entries are
    keyed by a (region, proposition) pair. Additivity is checked on demand
    by :func:`check_additivity`, never silently enforced.
    """

    def __init__(self):
        self._marginal: dict[str, Fraction] = {}
        self._conditional: dict[tuple[str, str], Fraction] = {}

    def set(self, proposition, value) -> None:
        self._marginal[_key(proposition)] = _unit(value, "probability")

    def get(self, proposition) -> Fraction:
        key = _key(proposition)
        if key not in self._marginal:
            raise MissingEntry(f"no probability for {key!r}")
        return self._marginal[key]

    def set_conditional(self, region: str, proposition, value) -> None:
        self._conditional[(region, _key(proposition))] = _unit(value, "probability")

    def get_conditional(self, region: str, proposition) -> Fraction:
        key = (region, _key(proposition))
        if key not in self._conditional:
            raise MissingEntry(f"no conditional probability for {key!r}")
        return self._conditional[key]

    def __len__(self) -> int:
        return len(self._marginal) + len(self._conditional)


@dataclass(frozen=True)
class AdditivityViolation:
    """P[Y or Z] fails to equal P[Y] + P[Z] - P[Y and Z]."""

    disjunction: str
    lhs: Fraction
    rhs: Fraction

    def __str__(self) -> str:
        return f"P[{self.disjunction}] = {self.lhs} but the inclusion-exclusion sum is {self.rhs}"


def check_additivity(
    assignment: ProbabilityAssignment, y: Formula, z: Formula
) -> AdditivityViolation | None:
    """Check P[Y or Z] = P[Y] + P[Z] - P[Y and Z]; None means it holds."""
    p_y = assignment.get(y)
    p_z = assignment.get(z)
    p_or = assignment.get(Or(y, z))
    p_and = assignment.get(And(y, z))
    rhs = p_y + p_z - p_and
    if p_or == rhs:
        return None
    return AdditivityViolation(_key(Or(y, z)), p_or, rhs)
