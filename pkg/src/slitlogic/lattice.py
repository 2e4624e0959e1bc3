"""Finite bounded lattices carrying an involution.

The carrier structure for the rest of the package: a finite set of named
elements, a partial order in which every pair has a least upper bound (join)
and a greatest lower bound (meet), and a self-inverse unary map that swaps
the least and greatest elements.

Join and meet are precomputed as full lookup tables at construction time so
queries during enumeration stay O(1). Instances are immutable and safe to
share between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Lattice",
    "LawViolation",
    "build_from_order",
    "builtin",
    "verify_axioms",
    "from_dict",
    "load",
    "LatticeError",
    "NotAPartialOrder",
    "NoUniqueBound",
    "NoBoundedExtremes",
    "BadInvolution",
    "UnknownElement",
    "UnsupportedFamily",
]


class LatticeError(Exception):
    """Base class for lattice construction and lookup failures."""


class NotAPartialOrder(LatticeError):
    """The declared order has a cycle or breaks antisymmetry."""


class NoUniqueBound(LatticeError):
    """Some pair lacks a least upper or greatest lower bound."""


class NoBoundedExtremes(LatticeError):
    """No global least or greatest element exists."""


class BadInvolution(LatticeError):
    """The involution is not a self-inverse total map swapping the extremes."""


class UnknownElement(LatticeError):
    """Reference to an element name the lattice does not contain."""


class UnsupportedFamily(LatticeError):
    """Unknown built-in lattice family name."""


@dataclass(frozen=True)
class LawViolation:
    """A failed lattice law together with the witnessing elements."""

    law: str
    elements: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.law} at ({', '.join(self.elements)}): {self.message}"


@dataclass(frozen=True)
class Lattice:
    """A finite bounded lattice with involution.

    ``leq[i][j]`` holds when element ``i`` lies below element ``j``; the
    join/meet tables and the involution store element indices. Use
    :func:`build_from_order` or :func:`builtin` for validated instances;
    hand-assembled ones can be audited with :func:`verify_axioms`.
    """

    elements: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    involution: tuple[int, ...]
    bottom: str
    top: str

    def index(self, element: str) -> int:
        try:
            return self.elements.index(element)
        except ValueError:
            raise UnknownElement(f"{element!r} is not an element of this lattice") from None

    def join(self, y: str, z: str) -> str:
        return self.elements[self.join_table[self.index(y)][self.index(z)]]

    def meet(self, y: str, z: str) -> str:
        return self.elements[self.meet_table[self.index(y)][self.index(z)]]

    def involute(self, y: str) -> str:
        return self.elements[self.involution[self.index(y)]]

    def is_leq(self, y: str, z: str) -> bool:
        return self.leq[self.index(y)][self.index(z)]

    def non_extremes(self) -> tuple[str, ...]:
        return tuple(e for e in self.elements if e != self.bottom and e != self.top)

    def order_pairs(self) -> list[tuple[str, str]]:
        """All strictly related pairs (lesser, greater)."""
        n = len(self.elements)
        return [
            (self.elements[i], self.elements[j])
            for i in range(n)
            for j in range(n)
            if i != j and self.leq[i][j]
        ]

    def cover_pairs(self) -> list[tuple[str, str]]:
        """The covering pairs only (the Hasse diagram edges)."""
        n = len(self.elements)
        covers = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq[i][j]:
                    continue
                if any(
                    k != i and k != j and self.leq[i][k] and self.leq[k][j]
                    for k in range(n)
                ):
                    continue
                covers.append((self.elements[i], self.elements[j]))
        return covers

    def involution_pairs(self) -> list[tuple[str, str]]:
        """Each complement pair once, fixed points as (y, y)."""
        return [
            (self.elements[i], self.elements[j])
            for i, j in enumerate(self.involution)
            if i <= j
        ]

    def to_dict(self) -> dict:
        return {
            "elements": list(self.elements),
            "order": [list(p) for p in self.cover_pairs()],
            "involution": [list(p) for p in self.involution_pairs()],
        }

    def describe(self) -> str:
        return f"{len(self.elements)} elements [{', '.join(self.elements)}]"


def _lub(leq: Sequence[Sequence[bool]], i: int, j: int) -> int | None:
    n = len(leq)
    uppers = [k for k in range(n) if leq[i][k] and leq[j][k]]
    for k in uppers:
        if all(leq[k][u] for u in uppers):
            return k
    return None


def _glb(leq: Sequence[Sequence[bool]], i: int, j: int) -> int | None:
    n = len(leq)
    lowers = [k for k in range(n) if leq[k][i] and leq[k][j]]
    for k in lowers:
        if all(leq[l][k] for l in lowers):
            return k
    return None


def build_from_order(
    elements: Sequence[str],
    order_pairs: Iterable[Sequence[str]],
    involution_pairs: Iterable[Sequence[str]],
) -> Lattice:
    """Build a validated lattice from an order relation and complement pairs.

    ``order_pairs`` lists (lesser, greater) pairs; either the covering
    relation or any subset of the full order works, the transitive closure
    is taken internally. ``involution_pairs`` must mention every element in
    exactly one pair (fixed points as (y, y)).

    Raises :class:`NotAPartialOrder`, :class:`NoUniqueBound`,
    :class:`NoBoundedExtremes`, or :class:`BadInvolution` rather than
    returning a structure that breaks a lattice invariant.
    """
    names = tuple(elements)
    if not names:
        raise ValueError("element set must be nonempty")
    if len(set(names)) != len(names):
        raise ValueError("duplicate element names")
    pos = {e: i for i, e in enumerate(names)}
    n = len(names)

    leq = [[i == j for j in range(n)] for i in range(n)]
    for pair in order_pairs:
        lesser, greater = pair
        if lesser not in pos:
            raise UnknownElement(f"order pair mentions unknown element {lesser!r}")
        if greater not in pos:
            raise UnknownElement(f"order pair mentions unknown element {greater!r}")
        leq[pos[lesser]][pos[greater]] = True

    # transitive closure (Warshall)
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                row_i, row_k = leq[i], leq[k]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True

    for i in range(n):
        for j in range(i + 1, n):
            if leq[i][j] and leq[j][i]:
                raise NotAPartialOrder(
                    f"{names[i]!r} and {names[j]!r} are below each other"
                )

    join_table = [[0] * n for _ in range(n)]
    meet_table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            up = _lub(leq, i, j)
            if up is None:
                raise NoUniqueBound(
                    f"no least upper bound for ({names[i]}, {names[j]})"
                )
            down = _glb(leq, i, j)
            if down is None:
                raise NoUniqueBound(
                    f"no greatest lower bound for ({names[i]}, {names[j]})"
                )
            join_table[i][j] = join_table[j][i] = up
            meet_table[i][j] = meet_table[j][i] = down

    bottom = next((i for i in range(n) if all(leq[i][j] for j in range(n))), None)
    top = next((i for i in range(n) if all(leq[j][i] for j in range(n))), None)
    if bottom is None or top is None:
        raise NoBoundedExtremes("order has no global least or greatest element")

    inv: dict[int, int] = {}
    for pair in involution_pairs:
        y, z = pair
        if y not in pos or z not in pos:
            raise BadInvolution(f"involution pair ({y}, {z}) mentions unknown element")
        yi, zi = pos[y], pos[z]
        if inv.get(yi, zi) != zi or inv.get(zi, yi) != yi:
            raise BadInvolution(f"element {y!r} or {z!r} appears in two involution pairs")
        inv[yi] = zi
        inv[zi] = yi
    missing = [names[i] for i in range(n) if i not in inv]
    if missing:
        raise BadInvolution(f"involution does not cover {', '.join(missing)}")
    if inv[bottom] != top:
        raise BadInvolution(
            f"involution must swap {names[bottom]!r} and {names[top]!r}"
        )

    return Lattice(
        elements=names,
        leq=tuple(tuple(row) for row in leq),
        join_table=tuple(tuple(row) for row in join_table),
        meet_table=tuple(tuple(row) for row in meet_table),
        involution=tuple(inv[i] for i in range(n)),
        bottom=names[bottom],
        top=names[top],
    )


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _boolean(n: int) -> Lattice:
    if n > len(_LETTERS):
        raise ValueError(f"boolean({n}) is far beyond desk scale")
    subsets = []
    for mask in range(1 << n):
        subsets.append(frozenset(i for i in range(n) if mask >> i & 1))
    subsets.sort(key=lambda s: (len(s), sorted(s)))
    full = frozenset(range(n))

    def name(s: frozenset) -> str:
        if not s:
            return "0"
        if s == full:
            return "1"
        return "".join(_LETTERS[i] for i in sorted(s))

    names = [name(s) for s in subsets]
    order = [
        (name(a), name(b))
        for a in subsets
        for b in subsets
        if a < b
    ]
    seen: set[frozenset] = set()
    involution = []
    for s in subsets:
        if s in seen:
            continue
        c = full - s
        seen.add(s)
        seen.add(c)
        involution.append((name(s), name(c)))
    return build_from_order(names, order, involution)


def _chain(n: int) -> Lattice:
    names = ["0"] + [f"m{i}" for i in range(1, n)] + ["1"]
    order = [(names[i], names[i + 1]) for i in range(n)]
    involution = [(names[k], names[n - k]) for k in range(n // 2 + 1)]
    return build_from_order(names, order, involution)


def _lantern(n: int) -> Lattice:
    names = ["0"]
    involution = [("0", "1")]
    order = []
    for i in range(1, n + 1):
        a, b = f"a{i}", f"b{i}"
        names.extend([a, b])
        involution.append((a, b))
        order.extend([("0", a), (a, "1"), ("0", b), (b, "1")])
    names.append("1")
    return build_from_order(names, order, involution)


def builtin(family: str, n: int) -> Lattice:
    """Construct a stock lattice: ``boolean`` (powerset with complement),
    ``chain`` (linear order of n+1 elements, order-reversing involution), or
    ``lantern`` (bottom, top, and n incomparable complement pairs)."""
    if n < 1:
        raise ValueError("size parameter must be >= 1")
    if family == "boolean":
        return _boolean(n)
    if family == "chain":
        return _chain(n)
    if family == "lantern":
        return _lantern(n)
    raise UnsupportedFamily(f"no builtin lattice family {family!r}")


def _shape_violations(lat: Lattice) -> list[LawViolation]:
    bad: list[LawViolation] = []
    n = len(lat.elements)
    if n == 0:
        return [LawViolation("malformed", (), "empty element set")]
    if len(set(lat.elements)) != n:
        bad.append(LawViolation("malformed", lat.elements, "duplicate element names"))
    if len(lat.leq) != n or any(len(row) != n for row in lat.leq):
        bad.append(LawViolation("malformed", (), "order matrix is not square over the elements"))
    for label, table in (("join", lat.join_table), ("meet", lat.meet_table)):
        if len(table) != n or any(len(row) != n for row in table):
            bad.append(LawViolation("malformed", (), f"{label} table is not square over the elements"))
        elif any(not 0 <= e < n for row in table for e in row):
            bad.append(LawViolation("malformed", (), f"{label} table entry out of range"))
    if len(lat.involution) != n or any(not 0 <= e < n for e in lat.involution):
        bad.append(LawViolation("malformed", (), "involution is not a total map on the elements"))
    for label, el in (("bottom", lat.bottom), ("top", lat.top)):
        if el not in lat.elements:
            bad.append(LawViolation("malformed", (el,), f"{label} is not an element"))
    return bad


def verify_axioms(lat: Lattice) -> list[LawViolation]:
    """Exhaustively check every lattice law; report, never raise.

    Covers the order laws, agreement of the join/meet tables with the actual
    least upper / greatest lower bounds, the algebraic laws (commutativity,
    associativity over all triples, idempotence, absorption), boundedness,
    and the involution laws. Empty result means the structure is a bounded
    lattice with involution.
    """
    out = _shape_violations(lat)
    if out:
        return out

    names = lat.elements
    n = len(names)
    leq = lat.leq
    jt, mt = lat.join_table, lat.meet_table

    for i in range(n):
        if not leq[i][i]:
            out.append(LawViolation("reflexivity", (names[i],), "element is not below itself"))
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i][j] and leq[j][i]:
                out.append(LawViolation(
                    "antisymmetry", (names[i], names[j]), "distinct elements below each other"))
    for i in range(n):
        for j in range(n):
            if not leq[i][j]:
                continue
            for k in range(n):
                if leq[j][k] and not leq[i][k]:
                    out.append(LawViolation(
                        "transitivity", (names[i], names[j], names[k]),
                        "chain does not close"))

    for i in range(n):
        for j in range(i, n):
            up = _lub(leq, i, j)
            if up is None:
                out.append(LawViolation(
                    "no-unique-bound", (names[i], names[j]),
                    "pair has no least upper bound"))
            elif jt[i][j] != up:
                out.append(LawViolation(
                    "join-is-lub", (names[i], names[j]),
                    f"table gives {names[jt[i][j]]}, least upper bound is {names[up]}"))
            down = _glb(leq, i, j)
            if down is None:
                out.append(LawViolation(
                    "no-unique-bound", (names[i], names[j]),
                    "pair has no greatest lower bound"))
            elif mt[i][j] != down:
                out.append(LawViolation(
                    "meet-is-glb", (names[i], names[j]),
                    f"table gives {names[mt[i][j]]}, greatest lower bound is {names[down]}"))

    for i in range(n):
        if jt[i][i] != i:
            out.append(LawViolation("join-idempotent", (names[i],), f"y join y gives {names[jt[i][i]]}"))
        if mt[i][i] != i:
            out.append(LawViolation("meet-idempotent", (names[i],), f"y meet y gives {names[mt[i][i]]}"))
    for i in range(n):
        for j in range(i + 1, n):
            if jt[i][j] != jt[j][i]:
                out.append(LawViolation("join-commutative", (names[i], names[j]), "tables disagree on order of arguments"))
            if mt[i][j] != mt[j][i]:
                out.append(LawViolation("meet-commutative", (names[i], names[j]), "tables disagree on order of arguments"))
    for i in range(n):
        for j in range(n):
            if jt[i][mt[i][j]] != i:
                out.append(LawViolation("absorption", (names[i], names[j]), "y join (y meet z) is not y"))
            if mt[i][jt[i][j]] != i:
                out.append(LawViolation("absorption", (names[i], names[j]), "y meet (y join z) is not y"))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if jt[jt[i][j]][k] != jt[i][jt[j][k]]:
                    out.append(LawViolation(
                        "join-associative", (names[i], names[j], names[k]),
                        "grouping changes the join"))
                if mt[mt[i][j]][k] != mt[i][mt[j][k]]:
                    out.append(LawViolation(
                        "meet-associative", (names[i], names[j], names[k]),
                        "grouping changes the meet"))

    b, t = lat.index(lat.bottom), lat.index(lat.top)
    for i in range(n):
        if not leq[b][i]:
            out.append(LawViolation("bottom-least", (names[i],), "element is not above the bottom"))
        if not leq[i][t]:
            out.append(LawViolation("top-greatest", (names[i],), "element is not below the top"))

    inv = lat.involution
    for i in range(n):
        if inv[inv[i]] != i:
            out.append(LawViolation(
                "involution-self-inverse", (names[i],),
                f"double application gives {names[inv[inv[i]]]}"))
    if inv[b] != t:
        out.append(LawViolation("involution-extremes", (lat.bottom,), "bottom does not map to top"))
    if inv[t] != b:
        out.append(LawViolation("involution-extremes", (lat.top,), "top does not map to bottom"))

    return out


def from_dict(data: dict) -> Lattice:
    """Build a lattice from the file format: keys ``elements`` (list of
    strings), ``order`` (list of [lesser, greater]), ``involution`` (list of
    [y, complement])."""
    if not isinstance(data, dict):
        raise ValueError("lattice description must be an object")
    for key in ("elements", "order", "involution"):
        if key not in data:
            raise ValueError(f"lattice description is missing {key!r}")
        if not isinstance(data[key], list):
            raise ValueError(f"lattice description field {key!r} must be a list")
    for key in ("order", "involution"):
        for pair in data[key]:
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise ValueError(f"{key!r} entries must be 2-element lists")
    return build_from_order(data["elements"], data["order"], data["involution"])


def load(path: str) -> Lattice:
    with open(path, encoding="utf-8") as fh:
        return from_dict(json.load(fh))
