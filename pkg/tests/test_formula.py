"""Formula parsing, rendering, and the exclusive-disjunction rewrite."""

import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from slitlogic.formula import (
    And,
    Atom,
    Not,
    Or,
    ParseError,
    Xor,
    atoms,
    desugar_xor,
    parse,
    render,
)

X1, X2, X3 = Atom("X1"), Atom("X2"), Atom("X3")
EXACTLY_ONE_TEXT = "(X1 | X2) & !(X1 & X2)"
EXACTLY_ONE = And(Or(X1, X2), Not(And(X1, X2)))


def classical(f, env):
    """Bivalent truth-table evaluation; the oracle for the xor rewrite."""
    if isinstance(f, Atom):
        return env[f.name]
    if isinstance(f, Not):
        return not classical(f.child, env)
    if isinstance(f, And):
        return classical(f.left, env) and classical(f.right, env)
    if isinstance(f, Or):
        return classical(f.left, env) or classical(f.right, env)
    return classical(f.left, env) != classical(f.right, env)


def test_parse_exactly_one_compound():
    assert parse(EXACTLY_ONE_TEXT) == EXACTLY_ONE


def test_parse_single_atom():
    assert parse("X1") == X1


def test_xor_is_left_associative():
    assert parse("X1 ^ X2 ^ X3") == Xor(Xor(X1, X2), X3)


def test_precedence():
    a, b, c = Atom("a"), Atom("b"), Atom("c")
    assert parse("a | b & c") == Or(a, And(b, c))
    assert parse("!a & b") == And(Not(a), b)
    assert parse("a ^ b | c") == Or(Xor(a, b), c)
    assert parse("a & b ^ c") == Xor(And(a, b), c)
    assert parse("!!a") == Not(Not(a))


def test_parentheses_override_precedence():
    a, b, c = Atom("a"), Atom("b"), Atom("c")
    assert parse("(a | b) & c") == And(Or(a, b), c)
    assert parse("a ^ (b ^ c)") == Xor(a, Xor(b, c))


@pytest.mark.parametrize(
    "text,position",
    [
        ("X1 &", 4),
        ("(X1", 3),
        ("X1 @ X2", 3),
        ("| X1", 0),
        ("X1 X2", 3),
        ("(X1 | X2", 8),
        ("", 0),
    ],
)
def test_parse_errors_carry_position(text, position):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.position == position


def test_desugar_single_xor():
    assert desugar_xor(Xor(X1, X2)) == EXACTLY_ONE


def test_desugar_is_identity_on_xor_free_input():
    assert desugar_xor(X1) == X1
    assert desugar_xor(EXACTLY_ONE) == EXACTLY_ONE


def has_xor(f):
    if isinstance(f, Atom):
        return False
    if isinstance(f, Not):
        return has_xor(f.child)
    if isinstance(f, Xor):
        return True
    return has_xor(f.left) or has_xor(f.right)


def test_desugar_nested_xor_semantics():
    # oracle: compare truth tables over all 8 assignments
    f = Xor(Xor(X1, X2), X3)
    g = desugar_xor(f)
    assert not has_xor(g)
    for bits in product([False, True], repeat=3):
        env = dict(zip(["X1", "X2", "X3"], bits))
        assert classical(f, env) == classical(g, env)


def random_formula(rng, names, depth):
    if depth == 0 or rng.random() < 0.25:
        return Atom(rng.choice(names))
    kind = rng.randrange(4)
    if kind == 0:
        return Not(random_formula(rng, names, depth - 1))
    ctor = (And, Or, Xor)[kind - 1]
    return ctor(
        random_formula(rng, names, depth - 1),
        random_formula(rng, names, depth - 1),
    )


def test_desugar_preserves_classical_semantics_exhaustively():
    rng = random.Random(1105)
    names = ["a", "b", "c", "d"]
    for _ in range(200):
        f = random_formula(rng, names, 5)
        g = desugar_xor(f)
        assert not has_xor(g)
        for bits in product([False, True], repeat=len(names)):
            env = dict(zip(names, bits))
            assert classical(f, env) == classical(g, env)


def test_atoms_first_appearance_order():
    assert atoms(EXACTLY_ONE) == ("X1", "X2")
    assert atoms(parse("b & a | b ^ c")) == ("b", "a", "c")


def test_render_exactly_one_compound():
    assert render(EXACTLY_ONE) == EXACTLY_ONE_TEXT


def test_render_respects_associativity():
    a, b, c = Atom("a"), Atom("b"), Atom("c")
    assert render(Or(Or(a, b), c)) == "a | b | c"
    assert render(Or(a, Or(b, c))) == "a | (b | c)"
    assert render(Not(Not(a))) == "!!a"


def test_parse_render_round_trip_1000_random_formulas():
    rng = random.Random(20240810)
    names = ["X1", "X2", "y", "theta_3", "p"]
    for _ in range(1000):
        f = random_formula(rng, names, 8)
        assert parse(render(f)) == f


_names = st.from_regex(r"[A-Za-z][A-Za-z0-9_]{0,5}", fullmatch=True)
_formulas = st.recursive(
    st.builds(Atom, _names),
    lambda children: st.one_of(
        st.builds(Not, children),
        st.builds(And, children, children),
        st.builds(Or, children, children),
        st.builds(Xor, children, children),
    ),
    max_leaves=25,
)


@given(_formulas)
def test_parse_render_round_trip_property(f):
    assert parse(render(f)) == f


def test_empty_atom_name_rejected():
    with pytest.raises(ValueError):
        Atom("")
