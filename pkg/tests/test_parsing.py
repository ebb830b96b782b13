from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hochkit.gca import Algebra, Variable
from hochkit.parsing import (ParseError, format_algebra, parse_algebra, parse_polynomial,
                             same_presentation)


def test_dual_numbers():
    A = parse_algebra("var x weight 1; rel x^2;")
    assert [v.name for v in A.ring.variables] == ["x"]
    assert str(A.relations[0]) == "x^2"


def test_non_ci():
    A = parse_algebra("var x weight 1; var y weight 1; rel x^2; rel x*y;")
    assert [str(f) for f in A.relations] == ["x^2", "x*y"]
    assert A.relation_weights == [2, 2]


def test_inhomogeneous_relation_named():
    with pytest.raises(ParseError) as err:
        parse_algebra("var x weight 1;\nrel x^2 + x;")
    assert "relation 1" in str(err.value)
    assert err.value.line == 2


def test_unknown_variable_position():
    with pytest.raises(ParseError) as err:
        parse_algebra("var x weight 1;\nrel x*z;")
    assert (err.value.line, err.value.column) == (2, 7)
    assert "unknown variable 'z'" in str(err.value)


@pytest.mark.parametrize("text", ["var x weight 0;", "var x weight -2;"])
def test_nonpositive_weight(text):
    with pytest.raises(ParseError):
        parse_algebra(text)


@pytest.mark.parametrize("text", ["var x weight 1; rel x^;", "var x weight 1 rel x;",
                                  "var x weight 1; rel (x;", "var x weight 1; rel x $ x;",
                                  "blah;", "var x weight 1; rel x - x;"])
def test_syntax_errors(text):
    with pytest.raises(ParseError):
        parse_algebra(text)


def test_comments_and_rationals():
    A = parse_algebra("# a cusp\nvar x weight 2; var y weight 3;\nrel 3/2*x^3 - (y)^2; # done\n")
    x, y = A.ring.gens()
    assert A.relations[0] == x ** 3 * Fraction(3, 2) - y ** 2


def test_polynomial_in_graded_algebra():
    P = Algebra([Variable("x", 0, 1), Variable("u", -1, 1), Variable("v", -1, 1)])
    x, u, v = P.gens()
    assert parse_polynomial("u*v + v*u", P) == P.zero()
    assert parse_polynomial("-2*x*u", P) == x * u * -2



@st.composite
def presentations(draw):
    weights = draw(st.lists(st.integers(1, 3), min_size=1, max_size=3))
    vs = [f"v{i}" for i in range(len(weights))]
    text = "".join(f"var {n} weight {w};\n" for n, w in zip(vs, weights))
    A = parse_algebra(text)
    ring = A.ring
    rels = []
    for _ in range(draw(st.integers(0, 3))):
        target = draw(st.integers(1, 6))
        from hochkit.homology import monomials
        basis = monomials(ring, 0, target)
        if not basis:
            continue
        f = ring.zero()
        for m in draw(st.lists(st.sampled_from(basis), min_size=1, max_size=3, unique=True)):
            f = f + ring.monomial(m, draw(st.fractions(-3, 3, max_denominator=3).filter(bool)))
        if f:
            rels.append(f"rel {f};\n")
    return text + "".join(rels)


@given(presentations())
def test_round_trip(text):
    A = parse_algebra(text)
    B = parse_algebra(format_algebra(A))
    assert same_presentation(A, B)
    assert format_algebra(B) == format_algebra(A)
