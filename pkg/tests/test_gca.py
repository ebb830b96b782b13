from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hochkit.gca import (Algebra, AlgebraMap, Derivation, DerivationError, PresentationError,
                         Variable, apply_derivation, check_presentation, commutator, mul)
from strategies import homogeneous, mixed

# even x, y, s, w; odd u, v, t
ALG = Algebra([Variable("x", 0, 1), Variable("y", 0, 1), Variable("u", -1, 1),
               Variable("v", -1, 2), Variable("s", -2, 1), Variable("t", -3, 2),
               Variable("w", -2, 2)], name="T")
x, y, u, v, s, t, w = ALG.gens()
ALG.set_differential({"x": 0, "y": 0, "u": x, "v": x * y, "s": 0, "t": s * x, "w": y * u - v})
W = 5


def random_derivation(degree, seed):
    """A derivation of the given degree with pseudo-random homogeneous values."""
    from hochkit.homology import monomials
    values = {}
    for i, var in enumerate(ALG.variables):
        basis = monomials(ALG, var.degree + degree, var.weight + 1)
        val = ALG.zero()
        for k, m in enumerate(basis[:3]):
            val = val + ALG.monomial(m, ((seed + 3 * i + k) % 5) - 2)
        values[i] = val
    return Derivation(ALG, ALG, degree, values)


def test_even_variables_commute():
    assert mul(x, y) == mul(y, x)
    assert str(x * y) == "x*y"


def test_odd_variables_anticommute():
    assert mul(u, v) == -mul(v, u)
    assert mul(u, u) == ALG.zero()
    assert (t * t).terms == {}


def test_even_negative_degree_is_polynomial():
    assert s * s != ALG.zero()
    assert (s ** 3).degree == -6


def test_mixed_presentations_rejected():
    other = Algebra([Variable("z", 0, 1)])
    with pytest.raises(PresentationError):
        mul(x, other.gen("z"))


def test_differential_example():
    P = Algebra([Variable("x", 0, 1), Variable("y", -1, 2)])
    P.set_differential({"y": P.gen("x") ** 2})
    X, Y = P.gens()
    assert apply_derivation(P.d, X * Y) == X ** 3


def test_missing_generator_value():
    D = Derivation(ALG, ALG, 0, {"x": y})
    with pytest.raises(DerivationError):
        D(u)


def test_check_presentation_valid_and_invalid():
    assert check_presentation(ALG) == []
    P = Algebra([Variable("x", 0, 1)])
    assert check_presentation(P) == []
    Q = Algebra([Variable("x", 0, 1), Variable("y", -1, 2)])
    X = Q.gen("x")
    Q.set_differential({"y": X ** 2 + X})
    report = check_presentation(Q)
    assert any("weight" in line for line in report)


def test_d_squared_flagged():
    Q = Algebra([Variable("x", 0, 1), Variable("u", -1, 1), Variable("w", -2, 2)])
    X, U, _ = Q.gens()
    Q.set_differential({"u": X, "w": U * X})
    assert check_presentation(Q)


def test_commutator_of_d_with_itself_vanishes():
    c = commutator(ALG.d, ALG.d)
    assert all(not c.value(i) for i in range(len(ALG)))


@given(mixed(ALG, W))
def test_canonical_form_idempotent(a):
    again = a.alg.zero() + a
    assert again == a
    assert all(c != 0 for c in again.terms.values())
    for m in again.terms:
        idx = [i for i, _ in m]
        assert idx == sorted(set(idx))


@given(homogeneous(ALG, W), homogeneous(ALG, W), homogeneous(ALG, W))
def test_associative_and_graded_commutative(a, b, c):
    assert (a * b) * c == a * (b * c)
    sign = -1 if (a.degree * b.degree) % 2 else 1
    assert a * b == (b * a) * sign


@given(homogeneous(ALG, W), homogeneous(ALG, W), st.integers(-1, 0), st.integers(0, 50))
def test_leibniz_rule(a, b, degree, seed):
    D = random_derivation(degree, seed)
    sign = -1 if (degree * a.degree) % 2 else 1
    assert D(a * b) == D(a) * b + (a * D(b)) * sign


@given(homogeneous(ALG, W), homogeneous(ALG, W), st.integers(0, 50))
def test_commutator_is_a_derivation(a, b, seed):
    D1, D2 = random_derivation(-1, seed), random_derivation(0, seed + 7)
    C = commutator(D1, D2)
    direct = D1(D2(a)) - D2(D1(a)) * (-1 if (D1.degree * D2.degree) % 2 else 1)
    assert C(a) == direct
    sign = -1 if (C.degree * a.degree) % 2 else 1
    assert C(a * b) == C(a) * b + (a * C(b)) * sign


@given(homogeneous(ALG, W))
def test_d_raises_degree_preserves_weight(a):
    da = ALG.d(a)
    assert ALG.d(da) == ALG.zero()
    for deg, wt in da.bidegrees():
        assert deg == a.degree + 1
        assert wt == a.weight


def test_algebra_map_is_multiplicative():
    f = AlgebraMap(ALG, ALG, {"x": y, "y": x, "u": u, "v": v * Fraction(1, 2), "s": s, "t": t, "w": w})
    assert f(u * v) == f(u) * f(v)
    assert f(x * x * y) == y * y * x


def test_extension_lift():
    P = Algebra([Variable("x", 0, 1)])
    Q = Algebra([Variable("e", -1, 1)], parent=P)
    assert Q.extends(P)
    assert (P.gen("x") * Q.gen("e")).alg is Q
