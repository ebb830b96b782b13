from fractions import Fraction

import pytest
from hypothesis import given

from conftest import ALGEBRAS, built, dual_numbers, line, non_ci
from hochkit.bar import quotient_basis
from hochkit.gca import PresentationError, check_presentation, commutator
from hochkit.homology import WindowError, homology_dim, monomials, slice
from hochkit.resolvent import (AffineAlgebra, acyclic_algebra, embed_phi, enveloping,
                               free_basis_check, homotopy, in_ideal, koszul_tate_resolve,
                               rewrite_via_phi)
from strategies import homogeneous

DUAL = built("dual")
NONCI = built("non_ci")


def positive(acyc):
    return lambda m: acyc.symmetric_degree(m) > 0


def test_smooth_case_adds_nothing():
    res = koszul_tate_resolve(line(), 4, 6)
    assert [v.name for v in res.R.variables] == ["x"]
    assert res.tate_log == []


def test_dual_numbers_koszul_complex():
    res = koszul_tate_resolve(dual_numbers(), 4, 6)
    assert [(v.degree, v.weight) for v in res.R.variables] == [(0, 1), (-1, 2)]
    x = res.R.gen("x")
    assert res.R.d_value(1) == x ** 2


def test_non_ci_adjoins_degree_two_variable():
    res = koszul_tate_resolve(non_ci(), 3, 6)
    R = res.R
    x, y = R.gen("x"), R.gen("y")
    y1, y2 = R.gen("z1_2_0"), R.gen("z1_2_1")
    assert R.d_value(R.index["z1_2_0"]) == x ** 2
    assert R.d_value(R.index["z1_2_1"]) == x * y
    z = R.index["z2_3_0"]
    assert (R.variables[z].degree, R.variables[z].weight) == (-2, 3)
    assert R.d_value(z) == x * y2 - y * y1


@pytest.mark.parametrize("name", [a[0] for a in ALGEBRAS])
def test_resolvent_is_acyclic(name):
    M = built(name)
    res = M.resolvent
    q = quotient_basis(res.algebra, res.max_weight)
    assert check_presentation(M.R) == []
    for w in range(res.max_weight + 1):
        assert homology_dim(M.R, 0, w) == q.dim(w)
        for k in range(1, res.max_degree + 1):
            assert homology_dim(M.R, -k, w) == 0


def test_window_errors():
    with pytest.raises(WindowError):
        koszul_tate_resolve(dual_numbers(), 0, 6)
    with pytest.raises(WindowError):
        koszul_tate_resolve(AffineAlgebra.build({"x": 1}, [lambda x: x**3]), 2, 2)


def test_inhomogeneous_relation_rejected():
    with pytest.raises(PresentationError):
        AffineAlgebra.build({"x": 1}, [lambda x: x**2 + x])


def test_enveloping_line():
    env = enveloping(koszul_tate_resolve(line(), 2, 3))
    S = env.S
    assert [v.name for v in S.variables] == ["x", "x''"]
    assert env.mu(S.gen("x''")) == env.R.gen("x")
    assert env.f("x") == S.gen("x''") - S.gen("x")


def test_enveloping_dual_numbers(dual_maps):
    env = dual_maps.env
    S = env.S
    xl, xr = S.gen("x"), S.gen("x''")
    assert S.d_value(S.index["z1_2_0''"]) == xr ** 2
    assert S.d(env.f("z1_2_0")) == (xr + xl) * env.f("x")
    assert env.mu(env.f("z1_2_0")) == env.R.zero()
    assert check_presentation(S, env.mu) == []
    r = env.R.gen("z1_2_0") * env.R.gen("x")
    assert env.mu(env.j(r)) == r


def test_acyclic_algebra_values(dual_maps):
    acyc = dual_maps.acyc
    B = acyc.B
    for v in dual_maps.R.variables:
        ft, Tft = acyc.ft(v.name), acyc.Tft(v.name)
        assert B.d(Tft) == ft
        assert acyc.delta(Tft) == B.zero()
        assert acyc.delta(ft) == Tft
    ftx, Tftx = acyc.ft("x"), acyc.Tft("x")
    assert acyc.epsilon(ftx * Tftx) == ftx * Tftx * 2


def test_homotopy_examples(dual_maps):
    acyc = dual_maps.acyc
    ftx, Tftx = acyc.ft("x"), acyc.Tft("x")
    assert homotopy(acyc, ftx) == Tftx
    assert homotopy(acyc, ftx ** 2) == ftx * Tftx
    with pytest.raises(ValueError):
        homotopy(acyc, acyc.B.one())


def test_phi_examples(line_maps, dual_maps):
    acyc = line_maps.acyc
    assert acyc.phi(line_maps.env.S_f.gen("f_x")) == acyc.ft("x")
    acyc = dual_maps.acyc
    B = acyc.B
    x = B.gen("x")
    fy = dual_maps.env.S_f.gen("f_z1_2_0")
    expected = acyc.ft("z1_2_0") + x * acyc.Tft("x") * 2 + acyc.ft("x") * acyc.Tft("x")
    assert acyc.phi(fy) == expected
    assert acyc.nu(acyc.phi(fy)) == dual_maps.R.zero()


def test_rewrite_via_phi(dual_maps):
    env, acyc = dual_maps.env, dual_maps.acyc
    B = acyc.B
    x, ftx = B.gen("x"), acyc.ft("x")
    xr = env.S.gen("x''")
    assert rewrite_via_phi(env, acyc, xr) == x + ftx
    assert rewrite_via_phi(env, acyc, xr ** 2) == x ** 2 + x * ftx * 2 + ftx ** 2
    dfy = env.S.d(env.f("z1_2_0"))
    assert rewrite_via_phi(env, acyc, dfy) == x * ftx * 2 + ftx ** 2


@given(homogeneous(NONCI.B, 4, -3, keep=positive(NONCI.acyc)))
def test_xi_inverts_epsilon(a):
    acyc = NONCI.acyc
    assert acyc.epsilon(acyc.xi(a)) == a
    assert acyc.xi(acyc.epsilon(a)) == a


@given(homogeneous(NONCI.B, 4, -3, keep=positive(NONCI.acyc)))
def test_epsilon_and_xi_commute_with_d_and_delta(a):
    acyc, B = NONCI.acyc, NONCI.B
    eps, delta, d = acyc.epsilon, acyc.delta, B.d
    assert eps(d(a)) == d(eps(a))
    assert eps(delta(a)) == delta(eps(a))
    assert acyc.xi(d(a)) == d(acyc.xi(a))
    assert acyc.xi(delta(a)) == delta(acyc.xi(a))


def test_epsilon_commutes_with_d_as_derivations():
    c = commutator(NONCI.acyc.epsilon, NONCI.B.d)
    assert all(not c.value(i) for i in range(len(NONCI.B)))


@given(homogeneous(NONCI.B, 4, -3, keep=positive(NONCI.acyc)))
def test_homotopy_contracts(a):
    acyc, d = NONCI.acyc, NONCI.B.d
    assert d(homotopy(acyc, a)) + homotopy(acyc, d(a)) == a


@given(homogeneous(NONCI.env.S_f, 4, -3), homogeneous(NONCI.env.S_f, 4, -3))
def test_phi_is_multiplicative_chain_map(s, t):
    phi, S_f, B = NONCI.acyc.phi, NONCI.env.S_f, NONCI.B
    assert phi(s * t) == phi(s) * phi(t)
    assert phi(S_f.d(s)) == B.d(phi(s))


def _in_I(m, S_f):
    return any(S_f.variables[i].name.startswith("f_") for i, _ in m)


@given(homogeneous(NONCI.env.S_f, 4, -2, keep=lambda m: _in_I(m, NONCI.env.S_f)))
def test_euler_of_phi_lies_in_ideal(s):
    acyc = NONCI.acyc
    assert in_ideal(acyc, acyc.epsilon(acyc.phi(s)))


@pytest.mark.parametrize("name", [a[0] for a in ALGEBRAS])
def test_B_is_free_over_phi_S(name):
    acyc = built(name).acyc
    for n in range(0, 4):
        for w in range(0, 4):
            assert free_basis_check(acyc, -n, w)
