from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import built
from hochkit.chern import (NotAChainMap, atiyah_is_closed, atiyah_of_complex,
                           atiyah_unshifted, chern_character, check_twisted, compose,
                           de_rham, direct_sum, identity_matrix, scale, semiregularity, shift,
                           supertrace, twisted, zero_matrix)
from hochkit.homology import monomials

M = built("dual")
R, COT, C = M.R, M.cotangent, M.cotangent.C
x, y = R.gen("x"), R.gen("z1_2_0")


def trivial(r):
    return twisted(R, [(f"e{i}", 0, 0) for i in range(r)], [[0] * r for _ in range(r)])


def mult_by_x():
    return twisted(R, [("e0", -1, 1), ("e1", 0, 0)], [[0, 0], [x, 0]])


def koszul():
    """Resolution of R/(x) over R: x*e_b, then the correction -y needed by dy = x^2."""
    return twisted(R, [("a", -2, 2), ("b", -1, 1), ("c", 0, 0)],
                   [[0, 0, 0], [x, 0, 0], [-y, x, 0]])


def mult_by_x2():
    return twisted(R, [("g0", 0, 2), ("g1", 1, 0)], [[0, 0], [x ** 2, 0]])


POOL = [trivial(1), trivial(2), mult_by_x(), koszul(), mult_by_x2(), shift(koszul()),
        shift(mult_by_x()), direct_sum(mult_by_x(), trivial(1))]


def test_check_twisted_examples():
    assert check_twisted(trivial(3)) == []
    assert check_twisted(mult_by_x()) == []
    bad = twisted(R, [("e0", -1, 1), ("e1", 0, 0)], [[0, 0], [x, 0]])
    bad.D[0][1] = x
    assert check_twisted(bad)
    not_twisted = twisted(R, [("h0", -2, 2), ("h1", 0, 0)], [[0, 0], [y, 0]])
    assert any("d^2" in line for line in check_twisted(not_twisted))


@pytest.mark.parametrize("F", POOL)
def test_pool_is_twisted_and_atiyah_closed(F):
    assert check_twisted(F) == []
    assert atiyah_is_closed(F, atiyah_of_complex(F, COT), COT)


def test_atiyah_examples():
    At = atiyah_of_complex(trivial(2), COT)
    assert all(not e for row in At for e in row)
    At = atiyah_of_complex(mult_by_x(), COT)
    assert At[1][0] == -C.gen("Td_x")
    assert not At[0][0] and not At[0][1] and not At[1][1]


@pytest.mark.parametrize("F", POOL)
def test_shift_negates_atiyah(F):
    dr = de_rham(R)
    a, b = atiyah_unshifted(F, dr), atiyah_unshifted(shift(F), dr)
    assert all(u == -v for ra, rb in zip(a, b) for u, v in zip(ra, rb))


def test_chern_examples():
    for r in range(4):
        assert chern_character(trivial(r), COT) == C.scalar(r)
    assert chern_character(mult_by_x(), COT) == C.zero()


@pytest.mark.parametrize("F", POOL)
def test_chern_is_closed(F):
    assert C.d(chern_character(F, COT)) == C.zero()


@given(st.sampled_from(POOL), st.sampled_from(POOL))
def test_chern_additive(F, G):
    assert chern_character(direct_sum(F, G), COT) == \
        chern_character(F, COT) + chern_character(G, COT)


@pytest.mark.parametrize("F", POOL)
def test_semiregularity_of_identity_is_chern(F):
    n = len(F)
    assert semiregularity(F, identity_matrix(R, n), 0, COT) == chern_character(F, COT)
    assert semiregularity(F, zero_matrix(R, n), 0, COT) == C.zero()


@pytest.mark.parametrize("F", POOL)
def test_semiregularity_additive(F):
    n = len(F)
    ident = identity_matrix(R, n)
    xid = scale(ident, x)
    both = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(ident, xid)]
    assert semiregularity(F, both, 0, COT) == \
        semiregularity(F, ident, 0, COT) + semiregularity(F, xid, 0, COT)


def test_semiregularity_rejects_non_chain_map():
    with pytest.raises(NotAChainMap):
        semiregularity(mult_by_x(), [[1, 0], [0, 0]], 0, COT)


@st.composite
def matrix_pair(draw):
    n = draw(st.integers(1, 3))
    degs = draw(st.lists(st.integers(-3, 0), min_size=n, max_size=n))
    wts = draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))

    def matrix(k):
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                w = wts[j] - wts[i] + draw(st.integers(0, 2))
                basis = monomials(C, k + degs[j] - degs[i], w) if w >= 0 else []
                e = C.zero()
                for m in basis[:4]:
                    e = e + C.monomial(m, draw(st.integers(-2, 2)))
                row.append(e)
            out.append(row)
        return out

    k1, k2 = draw(st.integers(-2, 1)), draw(st.integers(-2, 1))
    return degs, k1, matrix(k1), k2, matrix(k2)


@given(matrix_pair())
def test_supertrace_graded_cyclic(pair):
    degs, k1, A, k2, B = pair
    sign = -1 if (k1 * k2) % 2 else 1
    assert supertrace(compose(A, k1, B, C), degs, C) == \
        supertrace(compose(B, k2, A, C), degs, C) * sign
