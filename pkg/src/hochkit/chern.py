"""Atiyah classes, Chern characters and semiregularity of twisted complexes.

A twisted complex is a free module ``F = sum R e_i`` over the resolvent with
total differential ``d(r e_j) = (dr) e_j + (-1)^{|r|} r sum_i D[i][j] e_i``.
Module elements are dicts ``{i: coefficient}`` with coefficients on the
left.  Matrices follow the same layout: ``M[i][j]`` is the coefficient of
``e_i`` in ``M(e_j)``.

With the basis connection ``nabla(e_i) = 0`` the Atiyah class is the matrix
``-Td(D)`` in the cotangent model, the sign matching the universal class.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .atiyah import CotangentModel, cotangent_model
from .gca import Algebra, Derivation, Element, Variable
from .resolvent import Resolvent

Matrix = list[list[Element]]


class NotAChainMap(ValueError):
    """An endomorphism passed to the semiregularity map is not a chain map."""


@dataclass
class TwistedComplex:
    ring: Algebra                 # R
    basis: list[Variable]         # e_i with (degree, weight)
    D: Matrix                     # D[i][j] in R

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def degrees(self) -> list[int]:
        return [e.degree for e in self.basis]


def twisted(ring: Algebra, basis: list[tuple[str, int, int]], D) -> TwistedComplex:
    """Build a complex from ``(name, degree, weight)`` triples and a matrix.

    Entries of ``D`` may be Elements of ``ring`` or scalars.
    """
    vs = [Variable(n, d, w) for n, d, w in basis]
    mat = [[x.lift(ring) if isinstance(x, Element) else ring.scalar(x) for x in row] for row in D]
    if len(mat) != len(vs) or any(len(row) != len(vs) for row in mat):
        raise ValueError("differential matrix must be square of size len(basis)")
    return TwistedComplex(ring, vs, mat)


def involution(a: Element) -> Element:
    """``a -> (-1)^{|a|} a`` extended linearly over mixed degrees."""
    alg = a.alg
    return Element(alg, {m: (-c if alg.mono_parity(m) else c) for m, c in a.terms.items()})


def zero_matrix(alg: Algebra, n: int) -> Matrix:
    return [[alg.zero() for _ in range(n)] for _ in range(n)]


def identity_matrix(alg: Algebra, n: int) -> Matrix:
    return [[alg.one() if i == j else alg.zero() for j in range(n)] for i in range(n)]


def lift_matrix(M: Matrix, alg: Algebra) -> Matrix:
    return [[x.lift(alg) for x in row] for row in M]


def apply(M: Matrix, degree: int, vec: dict[int, Element], alg: Algebra) -> dict[int, Element]:
    """Apply the linear map of the given degree to a module element."""
    out: dict[int, Element] = {}
    for j, c in vec.items():
        c = c.lift(alg)
        if degree % 2:
            c = involution(c)
        for i in range(len(M)):
            entry = M[i][j]
            if entry:
                out[i] = out.get(i, alg.zero()) + c * entry.lift(alg)
    return {i: v for i, v in out.items() if v}


def total_d(F: TwistedComplex, vec: dict[int, Element], alg: Algebra) -> dict[int, Element]:
    """Total differential of ``F (x)_R alg``; ``alg`` must extend R."""
    out: dict[int, Element] = {}
    for j, c in vec.items():
        c = c.lift(alg)
        dc = alg.d(c)
        if dc:
            out[j] = out.get(j, alg.zero()) + dc
    for i, v in apply(F.D, 1, vec, alg).items():
        out[i] = out.get(i, alg.zero()) + v
    return {i: v for i, v in out.items() if v}


def basis_vector(alg: Algebra, j: int) -> dict[int, Element]:
    return {j: alg.one()}


def columns(M: Matrix, j: int) -> dict[int, Element]:
    return {i: M[i][j] for i in range(len(M)) if M[i][j]}


def check_twisted(F: TwistedComplex) -> list[str]:
    """Diagnostics for degree/weight bookkeeping and ``d_total^2 = 0``."""
    R = F.ring
    report = []
    for i, ei in enumerate(F.basis):
        for j, ej in enumerate(F.basis):
            entry = F.D[i][j]
            for (deg, wt) in entry.bidegrees():
                if deg != ej.degree + 1 - ei.degree:
                    report.append(f"D[{ei.name}][{ej.name}] has degree {deg}, "
                                  f"expected {ej.degree + 1 - ei.degree}")
                if wt != ej.weight - ei.weight:
                    report.append(f"D[{ei.name}][{ej.name}] has weight {wt}, "
                                  f"expected {ej.weight - ei.weight}")
    for j, ej in enumerate(F.basis):
        sq = total_d(F, total_d(F, basis_vector(R, j), R), R)
        if sq:
            report.append(f"d^2({ej.name}) = " + " + ".join(
                f"({v})*{F.basis[i].name}" for i, v in sorted(sq.items())))
    return report


def atiyah_of_complex(F: TwistedComplex, cot: CotangentModel) -> Matrix:
    """Atiyah matrix ``-Td(D)`` for the basis connection (degree 0, entries in C)."""
    return [[-cot.Td(x) for x in row] for row in F.D]


def atiyah_is_closed(F: TwistedComplex, At: Matrix, cot: CotangentModel) -> bool:
    """``[d_total, At] = 0`` on every basis vector of ``F (x)_R C``."""
    C = cot.C
    for j in range(len(F)):
        e = basis_vector(C, j)
        lhs = total_d(F, apply(At, 0, e, C), C)
        rhs = apply(At, 0, total_d(F, e, C), C)
        keys = set(lhs) | set(rhs)
        if any(lhs.get(k, C.zero()) != rhs.get(k, C.zero()) for k in keys):
            return False
    return True


def compose(M1: Matrix, k1: int, M2: Matrix, alg: Algebra) -> Matrix:
    """Matrix of ``M1 o M2`` where ``M1`` has degree ``k1``."""
    n = len(M2)
    out = zero_matrix(alg, n)
    for j in range(n):
        col = apply(M1, k1, {i: M2[i][j] for i in range(n) if M2[i][j]}, alg)
        for i, v in col.items():
            out[i][j] = v
    return out


def add(M1: Matrix, M2: Matrix) -> Matrix:
    return [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(M1, M2)]


def scale(M: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in M]


def is_zero(M: Matrix) -> bool:
    return not any(x for row in M for x in row)


def supertrace(M: Matrix, degrees: list[int], alg: Algebra) -> Element:
    """``sum_i (-1)^{deg e_i} M[i][i]``."""
    total = alg.zero()
    for i, d in enumerate(degrees):
        x = M[i][i].lift(alg)
        total = total - x if d % 2 else total + x
    return total


def exp_matrix(At: Matrix, alg: Algebra, sign: int = -1, cap: int | None = None) -> Matrix:
    """``sum_k sign^k At^k / k!`` for a degree-0 nilpotent matrix."""
    n = len(At)
    if cap is None:
        cap = n + 2 + max((w for row in At for x in row for (_d, w) in x.bidegrees()),
                          default=0) * n
    total = identity_matrix(alg, n)
    power = identity_matrix(alg, n)
    k = 0
    while True:
        k += 1
        power = scale(compose(At, 0, power, alg), Fraction(sign, k))
        if is_zero(power):
            return total
        if k > cap:
            raise ArithmeticError("Atiyah matrix is not nilpotent within the cap")
        total = add(total, power)


def chern_character(F: TwistedComplex, cot: CotangentModel | None = None) -> Element:
    """``ch(F) = str(exp(-At_F))`` in the cotangent model."""
    cot = cot or _cot_for(F)
    At = atiyah_of_complex(F, cot)
    return supertrace(exp_matrix(At, cot.C), F.degrees, cot.C)


def is_chain_map(F: TwistedComplex, phi: Matrix, degree: int) -> bool:
    """``d phi = (-1)^degree phi d`` on every basis vector."""
    R = F.ring
    sign = -1 if degree % 2 else 1
    for j in range(len(F)):
        e = basis_vector(R, j)
        lhs = total_d(F, apply(phi, degree, e, R), R)
        rhs = apply(phi, degree, total_d(F, e, R), R)
        for k in set(lhs) | set(rhs):
            if lhs.get(k, R.zero()) != rhs.get(k, R.zero()) * sign:
                return False
    return True


def semiregularity(F: TwistedComplex, phi: Matrix, degree: int = 0,
                   cot: CotangentModel | None = None) -> Element:
    """``sigma_F(phi) = str(exp(-At_F) o phi)``; rejects non-chain ``phi``."""
    phi = [[x.lift(F.ring) if isinstance(x, Element) else F.ring.scalar(x) for x in row]
           for row in phi]
    if not is_chain_map(F, phi, degree):
        raise NotAChainMap("endomorphism does not commute with the total differential")
    cot = cot or _cot_for(F)
    C = cot.C
    expo = exp_matrix(atiyah_of_complex(F, cot), C)
    return supertrace(compose(expo, 0, lift_matrix(phi, C), C), F.degrees, C)


def direct_sum(F: TwistedComplex, G: TwistedComplex) -> TwistedComplex:
    if F.ring is not G.ring:
        raise ValueError("complexes over different rings")
    R = F.ring
    n, m = len(F), len(G)
    D = zero_matrix(R, n + m)
    for i in range(n):
        for j in range(n):
            D[i][j] = F.D[i][j]
    for i in range(m):
        for j in range(m):
            D[n + i][n + j] = G.D[i][j]
    return TwistedComplex(R, list(F.basis) + list(G.basis), D)


def shift(F: TwistedComplex) -> TwistedComplex:
    """``F[1]`` on the basis ``T e_i``; ``d(Tm) = -T(dm)`` gives ``-inv(D)``."""
    basis = [Variable(f"T{e.name}", e.degree - 1, e.weight) for e in F.basis]
    return TwistedComplex(F.ring, basis, [[-involution(x) for x in row] for row in F.D])


# -- unshifted Atiyah matrix (used to compare a complex with its shift) ----------


@dataclass
class DeRham:
    """``R[dv]`` with ``deg dv = deg v`` and the degree-0 derivation ``d``."""

    R: Algebra
    Dn: Algebra
    d: Derivation


def de_rham(R: Algebra) -> DeRham:
    names = [v.name for v in R.variables]
    Dn = Algebra([Variable(f"d{v.name}", v.degree, v.weight) for v in R.variables],
                 parent=R, name="DR")
    d = Derivation(R, Dn, 0, {n: Dn.gen(f"d{n}") for n in names})
    Dn.set_differential({f"d{n}": d(R.d_value(i)) for i, n in enumerate(names)})
    return DeRham(R, Dn, d)


def right_coefficients(F: TwistedComplex, M: Matrix) -> Matrix:
    """Rewrite left coefficients ``a e_i`` as right coefficients ``e_i a``."""
    out = []
    for i, row in enumerate(M):
        di = F.basis[i].degree
        out.append([involution(x) if di % 2 else x for x in row])
    return out


def atiyah_unshifted(F: TwistedComplex, dr: DeRham) -> Matrix:
    """Right-coefficient matrix of ``[d, nabla]`` with an unshifted, degree-0 ``nabla``.

    With ``d(e_j) = sum_i e_i D'_ij`` this is ``-d(D'_ij)`` entrywise.
    """
    return [[-dr.d(x) for x in row] for row in right_coefficients(F, F.D)]


_COT: dict[int, tuple[Algebra, CotangentModel]] = {}


def _cot_for(F: TwistedComplex) -> CotangentModel:
    hit = _COT.get(id(F.ring))
    if hit is not None and hit[0] is F.ring:
        return hit[1]
    cot = cotangent_model(Resolvent(None, F.ring, 0, 0, []))
    _COT[id(F.ring)] = (F.ring, cot)
    return cot
