"""Atiyah class, Atiyah-Chern character and the decomposition map.

Sign conventions (fixed so that every differential squares to zero):

* the shift ``T`` satisfies ``d(Tm) = -T(dm)`` and ``T(a m) = (-1)^{|a|} a Tm``;
  consequently ``Td`` is a derivation of degree -1 and ``d(Td v) = -Td(d v)``;
* the connection ``nabla`` is recorded with its values already shifted
  (``nabla(phi f_v) = om_v = Tdf_v``), which makes it a derivation of degree -1;
* the Atiyah class is ``T o [d, nabla_0]`` for the unshifted connection, i.e.
  ``At = -(d nabla + nabla d)`` in terms of the shifted one.  With this choice
  ``At(Tft_v) = -om_v + nabla(h phi d f_v)``.

Algebras built here (all extend ``R``):

* ``Omega = S[om_v]``, ``om_v = Tdf_v``
* ``BOmega = B[om_v]``  (the tensor product ``B (x)_S Omega``)
* ``C = R[Td_v]``       (the cotangent model ``R (x)_S Omega``)
* ``H = R[Tft_v]``      (the Hochschild model ``B (x)_S R``)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .gca import Algebra, AlgebraMap, Derivation, Element, Variable, commutator
from .resolvent import (AcyclicB, AffineAlgebra, Enveloping, Resolvent, acyclic_algebra,
                        embed_phi, enveloping, homotopy, koszul_tate_resolve)


class NilpotenceError(RuntimeError):
    """exp(At) did not terminate within its safety cap."""


@dataclass
class OmegaAlgebra:
    env: Enveloping
    Omega: Algebra
    s: Derivation            # Td on S, degree -1, S -> Omega

    def om(self, v: str) -> Element:
        return self.Omega.gen(f"om_{v}")

    def symmetric_degree(self, mono) -> int:
        first = len(self.env.S)
        return sum(e for i, e in mono if i >= first)


def omega_algebra(env: Enveloping) -> OmegaAlgebra:
    R, S = env.R, env.S
    names = [v.name for v in R.variables]
    Om = Algebra([Variable(f"om_{v.name}", v.degree - 1, v.weight) for v in R.variables],
                 parent=S, name="Omega")
    s = Derivation(S, Om, -1, {f"{n}''": Om.gen(f"om_{n}") for n in names}, zero_on=names)
    Om.set_differential({f"om_{n}": -s(S.d(env.f(n))) for n in names})
    return OmegaAlgebra(env, Om, s)


@dataclass
class CotangentModel:
    resolvent: Resolvent
    C: Algebra
    Td: Derivation           # R -> C, degree -1

    def sym_degree(self, mono) -> int:
        first = len(self.resolvent.R)
        return sum(e for i, e in mono if i >= first)


def cotangent_model(res: Resolvent) -> CotangentModel:
    """``S_R(Omega^1_R [1])``: generators ``Td_v`` with ``d(Td v) = -Td(d v)``."""
    R = res.R
    names = [v.name for v in R.variables]
    C = Algebra([Variable(f"Td_{v.name}", v.degree - 1, v.weight) for v in R.variables],
                parent=R, name="C")
    Td = Derivation(R, C, -1, {n: C.gen(f"Td_{n}") for n in names})
    C.set_differential({f"Td_{n}": -Td(R.d_value(i)) for i, n in enumerate(names)})
    return CotangentModel(res, C, Td)


@dataclass
class HochschildModel:
    resolvent: Resolvent
    H: Algebra
    rho: AlgebraMap          # B -> H, the quotient B -> B/phi(I)B


def hochschild_model(acyc: AcyclicB) -> HochschildModel:
    """``B (x)_S R`` realised as ``R[Tft_v]``.

    ``rho(ft_v) = -rho(h phi d f_v)`` (descending degree) identifies the
    quotient by ``phi(I) B``; the differential is ``d(Tft_v) = rho(ft_v)``.
    """
    R, B = acyc.R, acyc.B
    names = [v.name for v in R.variables]
    H = Algebra([Variable(f"Tft_{v.name}", v.degree - 1, v.weight) for v in R.variables],
                parent=R, name="H")
    rho = AlgebraMap(B, H, {**{n: H.gen(n) for n in names},
                            **{f"Tft_{n}": H.gen(f"Tft_{n}") for n in names}})
    S_f = acyc.env.S_f
    for i in sorted(range(len(R)), key=lambda k: -R.degrees[k]):
        n = names[i]
        image = acyc.phi(S_f.d_value(S_f.index[f"f_{n}"]))
        tail = homotopy(acyc, image) if image else B.zero()
        rho.set_image(f"ft_{n}", -rho(tail))
    H.set_differential({f"Tft_{n}": rho(acyc.ft(n)) for n in names})
    return HochschildModel(acyc.env.resolvent, H, rho)


@dataclass
class DecompositionMaps:
    """Everything downstream of the resolvent, for one algebra and window."""

    resolvent: Resolvent
    env: Enveloping
    acyc: AcyclicB
    omega: OmegaAlgebra
    BOmega: Algebra
    phi_omega: AlgebraMap      # Omega -> BOmega
    nabla: Derivation          # B -> BOmega, degree -1
    at: Derivation             # BOmega -> BOmega, degree 0, Omega-linear
    nu_omega: AlgebraMap       # BOmega -> C
    cotangent: CotangentModel
    hochschild: HochschildModel
    Phi: AlgebraMap            # H -> C
    Psi: AlgebraMap            # C -> H
    exp_cap: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def R(self) -> Algebra:
        return self.resolvent.R

    @property
    def B(self) -> Algebra:
        return self.acyc.B

    @property
    def C(self) -> Algebra:
        return self.cotangent.C

    @property
    def H(self) -> Algebra:
        return self.hochschild.H

    def exp_at(self, a: Element, sign: int = -1) -> Element:
        return exp_atiyah(self.at, a, sign, self.exp_cap)

    def Phi_hat(self, b: Element) -> Element:
        """``(nu (x) id) o exp(-At)`` on all of B."""
        return self.nu_omega(self.exp_at(b.lift(self.BOmega)))


def tensor_B_omega(acyc: AcyclicB, omega: OmegaAlgebra) -> tuple[Algebra, AlgebraMap]:
    R, B, S, Om = acyc.R, acyc.B, acyc.env.S, omega.Omega
    names = [v.name for v in R.variables]
    BOm = Algebra([Variable(f"om_{v.name}", v.degree - 1, v.weight) for v in R.variables],
                  parent=B, name="BOmega")
    phi_S = acyc.phi_S
    phi_om = AlgebraMap(Om, BOm, {**{n: BOm.gen(n) for n in names},
                                  **{f"{n}''": phi_S(S.gen(f"{n}''")) for n in names},
                                  **{f"om_{n}": BOm.gen(f"om_{n}") for n in names}})
    BOm.set_differential({f"om_{n}": phi_om(Om.d_value(Om.index[f"om_{n}"])) for n in names})
    return BOm, phi_om


def connection(acyc: AcyclicB, BOm: Algebra) -> Derivation:
    """``nabla_B`` with ``nabla(Tft) = 0`` and ``nabla(phi f_v) = om_v``."""
    R, B = acyc.R, acyc.B
    names = [v.name for v in R.variables]
    nabla = Derivation(B, BOm, -1, {f"Tft_{n}": BOm.zero() for n in names}, zero_on=names)
    S_f = acyc.env.S_f
    for i in sorted(range(len(R)), key=lambda k: -R.degrees[k]):
        n = names[i]
        image = acyc.phi(S_f.d_value(S_f.index[f"f_{n}"]))
        tail = homotopy(acyc, image) if image else B.zero()
        nabla.set_value(f"ft_{n}", BOm.gen(f"om_{n}") - nabla(tail))
    return nabla


def atiyah_universal(acyc: AcyclicB, BOm: Algebra, nabla: Derivation) -> Derivation:
    """``At_B`` extended Omega-linearly to ``B (x)_S Omega``.

    Computed as ``-[d, nabla]`` on B's generators and cross-checked against
    ``At(Tft_v) = -om_v + nabla(h phi d f_v)``.
    """
    R, B = acyc.R, acyc.B
    comm = commutator(BOm.d, nabla)
    values = {i: -comm.value(i) for i in range(len(B))}
    S_f = acyc.env.S_f
    for v in R.variables:
        n = v.name
        image = acyc.phi(S_f.d_value(S_f.index[f"f_{n}"]))
        tail = homotopy(acyc, image) if image else B.zero()
        closed = -BOm.gen(f"om_{n}") + nabla(tail)
        if values[B.index[f"Tft_{n}"]] != closed:
            raise ArithmeticError(f"Atiyah class disagrees with its closed form on Tft_{n}")
    at = Derivation(BOm, BOm, 0, values,
                    zero_on=[f"om_{v.name}" for v in R.variables])
    for v in R.variables:
        if at(acyc.phi(S_f.gen(f"f_{v.name}"))):
            raise ArithmeticError(f"Atiyah class does not kill phi(f_{v.name})")
    return at


def exp_atiyah(at: Derivation, a: Element, sign: int = -1, cap: int = 0) -> Element:
    """``sum_n sign^n At^n(a) / n!``; stops when the power vanishes."""
    a = a.lift(at.source)
    if cap <= 0:
        cap = 2 + max((a.alg.mono_weight(m) for m in a.terms), default=0)
    total = a
    term = a
    n = 0
    while term:
        n += 1
        if n > cap:
            raise NilpotenceError(f"At^{n} still nonzero; cap {cap} exceeded")
        term = at(term) * Fraction(sign, n)
        total = total + term
    return total


def phi_map(acyc: AcyclicB, BOm: Algebra, at: Derivation, nu_omega: AlgebraMap,
            hoch: HochschildModel, cot: CotangentModel, cap: int = 0) -> AlgebraMap:
    """``Phi(Tft_v) = nu(exp(-At)(Tft_v))``, an algebra map ``H -> C``."""
    R, H, C = acyc.R, hoch.H, cot.C
    names = [v.name for v in R.variables]
    images = {n: C.gen(n) for n in names}
    for n in names:
        images[f"Tft_{n}"] = nu_omega(exp_atiyah(at, BOm.gen(f"Tft_{n}"), -1, cap))
    return AlgebraMap(H, C, images)


def reverse_map(acyc: AcyclicB, hoch: HochschildModel, cot: CotangentModel) -> AlgebraMap:
    """``Psi(Td_v) = class of delta(phi(f_v))`` in ``B / phi(I) B``."""
    R, H, C = acyc.R, hoch.H, cot.C
    S_f = acyc.env.S_f
    names = [v.name for v in R.variables]
    images = {n: H.gen(n) for n in names}
    for n in names:
        images[f"Td_{n}"] = hoch.rho(acyc.delta(acyc.phi(S_f.gen(f"f_{n}"))))
    return AlgebraMap(C, H, images)


def build(res: Resolvent) -> DecompositionMaps:
    """Run the whole construction downstream of a resolvent."""
    env = enveloping(res)
    acyc = acyclic_algebra(env)
    embed_phi(env, acyc)
    omega = omega_algebra(env)
    BOm, phi_om = tensor_B_omega(acyc, omega)
    nabla = connection(acyc, BOm)
    at = atiyah_universal(acyc, BOm, nabla)
    cot = cotangent_model(res)
    R, C = res.R, cot.C
    names = [v.name for v in R.variables]
    nu_om = AlgebraMap(BOm, C, {**{n: C.gen(n) for n in names},
                                **{f"ft_{n}": C.zero() for n in names},
                                **{f"Tft_{n}": C.zero() for n in names},
                                **{f"om_{n}": C.gen(f"Td_{n}") for n in names}})
    hoch = hochschild_model(acyc)
    cap = 2 + res.max_weight
    Phi = phi_map(acyc, BOm, at, nu_om, hoch, cot, cap)
    Psi = reverse_map(acyc, hoch, cot)
    return DecompositionMaps(res, env, acyc, omega, BOm, phi_om, nabla, at, nu_om,
                             cot, hoch, Phi, Psi, cap)


def pipeline(A: AffineAlgebra, max_degree: int, max_weight: int) -> DecompositionMaps:
    return build(koszul_tate_resolve(A, max_degree, max_weight))
