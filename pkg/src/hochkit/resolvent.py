"""Koszul-Tate resolvent, enveloping algebra, acyclic algebra and the embedding phi.

Naming of generated variables:

* ``z{k}_{w}_{i}``: Tate variables of degree ``-k`` and weight ``w``
* ``v''``: right copy of ``v`` in ``S = R (x) R`` (the left copy is ``v`` itself)
* ``f_v = v'' - v``: generators of the augmentation ideal of ``S``
* ``ft_v`` and ``Tft_v``: the cycles and their cones in the acyclic algebra ``B``
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .gca import (Algebra, AlgebraMap, Derivation, Element, PresentationError,
                  Variable, check_presentation, commutator)
from .homology import WindowError, coordinates, monomials, slice
from .linalg import Echelon, clear_denominators, kernel_and_image, quotient_representatives


class ResolutionError(ValueError):
    pass


@dataclass
class AffineAlgebra:
    """``Q[x_1..x_n] / (f_1..f_m)`` with positive weights and homogeneous relations."""

    ring: Algebra
    relations: list[Element]

    def __post_init__(self):
        for v in self.ring.variables:
            if v.degree != 0:
                raise PresentationError(f"polynomial variable {v.name!r} must have degree 0")
            if v.weight <= 0:
                raise PresentationError(f"variable {v.name!r} needs a positive weight")
        for k, f in enumerate(self.relations):
            f = f.lift(self.ring)
            self.relations[k] = f
            if not f:
                raise PresentationError(f"relation {k + 1} is zero")
            ws = {w for _, w in f.bidegrees()}
            if len(ws) != 1:
                raise PresentationError(
                    f"relation {k + 1} ({f}) is not weight-homogeneous: weights {sorted(ws)}")

    @classmethod
    def build(cls, weights: dict[str, int], relations=()) -> AffineAlgebra:
        """``AffineAlgebra.build({"x": 1}, [lambda x: x**2])``-style constructor.

        ``relations`` are callables receiving the generators in order.
        """
        ring = Algebra([Variable(n, 0, w) for n, w in weights.items()], name="P")
        gens = ring.gens()
        return cls(ring, [r(*gens) for r in relations])

    @property
    def relation_weights(self) -> list[int]:
        return [f.weight for f in self.relations]


@dataclass
class Resolvent:
    algebra: AffineAlgebra
    R: Algebra
    max_degree: int
    max_weight: int
    # (depth k, weight w, names of adjoined variables) in adjunction order
    tate_log: list[tuple[int, int, list[str]]] = field(default_factory=list)

    @property
    def relations(self) -> list[Element]:
        return self.algebra.relations

    def augmentation_images(self) -> dict[str, Element]:
        """The surjection R -> A on generators (Tate variables map to zero)."""
        P = self.algebra.ring
        return {v.name: (P.gen(v.name) if v.name in P.index else P.zero())
                for v in self.R.variables}


def _homology_representatives(alg: Algebra, degree: int, weight: int) -> list[Element]:
    here = slice(alg, degree, weight)
    below = slice(alg, degree - 1, weight)
    kernel, _ = kernel_and_image(here.boundary)
    image = Echelon()
    for col in below.boundary:
        image.add(col)
    reps = quotient_representatives(image, kernel)
    out = []
    for vec in reps:
        vec = clear_denominators(vec)
        out.append(Element(alg, {here.basis[j]: Fraction(c) for j, c in vec.items()}))
    return out


def koszul_tate_resolve(A: AffineAlgebra, max_degree: int, max_weight: int) -> Resolvent:
    """Adjoin variables to ``Q[x]`` until ``H^{-k} = 0`` for ``1 <= k <= max_degree``
    in every weight ``<= max_weight``.

    Variables are adjoined weight by weight and, within one weight, by
    increasing depth.  Killing cycles are the reduced-echelon homology
    representatives, scaled to primitive integer vectors.
    """
    if max_degree < 1 or max_weight < 1:
        raise WindowError("window needs max_degree >= 1 and max_weight >= 1")
    if A.relations and max_weight < max(A.relation_weights):
        raise WindowError(
            f"weight window {max_weight} is smaller than relation weight {max(A.relation_weights)}")
    R = A.ring
    log = []
    taken = set(R.index)
    for w in range(1, max_weight + 1):
        rels = [f for f in A.relations if f.weight == w]
        if rels:
            names = [f"z1_{w}_{i}" for i in range(len(rels))]
            R = _adjoin(R, names, -1, w, rels, taken)
            log.append((1, w, names))
        for k in range(1, max_degree + 1):
            reps = _homology_representatives(R, -k, w)
            if reps:
                names = [f"z{k + 1}_{w}_{i}" for i in range(len(reps))]
                R = _adjoin(R, names, -k - 1, w, reps, taken)
                log.append((k + 1, w, names))
    R.name = "R"
    return Resolvent(A, R, max_degree, max_weight, log)


def _adjoin(R: Algebra, names, degree, weight, images, taken) -> Algebra:
    for n in names:
        if n in taken:
            raise PresentationError(f"generated name {n!r} clashes with an existing variable")
        taken.add(n)
    new = Algebra([Variable(n, degree, weight) for n in names], parent=R)
    new.set_differential({n: img for n, img in zip(names, images)})
    return new


# -- enveloping algebra ----------------------------------------------------------


@dataclass
class Enveloping:
    resolvent: Resolvent
    S: Algebra              # R plus right copies v''
    S_f: Algebra            # R plus f_v = v'' - v
    mu: AlgebraMap          # S -> R
    right: AlgebraMap       # R -> S, v -> v''
    to_f: AlgebraMap        # S -> S_f
    from_f: AlgebraMap      # S_f -> S
    F: list[str]            # names f_v in S_f, in R's generator order

    @property
    def R(self) -> Algebra:
        return self.resolvent.R

    def j(self, r: Element) -> Element:
        """Left embedding R -> S."""
        return r.lift(self.S)

    def f(self, v: str) -> Element:
        """``f_v = v'' - v`` as an element of S."""
        return self.S.gen(f"{v}''") - self.S.gen(v)


def enveloping(res: Resolvent) -> Enveloping:
    R = res.R
    names = [v.name for v in R.variables]
    S = Algebra([Variable(f"{v.name}''", v.degree, v.weight) for v in R.variables],
                parent=R, name="S")
    right = AlgebraMap(R, S, {n: S.gen(f"{n}''") for n in names})
    S.set_differential({f"{n}''": right(R.d_value(i)) for i, n in enumerate(names)})
    mu = AlgebraMap(S, R, {**{n: R.gen(n) for n in names},
                           **{f"{n}''": R.gen(n) for n in names}})

    S_f = Algebra([Variable(f"f_{v.name}", v.degree, v.weight) for v in R.variables],
                  parent=R, name="S_f")
    to_f = AlgebraMap(S, S_f, {**{n: S_f.gen(n) for n in names},
                               **{f"{n}''": S_f.gen(n) + S_f.gen(f"f_{n}") for n in names}})
    from_f = AlgebraMap(S_f, S, {**{n: S.gen(n) for n in names},
                                 **{f"f_{n}": S.gen(f"{n}''") - S.gen(n) for n in names}})
    S_f.set_differential({f"f_{n}": to_f(S.d_value(S.index[f"{n}''"])) - R.d_value(i)
                          for i, n in enumerate(names)})
    return Enveloping(res, S, S_f, mu, right, to_f, from_f, [f"f_{n}" for n in names])


# -- acyclic algebra -------------------------------------------------------------


@dataclass
class AcyclicB:
    env: Enveloping
    B: Algebra
    delta: Derivation
    epsilon: Derivation
    nu: AlgebraMap                  # B -> R
    sym: frozenset[int]             # indices of ft_v and Tft_v in B
    phi: AlgebraMap | None = None   # S_f -> B
    phi_S: AlgebraMap | None = None  # S -> B

    @property
    def R(self) -> Algebra:
        return self.env.R

    def symmetric_degree(self, mono) -> int:
        sym = self.sym
        return sum(e for i, e in mono if i in sym)

    def ft(self, v: str) -> Element:
        return self.B.gen(f"ft_{v}")

    def Tft(self, v: str) -> Element:
        return self.B.gen(f"Tft_{v}")

    def xi(self, a: Element) -> Element:
        """Inverse of the Euler derivation on the augmentation ideal J."""
        terms = {}
        for m, c in a.lift(self.B).terms.items():
            d = self.symmetric_degree(m)
            if d == 0:
                raise ValueError("xi is undefined outside the augmentation ideal")
            terms[m] = c / d
        return Element(self.B, terms)


def acyclic_algebra(env: Enveloping) -> AcyclicB:
    R = env.R
    names = [v.name for v in R.variables]
    new = [Variable(f"ft_{v.name}", v.degree, v.weight) for v in R.variables]
    new += [Variable(f"Tft_{v.name}", v.degree - 1, v.weight) for v in R.variables]
    B = Algebra(new, parent=R, name="B")
    B.set_differential({f"Tft_{n}": B.gen(f"ft_{n}") for n in names})
    delta = Derivation(B, B, -1,
                       {**{f"ft_{n}": B.gen(f"Tft_{n}") for n in names},
                        **{f"Tft_{n}": B.zero() for n in names}},
                       zero_on=names)
    epsilon = commutator(B.d, delta)
    nu = AlgebraMap(B, R, {**{n: R.gen(n) for n in names},
                           **{f"ft_{n}": R.zero() for n in names},
                           **{f"Tft_{n}": R.zero() for n in names}})
    sym = frozenset(range(len(R), len(B)))
    return AcyclicB(env, B, delta, epsilon, nu, sym)


def homotopy(acyc: AcyclicB, a: Element) -> Element:
    """``h = xi o delta``; contracts the augmentation ideal: ``[d, h] = id`` on J."""
    a = a.lift(acyc.B)
    for m in a.terms:
        if acyc.symmetric_degree(m) == 0:
            raise ValueError("homotopy is only defined on the augmentation ideal")
    return acyc.xi(acyc.delta(a))


def embed_phi(env: Enveloping, acyc: AcyclicB) -> AlgebraMap:
    """The DG embedding ``phi: S_f -> B`` with ``phi(f) = ft + h(phi(d f))``.

    Generators are processed by descending degree, so ``phi(d f_v)`` only
    needs images of generators of strictly larger degree.  Also sets
    ``acyc.phi`` and ``acyc.phi_S``.
    """
    R, S_f, B = env.R, env.S_f, acyc.B
    phi = AlgebraMap(S_f, B, {v.name: B.gen(v.name) for v in R.variables})
    for i in sorted(range(len(R)), key=lambda k: -R.degrees[k]):
        n = R.variables[i].name
        df = S_f.d_value(S_f.index[f"f_{n}"])
        image = phi(df)
        tail = homotopy(acyc, image) if image else B.zero()
        phi.set_image(f"f_{n}", acyc.ft(n) + tail)
    acyc.phi = phi
    acyc.phi_S = env.to_f.then(phi)
    return phi


def rewrite_via_phi(env: Enveloping, acyc: AcyclicB, s: Element) -> Element:
    """Express ``s`` in the variables ``v`` and ``f_v``, then substitute phi."""
    return acyc.phi(env.to_f(s.lift(env.S)))


def ideal_slice_span(acyc: AcyclicB, degree: int, weight: int) -> tuple[list[tuple], Echelon]:
    """Basis of B in one bidegree and the span of ``phi(I) B`` there."""
    B, R = acyc.B, acyc.R
    basis = monomials(B, degree, weight)
    index = {m: i for i, m in enumerate(basis)}
    span = Echelon()
    for v in R.variables:
        g = acyc.phi.images[acyc.env.S_f.index[f"f_{v.name}"]]
        for m in monomials(B, degree - v.degree, weight - v.weight):
            span.add(coordinates(g * B.monomial(m), index))
    return basis, span


def in_ideal(acyc: AcyclicB, b: Element) -> bool:
    """Is ``b`` in the ideal ``phi(I) B``?  Decided per bidegree."""
    for (deg, wt), comp in b.lift(acyc.B).components().items():
        basis, span = ideal_slice_span(acyc, deg, wt)
        index = {m: i for i, m in enumerate(basis)}
        if not span.contains(coordinates(comp, index)):
            return False
    return True


def free_basis_check(acyc: AcyclicB, degree: int, weight: int) -> bool:
    """Are ``phi(S-monomial) * Tft-monomial`` a basis of ``B`` in this bidegree?"""
    B, S_f = acyc.B, acyc.env.S_f
    basis = monomials(B, degree, weight)
    index = {m: i for i, m in enumerate(basis)}
    nR = len(acyc.R)
    t_first = 2 * nR
    span = Echelon()
    count = 0
    for m in basis:
        # reinterpret ft_v as f_v and keep Tft_v as module generators
        s_mono = tuple((i, e) for i, e in m if i < t_first)
        t_mono = tuple((i, e) for i, e in m if i >= t_first)
        s_elem = Element(S_f, {s_mono: Fraction(1)})
        candidate = acyc.phi(s_elem) * B.monomial(t_mono)
        count += 1
        if not span.add(coordinates(candidate, index)):
            return False
    return count == len(basis)


def check_resolvent(res: Resolvent) -> list[str]:
    return check_presentation(res.R)
