"""Hochschild homology from the normalized Hochschild (bar) complex.

This path shares nothing with the resolvent pipeline except exact rank, so
it serves as an independent reference.  ``A`` is handled through explicit
per-weight quotient bases; there are no Groebner bases.

In weight ``w`` the chain space ``C_m = A (x) Abar^{(x) m}`` vanishes for
``m > w`` because every element of ``Abar`` has weight at least one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .gca import Element
from .homology import coordinates, monomials
from .linalg import Echelon, rank
from .resolvent import AffineAlgebra


@dataclass
class WeightedQuotientBasis:
    """``A_w = Q[vars]_w / (relations)_w`` for ``w <= W``.

    ``basis[w]`` lists the standard monomials; ``normal_form`` reduces any
    weight-homogeneous polynomial onto them.
    """

    algebra: AffineAlgebra
    max_weight: int
    monomials: dict[int, list[tuple]] = field(repr=False)
    spans: dict[int, Echelon] = field(repr=False)
    basis: dict[int, list[tuple]] = field(default_factory=dict)

    def dim(self, w: int) -> int:
        return len(self.basis.get(w, []))

    def normal_form(self, p: Element, w: int) -> dict[int, Fraction]:
        """Coordinates of ``p`` (homogeneous of weight ``w``) in ``basis[w]``."""
        mons = self.monomials[w]
        index = {m: i for i, m in enumerate(mons)}
        reduced = self.spans[w].reduce(coordinates(p, index))
        pos = {mons.index(m): k for k, m in enumerate(self.basis[w])}
        return {pos[i]: c for i, c in reduced.items()}


def quotient_basis(A: AffineAlgebra, max_weight: int) -> WeightedQuotientBasis:
    ring = A.ring
    mons, spans, basis = {}, {}, {}
    for w in range(max_weight + 1):
        # pivots land on the earliest monomials, the rest are standard
        ms = monomials(ring, 0, w)
        index = {m: i for i, m in enumerate(ms)}
        span = Echelon()
        for rel, rw in zip(A.relations, A.relation_weights):
            for m in monomials(ring, 0, w - rw):
                span.add(coordinates(rel * ring.monomial(m), index))
        mons[w] = ms
        spans[w] = span
        pivots = set(span.pivots())
        basis[w] = [m for i, m in enumerate(ms) if i not in pivots]
    return WeightedQuotientBasis(A, max_weight, mons, spans, basis)


class BarComplex:
    """Normalized Hochschild chains of ``A`` in each weight.

    A chain basis element is a tuple of ``(weight, basis index)`` pairs
    ``(a_0, a_1, ..., a_m)`` with ``a_i`` of positive weight for ``i >= 1``.
    """

    def __init__(self, A: AffineAlgebra, max_weight: int):
        self.A = A
        self.max_weight = max_weight
        self.q = quotient_basis(A, max_weight)
        self._mult: dict = {}
        self._chains: dict = {}

    def multiply(self, a: tuple[int, int], b: tuple[int, int]) -> dict[tuple[int, int], Fraction]:
        key = (a, b)
        hit = self._mult.get(key)
        if hit is not None:
            return hit
        ring, q = self.A.ring, self.q
        wa, ia = a
        wb, ib = b
        prod = ring.monomial(q.basis[wa][ia]) * ring.monomial(q.basis[wb][ib])
        w = wa + wb
        out = {(w, i): c for i, c in q.normal_form(prod, w).items()}
        self._mult[key] = out
        return out

    def chains(self, m: int, w: int) -> list[tuple]:
        key = (m, w)
        if key not in self._chains:
            self._chains[key] = _chains(self, m, w)
        return self._chains[key]

    def boundary_column(self, chain: tuple, target_index: dict) -> dict[int, Fraction]:
        """Hochschild boundary of one basis chain, in target coordinates.

        Elements of A have degree zero, so the signs are the plain
        alternating ones.  Products of positive-weight entries stay in Abar.
        """
        m = len(chain) - 1
        out: dict[int, Fraction] = {}

        def add(key, c):
            i = target_index[key]
            v = out.get(i, 0) + c
            if v:
                out[i] = v
            else:
                out.pop(i, None)

        for i in range(m):
            sign = -1 if i % 2 else 1
            for prod, c in self.multiply(chain[i], chain[i + 1]).items():
                add(chain[:i] + (prod,) + chain[i + 2:], sign * c)
        sign = -1 if m % 2 else 1
        for prod, c in self.multiply(chain[m], chain[0]).items():
            add((prod,) + chain[1:m], sign * c)
        return out

    def boundary(self, m: int, w: int) -> list[dict[int, Fraction]]:
        if m == 0:
            return [{} for _ in self.chains(0, w)]
        target = {c: i for i, c in enumerate(self.chains(m - 1, w))}
        return [self.boundary_column(c, target) for c in self.chains(m, w)]

    def homology_dim(self, n: int, w: int) -> int:
        if n < 0 or w < 0:
            return 0
        here = len(self.chains(n, w))
        return here - rank(self.boundary(n, w)) - rank(self.boundary(n + 1, w))


def _chains(bar: BarComplex, m: int, w: int) -> list[tuple]:
    q = bar.q
    if m > w:
        return []
    out = []

    # weight compositions w_0 + ... + w_m = w with w_i >= 1 for i >= 1
    def comps(k, left):
        if k == 0:
            yield (left,)
            return
        for first in range(1, left + 1):
            for rest in comps(k - 1, left - first):
                yield rest + (first,)

    for ws in comps(m, w):
        if any(q.dim(x) == 0 for x in ws):
            continue
        for idx in product(*(range(q.dim(x)) for x in ws)):
            out.append(tuple(zip(ws, idx)))
    return out


def bar_homology(A: AffineAlgebra, n: int, w: int) -> int:
    """``dim HH_n(A)`` in weight ``w`` from the normalized bar complex."""
    return BarComplex(A, max(w, 0)).homology_dim(n, w)


def bar_dims(A: AffineAlgebra, max_n: int, max_w: int) -> dict[tuple[int, int], int]:
    bar = BarComplex(A, max_w)
    return {(n, w): bar.homology_dim(n, w) for n in range(max_n + 1) for w in range(max_w + 1)}
