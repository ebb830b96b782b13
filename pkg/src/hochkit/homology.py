"""Per-bidegree linear algebra for weight-graded DG algebras.

Every algebra handled here has generators of positive weight, so each
bidegree ``(degree, weight)`` is a finite-dimensional Q-vector space with a
monomial basis.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .gca import Algebra, AlgebraMap, Element
from .linalg import kernel_and_image, rank


class WindowError(ValueError):
    """Raised for bidegree requests the model cannot answer."""


@dataclass
class BidegreeSlice:
    algebra: Algebra
    degree: int
    weight: int
    basis: list[tuple]
    # boundary[j] = image of basis[j], as {index in target slice basis: coefficient}
    boundary: list[dict[int, Fraction]] = field(repr=False)
    target_basis: list[tuple] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> list[list[Fraction]]:
        """Dense boundary matrix, rows indexed by the target basis."""
        rows = [[Fraction(0)] * len(self.basis) for _ in self.target_basis]
        for j, col in enumerate(self.boundary):
            for i, v in col.items():
                rows[i][j] = v
        return rows


_MONO_CACHE: dict = {}


def monomials(alg: Algebra, degree: int, weight: int, keep: Callable | None = None) -> list[tuple]:
    """All canonical monomials of ``alg`` in bidegree ``(degree, weight)``.

    Ordered graded-lexicographically by variable id (higher powers of
    earlier variables first).
    """
    if weight < 0:
        return []
    key = (id(alg), len(alg), degree, weight)
    hit = _MONO_CACHE.get(key)
    if hit is not None and hit[0] is alg:
        out = hit[1]
        return [m for m in out if keep(m)] if keep else list(out)
    if any(w <= 0 for w in alg.weights):
        raise WindowError(f"{alg!r} has a generator of non-positive weight")
    degs, wts, pars = alg.degrees, alg.weights, alg.parities
    n = len(alg)
    out: list[tuple] = []

    def rec(i: int, d_left: int, w_left: int, acc: list):
        if w_left == 0:
            if d_left == 0:
                out.append(tuple(acc))
            return
        if i == n or d_left > 0:
            return
        wt, dg = wts[i], degs[i]
        top = 1 if pars[i] else w_left // wt
        for e in range(top, 0, -1):
            if e * wt > w_left:
                continue
            acc.append((i, e))
            rec(i + 1, d_left - dg * e, w_left - wt * e, acc)
            acc.pop()
        rec(i + 1, d_left, w_left, acc)

    rec(0, degree, weight, [])
    _MONO_CACHE[key] = (alg, out)
    return [m for m in out if keep(m)] if keep else list(out)


def coordinates(elem: Element, index: dict[tuple, int]) -> dict[int, Fraction]:
    out = {}
    for m, c in elem.terms.items():
        try:
            out[index[m]] = c
        except KeyError:
            raise WindowError(f"monomial {m} outside the expected slice") from None
    return out


def slice(alg: Algebra, degree: int, weight: int, keep: Callable | None = None) -> BidegreeSlice:
    """Basis of bidegree ``(degree, weight)`` and its boundary to ``degree + 1``.

    ``keep`` optionally restricts both bases to a sub-complex spanned by
    monomials (e.g. a fixed symmetric degree).
    """
    basis = monomials(alg, degree, weight, keep)
    target = monomials(alg, degree + 1, weight, keep)
    index = {m: i for i, m in enumerate(target)}
    d = alg.d
    cols = []
    for m in basis:
        cols.append(coordinates(d(alg.monomial(m)), index))
    return BidegreeSlice(alg, degree, weight, basis, cols, target)


def homology_dim(alg: Algebra, degree: int, weight: int, keep: Callable | None = None) -> int:
    here = slice(alg, degree, weight, keep)
    below = slice(alg, degree - 1, weight, keep)
    return here.dim - rank(here.boundary) - rank(below.boundary)


def homology_dims(alg: Algebra, degrees: Iterable[int], weights: Iterable[int],
                  keep: Callable | None = None, threads: int = 1) -> dict[tuple[int, int], int]:
    """Table ``{(degree, weight): dim H}`` computed with exact ranks."""
    cells = [(n, w) for n in degrees for w in weights]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            dims = list(pool.map(lambda c: homology_dim(alg, c[0], c[1], keep), cells))
    else:
        dims = [homology_dim(alg, n, w, keep) for n, w in cells]
    return dict(zip(cells, dims))


def boundary_squares_to_zero(alg: Algebra, degree: int, weight: int,
                             keep: Callable | None = None) -> bool:
    """Matrix-level check that consecutive boundaries compose to zero."""
    first = slice(alg, degree, weight, keep)
    second = slice(alg, degree + 1, weight, keep)
    for col in first.boundary:
        image: dict[int, Fraction] = {}
        for i, c in col.items():
            for k, v in second.boundary[i].items():
                image[k] = image.get(k, 0) + c * v
        if any(image.values()):
            return False
    return True


def lowest_degree(alg: Algebra, weight: int) -> int:
    """A degree below which every ``(degree, weight)`` slice is empty."""
    ratio = min(Fraction(d, w) for d, w in zip(alg.degrees, alg.weights))
    return min(0, int(ratio * weight) - 1)


def euler_characteristic(alg: Algebra, weight: int) -> tuple[int, int]:
    """``(sum (-1)^n dim H^n_w, sum (-1)^n dim slice_w^n)`` over all degrees.

    The two numbers agree for any finite complex; a mismatch signals a
    rank error.
    """
    lo = lowest_degree(alg, weight)
    from_h = from_c = 0
    for n in range(lo, 1):
        sign = -1 if n % 2 else 1
        from_h += sign * homology_dim(alg, n, weight)
        from_c += sign * len(monomials(alg, n, weight))
    return from_h, from_c


# -- decomposition -------------------------------------------------------------


@dataclass
class DecompositionReport:
    """Hochschild dims and their split by symmetric degree.

    Keys use the homological index ``n = -degree``.
    """

    hh: dict[tuple[int, int], int]                # (n, w) -> dim
    parts: dict[tuple[int, int, int], int]        # (n, w, p) -> dim
    oracle: dict[tuple[int, int], int] = field(default_factory=dict)

    def summed(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for (n, w, _p), d in self.parts.items():
            out[(n, w)] = out.get((n, w), 0) + d
        return out

    @property
    def sum_rule(self) -> bool:
        summed = self.summed()
        return all(summed.get(k, 0) == d for k, d in self.hh.items()) and \
            all(k in self.hh for k in summed)

    @property
    def oracle_match(self) -> bool | None:
        if not self.oracle:
            return None
        return all(self.hh.get(k) == d for k, d in self.oracle.items())

    def totals(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (n, _w), d in self.hh.items():
            out[n] = out.get(n, 0) + d
        return out


def decompose(cot_alg: Algebra, sym_degree: Callable, hoch_alg: Algebra,
              max_n: int, max_w: int, threads: int = 1) -> DecompositionReport:
    """Split Hochschild homology by the number ``p`` of cotangent factors.

    ``sym_degree`` counts the cotangent generators of a monomial of
    ``cot_alg``; the differential preserves it, so each ``p`` is a
    sub-complex.  ``hoch_alg`` supplies the unsplit dims for the sum rule.
    """
    degrees = [-n for n in range(max_n + 1)]
    weights = list(range(max_w + 1))
    raw = homology_dims(hoch_alg, degrees, weights, threads=threads)
    hh = {(-n, w): d for (n, w), d in raw.items()}
    parts: dict[tuple[int, int, int], int] = {}
    cells = [(n, w, p) for n in range(max_n + 1) for w in weights for p in range(w + 1)]

    def one(cell):
        n, w, p = cell
        return homology_dim(cot_alg, -n, w, keep=lambda m, p=p: sym_degree(m) == p)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            dims = list(pool.map(one, cells))
    else:
        dims = [one(c) for c in cells]
    for cell, d in zip(cells, dims):
        if d:
            parts[cell] = d
    return DecompositionReport(hh, parts)


# -- isomorphism checks --------------------------------------------------------


@dataclass
class CellResult:
    degree: int
    weight: int
    source_dim: int
    target_dim: int
    rank: int
    residual_zero: bool

    @property
    def ok(self) -> bool:
        return self.source_dim == self.target_dim == self.rank and self.residual_zero


@dataclass
class IsoReport:
    cells: list[CellResult]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cells)

    def failures(self) -> list[CellResult]:
        return [c for c in self.cells if not c.ok]


def map_matrix(f: AlgebraMap | Callable, source: Algebra, target: Algebra,
               degree: int, weight: int) -> tuple[list[tuple], list[tuple], list[dict]]:
    src = monomials(source, degree, weight)
    tgt = monomials(target, degree, weight)
    index = {m: i for i, m in enumerate(tgt)}
    cols = [coordinates(f(source.monomial(m)).lift(target), index) for m in src]
    return src, tgt, cols


def chain_residual_zero(f: AlgebraMap | Callable, source: Algebra, target: Algebra,
                        basis: list[tuple]) -> bool:
    """Exact test of ``f d = d f`` on each basis monomial."""
    for m in basis:
        x = source.monomial(m)
        if f(source.d(x)).lift(target) != target.d(f(x).lift(target)):
            return False
    return True


def verify_iso(f: AlgebraMap | Callable, source: Algebra, target: Algebra,
               degrees: Iterable[int], weights: Iterable[int], threads: int = 1) -> IsoReport:
    """Per-bidegree: is ``f`` a chain map whose matrix is square and invertible?

    Dimension mismatches are recorded in the report, never raised.
    """
    cells = [(n, w) for n in degrees for w in weights]

    def one(cell):
        n, w = cell
        src, tgt, cols = map_matrix(f, source, target, n, w)
        return CellResult(n, w, len(src), len(tgt), rank(cols),
                          chain_residual_zero(f, source, target, src))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return IsoReport(list(pool.map(one, cells)))
    return IsoReport([one(c) for c in cells])


@dataclass
class Deviation:
    degree: int
    weight: int
    dim: int
    chain_rank: int        # rank of (g - id) on the chain space
    homology_rank: int     # rank of the map induced by (g - id) on homology


def deviation_from_identity(g: Callable, alg: Algebra, degrees: Iterable[int],
                            weights: Iterable[int]) -> list[Deviation]:
    """Measure how far a self-map ``g`` of ``alg`` is from the identity.

    Reported, never asserted: ``homology_rank == 0`` means ``g`` induces the
    identity on homology in that bidegree.
    """
    out = []
    for n in degrees:
        for w in weights:
            here = slice(alg, n, w)
            below = slice(alg, n - 1, w)
            index = {m: i for i, m in enumerate(here.basis)}
            diff = []
            for j, m in enumerate(here.basis):
                x = alg.monomial(m)
                col = coordinates(g(x).lift(alg) - x, index)
                diff.append(col)
            cycles, _ = kernel_and_image(here.boundary)
            _, bounds = kernel_and_image(below.boundary)
            induced = []
            for z in cycles:
                v: dict[int, Fraction] = {}
                for j, c in z.items():
                    for k, x in diff[j].items():
                        v[k] = v.get(k, 0) + c * x
                induced.append(bounds.reduce({k: x for k, x in v.items() if x}))
            out.append(Deviation(n, w, here.dim, rank(diff), rank(induced)))
    return out
