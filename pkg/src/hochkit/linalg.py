"""Exact sparse linear algebra over Q.

Vectors are dicts ``{column: value}`` with nonzero values.  Rank uses
fraction-free integer elimination with content removal; bases and normal
forms use reduced echelon forms over Fraction.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable


def _integral(vec: dict) -> dict[int, int]:
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {}
    for k, v in vec.items():
        iv = int(v * den)
        if iv:
            out[k] = iv
    return out


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def rank(vectors: Iterable[dict], reverse: bool = False) -> int:
    """Rank of a family of sparse vectors.

    Each incoming vector is reduced fraction-free against the pivot rows
    collected so far.  ``reverse`` switches the pivot column from the
    smallest to the largest nonzero index; both orders must agree.
    """
    pivots: dict[int, dict[int, int]] = {}
    pick = max if reverse else min
    r = 0
    for vec in vectors:
        row = _integral(vec)
        while row:
            col = pick(row)
            p = pivots.get(col)
            if p is None:
                pivots[col] = _primitive(row)
                r += 1
                break
            a, b = p[col], row[col]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in row.items()}
            for k, v in p.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = _primitive(new)
    return r


class Echelon:
    """Incremental echelon basis over Q with leading-column pivots."""

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict[int, Fraction]:
        row = {k: Fraction(v) for k, v in vec.items() if v}
        rows = self.rows
        while True:
            cols = [c for c in row if c in rows]
            if not cols:
                return row
            col = min(cols)
            c = row[col]
            for k, v in rows[col].items():
                w = row.get(k, 0) - c * v
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return False if it was already in the span."""
        row = self.reduce(vec)
        if not row:
            return False
        col = min(row)
        c = row[col]
        row = {k: v / c for k, v in row.items()}
        # keep existing rows reduced against the new pivot
        for other in self.rows.values():
            x = other.get(col)
            if x:
                for k, v in row.items():
                    w = other.get(k, 0) - x * v
                    if w:
                        other[k] = w
                    else:
                        other.pop(k, None)
        self.rows[col] = row
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[dict[int, Fraction]]:
        return [dict(self.rows[c]) for c in sorted(self.rows)]


def kernel_and_image(columns: list[dict]) -> tuple[list[dict], Echelon]:
    """Kernel basis and image echelon of the matrix with the given columns.

    ``columns[j]`` is the image of the j-th source basis vector.  Kernel
    vectors are returned in reduced echelon form (keyed by source index).
    """
    image = Echelon()
    # track each reduced image row together with its source combination
    rows: dict[int, tuple[dict, dict]] = {}
    kernel = Echelon()
    for j, col in enumerate(columns):
        vec = {k: Fraction(v) for k, v in col.items() if v}
        comb = {j: Fraction(1)}
        while vec:
            lead = min(vec)
            hit = rows.get(lead)
            if hit is None:
                break
            pvec, pcomb = hit
            c = vec[lead] / pvec[lead]
            for k, v in pvec.items():
                w = vec.get(k, 0) - c * v
                if w:
                    vec[k] = w
                else:
                    vec.pop(k, None)
            for k, v in pcomb.items():
                w = comb.get(k, 0) - c * v
                if w:
                    comb[k] = w
                else:
                    comb.pop(k, None)
        if vec:
            rows[min(vec)] = (vec, comb)
            image.add(vec)
        else:
            kernel.add(comb)
    return kernel.basis(), image


def nullspace(columns: list[dict]) -> list[dict]:
    return kernel_and_image(columns)[0]


def quotient_representatives(subspace: Echelon, vectors: Iterable[dict]) -> list[dict]:
    """Reduced echelon basis of span(vectors) modulo ``subspace``.

    The returned vectors vanish on the pivot columns of ``subspace``.
    """
    quo = Echelon()
    for v in vectors:
        r = subspace.reduce(v)
        if r:
            quo.add(r)
    reps = []
    for r in quo.basis():
        reps.append(subspace.reduce(r))
    return reps


def solve_in_span(basis: list[dict], target: dict) -> dict[int, Fraction] | None:
    """Coefficients c with sum c_j basis[j] == target, or None."""
    sol = kernel_and_image([*basis, {k: -Fraction(v) for k, v in target.items()}])[0]
    n = len(basis)
    for vec in sol:
        if n in vec:
            c = vec[n]
            return {j: v / c for j, v in vec.items() if j != n}
    if not target:
        return {}
    return None


def clear_denominators(vec: dict) -> dict[int, int]:
    """Primitive integer multiple of ``vec`` with positive leading entry."""
    row = _primitive(_integral(vec))
    if row and row[min(row)] < 0:
        row = {k: -v for k, v in row.items()}
    return row
