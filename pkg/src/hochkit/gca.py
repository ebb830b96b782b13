"""Free graded-commutative DG algebras over Q with an extra weight grading.

Conventions: cohomological degrees, generators in degrees <= 0, differential
of degree +1.  A variable's parity is its degree mod 2.  Monomials are tuples
of ``(index, exponent)`` pairs sorted by variable index; the Koszul sign of
reordering is absorbed into the coefficient.

An :class:`Algebra` may extend a parent algebra by appending variables, so an
element of the parent is an element of every descendant with the same
monomial encoding.  Binary operations between related algebras promote to the
larger one.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping


class PresentationError(ValueError):
    """Raised when elements of unrelated algebras are combined."""


class DerivationError(KeyError):
    """Raised when a derivation meets a generator it has no value for."""


@dataclass(frozen=True)
class Variable:
    name: str
    degree: int
    weight: int

    @property
    def parity(self) -> int:
        return self.degree % 2


class Algebra:
    """A free graded-commutative algebra over Q, optionally with a differential."""

    def __init__(self, variables: Iterable[Variable] = (), parent: Algebra | None = None,
                 name: str = ""):
        new = tuple(variables)
        base = parent.variables if parent is not None else ()
        self.parent = parent
        self.name = name
        self.variables: tuple[Variable, ...] = tuple(base) + new
        self.offset = len(base)
        self.index: dict[str, int] = {}
        for i, v in enumerate(self.variables):
            if v.name in self.index:
                raise PresentationError(f"duplicate variable name {v.name!r}")
            if v.degree > 0:
                raise PresentationError(f"variable {v.name!r} has positive degree")
            self.index[v.name] = i
        self.parities = tuple(v.parity for v in self.variables)
        self.degrees = tuple(v.degree for v in self.variables)
        self.weights = tuple(v.weight for v in self.variables)
        self._d: dict[int, Element] = {}
        if parent is not None:
            self._d.update(parent._d)
        self._mul_cache: dict = {}
        self._diff: Derivation | None = None

    # -- structure -------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.variables)

    def __repr__(self) -> str:
        label = self.name or "Algebra"
        return f"<{label}: {', '.join(v.name for v in self.variables)}>"

    def extends(self, other: Algebra) -> bool:
        a: Algebra | None = self
        while a is not None:
            if a is other:
                return True
            a = a.parent
        return False

    def new_variables(self) -> tuple[Variable, ...]:
        return self.variables[self.offset:]

    # -- elements --------------------------------------------------------------

    def zero(self) -> Element:
        return Element(self, {})

    def one(self) -> Element:
        return Element(self, {(): Fraction(1)})

    def scalar(self, c) -> Element:
        c = Fraction(c)
        return Element(self, {(): c} if c else {})

    def gen(self, name_or_index) -> Element:
        i = self._idx(name_or_index)
        return Element(self, {((i, 1),): Fraction(1)})

    def gens(self) -> list[Element]:
        return [self.gen(i) for i in range(len(self))]

    def monomial(self, mono, coeff=1) -> Element:
        return Element(self, {tuple(mono): Fraction(coeff)} if coeff else {})

    def _idx(self, name_or_index) -> int:
        if isinstance(name_or_index, int):
            return name_or_index
        try:
            return self.index[name_or_index]
        except KeyError:
            raise PresentationError(f"unknown variable {name_or_index!r}") from None

    # -- monomial bookkeeping --------------------------------------------------

    def mono_degree(self, mono) -> int:
        degs = self.degrees
        return sum(degs[i] * e for i, e in mono)

    def mono_weight(self, mono) -> int:
        ws = self.weights
        return sum(ws[i] * e for i, e in mono)

    def mono_parity(self, mono) -> int:
        par = self.parities
        return sum(e for i, e in mono if par[i]) & 1

    def mono_mul(self, m1, m2):
        """Return ``(sign, monomial)`` for ``m1*m2``, or None if it vanishes."""
        if not m1:
            return 1, m2
        if not m2:
            return 1, m1
        key = (m1, m2)
        cache = self._mul_cache
        if key in cache:
            return cache[key]
        par = self.parities
        n1 = len(m1)
        odd_suffix = [0] * (n1 + 1)
        for k in range(n1 - 1, -1, -1):
            odd_suffix[k] = odd_suffix[k + 1] + (1 if par[m1[k][0]] else 0)
        out = []
        swaps = 0
        i = j = 0
        n2 = len(m2)
        result = None
        while i < n1 and j < n2:
            a, ea = m1[i]
            b, eb = m2[j]
            if a < b:
                out.append(m1[i])
                i += 1
            elif b < a:
                if par[b]:
                    swaps += odd_suffix[i]
                out.append(m2[j])
                j += 1
            else:
                if par[a]:
                    break
                out.append((a, ea + eb))
                i += 1
                j += 1
        else:
            out.extend(m1[i:])
            out.extend(m2[j:])
            result = (-1 if swaps & 1 else 1, tuple(out))
        cache[key] = result
        return result

    # -- differential ----------------------------------------------------------

    def set_differential(self, values: Mapping) -> None:
        """Define the differential on (some of) this algebra's own generators.

        Generators left unset have zero differential.  Values may be elements
        of any algebra this one extends.
        """
        for key, val in values.items():
            i = self._idx(key)
            if i < self.offset:
                raise PresentationError(
                    f"differential of inherited generator {self.variables[i].name!r} is fixed")
            if isinstance(val, (int, Fraction)):
                val = self.scalar(val)
            self._d[i] = val
        self._diff = None

    def d_value(self, i: int) -> Element:
        val = self._d.get(i)
        return val.lift(self) if val is not None else self.zero()

    @property
    def d(self) -> Derivation:
        """The differential, as a degree +1 derivation."""
        if self._diff is None:
            self._diff = Derivation(self, self, 1,
                                    {i: self.d_value(i) for i in range(len(self))})
        return self._diff


class Element:
    """A polynomial with exact rational coefficients in canonical form."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = terms

    # -- coercion --------------------------------------------------------------

    def lift(self, alg: Algebra) -> Element:
        if alg is self.alg:
            return self
        if not alg.extends(self.alg):
            raise PresentationError(f"cannot lift element of {self.alg!r} into {alg!r}")
        return Element(alg, self.terms)

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.alg is self.alg:
                return self, other
            if other.alg.extends(self.alg):
                return Element(other.alg, self.terms), other
            if self.alg.extends(other.alg):
                return self, Element(self.alg, other.terms)
            raise PresentationError(
                f"mismatched presentations {self.alg!r} and {other.alg!r}")
        if isinstance(other, (int, Rational)):
            return self, self.alg.scalar(other)
        return None

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms = dict(a.terms)
        for m, c in b.terms.items():
            v = terms.get(m, 0) + c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)
        return Element(a.alg, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = Fraction(other)
            if not c:
                return self.alg.zero()
            return Element(self.alg, {m: v * c for m, v in self.terms.items()})
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        alg = a.alg
        mm = alg.mono_mul
        terms: dict = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                r = mm(m1, m2)
                if r is None:
                    continue
                s, m = r
                v = terms.get(m, 0) + (c1 * c2 if s > 0 else -c1 * c2)
                if v:
                    terms[m] = v
                else:
                    del terms[m]
        return Element(alg, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- gradings --------------------------------------------------------------

    def bidegrees(self) -> set[tuple[int, int]]:
        alg = self.alg
        return {(alg.mono_degree(m), alg.mono_weight(m)) for m in self.terms}

    @property
    def degree(self) -> int:
        """Cohomological degree; the element must be homogeneous."""
        degs = {self.alg.mono_degree(m) for m in self.terms}
        if len(degs) > 1:
            raise ValueError("element is not homogeneous in degree")
        return degs.pop() if degs else 0

    @property
    def weight(self) -> int:
        ws = {self.alg.mono_weight(m) for m in self.terms}
        if len(ws) > 1:
            raise ValueError("element is not homogeneous in weight")
        return ws.pop() if ws else 0

    def components(self) -> dict[tuple[int, int], Element]:
        out: dict[tuple[int, int], dict] = {}
        alg = self.alg
        for m, c in self.terms.items():
            out.setdefault((alg.mono_degree(m), alg.mono_weight(m)), {})[m] = c
        return {k: Element(alg, t) for k, t in out.items()}

    def max_index(self) -> int:
        return max((i for m in self.terms for i, _ in m), default=-1)

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    # -- display ---------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = [v.name for v in self.alg.variables]
        parts = []
        for m in sorted(self.terms, key=_display_key):
            c = self.terms[m]
            factors = [names[i] if e == 1 else f"{names[i]}^{e}" for i, e in m]
            mag = abs(c)
            body = "*".join(factors)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            parts.append(("-" if c < 0 else "+", text))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"Element({self})"


def _display_key(m):
    return (-sum(e for _, e in m), tuple(-i for i, _ in m), tuple(e for _, e in m))


class Derivation:
    """A graded derivation ``source -> target`` given by its generator values.

    ``target`` must extend ``source``.  Generators listed in ``zero_on`` are
    killed; any other generator without a value raises DerivationError.  The
    extension rule is ``D(ab) = D(a) b + (-1)^{|D||a|} a D(b)``.
    """

    def __init__(self, source: Algebra, target: Algebra, degree: int,
                 values: Mapping | None = None, zero_on: Iterable = ()):
        if not target.extends(source):
            raise PresentationError("derivation target must extend its source")
        self.source = source
        self.target = target
        self.degree = degree
        self.values: dict[int, Element] = {}
        self.zero_on = {source._idx(k) for k in zero_on}
        self._cache: dict = {}
        for k, v in (values or {}).items():
            self.set_value(k, v)

    def set_value(self, key, value: Element) -> None:
        i = self.source._idx(key)
        self.values[i] = value.lift(self.target) if isinstance(value, Element) \
            else self.target.scalar(value)

    def value(self, i: int) -> Element:
        v = self.values.get(i)
        if v is not None:
            return v
        if i in self.zero_on:
            return self.target.zero()
        raise DerivationError(
            f"derivation has no value on generator {self.source.variables[i].name!r}")

    def on_monomial(self, mono) -> dict:
        cache = self._cache
        if mono in cache:
            return cache[mono]
        tgt = self.target
        degs = self.source.degrees
        odd_shift = self.degree & 1
        total = Element(tgt, {})
        prefix_deg = 0
        for t, (i, e) in enumerate(mono):
            val = self.value(i)
            if val.terms:
                head = mono[:t] + (((i, e - 1),) if e > 1 else ())
                coeff = e if not (odd_shift and prefix_deg & 1) else -e
                piece = Element(tgt, {head: Fraction(coeff)}) * val
                if t + 1 < len(mono):
                    piece = piece * Element(tgt, {mono[t + 1:]: Fraction(1)})
                total = total + piece
            prefix_deg += degs[i] * e
        cache[mono] = total.terms
        return total.terms

    def __call__(self, a: Element) -> Element:
        if a.alg is not self.source and not a.alg.extends(self.source) \
                and not self.source.extends(a.alg):
            raise PresentationError(f"derivation cannot act on elements of {a.alg!r}")
        if a.max_index() >= len(self.source):
            raise DerivationError("element involves generators outside the derivation's source")
        terms: dict = {}
        for m, c in a.terms.items():
            for m2, c2 in self.on_monomial(m).items():
                v = terms.get(m2, 0) + c * c2
                if v:
                    terms[m2] = v
                else:
                    del terms[m2]
        return Element(self.target, terms)

    def __neg__(self) -> Derivation:
        return self.scaled(-1)

    def scaled(self, c) -> Derivation:
        return Derivation(self.source, self.target, self.degree,
                          {i: self.value(i) * c for i in range(len(self.source))})


def commutator(d1: Derivation, d2: Derivation) -> Derivation:
    """Graded commutator ``d1 d2 - (-1)^{|d1||d2|} d2 d1`` on the smaller source."""
    source = d1.source if d2.source.extends(d1.source) else d2.source
    target = d1.target if d1.target.extends(d2.target) else d2.target
    sign = -1 if (d1.degree * d2.degree) % 2 == 0 else 1
    values = {}
    for i in range(len(source)):
        x = source.gen(i)
        values[i] = (d1(d2(x)) + d2(d1(x)) * sign).lift(target)
    return Derivation(source, target, d1.degree + d2.degree, values)


class AlgebraMap:
    """A degree-preserving algebra homomorphism given by generator images.

    Images may be supplied incrementally; applying the map to a monomial that
    uses an unmapped generator raises DerivationError.
    """

    def __init__(self, source: Algebra, target: Algebra, images: Mapping | None = None):
        self.source = source
        self.target = target
        self.images: dict[int, Element] = {}
        self._cache: dict = {(): {(): Fraction(1)}}
        for k, v in (images or {}).items():
            self.set_image(k, v)

    def set_image(self, key, value) -> None:
        i = self.source._idx(key)
        if not isinstance(value, Element):
            value = self.target.scalar(value)
        self.images[i] = value.lift(self.target)

    def on_monomial(self, mono) -> dict:
        cache = self._cache
        if mono in cache:
            return cache[mono]
        i, e = mono[-1]
        img = self.images.get(i)
        if img is None:
            raise DerivationError(
                f"map has no image for generator {self.source.variables[i].name!r}")
        head = Element(self.target, self.on_monomial(mono[:-1]))
        result = (head * img ** e).terms
        cache[mono] = result
        return result

    def __call__(self, a: Element) -> Element:
        if a.alg is not self.source:
            if not self.source.extends(a.alg):
                raise PresentationError(f"map cannot act on elements of {a.alg!r}")
        terms: dict = {}
        for m, c in a.terms.items():
            for m2, c2 in self.on_monomial(m).items():
                v = terms.get(m2, 0) + c * c2
                if v:
                    terms[m2] = v
                else:
                    del terms[m2]
        return Element(self.target, terms)

    def then(self, other: AlgebraMap) -> AlgebraMap:
        """The composite ``other o self``."""
        return AlgebraMap(self.source, other.target,
                          {i: other(self.images[i]) for i in self.images})


def mul(a: Element, b: Element) -> Element:
    return a * b


def apply_derivation(d: Derivation, a: Element) -> Element:
    return d(a)


def check_presentation(alg: Algebra, augmentation: AlgebraMap | None = None) -> list[str]:
    """Diagnose a DG presentation; an empty list means it is valid."""
    report = []
    for i, v in enumerate(alg.variables):
        dv = alg.d_value(i)
        for deg, wt in sorted(dv.bidegrees()):
            if deg != v.degree + 1:
                report.append(f"d({v.name}) has a term of degree {deg}, expected {v.degree + 1}")
            if wt != v.weight:
                report.append(f"d({v.name}) has a term of weight {wt}, expected {v.weight}")
        dd = alg.d(dv)
        if dd:
            report.append(f"d(d({v.name})) = {dd} is nonzero")
    if augmentation is not None:
        for i, v in enumerate(alg.variables):
            img = augmentation(alg.gen(i))
            for deg, wt in img.bidegrees():
                if (deg, wt) != (v.degree, v.weight):
                    report.append(f"augmentation of {v.name} has bidegree {(deg, wt)}")
            if augmentation(alg.d_value(i)) != augmentation.target.d(img):
                report.append(f"augmentation does not commute with d on {v.name}")
    return report


def symmetric_degree(indices: set[int]) -> Callable:
    """Monomial -> number of factors drawn from ``indices`` (with multiplicity)."""
    def count(mono) -> int:
        return sum(e for i, e in mono if i in indices)
    return count
