"""Polynomials and truncated formal power series over Q in graded variables.

A monomial is a tuple of ``(variable_index, exponent)`` pairs sorted by
index.  Odd variables square to zero.  Products carry the Koszul sign of
moving odd variables of the right factor past those of the left one.

Two truncations can be attached to a series:

* ``order``: drop monomials of total polynomial order > N;
* ``level``: work modulo the ideal ``F^p`` generated by monomials of
  degree <= -p (p = ``level``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .core import InputError, as_fraction
from .printing import format_linear

Monomial = Tuple[Tuple[int, int], ...]

__all__ = [
    "Var",
    "PolyRing",
    "Series",
    "series_mul",
    "filtration_member",
    "truncate",
    "coideal_basis",
    "mono_mul",
]


@dataclass(frozen=True)
class Var:
    name: str
    degree: int = 0
    parity: int = 0
    # contribution of one power to the truncation order (0: polynomial
    # variables that are never truncated)
    weight: int = 1

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise InputError("parity must be 0 or 1")


class PolyRing:
    def __init__(self, variables: Sequence[Var]):
        self.vars = tuple(variables)
        self._pos = {}
        for i, v in enumerate(self.vars):
            if v.name in self._pos:
                raise InputError("duplicate variable %r" % (v.name,))
            self._pos[v.name] = i
        self.parities = tuple(v.parity for v in self.vars)
        self.degrees = tuple(v.degree for v in self.vars)
        self.weights = tuple(v.weight for v in self.vars)

    @classmethod
    def of(cls, *names: str) -> "PolyRing":
        return cls([Var(n) for n in names])

    def index(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise InputError("unknown variable %r" % (name,)) from None

    def __contains__(self, name):
        return name in self._pos

    def var(self, name: str, order=None, level=None) -> "Series":
        return Series(self, {((self.index(name), 1),): Fraction(1)}, order, level)

    def const(self, c=1, order=None, level=None) -> "Series":
        return Series(self, {(): as_fraction(c)}, order, level)

    def zero(self, order=None, level=None) -> "Series":
        return Series(self, {}, order, level)

    def monomial(self, exps: Mapping[str, int], c=1, order=None, level=None) -> "Series":
        mono = tuple(sorted((self.index(n), e) for n, e in exps.items() if e))
        return Series(self, {mono: as_fraction(c)}, order, level)

    def extend(self, more: Sequence[Var]) -> "PolyRing":
        return PolyRing(self.vars + tuple(more))

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.vars == other.vars

    def __hash__(self):
        return hash(self.vars)

    def __repr__(self):
        return "PolyRing(%s)" % ", ".join(v.name for v in self.vars)

    # monomial data
    def mono_order(self, m: Monomial) -> int:
        w = self.weights
        return sum(w[i] * e for i, e in m)

    def mono_degree(self, m: Monomial) -> int:
        d = self.degrees
        return sum(d[i] * e for i, e in m)

    def mono_parity(self, m: Monomial) -> int:
        p = self.parities
        return sum(p[i] * e for i, e in m) % 2

    def mono_text(self, m: Monomial) -> str:
        return "*".join(self.vars[i].name if e == 1 else "%s^%d" % (self.vars[i].name, e) for i, e in m)


def mono_mul(a: Monomial, b: Monomial, parities: Sequence[int]):
    """Product of monomials: ``(sign, monomial)`` or ``None`` if it vanishes."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    da = dict(a)
    sign = 1
    odd_a = [i for i, _ in a if parities[i]]
    for j, e in b:
        if parities[j]:
            if j in da:
                return None
            # move x_j left past odd variables of a with bigger index
            if sum(1 for i in odd_a if i > j) % 2:
                sign = -sign
    out = dict(a)
    for j, e in b:
        out[j] = out.get(j, 0) + e
    return sign, tuple(sorted(out.items()))


def _minopt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def in_ideal(ring: PolyRing, m: Monomial, p: int) -> bool:
    """Is the monomial in the ideal generated by elements of degree <= -p?"""
    if p <= 0:
        return True
    d = ring.degrees
    neg = sum(d[i] * e for i, e in m if d[i] < 0)
    return neg <= -p


class Series:
    """Finite representative of a truncated formal series (immutable)."""

    __slots__ = ("ring", "terms", "order", "level", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Fraction], order: Optional[int] = None,
                 level: Optional[int] = None, _clean=False):
        self.ring = ring
        self.order = order
        self.level = level
        if _clean:
            self.terms = dict(terms)
            return
        par = ring.parities
        out = {}
        for m, c in terms.items():
            if not c:
                continue
            if any(par[i] and e > 1 for i, e in m):
                continue
            if order is not None and ring.mono_order(m) > order:
                continue
            if level is not None and in_ideal(ring, m, level):
                continue
            out[m] = as_fraction(c)
        self.terms = out

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            if other.ring != self.ring:
                raise InputError("series over different rings: %r vs %r" % (self.ring, other.ring))
            return other
        return Series(self.ring, {(): as_fraction(other)}, self.order, self.level)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Series(self.ring, out, _minopt(self.order, other.order), _minopt(self.level, other.level))

    __radd__ = __add__

    def __neg__(self):
        return Series(self.ring, {m: -c for m, c in self.terms.items()}, self.order, self.level, _clean=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            c = as_fraction(other)
            if not c:
                return Series(self.ring, {}, self.order, self.level, _clean=True)
            return Series(self.ring, {m: c * v for m, v in self.terms.items()}, self.order, self.level, _clean=True)
        return series_mul(self, other)

    def __rmul__(self, other):
        # scalars are even; no sign
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative power")
        out = self._coerce(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Series):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            self._hash = hash(frozenset(self.terms.items()))
            return self._hash

    # -- queries ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def coefficient(self, exps: Mapping[str, int]) -> Fraction:
        m = tuple(sorted((self.ring.index(n), e) for n, e in exps.items() if e))
        return self.terms.get(m, Fraction(0))

    def max_order(self) -> int:
        return max((self.ring.mono_order(m) for m in self.terms), default=0)

    def is_homogeneous_parity(self):
        ps = {self.ring.mono_parity(m) for m in self.terms}
        return len(ps) <= 1

    def grade_involution(self) -> "Series":
        par = self.ring.mono_parity
        return Series(self.ring, {m: (-c if par(m) else c) for m, c in self.terms.items()}, self.order,
                      self.level, _clean=True)

    def with_truncation(self, order=None, level=None) -> "Series":
        return Series(self.ring, self.terms, _minopt(self.order, order), _minopt(self.level, level))

    def truncated(self, order: int) -> "Series":
        return self.with_truncation(order=order)

    def derivative(self, name_or_index) -> "Series":
        """Left partial derivative (odd variables pick up a Koszul sign)."""
        k = name_or_index if isinstance(name_or_index, int) else self.ring.index(name_or_index)
        par = self.ring.parities
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            sign = 1
            for i, e in m:
                if i == k:
                    newm = tuple((j, f - 1 if j == k else f) for j, f in m if not (j == k and f == 1))
                    out[newm] = out.get(newm, 0) + sign * e * c
                    break
                if par[k] and par[i] and e % 2:
                    sign = -sign
        return Series(self.ring, out, self.order, self.level)

    def substitute(self, values: Mapping, ring: Optional[PolyRing] = None, order=None) -> "Series":
        """Replace variables by series over ``ring`` (default: same ring).

        ``values`` maps variable names or indices to series/scalars; unmapped
        variables are kept (they must exist in the target ring).
        """
        target = ring or self.ring
        vals = {}
        for k, v in values.items():
            i = k if isinstance(k, int) else self.ring.index(k)
            vals[i] = v if isinstance(v, Series) else Series(target, {(): as_fraction(v)})
        order = _minopt(order, self.order if ring is None else None)
        one = Series(target, {(): Fraction(1)}, order)
        cache = {}

        def image(i, e):
            key = (i, e)
            if key not in cache:
                if i in vals:
                    base = vals[i].with_truncation(order)
                else:
                    base = Series(target, {((target.index(self.ring.vars[i].name), 1),): Fraction(1)}, order)
                r = one
                for _ in range(e):
                    r = r * base
                cache[key] = r
            return cache[key]

        acc: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            r = one
            for i, e in m:
                r = r * image(i, e)
                if r.is_zero():
                    break
            for mm, cc in r.terms.items():
                v = acc.get(mm, 0) + c * cc
                if v:
                    acc[mm] = v
                else:
                    acc.pop(mm, None)
        return Series(target, acc, order)

    def embed(self, ring: PolyRing) -> "Series":
        """Same series viewed in a ring containing all of our variables."""
        idx = [ring.index(v.name) for v in self.ring.vars]
        for v in self.ring.vars:
            if ring.vars[ring.index(v.name)] != v:
                raise InputError("variable %r changes type" % v.name)
        out = {}
        for m, c in self.terms.items():
            newm = sorted((idx[i], e) for i, e in m)
            # reordering odd variables costs a sign
            sign = 1
            odd = [idx[i] for i, e in m if self.ring.parities[i]]
            for a in range(len(odd)):
                for b in range(a + 1, len(odd)):
                    if odd[a] > odd[b]:
                        sign = -sign
            out[tuple(newm)] = sign * c
        return Series(ring, out, self.order, self.level, _clean=True)

    def sorted_items(self):
        r = self.ring
        return sorted(self.terms.items(), key=lambda t: (r.mono_order(t[0]), t[0]))

    def __str__(self):
        return format_linear([(self.ring.mono_text(m), c) for m, c in self.sorted_items()])

    def __repr__(self):
        return "Series(%s)" % self


def series_mul(a: Series, b: Series) -> Series:
    if a.ring != b.ring:
        raise InputError("series over different rings")
    par = a.ring.parities
    order = _minopt(a.order, b.order)
    level = _minopt(a.level, b.level)
    ring = a.ring
    out: Dict[Monomial, Fraction] = {}
    for ma, ca in a.terms.items():
        oa = ring.mono_order(ma) if order is not None else 0
        for mb, cb in b.terms.items():
            if order is not None and oa + ring.mono_order(mb) > order:
                continue
            r = mono_mul(ma, mb, par)
            if r is None:
                continue
            s, m = r
            v = out.get(m, 0) + s * ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Series(ring, out, order, level)


# -- Appendix-style filtrations ------------------------------------------------


def truncate(s: Series, p: int) -> Series:
    """Representative of ``s`` modulo ``F^p``: ideal monomials deleted."""
    if p < 0:
        raise InputError("filtration level must be >= 0")
    return Series(s.ring, {m: c for m, c in s.terms.items() if not in_ideal(s.ring, m, p)}, s.order, s.level)


def filtration_member(s, p: int, side: str = "ideal") -> bool:
    """Membership in the ideal ``F^p`` or in the coideal ``F_p Sym(E)``.

    ``s`` is a :class:`Series` (its variables play the role of E* on the
    ideal side and of E on the coideal side) or a ``SymElement``.
    """
    if p < 0:
        raise InputError("filtration level must be >= 0")
    if side == "ideal":
        if not isinstance(s, Series):
            raise InputError("ideal side needs a series")
        return all(in_ideal(s.ring, m, p) for m in s.terms)
    if side != "coideal":
        raise InputError("side must be 'ideal' or 'coideal'")
    from . import ue

    sym = s if isinstance(s, ue.SymElement) else ue.SymElement.from_series(s)
    for left, right, c in ue.sym_coproduct(sym).items():
        if sym.alg_degree(right) >= p:
            return False
    return True


def coideal_basis(ring: PolyRing, p: int, degree: int):
    """Monomials of the given degree spanning ``F_p Sym(E)`` in that degree.

    E is spanned by the variables of ``ring``; they must have nonzero
    degrees, otherwise the graded pieces are not finite.  A monomial lies in
    ``F_p`` iff all its sub-monomials have degree < p.
    """
    if any(d == 0 for d in ring.degrees):
        raise InputError("coideal filtration needs variables of nonzero degree")
    pos = [i for i, d in enumerate(ring.degrees) if d > 0]
    neg = [i for i, d in enumerate(ring.degrees) if d < 0]
    par = ring.parities
    # positive part has degree < p; negative part degree = degree - positive
    def bounded(idx, limit):
        # all exponent vectors on idx with sum |deg|*e <= limit
        ranges = []
        for i in idx:
            top = limit // abs(ring.degrees[i])
            ranges.append(range(0, min(top, 1 if par[i] else top) + 1))
        for exps in iproduct(*ranges):
            if sum(abs(ring.degrees[i]) * e for i, e in zip(idx, exps)) <= limit:
                yield tuple((i, e) for i, e in zip(idx, exps) if e)

    out = []
    for mp in bounded(pos, max(p - 1, -1)) if p > 0 else []:
        dp = ring.mono_degree(mp)
        need = degree - dp
        if need > 0:
            continue
        for mn in bounded(neg, -need):
            if ring.mono_degree(mn) == need:
                out.append(tuple(sorted(mp + mn)))
    return sorted(set(out))
