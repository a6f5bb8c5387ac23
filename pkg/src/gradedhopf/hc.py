"""Harish-Chandra pairs with a formal group: the Hopf algebra
A = Hom_{U(h)}(U(g), F(H)) realized on truncated formal series.

Functionals are evaluated at points of the formal group (coordinate series
without constant term, exponential coordinates) on arguments in U(g).  An
:class:`HCFunctional` is stored by its values on the Sym(m) leg; everything
else (products, coproducts, antipodes, actions) is a lazy
:class:`MultiFunctional` with one (point, argument) slot per tensor factor.

Truncation: on arguments of total length L a value is kept modulo series
order N - L + 1.  This weight filtration is compatible with every structure
map, so comparisons at weight N are meaningful.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as iproduct
from math import factorial
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .bch import FormalGroupLaw
from .core import InputError
from .lie import LieAlgebra, LieVector, check_jacobi, _add_into
from .poly import PolyRing, Series, Var
from .printing import format_linear
from . import ue
from .ue import UElement, hc_factorize, hc_order, mono_parity, mono_text, u_antipode, u_coproduct
from .verify import run_axiom_suite

__all__ = [
    "FormalGroup",
    "make_formal_group",
    "group_ad",
    "ad_series",
    "HCPair",
    "HCFunctional",
    "MultiFunctional",
    "hc_product",
    "hc_coproduct",
    "hc_antipode",
    "hc_counit",
    "module_action",
    "equivariance_residual",
    "HCStructure",
    "SuperHCPair",
    "super_subalgebra_reduce",
    "reduction_roundtrip",
    "hc_check",
    "equivariance_report",
]

Point = Dict[str, Series]


def _lam_ring(ring: PolyRing, degrees: Sequence[int]):
    """Extend ``ring`` by fresh even variables; returns (ring, names)."""
    base = len(ring.vars)
    names = ["_l%d" % (base + k) for k in range(len(degrees))]
    return ring.extend([Var(n, d, 0) for n, d in zip(names, degrees)]), names


def _ring(point, pair):
    """Ring of a point; points of a trivial group are empty dicts."""
    for v in point.values():
        return v.ring
    return pair.ring


def _coefficient_series(s: Series, names: Sequence[str], ring: PolyRing) -> Series:
    """Coefficient of the product of the (distinct, even) variables ``names``
    in ``s``, as a series over the smaller ``ring``."""
    big = s.ring
    want = {big.index(n) for n in names}
    out = {}
    for m, c in s.terms.items():
        hit = {i for i, e in m if i in want}
        if hit != want or any(e != 1 for i, e in m if i in want):
            continue
        rest = tuple((ring.index(big.vars[i].name), e) for i, e in m if i not in want)
        out[tuple(sorted(rest))] = c
    order = None if s.order is None else s.order - len(names)
    return Series(ring, out, order)


# -- the formal group of h ------------------------------------------------------


class FormalGroup:
    """Formal group of an even Lie algebra h in exponential coordinates."""

    def __init__(self, h: LieAlgebra, N: int):
        rep = check_jacobi(h)
        if not rep.passed:
            raise InputError("h fails Jacobi:\n" + "\n".join(rep.lines()))
        if any(h.parities):
            raise InputError("formal group needs an even Lie algebra; use SuperHCPair for odd h")
        self.h = h
        self.N = N
        self.labels = list(h.labels)
        self.abelian = all(not h.bracket_basis(i, j) for i in range(h.dim) for j in range(h.dim))
        self.ring = PolyRing([Var("w_%s" % x.label, -x.degree, 0) for x in h.basis])
        self._laws: Dict[int, FormalGroupLaw] = {}

    def law(self, order: int) -> FormalGroupLaw:
        order = max(order, 1)
        if order not in self._laws:
            self._laws[order] = FormalGroupLaw(self.h, order, prefixes=("u", "v"))
        return self._laws[order]

    def identity(self, ring: PolyRing) -> Point:
        return {l: ring.zero() for l in self.labels}

    def compose(self, p: Point, q: Point, order: int) -> Point:
        if self.abelian:
            return {l: (p[l] + q[l]).truncated(order) for l in self.labels}
        return self.law(order).compose(p, q, order)

    def inverse(self, p: Point, order: int) -> Point:
        if self.abelian:
            return {l: (-p[l]).truncated(order) for l in self.labels}
        return self.law(order).inverse(p, order)

    def components_text(self) -> str:
        if self.abelian:
            return "\n".join("Delta(u_%s) = u_%s + v_%s" % (l, l, l) for l in self.labels)
        return str(self.law(self.N))

    def __str__(self):
        return self.components_text()


def make_formal_group(h: LieAlgebra, N: int) -> FormalGroup:
    return FormalGroup(h, N)


def ad_series(g: LieAlgebra, W: Mapping[int, object], x: Mapping[int, object], order: int, sign: int = 1):
    """sum_{k <= order} (sign ad_W)^k (x) / k!  on coefficient dicts."""
    out = dict(x)
    term = dict(x)
    for k in range(1, order + 1):
        term = g.bracket_terms(W, term)
        if not term:
            break
        c = Fraction(sign ** k, factorial(k))
        for i, v in term.items():
            _add_into(out, i, v * c)
    return {i: (v.truncated(order) if isinstance(v, Series) else v) for i, v in out.items()}


def group_ad(H: FormalGroup, g: LieAlgebra, x: LieVector, point: Optional[Point] = None, order: Optional[int] = None,
             inverse: bool = False) -> LieVector:
    """Ad_{exp W}(x) truncated; ``point`` defaults to the generic coordinates."""
    order = H.N if order is None else order
    if point is None:
        point = {l: H.ring.var("w_%s" % l) for l in H.labels}
    W = {g.index(l): point[l] for l in H.labels if not point[l].is_zero()}
    ring = next(iter(point.values())).ring if point else H.ring
    xs = {i: (c if isinstance(c, Series) else ring.const(c, order=order)) for i, c in x.terms.items()}
    return LieVector(g, ad_series(g, W, xs, order, -1 if inverse else 1))


# -- pairs and functionals ---------------------------------------------------------


class HCPair:
    """Pair (g, h) with h an even subalgebra and H its formal group."""

    def __init__(self, g: LieAlgebra, h_labels: Sequence[str], N: int, base: Optional[PolyRing] = None):
        rep = check_jacobi(g)
        if not rep.passed:
            raise InputError("g fails Jacobi:\n" + "\n".join(rep.lines()))
        for l in h_labels:
            if g.parities[g.index(l)]:
                raise InputError("odd generator %r in h: reduce with super_subalgebra_reduce first" % l)
        self.g = g
        self.h_labels = sorted(h_labels, key=g.index)
        self.alg = hc_order(g, self.h_labels)
        self.h = g.subalgebra(self.h_labels)
        self.N = N
        self.H = FormalGroup(self.h, N)
        nh = len(self.h_labels)
        self.h_idx = list(range(nh))
        self.m_idx = list(range(nh, self.alg.dim))
        self._fact: Dict[Tuple[int, ...], dict] = {}
        # base (manifold) variables ride along untruncated
        self.base = base or PolyRing([])
        bvars = [Var(v.name, v.degree, v.parity, 0) for v in self.base.vars]
        self.wring = PolyRing(list(self.H.ring.vars) + bvars)
        self.ring = PolyRing([Var("w%d_%s" % (s, x.label), -x.degree, 0) for s in (1, 2, 3) for x in self.h.basis]
                             + bvars)

    def __eq__(self, other):
        return isinstance(other, HCPair) and (self.alg, tuple(self.h_labels), self.N) == (
            other.alg, tuple(other.h_labels), other.N)

    def __hash__(self):
        return hash((self.alg, tuple(self.h_labels), self.N))

    def factor(self, mono) -> dict:
        """Cached U(h) (x) Sym(m) factorization of an admissible monomial."""
        if mono not in self._fact:
            _, table = hc_factorize(UElement(self.alg, {mono: Fraction(1)}), self.h_labels)
            self._fact[mono] = table
        return self._fact[mono]

    def to_base(self, v: Series) -> Series:
        """A series free of group coordinates, as a base polynomial."""
        out = {}
        for m, c in v.terms.items():
            names = [v.ring.vars[i].name for i, _ in m]
            if any(n not in self.base for n in names):
                raise InputError("value depends on group coordinates: %s" % v)
            out[tuple(sorted((self.base.index(v.ring.vars[i].name), e) for i, e in m))] = c
        return Series(self.base, out)

    def from_base(self, f: Series, ring: Optional[PolyRing] = None) -> Series:
        ring = ring or self.ring
        return Series(ring, {tuple(sorted((ring.index(f.ring.vars[i].name), e) for i, e in m)): c
                             for m, c in f.terms.items()})

    def point(self, slot: int) -> Point:
        return {l: self.ring.var("w%d_%s" % (slot, l)) for l in self.h_labels}

    def identity(self, ring=None) -> Point:
        return self.H.identity(ring or self.ring)

    def sym_monomials(self, max_len: int):
        return ue.admissible_monomials(self.alg, max_len, self.m_idx)

    def monomials(self, max_len: int):
        return ue.admissible_monomials(self.alg, max_len)

    def ad(self, point: Point, a: UElement, order: int, inverse=False) -> UElement:
        """Ad_p (or Ad_p^{-1}) extended to U(g) as an algebra map."""
        g = self.alg
        W = {g.index(l): point[l] for l in self.h_labels if not point[l].is_zero()}
        if not W:
            return a
        ring = _ring(point, self)
        sign = -1 if inverse else 1
        images = {}
        out = UElement(g, {})
        for m, c in a.terms.items():
            r = UElement(g, {(): ring.const(1, order=order)})
            for i in m:
                if i not in images:
                    images[i] = UElement(g, {(k,): v for k, v in ad_series(
                        g, W, {i: ring.const(1, order=order)}, order, sign).items()})
                r = r * images[i]
            out = out + c * r
        return UElement(g, {m: (v.truncated(order) if isinstance(v, Series) else v) for m, v in out.terms.items()})

    def move(self, point: Point, labels_idx: Sequence[int], order: int):
        """p * exp(l_1 z_1) ... exp(l_k z_k) over a ring with fresh l's."""
        ring = _ring(point, self)
        big, names = _lam_ring(ring, [-self.alg.degrees[i] for i in labels_idx])
        # points carry their own truncation; the lambda legs need more room
        p = {l: Series(big, v.embed(big).terms, _clean=True) for l, v in point.items()}
        for n, i in zip(names, labels_idx):
            q = {l: big.zero() for l in self.h_labels}
            q[self.alg.labels[i]] = big.var(n)
            p = self.H.compose(p, q, order)
        return p, big, names

    def elementary(self, table) -> "HCFunctional":
        return HCFunctional(self, table)

    def unit(self) -> "HCFunctional":
        return HCFunctional(self, {(): 1})

    def functional_basis(self, weight: int, base_monos=((),)):
        """delta_s * w^k (times base monomials) with |s| + |k| <= weight."""
        out = []
        W = self.wring
        nw = len(self.H.ring.vars)
        wmonos = [()]
        for k in range(1, weight + 1):
            wmonos += [m for m in _monos(nw, k)]
        for s in self.sym_monomials(weight):
            for wm in wmonos:
                k = sum(e for _, e in wm)
                if len(s) + k > weight:
                    continue
                for bm in base_monos:
                    bm = tuple((W.index(self.base.vars[i].name), e) for i, e in bm)
                    val = Series(W, {tuple(sorted(wm + bm)): Fraction(1)})
                    f = HCFunctional(self, {s: val})
                    out.append((f.name(), f))
        return out


def _monos(n, k):
    """Exponent monomials of total order k in n variables (sparse form)."""
    def rec(i, left):
        if i == n - 1:
            yield ((i, left),) if left else ()
            return
        for e in range(left, -1, -1):
            for rest in rec(i + 1, left - e):
                yield (((i, e),) if e else ()) + rest
    if n == 0:
        return []
    return list(rec(0, k))


class MultiFunctional:
    """Lazy functional with ``slots`` (point, argument) pairs."""

    def __init__(self, pair: HCPair, slots: int, fn: Callable, label: str = "F"):
        self.pair = pair
        self.slots = slots
        self._fn = fn
        self.label = label
        self._memo: Dict = {}

    def eval_mono(self, points: Sequence[Point], monos: Sequence[Tuple[int, ...]], order: int) -> Series:
        key = (tuple(tuple(p[l] for l in self.pair.h_labels) for p in points), tuple(monos), order)
        v = self._memo.get(key)
        if v is None:
            v = self._fn(points, monos, order)
            self._memo[key] = v
        return v

    def eval(self, points: Sequence[Point], args: Sequence[UElement], order: int) -> Series:
        """Multilinear in the arguments (coefficients are even)."""
        if len(points) != self.slots or len(args) != self.slots:
            raise InputError("functional has %d slots" % self.slots)
        ring = _ring(points[0], self.pair)
        acc = ring.zero(order=order)
        for combo in iproduct(*[list(a.terms.items()) for a in args]):
            c = Fraction(1)
            for _, ci in combo:
                c = ci * c if isinstance(ci, Series) else c * ci
            v = self.eval_mono(points, [m for m, _ in combo], order)
            acc = acc + (v * c if not isinstance(c, Series) else c * v)
        return acc.truncated(order)

    def __call__(self, points, args, order):
        if self.slots == 1 and isinstance(points, dict):
            points, args = [points], [args]
        args = [a if isinstance(a, UElement) else UElement(self.pair.alg, {tuple(a): Fraction(1)}) for a in args]
        return self.eval(points, args, order)

    def name(self):
        return self.label

    def __str__(self):
        return self.label


class HCFunctional(MultiFunctional):
    """Equivariant functional given by its Sym(m) table: s -> polynomial in w
    (and in the base variables, if any)."""

    def __init__(self, pair: HCPair, table: Mapping):
        W = pair.wring
        clean = {}
        for s, v in table.items():
            s = tuple(s)
            if any(i not in pair.m_idx for i in s) or not ue.is_admissible(pair.alg, s):
                raise InputError("table key %r is not an admissible Sym(m) monomial" % (s,))
            v = v if isinstance(v, Series) else W.const(v)
            if not v.is_zero():
                clean[s] = v
        self.table = clean
        super().__init__(pair, 1, self._evaluate, "")

    def _evaluate(self, points, monos, order):
        pair = self.pair
        p = points[0]
        ring = _ring(p, pair)
        acc = ring.zero(order=order)
        for (mh, s), c in pair.factor(monos[0]).items():
            f = self.table.get(s)
            if f is None:
                continue
            acc = acc + c * _derived_value(pair, f, p, mh, order)
        return acc

    def name(self):
        parts = []
        for s, v in sorted(self.table.items()):
            d = "d[%s]" % (mono_text(self.pair.alg, s) or "1")
            parts.append(d if v == 1 else "(%s)*%s" % (v, d))
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return self.name()

    def weight(self) -> int:
        return max((len(s) + v.max_order() for s, v in self.table.items()), default=0)

    def parity(self) -> int:
        ps = {mono_parity(self.pair.alg, s) for s in self.table}
        return ps.pop() if len(ps) == 1 else 0


def _derived_value(pair: HCPair, f: Series, p: Point, mh, order: int) -> Series:
    """Left-invariant derivatives D_{z_1} ... D_{z_k} f evaluated at p."""
    ring = _ring(p, pair)
    if not mh:
        return f.substitute({"w_%s" % l: p[l] for l in pair.h_labels}, ring=ring, order=order)
    k = len(mh)
    moved, big, names = pair.move(p, mh, order + k)
    val = f.substitute({"w_%s" % l: moved[l] for l in pair.h_labels}, ring=big, order=order + k)
    return _coefficient_series(val, names, ring)


# -- structure maps ----------------------------------------------------------------


def _sign(alg, a, b):
    return -1 if mono_parity(alg, a) and mono_parity(alg, b) else 1


def hc_counit(phi: MultiFunctional):
    """phi(e, 1): a rational, or a base polynomial when the pair has a base."""
    pair = phi.pair
    v = phi.eval([pair.identity()], [UElement.one(pair.alg)], 0)
    if not pair.base.vars:
        return v.constant()
    return pair.to_base(v)


def hc_product(f1: MultiFunctional, f2: MultiFunctional) -> MultiFunctional:
    """(f1 f2)(p, a) = sum +- f1(p, a') f2(p, a'')."""
    if f1.pair != f2.pair or f1.slots != 1 or f2.slots != 1:
        raise InputError("product needs one-slot functionals of the same pair")
    pair = f1.pair
    alg = pair.alg

    def fn(points, monos, order):
        d = ue.coproduct_terms(alg, monos[0])
        p = points[0]
        ring = _ring(p, pair)
        acc = ring.zero(order=order)
        for (a1, a2), c in d.items():
            acc = acc + (c * _sign(alg, a1, a2)) * f1.eval_mono([p], [a1], order) * f2.eval_mono([p], [a2], order)
        return acc

    return MultiFunctional(f1.pair, 1, fn, "(%s)*(%s)" % (f1.name(), f2.name()))


def table_product(f1: HCFunctional, f2: HCFunctional) -> HCFunctional:
    """Product computed on the Sym(m) leg through the shuffle coproduct."""
    pair = f1.pair
    alg = pair.alg
    out: Dict = {}
    keys = set()
    for s1 in f1.table:
        for s2 in f2.table:
            keys.add(tuple(sorted(s1 + s2)))
    for s in keys:
        if not ue.is_admissible(alg, s):
            continue
        d = ue.sym_coproduct(ue.SymElement(alg, {s: Fraction(1)}))
        for (s1, s2), c in d.terms.items():
            if s1 in f1.table and s2 in f2.table:
                _add_into(out, s, (c * _sign(alg, s1, s2)) * (f1.table[s1] * f2.table[s2]))
    return HCFunctional(pair, out)


def hc_coproduct(phi: MultiFunctional) -> MultiFunctional:
    """Delta(phi)(p1, a1, p2, a2) = phi(p1 p2, Ad_{p2}^{-1}(a1) a2)."""
    return delta_at(phi, 0)


def delta_at(T: MultiFunctional, i: int) -> MultiFunctional:
    """Apply the coproduct to slot ``i``: the result has one more slot."""
    pair = T.pair
    alg = pair.alg

    def fn(points, monos, order):
        p1, p2 = points[i], points[i + 1]
        a1 = UElement(alg, {monos[i]: Fraction(1)})
        a2 = UElement(alg, {monos[i + 1]: Fraction(1)})
        arg = pair.ad(p2, a1, order, inverse=True) * a2
        pt = pair.H.compose(p1, p2, order)
        pts = list(points[:i]) + [pt] + list(points[i + 2:])
        args = [UElement(alg, {m: Fraction(1)}) for m in monos[:i]] + [arg] + [
            UElement(alg, {m: Fraction(1)}) for m in monos[i + 2:]]
        return T.eval(pts, args, order)

    return MultiFunctional(pair, T.slots + 1, fn, "Delta_%d(%s)" % (i + 1, T.name()))


def counit_at(T: MultiFunctional, i: int) -> MultiFunctional:
    """Evaluate slot ``i`` at (identity, 1)."""
    pair = T.pair
    alg = pair.alg

    def fn(points, monos, order):
        ring = _ring(points[0], pair)
        pts = list(points[:i]) + [pair.H.identity(ring)] + list(points[i:])
        ms = list(monos[:i]) + [()] + list(monos[i:])
        return T.eval_mono(pts, ms, order)

    return MultiFunctional(pair, T.slots - 1, fn, "eps_%d(%s)" % (i + 1, T.name()))


def antipode_at(T: MultiFunctional, i: int, literal: bool = False) -> MultiFunctional:
    """S in slot ``i``: (p, a) -> (p^{-1}, Ad_p(S a)).

    With ``literal=True`` the argument is Ad_p(a) without the U(g) antipode;
    that variant violates the antipode identity (kept for the tests).
    """
    pair = T.pair
    alg = pair.alg

    def fn(points, monos, order):
        p = points[i]
        a = UElement(alg, {monos[i]: Fraction(1)})
        if not literal:
            a = u_antipode(a)
        arg = pair.ad(p, a, order)
        pts = list(points)
        pts[i] = pair.H.inverse(p, order)
        args = [UElement(alg, {m: Fraction(1)}) for m in monos]
        args[i] = arg
        return T.eval(pts, args, order)

    return MultiFunctional(pair, T.slots, fn, "S%s_%d(%s)" % ("lit" if literal else "", i + 1, T.name()))


def hc_antipode(phi: MultiFunctional, literal: bool = False) -> MultiFunctional:
    return antipode_at(phi, 0, literal)


def merge(T: MultiFunctional, i: int = 0) -> MultiFunctional:
    """Multiplication of slots i and i+1: same point, split argument."""
    pair = T.pair
    alg = pair.alg

    def fn(points, monos, order):
        p = points[i]
        d = ue.coproduct_terms(alg, monos[i])
        ring = _ring(p, pair)
        acc = ring.zero(order=order)
        for (a1, a2), c in d.items():
            pts = list(points[:i]) + [p, p] + list(points[i + 1:])
            ms = list(monos[:i]) + [a1, a2] + list(monos[i + 1:])
            acc = acc + c * T.eval_mono(pts, ms, order)
        return acc

    return MultiFunctional(pair, T.slots - 1, fn, "mu(%s)" % T.name())


def tensor(f1: MultiFunctional, f2: MultiFunctional) -> MultiFunctional:
    """(f1 (x) f2)(X, Y) = (-1)^{p(f2) p(X)} f1(X) f2(Y)."""
    pair = f1.pair
    alg = pair.alg
    k = f1.slots

    def fn(points, monos, order):
        px = sum(mono_parity(alg, m) for m in monos[:k]) % 2
        py = sum(mono_parity(alg, m) for m in monos[k:]) % 2
        s = -1 if px and py else 1
        return s * (f1.eval_mono(points[:k], monos[:k], order) * f2.eval_mono(points[k:], monos[k:], order))

    return MultiFunctional(pair, k + f2.slots, fn, "(%s)(x)(%s)" % (f1.name(), f2.name()))


def tensor_mul(T1: MultiFunctional, T2: MultiFunctional) -> MultiFunctional:
    """Product in A (x) A (slotwise, with the Koszul sign of the tensor
    coalgebra U (x) U)."""
    pair = T1.pair
    alg = pair.alg
    n = T1.slots

    def fn(points, monos, order):
        ring = _ring(points[0], pair)
        acc = ring.zero(order=order)
        splits = [list(ue.coproduct_terms(alg, m).items()) for m in monos]
        for combo in iproduct(*splits):
            c = Fraction(1)
            left = [t[0][0] for t in combo]
            right = [t[0][1] for t in combo]
            for t in combo:
                c *= t[1]
            # reorder (l1 r1)(l2 r2)... into (l1 l2 ...)(r1 r2 ...)
            s = 1
            for a in range(n):
                for b in range(a + 1, n):
                    if mono_parity(alg, right[a]) and mono_parity(alg, left[b]):
                        s = -s
            pl = sum(mono_parity(alg, m) for m in left) % 2
            pr = sum(mono_parity(alg, m) for m in right) % 2
            if pl and pr:
                s = -s
            acc = acc + (c * s) * (T1.eval_mono(points, left, order) * T2.eval_mono(points, right, order))
        return acc

    return MultiFunctional(pair, n, fn, "(%s)*(%s)" % (T1.name(), T2.name()))


def module_action(x: LieVector, phi: MultiFunctional, side: str = "left") -> MultiFunctional:
    """x^l phi (p, a) = phi(p, a x);  x^r phi (p, a) = phi(p, Ad_p^{-1}(x) a)."""
    pair = phi.pair
    alg = pair.alg
    xe = ue.transport(UElement.from_lie(x), alg)
    if side not in ("left", "right"):
        raise InputError("side must be left or right")

    def fn(points, monos, order):
        p = points[0]
        a = UElement(alg, {monos[0]: Fraction(1)})
        if side == "left":
            arg = a * xe
        else:
            arg = pair.ad(p, xe, order, inverse=True) * a
        return phi.eval([p], [arg], order)

    return MultiFunctional(pair, 1, fn, "%s^%s(%s)" % (x, side[0], phi.name()))


# -- comparisons -------------------------------------------------------------------


def arg_tuples(pair: HCPair, slots: int, N: int):
    monos = pair.monomials(N)
    out = []
    for combo in iproduct(monos, repeat=slots):
        if sum(len(m) for m in combo) <= N:
            out.append(combo)
    return out


def _describe(pair, combo):
    return "(" + ", ".join(mono_text(pair.alg, m) or "1" for m in combo) + ")"


def functional_residual(F, G, N: int):
    """First disagreement of two functionals at weight N, or None."""
    pair = F.pair
    if F.slots != G.slots:
        raise InputError("slot mismatch")
    points = [pair.point(s + 1) for s in range(F.slots)]
    for combo in arg_tuples(pair, F.slots, N):
        order = N - sum(len(m) for m in combo)
        d = F.eval_mono(points, list(combo), order) - G.eval_mono(points, list(combo), order)
        d = d.truncated(order)
        if not d.is_zero():
            return "%s: %s" % (_describe(pair, combo), d)
    return None


def equivariance_residual(F: MultiFunctional, N: int):
    """phi(.., z a_i, ..) against the left-invariant derivative along z in
    slot i, for every h generator z and every slot; first failure or None."""
    pair = F.pair
    alg = pair.alg
    points = [pair.point(s + 1) for s in range(F.slots)]
    for combo in arg_tuples(pair, F.slots, N - 1):
        order = N - 1 - sum(len(m) for m in combo)
        for i in range(F.slots):
            for zi in pair.h_idx:
                za = UElement(alg, {(zi,): Fraction(1)}) * UElement(alg, {combo[i]: Fraction(1)})
                args = [UElement(alg, {m: Fraction(1)}) for m in combo]
                args[i] = za
                lhs = F.eval(points, args, order)
                moved, big, names = pair.move(points[i], [zi], order + 1)
                pts = [{l: v.embed(big) for l, v in p.items()} for p in points]
                pts[i] = moved
                val = F.eval(pts, [UElement(alg, {m: Fraction(1)}) for m in combo], order + 1)
                rhs = _coefficient_series(val, names, pair.ring)
                d = (lhs - rhs).truncated(order)
                if not d.is_zero():
                    return "slot %d, %s applied to %s: %s" % (i + 1, alg.labels[zi], _describe(pair, combo), d)
    return None


# -- verify-module adapter ---------------------------------------------------------


class HCStructure:
    """The Hopf algebra A at weight N, in the shape run_axiom_suite expects."""

    flavor = "hopf-algebra"

    def __init__(self, pair: HCPair, N: Optional[int] = None, literal_antipode: bool = False):
        self.pair = pair
        self.N = pair.N if N is None else N
        self.literal = literal_antipode
        self._basis = pair.functional_basis(self.N)
        self._weight = {n: f.weight() for n, f in self._basis}
        self._comul = {}

    def basis(self):
        return self._basis

    def pair_ok(self, a, b):
        return self._weight[a] + self._weight[b] <= self.N

    def triple_ok(self, a, b, c):
        return self._weight[a] + self._weight[b] + self._weight[c] <= self.N

    def mul(self, a, b):
        return hc_product(a, b)

    def unit(self):
        return self.pair.unit()

    def eta(self, c):
        return HCFunctional(self.pair, {(): c})

    def counit(self, a):
        return hc_counit(a)

    def comul(self, a):
        # memoized so repeated pair checks share evaluations
        key = id(a)
        hit = self._comul.get(key)
        if hit is None or hit[0] is not a:
            hit = (a, hc_coproduct(a))
            self._comul[key] = hit
        return hit[1]

    def comul_left(self, t):
        return delta_at(t, 0)

    def comul_right(self, t):
        return delta_at(t, 1)

    def counit_left(self, t):
        return counit_at(t, 0)

    def counit_right(self, t):
        return counit_at(t, 1)

    def tensor_unit(self):
        return tensor(self.pair.unit(), self.pair.unit())

    def tensor_mul(self, s, t):
        return tensor_mul(s, t)

    def mu_antipode_left(self, t):
        return merge(antipode_at(t, 0, self.literal))

    def mu_antipode_right(self, t):
        return merge(antipode_at(t, 1, self.literal))

    def residual(self, x, y):
        return functional_residual(x, y, self.N)

    def scalar_residual(self, x, y):
        return None if x == y else x - y


def hc_check(pair: HCPair, N: Optional[int] = None, literal_antipode=False, title=None):
    """Axiom report for A plus the equivariance of Delta and S on the basis."""
    S = HCStructure(pair, N, literal_antipode)
    rep = run_axiom_suite(S, title=title or "A(%s, h=%s)" % (pair.g.name, ",".join(pair.h_labels)))
    return rep


def equivariance_report(pair: HCPair, N: Optional[int] = None):
    """{name: residual or None} for Delta(phi) and S(phi) over the functional basis."""
    N = pair.N if N is None else N
    out = {}
    for name, f in pair.functional_basis(N):
        out["Delta(%s)" % name] = equivariance_residual(hc_coproduct(f), N)
        out["S(%s)" % name] = equivariance_residual(hc_antipode(f), N)
    return out


# -- super subalgebras -------------------------------------------------------------


class SuperHCPair:
    """Pair (g, h) with h super.  Functionals U(g) -> F(H) for the super group
    H are realized as maps Psi(a)(b), b in U(h), equivariant in both legs,
    given by a table on Sym(h_1) x Sym(m) with values in F(H_0)."""

    def __init__(self, g: LieAlgebra, h_labels: Sequence[str], N: int):
        self.g = g
        self.h_labels = sorted(h_labels, key=g.index)
        self.h0_labels = [l for l in self.h_labels if not g.parities[g.index(l)]]
        self.h1_labels = [l for l in self.h_labels if g.parities[g.index(l)]]
        self.N = N
        self.alg = hc_order(g, self.h_labels)
        self.h = g.subalgebra(self.h_labels)
        # U(h) ordered with h0 first
        self.halg = hc_order(self.h, self.h0_labels)
        self.even = HCPair(g, self.h0_labels, N)
        self.H0 = FormalGroup(self.h.subalgebra(self.h0_labels), N)
        self._fact_g: Dict = {}
        self._fact_h: Dict = {}

    def reduce(self) -> HCPair:
        return self.even

    def factor_g(self, mono):
        if mono not in self._fact_g:
            self._fact_g[mono] = hc_factorize(UElement(self.alg, {mono: Fraction(1)}), self.h_labels)[1]
        return self._fact_g[mono]

    def factor_h(self, el: UElement):
        out = {}
        for m, c in ue.transport(el, self.halg).terms.items():
            if m not in self._fact_h:
                self._fact_h[m] = hc_factorize(UElement(self.halg, {m: Fraction(1)}), self.h0_labels)[1]
            for k, v in self._fact_h[m].items():
                _add_into(out, k, c * v)
        return out

    def to_h(self, mono_g) -> UElement:
        """A U(h) monomial written in alg indices, as an element of U(h)."""
        return UElement(self.halg, {}) + ue.pbw_normalize(
            self.halg, [self.halg.index(self.alg.labels[i]) for i in mono_g])

    def random_table(self, rng: random.Random, weight: int):
        """Random even table (r in Sym(h_1), s in Sym(m)) -> polynomial in w."""
        W = self.even.wring
        nh = len(self.h_labels)
        h1 = [self.halg.index(l) for l in self.h1_labels]
        m = list(range(nh, self.alg.dim))
        table = {}
        for r in ue.admissible_monomials(self.halg, weight, h1):
            for s in ue.admissible_monomials(self.alg, weight - len(r), m):
                if (mono_parity(self.halg, r) + mono_parity(self.alg, s)) % 2:
                    continue
                terms = {}
                for k in range(0, weight - len(r) - len(s) + 1):
                    for wm in _monos(len(W.vars), k) if W.vars else [()]:
                        c = rng.randint(-3, 3)
                        if c:
                            terms[wm] = Fraction(c)
                if terms:
                    table[(r, s)] = Series(W, terms)
        return table

    def psi_value(self, table, a_mono, b: UElement, point: Point, order: int) -> Series:
        """Psi(a)(b) at a point of H_0 for the super functional given by ``table``."""
        pair = self.even
        ring = _ring(point, pair)
        acc = ring.zero(order=order)
        for (alpha, s), c in self.factor_g(a_mono).items():
            # Psi(alpha psi(s))(b) = Psi(psi(s))(b alpha)
            ba = b * self.to_h(alpha)
            for (beta, r), d in self.factor_h(ba).items():
                f = table.get((r, s))
                if f is None:
                    continue
                # beta is a U(h0) monomial in halg indices: map to pair.alg indices
                mh = tuple(pair.alg.index(self.halg.labels[i]) for i in beta)
                acc = acc + (c * d) * _derived_value(pair, f, point, mh, order)
        return acc

    def reduced_functional(self, table) -> HCFunctional:
        """psi0 = Psi(.)(1) as an elementary functional over (g, h_0)."""
        pair = self.even
        one = UElement.one(self.halg)
        W = pair.wring
        wpoint = {l: W.var("w_%s" % l) for l in self.h0_labels}
        out = {}
        for s in pair.sym_monomials(self.N):
            # psi(s) in pair.alg order is a combination of alg monomials
            s_sym = ue.psi(ue.SymElement(pair.alg, {s: Fraction(1)}))
            a = ue.transport(s_sym, self.alg)
            val = W.zero()
            for m, c in a.terms.items():
                val = val + c * self.psi_value(table, m, one, wpoint, self.N - len(s))
            if not val.is_zero():
                out[s] = val
        return HCFunctional(pair, out)

    def phi_value(self, psi0: MultiFunctional, a_mono, b: UElement, point: Point, order: int) -> Series:
        """Phi(psi0)(a)(b) = psi0(b a)."""
        pair = self.even
        a = UElement(self.alg, {a_mono: Fraction(1)})
        arg = ue.transport(_h_to_g(self, b) * a, pair.alg)
        return psi0.eval([point], [arg], order)


def _h_to_g(sp: SuperHCPair, b: UElement) -> UElement:
    out = UElement(sp.alg, {})
    for m, c in b.terms.items():
        out = out + c * ue.pbw_normalize(sp.alg, [sp.alg.index(sp.halg.labels[i]) for i in m])
    return out


def super_subalgebra_reduce(g: LieAlgebra, h_labels: Sequence[str], N: int):
    """Returns (SuperHCPair, reduced even HCPair)."""
    sp = SuperHCPair(g, h_labels, N)
    return sp, sp.reduce()


def reduction_roundtrip(sp: SuperHCPair, table, N: Optional[int] = None):
    """Compare Psi(a)(b) with Phi(Psi(.)(1))(a)(b) on all a, b with
    |a| + |b| <= N at a generic point of H_0; first failure or None."""
    N = sp.N if N is None else N
    psi0 = sp.reduced_functional(table)
    point = sp.even.point(1)
    amonos = ue.admissible_monomials(sp.alg, N)
    bmonos = ue.admissible_monomials(sp.halg, N)
    for a in amonos:
        for bm in bmonos:
            if len(a) + len(bm) > N:
                continue
            order = N - len(a) - len(bm)
            b = UElement(sp.halg, {bm: Fraction(1)})
            lhs = sp.psi_value(table, a, b, point, order)
            rhs = sp.phi_value(psi0, a, b, point, order)
            d = (lhs - rhs).truncated(order)
            if not d.is_zero():
                return "a=%s, b=%s: %s" % (mono_text(sp.alg, a) or "1", mono_text(sp.halg, bm) or "1", d)
    return None
