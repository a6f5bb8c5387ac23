"""Lie-Rinehart pairs over polynomial rings, universal enveloping algebroids,
the commutative Hopf algebroid of an action algebroid, jets, the formal
action groupoid and the action Harish-Chandra pair.

Everything here is for even Lie algebras acting on an affine space by
polynomial vector fields (action algebroids L = R (x) g).  Elements of
U(R, L) carry their R-coefficients on the left of PBW monomials of g.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import ue
from .core import InputError, rank
from .expr import Semantics, ParseError, evaluate, parse
from .lie import LieAlgebra, _add_into
from .poly import PolyRing, Series, Var
from .printing import format_linear
from .ue import UElement, mono_text, normal_terms, u_antipode

__all__ = [
    "VectorField",
    "LieRinehartPair",
    "UREElement",
    "ure_normalize",
    "ure_mul",
    "lr_epsilon",
    "ure_monomials",
    "operator_rank",
    "lr_coproduct",
    "RTensor",
    "coincidence_check",
    "UREBialgebra",
    "RTable",
    "ActionHopfAlgebroid",
    "action_hopf_maps",
    "JetElement",
    "parse_jet",
    "parse_vector_field",
    "projection_report",
    "zero_subalgebra_report",
    "tensor_of",
    "jet_pairing",
    "jet_antipode",
    "tangent_pair",
    "FormalActionGroupoid",
    "groupoid_jet_projection",
    "ActionHCStructure",
    "hc_to_table",
    "table_to_hc",
    "action_hc_structure",
    "weyl_pair",
    "heisenberg_plane_pair",
]

Mono = Tuple[int, ...]


def _zero_like(f: Series):
    return Series(f.ring, {})


# -- vector fields --------------------------------------------------------------


class VectorField:
    """sum_v a_v d/dv with polynomial coefficients over an even ring."""

    def __init__(self, ring: PolyRing, coeffs: Mapping[str, Series]):
        self.ring = ring
        self.coeffs = {v: c for v, c in coeffs.items() if not c.is_zero()}

    def __call__(self, f: Series) -> Series:
        out = Series(f.ring, {}, f.order)
        for v, c in self.coeffs.items():
            if v in f.ring:
                d = f.derivative(v)
                if not d.is_zero():
                    out = out + _lift(c, f.ring) * d
        return out

    def __add__(self, other):
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out[v] + c if v in out else c
        return VectorField(self.ring, out)

    def __sub__(self, other):
        return self + other.scale(self.ring.const(-1))

    def scale(self, f: Series):
        return VectorField(self.ring, {v: f * c for v, c in self.coeffs.items()})

    def bracket(self, other) -> "VectorField":
        out = {}
        for v in [x.name for x in self.ring.vars]:
            c = self(other.coeffs.get(v, self.ring.zero())) - other(self.coeffs.get(v, self.ring.zero()))
            if not c.is_zero():
                out[v] = c
        return VectorField(self.ring, out)

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.coeffs == other.coeffs

    def __str__(self):
        parts = []
        for v in [x.name for x in self.ring.vars]:
            c = self.coeffs.get(v)
            if c is None:
                continue
            parts.append((("%s*" % _paren(c)) if c != 1 else "") + "d/d%s" % v)
        return " + ".join(parts) if parts else "0"


def _paren(s):
    t = str(s)
    return "(%s)" % t if len(s.terms) > 1 else t


def _lift(c: Series, ring: PolyRing) -> Series:
    """Base polynomial viewed in a larger ring (same variable names)."""
    if c.ring == ring:
        return c
    return Series(ring, {tuple(sorted((ring.index(c.ring.vars[i].name), e) for i, e in m)): v
                         for m, v in c.terms.items()})


class _VFSemantics(Semantics):
    def __init__(self, ring):
        self.ring = ring
        self.names = [v.name for v in ring.vars]

    def num(self, c):
        return self.ring.const(c)

    def ident(self, name, pos):
        return self.ring.var(name)

    def deriv(self, name, pos):
        if name not in self.ring:
            raise ParseError("unknown coordinate %r" % name, pos)
        return VectorField(self.ring, {name: self.ring.const(1)})

    def add(self, a, b):
        if isinstance(a, VectorField) and isinstance(b, VectorField):
            return a + b
        if isinstance(a, Series) and isinstance(b, Series):
            return a + b
        raise InputError("cannot add a function and a vector field")

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return a.scale(self.ring.const(-1)) if isinstance(a, VectorField) else -a

    def mul(self, a, b):
        if isinstance(a, Series) and isinstance(b, Series):
            return a * b
        if isinstance(a, Series):
            return b.scale(a)
        if isinstance(b, Series):
            return a.scale(b)
        raise InputError("product of two vector fields is not a vector field")


def parse_vector_field(ring: PolyRing, text: str) -> VectorField:
    sem = _VFSemantics(ring)
    node = parse(text, sem.names)
    v = evaluate(node, sem)
    if isinstance(v, Series):
        if v.is_zero():
            return VectorField(ring, {})
        raise InputError("%r is a function, not a vector field" % text)
    return v


# -- Lie-Rinehart pairs -------------------------------------------------------------


class LieRinehartPair:
    """Action Lie-Rinehart pair: g acting on R = Q[coordinates] by the anchor."""

    def __init__(self, g: LieAlgebra, ring: PolyRing, anchor: Mapping[str, object], check: bool = True):
        if any(g.parities):
            raise InputError("only even Lie algebras are supported for algebroids")
        if any(v.parity for v in ring.vars):
            raise InputError("base coordinates must be even")
        self.g = g
        self.ring = ring
        rho = {}
        for l in g.labels:
            a = anchor.get(l, VectorField(ring, {}))
            if isinstance(a, str):
                a = parse_vector_field(ring, a)
            rho[l] = a
        for l in anchor:
            if l not in g.labels:
                raise InputError("anchor for unknown generator %r" % l)
        self.rho = [rho[l] for l in g.labels]
        self._rho_cache: Dict = {}
        if check:
            bad = self.anchor_violations()
            if bad:
                raise InputError("anchor is not a Lie algebra map: " + "; ".join(bad))

    def anchor_violations(self) -> List[str]:
        """rho[x,y] = [rho x, rho y] on every generator pair."""
        out = []
        g = self.g
        for i in range(g.dim):
            for j in range(i, g.dim):
                lhs = VectorField(self.ring, {})
                for k, c in g.bracket_basis(i, j).items():
                    lhs = lhs + self.rho[k].scale(self.ring.const(c))
                rhs = self.rho[i].bracket(self.rho[j])
                if lhs != rhs:
                    out.append("rho[%s,%s] = %s but [rho %s, rho %s] = %s"
                               % (g.labels[i], g.labels[j], lhs, g.labels[i], g.labels[j], rhs))
        return out

    def apply(self, mono: Mono, f: Series) -> Series:
        """rho(x_{i1}) ... rho(x_{ik}) (f), innermost last."""
        if not mono:
            return f
        key = (mono, f.ring, f)
        hit = self._rho_cache.get(key)
        if hit is None:
            hit = self.rho[mono[0]](self.apply(mono[1:], f))
            self._rho_cache[key] = hit
        return hit

    def apply_u(self, u: Mapping[Mono, object], f: Series) -> Series:
        out = Series(f.ring, {}, f.order)
        for m, c in u.items():
            out = out + c * self.apply(m, f)
        return out

    def one(self) -> "UREElement":
        return UREElement(self, {(): self.ring.const(1)})

    def gen(self, label) -> "UREElement":
        return UREElement(self, {(self.g.index(label),): self.ring.const(1)})

    def fn(self, f) -> "UREElement":
        if not isinstance(f, Series):
            f = self.ring.const(f)
        return UREElement(self, {(): f})

    def semantics(self):
        return _URESemantics(self)

    def __eq__(self, other):
        return isinstance(other, LieRinehartPair) and (self.g, self.ring, [v.coeffs for v in self.rho]) == (
            other.g, other.ring, [v.coeffs for v in other.rho])

    def __hash__(self):
        return hash((self.g, self.ring))


class _URESemantics(Semantics):
    def __init__(self, pair):
        self.pair = pair
        self.names = list(pair.g.labels) + [v.name for v in pair.ring.vars]

    def num(self, c):
        return self.pair.fn(c)

    def ident(self, name, pos):
        if name in self.pair.g.labels:
            return self.pair.gen(name)
        return self.pair.fn(self.pair.ring.var(name))

    def bracket(self, a, b):
        return a * b - b * a


class UREElement:
    """sum f_m * m with f_m in R and m an admissible g-monomial."""

    __slots__ = ("pair", "terms")

    def __init__(self, pair: LieRinehartPair, terms: Mapping[Mono, Series]):
        self.pair = pair
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    def __add__(self, other):
        other = _ure(self.pair, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(out, m, c)
        return UREElement(self.pair, out)

    __radd__ = __add__

    def __neg__(self):
        return UREElement(self.pair, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_ure(self.pair, other))

    def __rsub__(self, other):
        return _ure(self.pair, other) - self

    def __mul__(self, other):
        if isinstance(other, UREElement):
            return ure_mul(self, other)
        return self * _ure(self.pair, other)

    def __rmul__(self, other):
        return _ure(self.pair, other) * self

    def __eq__(self, other):
        if not isinstance(other, UREElement):
            other = _ure(self.pair, other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def coefficient(self, mono) -> Series:
        m = tuple(i if isinstance(i, int) else self.pair.g.index(i) for i in mono)
        return self.terms.get(m, self.pair.ring.zero())

    def apply(self, f: Series) -> Series:
        """Action as a differential operator on R."""
        out = self.pair.ring.zero()
        for m, c in self.terms.items():
            out = out + c * self.pair.apply(m, f)
        return out

    def flat_items(self):
        """((R-monomial, g-monomial), rational) sorted canonically."""
        ring = self.pair.ring
        items = []
        for m, f in self.terms.items():
            for r, c in f.terms.items():
                items.append(((r, m), c))
        return sorted(items, key=lambda t: (-len(t[0][1]), t[0][1], -ring.mono_order(t[0][0]), t[0][0]))

    def __str__(self):
        ring = self.pair.ring
        g = self.pair.g
        out = []
        for (r, m), c in self.flat_items():
            parts = [p for p in (ring.mono_text(r), mono_text(g, m)) if p]
            out.append(("*".join(parts), c))
        return format_linear(out)

    __repr__ = __str__


def _ure(pair, x) -> UREElement:
    if isinstance(x, UREElement):
        return x
    if isinstance(x, Series):
        return pair.fn(x)
    return pair.fn(pair.ring.const(x))


def ure_mul(a: UREElement, b: UREElement) -> UREElement:
    """(f m)(g n) = sum f rho(m')(g) m'' n."""
    if a.pair is not b.pair and a.pair != b.pair:
        raise InputError("elements of different Lie-Rinehart pairs")
    pair = a.pair
    g = pair.g
    out: Dict[Mono, Series] = {}
    for m, f in a.terms.items():
        d = ue.coproduct_terms(g, m)
        for n, h in b.terms.items():
            for (m1, m2), c in d.items():
                coef = f * pair.apply(m1, h) * c
                if coef.is_zero():
                    continue
                for k, c2 in normal_terms(g, m2 + n).items():
                    _add_into(out, k, coef * c2)
    return UREElement(pair, out)


def ure_normalize(pair: LieRinehartPair, word: Sequence, strategy: str = "left") -> UREElement:
    """Normal form of a mixed word of ring elements and generator labels.

    Rewrites x f -> f x + rho(x)(f) at the leftmost (or rightmost) offending
    position until every ring element stands on the left, then PBW-normalizes
    the generator part.  Independent of :func:`ure_mul`.
    """
    g = pair.g
    toks = []
    for t in word:
        if isinstance(t, str) and t in g.labels:
            toks.append(g.index(t))
        elif isinstance(t, int) and not isinstance(t, bool):
            toks.append(t)
        elif isinstance(t, Series):
            toks.append(t)
        elif isinstance(t, str):
            toks.append(pair.ring.var(t))
        else:
            toks.append(pair.ring.const(t))
    pending = [(Fraction(1), tuple(toks))]
    out: Dict[Mono, Series] = {}
    while pending:
        c, w = pending.pop()
        pos = [k for k in range(len(w) - 1) if isinstance(w[k], int) and isinstance(w[k + 1], Series)]
        if not pos:
            f = pair.ring.const(c)
            gens = []
            for t in w:
                if isinstance(t, Series):
                    f = f * t
                else:
                    gens.append(t)
            if f.is_zero():
                continue
            for m, c2 in normal_terms(g, tuple(gens)).items():
                _add_into(out, m, f * c2)
            continue
        k = pos[0] if strategy == "left" else pos[-1]
        x, f = w[k], w[k + 1]
        pending.append((c, w[:k] + (f, x) + w[k + 2:]))
        df = pair.rho[x](f)
        if not df.is_zero():
            pending.append((c, w[:k] + (df,) + w[k + 2:]))
    return UREElement(pair, out)


def ure_monomials(pair: LieRinehartPair, N: int) -> List[UREElement]:
    """f * m with f a base monomial and deg f + |m| <= N."""
    out = []
    for m in ue.admissible_monomials(pair.g, N):
        for r in _ring_monos(pair.ring, N - len(m)):
            out.append(UREElement(pair, {m: Series(pair.ring, {r: Fraction(1)})}))
    return out


def operator_rank(pair: LieRinehartPair, N: int, test_degree: Optional[int] = None) -> Tuple[int, int]:
    """(number of normal monomials f*m with deg f + |m| <= N, rank of their
    action on base polynomials of degree <= test_degree).  Equal numbers
    certify linear independence of the normal monomials."""
    test_degree = 2 * N if test_degree is None else test_degree
    els = ure_monomials(pair, N)
    tests = [Series(pair.ring, {r: Fraction(1)}) for r in _ring_monos(pair.ring, test_degree)]
    rows = []
    for el in els:
        row = []
        for f in tests:
            v = el.apply(f)
            row.append(v)
        rows.append(row)
    keys = sorted({m for row in rows for v in row for m in v.terms})
    mat = [[v.terms.get(k, Fraction(0)) for v in row for k in keys] for row in rows]
    return len(els), rank(mat)


def lr_epsilon(a: UREElement) -> Series:
    """Counit: the operator applied to the constant 1."""
    return a.terms.get((), a.pair.ring.zero())


# -- tensors over R ----------------------------------------------------------------


class RTensor:
    """sum f (m_1 (x) ... (x) m_k) in U (x)_R ... (x)_R U, R acting on the left
    of every factor (and hence gathered in front)."""

    def __init__(self, pair: LieRinehartPair, k: int, terms: Mapping[Tuple[Mono, ...], Series]):
        self.pair = pair
        self.k = k
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(out, m, c)
        return RTensor(self.pair, self.k, out)

    def __sub__(self, other):
        return self + RTensor(other.pair, other.k, {m: -c for m, c in other.terms.items()})

    def __eq__(self, other):
        return isinstance(other, RTensor) and self.k == other.k and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        g = self.pair.g
        ring = self.pair.ring
        items = []
        for ms, f in sorted(self.terms.items(), key=lambda t: ([-len(m) for m in t[0]], t[0])):
            for r, c in sorted(f.terms.items()):
                legs = " (x) ".join(mono_text(g, m) or "1" for m in ms)
                rt = ring.mono_text(r)
                items.append((("%s*" % rt if rt else "") + "(" + legs + ")", c))
        return format_linear(items)

    __repr__ = __str__


def tensor_of(pairs: Sequence[Tuple[UREElement, UREElement]]) -> RTensor:
    """sum a_i (x)_R b_i in canonical form."""
    pair = pairs[0][0].pair
    out: Dict = {}
    for a, b in pairs:
        for m1, f in a.terms.items():
            for m2, h in b.terms.items():
                _add_into(out, (m1, m2), f * h)
    return RTensor(pair, 2, out)


def lr_coproduct(a: UREElement) -> RTensor:
    """Delta(f m) = f sum m' (x) m''."""
    out: Dict = {}
    for m, f in a.terms.items():
        for (m1, m2), c in ue.coproduct_terms(a.pair.g, m).items():
            _add_into(out, (m1, m2), f * c)
    return RTensor(a.pair, 2, out)


def _leg(pair, m, f=None) -> UREElement:
    return UREElement(pair, {m: pair.ring.const(1) if f is None else f})


def right_multiply(t: RTensor, f: Series, leg: int) -> RTensor:
    """Right multiplication by f in one tensor leg, re-canonicalized."""
    pair = t.pair
    out: Dict = {}
    for ms, c in t.terms.items():
        prod = ure_mul(_leg(pair, ms[leg]), pair.fn(f))
        for m, h in prod.terms.items():
            key = ms[:leg] + (m,) + ms[leg + 1:]
            _add_into(out, key, c * h)
    return RTensor(pair, t.k, out)


def coincidence_check(t: RTensor, f) -> Tuple[bool, RTensor]:
    """Membership test for the coincidence locus against one function f:
    returns (equal?, residual first-leg minus second-leg)."""
    pair = t.pair
    if not isinstance(f, Series):
        f = pair.ring.const(f) if not isinstance(f, str) else pair.ring.var(f)
    res = right_multiply(t, f, 0) - right_multiply(t, f, 1)
    return res.is_zero(), res


def rtensor_mul(s: RTensor, t: RTensor) -> RTensor:
    """(a (x) b)(c (x) d) = ac (x) bd (on the coincidence locus)."""
    pair = s.pair
    g = pair.g
    out: Dict = {}
    for (m1, m2), f in s.terms.items():
        for (n1, n2), h in t.terms.items():
            first = ure_mul(_leg(pair, m1, f), _leg(pair, n1, h))
            second = normal_terms(g, m2 + n2)
            for k1, c1 in first.terms.items():
                for k2, c2 in second.items():
                    _add_into(out, (k1, k2), c1 * c2)
    return RTensor(pair, 2, out)


class UREBialgebra:
    """U(R, L) at bounded size as a left bialgebroid for run_axiom_suite."""

    flavor = "left-bialgebra"

    def __init__(self, pair: LieRinehartPair, N: int):
        self.pair = pair
        self.N = N
        ring = pair.ring
        self._base = [(ring.mono_text(r) or "1", Series(ring, {r: Fraction(1)})) for r in _ring_monos(ring, N)]
        self._basis = []
        for m in ue.admissible_monomials(pair.g, N):
            for name, f in self._base:
                if f.max_order_total() + len(m) <= N:
                    el = UREElement(pair, {m: f})
                    self._basis.append((str(el), el))

    def basis(self):
        return self._basis

    def base_basis(self):
        return self._base

    def base_one(self):
        return self.pair.ring.const(1)

    def base_mul(self, f, h):
        return f * h

    def eta(self, f):
        return self.pair.fn(f)

    def mul(self, a, b):
        return ure_mul(a, b)

    def unit(self):
        return self.pair.one()

    def counit(self, a):
        return lr_epsilon(a)

    def comul(self, a):
        return lr_coproduct(a)

    def tensor_mul(self, s, t):
        return rtensor_mul(s, t)

    def f_tensor_1(self, f):
        return tensor_of([(self.pair.fn(f), self.pair.one())])

    def one_tensor_f(self, f):
        return tensor_of([(self.pair.one(), self.pair.fn(f))])

    def comul_left(self, t):
        out: Dict = {}
        for (m1, m2), f in t.terms.items():
            for (a, b), c in ue.coproduct_terms(self.pair.g, m1).items():
                _add_into(out, (a, b, m2), f * c)
        return RTensor(self.pair, 3, out)

    def comul_right(self, t):
        out: Dict = {}
        for (m1, m2), f in t.terms.items():
            for (a, b), c in ue.coproduct_terms(self.pair.g, m2).items():
                _add_into(out, (m1, a, b), f * c)
        return RTensor(self.pair, 3, out)

    def counit_left(self, t):
        return UREElement(self.pair, {m2: f for (m1, m2), f in t.terms.items() if not m1})

    def counit_right(self, t):
        return UREElement(self.pair, {m1: f for (m1, m2), f in t.terms.items() if not m2})

    def in_coincidence(self, t):
        for v in self.pair.ring.vars:
            ok, res = coincidence_check(t, self.pair.ring.var(v.name))
            if not ok:
                return False, "f = %s: %s" % (v.name, res)
        return True, None

    def residual(self, x, y):
        d = x - y
        return None if d.is_zero() else d

    def base_residual(self, x, y):
        d = x - y
        return None if d.is_zero() else d


def _max_order_total(self):
    return max((sum(e for _, e in m) for m in self.terms), default=0)


Series.max_order_total = _max_order_total


def _ring_monos(ring: PolyRing, deg: int):
    out = [()]
    n = len(ring.vars)
    for k in range(1, deg + 1):
        def rec(i, left):
            if i == n - 1:
                yield ((i, left),) if left else ()
                return
            for e in range(left, -1, -1):
                for rest in rec(i + 1, left - e):
                    yield (((i, e),) if e else ()) + rest
        if n:
            out.extend(rec(0, k))
    return out


# -- the action Hopf algebroid on tables -----------------------------------------


class RTable:
    """R-valued functional on k-tuples of admissible monomials, total length
    <= N (missing entries are zero)."""

    def __init__(self, owner, k: int, data: Mapping[Tuple[Mono, ...], Series]):
        self.owner = owner
        self.k = k
        self.data = {t: v for t, v in data.items() if not v.is_zero()}

    def __call__(self, *monos) -> Series:
        return self.data.get(tuple(monos), self.owner.zero)

    def value(self, args: Sequence[Mapping[Mono, object]]) -> Series:
        """Multilinear extension to linear combinations of monomials."""
        out = self.owner.zero
        for combo in iproduct(*[list(a.items()) for a in args]):
            c = Fraction(1)
            for _, ci in combo:
                c *= ci
            v = self.data.get(tuple(m for m, _ in combo))
            if v is not None:
                out = out + c * v
        return out

    def __eq__(self, other):
        return isinstance(other, RTable) and self.k == other.k and self.data == other.data

    def __sub__(self, other):
        out = dict(self.data)
        for t, v in other.data.items():
            _add_into(out, t, -v)
        return RTable(self.owner, self.k, out)

    def is_zero(self):
        return not self.data

    def __str__(self):
        g = self.owner.pair.g
        if not self.data:
            return "0"
        items = []
        for t, v in sorted(self.data.items(), key=lambda kv: (sum(len(m) for m in kv[0]), kv[0])):
            items.append("[%s] -> %s" % (", ".join(mono_text(g, m) or "1" for m in t), v))
        return "; ".join(items)

    __repr__ = __str__


class ActionHopfAlgebroid:
    """H = R (x) U(g)^* for an action algebroid, on length-<=N tables."""

    flavor = "hopf-algebroid"

    def __init__(self, pair: LieRinehartPair, N: int, base_degree: int = 1):
        self.pair = pair
        self.N = N
        self.g = pair.g
        self.zero = pair.ring.zero()
        self.monos = ue.admissible_monomials(self.g, N)
        self.base_degree = base_degree
        self._tuples = {}
        self._weight = {}

    def S_terms(self, m: Mono) -> Dict[Mono, Fraction]:
        """U(g) antipode of a PBW monomial (single hook for all antipode maps)."""
        return u_antipode(UElement(self.g, {m: Fraction(1)})).terms

    def tuples(self, k):
        if k not in self._tuples:
            self._tuples[k] = [t for t in iproduct(self.monos, repeat=k) if sum(len(m) for m in t) <= self.N]
        return self._tuples[k]

    def table(self, k, fn):
        return RTable(self, k, {t: fn(*t) for t in self.tuples(k)})

    # elements
    def delta_functional(self, m, f=None):
        f = self.pair.ring.const(1) if f is None else f
        return RTable(self, 1, {(m,): f})

    def basis(self):
        ring = self.pair.ring
        out = []
        for m in self.monos:
            for r in _ring_monos(ring, self.base_degree):
                f = Series(ring, {r: Fraction(1)})
                name = "%s*d[%s]" % (ring.mono_text(r) or "1", mono_text(self.g, m) or "1")
                self._weight[name] = len(m)
                out.append((name, self.delta_functional(m, f)))
        return out

    def base_basis(self):
        ring = self.pair.ring
        return [(ring.mono_text(r) or "1", Series(ring, {r: Fraction(1)})) for r in _ring_monos(ring, self.N)]

    def _w(self, a):
        return self._weight.get(a, 0)

    def pair_ok(self, a, b):
        return self._w(a) + self._w(b) <= self.N

    def triple_ok(self, a, b, c):
        return self._w(a) + self._w(b) + self._w(c) <= self.N

    # structure maps
    def unit(self):
        return self.delta_functional(())

    def mul(self, a, b):
        g = self.g

        def fn(m):
            out = self.zero
            for (m1, m2), c in ue.coproduct_terms(g, m).items():
                x, y = a.data.get((m1,)), b.data.get((m2,))
                if x is not None and y is not None:
                    out = out + c * x * y
            return out

        return self.table(1, fn)

    def eta_L(self, f):
        return self.delta_functional((), f)

    def eta_R(self, f):
        return self.table(1, lambda m: self.pair.apply(m, f))

    def counit(self, a):
        return a(())

    def comul(self, a):
        g = self.g
        return self.table(2, lambda m1, m2: a.value([normal_terms(g, m1 + m2)]))

    def antipode(self, a):
        """S(phi)(u) = sum rho(u')[phi(S(u''))]."""
        g = self.g

        def fn(m):
            out = self.zero
            for (m1, m2), c in ue.coproduct_terms(g, m).items():
                v = a.value([self.S_terms(m2)])
                if not v.is_zero():
                    out = out + c * self.pair.apply(m1, v)
            return out

        return self.table(1, fn)

    def comul_left(self, t):
        g = self.g
        return self.table(3, lambda a, b, c: t.value([normal_terms(g, a + b), {c: 1}]))

    def comul_right(self, t):
        g = self.g
        return self.table(3, lambda a, b, c: t.value([{a: 1}, normal_terms(g, b + c)]))

    def counit_left(self, t):
        return self.table(1, lambda m: t((), m))

    def counit_right(self, t):
        return self.table(1, lambda m: t(m, ()))

    def left_tensor_one(self, a):
        return self.table(2, lambda m1, m2: a(m1) if not m2 else self.zero)

    def one_tensor_right(self, b):
        return self.table(2, lambda m1, m2: self.pair.apply(m1, b(m2)))

    def tensor_unit(self):
        return RTable(self, 2, {((), ()): self.pair.ring.const(1)})

    def tensor_mul(self, s, t):
        g = self.g

        def fn(m1, m2):
            out = self.zero
            for (a1, a2), c in ue.coproduct_terms(g, m1).items():
                for (b1, b2), d in ue.coproduct_terms(g, m2).items():
                    x, y = s.data.get((a1, b1)), t.data.get((a2, b2))
                    if x is not None and y is not None:
                        out = out + (c * d) * x * y
            return out

        return self.table(2, fn)

    def mu_antipode_right(self, t):
        """mu (id (x) S)(T)(u) = sum T(u', S(u''))."""
        g = self.g

        def fn(m):
            out = self.zero
            for (m1, m2), c in ue.coproduct_terms(g, m).items():
                out = out + c * t.value([{m1: 1}, self.S_terms(m2)])
            return out

        return self.table(1, fn)

    def mu_antipode_left(self, t):
        """mu (S (x) id)(T)(u) = sum rho(u_1)[T(S(u_2), u_3)]."""
        g = self.g

        def fn(m):
            out = self.zero
            for (m1, rest), c in ue.coproduct_terms(g, m).items():
                for (m2, m3), d in ue.coproduct_terms(g, rest).items():
                    v = t.value([self.S_terms(m2), {m3: 1}])
                    if not v.is_zero():
                        out = out + (c * d) * self.pair.apply(m1, v)
            return out

        return self.table(1, fn)

    def residual(self, x, y):
        d = x - y
        return None if d.is_zero() else d

    def base_residual(self, x, y):
        d = x - y
        return None if d.is_zero() else d


def action_hopf_maps(pair: LieRinehartPair, N: int, base_degree: int = 1) -> ActionHopfAlgebroid:
    return ActionHopfAlgebroid(pair, N, base_degree)


# -- jets ----------------------------------------------------------------------------


def tangent_pair(dim: int) -> LieRinehartPair:
    """TM of affine d-space: generators D1..Dd with anchor d/dz_i."""
    from .lie import abelian

    g = abelian([("D%d" % (i + 1), 0, 0) for i in range(dim)], name="vect%d" % dim)
    names = ["z"] if dim == 1 else ["z%d" % (i + 1) for i in range(dim)]
    ring = PolyRing([Var(n) for n in names])
    return LieRinehartPair(g, ring, {"D%d" % (i + 1): VectorField(ring, {names[i]: ring.const(1)})
                                     for i in range(dim)})


class JetElement:
    """sum f1 j(f2), kept as a list of pairs; compared through tables."""

    def __init__(self, pair: LieRinehartPair, pairs: Sequence[Tuple[Series, Series]]):
        self.pair = pair
        self.pairs = []
        for a, b in pairs:
            if a.is_zero() or b.is_zero():
                continue
            # scalars move out of j: leading coefficient of f2 becomes 1
            c = b.sorted_items()[0][1]
            self.pairs.append((a * c, b * (1 / c)) if c != 1 else (a, b))

    @classmethod
    def j(cls, pair, f):
        return cls(pair, [(pair.ring.const(1), f)])

    @classmethod
    def fn(cls, pair, f):
        return cls(pair, [(f, pair.ring.const(1))])

    def __add__(self, other):
        return JetElement(self.pair, self.pairs + other.pairs)

    def __neg__(self):
        return JetElement(self.pair, [(-a, b) for a, b in self.pairs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, JetElement):
            return JetElement(self.pair, [(a * c, b * d) for a, b in self.pairs for c, d in other.pairs])
        if not isinstance(other, Series):
            other = self.pair.ring.const(other)
        return JetElement(self.pair, [(other * a, b) for a, b in self.pairs])

    __rmul__ = __mul__

    def table(self, N: int) -> RTable:
        """Canonical form: m -> sum f1 rho(m)(f2) for |m| <= N."""
        H = ActionHopfAlgebroid(self.pair, N)
        data = {}
        for m in H.monos:
            v = H.zero
            for a, b in self.pairs:
                v = v + a * self.pair.apply(m, b)
            data[(m,)] = v
        return RTable(H, 1, data)

    def __str__(self):
        out = ""
        for a, b in self.pairs:
            neg = all(c < 0 for c in a.terms.values())
            a = -a if neg else a
            if b == 1:
                t = str(a)
            else:
                t = "j(%s)" % b if a == 1 else "%s*j(%s)" % (_paren(a), b)
            out += (" - " if neg else " + ") + t if out else ("-" if neg else "") + t
        return out or "0"


class _JetSemantics(Semantics):
    def __init__(self, pair):
        self.pair = pair
        self.names = [v.name for v in pair.ring.vars] + ["j"]

    def num(self, c):
        return self.pair.ring.const(c)

    def ident(self, name, pos):
        return self.pair.ring.var(name)

    def call(self, name, arg, pos):
        if name != "j":
            raise ParseError("unknown function %r" % name, pos)
        if not isinstance(arg, Series):
            raise ParseError("j() takes a function", pos)
        return JetElement.j(self.pair, arg)

    def _jet(self, a):
        return JetElement.fn(self.pair, a) if isinstance(a, Series) else a

    def add(self, a, b):
        if isinstance(a, Series) and isinstance(b, Series):
            return a + b
        return self._jet(a) + self._jet(b)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return -a

    def mul(self, a, b):
        if isinstance(a, Series) and isinstance(b, Series):
            return a * b
        return self._jet(a) * self._jet(b)


def parse_jet(pair, text) -> JetElement:
    sem = _JetSemantics(pair)
    node = parse(text, sem.names)
    v = evaluate(node, sem)
    return JetElement.fn(pair, v) if isinstance(v, Series) else v


def jet_pairing(p: UREElement, phi: JetElement) -> Series:
    """<p, sum f1 j(f2)> = sum f1 p(f2)."""
    out = p.pair.ring.zero()
    for a, b in phi.pairs:
        out = out + a * p.apply(b)
    return out


def jet_antipode(phi: JetElement) -> JetElement:
    """f1 j(f2) -> f2 j(f1)."""
    return JetElement(phi.pair, [(b, a) for a, b in phi.pairs])


# -- formal action groupoid and the jet projection -------------------------------------


class FormalActionGroupoid:
    """Functions on M x G_formal for the formal group G of g acting on M.

    Functions are series in base coordinates (untruncated) and exponential
    group coordinates w_* (truncated at order N).  The formal action is
    f(g^{-1} z) = (exp(rho(W)) f)(z) for g = exp(W).
    """

    def __init__(self, pair: LieRinehartPair, N: int):
        from .hc import FormalGroup

        self.pair = pair
        self.N = N
        self.G = FormalGroup(pair.g, N)
        g = pair.g
        base = [Var(v.name, v.degree, 0, 0) for v in pair.ring.vars]
        self.base_vars = base
        self.wnames = ["w_%s" % l for l in g.labels]
        self.ring = PolyRing([Var("w_%s" % x.label, -x.degree, 0) for x in g.basis] + base)
        self.ring2 = PolyRing([Var("%s_%s" % (p, x.label), -x.degree, 0) for p in ("w1", "w2") for x in g.basis]
                              + base)

    def lift(self, f: Series, ring=None) -> Series:
        return _lift(f, ring or self.ring).with_truncation(order=self.N)

    def point(self, ring, prefix="w"):
        return {l: ring.var("%s_%s" % (prefix, l)) for l in self.pair.g.labels}

    def exp_rho(self, point, f: Series, order: int) -> Series:
        """exp(rho(W)) f with W = sum point^a x_a, derivations on base vars."""
        ring = f.ring
        out = f.with_truncation(order=order)
        term = out
        for k in range(1, order + 1):
            nxt = Series(ring, {}, order)
            for i, l in enumerate(self.pair.g.labels):
                c = point[l]
                if c.is_zero():
                    continue
                nxt = nxt + c * self.pair.rho[i](term)
            term = nxt * Fraction(1, k)
            if term.is_zero():
                break
            out = out + term
        return out.truncated(order)

    # structure maps on H_G
    def eta_L(self, f):
        return self.lift(f)

    def eta_R(self, f):
        return self.exp_rho(self.point(self.ring), self.lift(f), self.N)

    def counit(self, phi: Series) -> Series:
        v = phi.substitute({n: 0 for n in self.wnames}, order=self.N)
        return _project(v, self.pair.ring)

    def comul(self, phi: Series) -> Series:
        """phi(z, g1 g2) as a series in (w1, w2, z)."""
        R2 = self.ring2
        prod = self.G.compose(self.point(R2, "w1"), self.point(R2, "w2"), self.N)
        return phi.substitute({"w_%s" % l: prod[l] for l in self.pair.g.labels}, ring=R2, order=self.N)

    def antipode(self, phi: Series) -> Series:
        """phi(g^{-1} z, g^{-1})."""
        g = self.pair.g
        big = self.ring.extend([Var("a_%s" % l, -g.degrees[i], 0) for i, l in enumerate(g.labels)])
        emb = _lift(phi, big).with_truncation(order=self.N)
        moved = self.exp_rho({l: big.var("a_%s" % l) for l in g.labels}, emb, self.N)
        inv = self.G.inverse(self.point(self.ring), self.N)
        vals = {"a_%s" % l: self.ring.var("w_%s" % l) for l in g.labels}
        vals.update({"w_%s" % l: inv[l] for l in g.labels})
        return moved.substitute(vals, ring=self.ring, order=self.N)

    # projection to the algebroid
    def _slot_point(self, word, ring, names):
        p = {l: ring.zero() for l in self.pair.g.labels}
        for n, i in zip(names, word):
            q = {l: ring.zero() for l in self.pair.g.labels}
            q[self.pair.g.labels[i]] = ring.var(n)
            p = self.G.compose(p, q, self.N)
        return p

    def project(self, phi: Series, H: ActionHopfAlgebroid) -> RTable:
        """phi(z, u) = d/dl_1 ... d/dl_m phi(z, e^{l_1 x_1} ... e^{l_m x_m})."""
        data = {}
        for m in H.monos:
            data[(m,)] = self._extract(phi, [m], ["w"])
        return RTable(H, 1, data)

    def project2(self, phi: Series, H: ActionHopfAlgebroid) -> RTable:
        data = {}
        for m1, m2 in H.tuples(2):
            data[(m1, m2)] = self._extract(phi, [m1, m2], ["w1", "w2"])
        return RTable(H, 2, data)

    def _extract(self, phi, words, prefixes):
        g = self.pair.g
        degs = [-g.degrees[i] for w in words for i in w]
        names = ["_l%d" % k for k in range(len(degs))]
        lam = PolyRing([Var(n, d, 0) for n, d in zip(names, degs)] + self.base_vars)
        vals = {}
        k = 0
        for w, pre in zip(words, prefixes):
            pt = self._slot_point(w, lam, names[k:k + len(w)])
            k += len(w)
            for l in g.labels:
                vals["%s_%s" % (pre, l)] = pt[l]
        val = phi.substitute(vals, ring=lam, order=len(names))
        want = {lam.index(n) for n in names}
        out = {}
        for mono, c in val.terms.items():
            if {i for i, e in mono if i in want} == want and all(e == 1 for i, e in mono if i in want):
                rest = tuple((self.pair.ring.index(lam.vars[i].name), e) for i, e in mono if i not in want)
                out[rest] = c
        return Series(self.pair.ring, out)

    def project_dual(self, phi: Series, H: ActionHopfAlgebroid) -> RTable:
        """Same projection through the exp-dual basis: <w^B, psi(x_B)> is
        the reciprocal of the u^B coefficient of the exp expansion."""
        from .bch import exp_dual_expansion

        g = self.pair.g
        E = exp_dual_expansion(g, self.N)
        data = {}
        for m in H.monos:
            sym = ue.psi_inverse(UElement(g, {m: Fraction(1)}))
            v = H.zero
            for B, c in sym.terms.items():
                eb = E[B]
                (umono, ucoef), = eb.terms.items()
                exps = {"w_%s" % eb.ring.vars[i].name[2:]: e for i, e in umono}
                v = v + (c / ucoef) * _w_coefficient(phi, exps, self.pair.ring)
            data[(m,)] = v
        return RTable(H, 1, data)

    def basis(self, base_degree: int = 1):
        """w^k z^a with |k| <= N and deg z^a <= base_degree."""
        from .hc import _monos

        nw = len(self.wnames)
        out = []
        wm = [()]
        for k in range(1, self.N + 1):
            wm += _monos(nw, k)
        for a in wm:
            for r in _ring_monos(self.pair.ring, base_degree):
                rr = tuple((nw + i, e) for i, e in r)
                s = Series(self.ring, {tuple(sorted(a + rr)): Fraction(1)}, self.N)
                out.append((self.ring.mono_text(tuple(sorted(a + rr))) or "1", s))
        return out


def _w_coefficient(phi: Series, exps: Mapping[str, int], base: PolyRing) -> Series:
    """Coefficient of a w-monomial, as a base polynomial."""
    ring = phi.ring
    out = {}
    for m, c in phi.terms.items():
        wpart = {ring.vars[i].name: e for i, e in m if ring.vars[i].name.startswith("w_")}
        if wpart == dict(exps):
            rest = tuple((base.index(ring.vars[i].name), e) for i, e in m if not ring.vars[i].name.startswith("w_"))
            out[rest] = c
    return Series(base, out)


def _project(v: Series, base: PolyRing) -> Series:
    out = {}
    for m, c in v.terms.items():
        out[tuple((base.index(v.ring.vars[i].name), e) for i, e in m)] = c
    return Series(base, out)


def groupoid_jet_projection(G: FormalActionGroupoid, phi: Series, N: Optional[int] = None) -> RTable:
    H = ActionHopfAlgebroid(G.pair, G.N if N is None else N)
    return G.project(phi, H)


def projection_report(G: FormalActionGroupoid, base_degree: int = 1) -> Dict[str, Optional[str]]:
    """First failure (or None) of each of the five commutation laws, plus
    surjectivity of the projection onto length-<=N tables."""
    H = ActionHopfAlgebroid(G.pair, G.N)
    out = {}
    ring = G.pair.ring

    def first(check):
        for name, item in check:
            if item is not None:
                return "%s: %s" % (name, item)
        return None

    fs = [(ring.mono_text(r) or "1", Series(ring, {r: Fraction(1)})) for r in _ring_monos(ring, 2)]
    out["eta_L"] = first((n, H.residual(G.project(G.eta_L(f), H), H.eta_L(f))) for n, f in fs)
    out["eta_R"] = first((n, H.residual(G.project(G.eta_R(f), H), H.eta_R(f))) for n, f in fs)
    basis = G.basis(base_degree)
    out["counit"] = first((n, H.base_residual(G.counit(phi), H.counit(G.project(phi, H)))) for n, phi in basis)
    out["coproduct"] = first((n, H.residual(G.project2(G.comul(phi), H), H.comul(G.project(phi, H))))
                             for n, phi in basis)
    out["antipode"] = first((n, H.residual(G.project(G.antipode(phi), H), H.antipode(G.project(phi, H))))
                            for n, phi in basis)
    # surjectivity: constant-coefficient w-monomials span all delta tables
    rows = []
    for n, phi in G.basis(0):
        t = G.project(phi, H)
        rows.append([t(m).constant() for m in H.monos])
    r = rank(rows)
    out["surjective"] = None if r == len(H.monos) else "rank %d < %d" % (r, len(H.monos))
    return out


# -- action Harish-Chandra pair -------------------------------------------------------


class ActionHCStructure:
    """Hom_{U(h)}(U(g), F(M x H)) for an action algebroid with H the formal
    group of a subalgebra h, as a commutative Hopf algebroid over R."""

    flavor = "hopf-algebroid"

    def __init__(self, pair: LieRinehartPair, h_labels: Sequence[str], N: int, base_degree: int = 1,
                 check: bool = True):
        from .hc import HCPair

        self.lr = pair
        self.N = N
        base = PolyRing([Var(v.name, v.degree, 0, 0) for v in pair.ring.vars])
        self.pair = HCPair(pair.g, h_labels, N, base=base)
        self.base_degree = base_degree
        self._comul = {}
        self._basis = self.pair.functional_basis(N, base_monos=_ring_monos(pair.ring, base_degree))
        self._weight = {n: f.weight() for n, f in self._basis}
        # anchor in the reordered algebra
        alg = self.pair.alg
        self.rho = [pair.rho[pair.g.index(l)] for l in alg.labels]
        if check:
            bad = self.compatibility_violations()
            if bad:
                raise InputError("Harish-Chandra compatibility fails: " + bad)

    # helpers
    def _apply_mono(self, mono, F: Series) -> Series:
        for i in reversed(mono):
            F = self.rho[i](F)
        return F

    def exp_rho(self, point, F: Series, order: int) -> Series:
        alg = self.pair.alg
        out = F.truncated(order)
        term = out
        for k in range(1, order + 1):
            nxt = Series(F.ring, {}, order)
            for l in self.pair.h_labels:
                c = point[l]
                if not c.is_zero():
                    nxt = nxt + c * self.rho[alg.index(l)](term)
            term = nxt * Fraction(1, k)
            if term.is_zero():
                break
            out = out + term
        return out.truncated(order)

    def tau(self, point, mono, F: Series, order: int) -> Series:
        """Function transport by the semi-formal element (p, a): exp(rho W_p) rho(a)."""
        return self.exp_rho(point, self._apply_mono(mono, F), order)

    def compatibility_violations(self) -> Optional[str]:
        """h* rho(x) (h^{-1})* = rho(Ad_{h^{-1}} x) on base monomials of degree
        <= 2, with h* f = exp(-rho W) f."""
        pair = self.pair
        alg = pair.alg
        p = pair.point(1)
        neg = {l: -v for l, v in p.items()}
        order = self.N
        for xi in range(alg.dim):
            adx = pair.ad(p, UElement(alg, {(xi,): Fraction(1)}), order, inverse=True)
            for r in _ring_monos(self.lr.ring, 2):
                f = pair.from_base(Series(self.lr.ring, {r: Fraction(1)}))
                lhs = self.exp_rho(neg, self.rho[xi](self.exp_rho(p, f, order)), order)
                rhs = Series(pair.ring, {}, order)
                for m, c in adx.terms.items():
                    rhs = rhs + c * self.rho[m[0]](f)
                d = (lhs - rhs).truncated(order)
                if not d.is_zero():
                    return "generator %s on %s at order %d: %s" % (alg.labels[xi], f, order, d)
        return None

    # carrier
    def basis(self):
        return self._basis

    def base_basis(self):
        ring = self.lr.ring
        return [(ring.mono_text(r) or "1", Series(ring, {r: Fraction(1)})) for r in _ring_monos(ring, 2)]

    def pair_ok(self, a, b):
        return self._weight[a] + self._weight[b] <= self.N

    def triple_ok(self, a, b, c):
        return self._weight[a] + self._weight[b] + self._weight[c] <= self.N

    # maps
    def mul(self, a, b):
        from .hc import hc_product

        return hc_product(a, b)

    def unit(self):
        return self.pair.unit()

    def eta_L(self, f):
        from .hc import HCFunctional

        return HCFunctional(self.pair, {(): _lift(f, self.pair.wring)})

    def eta_R(self, f):
        from .hc import MultiFunctional

        pair = self.pair

        def fn(points, monos, order):
            F = pair.from_base(f, _ring_of(points[0], pair))
            return self.tau(points[0], monos[0], F, order)

        return MultiFunctional(pair, 1, fn, "eta_R(%s)" % f)

    def counit(self, a):
        from .hc import hc_counit

        return hc_counit(a)

    def comul(self, a):
        from .hc import hc_coproduct

        hit = self._comul.get(id(a))
        if hit is None or hit[0] is not a:
            hit = (a, hc_coproduct(a))
            self._comul[id(a)] = hit
        return hit[1]

    def comul_left(self, t):
        from .hc import delta_at

        return delta_at(t, 0)

    def comul_right(self, t):
        from .hc import delta_at

        return delta_at(t, 1)

    def counit_left(self, t):
        from .hc import counit_at

        return counit_at(t, 0)

    def counit_right(self, t):
        from .hc import counit_at

        return counit_at(t, 1)

    def left_tensor_one(self, a):
        from .hc import tensor

        return tensor(a, self.pair.unit())

    def one_tensor_right(self, b):
        from .hc import MultiFunctional

        def fn(points, monos, order):
            return self.tau(points[0], monos[0], b.eval_mono([points[1]], [monos[1]], order), order)

        return MultiFunctional(self.pair, 2, fn, "1(x)(%s)" % b.name())

    def tensor_unit(self):
        from .hc import tensor

        return tensor(self.pair.unit(), self.pair.unit())

    def tensor_mul(self, s, t):
        from .hc import tensor_mul

        return tensor_mul(s, t)

    def mu_antipode_right(self, t):
        from .hc import antipode_at, merge

        return merge(antipode_at(t, 1))

    def antipode(self, a):
        """S(phi)(p, u) = sum tau_{p,u'}[phi(p^{-1}, Ad_p S(u''))]."""
        from .hc import MultiFunctional

        pair = self.pair
        alg = pair.alg

        def fn(points, monos, order):
            p = points[0]
            inv = pair.H.inverse(p, order)
            acc = Series(_ring_of(p, pair), {}, order)
            for (m1, m2), c in ue.coproduct_terms(alg, monos[0]).items():
                arg = pair.ad(p, u_antipode(UElement(alg, {m2: Fraction(1)})), order)
                v = a.eval([inv], [arg], order)
                if not v.is_zero():
                    acc = acc + c * self.tau(p, m1, v, order)
            return acc

        return MultiFunctional(pair, 1, fn, "S(%s)" % a.name())

    def mu_antipode_left(self, t):
        """T(g^{-1} z, g^{-1}, g) for g = (p, a)."""
        from .hc import MultiFunctional

        pair = self.pair
        alg = pair.alg

        def fn(points, monos, order):
            p = points[0]
            ring = _ring_of(p, pair)
            inv = pair.H.inverse(p, order)
            acc = Series(ring, {}, order)
            for (m1, rest), c in ue.coproduct_terms(alg, monos[0]).items():
                for (m2, m3), d in ue.coproduct_terms(alg, rest).items():
                    arg = pair.ad(p, u_antipode(UElement(alg, {m2: Fraction(1)})), order)
                    v = t.eval([inv, p], [arg, UElement(alg, {m3: Fraction(1)})], order)
                    if not v.is_zero():
                        acc = acc + (c * d) * self.tau(p, m1, v, order)
            return acc

        return MultiFunctional(pair, 1, fn, "mu(S(x)id)(%s)" % t.name())

    def residual(self, x, y):
        from .hc import functional_residual

        return functional_residual(x, y, self.N)

    def base_residual(self, x, y):
        if not isinstance(x, Series) or x.ring != self.lr.ring:
            x = _project(x, self.lr.ring) if isinstance(x, Series) else self.lr.ring.const(x)
        d = x - y
        return None if d.is_zero() else d


def hc_to_table(S: ActionHCStructure, F, H: ActionHopfAlgebroid) -> RTable:
    """Values of an h = 0 functional at the identity, as an RTable of H."""
    pair = S.pair
    if pair.h_labels:
        raise InputError("only defined for h = 0")
    order = S.N
    pts = [pair.identity() for _ in range(F.slots)]
    data = {}
    for t in H.tuples(F.slots):
        args = [UElement(pair.alg, normal_terms(pair.alg, _relabel(H.g, pair.alg, m))) for m in t]
        data[t] = _project(F.eval(pts, args, order), S.lr.ring)
    return RTable(H, F.slots, data)


def table_to_hc(S: ActionHCStructure, T: RTable):
    from .hc import HCFunctional

    pair = S.pair
    g = T.owner.g
    tab = {}
    for k in pair.sym_monomials(T.owner.N):
        u = {}
        for m, c in ue._psi_mono(pair.alg, k).items():
            for n, d in normal_terms(g, _relabel(pair.alg, g, m)).items():
                _add_into(u, n, c * d)
        v = T.value([u])
        if not v.is_zero():
            tab[k] = _lift(v, pair.wring)
    return HCFunctional(pair, tab)


def _relabel(src: LieAlgebra, dst: LieAlgebra, mono: Mono) -> Mono:
    return tuple(dst.index(src.labels[i]) for i in mono)


def zero_subalgebra_report(pair: LieRinehartPair, N: int) -> Dict[str, Optional[str]]:
    """With h = 0 the Harish-Chandra construction must reproduce the table
    algebroid map by map.  First disagreement per map, or None."""
    S = ActionHCStructure(pair, [], N)
    H = ActionHopfAlgebroid(pair, N)
    els = [(n, T, table_to_hc(S, T)) for n, T in H.basis()]
    fs = H.base_basis()
    out = {}

    def first(items):
        for name, a, b in items:
            d = H.residual(a, b)
            if d is not None:
                return "%s: %s" % (name, d)
        return None

    out["mul"] = first(("%s*%s" % (n1, n2), hc_to_table(S, S.mul(F1, F2), H), H.mul(T1, T2))
                       for n1, T1, F1 in els for n2, T2, F2 in els if H.pair_ok(n1, n2))
    out["eta_L"] = first((n, hc_to_table(S, S.eta_L(f), H), H.eta_L(f)) for n, f in fs)
    out["eta_R"] = first((n, hc_to_table(S, S.eta_R(f), H), H.eta_R(f)) for n, f in fs)
    out["comul"] = first((n, hc_to_table(S, S.comul(F), H), H.comul(T)) for n, T, F in els)
    out["antipode"] = first((n, hc_to_table(S, S.antipode(F), H), H.antipode(T)) for n, T, F in els)
    bad = [n for n, T, F in els if H.base_residual(_project(S.counit(F), S.lr.ring) if isinstance(S.counit(F), Series)
                                                   else S.lr.ring.const(S.counit(F)), H.counit(T)) is not None]
    out["counit"] = "; ".join(bad) or None
    return out


def _ring_of(point, pair):
    for v in point.values():
        return v.ring
    return pair.ring


def action_hc_structure(pair: LieRinehartPair, h_labels: Sequence[str], N: int, base_degree: int = 1):
    return ActionHCStructure(pair, h_labels, N, base_degree)


# -- example pairs ---------------------------------------------------------------------


def weyl_pair() -> LieRinehartPair:
    """g = span(x) acting on the affine line by d/dz."""
    from .lie import abelian

    g = abelian([("x", 0, 0)], name="line")
    ring = PolyRing([Var("z")])
    return LieRinehartPair(g, ring, {"x": "d/dz"})


def heisenberg_plane_pair() -> LieRinehartPair:
    """Heisenberg [x,y] = z acting on the (q, s) plane: x = d/dq, y = q d/ds, z = d/ds."""
    from .lie import heisenberg_graded

    ring = PolyRing([Var("q"), Var("s")])
    return LieRinehartPair(heisenberg_graded(), ring, {"x": "d/dq", "y": "q*d/ds", "z": "d/ds"})
