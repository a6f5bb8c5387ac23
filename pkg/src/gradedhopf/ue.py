"""Universal enveloping algebra U(g): PBW normal forms and the Hopf structure.

Monomials are tuples of basis indices (positions in the algebra's order).
A monomial is admissible when it is non-decreasing and no odd index is
repeated; admissible monomials form the PBW basis.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product as iproduct
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .core import GradedBasisElement, InputError, as_fraction, permutation_sign, rank, shuffles, BasisOrder
from .lie import LieAlgebra, LieVector, twist, _add_into, _is_zero
from .printing import format_linear, format_word

Mono = Tuple[int, ...]

__all__ = [
    "UElement",
    "SymElement",
    "Tensor",
    "pbw_normalize",
    "u_mul",
    "u_coproduct",
    "u_counit",
    "u_antipode",
    "psi",
    "psi_inverse",
    "sym_coproduct",
    "hc_factorize",
    "hc_reassemble",
    "admissible_count",
    "admissible_monomials",
    "pbw_rank_oracle",
    "is_admissible",
    "word_count",
]


def is_admissible(alg: LieAlgebra, m: Sequence[int]) -> bool:
    par = alg.parities
    for a, b in zip(m, m[1:]):
        if a > b or (a == b and par[a]):
            return False
    return True


def mono_parity(alg: LieAlgebra, m: Sequence[int]) -> int:
    par = alg.parities
    return sum(par[i] for i in m) % 2


def mono_degree(alg: LieAlgebra, m: Sequence[int]) -> int:
    d = alg.degrees
    return sum(d[i] for i in m)


def mono_text(alg: LieAlgebra, m: Sequence[int]) -> str:
    return format_word([alg.labels[i] for i in m])


# -- normalization ------------------------------------------------------------


def _cache(alg: LieAlgebra) -> dict:
    c = getattr(alg, "_pbw_cache", None)
    if c is None:
        c = {}
        alg._pbw_cache = c
    return c


def _bad_positions(alg, w):
    par = alg.parities
    return [k for k in range(len(w) - 1) if w[k] > w[k + 1] or (w[k] == w[k + 1] and par[w[k]])]


def _rewrite_at(alg, w, k):
    """One rewriting step at position k: list of (coeff, word)."""
    x, y = w[k], w[k + 1]
    head, tail = w[:k], w[k + 2:]
    out = []
    br = alg.bracket_basis(x, y)
    if x == y:
        # odd square: x*x = 1/2 [x,x]
        for z, c in br.items():
            out.append((c / 2, head + (z,) + tail))
        return out
    s = -1 if alg.parities[x] and alg.parities[y] else 1
    out.append((Fraction(s), head + (y, x) + tail))
    for z, c in br.items():
        out.append((c, head + (z,) + tail))
    return out


def _normalize_leftmost(alg: LieAlgebra, w: Mono) -> Dict[Mono, Fraction]:
    cache = _cache(alg)
    hit = cache.get(w)
    if hit is not None:
        return hit
    # iterative on an explicit stack would be faster; recursion depth is
    # bounded by word length times inversions, fine for the sizes used here
    bad = _bad_positions(alg, w)
    if not bad:
        res = {w: Fraction(1)}
    else:
        res = {}
        for c, w2 in _rewrite_at(alg, w, bad[0]):
            for m, c2 in _normalize_leftmost(alg, w2).items():
                _add_into(res, m, c * c2)
    cache[w] = res
    return res


def _normalize_strategy(alg, w, choose) -> Dict[Mono, Fraction]:
    bad = _bad_positions(alg, w)
    if not bad:
        return {w: Fraction(1)}
    res = {}
    for c, w2 in _rewrite_at(alg, w, choose(bad)):
        for m, c2 in _normalize_strategy(alg, w2, choose).items():
            _add_into(res, m, c * c2)
    return res


def pbw_normalize(alg: LieAlgebra, word: Sequence, strategy="leftmost") -> "UElement":
    """Normal form of a tensor word (labels or indices).

    ``strategy`` is ``"leftmost"`` (default, memoized), ``"rightmost"``, or a
    ``random.Random`` instance picking a random out-of-order pair each step.
    """
    w = tuple(i if isinstance(i, int) else alg.index(i) for i in word)
    for i in w:
        if not 0 <= i < alg.dim:
            raise InputError("index %r out of range" % (i,))
    if strategy == "leftmost":
        return UElement(alg, _normalize_leftmost(alg, w))
    if strategy == "rightmost":
        return UElement(alg, _normalize_strategy(alg, w, lambda b: b[-1]))
    if isinstance(strategy, random.Random):
        return UElement(alg, _normalize_strategy(alg, w, strategy.choice))
    raise InputError("unknown strategy %r" % (strategy,))


def normal_terms(alg: LieAlgebra, w: Mono) -> Dict[Mono, Fraction]:
    return _normalize_leftmost(alg, w)


# -- elements -----------------------------------------------------------------


class UElement:
    """Element of U(g) in PBW normal form.

    Coefficients are rationals, or series over a graded ring for generic
    computations (they sit to the left of the monomial).
    """

    __slots__ = ("alg", "terms")

    def __init__(self, alg: LieAlgebra, terms: Mapping[Mono, object]):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if not _is_zero(c)}

    @classmethod
    def one(cls, alg):
        return cls(alg, {(): Fraction(1)})

    @classmethod
    def zero(cls, alg):
        return cls(alg, {})

    @classmethod
    def gen(cls, alg, label):
        return cls(alg, {(alg.index(label),): Fraction(1)})

    @classmethod
    def scalar(cls, alg, c):
        return cls(alg, {(): as_fraction(c)})

    @classmethod
    def from_lie(cls, v: LieVector):
        return cls(v.alg, {(k,): c for k, c in v.terms.items()})

    @classmethod
    def from_word(cls, alg, word):
        return pbw_normalize(alg, word)

    def _check(self, other):
        if other.alg is not self.alg and other.alg != self.alg:
            raise InputError("elements of different algebras")

    def __add__(self, other):
        if not isinstance(other, UElement):
            other = UElement.scalar(self.alg, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(out, m, c)
        return UElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return UElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, UElement):
            other = UElement.scalar(self.alg, other)
        return self + (-other)

    def __rsub__(self, other):
        return UElement.scalar(self.alg, other) - self

    def __mul__(self, other):
        if isinstance(other, UElement):
            return u_mul(self, other)
        c = as_fraction(other) if isinstance(other, (int, str)) else other
        return UElement(self.alg, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, c):
        c = as_fraction(c) if isinstance(c, (int, str)) else c
        return UElement(self.alg, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, k):
        out = UElement.one(self.alg)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        return isinstance(other, UElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def counit(self):
        return u_counit(self)

    def coefficient(self, mono) -> object:
        m = tuple(i if isinstance(i, int) else self.alg.index(i) for i in mono)
        return self.terms.get(m, 0)

    def max_length(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def sorted_items(self):
        # longer monomials first, then lexicographic in the basis order
        return sorted(self.terms.items(), key=lambda t: (-len(t[0]), t[0]))

    def __str__(self):
        return format_linear([(mono_text(self.alg, m), c) for m, c in self.sorted_items()])

    __repr__ = __str__


def u_mul(a: UElement, b: UElement) -> UElement:
    a._check(b)
    alg = a.alg
    out: Dict[Mono, object] = {}
    for ma, ca in a.terms.items():
        pa = mono_parity(alg, ma)
        for mb, cb in b.terms.items():
            c = ca * twist(cb, pa)
            for m, c2 in normal_terms(alg, ma + mb).items():
                _add_into(out, m, c * c2)
    return UElement(alg, out)


def u_counit(a: UElement):
    return a.terms.get((), Fraction(0))


def u_antipode(a: UElement) -> UElement:
    alg = a.alg
    out: Dict[Mono, object] = {}
    for m, c in a.terms.items():
        k = len(m)
        perm = list(range(k - 1, -1, -1))
        s = (-1) ** k * permutation_sign(perm, [alg.parities[i] for i in m])
        for mm, c2 in normal_terms(alg, tuple(reversed(m))).items():
            _add_into(out, mm, s * c * c2)
    return UElement(alg, out)


# -- tensors ------------------------------------------------------------------


class Tensor:
    """Finite sum of k-fold tensors of monomials, keyed by tuples of monomials."""

    __slots__ = ("alg", "k", "terms")

    def __init__(self, alg, k: int, terms: Mapping[Tuple[Mono, ...], object]):
        self.alg = alg
        self.k = k
        self.terms = {key: c for key, c in terms.items() if not _is_zero(c)}

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            _add_into(out, key, c)
        return Tensor(self.alg, self.k, out)

    def __neg__(self):
        return Tensor(self.alg, self.k, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return Tensor(self.alg, self.k, {key: c * v for key, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.k == other.k and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def items(self):
        for key, c in sorted(self.terms.items()):
            yield key + (c,)

    def __str__(self):
        parts = []
        for key, c in sorted(self.terms.items(), key=lambda t: ([-len(m) for m in t[0]], t[0])):
            txt = " (x) ".join(mono_text(self.alg, m) or "1" for m in key)
            parts.append(("(%s)" % txt, c))
        return format_linear(parts)

    __repr__ = __str__


def tensor_mul_u(a: Tensor, b: Tensor) -> Tensor:
    """Product in U(g)^{(x)k} with the Koszul rule for tensor factors."""
    alg = a.alg
    out: Dict[Tuple[Mono, ...], object] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            sign = 1
            # moving leg j of b past legs > j of a
            for j in range(a.k):
                pj = mono_parity(alg, kb[j])
                if pj:
                    for i in range(j + 1, a.k):
                        if mono_parity(alg, ka[i]):
                            sign = -sign
            legs = [normal_terms(alg, ka[j] + kb[j]) for j in range(a.k)]
            c0 = sign * ca * cb
            for combo in iproduct(*[list(l.items()) for l in legs]):
                c = c0
                for _, cc in combo:
                    c = c * cc
                _add_into(out, tuple(m for m, _ in combo), c)
    return Tensor(alg, a.k, out)


def _shuffle_coproduct_terms(alg, m: Mono):
    par = [alg.parities[i] for i in m]
    k = len(m)
    for p in range(k + 1):
        for left, right in shuffles(k, p):
            s = permutation_sign(list(left) + list(right), par)
            yield s, tuple(m[i] for i in left), tuple(m[i] for i in right)


def coproduct_terms(alg: LieAlgebra, m: Mono) -> Dict[Tuple[Mono, Mono], Fraction]:
    """Cached coproduct of one admissible monomial."""
    cache = _cache(alg)
    key = ("delta", m)
    v = cache.get(key)
    if v is None:
        v = {}
        for s, l, r in _shuffle_coproduct_terms(alg, m):
            _add_into(v, (l, r), Fraction(s))
        cache[key] = v
    return v


def u_coproduct(a: UElement) -> Tensor:
    """Coproduct by the shuffle formula on PBW monomials.

    Sub-words of admissible monomials are admissible, so both legs come out
    normalized without further rewriting.
    """
    out: Dict[Tuple[Mono, ...], object] = {}
    for m, c in a.terms.items():
        for k, s in coproduct_terms(a.alg, m).items():
            _add_into(out, k, s * c)
    return Tensor(a.alg, 2, out)


def u_coproduct_multiplicative(a: UElement) -> Tensor:
    """Independent route: Delta(x1...xm) = Delta(x1)...Delta(xm), then collect."""
    alg = a.alg
    total = Tensor(alg, 2, {})
    for m, c in a.terms.items():
        t = Tensor(alg, 2, {((), ()): Fraction(1)})
        for i in m:
            t = tensor_mul_u(t, Tensor(alg, 2, {((i,), ()): Fraction(1), ((), (i,)): Fraction(1)}))
        total = total + c * t
    return total


# -- symmetric algebra --------------------------------------------------------


class SymElement:
    """Element of Sym(g) (or Sym of a set of generators) on admissible monomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: LieAlgebra, terms: Mapping[Mono, object]):
        self.alg = alg
        out = {}
        for m, c in terms.items():
            if _is_zero(c):
                continue
            if not is_admissible(alg, m):
                raise InputError("not an admissible S-monomial: %r" % (m,))
            out[m] = c
        self.terms = out

    @classmethod
    def monomial(cls, alg, labels, c=1):
        idx = [i if isinstance(i, int) else alg.index(i) for i in labels]
        sign, m = sym_sort(alg, idx)
        return cls(alg, {m: sign * as_fraction(c)} if sign else {})

    @classmethod
    def from_series(cls, s):
        """Polynomial in graded variables read as an element of Sym(E)."""
        basis = [GradedBasisElement(v.name, v.degree, v.parity) for v in s.ring.vars]
        alg = LieAlgebra("E", basis, {}, order=BasisOrder(basis))
        terms = {}
        for m, c in s.terms.items():
            terms[tuple(i for i, e in m for _ in range(e))] = c
        return cls(alg, terms)

    def alg_degree(self, m: Mono) -> int:
        return mono_degree(self.alg, m)

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(out, m, c)
        return SymElement(self.alg, out)

    def __neg__(self):
        return SymElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return SymElement(self.alg, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SymElement):
            return other * self if False else SymElement(self.alg, {m: v * other for m, v in self.terms.items()})
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                s, m = sym_sort(self.alg, ma + mb)
                if s:
                    _add_into(out, m, s * ca * cb)
        return SymElement(self.alg, out)

    def __eq__(self, other):
        return isinstance(other, SymElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda t: (-len(t[0]), t[0]))
        return format_linear([(".".join(self.alg.labels[i] for i in m), c) for m, c in items])

    __repr__ = __str__


def sym_sort(alg: LieAlgebra, word: Sequence[int]):
    """Sort a word in Sym(g): (Koszul sign, sorted monomial), sign 0 if it dies."""
    order = sorted(range(len(word)), key=lambda k: (word[k], k))
    m = tuple(word[k] for k in order)
    if not is_admissible(alg, m):
        return 0, m
    return permutation_sign(order, [alg.parities[i] for i in word]), m


def sym_coproduct(s: SymElement) -> Tensor:
    out: Dict[Tuple[Mono, ...], object] = {}
    for m, c in s.terms.items():
        for sg, l, r in _shuffle_coproduct_terms(s.alg, m):
            _add_into(out, (l, r), sg * c)
    return Tensor(s.alg, 2, out)


def _psi_mono(alg: LieAlgebra, m: Mono) -> Dict[Mono, Fraction]:
    cache = _cache(alg)
    key = ("psi", m)
    hit = cache.get(key)
    if hit is not None:
        return hit
    k = len(m)
    par = [alg.parities[i] for i in m]
    out: Dict[Mono, Fraction] = {}
    scale = Fraction(1, factorial(k))
    for perm in permutations(range(k)):
        s = permutation_sign(perm, par)
        for mm, c in normal_terms(alg, tuple(m[i] for i in perm)).items():
            _add_into(out, mm, s * scale * c)
    cache[key] = out
    return out


def psi(s: SymElement) -> UElement:
    out: Dict[Mono, object] = {}
    for m, c in s.terms.items():
        for mm, c2 in _psi_mono(s.alg, m).items():
            _add_into(out, mm, c * c2)
    return UElement(s.alg, out)


def psi_inverse(a: UElement) -> SymElement:
    """Back-substitution along the unitriangular change of basis."""
    alg = a.alg
    rest = dict(a.terms)
    result: Dict[Mono, object] = {}
    while rest:
        top = max(len(m) for m in rest)
        lead = sorted(m for m in rest if len(m) == top)
        for m in lead:
            c = rest.get(m)
            if c is None:
                continue
            _add_into(result, m, c)
            for mm, c2 in _psi_mono(alg, m).items():
                _add_into(rest, mm, -(c * c2))
    return SymElement(alg, result)


# -- Harish-Chandra factorization -------------------------------------------


def hc_order(alg: LieAlgebra, h_labels: Sequence[str]) -> LieAlgebra:
    """Copy of ``alg`` whose order puts the h generators first."""
    alg.subalgebra(h_labels)  # raises if not closed
    h_sorted = sorted(h_labels, key=lambda l: alg.index(l))
    if list(alg.labels[: len(h_sorted)]) == h_sorted:
        return alg
    return alg.with_order(h_sorted)


def transport(a: UElement, target: LieAlgebra) -> UElement:
    """Rewrite an element in the PBW basis of a reordered copy of its algebra."""
    if target is a.alg:
        return a
    if sorted(target.labels) != sorted(a.alg.labels):
        raise InputError("algebras have different generators")
    out: Dict[Mono, object] = {}
    for m, c in a.terms.items():
        w = tuple(target.index(a.alg.labels[i]) for i in m)
        for mm, c2 in normal_terms(target, w).items():
            _add_into(out, mm, c * c2)
    return UElement(target, out)


def hc_factorize(a: UElement, h_labels: Sequence[str]):
    """Write ``a = sum_i a_i psi(s_i)`` with ``a_i`` in U(h), ``s_i`` in Sym(m).

    Returns ``(alg2, table)``: ``alg2`` is the algebra with h ordered first
    and ``table`` maps ``(h_monomial, m_monomial)`` (indices of ``alg2``) to
    coefficients.
    """
    alg2 = hc_order(a.alg, h_labels)
    nh = len(h_labels)
    rest = dict(transport(a, alg2).terms)
    table: Dict[Tuple[Mono, Mono], object] = {}

    def split(m):
        k = 0
        while k < len(m) and m[k] < nh:
            k += 1
        return m[:k], m[k:]

    while rest:
        top = max(len(split(m)[1]) for m in rest)
        lead = sorted(m for m in rest if len(split(m)[1]) == top)
        for m in lead:
            c = rest.get(m)
            if c is None:
                continue
            mh, mm = split(m)
            _add_into(table, (mh, mm), c)
            for w, c2 in _psi_mono(alg2, mm).items():
                for w2, c3 in normal_terms(alg2, mh + w).items():
                    _add_into(rest, w2, -(c * c2 * c3))
    return alg2, table


def hc_reassemble(alg2: LieAlgebra, table) -> UElement:
    out: Dict[Mono, object] = {}
    for (mh, mm), c in table.items():
        for w, c2 in _psi_mono(alg2, mm).items():
            for w2, c3 in normal_terms(alg2, mh + w).items():
                _add_into(out, w2, c * c2 * c3)
    return UElement(alg2, out)


# -- PBW counting -------------------------------------------------------------


def admissible_monomials(alg: LieAlgebra, max_len: int, indices: Optional[Sequence[int]] = None) -> List[Mono]:
    """All admissible monomials of length <= max_len, sorted by (length, lex)."""
    idx = sorted(range(alg.dim) if indices is None else indices)
    par = alg.parities
    out: List[Mono] = [()]
    frontier: List[Mono] = [()]
    for _ in range(max_len):
        nxt = []
        for m in frontier:
            for i in idx:
                if m and (i < m[-1] or (i == m[-1] and par[i])):
                    continue
                nxt.append(m + (i,))
        out.extend(nxt)
        frontier = nxt
    return out


def admissible_count(alg: LieAlgebra, max_len: int) -> int:
    return len(admissible_monomials(alg, max_len))


def pbw_rank_oracle(alg: LieAlgebra, max_len: int) -> int:
    """Rank over Q of the normal forms of all words of length <= max_len."""
    words = [w for k in range(max_len + 1) for w in iproduct(range(alg.dim), repeat=k)]
    rows = [normal_terms(alg, tuple(w)) for w in words]
    cols = sorted({m for r in rows for m in r})
    pos = {m: i for i, m in enumerate(cols)}
    mat = []
    for r in rows:
        row = [Fraction(0)] * len(cols)
        for m, c in r.items():
            row[pos[m]] = c
        mat.append(row)
    return rank(mat)


def word_count(alg: LieAlgebra, max_len: int) -> int:
    return sum(alg.dim ** k for k in range(max_len + 1))
