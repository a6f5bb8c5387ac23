"""Baker-Campbell-Hausdorff series in Dynkin's form, an associative oracle,
and the formal group law on dual coordinates."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .core import InputError, solve_linear
from .lie import LieAlgebra, LieVector, _add_into
from .poly import PolyRing, Series, Var
from .printing import format_linear

Word = Tuple[int, ...]

__all__ = [
    "dynkin_coefficients",
    "dynkin_bch",
    "FreeAssoc",
    "FreeLieSeries",
    "bch_oracle",
    "lie_basis_decomposition",
    "FormalGroupLaw",
    "formal_group_coproduct",
    "coordinate_vector",
    "exp_dual_expansion",
    "pairing_via_group_law",
]


# -- Dynkin's sum ---------------------------------------------------------------


def _compositions(N: int):
    """Sequences of (r_i, s_i) with r_i + s_i >= 1 and total <= N."""
    pairs = [(r, s) for r in range(N + 1) for s in range(N + 1) if 1 <= r + s <= N]

    def rec(left):
        yield ()
        for r, s in pairs:
            if r + s <= left:
                for rest in rec(left - r - s):
                    yield ((r, s),) + rest

    for seq in rec(N):
        if seq:
            yield seq


@lru_cache(maxsize=None)
def dynkin_coefficients(N: int) -> Dict[Word, Fraction]:
    """Letter word (0 = u, 1 = v) -> coefficient of its right-nested bracket.

    Literal transcription of the Dynkin sum, aggregated per letter word and
    truncated at total length N.  Words whose bracket vanishes (like ``uu``)
    are kept; they evaluate to zero.
    """
    if N < 1:
        raise InputError("BCH order must be >= 1")
    out: Dict[Word, Fraction] = {}
    for seq in _compositions(N):
        n = len(seq)
        total = sum(r + s for r, s in seq)
        denom = total
        word: List[int] = []
        for r, s in seq:
            denom *= factorial(r) * factorial(s)
            word += [0] * r + [1] * s
        c = Fraction((-1) ** (n - 1), n * denom)
        key = tuple(word)
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def _right_nested(word: Word, leaves, bracket, cache):
    if word in cache:
        return cache[word]
    if len(word) == 1:
        val = leaves[word[0]]
    else:
        val = bracket(leaves[word[0]], _right_nested(word[1:], leaves, bracket, cache))
    cache[word] = val
    return val


class FreeAssoc:
    """Free associative algebra over Q on letters 0, 1, ... (words as tuples)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction]):
        self.terms = {w: Fraction(c) for w, c in terms.items() if c}

    @classmethod
    def letter(cls, i):
        return cls({(i,): 1})

    @classmethod
    def one(cls):
        return cls({(): 1})

    def __add__(self, o):
        out = dict(self.terms)
        for w, c in o.terms.items():
            _add_into(out, w, c)
        return FreeAssoc(out)

    def __neg__(self):
        return FreeAssoc({w: -c for w, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __rmul__(self, c):
        return FreeAssoc({w: c * v for w, v in self.terms.items()})

    def mul(self, o, N=None):
        out: Dict[Word, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in o.terms.items():
                if N is not None and len(a) + len(b) > N:
                    continue
                _add_into(out, a + b, ca * cb)
        return FreeAssoc(out)

    __mul__ = mul

    def commutator(self, o):
        return self.mul(o) - o.mul(self)

    def truncate(self, N):
        return FreeAssoc({w: c for w, c in self.terms.items() if len(w) <= N})

    def coefficient(self, word) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    def __eq__(self, o):
        return isinstance(o, FreeAssoc) and self.terms == o.terms

    def __str__(self, names="UV"):
        items = sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))
        return format_linear([("*".join(names[i] for i in w), c) for w, c in items])


class FreeLieSeries:
    """Linear combination of right-nested bracket words in u (0) and v (1)."""

    def __init__(self, terms: Mapping[Word, Fraction], N: int):
        self.terms = {w: c for w, c in terms.items() if c}
        self.N = N

    def expand(self) -> FreeAssoc:
        leaves = {0: FreeAssoc.letter(0), 1: FreeAssoc.letter(1)}
        cache: dict = {}
        out = FreeAssoc({})
        for w, c in sorted(self.terms.items()):
            out = out + c * _right_nested(w, leaves, FreeAssoc.commutator, cache)
        return out

    def in_basis(self) -> Dict[Word, Fraction]:
        return lie_basis_decomposition(self.expand(), self.N)

    def __str__(self):
        return format_bracket_series(self.in_basis())


def bracket_text(word: Word, names="uv") -> str:
    if len(word) == 1:
        return names[word[0]]
    return "[%s,%s]" % (names[word[0]], bracket_text(word[1:], names))


def format_bracket_series(table: Mapping[Word, Fraction], names="uv") -> str:
    items = sorted(table.items(), key=lambda t: (len(t[0]), t[0]))
    return format_linear([(bracket_text(w, names), c) for w, c in items])


def lie_basis_decomposition(x: FreeAssoc, N: int, nletters: int = 2) -> Dict[Word, Fraction]:
    """Coordinates of a Lie element in a right-nested bracket basis.

    At each length the basis is chosen greedily among right-nested words in
    lexicographic order (first independent expansions win).  Raises if ``x``
    is not a Lie element.
    """
    leaves = {i: FreeAssoc.letter(i) for i in range(nletters)}
    cache: dict = {}
    out: Dict[Word, Fraction] = {}
    for k in range(1, N + 1):
        part = {w: c for w, c in x.terms.items() if len(w) == k}
        if not part:
            continue
        words = [tuple(w) for w in iproduct(range(nletters), repeat=k)]
        chosen, cols = [], []
        for w in words:
            col = [_right_nested(w, leaves, FreeAssoc.commutator, cache).coefficient(t) for t in words]
            trial = cols + [col]
            if _independent(trial):
                chosen.append(w)
                cols = trial
        target = [part.get(t, Fraction(0)) for t in words]
        sol = solve_linear(cols, target)
        if sol is None:
            raise InputError("element is not in the free Lie algebra at length %d" % k)
        for w, c in zip(chosen, sol):
            if c:
                out[w] = c
    if any(len(w) == 0 for w in x.terms):
        raise InputError("constant term in a Lie element")
    return out


def _independent(cols) -> bool:
    from .core import rank

    return rank(cols) == len(cols)


def dynkin_bch(u=None, v=None, N: int = 2, bracket=None):
    """BCH series Z(u, v) truncated at total order N.

    With ``u``, ``v`` LieVectors (coefficients rational or series) the nested
    brackets are evaluated in their algebra; with no arguments the free
    result is returned as a :class:`FreeLieSeries`.
    """
    coeffs = dynkin_coefficients(N)
    if u is None and v is None:
        return FreeLieSeries(coeffs, N)
    if bracket is None:
        alg = u.alg
        bracket = alg.bracket
    leaves = {0: u, 1: v}
    cache: dict = {}
    out = None
    for w, c in sorted(coeffs.items()):
        term = _right_nested(w, leaves, bracket, cache)
        term = c * term
        out = term if out is None else out + term
    return out


def bch_oracle(N: int) -> FreeAssoc:
    """log(exp(U) exp(V)) in the free associative algebra, words of length <= N."""
    if N < 1:
        raise InputError("order must be >= 1")
    if N > 6:
        raise InputError("oracle is limited to order <= 6")

    def exp_letter(i):
        out = FreeAssoc.one()
        p = FreeAssoc.one()
        for k in range(1, N + 1):
            p = p.mul(FreeAssoc.letter(i), N)
            out = out + Fraction(1, factorial(k)) * p
        return out

    X = exp_letter(0).mul(exp_letter(1), N) - FreeAssoc.one()
    out = FreeAssoc({})
    p = FreeAssoc.one()
    for n in range(1, N + 1):
        p = p.mul(X, N)
        out = out + Fraction((-1) ** (n - 1), n) * p
    return out


# -- formal group law -------------------------------------------------------------


def coordinate_vars(alg: LieAlgebra, prefix: str) -> List[Var]:
    """Dual coordinates: degree -deg(x), parity p(x)."""
    return [Var("%s_%s" % (prefix, x.label), -x.degree, x.parity) for x in alg.basis]


def coordinate_vector(alg: LieAlgebra, ring: PolyRing, prefix: str, order=None) -> LieVector:
    """The generic element ``sum_a c^a x_a`` with coordinates named prefix_label."""
    return LieVector(alg, {i: ring.var("%s_%s" % (prefix, l), order=order) for i, l in enumerate(alg.labels)})


def vector_components(alg: LieAlgebra, vec: LieVector, ring: PolyRing, order=None) -> Dict[str, Series]:
    zero = ring.zero(order=order)
    out = {}
    for i, l in enumerate(alg.labels):
        c = vec.terms.get(i)
        out[l] = zero if c is None else (c if isinstance(c, Series) else ring.const(c, order=order))
    return out


class FormalGroupLaw:
    """Group law Z(u, v) of the formal group of ``alg`` in exponential coordinates."""

    def __init__(self, alg: LieAlgebra, N: int, prefixes=("u", "v")):
        if N < 1:
            raise InputError("order must be >= 1")
        self.alg = alg
        self.N = N
        self.prefixes = prefixes
        self.ring = PolyRing(coordinate_vars(alg, prefixes[0]) + coordinate_vars(alg, prefixes[1]))
        u = coordinate_vector(alg, self.ring, prefixes[0], N)
        v = coordinate_vector(alg, self.ring, prefixes[1], N)
        Z = dynkin_bch(u, v, N)
        self.components: Dict[str, Series] = vector_components(alg, Z, self.ring, N)

    def __getitem__(self, label) -> Series:
        return self.components[label]

    def compose(self, p: Mapping[str, Series], q: Mapping[str, Series], order: Optional[int] = None) -> Dict[str, Series]:
        """Product of two points given by coordinate series over a common ring."""
        a, b = self.prefixes
        ring = next(iter(list(p.values()) + list(q.values()))).ring
        vals = {}
        for l in self.alg.labels:
            vals["%s_%s" % (a, l)] = p[l]
            vals["%s_%s" % (b, l)] = q[l]
        return {l: self.components[l].substitute(vals, ring=ring, order=order) for l in self.alg.labels}

    def inverse(self, p: Mapping[str, Series], order: int) -> Dict[str, Series]:
        """Series inversion: solve Z(p, i) = 0 for i by fixed-point iteration."""
        ring = next(iter(p.values())).ring
        inv = {l: -p[l].truncated(order) for l in self.alg.labels}
        for _ in range(order + 1):
            z = self.compose(p, inv, order)
            # Z(p, i) = p + i + higher; correct i by the higher part
            new = {l: (inv[l] - z[l]).truncated(order) for l in self.alg.labels}
            if new == inv:
                break
            inv = new
        return inv

    def __str__(self):
        return "\n".join("Delta(%s_%s) = %s" % (self.prefixes[0], l, self.components[l]) for l in self.alg.labels)


def formal_group_coproduct(alg: LieAlgebra, N: int) -> FormalGroupLaw:
    """Delta(u^a) = Z^a(u (x) 1, 1 (x) v) as two-sided truncated series."""
    return FormalGroupLaw(alg, N)


def associativity_residual(alg: LieAlgebra, N: int) -> Dict[str, Series]:
    """Z(Z(u,v),w) - Z(u,Z(v,w)) per coordinate (exact, truncated at N)."""
    law = FormalGroupLaw(alg, N)
    ring = PolyRing(coordinate_vars(alg, "u") + coordinate_vars(alg, "v") + coordinate_vars(alg, "w"))
    pt = {p: {l: ring.var("%s_%s" % (p, l), order=N) for l in alg.labels} for p in "uvw"}
    left = law.compose(law.compose(pt["u"], pt["v"], N), pt["w"], N)
    right = law.compose(pt["u"], law.compose(pt["v"], pt["w"], N), N)
    return {l: left[l] - right[l] for l in alg.labels if not (left[l] - right[l]).is_zero()}


# -- dual admissible basis ------------------------------------------------------


def exp_dual_expansion(alg: LieAlgebra, N: int) -> Dict[Tuple[int, ...], Series]:
    """Components of exp(sum u^a x_a) along {psi(x_B)}: B -> series in u.

    Computed in U(g) with series coefficients, then pulled back through
    psi^{-1}; the PBW expectation is ``u^B / B!`` up to the Koszul sign of
    ordering the odd coordinates.
    """
    from .ue import UElement, psi_inverse

    ring = PolyRing(coordinate_vars(alg, "u"))
    one = ring.const(1, order=N)
    U = UElement(alg, {(i,): ring.var("u_%s" % l, order=N) for i, l in enumerate(alg.labels)})
    term = UElement(alg, {(): one})
    total = term
    for k in range(1, N + 1):
        term = term * U
        total = total + UElement(alg, {m: c * Fraction(1, factorial(k)) for m, c in term.terms.items()})
    sym = psi_inverse(total)
    return {m: c for m, c in sym.terms.items()}


def pairing_via_group_law(alg: LieAlgebra, phi: Series, word: Sequence[int], prefix="u") -> Fraction:
    """<phi, x_{i1} ... x_{im}> from the group law alone.

    ``phi`` is a series in the coordinates ``prefix_label``; the value is the
    coefficient of l_1 ... l_m in phi(exp(l_1 x_{i1}) ... exp(l_m x_{im})).
    Only even generators are supported on this path.
    """
    m = len(word)
    for i in word:
        if alg.parities[i]:
            raise InputError("group-law pairing only handles even generators")
    lam = PolyRing([Var("l%d" % k, -alg.degrees[i], 0) for k, i in enumerate(word)])
    zero_ring_point = None
    point = None
    for k, i in enumerate(word):
        step = LieVector(alg, {i: lam.var("l%d" % k, order=m)})
        point = step if point is None else dynkin_bch(point, step, max(m, 1))
    vals = {}
    if point is None:
        coords = {l: lam.zero(order=m) for l in alg.labels}
    else:
        coords = vector_components(alg, point, lam, m)
    for l in alg.labels:
        vals["%s_%s" % (prefix, l)] = coords[l]
    # other variables of phi (if any) are set to zero
    for v in phi.ring.vars:
        if v.name not in vals:
            vals[v.name] = 0
    val = phi.substitute(vals, ring=lam, order=m)
    return val.coefficient({"l%d" % k: 1 for k in range(m)})
