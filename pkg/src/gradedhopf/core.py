"""Exact rationals, graded generators, basis orders and Koszul signs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Fraction",
    "GradedBasisElement",
    "BasisOrder",
    "InputError",
    "as_fraction",
    "format_rational",
    "parse_rational",
    "koszul_sign",
    "permutation_sign",
    "shuffles",
    "compare",
    "rank",
    "solve_linear",
]


class InputError(ValueError):
    """Malformed input: bad input files, unknown labels, inconsistent sizes."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise InputError("floating point coefficients are not accepted: %r" % (x,))
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def format_rational(q: Fraction) -> str:
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("not a rational: %r" % (s,)) from exc


@dataclass(frozen=True)
class GradedBasisElement:
    """A named generator with an integer degree and an independent parity."""

    label: str
    degree: int
    parity: int

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise InputError("parity must be 0 or 1, got %r" % (self.parity,))
        if not isinstance(self.degree, int):
            raise InputError("degree must be an integer, got %r" % (self.degree,))
        if not self.label:
            raise InputError("empty label")

    def default_key(self):
        # degree-0 block first, then ascending degree, then label
        return (self.degree != 0, self.degree, self.label)


class BasisOrder:
    """Total order on a finite set of generators, given as an explicit sequence."""

    def __init__(self, elements: Sequence[GradedBasisElement]):
        self.elements = tuple(elements)
        self._pos = {}
        for i, x in enumerate(self.elements):
            if x.label in self._pos:
                raise InputError("duplicate label %r" % (x.label,))
            self._pos[x.label] = i

    @classmethod
    def default(cls, elements: Iterable[GradedBasisElement]) -> "BasisOrder":
        return cls(sorted(elements, key=GradedBasisElement.default_key))

    def position(self, x) -> int:
        label = x.label if isinstance(x, GradedBasisElement) else x
        try:
            return self._pos[label]
        except KeyError:
            raise InputError("unknown generator %r" % (label,)) from None

    def degree_zero_first(self) -> bool:
        seen_nonzero = False
        for x in self.elements:
            if x.degree != 0:
                seen_nonzero = True
            elif seen_nonzero:
                return False
        return True

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return isinstance(other, BasisOrder) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return "BasisOrder(%s)" % " < ".join(x.label for x in self.elements)


def compare(a: GradedBasisElement, b: GradedBasisElement, order: BasisOrder) -> int:
    """Return -1, 0 or 1."""
    i, j = order.position(a), order.position(b)
    return (i > j) - (i < j)


def permutation_sign(perm: Sequence[int], parities: Sequence[int]) -> int:
    """Koszul sign of rearranging slots ``0..m-1`` into the order ``perm``.

    ``perm[k]`` is the original slot that ends up at position ``k``; the sign
    counts inversions between odd slots.
    """
    if len(perm) != len(parities):
        raise InputError("permutation and parity lists differ in length")
    if sorted(perm) != list(range(len(perm))):
        raise InputError("not a permutation: %r" % (list(perm),))
    sign = 1
    n = len(perm)
    for a in range(n):
        if not parities[perm[a]]:
            continue
        for b in range(a + 1, n):
            if parities[perm[b]] and perm[a] > perm[b]:
                sign = -sign
    return sign


def koszul_sign(permutation: Sequence[int], parities: Sequence[int]) -> Fraction:
    """Super sign of a permutation of ``{1..m}`` acting on homogeneous slots.

    Sorting by adjacent transpositions, every swap of two odd slots gives -1.
    """
    if len(permutation) != len(parities):
        raise InputError("permutation and parity lists differ in length")
    perm = [p - 1 for p in permutation]
    return Fraction(permutation_sign(perm, parities))


def shuffles(m: int, p: int):
    """Yield the (p, m-p) shuffles as pairs of increasing index tuples."""
    from itertools import combinations

    everything = range(m)
    for left in combinations(everything, p):
        chosen = set(left)
        yield left, tuple(i for i in everything if i not in chosen)


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a matrix over Q by fraction-exact Gaussian elimination."""
    mat = [[as_fraction(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        for i in range(r + 1, len(mat)):
            f = mat[i][c]
            if f:
                f = f / pv
                row_r = mat[r]
                mat[i] = [a - f * b for a, b in zip(mat[i], row_r)]
        r += 1
        if r == len(mat):
            break
    return r


def solve_linear(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]):
    """Exact solution ``c`` of ``sum_j c_j columns[j] = target``; None if inconsistent.

    Columns are assumed linearly independent.
    """
    n = len(columns)
    m = len(target)
    aug = [[as_fraction(columns[j][i]) for j in range(n)] + [as_fraction(target[i])] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(row[n] != 0 for row in aug[r:]):
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][n]
    return sol
