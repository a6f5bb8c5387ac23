"""Z-graded Lie superalgebras given by structure constants."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .core import BasisOrder, GradedBasisElement, InputError, as_fraction, format_rational

__all__ = [
    "LieAlgebra",
    "LieVector",
    "JacobiReport",
    "check_jacobi",
    "builtin",
    "sl2_graded",
    "heisenberg_graded",
    "heisenberg_odd",
    "abelian",
    "shift_tangent",
    "pi_tangent",
    "gl",
    "euler_derivation",
    "derivation_residuals",
    "twist",
]


def twist(c, parity: int):
    """Coefficient ``c`` moved past an element of the given parity."""
    if not parity or isinstance(c, (int, Fraction)):
        return c
    return c.grade_involution()


def _is_zero(c) -> bool:
    return c == 0 if isinstance(c, (int, Fraction)) else c.is_zero()


def _add_into(acc: dict, key, c):
    v = acc.get(key)
    v = c if v is None else v + c
    if _is_zero(v):
        acc.pop(key, None)
    else:
        acc[key] = v


class LieAlgebra:
    """Finite-dimensional Z-graded Lie superalgebra over Q.

    Structure constants are stored for ordered pairs ``i <= j`` only; the
    other half is derived from super antisymmetry.
    """

    def __init__(self, name: str, basis: Sequence[GradedBasisElement], brackets=None, order=None):
        self.name = name
        if order is None:
            order = BasisOrder.default(basis)
        elif not isinstance(order, BasisOrder):
            order = BasisOrder(order)
        if sorted(x.label for x in order) != sorted(x.label for x in basis):
            raise InputError("order does not match basis")
        self.order = order
        self.basis: Tuple[GradedBasisElement, ...] = order.elements
        self.labels = tuple(x.label for x in self.basis)
        self.degrees = tuple(x.degree for x in self.basis)
        self.parities = tuple(x.parity for x in self.basis)
        n = len(self.basis)
        self._table: List[List[Dict[int, Fraction]]] = [[{} for _ in range(n)] for _ in range(n)]
        for (a, b), terms in (brackets or {}).items():
            self._set(a, b, terms)

    # -- construction helpers ------------------------------------------------
    def index(self, label: str) -> int:
        return self.order.position(label)

    def _set(self, a, b, terms):
        i = a if isinstance(a, int) else self.index(a)
        j = b if isinstance(b, int) else self.index(b)
        vec = {}
        for k, c in terms.items():
            kk = k if isinstance(k, int) else self.index(k)
            c = as_fraction(c)
            if c:
                vec[kk] = vec.get(kk, 0) + c
        vec = {k: c for k, c in vec.items() if c}
        for k in vec:
            if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                raise InputError(
                    "bracket [%s,%s] has a term %s of the wrong degree"
                    % (self.labels[i], self.labels[j], self.labels[k])
                )
            if self.parities[k] != (self.parities[i] + self.parities[j]) % 2:
                raise InputError(
                    "bracket [%s,%s] has a term %s of the wrong parity"
                    % (self.labels[i], self.labels[j], self.labels[k])
                )
        if i > j:
            i, j = j, i
            s = -1 if not (self.parities[i] and self.parities[j]) else 1
            vec = {k: s * c for k, c in vec.items()}
        if i == j and not self.parities[i] and vec:
            raise InputError("[%s,%s] must vanish for an even generator" % ((self.labels[i],) * 2))
        old = self._table[i][j]
        if old and old != vec:
            raise InputError("conflicting brackets for (%s,%s)" % (self.labels[i], self.labels[j]))
        self._table[i][j] = vec
        if i != j:
            s = -1 if not (self.parities[i] and self.parities[j]) else 1
            self._table[j][i] = {k: s * c for k, c in vec.items()}

    def structure_constants(self) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
        """Stored half: ordered pairs ``i <= j`` with nonzero bracket."""
        out = {}
        n = self.dim
        for i in range(n):
            for j in range(i, n):
                if self._table[i][j]:
                    out[(i, j)] = dict(self._table[i][j])
        return out

    def with_order(self, labels_first: Iterable[str], name=None) -> "LieAlgebra":
        """Same algebra, generators ``labels_first`` moved to the front."""
        first = [self.basis[self.index(l)] for l in labels_first]
        chosen = {x.label for x in first}
        rest = [x for x in self.basis if x.label not in chosen]
        brackets = {
            (self.labels[i], self.labels[j]): {self.labels[k]: c for k, c in v.items()}
            for (i, j), v in self.structure_constants().items()
        }
        return LieAlgebra(name or self.name, self.basis, brackets, order=BasisOrder(first + rest))

    def subalgebra(self, labels: Iterable[str], name=None) -> "LieAlgebra":
        """Span of the given generators; raises if not closed under bracket."""
        labels = list(labels)
        idx = [self.index(l) for l in labels]
        chosen = set(idx)
        brackets = {}
        for a in idx:
            for b in idx:
                v = self._table[a][b]
                if any(k not in chosen for k in v):
                    raise InputError("%s is not closed under the bracket" % (labels,))
                if a <= b and v:
                    brackets[(self.labels[a], self.labels[b])] = {self.labels[k]: c for k, c in v.items()}
        elems = [self.basis[i] for i in sorted(idx)]
        return LieAlgebra(name or "%s_sub" % self.name, elems, brackets, order=BasisOrder(elems))

    # -- basic data ----------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket_basis(self, i: int, j: int) -> Dict[int, Fraction]:
        return self._table[i][j]

    def gen(self, label: str) -> "LieVector":
        return LieVector(self, {self.index(label): Fraction(1)})

    def zero(self) -> "LieVector":
        return LieVector(self, {})

    def vector(self, terms: Mapping) -> "LieVector":
        out = {}
        for k, c in terms.items():
            kk = k if isinstance(k, int) else self.index(k)
            _add_into(out, kk, c if not isinstance(c, (int, str)) else as_fraction(c))
        return LieVector(self, out)

    def bracket_terms(self, x: Mapping[int, object], y: Mapping[int, object]) -> Dict[int, object]:
        """Bilinear bracket on coefficient dicts, coefficients possibly graded."""
        out: Dict[int, object] = {}
        table = self._table
        par = self.parities
        for i, a in x.items():
            row = table[i]
            for j, b in y.items():
                v = row[j]
                if not v:
                    continue
                ab = a * twist(b, par[i])
                for k, c in v.items():
                    _add_into(out, k, ab * c)
        return out

    def bracket(self, x: "LieVector", y: "LieVector") -> "LieVector":
        if x.alg is not self or y.alg is not self:
            if x.alg.labels != self.labels or y.alg.labels != self.labels:
                raise InputError("vectors belong to a different algebra")
        return LieVector(self, self.bracket_terms(x.terms, y.terms))

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.basis == other.basis
            and self.structure_constants() == other.structure_constants()
        )

    def __hash__(self):
        return hash((self.name, self.basis))

    def __repr__(self):
        return "LieAlgebra(%r, %s)" % (self.name, ", ".join(self.labels))

    # -- serialization -------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "basis": [{"label": x.label, "degree": x.degree, "parity": x.parity} for x in self.basis],
            "brackets": [
                {
                    "left": self.labels[i],
                    "right": self.labels[j],
                    "terms": [{"basis": self.labels[k], "coeff": format_rational(c)} for k, c in sorted(v.items())],
                }
                for (i, j), v in sorted(self.structure_constants().items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "LieAlgebra":
        try:
            basis = [GradedBasisElement(str(b["label"]), int(b["degree"]), int(b["parity"])) for b in data["basis"]]
            brackets = {}
            for br in data.get("brackets", []):
                key = (br["left"], br["right"])
                if key in brackets:
                    raise InputError("duplicate bracket entry %r" % (key,))
                brackets[key] = {t["basis"]: as_fraction(str(t["coeff"])) for t in br["terms"]}
            order = None
            if "order" in data:
                pos = {b.label: b for b in basis}
                order = BasisOrder([pos[l] for l in data["order"]])
            return cls(str(data.get("name", "g")), basis, brackets, order=order)
        except (KeyError, TypeError) as exc:
            raise InputError("malformed algebra definition: %s" % (exc,)) from exc

    @classmethod
    def from_json(cls, text: str) -> "LieAlgebra":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError("invalid JSON: %s" % (exc,)) from exc
        return cls.from_dict(data)


class LieVector:
    """Sparse linear combination of generators; no zero coefficients stored."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: LieAlgebra, terms: Mapping[int, object]):
        self.alg = alg
        self.terms = {k: c for k, c in terms.items() if not _is_zero(c)}

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return LieVector(self.alg, out)

    def __neg__(self):
        return LieVector(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = as_fraction(c) if isinstance(c, (int, str)) else c
        return LieVector(self.alg, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, LieVector) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, label: str):
        return self.terms.get(self.alg.index(label), 0)

    def by_label(self) -> Dict[str, object]:
        return {self.alg.labels[k]: c for k, c in self.terms.items()}

    def __str__(self):
        from .printing import format_linear

        return format_linear(
            sorted(((self.alg.labels[k], c) for k, c in self.terms.items()), key=lambda t: t[0])
        )

    __repr__ = __str__


# -- Jacobi -----------------------------------------------------------------


@dataclass
class JacobiReport:
    algebra: str
    passed: bool
    violations: List[Tuple[Tuple[str, str, str], LieVector]] = field(default_factory=list)

    def lines(self) -> List[str]:
        if self.passed:
            return ["jacobi %s: pass" % self.algebra]
        out = ["jacobi %s: FAIL (%d triples)" % (self.algebra, len(self.violations))]
        for (a, b, c), r in self.violations:
            out.append("  (%s,%s,%s): residual %s" % (a, b, c, r))
        return out


def jacobi_residual(alg: LieAlgebra, i: int, j: int, k: int) -> Dict[int, Fraction]:
    br = alg.bracket_terms
    x, y, z = {i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)}
    lhs = br(x, br(y, z))
    t1 = br(br(x, y), z)
    s = -1 if alg.parities[i] and alg.parities[j] else 1
    t2 = br(y, br(x, z))
    out = dict(lhs)
    for key, c in t1.items():
        _add_into(out, key, -c)
    for key, c in t2.items():
        _add_into(out, key, -s * c)
    return out


def check_jacobi(alg: LieAlgebra) -> JacobiReport:
    """Evaluate the super Jacobi identity on every basis triple."""
    violations = []
    n = alg.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                r = jacobi_residual(alg, i, j, k)
                if r:
                    violations.append(((alg.labels[i], alg.labels[j], alg.labels[k]), LieVector(alg, r)))
    return JacobiReport(alg.name, not violations, violations)


# -- built-in examples -------------------------------------------------------

G = GradedBasisElement


def sl2_graded() -> LieAlgebra:
    basis = [G("h", 0, 0), G("e", 1, 0), G("f", -1, 0)]
    return LieAlgebra(
        "sl2_graded",
        basis,
        {("h", "e"): {"e": 1}, ("h", "f"): {"f": -1}, ("e", "f"): {"h": 2}},
    )


def heisenberg_graded() -> LieAlgebra:
    basis = [G("x", 1, 0), G("y", -1, 0), G("z", 0, 0)]
    return LieAlgebra("heisenberg_graded", basis, {("x", "y"): {"z": 1}})


def heisenberg_odd() -> LieAlgebra:
    """Heisenberg algebra with an odd degree-0 generator t, ``[t,t] = z``."""
    basis = [G("x", 1, 0), G("y", -1, 0), G("z", 0, 0), G("t", 0, 1)]
    return LieAlgebra("heisenberg_odd", basis, {("x", "y"): {"z": 1}, ("t", "t"): {"z": 1}})


def abelian(specs: Sequence[Tuple[str, int, int]], name="abelian") -> LieAlgebra:
    return LieAlgebra(name, [G(l, d, p) for l, d, p in specs], {})


def _tangent(g: LieAlgebra, shift: int, flip: int, name: str) -> LieAlgebra:
    bar = {l: l + "_" for l in g.labels}
    clash = set(bar.values()) & set(g.labels)
    if clash:
        raise InputError("generator labels clash with copies: %s" % sorted(clash))
    basis = list(g.basis) + [G(bar[x.label], x.degree + shift, (x.parity + flip) % 2) for x in g.basis]
    brackets = {}
    for (i, j), v in g.structure_constants().items():
        li, lj = g.labels[i], g.labels[j]
        brackets[(li, lj)] = {g.labels[k]: c for k, c in v.items()}
    # [x, ybar] = bar of [x, y]; super antisymmetry supplies [ybar, x]
    for i in range(g.dim):
        for j in range(g.dim):
            v = g.bracket_basis(i, j)
            if v:
                brackets[(g.labels[i], bar[g.labels[j]])] = {bar[g.labels[k]]: c for k, c in v.items()}
    alg = LieAlgebra(name, basis, {})
    for (a, b), terms in brackets.items():
        alg._set(a, b, terms)
    return alg


def shift_tangent(g: LieAlgebra) -> LieAlgebra:
    """``T[1]g``: copies of the generators one degree lower, same parity."""
    return _tangent(g, -1, 0, "T1_" + g.name)


def pi_tangent(g: LieAlgebra) -> LieAlgebra:
    """``Pi T g``: copies of the generators with flipped parity, same degree."""
    return _tangent(g, 0, 1, "PiT_" + g.name)


def gl(blocks: Sequence[Tuple[int, int, int]]) -> LieAlgebra:
    """``gl(V)`` for ``V`` given as ``(degree, parity, dimension)`` blocks."""
    vdeg, vpar = [], []
    for b in blocks:
        try:
            d, p, n = (int(t) for t in b)
        except (TypeError, ValueError) as exc:
            raise InputError("gl block must be (degree, parity, dimension): %r" % (b,)) from exc
        if n < 0 or p not in (0, 1):
            raise InputError("bad gl block %r" % (b,))
        vdeg += [d] * n
        vpar += [p] * n
    n = len(vdeg)
    if n == 0:
        raise InputError("gl(V) needs a nonzero V")

    def lab(a, b):
        return "E%d%d" % (a + 1, b + 1) if n < 10 else "E%d_%d" % (a + 1, b + 1)

    basis = [G(lab(a, b), vdeg[a] - vdeg[b], (vpar[a] + vpar[b]) % 2) for a in range(n) for b in range(n)]
    alg = LieAlgebra("gl", basis, {})
    par = {lab(a, b): (vpar[a] + vpar[b]) % 2 for a in range(n) for b in range(n)}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    x, y = lab(a, b), lab(c, d)
                    if alg.index(x) > alg.index(y):
                        continue
                    terms = {}
                    if b == c:
                        terms[lab(a, d)] = terms.get(lab(a, d), 0) + 1
                    if d == a:
                        s = -1 if par[x] and par[y] else 1
                        terms[lab(c, b)] = terms.get(lab(c, b), 0) - s
                    terms = {k: v for k, v in terms.items() if v}
                    if terms:
                        alg._set(x, y, terms)
    return alg


def builtin(name: str, arg=None) -> LieAlgebra:
    if name == "sl2_graded":
        return sl2_graded()
    if name == "heisenberg_graded":
        return heisenberg_graded()
    if name == "heisenberg_odd":
        return heisenberg_odd()
    if name == "shift_tangent":
        return shift_tangent(arg if isinstance(arg, LieAlgebra) else builtin(arg))
    if name == "pi_tangent":
        return pi_tangent(arg if isinstance(arg, LieAlgebra) else builtin(arg))
    if name == "gl":
        return gl(arg)
    raise InputError("unknown builtin algebra %r" % (name,))


# -- grading derivation -------------------------------------------------------


class EulerDerivation:
    """Diagonal operator multiplying each generator by its degree."""

    def __init__(self, alg: LieAlgebra):
        self.alg = alg

    def __call__(self, v: LieVector) -> LieVector:
        return LieVector(self.alg, {k: self.alg.degrees[k] * c for k, c in v.terms.items()})

    def eigenvalue(self, label: str) -> int:
        return self.alg.degrees[self.alg.index(label)]


def euler_derivation(alg: LieAlgebra) -> EulerDerivation:
    return EulerDerivation(alg)


def derivation_residuals(alg: LieAlgebra) -> Dict[Tuple[str, str], LieVector]:
    """Nonzero values of ``E[x,y] - [Ex,y] - [x,Ey]`` on basis pairs."""
    eul = euler_derivation(alg)
    out = {}
    for i in range(alg.dim):
        for j in range(alg.dim):
            x = LieVector(alg, {i: Fraction(1)})
            y = LieVector(alg, {j: Fraction(1)})
            r = eul(alg.bracket(x, y)) - alg.bracket(eul(x), y) - alg.bracket(x, eul(y))
            if not r.is_zero():
                out[(alg.labels[i], alg.labels[j])] = r
    return out
