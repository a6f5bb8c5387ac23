"""Structure-agnostic axiom checker for Hopf algebras, left bialgebroids and
commutative Hopf algebroids.

A structure is any object exposing the operations named in ``REQUIRED`` for
its flavor.  Elements and tensors are opaque; equality goes through
``structure.residual(x, y)`` which returns ``None`` when ``x == y`` and a
printable exact residual otherwise.  Pair and triple axioms are evaluated on
basis elements only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .core import InputError

__all__ = [
    "CheckResult",
    "Report",
    "AXIOMS",
    "run_axiom_suite",
    "LinearHopfAlgebra",
    "ue_dossier",
]

# axiom id -> (short name, statement, structure operations it needs)
AXIOMS = {
    "hopf-algebra": [
        ("H1", "associativity", "mu(mu(a,b),c) = mu(a,mu(b,c))", ["basis", "mul"]),
        ("H2", "unit", "mu(1,a) = a = mu(a,1)", ["basis", "mul", "unit"]),
        ("H3", "coassociativity", "(Delta (x) id) Delta = (id (x) Delta) Delta", ["basis", "comul", "comul_left", "comul_right"]),
        ("H4", "counit", "(eps (x) id) Delta = id = (id (x) eps) Delta", ["basis", "comul", "counit_left", "counit_right"]),
        ("H5", "comultiplicative", "Delta(ab) = Delta(a) Delta(b), Delta(1) = 1 (x) 1", ["basis", "mul", "comul", "tensor_mul", "unit"]),
        ("H6", "counit-multiplicative", "eps(ab) = eps(a) eps(b), eps(1) = 1", ["basis", "mul", "counit", "unit"]),
        ("H7", "antipode", "mu (S (x) id) Delta = eta eps = mu (id (x) S) Delta", ["basis", "comul", "mu_antipode_left", "mu_antipode_right", "counit", "eta"]),
    ],
    "left-bialgebra": [
        ("B1", "base-subalgebra", "eta(fg) = eta(f) eta(g), eta(1) = 1", ["base_basis", "eta", "mul", "unit"]),
        ("B2a", "counit-left-linear", "eps(f u) = f eps(u)", ["basis", "base_basis", "eta", "mul", "counit", "base_mul"]),
        ("B2b", "twisted-counit", "eps(uv) = eps(u eps(v))", ["basis", "mul", "counit", "eta"]),
        ("B3a", "comultiplicative", "Delta(uv) = Delta(u) Delta(v)", ["basis", "mul", "comul", "tensor_mul"]),
        ("B3b", "identical-on-base", "Delta(f) = f (x) 1 = 1 (x) f", ["base_basis", "eta", "comul", "f_tensor_1", "one_tensor_f"]),
        ("B3c", "coassociativity", "(Delta (x) id) Delta = (id (x) Delta) Delta", ["basis", "comul", "comul_left", "comul_right"]),
        ("B3d", "counit", "(eps (x) id) Delta = id = (id (x) eps) Delta", ["basis", "comul", "counit_left", "counit_right"]),
        ("B3e", "coincidence-locus", "Delta(u) in the coincidence locus of U (x)_R U", ["basis", "comul", "in_coincidence"]),
    ],
    "hopf-algebroid": [
        ("A0a", "associativity", "mu(mu(a,b),c) = mu(a,mu(b,c))", ["basis", "mul"]),
        ("A0b", "unit", "mu(1,a) = a", ["basis", "mul", "unit"]),
        ("A0c", "commutativity", "mu(a,b) = mu(b,a)", ["basis", "mul"]),
        ("A1a", "counit-left", "(eps (x) id) Delta = id", ["basis", "comul", "counit_left"]),
        ("A1b", "counit-right", "(id (x) eps) Delta = id", ["basis", "comul", "counit_right"]),
        ("A1c", "counit-source", "eps eta_L = id_R", ["base_basis", "eta_L", "counit"]),
        ("A1d", "counit-target", "eps eta_R = id_R", ["base_basis", "eta_R", "counit"]),
        ("A2a", "source", "Delta eta_L = eta_L (x) 1", ["base_basis", "eta_L", "comul", "left_tensor_one"]),
        ("A2b", "target", "Delta eta_R = 1 (x) eta_R", ["base_basis", "eta_R", "comul", "one_tensor_right"]),
        ("A3", "coassociativity", "(id (x) Delta) Delta = (Delta (x) id) Delta", ["basis", "comul", "comul_left", "comul_right"]),
        ("A4", "comultiplicative", "Delta(ab) = Delta(a) Delta(b), Delta(1) = 1 (x) 1", ["basis", "mul", "comul", "tensor_mul", "unit"]),
        ("A5a", "antipode-left", "mu (id (x) S) Delta = eta_L eps", ["basis", "comul", "mu_antipode_right", "counit", "eta_L"]),
        ("A5b", "antipode-right", "mu (S (x) id) Delta = eta_R eps", ["basis", "comul", "mu_antipode_left", "counit", "eta_R"]),
    ],
}


@dataclass
class CheckResult:
    axiom: str
    name: str
    statement: str
    passed: bool
    cases: int
    counterexample: Optional[str] = None
    residual: Optional[str] = None

    def as_dict(self):
        return {
            "axiom": self.axiom,
            "name": self.name,
            "statement": self.statement,
            "passed": self.passed,
            "cases": self.cases,
            "counterexample": self.counterexample,
            "residual": self.residual,
        }


@dataclass
class Report:
    title: str
    flavor: str
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def get(self, axiom: str) -> CheckResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def to_json(self) -> str:
        return json.dumps(
            {"title": self.title, "flavor": self.flavor, "passed": self.passed,
             "results": [r.as_dict() for r in self.results]},
            indent=2,
        ) + "\n"

    def text(self) -> str:
        lines = ["%s [%s]" % (self.title, self.flavor)]
        for r in self.results:
            status = "pass" if r.passed else "FAIL"
            lines.append("  %-4s %-22s %s (%d cases)" % (r.axiom, r.name, status, r.cases))
            if not r.passed:
                lines.append("       at %s: residual %s" % (r.counterexample, r.residual))
        lines.append("overall: %s" % ("pass" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.text()


class _Check:
    def __init__(self, axiom, name, statement):
        self.res = CheckResult(axiom, name, statement, True, 0)

    def compare(self, label, residual):
        self.res.cases += 1
        if residual is not None and self.res.passed:
            self.res.passed = False
            self.res.counterexample = label
            self.res.residual = str(residual)


def _require(structure, axiom, ops):
    missing = [op for op in ops if not hasattr(structure, op)]
    if missing:
        raise InputError("axiom %s needs structure maps: %s" % (axiom, ", ".join(missing)))


def run_axiom_suite(structure, flavor: Optional[str] = None, title: str = "structure", only=None) -> Report:
    """Run every axiom of the flavor on the structure's finite carrier."""
    flavor = flavor or getattr(structure, "flavor", None)
    if flavor not in AXIOMS:
        raise InputError("unknown flavor %r" % (flavor,))
    report = Report(title, flavor)
    for axiom, name, statement, ops in AXIOMS[flavor]:
        if only is not None and axiom not in only:
            continue
        _require(structure, axiom, ops)
        chk = _Check(axiom, name, statement)
        _RUNNERS[(flavor, axiom)](structure, chk)
        report.results.append(chk.res)
    return report


# -- individual checks ----------------------------------------------------------


def _pairs(structure):
    B = structure.basis()
    limit = getattr(structure, "pair_ok", lambda a, b: True)
    return [(na, a, nb, b) for na, a in B for nb, b in B if limit(na, nb)]


def _triples(structure):
    B = structure.basis()
    limit = getattr(structure, "triple_ok", lambda a, b, c: True)
    return [(na, a, nb, b, nc, c) for na, a in B for nb, b in B for nc, c in B if limit(na, nb, nc)]


def _assoc(S, chk):
    for na, a, nb, b, nc, c in _triples(S):
        chk.compare("(%s, %s, %s)" % (na, nb, nc), S.residual(S.mul(S.mul(a, b), c), S.mul(a, S.mul(b, c))))


def _unit(S, chk):
    one = S.unit()
    for na, a in S.basis():
        chk.compare("%s" % na, S.residual(S.mul(one, a), a))
        if getattr(S, "flavor", "") != "hopf-algebroid":
            chk.compare("%s" % na, S.residual(S.mul(a, one), a))


def _comm(S, chk):
    for na, a, nb, b in _pairs(S):
        chk.compare("(%s, %s)" % (na, nb), S.residual(S.mul(a, b), S.mul(b, a)))


def _coassoc(S, chk):
    for na, a in S.basis():
        d = S.comul(a)
        chk.compare(na, S.residual(S.comul_left(d), S.comul_right(d)))


def _counit_left(S, chk):
    for na, a in S.basis():
        chk.compare(na, S.residual(S.counit_left(S.comul(a)), a))


def _counit_right(S, chk):
    for na, a in S.basis():
        chk.compare(na, S.residual(S.counit_right(S.comul(a)), a))


def _counit_both(S, chk):
    _counit_left(S, chk)
    _counit_right(S, chk)


def _comult(S, chk):
    chk.compare("1", S.residual(S.comul(S.unit()), S.tensor_unit()))
    for na, a, nb, b in _pairs(S):
        chk.compare("(%s, %s)" % (na, nb), S.residual(S.comul(S.mul(a, b)), S.tensor_mul(S.comul(a), S.comul(b))))


def _counit_mult(S, chk):
    chk.compare("1", S.scalar_residual(S.counit(S.unit()), Fraction(1)))
    for na, a, nb, b in _pairs(S):
        chk.compare("(%s, %s)" % (na, nb), S.scalar_residual(S.counit(S.mul(a, b)), S.counit(a) * S.counit(b)))


def _antipode_hopf(S, chk):
    for na, a in S.basis():
        d = S.comul(a)
        target = S.eta(S.counit(a))
        chk.compare("%s [S (x) id]" % na, S.residual(S.mu_antipode_left(d), target))
        chk.compare("%s [id (x) S]" % na, S.residual(S.mu_antipode_right(d), target))


def _eps_etaL(S, chk):
    for nf, f in S.base_basis():
        chk.compare(nf, S.base_residual(S.counit(S.eta_L(f)), f))


def _eps_etaR(S, chk):
    for nf, f in S.base_basis():
        chk.compare(nf, S.base_residual(S.counit(S.eta_R(f)), f))


def _source(S, chk):
    for nf, f in S.base_basis():
        chk.compare(nf, S.residual(S.comul(S.eta_L(f)), S.left_tensor_one(S.eta_L(f))))


def _target(S, chk):
    for nf, f in S.base_basis():
        chk.compare(nf, S.residual(S.comul(S.eta_R(f)), S.one_tensor_right(S.eta_R(f))))


def _antipode_left_id(S, chk):
    # mu (id (x) S) Delta = eta_L eps
    for na, a in S.basis():
        chk.compare(na, S.residual(S.mu_antipode_right(S.comul(a)), S.eta_L(S.counit(a))))


def _antipode_right_id(S, chk):
    # mu (S (x) id) Delta = eta_R eps
    for na, a in S.basis():
        chk.compare(na, S.residual(S.mu_antipode_left(S.comul(a)), S.eta_R(S.counit(a))))


def _base_sub(S, chk):
    chk.compare("1", S.residual(S.eta(S.base_one()), S.unit()))
    B = S.base_basis()
    for nf, f in B:
        for ng, g in B:
            chk.compare("(%s, %s)" % (nf, ng), S.residual(S.eta(S.base_mul(f, g)), S.mul(S.eta(f), S.eta(g))))


def _eps_left_linear(S, chk):
    for nf, f in S.base_basis():
        for na, a in S.basis():
            chk.compare("(%s, %s)" % (nf, na), S.base_residual(S.counit(S.mul(S.eta(f), a)), S.base_mul(f, S.counit(a))))


def _twisted(S, chk):
    for na, a, nb, b in _pairs(S):
        lhs = S.counit(S.mul(a, b))
        rhs = S.counit(S.mul(a, S.eta(S.counit(b))))
        chk.compare("(%s, %s)" % (na, nb), S.base_residual(lhs, rhs))


def _comult_plain(S, chk):
    for na, a, nb, b in _pairs(S):
        chk.compare("(%s, %s)" % (na, nb), S.residual(S.comul(S.mul(a, b)), S.tensor_mul(S.comul(a), S.comul(b))))


def _ident_base(S, chk):
    for nf, f in S.base_basis():
        d = S.comul(S.eta(f))
        chk.compare("%s [f (x) 1]" % nf, S.residual(d, S.f_tensor_1(f)))
        chk.compare("%s [1 (x) f]" % nf, S.residual(d, S.one_tensor_f(f)))


def _coincidence(S, chk):
    for na, a in S.basis():
        ok, res = S.in_coincidence(S.comul(a))
        chk.compare(na, None if ok else res)


_RUNNERS = {
    ("hopf-algebra", "H1"): _assoc,
    ("hopf-algebra", "H2"): _unit,
    ("hopf-algebra", "H3"): _coassoc,
    ("hopf-algebra", "H4"): _counit_both,
    ("hopf-algebra", "H5"): _comult,
    ("hopf-algebra", "H6"): _counit_mult,
    ("hopf-algebra", "H7"): _antipode_hopf,
    ("left-bialgebra", "B1"): _base_sub,
    ("left-bialgebra", "B2a"): _eps_left_linear,
    ("left-bialgebra", "B2b"): _twisted,
    ("left-bialgebra", "B3a"): _comult_plain,
    ("left-bialgebra", "B3b"): _ident_base,
    ("left-bialgebra", "B3c"): _coassoc,
    ("left-bialgebra", "B3d"): _counit_both,
    ("left-bialgebra", "B3e"): _coincidence,
    ("hopf-algebroid", "A0a"): _assoc,
    ("hopf-algebroid", "A0b"): _unit,
    ("hopf-algebroid", "A0c"): _comm,
    ("hopf-algebroid", "A1a"): _counit_left,
    ("hopf-algebroid", "A1b"): _counit_right,
    ("hopf-algebroid", "A1c"): _eps_etaL,
    ("hopf-algebroid", "A1d"): _eps_etaR,
    ("hopf-algebroid", "A2a"): _source,
    ("hopf-algebroid", "A2b"): _target,
    ("hopf-algebroid", "A3"): _coassoc,
    ("hopf-algebroid", "A4"): _comult,
    ("hopf-algebroid", "A5a"): _antipode_left_id,
    ("hopf-algebroid", "A5b"): _antipode_right_id,
}


# -- a table-driven Hopf algebra ---------------------------------------------------


def _vec_add(acc, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class _Vec(dict):
    """Sparse vector keyed by basis keys (or tuples of them for tensors)."""

    def __str__(self):
        if not self:
            return "0"
        from .printing import format_linear

        items = sorted(self.items(), key=lambda t: str(t[0]))
        return format_linear([("" if k == "1" else ("(%s)" % k if " (x) " in str(k) else str(k)), c)
                              for k, c in items])


class LinearHopfAlgebra:
    """Finite filtration piece of a Hopf algebra given by evaluation tables.

    ``mul_table[(a, b)]``, ``comul_table[a]``, ``antipode_table[a]`` are
    sparse dicts over basis keys (pairs of keys for the coproduct),
    ``counit_table[a]`` a rational.  ``parity[a]`` feeds the Koszul sign of
    the tensor product algebra.  Products are only required when the
    filtration degrees add up to at most ``max_degree``.
    """

    flavor = "hopf-algebra"

    def __init__(self, keys, names, degree, parity, unit_key, mul_table, comul_table, counit_table,
                 antipode_table, max_degree):
        self.keys = list(keys)
        self.names = names
        self.degree = degree
        self.parity = parity
        self.unit_key = unit_key
        self.mul_table = mul_table
        self.comul_table = comul_table
        self.counit_table = counit_table
        self.antipode_table = antipode_table
        self.max_degree = max_degree

    # carrier
    def basis(self):
        return [(self.names[k], _Vec({k: Fraction(1)})) for k in self.keys]

    def pair_ok(self, na, nb):
        return self._deg_of(na) + self._deg_of(nb) <= self.max_degree

    def triple_ok(self, na, nb, nc):
        return self._deg_of(na) + self._deg_of(nb) + self._deg_of(nc) <= self.max_degree

    def _deg_of(self, name):
        if not hasattr(self, "_name_deg"):
            self._name_deg = {self.names[k]: self.degree[k] for k in self.keys}
        return self._name_deg[name]

    # linear extensions
    def mul(self, a, b):
        out = _Vec()
        for ka, ca in a.items():
            for kb, cb in b.items():
                for k, c in self.mul_table[(ka, kb)].items():
                    _vec_add(out, k, ca * cb * c)
        return out

    def unit(self):
        return _Vec({self.unit_key: Fraction(1)})

    def eta(self, c):
        return _Vec({self.unit_key: Fraction(c)}) if c else _Vec()

    def counit(self, a):
        return sum((c * self.counit_table[k] for k, c in a.items()), Fraction(0))

    def comul(self, a):
        out = _Vec()
        for ka, ca in a.items():
            for kk, c in self.comul_table[ka].items():
                _vec_add(out, kk, ca * c)
        return out

    def antipode(self, a):
        out = _Vec()
        for ka, ca in a.items():
            for k, c in self.antipode_table[ka].items():
                _vec_add(out, k, ca * c)
        return out

    def tensor_unit(self):
        return _Vec({(self.unit_key, self.unit_key): Fraction(1)})

    def tensor_mul(self, s, t):
        out = _Vec()
        for (a1, a2), c in s.items():
            for (b1, b2), d in t.items():
                sign = -1 if self.parity[a2] and self.parity[b1] else 1
                for k1, e1 in self.mul_table[(a1, b1)].items():
                    for k2, e2 in self.mul_table[(a2, b2)].items():
                        _vec_add(out, (k1, k2), sign * c * d * e1 * e2)
        return out

    def comul_left(self, t):
        out = _Vec()
        for (a1, a2), c in t.items():
            for (k1, k2), e in self.comul_table[a1].items():
                _vec_add(out, (k1, k2, a2), c * e)
        return out

    def comul_right(self, t):
        out = _Vec()
        for (a1, a2), c in t.items():
            for (k1, k2), e in self.comul_table[a2].items():
                _vec_add(out, (a1, k1, k2), c * e)
        return out

    def counit_left(self, t):
        out = _Vec()
        for (a1, a2), c in t.items():
            e = self.counit_table[a1]
            if e:
                _vec_add(out, a2, c * e)
        return out

    def counit_right(self, t):
        out = _Vec()
        for (a1, a2), c in t.items():
            e = self.counit_table[a2]
            if e:
                _vec_add(out, a1, c * e)
        return out

    def mu_antipode_left(self, t):
        out = _Vec()
        for (a1, a2), c in t.items():
            for k, e in self.antipode_table[a1].items():
                for k2, f in self.mul_table[(k, a2)].items():
                    _vec_add(out, k2, c * e * f)
        return out

    def mu_antipode_right(self, t):
        out = _Vec()
        for (a1, a2), c in t.items():
            for k, e in self.antipode_table[a2].items():
                for k2, f in self.mul_table[(a1, k)].items():
                    _vec_add(out, k2, c * e * f)
        return out

    # equality
    def residual(self, x, y):
        out = _Vec(x)
        for k, c in y.items():
            _vec_add(out, k, -c)
        if not out:
            return None
        return _Vec({self._name_key(k): c for k, c in out.items()})

    def scalar_residual(self, x, y):
        return None if x == y else x - y

    def _name_key(self, k):
        if k in self.names:
            return self.names[k]
        return " (x) ".join(self.names[x] for x in k)

    def corrupt_antipode(self, key):
        """Copy with the antipode sign flipped on one basis element."""
        table = dict(self.antipode_table)
        table[key] = {k: -c for k, c in table[key].items()}
        return LinearHopfAlgebra(self.keys, self.names, self.degree, self.parity, self.unit_key, self.mul_table,
                                 self.comul_table, self.counit_table, table, self.max_degree)


def ue_dossier(alg, max_len: int) -> LinearHopfAlgebra:
    """Tables of U(g) on admissible monomials of length <= max_len."""
    from . import ue

    keys = ue.admissible_monomials(alg, max_len)
    names = {k: (ue.mono_text(alg, k) or "1") for k in keys}
    degree = {k: len(k) for k in keys}
    parity = {k: ue.mono_parity(alg, k) for k in keys}
    mul_table = {}
    for a in keys:
        for b in keys:
            if len(a) + len(b) <= max_len:
                mul_table[(a, b)] = dict(ue.normal_terms(alg, a + b))
    comul_table = {}
    counit_table = {}
    antipode_table = {}
    for a in keys:
        el = ue.UElement(alg, {a: Fraction(1)})
        comul_table[a] = dict(ue.u_coproduct(el).terms)
        counit_table[a] = ue.u_counit(el)
        antipode_table[a] = dict(ue.u_antipode(el).terms)
    return LinearHopfAlgebra(keys, names, degree, parity, (), mul_table, comul_table, counit_table,
                             antipode_table, max_len)
