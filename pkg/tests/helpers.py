"""Shared strategies and small utilities for the test suite."""

import random
from fractions import Fraction

from gradedhopf import ue
from gradedhopf.ue import Tensor, UElement


def random_uelement(alg, rng: random.Random, max_len=3, max_terms=4):
    monos = ue.admissible_monomials(alg, max_len)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        m = rng.choice(monos)
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        terms[m] = terms.get(m, 0) + c
    return UElement(alg, terms)


def psi_tensor(t: Tensor) -> Tensor:
    """(psi (x) psi) on a tensor of Sym monomials."""
    out = {}
    for (l, r), c in t.terms.items():
        for a, ca in ue._psi_mono(t.alg, l).items():
            for b, cb in ue._psi_mono(t.alg, r).items():
                out[(a, b)] = out.get((a, b), 0) + c * ca * cb
    return Tensor(t.alg, 2, out)
