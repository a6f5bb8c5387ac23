from fractions import Fraction
from itertools import permutations

import pytest

from gradedhopf.bch import (FormalGroupLaw, associativity_residual, bch_oracle, dynkin_bch, dynkin_coefficients,
                            exp_dual_expansion, lie_basis_decomposition, pairing_via_group_law)
from gradedhopf.core import InputError
from gradedhopf.lie import LieVector, heisenberg_graded, sl2_graded
from gradedhopf.poly import PolyRing, Var
from gradedhopf.ue import admissible_monomials


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_dynkin_matches_oracle(N):
    assert dynkin_bch(N=N).expand() == bch_oracle(N)


def test_low_order_coefficients_from_the_oracle():
    table = lie_basis_decomposition(bch_oracle(4), 4)
    assert table[(0,)] == 1 and table[(1,)] == 1
    assert table[(0, 1)] == Fraction(1, 2)
    assert table[(0, 0, 1)] == Fraction(1, 12)
    assert table[(1, 0, 1)] == Fraction(-1, 12)


def test_free_series_print():
    assert str(dynkin_bch(N=3)) == "u + v + 1/2*[u,v] + 1/12*[u,[u,v]] - 1/12*[v,[u,v]]"


def test_dynkin_coefficients_order_two():
    # raw Dynkin weights before re-expression in a Lie basis
    c = dynkin_coefficients(2)
    assert c[(0,)] == 1 and c[(1,)] == 1


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_heisenberg_closed_form(N):
    g = heisenberg_graded()
    ring = PolyRing([Var("a"), Var("b")])
    a, b = ring.var("a", order=N), ring.var("b", order=N)
    X = LieVector(g, {g.index("x"): a})
    Y = LieVector(g, {g.index("y"): b})
    Z = dynkin_bch(X, Y, N)
    assert Z == LieVector(g, {g.index("x"): a, g.index("y"): b, g.index("z"): Fraction(1, 2) * a * b})


def test_heisenberg_numeric():
    g = heisenberg_graded()
    assert str(dynkin_bch(g.gen("x"), g.gen("y"), 2)) == "x + y + 1/2*z"


@pytest.mark.parametrize("alg", [sl2_graded(), heisenberg_graded()], ids=lambda a: a.name)
def test_formal_group_associative(alg):
    assert associativity_residual(alg, 4) == {}


def test_heisenberg_group_law_text():
    law = FormalGroupLaw(heisenberg_graded(), 3)
    ring = law.ring
    expect = (ring.var("u_z") + ring.var("v_z") + Fraction(1, 2) * ring.var("u_x") * ring.var("v_y")
              - Fraction(1, 2) * ring.var("u_y") * ring.var("v_x"))
    assert law["z"] == expect


def test_group_inverse():
    alg = sl2_graded()
    law = FormalGroupLaw(alg, 3)
    ring = PolyRing([Var("p_" + l, -d) for l, d in zip(alg.labels, alg.degrees)])
    p = {l: ring.var("p_" + l, order=3) for l in alg.labels}
    inv = law.inverse(p, 3)
    e = law.compose(p, inv, 3)
    assert all(v.is_zero() for v in e.values())


@pytest.mark.parametrize("alg", [sl2_graded(), heisenberg_graded()], ids=lambda a: a.name)
def test_group_law_pairing_against_exp_dual_basis(alg):
    # E[B] = c u^B is dual to psi(x_B), so <u^B, psi(x_B)> = 1/c, where psi
    # averages the orderings of the word B
    E = exp_dual_expansion(alg, 3)
    for B in admissible_monomials(alg, 3):
        if not B:
            continue
        (m, c), = E[B].terms.items()
        ring = E[B].ring
        phi = ring.monomial({ring.vars[i].name: e for i, e in m})
        perms = list(permutations(B))
        val = sum(pairing_via_group_law(alg, phi, list(w)) for w in perms) / len(perms)
        assert val == 1 / c, B


def test_oracle_limits():
    with pytest.raises(InputError):
        bch_oracle(0)
    with pytest.raises(InputError):
        bch_oracle(7)
