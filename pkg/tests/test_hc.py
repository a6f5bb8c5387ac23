import random
from fractions import Fraction

import pytest

from gradedhopf import ue
from gradedhopf.core import InputError
from gradedhopf.hc import (FormalGroup, HCFunctional, HCPair, SuperHCPair, _h_to_g, equivariance_report,
                           functional_residual, group_ad, hc_antipode, hc_check, hc_coproduct, hc_counit,
                           hc_product, module_action, reduction_roundtrip, super_subalgebra_reduce, table_product)
from gradedhopf.lie import gl, heisenberg_graded, heisenberg_odd, pi_tangent, sl2_graded
from gradedhopf.ue import UElement

N = 3


@pytest.fixture(scope="module")
def heis():
    return HCPair(heisenberg_graded(), ["z"], N)


@pytest.fixture(scope="module")
def sl2h():
    return HCPair(sl2_graded(), ["h"], N)


def test_group_adjoint_series():
    g = sl2_graded()
    H = FormalGroup(g.subalgebra(["h"]), 3)
    assert str(group_ad(H, g, g.gen("e"))) == "(1 + w_h + 1/2*w_h^2 + 1/6*w_h^3)*e"
    assert str(group_ad(H, g, g.gen("f"))) == "(1 - w_h + 1/2*w_h^2 - 1/6*w_h^3)*f"


def test_odd_subgroup_rejected():
    with pytest.raises(InputError):
        FormalGroup(heisenberg_odd().subalgebra(["t", "z"]), 2)


@pytest.mark.parametrize("which", ["heis", "sl2h"])
def test_hopf_axioms(which, request):
    pair = request.getfixturevalue(which)
    rep = hc_check(pair, N)
    assert rep.passed, rep.text()


@pytest.mark.parametrize("which", ["heis", "sl2h"])
def test_equivariance_preserved(which, request):
    rep = equivariance_report(request.getfixturevalue(which), N)
    assert rep and all(v is None for v in rep.values()), {k: v for k, v in rep.items() if v is not None}


def test_literal_antipode_fails(heis):
    rep = hc_check(heis, N, literal_antipode=True)
    assert not rep.get("H7").passed
    assert rep.get("H7").counterexample


def test_antipode_is_involutive(sl2h):
    for name, f in sl2h.functional_basis(N):
        assert functional_residual(hc_antipode(hc_antipode(f)), f, N) is None, name


def test_table_product_matches(sl2h):
    basis = sl2h.functional_basis(2)
    for n1, f1 in basis:
        for n2, f2 in basis:
            if f1.weight() + f2.weight() <= N:
                assert functional_residual(table_product(f1, f2), hc_product(f1, f2), N) is None


def test_delta_functionals(heis):
    # d[x] d[y] evaluated on psi(x.y) is 1 (shuffle coproduct)
    alg = heis.alg
    x, y = alg.index("x"), alg.index("y")
    dx = HCFunctional(heis, {(x,): 1})
    dy = HCFunctional(heis, {(y,): 1})
    prod = hc_product(dx, dy)
    s = tuple(sorted((x, y)))
    arg = ue.psi(ue.SymElement(alg, {s: Fraction(1)}))
    assert prod([heis.identity()], [arg], N) == 1
    assert hc_counit(HCFunctional(heis, {(): 3})) == 3


def test_central_actions_agree(heis):
    z = heis.g.gen("z")
    for name, f in heis.functional_basis(2):
        l = module_action(z, f, "left")
        r = module_action(z, f, "right")
        assert functional_residual(l, r, 2) is None, name


def test_left_action_is_a_derivation(sl2h):
    e = sl2h.g.gen("e")
    basis = sl2h.functional_basis(2)
    for n1, f1 in basis:
        for n2, f2 in basis:
            if f1.weight() + f2.weight() > 2:
                continue
            lhs = module_action(e, hc_product(f1, f2), "left")
            rhs_a = hc_product(module_action(e, f1, "left"), f2)
            rhs_b = hc_product(f1, module_action(e, f2, "left"))
            # compare lhs with the sum through evaluation
            for m in ue.admissible_monomials(sl2h.alg, 2 - 1):
                p = sl2h.point(1)
                a = UElement(sl2h.alg, {m: Fraction(1)})
                order = 1 - len(m)
                if order < 0:
                    continue
                d = lhs([p], [a], order) - rhs_a([p], [a], order) - rhs_b([p], [a], order)
                assert d.truncated(order).is_zero(), (n1, n2, m)


def test_heisenberg_build_text(heis):
    assert heis.H.components_text().splitlines()[0] == "Delta(u_z) = u_z + v_z"


# -- super subgroup reduction --------------------------------------------------------


SUPER = [(pi_tangent(sl2_graded()), ["h", "h_"], ["h"]), (heisenberg_odd(), ["t", "z"], ["z"]),
         (gl([(0, 0, 1), (1, 1, 1)]), ["E11", "E22", "E12"], ["E11", "E22"])]


@pytest.mark.parametrize("g,h,h0", SUPER, ids=lambda x: getattr(x, "name", None))
def test_reduction_roundtrip_random_tables(g, h, h0):
    sp, even = super_subalgebra_reduce(g, h, 3)
    assert even.h_labels == h0
    rng = random.Random(2024)
    failures = [reduction_roundtrip(sp, sp.random_table(rng, 3)) for _ in range(20)]
    assert failures == [None] * 20


class _WrongOrder(SuperHCPair):
    """Phi(psi0)(a)(b) = psi0(a b): the factors in the wrong order."""

    def phi_value(self, psi0, a_mono, b, point, order):
        pair = self.even
        a = UElement(self.alg, {a_mono: Fraction(1)})
        arg = ue.transport(a * _h_to_g(self, b), pair.alg)
        return psi0.eval([point], [arg], order)


def test_reduction_detects_wrong_factor_order():
    sp = _WrongOrder(pi_tangent(sl2_graded()), ["h", "h_"], 3)
    rng = random.Random(2024)
    failures = [reduction_roundtrip(sp, sp.random_table(rng, 3)) for _ in range(20)]
    assert any(f is not None for f in failures)
