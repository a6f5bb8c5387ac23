import json
from fractions import Fraction

import pytest

from gradedhopf.core import InputError
from gradedhopf.lie import heisenberg_odd, pi_tangent, sl2_graded
from gradedhopf.verify import AXIOMS, LinearHopfAlgebra, run_axiom_suite, ue_dossier


@pytest.mark.parametrize("alg,n", [(sl2_graded(), 4), (heisenberg_odd(), 3), (pi_tangent(sl2_graded()), 3)],
                         ids=["sl2", "hodd", "PiT"])
def test_enveloping_dossier_passes(alg, n):
    rep = run_axiom_suite(ue_dossier(alg, n))
    assert rep.passed, rep.text()
    assert [r.axiom for r in rep.results] == [a[0] for a in AXIOMS["hopf-algebra"]]
    assert all(r.cases > 0 for r in rep.results)


def test_every_antipode_sign_flip_is_caught():
    D = ue_dossier(sl2_graded(), 3)
    for key in D.keys:
        rep = run_axiom_suite(D.corrupt_antipode(key))
        bad = rep.get("H7")
        assert not bad.passed, key
        assert bad.counterexample.split(" [")[0] == D.names[key]
        assert bad.residual not in (None, "0")


def test_super_antipode_flip_is_caught():
    D = ue_dossier(heisenberg_odd(), 2)
    t = (D.keys[[D.names[k] for k in D.keys].index("t")])
    assert not run_axiom_suite(D.corrupt_antipode(t)).passed


def test_corrupted_multiplication_entry_is_caught():
    D = ue_dossier(sl2_graded(), 3)
    e, f = (D.keys[[D.names[k] for k in D.keys].index(x)] for x in "ef")
    table = dict(D.mul_table)
    entry = dict(table[(e, f)])
    h = D.keys[[D.names[k] for k in D.keys].index("h")]
    entry[h] += 1
    table[(e, f)] = entry
    bad = LinearHopfAlgebra(D.keys, D.names, D.degree, D.parity, D.unit_key, table, D.comul_table,
                            D.counit_table, D.antipode_table, D.max_degree)
    rep = run_axiom_suite(bad)
    assert not rep.passed
    assert rep.failed()[0].counterexample


def test_report_json_is_deterministic():
    a = run_axiom_suite(ue_dossier(sl2_graded(), 2)).to_json()
    b = run_axiom_suite(ue_dossier(sl2_graded(), 2)).to_json()
    assert a == b
    data = json.loads(a)
    assert data["passed"] and data["flavor"] == "hopf-algebra"


def test_missing_operations_are_named():
    class Half:
        flavor = "hopf-algebra"

        def basis(self):
            return [("1", Fraction(1))]

    with pytest.raises(InputError) as exc:
        run_axiom_suite(Half())
    assert "mul" in str(exc.value)


def test_axiom_ids_unique():
    for flavor, rows in AXIOMS.items():
        ids = [r[0] for r in rows]
        assert len(ids) == len(set(ids)), flavor


def test_only_subset():
    rep = run_axiom_suite(ue_dossier(sl2_graded(), 2), only=["H7"])
    assert [r.axiom for r in rep.results] == ["H7"]
