import random
from fractions import Fraction

import pytest

from gradedhopf.expr import LieSemantics, ParseError, evaluate, parse, parse_and_eval, tokenize
from gradedhopf.lie import heisenberg_graded, heisenberg_odd, sl2_graded
from gradedhopf.poly import PolyRing
from gradedhopf.ue import UElement

SL2 = sl2_graded()


def test_examples():
    assert parse_and_eval("e*f - f*e", SL2) == 2 * UElement.gen(SL2, "h")
    assert parse_and_eval("[h,[h,e]]", SL2) == UElement.gen(SL2, "e")
    assert str(parse_and_eval("(e + f)^2", SL2)) == "f^2 + 2*f*e + e^2 + 2*h"
    assert str(parse_and_eval("-3/4*h + 1", SL2)) == "-3/4*h + 1"


def test_syntax_error_positions():
    with pytest.raises(ParseError) as exc:
        parse_and_eval("e +", SL2)
    assert exc.value.pos == 4
    assert "position 4" in str(exc.value)
    with pytest.raises(ParseError) as exc:
        parse_and_eval("e * (f", SL2)
    assert exc.value.pos == 7
    with pytest.raises(ParseError) as exc:
        parse_and_eval("e $ f", SL2)
    assert exc.value.pos == 3
    with pytest.raises(ParseError):
        parse_and_eval("e^1/2", SL2)


def test_unknown_identifier_suggests():
    with pytest.raises(ParseError) as exc:
        parse_and_eval("e*ff", SL2)
    assert exc.value.pos == 3 and "did you mean 'f'" in str(exc.value)


def test_super_bracket_is_graded():
    g = heisenberg_odd()
    assert parse_and_eval("[t,t]", g) == UElement.gen(g, "z")
    assert parse_and_eval("[x,y]", g) == UElement.gen(g, "z")


def test_lie_semantics():
    g = heisenberg_graded()
    sem = LieSemantics(g)
    assert str(evaluate(parse("[x,y] + 1/2*x", sem.names), sem)) == "1/2*x + z"
    with pytest.raises(Exception):
        evaluate(parse("x*y", sem.names), sem)


def test_polynomials():
    R = PolyRing.of("a", "b")
    assert str(parse_and_eval("(a+b)^2 - 2*a*b", R)) == str(R.var("a") ** 2 + R.var("b") ** 2)


def test_tokens():
    kinds = [t[0] for t in tokenize("3/4*d/dz + j(z)")]
    assert kinds == ["num", "op", "deriv", "op", "id", "op", "id", "op", "end"]


@pytest.mark.parametrize("alg", [SL2, heisenberg_odd()], ids=lambda a: a.name)
def test_print_parse_roundtrip(alg):
    from helpers import random_uelement

    rng = random.Random(11)
    for _ in range(100):
        a = random_uelement(alg, rng, 3, 5)
        text = str(a)
        b = parse_and_eval(text, alg)
        assert b == a, text
        assert str(b) == text
