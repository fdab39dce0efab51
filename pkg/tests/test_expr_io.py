import random
from fractions import Fraction

import pytest

from supergrass.expr_io import (Add, Context, DslSyntaxError,
                                UnknownSymbolError, format_poly, parse,
                                poly_from_json, poly_to_json, print_ast)
from supergrass.kernel import SymbolTable
from supergrass.scalars import QI
from supergrass.superspace import supertime


def r11_context():
    dom, ops = supertime()
    return Context(dom.table, ops, berezin_names=("th",))


def test_parse_basic_sum():
    ast = parse("th1*th2 + 2*x")
    assert isinstance(ast, Add)


def test_eval_and_canonical_print():
    t = SymbolTable()
    t.even_symbol("x")
    t.odd_symbol("th1")
    t.odd_symbol("th2")
    ctx = Context(t)
    val = ctx.evaluate(parse("th1*th2 + 2*x"))
    assert format_poly(val) == "2*x + th1*th2"


def test_nilpotent_prints_zero():
    t = SymbolTable()
    t.odd_symbol("th1")
    ctx = Context(t)
    assert format_poly(ctx.evaluate(parse("th1*th1"))) == "0"


def test_bracket_of_supertime_fields():
    ctx = r11_context()
    val = ctx.evaluate(parse("[D, D]"))
    assert str(val) == "-2*d/dt"


def test_derivation_application():
    ctx = r11_context()
    out = ctx.evaluate(parse("D[dt](t^3)"))
    assert format_poly(out) == "3*t^2"


def test_berezin_in_dsl():
    ctx = r11_context()
    out = ctx.evaluate(parse("ber(th*t^2 + t)"))
    assert format_poly(out) == "t^2"


def test_unknown_symbol_error():
    ctx = r11_context()
    with pytest.raises(UnknownSymbolError):
        ctx.evaluate(parse("nope + 1"))


def test_syntax_error_position():
    with pytest.raises(DslSyntaxError) as err:
        parse("2 + * 3")
    assert err.value.line == 1
    assert err.value.col == 5
    assert err.value.expected


def test_missing_paren_expected_set():
    with pytest.raises(DslSyntaxError) as err:
        parse("(1 + 2")
    assert ")" in err.value.expected


from supergrass.tests_support import rand_ast


def test_ast_round_trip_random():
    rng = random.Random(99)
    for _ in range(1000):
        ast = rand_ast(rng)
        assert parse(print_ast(ast)) == ast


def test_value_round_trip_random():
    rng = random.Random(101)
    t = SymbolTable()
    t.even_symbol("x")
    t.even_symbol("y")
    t.odd_symbol("th1")
    t.odd_symbol("th2")
    t.odd_symbol("et1")
    ctx = Context(t)
    odd_names = ["th1", "th2", "et1"]
    for _ in range(300):
        p = t.zero()
        for _ in range(rng.randint(1, 5)):
            coeff = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            ev = [(n, rng.randint(0, 3)) for n in ("x", "y") if rng.random() < 0.6]
            od = [n for n in odd_names if rng.random() < 0.4]
            p = p + t.monomial(coeff, ev, od)
        text = format_poly(p)
        assert ctx.evaluate(parse(text)) == p


def test_json_round_trip_bit_exact():
    rng = random.Random(103)
    t = SymbolTable()
    t.even_symbol("x")
    t.odd_symbol("th1")
    t.odd_symbol("th2")
    for _ in range(200):
        p = t.zero()
        for _ in range(rng.randint(1, 4)):
            coeff = QI(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                       Fraction(rng.randint(-3, 3)))
            ev = [("x", rng.randint(0, 3))] if rng.random() < 0.7 else []
            od = [n for n in ("th1", "th2") if rng.random() < 0.5]
            p = p + t.monomial(coeff, ev, od)
        blob = poly_to_json(p)
        q = poly_from_json(blob, t)
        assert q == p
        assert poly_to_json(q) == blob


def test_gaussian_literal():
    t = SymbolTable()
    t.even_symbol("x")
    ctx = Context(t)
    v = ctx.evaluate(parse("I*I"))
    assert v == t.scalar(-1)
    v2 = ctx.evaluate(parse("(1/2 + I)*x"))
    assert format_poly(v2) == "(1/2+I)*x"
