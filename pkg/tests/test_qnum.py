import sympy
import pytest

from vermahom.qnum import (
    bridge_check,
    q_binomial,
    q_factorial,
    q_integer,
    t_binomial,
    t_factorial,
    t_integer,
)
from vermahom.ring import LaurentPoly, NotDivisible, RingHom, VariableSet, parse_poly

VS = VariableSet.colored(1)


def P(text):
    return parse_poly(text, VS)


def test_t_integers():
    assert t_integer(1, VS) == 1
    assert t_integer(3, VS) == P("1 + tt + tt^2")
    assert t_integer(0, VS) == 0
    with pytest.raises(ValueError):
        t_integer(-1, VS)


def test_t_factorial_and_binomial():
    assert t_factorial(0, VS) == 1
    assert t_factorial(2, VS) == P("1 + tt")
    assert t_binomial(2, 1, VS) == P("1 + tt")
    for k in range(6):
        assert t_binomial(k, 0, VS) == 1
        assert t_binomial(k, k + 1, VS) == 0
        assert t_binomial(k, -1, VS) == 0


def test_q_numbers():
    assert q_integer(2, VS) == P("q + q^-1")
    assert q_integer(1, VS) == 1
    assert q_integer(4, VS) == P("q^3 + q + q^-1 + q^-3")


def test_q_binomial_against_sympy():
    q = sympy.Symbol("q")

    def qint(i):
        return sum(q ** (i - 1 - 2 * j) for j in range(i))

    def qfact(k):
        out = sympy.Integer(1)
        for i in range(1, k + 1):
            out *= qint(i)
        return out

    for k in range(7):
        for l in range(k + 1):
            want = sympy.cancel(qfact(k) / (qfact(l) * qfact(k - l)))
            got = q_binomial(k, l, VS).to_sympy()
            assert sympy.expand(got - want) == 0, (k, l)


def test_pascal_identity():
    tt = LaurentPoly.var(VS, "tt")
    for k in range(2, 9):
        for l in range(1, k):
            assert t_binomial(k, l, VS) == t_binomial(k - 1, l - 1, VS) + tt ** l * t_binomial(k - 1, l, VS)


def test_factorial_product_identity():
    for k in range(7):
        for l in range(7):
            assert t_factorial(k + l, VS) == t_factorial(k, VS) * t_factorial(l, VS) * t_binomial(k + l, l, VS)


def test_bridge_examples():
    h = RingHom.bridge(VS)
    assert h(t_integer(3, VS)) == P("1 + q^-2 + q^-4") == P("q^-2") * q_integer(3, VS)
    assert bridge_check(3, 0, 0)
    assert bridge_check(0, 0, 0)
    assert bridge_check(1, 2, 1)
    assert h(q_factorial(0, VS)) == 1


def test_bridge_all_small():
    assert all(bridge_check(i, k, l) for i in range(9) for k in range(9) for l in range(9))


def test_factorial_division_is_exact_or_signals():
    with pytest.raises(NotDivisible):
        t_integer(3, VS).exact_div(t_integer(2, VS))
