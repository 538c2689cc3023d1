import random

import pytest

from vermahom.qnum import q_binomial
from vermahom.ring import LaurentPoly, VariableSet, parse_poly
from vermahom.verma import (
    QVector,
    coproduct_action,
    e_rank,
    highest_weight_basis,
    verma_E,
    verma_Fdiv,
    verma_K,
    weight_basis,
)

V1 = VariableSet.colored(1)
V2 = VariableSet.colored(2)
V3 = VariableSet.colored(3)


def vec(vs, terms):
    return QVector(len(next(iter(terms))), vs, {k: parse_poly(c, vs) for k, c in terms.items()})


def test_single_factor_examples():
    assert verma_K(QVector.basis_vector((2,), V1)) == vec(V1, {(2,): "s1*q^-4"})
    assert not verma_E(QVector.basis_vector((0,), V1))
    assert verma_Fdiv(1, QVector.basis_vector((0,), V1)) == vec(V1, {(1,): "s1 - s1^-1"})
    with pytest.raises(ValueError):
        verma_Fdiv(0, QVector.basis_vector((0,), V1))


def test_two_factor_examples():
    v01 = QVector.basis_vector((0, 1), V2)
    assert coproduct_action("K", v01) == vec(V2, {(0, 1): "s1*s2*q^-2"})
    assert not coproduct_action("E", QVector.basis_vector((0, 0), V2))
    got = coproduct_action(("F", 1), QVector.basis_vector((0, 0), V2))
    assert got == vec(V2, {(0, 1): "s1^-1*s2 - s1^-1*s2^-1", (1, 0): "s1 - s1^-1"})


def test_weight_basis():
    assert weight_basis(2, 1) == [(0, 1), (1, 0)]
    assert weight_basis(3, 0) == [(0, 0, 0)]
    assert len(weight_basis(3, 3)) == 10
    assert weight_basis(3, 3) == sorted(weight_basis(3, 3))
    with pytest.raises(ValueError):
        weight_basis(0, 1)


def _q(vs, e):
    return LaurentPoly.var(vs, "q", e)


@pytest.mark.parametrize("opposite", [False, True])
def test_defining_relations(opposite):
    for n, vs in ((1, V1), (2, V2), (3, V3)):
        act = lambda x, v: coproduct_action(x, v, opposite=opposite)
        for r in range(4):
            for k in weight_basis(n, r):
                v = QVector.basis_vector(k, vs)
                assert act("K", act("E", act("Kinv", v))) == act("E", v).scale(_q(vs, 2))
                assert act("K", act(("F", 1), act("Kinv", v))) == act(("F", 1), v).scale(_q(vs, -2))
                assert act("E", act(("F", 1), v)) - act(("F", 1), act("E", v)) == act("K", v) - act("Kinv", v)
                for m in range(3):
                    fm = (lambda w: w) if m == 0 else (lambda w: act(("F", m), w))
                    lhs = act("E", act(("F", m + 1), v)) - act(("F", m + 1), act("E", v))
                    rhs = fm(act("K", v)).scale(_q(vs, -m)) - fm(act("Kinv", v)).scale(_q(vs, m))
                    assert lhs == rhs
                for a in range(1, 3):
                    for b in range(1, 3):
                        assert act(("F", a), act(("F", b), v)) == act(("F", a + b), v).scale(q_binomial(a + b, a, vs))


def test_grading():
    for k in weight_basis(3, 2):
        v = QVector.basis_vector(k, V3)
        assert coproduct_action("E", v).degrees() <= {1}
        assert coproduct_action(("F", 2), v).degrees() == {4}
        s = parse_poly("s1*s2*s3*q^-4", V3)
        assert coproduct_action("K", v) == v.scale(s)


def test_coassociativity():
    rng = random.Random(3)
    for _ in range(12):
        x = rng.choice(["E", ("F", 1), ("F", 2), "K"])
        k = rng.choice(weight_basis(3, rng.randrange(0, 4)))
        v = QVector.basis_vector(k, V3)
        assert coproduct_action(x, v, nesting="left") == coproduct_action(x, v, nesting="right")


def test_highest_weight_vectors():
    assert highest_weight_basis(1, 2) == []
    (w,) = highest_weight_basis(2, 1)
    assert not coproduct_action("E", w)
    assert len(highest_weight_basis(2, 2)) == 1
    assert e_rank(2, 2) == 2
    for n, r in ((2, 3), (3, 2)):
        vecs = highest_weight_basis(n, r)
        assert len(vecs) == len(weight_basis(n, r)) - e_rank(n, r)
        assert all(not coproduct_action("E", v) for v in vecs)


def test_json_roundtrip():
    v = vec(V2, {(0, 1): "s1^-1*s2 - 7", (1, 0): "q"})
    assert QVector.from_json(v.to_json()) == v
    assert v.to_json() == QVector.from_json(v.to_json()).to_json()
