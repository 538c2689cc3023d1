import pytest

from vermahom.homology import (
    BASES,
    HVector,
    NonInvertible,
    arcs_to_codes_matrix,
    change_basis,
    fdiv_closed_form_n1,
    fork_to_code_matrix,
    from_code_matrix,
    loops_to_arcs_matrix,
    normalize_arcs,
    op_E,
    op_F1,
    op_Fdiv,
    op_K,
    op_Kinv,
    tens,
    to_code_matrix,
    untens,
)
from vermahom.qnum import t_binomial
from vermahom.ring import LaurentPoly, RingHom, VariableSet, parse_poly
from vermahom.verma import QVector, coproduct_action, weight_basis

V1 = VariableSet.colored(1)
V2 = VariableSet.colored(2)
V3 = VariableSet.colored(3)


def hv(vs, terms, basis="A"):
    n = len(next(iter(terms)))
    return HVector(n, vs, {k: parse_poly(c, vs) for k, c in terms.items()}, basis)


def column(m, k):
    basis = weight_basis(m.n, m.r_source)
    j = basis.index(k)
    return {basis[i]: m.rows[i][j] for i in range(len(basis)) if m.rows[i][j]}


def P(text, vs=V2):
    return parse_poly(text, vs)


def test_arcs_to_codes_small():
    m = arcs_to_codes_matrix(2, 1)
    assert column(m, (1, 0)) == {(1, 0): 1}
    assert column(m, (0, 1)) == {(0, 1): 1, (1, 0): 1}
    for r in range(4):
        assert arcs_to_codes_matrix(1, r).is_identity()


@pytest.mark.parametrize("r", [2, 3, 4])
def test_arcs_to_codes_two_strands_are_t_binomials(r):
    m = arcs_to_codes_matrix(2, r)
    for a in range(r + 1):
        b = r - a
        want = {(a + j, b - j): t_binomial(b, j, V2) for j in range(b + 1)}
        assert column(m, (a, b)) == want


@pytest.mark.parametrize("n,r", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_arcs_expression_matrix_unitriangular(n, r):
    m = arcs_to_codes_matrix(n, r)
    t = [list(c) for c in zip(*m.rows)]
    assert all(not t[i][j] for i in range(len(t)) for j in range(i))
    assert all(t[i][i] == 1 for i in range(len(t)))
    assert m.determinant() == 1


def test_normalize_arcs_entries():
    m = normalize_arcs(2, 3)
    for k in weight_basis(2, 3):
        assert column(m, k) == {k: LaurentPoly.var(V2, "s1", k[1])}
    assert normalize_arcs(1, 3).is_identity()
    assert column(normalize_arcs(3, 2), (0, 1, 1)) == {(0, 1, 1): parse_poly("s1^2*s2", V3)}


def test_fork_entries():
    assert column(fork_to_code_matrix(2, 2), (2, 0)) == {(2, 0): P("1 + tt")}
    assert column(fork_to_code_matrix(3, 3), (1, 1, 1)) == {(1, 1, 1): 1}
    assert column(fork_to_code_matrix(2, 3), (2, 1)) == {(2, 1): P("1 + tt")}


def test_loop_entries():
    for n, vs in ((1, V1), (2, V2)):
        assert column(loops_to_arcs_matrix(n, 0), (0,) * n) == {(0,) * n: 1}
    assert column(loops_to_arcs_matrix(1, 1), (1,)) == {(1,): parse_poly("1 - s1^-2", V1)}
    want = parse_poly("1 + tt", V1) * parse_poly("1 - s1^-2", V1) * parse_poly("1 - s1^-2*tt^-1", V1)
    assert column(loops_to_arcs_matrix(1, 2), (2,)) == {(2,): want}


def test_op_K():
    assert op_K(HVector.basis_vector((0, 0, 0), V3)) == hv(V3, {(0, 0, 0): "s1*s2*s3"})
    assert op_K(HVector.basis_vector((1, 1), V2)) == hv(V2, {(1, 1): "s1*s2*tt^2"})
    v = hv(V2, {(1, 1): "q - 3", (0, 2): "s1"})
    assert op_K(op_Kinv(v)) == v


def test_op_E():
    for k in range(1, 5):
        assert op_E(HVector.basis_vector((k,), V1)) == HVector.basis_vector((k - 1,), V1)
    assert not op_E(HVector.basis_vector((0, 0, 0), V3))
    assert op_E(HVector.basis_vector((0, 1), V2)) == hv(V2, {(0, 0): "s1"})


def test_op_F1():
    for k in range(4):
        want = parse_poly("s1", V1) * parse_poly(" + ".join(f"tt^{i}" for i in range(k + 1)), V1) \
            * parse_poly(f"1 - s1^-2*tt^-{k}", V1)
        assert op_F1(HVector.basis_vector((k,), V1)) == HVector(1, V1, {(k + 1,): want})
    assert not op_F1(HVector(2, V2, {}))
    got = op_F1(HVector.basis_vector((0, 0), V2))
    assert got == hv(V2, {(1, 0): "s1*s2^-1 - s1^-1*s2^-1", (0, 1): "s2 - s2^-1"})


def test_op_Fdiv():
    a = HVector.basis_vector((0, 2, 1), V3)
    assert op_Fdiv(1, a) == op_F1(a)
    f2 = op_Fdiv(2, HVector.basis_vector((0,), V1))
    square = op_F1(op_F1(HVector.basis_vector((0,), V1)))
    den = parse_poly("q + q*tt", V1)
    assert f2.scale(den) == square
    for l in range(1, 5):
        for k in range(5):
            got = op_Fdiv(l, HVector.basis_vector((k,), V1))
            assert got == HVector(1, V1, {(k + l,): fdiv_closed_form_n1(l, k, vs=V1)})


def test_divided_power_has_l_factors():
    # a product over m = 0..l would carry one factor too many
    wrong = fdiv_closed_form_n1(1, 0, vs=V1) * parse_poly("1 - s1^-2*tt^-1", V1)
    assert op_Fdiv(1, HVector.basis_vector((0,), V1)).terms[(1,)] != wrong


def test_tens_untens():
    assert tens(HVector.basis_vector((1, 0), V2)) == QVector.basis_vector((1, 0), V2)
    assert not tens(HVector(2, V2, {}))
    v = hv(V2, {(1, 1): "q - 3", (0, 2): "s1"})
    assert untens(tens(v)) == v
    h = RingHom.bridge(V2)
    a = HVector.basis_vector((0, 1), V2)
    assert tens(op_E(a)).map_coeffs(h) == coproduct_action("E", tens(a), opposite=True)


def test_plain_coproduct_does_not_intertwine():
    # E·A(0,1) = s1·A(0,0) needs K⊗E, i.e. the opposite coproduct
    a = HVector.basis_vector((0, 1), V2)
    assert tens(op_E(a)) != coproduct_action("E", tens(a))


def test_change_basis_examples():
    v = HVector.basis_vector((0, 1), V2, "Aprime")
    assert change_basis(v, "U") == hv(V2, {(0, 1): "1", (1, 0): "1"}, "U")
    assert change_basis(v, "Aprime") is v
    f = HVector.basis_vector((2, 0), V2, "Fork")
    assert change_basis(f, "U") == hv(V2, {(2, 0): "1 + tt"}, "U")


def test_change_basis_non_invertible():
    u = HVector.basis_vector((2, 0), V2, "U")
    with pytest.raises(NonInvertible, match=r"\(2\)_tt!"):
        change_basis(u, "Fork")
    with pytest.raises(NonInvertible):
        change_basis(HVector.basis_vector((1, 0), V2, "A"), "Loop")


def test_change_basis_roundtrips():
    v = hv(V3, {(0, 1, 1): "q - s2", (2, 0, 0): "tt^-1", (0, 0, 2): "3"})
    for target in ("U", "Aprime", "A"):
        for back in ("U", "Aprime", "A"):
            assert change_basis(change_basis(change_basis(v, target), back), "A") == v
    for down in ("Fork", "Loop"):
        x = HVector(3, V3, dict(v.terms), down)
        assert change_basis(change_basis(x, "A"), down) == x


def test_bases_and_json():
    assert BASES == ("U", "Aprime", "A", "Fork", "Loop")
    v = hv(V2, {(1, 1): "q - 3", (0, 2): "s1", (0, -1): "5"}, "Loop")
    assert (0, -1) not in v.terms
    assert HVector.from_json(v.to_json()) == v
    with pytest.raises(ValueError):
        op_E(HVector.basis_vector((0, 1), V2, "U"))


@pytest.mark.parametrize("basis", ["U", "Aprime", "A", "Fork", "Loop"])
@pytest.mark.parametrize("n,r", [(2, 2), (3, 2), (2, 3)])
def test_from_code_matrix_inverts(basis, n, r):
    fwd = to_code_matrix(basis, n, r)
    back = from_code_matrix(basis, n, r)
    assert (back @ fwd).is_identity()
    assert (fwd @ back).is_identity()
