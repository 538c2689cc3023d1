"""The homological module H_r as a free module on compositions of r into n parts.

Five bases share the same index set: code sequences ``U``, multi-arcs
``Aprime``, normalized multi-arcs ``A``, multiforks ``Fork`` and r-loops
``Loop``.  Operators are implemented in ``A``; the other bases are reached
through the change-of-basis matrices below.  ``tt`` stands for minus the
deck variable.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Sequence

from vermahom.linalg import OperatorMatrix, SparseVector, identity, poly_gcd
from vermahom.qnum import t_binomial, t_factorial, t_integer
from vermahom.ring import LaurentPoly, NotDivisible, VariableSet
from vermahom.verma import QVector, weight_basis

BASES = ("U", "Aprime", "A", "Fork", "Loop")


class NonInvertible(ArithmeticError):
    """A change of basis would need to invert a non-unit of the coefficient ring."""


class HVector(SparseVector):
    """Element of ⊕_r H_r in one of the named bases.

    Indices with a negative part are dropped at construction, which encodes
    the convention A(..., -1, ...) = 0.
    """

    __slots__ = ("basis",)

    def __init__(self, n: int, vs: VariableSet, terms=None, basis: str = "A"):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        super().__init__(n, vs, terms)
        self.basis = basis

    def _like(self, terms):
        return HVector(self.n, self.vs, terms, self.basis)

    def _tag(self):
        return self.basis

    @classmethod
    def basis_vector(cls, idx: Sequence[int], vs: VariableSet, basis: str = "A") -> "HVector":
        return cls(len(idx), vs, {tuple(idx): LaurentPoly.one(vs)}, basis)

    def to_json_obj(self) -> dict:
        return {"n": self.n, "basis": self.basis, "terms": self._json_terms()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict, vs: VariableSet | None = None) -> "HVector":
        terms = {tuple(t["index"]): LaurentPoly.from_json_obj(t["coeff"]) for t in obj["terms"]}
        if vs is None:
            vs = next(iter(terms.values())).vs if terms else VariableSet.colored(obj["n"])
        return cls(obj["n"], vs, terms, obj.get("basis", "A"))

    @classmethod
    def from_json(cls, text: str) -> "HVector":
        return cls.from_json_obj(json.loads(text))


def _defaults(n: int, colors, vs):
    if colors is None:
        colors = tuple(f"s{i}" for i in range(1, n + 1))
    colors = tuple(colors)
    if len(colors) != n:
        raise ValueError(f"{len(colors)} colors given for n={n}")
    if vs is None:
        vs = VariableSet.colored(n) if all(c.startswith("s") and c[1:].isdigit() for c in colors) \
            else VariableSet(("q", "tt") + tuple(dict.fromkeys(colors)))
    return colors, vs


def _mono(vs: VariableSet, **exps: int) -> LaurentPoly:
    return LaurentPoly.monomial(vs, exps)


def _var(vs, name, e=1):
    return LaurentPoly.var(vs, name, e)


def _tt(vs, e):
    return LaurentPoly.var(vs, "tt", e)


# change-of-basis matrices


def _diag(entries, n, r, vs, src, tgt, colors) -> OperatorMatrix:
    m = identity(len(entries), vs)
    for i, e in enumerate(entries):
        m[i][i] = e
    return OperatorMatrix(tuple(tuple(row) for row in m), vs, n, r, r, src, tgt, colors, colors)


def arc_expansion(k: Sequence[int], vs: VariableSet) -> dict[tuple[int, ...], LaurentPoly]:
    """Code-sequence coordinates of the multi-arc A'(k).

    Nested sum over l_{n-1}, ..., l_1 with l_i ≤ k_i + l_{i+1} (l_0 = l_n = 0);
    the target part i is k_i + l_{i+1} - l_i with weight ∏ binom_tt(k_i + l_{i+1}, l_{i+1}).
    """
    n = len(k)
    out: dict[tuple[int, ...], LaurentPoly] = {}
    ls = [0] * (n + 1)

    def rec(i: int, coeff: LaurentPoly):
        # choose l_i given l_{i+1}
        if i == 0:
            target = tuple(k[j] + ls[j + 1] - ls[j] for j in range(n))
            out[target] = out[target] + coeff if target in out else coeff
            return
        top = k[i] + ls[i + 1]
        for li in range(top + 1):
            ls[i] = li
            rec(i - 1, coeff * t_binomial(top, li, vs))
        ls[i] = 0

    rec(n - 1, LaurentPoly.one(vs))
    return {t: c for t, c in out.items() if c}


@lru_cache(maxsize=None)
def arcs_to_codes_matrix(n: int, r: int, vs: VariableSet | None = None) -> OperatorMatrix:
    """Column k holds the U-coordinates of A'(k).

    In lexicographic order every A'(k) is U(k) plus lex-larger terms, so this
    is lower unitriangular; its transpose is the upper-triangular expression
    matrix (rows = multi-arcs).
    """
    vs = vs or VariableSet.colored(n)
    basis = weight_basis(n, r)
    pos = {b: i for i, b in enumerate(basis)}
    zero = LaurentPoly.zero(vs)
    rows = [[zero] * len(basis) for _ in basis]
    for j, k in enumerate(basis):
        for t, c in arc_expansion(k, vs).items():
            rows[pos[t]][j] = c
    return OperatorMatrix(tuple(tuple(r_) for r_ in rows), vs, n, r, r, "Aprime", "U")


def arc_normalization(k: Sequence[int], colors: Sequence[str], vs: VariableSet) -> LaurentPoly:
    """Scalar with A(k) = scalar · A'(k): ∏_{p<n-1} color_p^(k_{p+1} + ... + k_{n-1})."""
    exps: dict[str, int] = {}
    n = len(k)
    for p in range(n - 1):
        e = sum(k[p + 1:])
        if e:
            exps[colors[p]] = exps.get(colors[p], 0) + e
    return LaurentPoly.monomial(vs, exps)


@lru_cache(maxsize=None)
def normalize_arcs(n: int, r: int, colors: tuple[str, ...] | None = None,
                   vs: VariableSet | None = None) -> OperatorMatrix:
    """Diagonal matrix taking A-coordinates to A'-coordinates."""
    colors, vs = _defaults(n, colors, vs)
    entries = [arc_normalization(k, colors, vs) for k in weight_basis(n, r)]
    return _diag(entries, n, r, vs, "A", "Aprime", colors)


def fork_factor(k: Sequence[int], vs: VariableSet) -> LaurentPoly:
    c = LaurentPoly.one(vs)
    for ki in k:
        c = c * t_factorial(ki, vs)
    return c


@lru_cache(maxsize=None)
def fork_to_code_matrix(n: int, r: int, vs: VariableSet | None = None) -> OperatorMatrix:
    """F(k) = ∏ (k_i)_tt! · U(k)."""
    vs = vs or VariableSet.colored(n)
    entries = [fork_factor(k, vs) for k in weight_basis(n, r)]
    return _diag(entries, n, r, vs, "Fork", "U", ())


def loop_factor(k: Sequence[int], colors: Sequence[str], vs: VariableSet) -> LaurentPoly:
    """∏_i (k_i)_tt! ∏_{m<k_i} (1 - s_i^-2 tt^-m)."""
    one = LaurentPoly.one(vs)
    c = one
    for ki, col in zip(k, colors):
        c = c * t_factorial(ki, vs)
        for m in range(ki):
            c = c * (one - _mono(vs, **{col: -2, "tt": -m}))
    return c


@lru_cache(maxsize=None)
def loops_to_arcs_matrix(n: int, r: int, colors: tuple[str, ...] | None = None,
                         vs: VariableSet | None = None) -> OperatorMatrix:
    colors, vs = _defaults(n, colors, vs)
    entries = [loop_factor(k, colors, vs) for k in weight_basis(n, r)]
    return _diag(entries, n, r, vs, "Loop", "Aprime", colors)


@lru_cache(maxsize=None)
def to_code_matrix(basis: str, n: int, r: int, colors: tuple[str, ...] | None = None,
                   vs: VariableSet | None = None) -> OperatorMatrix:
    """Matrix taking ``basis``-coordinates to U-coordinates."""
    colors, vs = _defaults(n, colors, vs)
    if basis == "U":
        dim = len(weight_basis(n, r))
        return OperatorMatrix(tuple(tuple(x) for x in identity(dim, vs)), vs, n, r, r, "U", "U")
    if basis == "Fork":
        return fork_to_code_matrix(n, r, vs)
    m = arcs_to_codes_matrix(n, r, vs)
    if basis == "Aprime":
        return m
    if basis == "A":
        return m @ normalize_arcs(n, r, colors, vs)
    if basis == "Loop":
        return m @ loops_to_arcs_matrix(n, r, colors, vs)
    raise ValueError(f"unknown basis {basis!r}")


@lru_cache(maxsize=None)
def _arcs_inverse(n: int, r: int, vs: VariableSet) -> OperatorMatrix:
    return arcs_to_codes_matrix(n, r, vs).inverse()


@lru_cache(maxsize=None)
def from_code_matrix(basis: str, n: int, r: int, colors: tuple[str, ...] | None = None,
                     vs: VariableSet | None = None) -> OperatorMatrix:
    """Inverse of ``to_code_matrix``: U-coordinates to ``basis``-coordinates.

    Every code matrix is (unitriangular) x (diagonal), so the inverse is the
    cached unitriangular inverse with rows divided by the diagonal; the
    denominator is the lcm of the diagonal entries.
    """
    colors, vs = _defaults(n, colors, vs)
    fwd = to_code_matrix(basis, n, r, colors, vs)
    if basis == "U":
        return fwd
    if basis == "Fork":
        diag, tri = [fwd.rows[i][i] for i in range(len(fwd.rows))], None
    else:
        tri = _arcs_inverse(n, r, vs)
        if basis == "Aprime":
            return tri
        side = normalize_arcs if basis == "A" else loops_to_arcs_matrix
        d = side(n, r, colors, vs)
        diag = [d.rows[i][i] for i in range(len(d.rows))]
    den = LaurentPoly.one(vs)
    for x in dict.fromkeys(diag):
        if x.is_unit():
            continue
        den = den * x.exact_div(poly_gcd([den, x], vs))
    zero = LaurentPoly.zero(vs)
    rows = []
    for i, x in enumerate(diag):
        scale = den.exact_div(x)
        if tri is None:
            rows.append(tuple(scale if j == i else zero for j in range(len(diag))))
        else:
            rows.append(tuple(y * scale if y else y for y in tri.rows[i]))
    return OperatorMatrix(tuple(rows), vs, n, r, r, "U", basis, fwd.colors_target, fwd.colors_source, den)


def _divide_diag(coords, entries, label):
    out = []
    for x, d in zip(coords, entries):
        if not x:
            out.append(x)
            continue
        try:
            out.append(x.exact_div(d))
        except NotDivisible:
            raise NonInvertible(f"{label} factor {d} is not a unit and does not divide {x}") from None
    return out


def _factor_name(k):
    parts = [f"({ki})_tt!" for ki in k if ki > 1]
    return "·".join(parts) or "1"


def change_basis(v: HVector, target: str, colors: Sequence[str] | None = None) -> HVector:
    """Re-express ``v`` in ``target``; every graded piece is converted separately.

    Moving to Fork or Loop divides by non-units; this succeeds only when the
    division is exact and raises NonInvertible otherwise.
    """
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if target == v.basis:
        return v
    colors, vs = _defaults(v.n, colors, v.vs)
    out: dict[tuple[int, ...], LaurentPoly] = {}
    for r in sorted(v.degrees()):
        basis = weight_basis(v.n, r)
        coords = v.component(r).coords(basis)
        ucoords = _apply(to_code_matrix(v.basis, v.n, r, colors, vs), coords)
        if target == "U":
            res = ucoords
        elif target == "Fork":
            res = []
            for x, k in zip(ucoords, basis):
                d = fork_factor(k, vs)
                if x and not d.is_unit():
                    try:
                        x = x.exact_div(d)
                    except NotDivisible:
                        raise NonInvertible(
                            f"{_factor_name(k)} = {d} is not a unit; cannot express {x}·U{k} in the fork basis"
                        ) from None
                elif x:
                    x = x * d.inverse()
                res.append(x)
        else:
            acoords = _apply(_arcs_inverse(v.n, r, vs), ucoords)
            if target == "Aprime":
                res = acoords
            elif target == "A":
                res = [x * arc_normalization(k, colors, vs).inverse() for x, k in zip(acoords, basis)]
            else:
                res = _divide_diag(acoords, [loop_factor(k, colors, vs) for k in basis], "loop")
        for k, x in zip(basis, res):
            if x:
                out[k] = x
    return HVector(v.n, vs, out, target)


def _apply(m: OperatorMatrix, coords: list[LaurentPoly]) -> list[LaurentPoly]:
    zero = LaurentPoly.zero(m.vs)
    out = []
    for row in m.rows:
        acc = zero
        for a, x in zip(row, coords):
            if a and x:
                acc = acc + a * x
        out.append(acc)
    if not m.denominator == 1:
        out = [x.exact_div(m.denominator) if x else x for x in out]
    return out


# operators in the A basis


def _require_a(v: HVector):
    if v.basis != "A":
        raise ValueError(f"operator expects the A basis, got {v.basis}")


def _accumulate(out, k, c):
    if k in out:
        c = out[k] + c
        if c:
            out[k] = c
        else:
            del out[k]
    elif c:
        out[k] = c


def op_K(v: HVector, colors: Sequence[str] | None = None, power: int = 1) -> HVector:
    """K acts on H_r by (∏ s_i) tt^r."""
    colors, vs = _defaults(v.n, colors, v.vs)
    exps: dict[str, int] = {}
    for c in colors:
        exps[c] = exps.get(c, 0) + power
    base = LaurentPoly.monomial(vs, exps)
    return v._like({k: c * base * _tt(vs, power * sum(k)) for k, c in v.terms.items()})


def op_Kinv(v: HVector, colors: Sequence[str] | None = None) -> HVector:
    return op_K(v, colors, power=-1)


def op_E(v: HVector, colors: Sequence[str] | None = None) -> HVector:
    """E·A(k) = Σ_i (s_1 ... s_i) tt^(k_0 + ... + k_{i-1}) A(k - e_i)."""
    _require_a(v)
    colors, vs = _defaults(v.n, colors, v.vs)
    out: dict[tuple[int, ...], LaurentPoly] = {}
    for k, c in v.terms.items():
        exps: dict[str, int] = {}
        before = 0
        for i, ki in enumerate(k):
            if ki > 0:
                coeff = LaurentPoly.monomial(vs, {**exps, "tt": before})
                _accumulate(out, k[:i] + (ki - 1,) + k[i + 1:], c * coeff)
            exps[colors[i]] = exps.get(colors[i], 0) + 1
            before += ki
    return HVector(v.n, vs, out, "A")


def op_F1(v: HVector, colors: Sequence[str] | None = None) -> HVector:
    """F^(1)·A(k) = Σ_i (∏_{p>i} s_p^-1) tt^(-Σ_{j>i} k_j) s_i (k_i+1)_tt (1 - s_i^-2 tt^-k_i) A(k + e_i)."""
    return _extend(v, colors, lambda k, colors, vs: _f1_image(k, colors, vs))


def op_Fdiv(m: int, v: HVector, colors: Sequence[str] | None = None) -> HVector:
    """F^(m) = (F^(1))^m / (q^(m(m-1)/2) (m)_tt!), by exact division.

    The division is done on the image of each basis vector.  NotDivisible
    would contradict the divided-power property.
    """
    if m < 1:
        raise ValueError("divided power index must be positive")
    return _extend(v, colors, lambda k, colors, vs: _fdiv_image(m, k, colors, vs))


def _extend(v: HVector, colors, image) -> HVector:
    _require_a(v)
    colors, vs = _defaults(v.n, colors, v.vs)
    out: dict[tuple[int, ...], LaurentPoly] = {}
    for k, c in v.terms.items():
        for kk, cc in image(k, colors, vs):
            _accumulate(out, kk, c * cc)
    return HVector(v.n, vs, out, "A")


@lru_cache(maxsize=None)
def _f1_image(k: tuple[int, ...], colors: tuple[str, ...], vs: VariableSet):
    one = LaurentPoly.one(vs)
    n = len(k)
    out = []
    for i in range(n):
        exps: dict[str, int] = {}
        for p in range(i + 1, n):
            exps[colors[p]] = exps.get(colors[p], 0) - 1
        exps[colors[i]] = exps.get(colors[i], 0) + 1
        exps["tt"] = -sum(k[i + 1:])
        coeff = LaurentPoly.monomial(vs, exps) * t_integer(k[i] + 1, vs)
        coeff = coeff * (one - _mono(vs, **{colors[i]: -2, "tt": -k[i]}))
        out.append((k[:i] + (k[i] + 1,) + k[i + 1:], coeff))
    return tuple(out)


@lru_cache(maxsize=None)
def _fdiv_image(m: int, k: tuple[int, ...], colors: tuple[str, ...], vs: VariableSet):
    if m == 1:
        return _f1_image(k, colors, vs)
    w = HVector.basis_vector(k, vs)
    for _ in range(m):
        w = _extend(w, colors, _f1_image)
    den = LaurentPoly.var(vs, "q", m * (m - 1) // 2) * t_factorial(m, vs)
    return tuple((kk, c.exact_div(den)) for kk, c in sorted(w.terms.items()))


def fdiv_closed_form_n1(l: int, k: int, color: str = "s1", vs: VariableSet | None = None) -> LaurentPoly:
    """n = 1 closed form: F^(l)·A(k) = binom_tt(k+l, k) q^(-l(l-1)/2) s^l ∏_{m=k}^{k+l-1} (1 - s^-2 tt^-m) A(k+l)."""
    vs = vs or VariableSet.colored(1)
    one = LaurentPoly.one(vs)
    c = t_binomial(k + l, k, vs) * LaurentPoly.monomial(vs, {"q": -l * (l - 1) // 2, color: l})
    for m in range(k, k + l):
        c = c * (one - _mono(vs, **{color: -2, "tt": -m}))
    return c


def tens(v: HVector) -> QVector:
    """A(k_0, ..., k_{n-1}) -> v_{k_0} ⊗ ... ⊗ v_{k_{n-1}}, coefficients unchanged."""
    _require_a(v)
    return QVector(v.n, v.vs, dict(v.terms))


def untens(w: QVector) -> HVector:
    return HVector(w.n, w.vs, dict(w.terms), "A")


def dimension(n: int, r: int) -> int:
    return len(weight_basis(n, r))
