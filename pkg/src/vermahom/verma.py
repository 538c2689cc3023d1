"""Integral Verma modules of the half-integral quantum sl2 and their tensor products.

A factor with color variable ``s`` has basis ``v_0, v_1, ...`` and

    K v_j = s q^(-2j) v_j,   E v_j = v_(j-1),
    F^(m) v_j = qbin(m+j, j) prod_(k<m) (s q^(-k-j) - s^-1 q^(j+k)) v_(j+m).

Tensor products act through the iterated coproduct

    Δ(K) = K⊗K,  Δ(E) = E⊗K + 1⊗E,
    Δ(F^(m)) = Σ_j q^(-j(m-j)) K^(j-m) F^(j) ⊗ F^(m-j),

or through the opposite coproduct when ``opposite=True``.  The homological
operators realize the opposite one.
"""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from vermahom.linalg import SparseVector, nullspace, rank
from vermahom.qnum import q_binomial
from vermahom.ring import LaurentPoly, VariableSet

# generator tags: "E", "K", "Kinv", ("F", m), ("Kpow", a)
Generator = object


class QVector(SparseVector):
    """Element of V^{s_1} ⊗ ... ⊗ V^{s_n}, keyed by (j_1, ..., j_n)."""

    __slots__ = ()

    def to_json_obj(self) -> dict:
        return {"n": self.n, "terms": self._json_terms()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict, vs: VariableSet | None = None) -> "QVector":
        terms = {tuple(t["index"]): LaurentPoly.from_json_obj(t["coeff"]) for t in obj["terms"]}
        if vs is None:
            vs = next(iter(terms.values())).vs if terms else VariableSet.colored(obj["n"])
        return cls(obj["n"], vs, terms)

    @classmethod
    def from_json(cls, text: str) -> "QVector":
        return cls.from_json_obj(json.loads(text))

    @classmethod
    def basis_vector(cls, idx: Sequence[int], vs: VariableSet) -> "QVector":
        return cls(len(idx), vs, {tuple(idx): LaurentPoly.one(vs)})


def weight_basis(n: int, r: int) -> list[tuple[int, ...]]:
    """All (j_1, ..., j_n) with sum r, lexicographically ordered."""
    return list(_compositions(n, r))


@lru_cache(maxsize=None)
def _compositions(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    if n < 1 or r < 0:
        raise ValueError(f"need n >= 1 and r >= 0, got n={n}, r={r}")
    out = []
    # stars and bars; sorted gives lexicographic order
    for bars in combinations(range(n + r - 1), n - 1):
        parts, prev = [], -1
        for b in bars + (n + r - 1,):
            parts.append(b - prev - 1)
            prev = b
        out.append(tuple(parts))
    return tuple(sorted(out))


# single factor


def _q(vs: VariableSet, e: int) -> LaurentPoly:
    return LaurentPoly.monomial(vs, {"q": e})


def k_eigenvalue(j: int, color: str, vs: VariableSet, power: int = 1) -> LaurentPoly:
    """(s q^-2j)^power."""
    return LaurentPoly.monomial(vs, {color: power, "q": -2 * j * power})


@lru_cache(maxsize=4096)
def f_coefficient(m: int, j: int, color: str, vs: VariableSet) -> LaurentPoly:
    """Scalar with F^(m) v_j = (scalar) v_(j+m)."""
    s = LaurentPoly.var(vs, color)
    sinv = LaurentPoly.var(vs, color, -1)
    c = q_binomial(m + j, j, vs)
    for k in range(m):
        c = c * (s * _q(vs, -k - j) - sinv * _q(vs, j + k))
    return c


def _act_single(gen, j: int, color: str, vs: VariableSet) -> tuple[int, LaurentPoly] | None:
    if gen == "E":
        return (j - 1, LaurentPoly.one(vs)) if j > 0 else None
    if gen == "K":
        return j, k_eigenvalue(j, color, vs)
    if gen == "Kinv":
        return j, k_eigenvalue(j, color, vs, -1)
    tag, m = gen
    if tag == "Kpow":
        return j, k_eigenvalue(j, color, vs, m)
    if tag == "F":
        if m == 0:
            return j, LaurentPoly.one(vs)
        return j + m, f_coefficient(m, j, color, vs)
    raise ValueError(f"unknown generator {gen!r}")


def verma_K(v: QVector, color: str = "s1") -> QVector:
    return _single(v, "K", color)


def verma_E(v: QVector, color: str = "s1") -> QVector:
    return _single(v, "E", color)


def verma_Fdiv(m: int, v: QVector, color: str = "s1") -> QVector:
    if m < 1:
        raise ValueError("divided power index must be positive")
    return _single(v, ("F", m), color)


def _single(v: QVector, gen, color: str) -> QVector:
    if v.n != 1:
        raise ValueError("single-factor action needs n = 1")
    out: dict[tuple[int, ...], LaurentPoly] = {}
    for (j,), c in v.terms.items():
        res = _act_single(gen, j, color, v.vs)
        if res is not None:
            jj, coeff = res
            out[(jj,)] = out.get((jj,), LaurentPoly.zero(v.vs)) + c * coeff
    return QVector(1, v.vs, out)


# coproduct


def _split(gen, opposite: bool):
    """Δ(gen) as a list of (scalar q-exponent, left word, right word).

    Words are tuples of single generators applied right to left.
    """
    if gen == "E":
        terms = [(0, ("E",), ("K",)), (0, (), ("E",))]
    elif gen in ("K", "Kinv"):
        terms = [(0, (gen,), (gen,))]
    else:
        tag, m = gen
        if tag == "Kpow":
            terms = [(0, (gen,), (gen,))]
        elif tag == "F":
            terms = []
            for j in range(m + 1):
                left = (("Kpow", j - m), ("F", j)) if j != m else (("F", j),)
                terms.append((-j * (m - j), left, (("F", m - j),)))
        else:
            raise ValueError(f"unknown generator {gen!r}")
    if opposite:
        terms = [(e, right, left) for e, left, right in terms]
    return terms


def _act_word(word, idx: tuple[int, ...], colors: Sequence[str], vs: VariableSet,
              opposite: bool, nesting: str) -> dict[tuple[int, ...], LaurentPoly]:
    cur = {idx: LaurentPoly.one(vs)}
    for gen in reversed(word):
        nxt: dict[tuple[int, ...], LaurentPoly] = {}
        for k, c in cur.items():
            for kk, cc in _act_gen(gen, k, tuple(colors), vs, opposite, nesting).items():
                v = nxt[kk] + c * cc if kk in nxt else c * cc
                if v:
                    nxt[kk] = v
                else:
                    del nxt[kk]
        cur = nxt
    return cur


@lru_cache(maxsize=65536)
def _act_gen_cached(gen, idx, colors, vs, opposite, nesting):
    return _act_gen_uncached(gen, idx, colors, vs, opposite, nesting)


def _act_gen(gen, idx, colors, vs, opposite, nesting):
    return _act_gen_cached(gen, idx, colors, vs, opposite, nesting)


def _act_gen_uncached(gen, idx, colors, vs, opposite, nesting):
    n = len(idx)
    if n == 1:
        res = _act_single(gen, idx[0], colors[0], vs)
        return {} if res is None else {(res[0],): res[1]}
    # left nesting splits (first n-1) ⊗ (last); right nesting splits (first) ⊗ (rest)
    cut = n - 1 if nesting == "left" else 1
    out: dict[tuple[int, ...], LaurentPoly] = {}
    for qe, lw, rw in _split(gen, opposite):
        left = _act_word(lw, idx[:cut], colors[:cut], vs, opposite, nesting)
        if not left:
            continue
        right = _act_word(rw, idx[cut:], colors[cut:], vs, opposite, nesting)
        if not right:
            continue
        scalar = _q(vs, qe)
        for lk, lc in left.items():
            for rk, rc in right.items():
                k = lk + rk
                v = lc * rc * scalar
                v = out[k] + v if k in out else v
                if v:
                    out[k] = v
                else:
                    del out[k]
    return out


def normalize_generator(x):
    if isinstance(x, str) and x.startswith("F") and x not in ("F",):
        return ("F", int(x[1:].strip("()")))
    if x == "F":
        return ("F", 1)
    if isinstance(x, list):
        return tuple(x)
    return x


def coproduct_action(x, v: QVector, colors: Sequence[str] | None = None, *,
                     opposite: bool = False, nesting: str = "left") -> QVector:
    """Act with a generator on an n-fold tensor product of Verma modules.

    ``x`` is "E", "K", "Kinv" or ("F", m).  Colors default to s1, ..., sn.
    """
    x = normalize_generator(x)
    colors = tuple(colors) if colors is not None else tuple(f"s{i}" for i in range(1, v.n + 1))
    if len(colors) != v.n:
        raise ValueError("one color per tensor factor is required")
    if nesting not in ("left", "right"):
        raise ValueError("nesting must be 'left' or 'right'")
    out: dict[tuple[int, ...], LaurentPoly] = {}
    for idx, c in v.terms.items():
        for k, cc in _act_gen(x, idx, colors, v.vs, opposite, nesting).items():
            val = out[k] + c * cc if k in out else c * cc
            if val:
                out[k] = val
            else:
                del out[k]
    return QVector(v.n, v.vs, out)


def generator_matrix(x, n: int, r: int, colors: Sequence[str], vs: VariableSet,
                     opposite: bool = False) -> list[list[LaurentPoly]]:
    """Dense matrix of a generator from W_{n,r} to the target weight space."""
    x = normalize_generator(x)
    src = weight_basis(n, r)
    shift = {"E": -1, "K": 0, "Kinv": 0}.get(x) if isinstance(x, str) else (x[1] if x[0] == "F" else 0)
    rt = r + shift
    if rt < 0:
        return []
    tgt = weight_basis(n, rt)
    pos = {b: i for i, b in enumerate(tgt)}
    zero = LaurentPoly.zero(vs)
    rows = [[zero] * len(src) for _ in tgt]
    for j, b in enumerate(src):
        img = coproduct_action(x, QVector.basis_vector(b, vs), colors, opposite=opposite)
        for k, c in img.terms.items():
            rows[pos[k]][j] = c
    return rows


def highest_weight_basis(n: int, r: int, colors: Sequence[str] | None = None,
                         vs: VariableSet | None = None, *, opposite: bool = False) -> list[QVector]:
    """Basis of Ker(E) ∩ W_{n,r} over the fraction field, as normalized integral vectors."""
    vs = vs or VariableSet.colored(n)
    colors = tuple(colors) if colors is not None else tuple(f"s{i}" for i in range(1, n + 1))
    src = weight_basis(n, r)
    if r == 0:
        return [QVector.basis_vector(b, vs) for b in src]
    mat = generator_matrix("E", n, r, colors, vs, opposite)
    vecs = nullspace(mat, len(src), vs)
    return [QVector(n, vs, dict(zip(src, vec))) for vec in vecs]


def e_rank(n: int, r: int, colors: Sequence[str] | None = None, vs: VariableSet | None = None,
           *, opposite: bool = False) -> int:
    vs = vs or VariableSet.colored(n)
    colors = tuple(colors) if colors is not None else tuple(f"s{i}" for i in range(1, n + 1))
    if r == 0:
        return 0
    return rank(generator_matrix("E", n, r, colors, vs, opposite), vs)
