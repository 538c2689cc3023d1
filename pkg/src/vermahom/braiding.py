"""Braid group actions on weight spaces, quantum and homological.

The generator σ_i acts on tensor positions i, i+1 (1-based) by the
normalized braiding.  On ``v_a ⊗ v_b`` with colors ``(c, d)``::

    v_a ⊗ v_b  ->  Σ_l q^(l(l-1)/2) · Fcoef_c(l, a) · q^(2xy) c^-x d^-y · v_x ⊗ v_y,
    x = b - l,  y = a + l,

i.e. swap, apply Σ E^l ⊗ F^(l), then the integral residue of
q^(-αα'/2) q^(H⊗H/2).  The output factors carry colors ``(d, c)``.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from vermahom.homology import HVector, _defaults, from_code_matrix, to_code_matrix, untens
from vermahom.linalg import OperatorMatrix, identity, in_span, mat_mul, poly_gcd, rank
from vermahom.qnum import t_binomial
from vermahom.ring import LaurentPoly, RingHom, VariableSet, poly_evaluate
from vermahom.verma import f_coefficient, generator_matrix, highest_weight_basis, weight_basis

BRAID_BASES = ("verma", "VermaTensor", "A", "Aprime", "U", "Fork", "Loop")


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for i, sign in self.letters:
            if not 1 <= i <= self.n - 1:
                raise ValueError(f"generator index {i} out of range for {self.n} strands")
            if sign not in (1, -1):
                raise ValueError("letter sign must be +1 or -1")

    @classmethod
    def parse(cls, text: str, n: int) -> "BraidWord":
        """Parse ``"s1 s2^-1 s1"``; an empty string is the trivial braid."""
        letters = []
        for tok in text.split():
            body, _, exp = tok.partition("^")
            if not body.startswith("s") or not body[1:].isdigit():
                raise ValueError(f"bad braid token {tok!r}")
            if exp not in ("", "1", "-1", "+1"):
                raise ValueError(f"bad exponent in {tok!r}")
            letters.append((int(body[1:]), -1 if exp == "-1" else 1))
        return cls(n, tuple(letters))

    def __str__(self) -> str:
        return " ".join(f"s{i}" if e > 0 else f"s{i}^-1" for i, e in self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise ValueError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple((i, -e) for i, e in reversed(self.letters)))

    def permutation(self) -> tuple[int, ...]:
        """Image positions: strand starting at p ends at perm[p] (0-based)."""
        perm = list(range(self.n))
        # rightmost letter acts first
        for i, _ in reversed(self.letters):
            perm = [i if p == i - 1 else i - 1 if p == i else p for p in perm]
        return tuple(perm)

    def is_pure(self) -> bool:
        return self.permutation() == tuple(range(self.n))

    def permute_colors(self, colors: Sequence[str]) -> tuple[str, ...]:
        out = [None] * self.n
        for p, target in enumerate(self.permutation()):
            out[target] = colors[p]
        return tuple(out)


def random_pure_word(n: int, max_len: int, rng: random.Random) -> BraidWord:
    """Random pure braid: a product of squared conjugated generators."""
    letters: list[tuple[int, int]] = []
    while True:
        i = rng.randrange(1, n)
        e = rng.choice((1, -1))
        conj = [(rng.randrange(1, n), rng.choice((1, -1))) for _ in range(rng.randrange(0, 2))]
        block = conj + [(i, e), (i, e)] + [(j, -s) for j, s in reversed(conj)]
        if len(letters) + len(block) > max_len:
            break
        letters.extend(block)
    if not letters:
        letters = [(1, 1), (1, 1)]
    return BraidWord(n, tuple(letters))


def random_word(n: int, length: int, rng: random.Random) -> BraidWord:
    return BraidWord(n, tuple((rng.randrange(1, n), rng.choice((1, -1))) for _ in range(length)))


# local two-factor blocks


def _qmono(vs, **exps):
    return LaurentPoly.monomial(vs, exps)


@lru_cache(maxsize=None)
def local_braiding(a: int, b: int, c: str, d: str, vs: VariableSet) -> tuple[tuple[tuple[int, int], LaurentPoly], ...]:
    """Quantum braiding on v_a ⊗ v_b (colors c, d) as ((x, y), coefficient) pairs."""
    out = []
    for l in range(b + 1):
        x, y = b - l, a + l
        coeff = f_coefficient(l, a, c, vs) if l else LaurentPoly.one(vs)
        exps = {"q": l * (l - 1) // 2 + 2 * x * y}
        exps[c] = exps.get(c, 0) - x
        exps[d] = exps.get(d, 0) - y
        coeff = coeff * LaurentPoly.monomial(vs, exps)
        if coeff:
            out.append(((x, y), coeff))
    return tuple(out)


@lru_cache(maxsize=None)
def local_braiding_homological(a: int, b: int, c: str, d: str, vs: VariableSet):
    """Homological σ on A(a, b) with colors (c, d), generic in tt.

    A(a, b) -> Σ_l tt^(-(a+l)(b-l)) c^(2l-b) d^(-(a+l)) binom_tt(a+l, l)
               ∏_{m=a}^{a+l-1} (1 - c^-2 tt^-m) A(b-l, a+l).
    """
    one = LaurentPoly.one(vs)
    out = []
    for l in range(b + 1):
        x, y = b - l, a + l
        exps = {"tt": -y * x}
        exps[c] = exps.get(c, 0) + 2 * l - b
        exps[d] = exps.get(d, 0) - y
        coeff = LaurentPoly.monomial(vs, exps) * t_binomial(a + l, l, vs)
        for m in range(a, a + l):
            coeff = coeff * (one - _qmono(vs, **{c: -2, "tt": -m}))
        if coeff:
            out.append(((x, y), coeff))
    return tuple(out)


def rmatrix_pair(colors: tuple[str, str], r: int, vs: VariableSet | None = None, *,
                 homological: bool = False) -> OperatorMatrix:
    """Matrix of the braiding on the subweight-r block of V^c ⊗ V^d."""
    c, d = colors
    vs = vs or _defaults(2, colors, None)[1]
    basis = weight_basis(2, r)
    pos = {k: i for i, k in enumerate(basis)}
    zero = LaurentPoly.zero(vs)
    rows = [[zero] * len(basis) for _ in basis]
    local = local_braiding_homological if homological else local_braiding
    for j, (a, b) in enumerate(basis):
        for xy, coeff in local(a, b, c, d, vs):
            rows[pos[xy]][j] = coeff
    tag = "A" if homological else "verma"
    return OperatorMatrix(tuple(tuple(x) for x in rows), vs, 2, r, r, tag, tag, (c, d), (d, c))


@lru_cache(maxsize=None)
def rmatrix_inverse_pair(colors: tuple[str, str], r: int, vs: VariableSet | None = None, *,
                         homological: bool = False) -> OperatorMatrix:
    """Exact inverse of the block; maps colors (d, c) back to (c, d)."""
    return rmatrix_pair(colors, r, vs, homological=homological).inverse()


@lru_cache(maxsize=None)
def _local_inverse(a: int, b: int, c: str, d: str, vs: VariableSet, homological: bool):
    """Inverse braiding on v_a ⊗ v_b whose colors are (c, d); output colors (d, c).

    It inverts the forward block for colors (d, c).
    """
    p = a + b
    inv = rmatrix_inverse_pair((d, c), p, vs, homological=homological)
    if inv.denominator != 1:
        raise ArithmeticError(f"braiding block at subweight {p} is not invertible over the Laurent ring")
    basis = weight_basis(2, p)
    j = basis.index((a, b))
    return tuple((basis[i], inv.rows[i][j]) for i in range(len(basis)) if inv.rows[i][j])


def generator_block(i: int, sign: int, n: int, r: int, colors: Sequence[str], vs: VariableSet, *,
                    homological: bool = False) -> OperatorMatrix:
    """σ_i^sign on W_{n,r}, acting on positions i, i+1 (1-based)."""
    colors = tuple(colors)
    basis = weight_basis(n, r)
    pos = {k: j for j, k in enumerate(basis)}
    zero = LaurentPoly.zero(vs)
    rows = [[zero] * len(basis) for _ in basis]
    p = i - 1
    c, d = colors[p], colors[p + 1]
    for j, k in enumerate(basis):
        a, b = k[p], k[p + 1]
        if sign > 0:
            local = (local_braiding_homological if homological else local_braiding)(a, b, c, d, vs)
        else:
            local = _local_inverse(a, b, c, d, vs, homological)
        for (x, y), coeff in local:
            rows[pos[k[:p] + (x, y) + k[p + 2:]]][j] = coeff
    new_colors = colors[:p] + (d, c) + colors[p + 2:]
    tag = "A" if homological else "verma"
    return OperatorMatrix(tuple(tuple(x) for x in rows), vs, n, r, r, tag, tag, colors, new_colors)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("VH_THREADS", "1")))
    except ValueError:
        return 1


def braid_matrix(word: BraidWord, r: int, basis: str = "verma", colors: Sequence[str] | None = None,
                 vs: VariableSet | None = None, *, homological: bool = False) -> OperatorMatrix:
    """Matrix of ``word`` on W_{n,r}; the word acts as written on column vectors.

    ``basis`` is "verma" (alias "VermaTensor"), "A", "Aprime", "U", "Fork" or
    "Loop"; the last two may carry a denominator.  The A
    matrix equals the Verma matrix under tens.  With ``homological=True`` the
    tt-generic homological formula is used instead (A basis and derived ones).
    """
    if basis not in BRAID_BASES:
        raise ValueError(f"unknown basis {basis!r}")
    n = word.n
    colors, vs = _defaults(n, colors, vs)
    # rightmost letter first
    steps = []
    cur = colors
    for i, e in reversed(word.letters):
        steps.append((i, e, cur))
        cur = cur[: i - 1] + (cur[i], cur[i - 1]) + cur[i + 1:]
    gens: list[OperatorMatrix]
    work = lambda st: generator_block(st[0], st[1], n, r, st[2], vs, homological=homological)
    if _threads() > 1 and len(steps) > 1:
        with ThreadPoolExecutor(_threads()) as pool:
            gens = list(pool.map(work, steps))
    else:
        gens = [work(st) for st in steps]
    tag = "A" if homological else "verma"
    dim = len(weight_basis(n, r))
    result = OperatorMatrix(tuple(tuple(x) for x in identity(dim, vs)), vs, n, r, r, tag, tag, colors, colors)
    for g in gens:
        result = g @ result
    if basis in ("verma", "VermaTensor"):
        if homological:
            raise ValueError("the homological formula lives on the homology side; use basis A or U")
        return result
    result = OperatorMatrix(result.rows, vs, n, r, r, "A", "A", result.colors_source,
                            result.colors_target, result.denominator)
    if basis == "A":
        return result
    # conjugate through code sequences: X <- U <- A <- A <- U <- X
    a_to_u_tgt = to_code_matrix("A", n, r, result.colors_target, vs)
    in_u = a_to_u_tgt @ result @ from_code_matrix("A", n, r, result.colors_source, vs)
    if basis != "U":
        x_src = to_code_matrix(basis, n, r, result.colors_source, vs)
        in_u = from_code_matrix(basis, n, r, result.colors_target, vs) @ in_u @ x_src
    return _reduce_denominator(OperatorMatrix(in_u.rows, vs, n, r, r, basis, basis, result.colors_source,
                                              result.colors_target, in_u.denominator))


def _reduce_denominator(m: OperatorMatrix) -> OperatorMatrix:
    """Cancel the common factor of the entries and the denominator."""
    if m.denominator == 1:
        return m
    g = poly_gcd([x for row in m.rows for x in row if x] + [m.denominator], m.vs)
    rows = [[x.exact_div(g) if x else x for x in row] for row in m.rows]
    den = m.denominator.exact_div(g)
    if den.is_unit():
        inv = den.inverse()
        rows = [[x * inv for x in row] for row in rows]
        den = LaurentPoly.one(m.vs)
    else:
        # make the denominator an honest polynomial with positive leading term
        u = LaurentPoly.from_exponents(m.vs, [([-e for e in den.min_exponents()],
                                                 1 if den.terms()[-1][1] > 0 else -1)])
        rows = [[x * u for x in row] for row in rows]
        den = den * u
    return m.with_rows(rows, denominator=den)


def specialize_matrix(m: OperatorMatrix, hom: RingHom | None = None, values: Mapping[str, object] | None = None):
    """Apply a ring homomorphism entrywise, or evaluate numerically.

    Numeric evaluation returns a list of rows of numbers (denominator divided out).
    """
    if hom is not None:
        return m.map_entries(hom)
    if values is None:
        raise ValueError("need a homomorphism or numeric values")
    den = poly_evaluate(m.denominator, values)
    if den == 0:
        raise ZeroDivisionError("denominator vanishes at the requested point")
    return [[poly_evaluate(x, values) / den for x in row] for row in m.rows]


# checks


@dataclass
class Report:
    ok: bool
    detail: str = ""
    counterexample: object = None

    def __bool__(self):
        return self.ok


def _gen_matrix_for(x, n, r, colors, vs, opposite=True):
    rows = generator_matrix(x, n, r, colors, vs, opposite=opposite)
    return rows


def check_equivariance(word: BraidWord, x, r_max: int, colors: Sequence[str] | None = None,
                       vs: VariableSet | None = None) -> Report:
    """Check β∘x = x∘β on every W_{n,r}, r ≤ r_max.

    ``x`` acts through the coproduct the homological operators realize
    (the opposite one); the braiding is equivariant for it.
    """
    n = word.n
    colors, vs = _defaults(n, colors, vs)
    end_colors = word.permute_colors(colors)
    if end_colors != colors:
        raise ValueError(f"word {word} permutes colors {colors} -> {end_colors}; use a pure word or one color")
    from vermahom.verma import normalize_generator

    x = normalize_generator(x)
    for r in range(r_max + 1):
        b_src = braid_matrix(word, r, "verma", colors, vs)
        gx = _gen_matrix_for(x, n, r, colors, vs)
        if not gx:
            continue
        shift = {"E": -1}.get(x, 0) if isinstance(x, str) else (x[1] if x[0] == "F" else 0)
        rt = r + shift
        b_tgt = braid_matrix(word, rt, "verma", colors, vs)
        lhs = mat_mul(b_tgt.as_lists(), gx, vs)
        rhs = mat_mul(gx, b_src.as_lists(), vs)
        if lhs != rhs:
            for i, (r1, r2) in enumerate(zip(lhs, rhs)):
                for j, (u, w) in enumerate(zip(r1, r2)):
                    if u != w:
                        return Report(False, f"r={r} entry ({i},{j}): {u} != {w}", (r, i, j, u, w))
    return Report(True, f"{word} commutes with {x} for r <= {r_max}")


def kohno_kernel_stability(n: int, r: int, word: BraidWord, colors: Sequence[str] | None = None,
                           vs: VariableSet | None = None) -> Report:
    """Ker E ∩ W_{n,r} is mapped into itself by the braid action (over the fraction field)."""
    colors, vs = _defaults(n, colors, vs)
    if word.permute_colors(colors) != colors:
        raise ValueError("kernel stability needs a pure word or a single color")
    kernel = [untens(v) for v in highest_weight_basis(n, r, colors, vs, opposite=True)]
    basis = weight_basis(n, r)
    bm = braid_matrix(word, r, "A", colors, vs)
    kcols = [v.coords(basis) for v in kernel]
    for v, col in zip(kernel, kcols):
        img = [sum((a * x for a, x in zip(row, col) if a and x), LaurentPoly.zero(vs)) for row in bm.rows]
        if not in_span(kcols, img, vs):
            return Report(False, f"image of {v} leaves Ker E", (v, img))
    dim_w = len(basis)
    rank_e = 0 if r == 0 else rank(generator_matrix("E", n, r, colors, vs, opposite=True), vs)
    if len(kernel) + rank_e != dim_w:
        return Report(False, f"dim Ker E ({len(kernel)}) + rank E ({rank_e}) != dim W ({dim_w})")
    return Report(True, f"Ker E stable: dim {len(kernel)}, rank E {rank_e}, dim W {dim_w}")


def restricted_action(word: BraidWord, n: int, r: int, colors, vs):
    """Matrix of ``word`` on Ker E in kernel-basis coordinates, as (numerator, scalar denominator)."""
    from vermahom.linalg import det, gauss_jordan_adjugate, echelon

    kernel = highest_weight_basis(n, r, colors, vs, opposite=True)
    basis = weight_basis(n, r)
    kmat = [list(row) for row in zip(*(v.coords(basis) for v in kernel))]
    _, _, order = echelon([list(r_) for r_ in kmat], vs)
    # independent rows of the kernel matrix give an invertible square minor
    dsz = len(kernel)
    sel = [order[i] for i in range(dsz)]
    sq = [kmat[i] for i in sel]
    adj, d = gauss_jordan_adjugate(sq, vs)
    bm = braid_matrix(word, r, "verma", colors, vs)
    image = mat_mul(bm.as_lists(), kmat, vs)
    return mat_mul(adj, [image[i] for i in sel], vs), d


def algebra_rank_on_kernel(n: int, r: int, max_len: int = 3, colors=None, vs=None) -> tuple[int, int]:
    """(dim Y_{n,r}, dimension of the span of braid-word images on Y_{n,r}).

    Unicolor by default; full rank (dim^2) is the generic irreducibility signal.
    """
    if colors is None:
        vs = VariableSet.unicolor()
        colors = ("s",) * n
    colors, vs = _defaults(n, colors, vs)
    gens = []
    for i in range(1, n):
        num, _ = restricted_action(BraidWord(n, ((i, 1),)), n, r, colors, vs)
        gens.append(num)
    d = len(gens[0]) if gens else len(highest_weight_basis(n, r, colors, vs, opposite=True))
    if d == 0:
        return 0, 0
    one = identity(d, vs)
    words = [one]
    frontier = [one]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for g in gens:
                nxt.append(mat_mul(g, w, vs))
        words.extend(nxt)
        frontier = nxt
    flat = [[x for row in w for x in row] for w in words]
    return d, rank(flat, vs)
