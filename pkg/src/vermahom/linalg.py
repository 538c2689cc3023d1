"""Fraction-free linear algebra over the Laurent ring.

Everything works on dense ``list[list[LaurentPoly]]`` and returns exact
results; ranks and kernels are over the fraction field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from vermahom.ring import LaurentPoly, NotDivisible, RingHom, VariableSet

Matrix = list[list[LaurentPoly]]


def _pick_pivot(a: Matrix, rows: range, col: int):
    best, best_len = None, None
    for i in rows:
        e = a[i][col]
        if e:
            if e.is_unit():
                return i
            if best is None or len(e) < best_len:
                best, best_len = i, len(e)
    return best


def echelon(m: Sequence[Sequence[LaurentPoly]], vs: VariableSet):
    """Bareiss elimination with row pivoting and column skipping.

    Returns ``(rows, pivot_cols, row_order)``: the echelon form, the pivot
    column of each nonzero row, and the original row index of each row.
    """
    a = [list(r) for r in m]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    order = list(range(nrows))
    prev = LaurentPoly.one(vs)
    pivots = []
    k = 0
    for col in range(ncols):
        if k >= nrows:
            break
        p = _pick_pivot(a, range(k, nrows), col)
        if p is None:
            continue
        if p != k:
            a[k], a[p] = a[p], a[k]
            order[k], order[p] = order[p], order[k]
        piv = a[k][col]
        for i in range(k + 1, nrows):
            lead = a[i][col]
            row_i, row_k = a[i], a[k]
            for j in range(col + 1, ncols):
                v = piv * row_i[j]
                if lead and row_k[j]:
                    v = v - lead * row_k[j]
                row_i[j] = v.exact_div(prev) if v else v
            row_i[col] = LaurentPoly.zero(vs)
        prev = piv
        pivots.append(col)
        k += 1
    return a, pivots, order


def rank(m: Sequence[Sequence[LaurentPoly]], vs: VariableSet) -> int:
    if not m or not m[0]:
        return 0
    return len(echelon(m, vs)[1])


def det(m: Sequence[Sequence[LaurentPoly]], vs: VariableSet) -> LaurentPoly:
    n = len(m)
    if n == 0:
        return LaurentPoly.one(vs)
    a = [list(r) for r in m]
    sign = 1
    prev = LaurentPoly.one(vs)
    for k in range(n):
        p = _pick_pivot(a, range(k, n), k)
        if p is None:
            return LaurentPoly.zero(vs)
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            lead = a[i][k]
            for j in range(k + 1, n):
                v = piv * a[i][j]
                if lead and a[k][j]:
                    v = v - lead * a[k][j]
                a[i][j] = v.exact_div(prev) if v else v
        prev = piv
    return prev if sign > 0 else -prev


def normalize_vector(vec: list[LaurentPoly], vs: VariableSet) -> list[LaurentPoly]:
    """Divide out the integer content, common monomial and common polynomial factor.

    Sign is fixed so that the lex-leading term of the first nonzero entry is positive.
    """
    nz = [v for v in vec if v]
    if not nz:
        return vec
    g = poly_gcd(nz, vs)
    out = [v.exact_div(g) if v else v for v in vec]
    first = next(v for v in out if v)
    if first.terms()[-1][1] < 0:
        out = [-v for v in out]
    return out


def poly_gcd(polys: Sequence[LaurentPoly], vs: VariableSet) -> LaurentPoly:
    """GCD up to units in the Laurent ring; the polynomial part is delegated to sympy."""
    c = 0
    for p in polys:
        c = gcd(c, p.content())
    mins = [min(col) for col in zip(*(p.min_exponents() for p in polys))]
    shift = LaurentPoly.from_exponents(vs, [([-e for e in mins], 1)])
    shifted = [p * shift for p in polys]
    if len(shifted) == 1:
        common = shifted[0]
    elif all(len(p) == 1 for p in shifted):
        common = LaurentPoly.const(vs, c)
    else:
        import sympy

        syms = sympy.symbols(vs.names)
        g = None
        # sparse Poly objects; building expressions term by term is quadratic in sympy
        for p in sorted(set(shifted), key=len):
            poly = sympy.Poly.from_dict(dict(p.terms()), *syms, domain=sympy.ZZ)
            g = poly if g is None else g.gcd(poly)
            if g.is_ground:
                break
        common = LaurentPoly.from_exponents(vs, ((list(m), int(k)) for m, k in g.terms()))
        if common.content() != 1:
            common = common.exact_div(LaurentPoly.const(vs, common.content()))
        common = common * c
    return common * shift.inverse()


def nullspace(m: Sequence[Sequence[LaurentPoly]], ncols: int, vs: VariableSet) -> list[list[LaurentPoly]]:
    """Kernel basis over the fraction field, as normalized integral vectors.

    Each free column ``f`` gives one vector by Cramer's rule on an
    independent set of original rows: ``x_f = det(M_RP)`` and
    ``x_p`` the determinant with column ``p`` replaced by ``-M_Rf``.
    """
    if not m:
        rows_r, piv = [], []
    else:
        _, piv, order = echelon(m, vs)
        rows_r = [list(m[order[i]]) for i in range(len(piv))]
    free = [j for j in range(ncols) if j not in piv]
    zero = LaurentPoly.zero(vs)
    basis = []
    for f in free:
        sub = [[row[p] for p in piv] for row in rows_r]
        vec = [zero] * ncols
        vec[f] = det(sub, vs)
        for i, p in enumerate(piv):
            rep = [r[:] for r in sub]
            for row_idx, row in enumerate(rows_r):
                rep[row_idx][i] = -row[f]
            vec[p] = det(rep, vs)
        basis.append(normalize_vector(vec, vs))
    return basis


def in_span(vectors: Sequence[Sequence[LaurentPoly]], w: Sequence[LaurentPoly], vs: VariableSet) -> bool:
    """Whether ``w`` lies in the fraction-field span of ``vectors``."""
    if not any(w):
        return True
    if not vectors:
        return False
    cols = [list(v) for v in vectors]
    base = [list(r) for r in zip(*cols)]
    ext = [list(r) for r in zip(*(cols + [list(w)]))]
    return rank(ext, vs) == rank(base, vs)


def gauss_jordan_adjugate(m: Sequence[Sequence[LaurentPoly]], vs: VariableSet):
    """Fraction-free Gauss-Jordan on ``[M | I]``.

    Returns ``(adj, d)`` with ``M @ adj == d * I``; raises ``ZeroDivisionError``
    when ``M`` is singular over the fraction field.
    """
    n = len(m)
    one, zero = LaurentPoly.one(vs), LaurentPoly.zero(vs)
    a = [list(m[i]) + [one if j == i else zero for j in range(n)] for i in range(n)]
    prev = one
    sign = 1
    for k in range(n):
        p = _pick_pivot(a, range(k, n), k)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(n):
            if i == k:
                continue
            lead = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(2 * n):
                if j == k:
                    continue
                v = piv * row_i[j]
                if lead and row_k[j]:
                    v = v - lead * row_k[j]
                row_i[j] = v.exact_div(prev) if v else v
            row_i[k] = zero
        prev = piv
    # the left block is now prev * I, so the right block is prev * M^{-1}
    return [row[n:] for row in a], prev


def mat_mul(a: Matrix, b: Matrix, vs: VariableSet) -> Matrix:
    zero = LaurentPoly.zero(vs)
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    bcols = [[(k, b[k][j]) for k in range(inner) if b[k][j]] for j in range(ncols)]
    out = []
    for row in a:
        nz = {k: x for k, x in enumerate(row) if x}
        new = []
        for col in bcols:
            acc = zero
            for k, y in col:
                x = nz.get(k)
                if x is not None:
                    acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def identity(n: int, vs: VariableSet) -> Matrix:
    one, zero = LaurentPoly.one(vs), LaurentPoly.zero(vs)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class OperatorMatrix:
    """Matrix of an operator between graded pieces of a module.

    Column ``j`` holds the image of the ``j``-th source basis vector, with
    basis vectors ordered lexicographically by index.  ``denominator``
    divides every entry (1 for integral operators).
    """

    rows: tuple[tuple[LaurentPoly, ...], ...]
    vs: VariableSet
    n: int
    r_source: int
    r_target: int
    basis_source: str
    basis_target: str
    colors_source: tuple[str, ...] = ()
    colors_target: tuple[str, ...] = ()
    denominator: LaurentPoly | None = field(default=None)

    def __post_init__(self):
        if self.denominator is None:
            object.__setattr__(self, "denominator", LaurentPoly.one(self.vs))
        if not self.colors_target and self.colors_source:
            object.__setattr__(self, "colors_target", self.colors_source)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def as_lists(self) -> Matrix:
        return [list(r) for r in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def compose(self, other: "OperatorMatrix") -> "OperatorMatrix":
        """``self ∘ other`` (apply ``other`` first)."""
        if other.colors_target and self.colors_source and other.colors_target != self.colors_source:
            raise ValueError(
                f"color mismatch: {other.colors_target} feeds {self.colors_source}")
        prod = mat_mul(self.as_lists(), other.as_lists(), self.vs)
        return OperatorMatrix(
            rows=tuple(tuple(r) for r in prod), vs=self.vs, n=self.n,
            r_source=other.r_source, r_target=self.r_target,
            basis_source=other.basis_source, basis_target=self.basis_target,
            colors_source=other.colors_source, colors_target=self.colors_target,
            denominator=self.denominator * other.denominator,
        )

    __matmul__ = compose

    def with_rows(self, rows: Matrix, **changes) -> "OperatorMatrix":
        from dataclasses import replace

        return replace(self, rows=tuple(tuple(r) for r in rows), **changes)

    def map_entries(self, hom: RingHom) -> "OperatorMatrix":
        from dataclasses import replace

        colors_s = _map_colors(self.colors_source, hom)
        colors_t = _map_colors(self.colors_target, hom)
        return replace(
            self, rows=tuple(tuple(hom(x) for x in r) for r in self.rows), vs=hom.target,
            denominator=hom(self.denominator), colors_source=colors_s, colors_target=colors_t,
        )

    def is_identity(self) -> bool:
        d = self.denominator
        zero = LaurentPoly.zero(self.vs)
        return all(x == (d if i == j else zero) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def same_operator(self, other: "OperatorMatrix") -> bool:
        """Equality as operators (cross-multiplying denominators)."""
        if self.shape != other.shape:
            return False
        return all(
            x * other.denominator == y * self.denominator
            for r1, r2 in zip(self.rows, other.rows) for x, y in zip(r1, r2)
        )

    def is_upper_triangular(self) -> bool:
        return all(not x for i, r in enumerate(self.rows) for j, x in enumerate(r) if i > j)

    def determinant(self) -> LaurentPoly:
        return det(self.as_lists(), self.vs)

    def inverse(self) -> "OperatorMatrix":
        """Exact inverse; integral when the determinant is a unit."""
        adj, d = gauss_jordan_adjugate(self.as_lists(), self.vs)
        # M^{-1} = adj / d and (M/den)^{-1} = den * adj / d
        adj = [[x * self.denominator for x in r] for r in adj]
        if d.is_unit():
            dinv = d.inverse()
            adj = [[x * dinv for x in r] for r in adj]
            d = LaurentPoly.one(self.vs)
        return OperatorMatrix(
            rows=tuple(tuple(r) for r in adj), vs=self.vs, n=self.n,
            r_source=self.r_target, r_target=self.r_source,
            basis_source=self.basis_target, basis_target=self.basis_source,
            colors_source=self.colors_target, colors_target=self.colors_source,
            denominator=d,
        )

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "r_source": self.r_source,
            "r_target": self.r_target,
            "basis_source": self.basis_source,
            "basis_target": self.basis_target,
            "colors_source": list(self.colors_source),
            "colors_target": list(self.colors_target),
            "rows": [[x.to_json_obj() for x in r] for r in self.rows],
            "denominator": self.denominator.to_json_obj(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "OperatorMatrix":
        den = LaurentPoly.from_json_obj(obj["denominator"]) if "denominator" in obj else None
        rows = tuple(tuple(LaurentPoly.from_json_obj(x) for x in r) for r in obj["rows"])
        if den is not None:
            vs = den.vs
        elif rows and rows[0]:
            vs = rows[0][0].vs
        else:
            raise ValueError("cannot infer the variable set of an empty matrix without a denominator")
        return cls(
            rows=rows, vs=vs, n=obj["n"], r_source=obj["r_source"], r_target=obj["r_target"],
            basis_source=obj["basis_source"], basis_target=obj["basis_target"],
            colors_source=tuple(obj.get("colors_source", ())),
            colors_target=tuple(obj.get("colors_target", ())),
            denominator=den,
        )

    @classmethod
    def from_json(cls, text: str) -> "OperatorMatrix":
        return cls.from_json_obj(json.loads(text))


def _map_colors(colors: tuple[str, ...], hom: RingHom) -> tuple[str, ...]:
    out = []
    for c in colors:
        img = hom(LaurentPoly.var(hom.source, c))
        used = sorted(img.variables_used())
        out.append(used[0] if len(used) == 1 and img.is_unit() else c)
    return tuple(out)


class SparseVector:
    """Immutable sparse combination of index tuples with Laurent coefficients."""

    __slots__ = ("n", "vs", "terms")

    def __init__(self, n: int, vs: VariableSet, terms=None):
        self.n = n
        self.vs = vs
        clean = {}
        for idx, c in (terms or {}).items():
            idx = tuple(int(x) for x in idx)
            if len(idx) != n:
                raise ValueError(f"index {idx} has length {len(idx)}, expected {n}")
            if any(x < 0 for x in idx):
                continue
            if c:
                if c.vs is not vs:
                    raise ValueError("coefficient over a different variable set")
                clean[idx] = c
        self.terms = clean

    def _like(self, terms):
        return type(self)._rebuild(self, terms)

    @staticmethod
    def _rebuild(proto, terms):
        return type(proto)(proto.n, proto.vs, terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return type(self) is type(other) and self.n == other.n and self.terms == other.terms and self._tag() == other._tag()

    def __hash__(self):
        return hash((self.n, self._tag(), frozenset(self.terms.items())))

    def _tag(self):
        return None

    def __add__(self, other):
        if self._tag() != other._tag() or self.n != other.n:
            raise ValueError("adding vectors of different kinds")
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out[k] + c if k in out else c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, int):
            c = LaurentPoly.const(self.vs, c)
        return self._like({k: v * c for k, v in self.terms.items()})

    def map_coeffs(self, hom: RingHom):
        out = type(self).__new__(type(self))
        SparseVector.__init__(out, self.n, hom.target, {k: hom(v) for k, v in self.terms.items()})
        for slot in getattr(type(self), "__slots__", ()):
            if slot not in ("n", "vs", "terms"):
                setattr(out, slot, getattr(self, slot))
        return out

    def degrees(self) -> set[int]:
        return {sum(k) for k in self.terms}

    def component(self, r: int):
        return self._like({k: v for k, v in self.terms.items() if sum(k) == r})

    def coords(self, basis: Sequence[tuple[int, ...]]) -> list[LaurentPoly]:
        zero = LaurentPoly.zero(self.vs)
        return [self.terms.get(tuple(b), zero) for b in basis]

    def items(self):
        return sorted(self.terms.items())

    def _json_terms(self):
        return [{"index": list(k), "coeff": c.to_json_obj()} for k, c in self.items()]

    def __repr__(self):
        body = " + ".join(f"({c}){list(k)}" for k, c in self.items()) or "0"
        return f"{type(self).__name__}({body})"
