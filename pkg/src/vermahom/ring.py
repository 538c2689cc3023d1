"""Sparse multivariate Laurent polynomials over the integers.

Exponent vectors are packed into a single Python int (one fixed-width slot
per variable, first variable most significant), so a monomial product is an
integer addition and integer order on keys is lexicographic order on
exponent vectors.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from vermahom._backend import add_terms, div_terms, mul_terms, scale_terms, sub_terms

SLOT_BITS = 32
_OFFSET = 1 << (SLOT_BITS - 1)
_MASK = (1 << SLOT_BITS) - 1
_MAX_EXP = _OFFSET - 1


class NotDivisible(ArithmeticError):
    """Raised when an exact quotient does not exist in the Laurent ring."""


class VariableSet:
    """Ordered, immutable tuple of variable names; always has ``q`` and ``tt``.

    Instances are interned, so equality is identity for the usual sets.
    """

    __slots__ = ("names", "index", "corr", "__weakref__")

    def __new__(cls, names: Sequence[str]):
        return _intern_varset(tuple(names))

    @classmethod
    def _build(cls, names: tuple[str, ...]) -> "VariableSet":
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        if "q" not in names or "tt" not in names:
            raise ValueError("a variable set must contain 'q' and 'tt'")
        for name in names:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", name):
                raise ValueError(f"bad variable name {name!r}")
        self = object.__new__(cls)
        self.names = names
        self.index = {v: i for i, v in enumerate(names)}
        nv = len(names)
        self.corr = sum(_OFFSET << (SLOT_BITS * (nv - 1 - i)) for i in range(nv))
        return self

    @classmethod
    def colored(cls, n: int) -> "VariableSet":
        """``q, tt, s1, ..., sn``."""
        if n < 1:
            raise ValueError("need at least one color")
        return cls(("q", "tt") + tuple(f"s{i}" for i in range(1, n + 1)))

    @classmethod
    def unicolor(cls) -> "VariableSet":
        return cls(("q", "tt", "s"))

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"VariableSet({list(self.names)})"

    def __reduce__(self):
        return (VariableSet, (self.names,))

    def pack(self, exps: Sequence[int]) -> int:
        nv = len(self.names)
        if len(exps) != nv:
            raise ValueError(f"exponent vector of length {len(exps)} for {nv} variables")
        key = 0
        for e in exps:
            if not -_OFFSET <= e <= _MAX_EXP:
                raise OverflowError(f"exponent {e} out of range")
            key = (key << SLOT_BITS) | (e + _OFFSET)
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        nv = len(self.names)
        out = [0] * nv
        for i in range(nv - 1, -1, -1):
            out[i] = (key & _MASK) - _OFFSET
            key >>= SLOT_BITS
        return tuple(out)


@lru_cache(maxsize=None)
def _intern_varset(names: tuple[str, ...]) -> VariableSet:
    return VariableSet._build(names)


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("vs", "_t", "_hash")

    def __init__(self, vs: VariableSet, terms: Mapping[int, int] | None = None, *, _trusted=False):
        self.vs = vs
        if terms is None:
            self._t = {}
        elif _trusted:
            self._t = terms
        else:
            self._t = {k: int(c) for k, c in terms.items() if c}
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, vs: VariableSet) -> "LaurentPoly":
        return cls(vs, {}, _trusted=True)

    @classmethod
    def const(cls, vs: VariableSet, c: int) -> "LaurentPoly":
        c = int(c)
        return cls(vs, {vs.corr: c} if c else {}, _trusted=True)

    @classmethod
    def one(cls, vs: VariableSet) -> "LaurentPoly":
        return cls(vs, {vs.corr: 1}, _trusted=True)

    @classmethod
    def var(cls, vs: VariableSet, name: str, power: int = 1) -> "LaurentPoly":
        return cls.monomial(vs, {name: power})

    @classmethod
    def monomial(cls, vs: VariableSet, exps: Mapping[str, int], coeff: int = 1) -> "LaurentPoly":
        vec = [0] * len(vs)
        for name, e in exps.items():
            vec[vs.index[name]] += e
        return cls(vs, {vs.pack(vec): int(coeff)} if coeff else {}, _trusted=True)

    @classmethod
    def from_exponents(cls, vs: VariableSet, items: Iterable[tuple[Sequence[int], int]]) -> "LaurentPoly":
        t: dict[int, int] = {}
        for exps, c in items:
            k = vs.pack(exps)
            t[k] = t.get(k, 0) + int(c)
        return cls(vs, {k: c for k, c in t.items() if c}, _trusted=True)

    @classmethod
    def parse(cls, text: str, vs: VariableSet) -> "LaurentPoly":
        """Parse the text grammar produced by ``str``: ``3*q^2*tt^-1*s1 - tt + 1``."""
        return parse_poly(text, vs)

    # inspection

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """(exponent vector, coefficient) pairs in canonical (lex) order."""
        unpack = self.vs.unpack
        return [(unpack(k), self._t[k]) for k in sorted(self._t)]

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def is_unit(self) -> bool:
        """Units of Z[x^{±1}] are exactly the signed monomials."""
        return len(self._t) == 1 and abs(next(iter(self._t.values()))) == 1

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and self.vs.corr in self._t)

    def constant_value(self) -> int:
        return self._t.get(self.vs.corr, 0)

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self._t.values():
            g = gcd(g, c)
        return g

    def exponent_bounds(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Per-variable (min, max) exponents over the terms of a nonzero polynomial."""
        keys = self._t.keys()
        nv = len(self.vs)
        lo, hi = [], []
        for i in range(nv):
            sh = SLOT_BITS * (nv - 1 - i)
            col = [(k >> sh) & _MASK for k in keys]
            lo.append(min(col) - _OFFSET)
            hi.append(max(col) - _OFFSET)
        return tuple(lo), tuple(hi)

    def min_exponents(self) -> tuple[int, ...]:
        return self.exponent_bounds()[0]

    def max_exponents(self) -> tuple[int, ...]:
        return self.exponent_bounds()[1]

    def variables_used(self) -> set[str]:
        used = set()
        for exps, _ in self.terms():
            used.update(v for v, e in zip(self.vs.names, exps) if e)
        return used

    # arithmetic

    def _check(self, other: "LaurentPoly") -> None:
        if other.vs is not self.vs:
            raise ValueError(f"variable-set mismatch: {self.vs} vs {other.vs}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.vs, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.vs, add_terms(self._t, other._t), _trusted=True)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.vs, sub_terms(self._t, other._t), _trusted=True)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return LaurentPoly(self.vs, {k: -c for k, c in self._t.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero(self.vs)
            return LaurentPoly(self.vs, scale_terms(self._t, other, 0), _trusted=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._t) == 1:
            (k, c), = other._t.items()
            return LaurentPoly(self.vs, scale_terms(self._t, c, k - self.vs.corr), _trusted=True)
        if len(self._t) == 1:
            (k, c), = self._t.items()
            return LaurentPoly(self.vs, scale_terms(other._t, c, k - self.vs.corr), _trusted=True)
        return LaurentPoly(self.vs, mul_terms(self._t, other._t, self.vs.corr), _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_unit():
                raise NotDivisible(f"negative power of non-unit {self}")
            (k, c), = self._t.items()
            vec = [-x for x in self.vs.unpack(k)]
            return LaurentPoly(self.vs, {self.vs.pack([x * -e for x in vec]): c ** (-e)}, _trusted=True)
        if len(self._t) == 1:
            (k, c), = self._t.items()
            vec = self.vs.unpack(k)
            return LaurentPoly(self.vs, {self.vs.pack([x * e for x in vec]): c**e}, _trusted=True)
        result = LaurentPoly.one(self.vs)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "LaurentPoly":
        return self ** -1

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Return ``c`` with ``other * c == self``; raise NotDivisible if none exists."""
        if isinstance(other, int):
            other = LaurentPoly.const(self.vs, other)
        self._check(other)
        return poly_exact_div(self, other)

    def __floordiv__(self, other):
        return self.exact_div(other)

    def __eq__(self, other):
        if isinstance(other, int):
            return self._t == ({self.vs.corr: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vs is other.vs and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vs.names, frozenset(self._t.items())))
        return self._hash

    # substitution / evaluation

    def subs(self, hom: "RingHom") -> "LaurentPoly":
        return hom(self)

    def evaluate(self, assignment: Mapping[str, object]):
        return poly_evaluate(self, assignment)

    def to_sympy(self):
        import sympy

        syms = sympy.symbols(self.vs.names)
        expr = 0
        for exps, c in self.terms():
            m = c
            for s, e in zip(syms, exps):
                if e:
                    m *= s**e
            expr += m
        return expr

    # serialization

    def to_json_obj(self) -> dict:
        return {
            "vars": list(self.vs.names),
            "terms": [{"coeff": str(c), "exp": list(exps)} for exps, c in self.terms()],
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "LaurentPoly":
        vs = VariableSet(obj["vars"])
        return cls.from_exponents(vs, ((t["exp"], int(t["coeff"])) for t in obj["terms"]))

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        return cls.from_json_obj(json.loads(text))

    def __str__(self) -> str:
        if not self._t:
            return "0"
        names = self.vs.names
        parts = []
        # descending lex order reads naturally: q^2 + 1 + q^-2
        for exps, c in reversed(self.terms()):
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def poly_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division in Z[x_1^{±1}, ...] by lex leading terms.

    Candidate quotient terms are confined to the exponent box forced by the
    per-variable min/max degrees of ``a`` and ``b``, which makes the loop
    terminate even when no quotient exists.
    """
    if b.vs is not a.vs:
        raise ValueError("variable-set mismatch")
    if not b._t:
        raise ZeroDivisionError("division by the zero polynomial")
    vs = a.vs
    if not a._t:
        return LaurentPoly.zero(vs)
    if len(b._t) == 1:
        (kb, cb), = b._t.items()
        if any(c % cb for c in a._t.values()):
            raise NotDivisible(f"{a} is not divisible by {b}")
        shift = vs.corr - kb
        return LaurentPoly(vs, {k + shift: c // cb for k, c in a._t.items()}, _trusted=True)
    (amin, amax), (bmin, bmax) = a.exponent_bounds(), b.exponent_bounds()
    lo = [x - y for x, y in zip(amin, bmin)]
    hi = [x - y for x, y in zip(amax, bmax)]
    if any(l > h for l, h in zip(lo, hi)):
        raise NotDivisible(f"{a} is not divisible by {b}")
    if max(map(abs, lo + hi)) >= _OFFSET >> 2:
        raise OverflowError("exponents too large for exact division")
    # quotient keys must lie in the box [lo, hi]; checked slot-wise on packed keys
    quot = div_terms(a._t, b._t, vs.corr, vs.pack(lo), vs.pack(hi))
    if quot is None:
        raise NotDivisible(f"{a} is not divisible by {b}")
    return LaurentPoly(vs, quot, _trusted=True)


class RingHom:
    """Substitution sending each source variable to a signed monomial.

    ``images`` maps source variable names to ``(sign, {target_var: exp})``;
    unspecified variables map to the same-named target variable.
    """

    def __init__(self, source: VariableSet, target: VariableSet,
                 images: Mapping[str, tuple[int, Mapping[str, int]]] | None = None):
        self.source = source
        self.target = target
        images = dict(images or {})
        for name in images:
            if name not in source.index:
                raise ValueError(f"{name!r} is not a source variable")
        self._sign = []
        self._vec = []
        for name in source.names:
            if name in images:
                sign, mono = images[name]
                if sign not in (1, -1):
                    raise ValueError("image sign must be +1 or -1")
            else:
                if name not in target.index:
                    raise ValueError(f"no image for {name!r} and no such target variable")
                sign, mono = 1, {name: 1}
            vec = [0] * len(target)
            for tv, e in mono.items():
                vec[target.index[tv]] += e
            self._sign.append(sign)
            self._vec.append(vec)
        self._cache: dict[int, tuple[int, int]] = {}

    @classmethod
    def identity(cls, vs: VariableSet) -> "RingHom":
        return cls(vs, vs)

    @classmethod
    def bridge(cls, vs: VariableSet) -> "RingHom":
        """tt -> q^-2, everything else fixed."""
        return cls(vs, vs, {"tt": (1, {"q": -2})})

    @classmethod
    def unicolor(cls, vs: VariableSet, name: str = "s") -> "RingHom":
        """All color variables (anything but q, tt) collapse to one variable ``name``."""
        colors = [v for v in vs.names if v not in ("q", "tt")]
        target = VariableSet(("q", "tt", name))
        return cls(vs, target, {c: (1, {name: 1}) for c in colors})

    @classmethod
    def from_text(cls, vs: VariableSet, text: str, target: VariableSet | None = None) -> "RingHom":
        """Parse ``"tt=q^-2, s2=-s1"`` style substitutions."""
        target = target or vs
        images = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            lhs, _, rhs = part.partition("=")
            img = parse_poly(rhs, target)
            if not img.is_unit():
                raise ValueError(f"image of {lhs.strip()} must be a signed monomial, got {rhs}")
            (exps, c), = img.terms()
            images[lhs.strip()] = (c, {v: e for v, e in zip(target.names, exps) if e})
        return cls(vs, target, images)

    def _image_key(self, key: int) -> tuple[int, int]:
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        exps = self.source.unpack(key)
        sign = 1
        vec = [0] * len(self.target)
        for e, s, img in zip(exps, self._sign, self._vec):
            if e:
                if s < 0 and e % 2:
                    sign = -sign
                for j, x in enumerate(img):
                    vec[j] += e * x
        out = (sign, self.target.pack(vec))
        self._cache[key] = out
        return out

    def __call__(self, p: LaurentPoly) -> LaurentPoly:
        if p.vs is not self.source:
            raise ValueError(f"polynomial over {p.vs} given to hom from {self.source}")
        out: dict[int, int] = {}
        for k, c in p._t.items():
            sign, nk = self._image_key(k)
            out[nk] = out.get(nk, 0) + sign * c
        return LaurentPoly(self.target, {k: c for k, c in out.items() if c}, _trusted=True)


def apply_hom(h: RingHom, p: LaurentPoly) -> LaurentPoly:
    return h(p)


def poly_evaluate(p: LaurentPoly, assignment: Mapping[str, object]):
    """Evaluate at nonzero values; ints/Fractions give an exact Fraction.

    Complex or mpmath values are combined with their own arithmetic and no
    extra rounding.
    """
    names = p.vs.names
    missing = sorted(p.variables_used() - set(assignment))
    if missing:
        raise ValueError(f"no value for {missing}")
    vals = []
    for v in names:
        x = assignment.get(v, 1)
        if isinstance(x, int):
            x = Fraction(x)
        vals.append(x)
    total = Fraction(0)
    for exps, c in p.terms():
        term = c
        for name, x, e in zip(names, vals, exps):
            if not e:
                continue
            if x == 0:
                if e < 0:
                    raise ValueError(f"{name}=0 with negative exponent {e}")
                term = term * 0
                continue
            term = term * x**e
        total = total + term
    return total


def parse_poly(text: str, vs: VariableSet) -> LaurentPoly:
    """Parse sums of products like ``-3*q^2*tt^-1*s1 + 2 - q^-1``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial text")
    # split on +/- that are not part of an exponent
    tokens = []
    buf = ""
    for i, ch in enumerate(s):
        if ch in "+-" and buf and not buf.endswith("^"):
            tokens.append(buf)
            buf = ch
        else:
            buf += ch
    tokens.append(buf)
    total = LaurentPoly.zero(vs)
    for tok in tokens:
        sign = 1
        while tok and tok[0] in "+-":
            if tok[0] == "-":
                sign = -sign
            tok = tok[1:]
        if not tok:
            raise ValueError(f"bad polynomial text {text!r}")
        term = LaurentPoly.const(vs, sign)
        for factor in tok.split("*"):
            m = re.fullmatch(r"(\d+)|([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?", factor)
            if not m:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            if m.group(1):
                term = term * int(m.group(1))
            else:
                name = m.group(2)
                if name not in vs.index:
                    raise ValueError(f"unknown variable {name!r}")
                term = term * LaurentPoly.var(vs, name, int(m.group(3) or 1))
        total = total + term
    return total
