"""Quantum integers, factorials and binomials in the ``tt`` and ``q`` conventions.

``(i)_tt = 1 + tt + ... + tt^(i-1)`` and ``[i]_q = q^(i-1) + q^(i-3) + ... + q^(1-i)``.
Binomials are exact quotients of factorials.
"""

from __future__ import annotations

import threading

from vermahom.ring import LaurentPoly, NotDivisible, RingHom, VariableSet

FACTORIAL_MEMO_BOUND = 64

_lock = threading.Lock()
_fact_memo: dict[tuple[str, tuple[str, ...], int], LaurentPoly] = {}


def _default_vs(vs: VariableSet | None) -> VariableSet:
    return vs if vs is not None else VariableSet.colored(1)


def t_integer(i: int, vs: VariableSet | None = None) -> LaurentPoly:
    vs = _default_vs(vs)
    if i < 0:
        raise ValueError(f"(i)_tt needs i >= 0, got {i}")
    return LaurentPoly.from_exponents(vs, ((_exp(vs, tt=e), 1) for e in range(i)))


def q_integer(i: int, vs: VariableSet | None = None) -> LaurentPoly:
    vs = _default_vs(vs)
    if i < 0:
        raise ValueError(f"[i]_q needs i >= 0, got {i}")
    return LaurentPoly.from_exponents(vs, ((_exp(vs, q=i - 1 - 2 * j), 1) for j in range(i)))


def _exp(vs: VariableSet, **exps: int) -> list[int]:
    vec = [0] * len(vs)
    for name, e in exps.items():
        vec[vs.index[name]] = e
    return vec


def _factorial(kind: str, k: int, vs: VariableSet) -> LaurentPoly:
    if k < 0:
        raise ValueError(f"factorial of negative {k}")
    key = (kind, vs.names, k)
    hit = _fact_memo.get(key)
    if hit is not None:
        return hit
    integer = t_integer if kind == "t" else q_integer
    result = LaurentPoly.one(vs)
    for i in range(2, k + 1):
        result = result * integer(i, vs)
    if k <= FACTORIAL_MEMO_BOUND:
        with _lock:
            _fact_memo.setdefault(key, result)
    return result


def t_factorial(k: int, vs: VariableSet | None = None) -> LaurentPoly:
    return _factorial("t", k, _default_vs(vs))


def q_factorial(k: int, vs: VariableSet | None = None) -> LaurentPoly:
    return _factorial("q", k, _default_vs(vs))


def _binomial(kind: str, k: int, l: int, vs: VariableSet) -> LaurentPoly:
    if l < 0 or l > k:
        return LaurentPoly.zero(vs)
    num = _factorial(kind, k, vs)
    den = _factorial(kind, k - l, vs) * _factorial(kind, l, vs)
    try:
        return num.exact_div(den)
    except NotDivisible as exc:  # pragma: no cover - integrality of Gaussian binomials
        raise AssertionError(f"binomial ({k} choose {l}) not integral: ring bug") from exc


def t_binomial(k: int, l: int, vs: VariableSet | None = None) -> LaurentPoly:
    """``(k)_tt! / ((k-l)_tt! (l)_tt!)``; zero when ``l`` is out of range."""
    return _binomial("t", k, l, _default_vs(vs))


def q_binomial(k: int, l: int, vs: VariableSet | None = None) -> LaurentPoly:
    return _binomial("q", k, l, _default_vs(vs))


def bridge_check(i: int, k: int, l: int, vs: VariableSet | None = None) -> bool:
    """Check the tt = q^-2 identities for (i)_tt, (k)_tt! and the (k+l, l) binomial."""
    vs = _default_vs(vs)
    h = RingHom.bridge(vs)
    q = LaurentPoly.var(vs, "q")
    ok = True
    if i >= 1:
        ok &= h(t_integer(i, vs)) == q ** (1 - i) * q_integer(i, vs)
    ok &= h(t_factorial(k, vs)) == q ** (-k * (k - 1) // 2) * q_factorial(k, vs)
    ok &= h(t_binomial(k + l, l, vs)) == q ** (-k * l) * q_binomial(k + l, l, vs)
    return bool(ok)
