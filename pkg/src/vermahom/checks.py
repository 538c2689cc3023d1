"""Verification suites shared by the CLI and the test-suite.

Each suite returns a list of ``Outcome``; the first failing one carries the
offending polynomials in ``detail``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

from vermahom import braiding, homology, qnum
from vermahom.braiding import BraidWord
from vermahom.homology import HVector, op_E, op_F1, op_Fdiv, op_K, op_Kinv, tens, untens
from vermahom.ring import LaurentPoly, NotDivisible, RingHom, VariableSet
from vermahom.verma import QVector, coproduct_action, weight_basis


@dataclass
class Outcome:
    name: str
    ok: bool
    detail: str = ""


def _first_failure(name, pairs):
    for where, lhs, rhs in pairs:
        if lhs != rhs:
            return Outcome(name, False, f"{where}: {lhs!r} != {rhs!r}")
    return Outcome(name, True)


# homological operators as functions of an HVector, with F^(0) = id


def _fdiv(m, v, colors=None):
    return v if m == 0 else op_Fdiv(m, v, colors)


def hopf_suite(n_max: int = 3, r_max: int = 4) -> list[Outcome]:
    out = []
    for n in range(1, n_max + 1):
        vs = VariableSet.colored(n)
        h = RingHom.bridge(vs)
        tt = LaurentPoly.var(vs, "tt")
        ttinv = LaurentPoly.var(vs, "tt", -1)
        q = lambda e: LaurentPoly.var(vs, "q", e)
        ke, kf, comm, fafb, efm = [], [], [], [], []
        for r in range(r_max + 1):
            for k in weight_basis(n, r):
                a = HVector.basis_vector(k, vs)
                where = f"n={n} A{k}"
                ke.append((where, op_K(op_E(a)), op_E(op_K(a)).scale(ttinv)))
                kf.append((where, op_K(op_F1(a)), op_F1(op_K(a)).scale(tt)))
                comm.append((where, op_E(op_F1(a)) - op_F1(op_E(a)), op_K(a) - op_Kinv(a)))
                for total in range(2, 5):
                    for aa in range(1, total):
                        bb = total - aa
                        lhs = _fdiv(aa, _fdiv(bb, a)).map_coeffs(h)
                        rhs = _fdiv(total, a).map_coeffs(h).scale(qnum.q_binomial(total, aa, vs))
                        fafb.append((f"{where} F({aa})F({bb})", lhs, rhs))
                for m in range(0, 4):
                    lhs = (op_E(_fdiv(m + 1, a)) - _fdiv(m + 1, op_E(a))).map_coeffs(h)
                    fm = lambda v: _fdiv(m, v)
                    rhs = (fm(op_K(a)).scale(q(-m)) - fm(op_Kinv(a)).scale(q(m))).map_coeffs(h)
                    efm.append((f"{where} m={m}", lhs, rhs))
        out += [
            _first_failure(f"KE = tt^-1 EK (n={n})", ke),
            _first_failure(f"KF = tt FK (n={n})", kf),
            _first_failure(f"[E,F(1)] = K - K^-1 (n={n})", comm),
            _first_failure(f"F(a)F(b) = qbin F(a+b) (n={n})", fafb),
            _first_failure(f"[E,F(m+1)] = F(m)(q^-m K - q^m K^-1) (n={n})", efm),
        ]
    return out


def divided_power_suite(n_max: int = 3, r_max: int = 3, m_max: int = 4, kl_max: int = 4) -> list[Outcome]:
    out = []
    failures = []
    for n in range(1, n_max + 1):
        vs = VariableSet.colored(n)
        for r in range(r_max + 1):
            for k in weight_basis(n, r):
                for m in range(1, m_max + 1):
                    try:
                        op_Fdiv(m, HVector.basis_vector(k, vs))
                    except NotDivisible as exc:
                        failures.append(f"n={n} A{k} m={m}: {exc}")
    out.append(Outcome("divided powers divide exactly", not failures, "; ".join(failures[:1])))
    vs1 = VariableSet.colored(1)
    pairs = []
    for l in range(1, kl_max + 1):
        for k in range(kl_max + 1):
            got = op_Fdiv(l, HVector.basis_vector((k,), vs1))
            want = HVector(1, vs1, {(k + l,): homology.fdiv_closed_form_n1(l, k, vs=vs1)})
            pairs.append((f"l={l} k={k}", got, want))
    out.append(_first_failure("n=1 closed form for F(l)", pairs))
    return out


def monoidality_suite(n_max: int = 3, r_max: int = 3) -> list[Outcome]:
    pairs = []
    for n in range(1, n_max + 1):
        vs = VariableSet.colored(n)
        h = RingHom.bridge(vs)
        gens = [("E", op_E), (("F", 1), op_F1), (("F", 2), lambda v: op_Fdiv(2, v)), ("K", op_K), ("Kinv", op_Kinv)]
        for r in range(r_max + 1):
            for k in weight_basis(n, r):
                a = HVector.basis_vector(k, vs)
                for g, op in gens:
                    lhs = tens(op(a)).map_coeffs(h)
                    rhs = coproduct_action(g, tens(a), opposite=True)
                    pairs.append((f"n={n} {g} on A{k}", lhs, rhs))
    return [_first_failure("tens intertwines E, F(1), F(2), K", pairs)]


def bridge_suite(bound: int = 8) -> list[Outcome]:
    bad = [(i, k, l) for i in range(bound + 1) for k in range(bound + 1) for l in range(bound + 1)
           if not qnum.bridge_check(i, k, l)]
    return [Outcome(f"bridge identities up to {bound}", not bad, f"first failure {bad[:1]}")]


def basis_change_suite(cases=((2, 2), (2, 3), (3, 2), (3, 3))) -> list[Outcome]:
    out = []
    for n, r in cases:
        m = homology.arcs_to_codes_matrix(n, r)
        rows = m.as_lists()
        expr = [list(c) for c in zip(*rows)]  # rows = multi-arcs
        upper = all(not expr[i][j] for i in range(len(expr)) for j in range(i))
        unit = all(expr[i][i] == 1 for i in range(len(expr)))
        d = m.determinant()
        out.append(Outcome(f"A'->U triangular, det 1 (n={n}, r={r})", upper and unit and d == 1,
                           f"upper={upper} unit_diag={unit} det={d}"))
    return out


def dimension_suite(n_max: int = 5, r_max: int = 5) -> list[Outcome]:
    bad = [(n, r) for n in range(1, n_max + 1) for r in range(r_max + 1)
           if len(weight_basis(n, r)) != comb(n + r - 1, r)]
    return [Outcome("dim W_{n,r} = C(n+r-1, r)", not bad, f"failures {bad}")]


def _setting(n, unicolor):
    if unicolor:
        return ("s",) * n, VariableSet.unicolor()
    return tuple(f"s{i}" for i in range(1, n + 1)), VariableSet.colored(n)


def braid_relations_suite(ns=(3, 4), r_max: int = 3, homological: bool = False) -> list[Outcome]:
    out = []
    for n in ns:
        for uni in (True, False):
            colors, vs = _setting(n, uni)
            label = "unicolor" if uni else "colored"
            basis = "A" if homological else "verma"
            fails = []
            for r in range(r_max + 1):
                for i in range(1, n - 1):
                    w1 = BraidWord(n, ((i, 1), (i + 1, 1), (i, 1)))
                    w2 = BraidWord(n, ((i + 1, 1), (i, 1), (i + 1, 1)))
                    m1 = braiding.braid_matrix(w1, r, basis, colors, vs, homological=homological)
                    m2 = braiding.braid_matrix(w2, r, basis, colors, vs, homological=homological)
                    if not m1.same_operator(m2) or m1.colors_target != m2.colors_target:
                        fails.append(f"r={r} s{i}s{i+1}s{i}")
                for i in range(1, n):
                    for j in range(i + 2, n):
                        m1 = braiding.braid_matrix(BraidWord(n, ((i, 1), (j, 1))), r, basis, colors, vs,
                                                   homological=homological)
                        m2 = braiding.braid_matrix(BraidWord(n, ((j, 1), (i, 1))), r, basis, colors, vs,
                                                   homological=homological)
                        if not m1.same_operator(m2):
                            fails.append(f"r={r} s{i}s{j}")
                for i in range(1, n):
                    for w in (((i, 1), (i, -1)), ((i, -1), (i, 1))):
                        m = braiding.braid_matrix(BraidWord(n, w), r, basis, colors, vs, homological=homological)
                        if not m.is_identity():
                            fails.append(f"r={r} s{i} inverse")
            kind = "homological" if homological else "quantum"
            out.append(Outcome(f"braid relations {kind} n={n} {label} r<={r_max}", not fails, "; ".join(fails[:3])))
    return out


def homoquantum_suite(n_max: int = 3, r_max: int = 2) -> list[Outcome]:
    """untens ∘ Q(σ_i^±) ∘ tens equals the tt-generic homological σ_i^± after tt = q^-2."""
    out = []
    for n in range(2, n_max + 1):
        for uni in (False, True):
            colors, vs = _setting(n, uni)
            h = RingHom.bridge(vs)
            fails = []
            for r in range(r_max + 1):
                for i in range(1, n):
                    for e in (1, -1):
                        w = BraidWord(n, ((i, e),))
                        quantum = braiding.braid_matrix(w, r, "verma", colors, vs)
                        homol = braiding.braid_matrix(w, r, "A", colors, vs, homological=True).map_entries(h)
                        basis = weight_basis(n, r)
                        for j, k in enumerate(basis):
                            via_tens = untens(QVector(n, vs, {basis[t]: quantum.rows[t][j]
                                                              for t in range(len(basis))}))
                            direct = HVector(n, vs, {basis[t]: homol.rows[t][j] for t in range(len(basis))})
                            if via_tens != direct:
                                fails.append(f"r={r} s{i}^{e} on A{k}")
            label = "unicolor" if uni else "colored"
            out.append(Outcome(f"quantum = homological braid action n={n} {label}", not fails, "; ".join(fails[:3])))
    return out


def equivariance_suite(n: int = 3, r_max: int = 2, count: int = 10, max_len: int = 6, seed: int = 7) -> list[Outcome]:
    rng = random.Random(seed)
    out = []
    for t in range(count):
        w = braiding.random_pure_word(n, max_len, rng)
        fails = []
        for x in ("E", ("F", 1), "K"):
            rep = braiding.check_equivariance(w, x, r_max)
            if not rep.ok:
                fails.append(f"{x}: {rep.detail}")
        out.append(Outcome(f"pure word [{w}] commutes with E, F(1), K", not fails, "; ".join(fails)))
    return out


def kohno_suite(cases=((2, 1), (2, 2), (3, 1), (3, 2)), words: int = 5, seed: int = 11) -> list[Outcome]:
    rng = random.Random(seed)
    out = []
    for n, r in cases:
        colors, vs = _setting(n, True)
        fails = []
        detail = ""
        for _ in range(words):
            w = braiding.random_word(n, rng.randrange(1, 5), rng)
            rep = braiding.kohno_kernel_stability(n, r, w, colors, vs)
            detail = rep.detail
            if not rep.ok:
                fails.append(f"[{w}] {rep.detail}")
        out.append(Outcome(f"Ker E braid-stable (n={n}, r={r})", not fails, "; ".join(fails[:1]) or detail))
    return out


DEFAULT_BOUNDS = {
    "relations": (3, 3),
    "hopf": (3, 4),
    "monoidality": (3, 3),
    "kohno": (3, 2),
    "bridge": (8, 8),
    "basis-change": (3, 3),
    "divided": (3, 3),
    "homoquantum": (3, 2),
    "equivariance": (3, 2),
    "dimension": (5, 5),
}

SUITES = {
    "relations": lambda n, r: braid_relations_suite(ns=(n,) if n >= 3 else (3,), r_max=r),
    "hopf": lambda n, r: hopf_suite(n, r),
    "monoidality": lambda n, r: monoidality_suite(n, r),
    "kohno": lambda n, r: kohno_suite(cases=[(n, rr) for rr in range(1, r + 1)]),
    "bridge": lambda n, r: bridge_suite(max(n, r)),
    "basis-change": lambda n, r: basis_change_suite(cases=[(n, rr) for rr in range(r + 1)]),
    "divided": lambda n, r: divided_power_suite(n, r),
    "homoquantum": lambda n, r: homoquantum_suite(n, r),
    "equivariance": lambda n, r: equivariance_suite(n, r),
    "dimension": lambda n, r: dimension_suite(n, r),
}
