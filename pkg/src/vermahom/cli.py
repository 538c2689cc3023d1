"""Command-line front-end.

    vermahom basis --n 2 --r 1
    vermahom matrix --word "s1 s2 s1" --n 3 --r 2 --basis A --format csv
    vermahom check hopf --n 2 --rmax 3
    vermahom change-basis vec.json --from Fork --to U

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import re
import sys
from fractions import Fraction

from vermahom import checks
from vermahom.braiding import BRAID_BASES, BraidWord, braid_matrix, specialize_matrix
from vermahom.homology import BASES, HVector, NonInvertible, change_basis
from vermahom.ring import NotDivisible, RingHom, VariableSet
from vermahom.verma import weight_basis

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt_index(k) -> str:
    return "(" + ",".join(map(str, k)) + ")"


def _colors(n: int, mode: str):
    if mode == "unicolor":
        return ("s",) * n, VariableSet.unicolor()
    return tuple(f"s{i}" for i in range(1, n + 1)), VariableSet.colored(n)


def parse_value(text: str):
    """A number for --eval: integer, fraction, decimal, complex, or zeta(m[,k]) = e^(2πik/m)."""
    text = text.strip()
    if text.startswith("zeta(") and text.endswith(")"):
        args = [int(a) for a in text[5:-1].split(",")]
        m, k = (args + [1])[:2]
        return cmath.exp(2j * cmath.pi * k / m)
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse value {text!r}") from None


def parse_assignment(text: str) -> dict:
    out = {}
    for part in filter(None, (p.strip() for p in re.split(r",(?![^()]*\))", text))):
        name, eq, val = part.partition("=")
        if not eq:
            raise UsageError(f"expected name=value, got {part!r}")
        out[name.strip()] = parse_value(val)
    return out


def _num(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    z = complex(x)
    re, im = round(z.real, 15) + 0.0, round(z.imag, 15) + 0.0
    return repr(re) if im == 0 else f"{re!r}{'+' if im >= 0 else ''}{im!r}j"


def _render_matrix(m, fmt: str, values=None) -> str:
    rows_idx = weight_basis(m.n, m.r_target)
    cols_idx = weight_basis(m.n, m.r_source)
    if values is not None:
        cells = [[_num(x) for x in row] for row in values]
    else:
        cells = None
    if fmt == "json":
        obj = m.to_json_obj()
        if cells is not None:
            obj = {k: v for k, v in obj.items() if k not in ("rows", "denominator")}
            obj["values"] = cells
        return json.dumps(obj, separators=(",", ":")) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + [_fmt_index(k) for k in cols_idx])
    body = cells if cells is not None else [[str(x) for x in row] for row in m.rows]
    for k, row in zip(rows_idx, body):
        w.writerow([_fmt_index(k)] + row)
    if cells is None and m.denominator != 1:
        w.writerow(["denominator", str(m.denominator)])
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_basis(args) -> int:
    basis = weight_basis(args.n, args.r)
    lines = [_fmt_index(k) for k in basis] + [f"count={len(basis)}"]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_matrix(args) -> int:
    colors, vs = _colors(args.n, args.colors)
    try:
        word = BraidWord.parse(args.word, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.endomorphism and args.colors == "distinct" and not word.is_pure():
        perm = word.permutation()
        moved = ", ".join(f"{colors[p]}->{t + 1}" for p, t in enumerate(perm) if p != t)
        print(f"error: [{word}] is not pure; it permutes colors ({moved}), "
              f"so it maps V^{colors} to V^{word.permute_colors(colors)}", file=sys.stderr)
        return EXIT_FAIL
    m = braid_matrix(word, args.r, args.basis, colors, vs, homological=args.homological)
    if args.subst:
        try:
            m = m.map_entries(RingHom.from_text(m.vs, args.subst))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    values = None
    if args.eval:
        try:
            values = specialize_matrix(m, values=parse_assignment(args.eval))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(str(exc)) from None
    _emit(_render_matrix(m, args.format, values), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    n = args.n if args.n is not None else checks.DEFAULT_BOUNDS[args.suite][0]
    r = args.rmax if args.rmax is not None else checks.DEFAULT_BOUNDS[args.suite][1]
    outcomes = checks.SUITES[args.suite](n, r)
    failed = 0
    for o in outcomes:
        if o.ok:
            print(f"PASS  {o.name}")
        else:
            failed += 1
            print(f"FAIL  {o.name}\n      {o.detail}")
    print(f"{args.suite}: {len(outcomes) - failed}/{len(outcomes)} passed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_change_basis(args) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            obj = json.load(fh)
        stored = obj.get("basis")
        if stored and args.from_basis and stored != args.from_basis:
            raise UsageError(f"file holds a {stored} vector, not {args.from_basis}")
        obj["basis"] = stored or args.from_basis or "A"
        v = HVector.from_json_obj(obj)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read vector: {exc}") from None
    colors = ("s",) * v.n if "s" in v.vs.index else None
    try:
        w = change_basis(v, args.to, colors)
    except (NonInvertible, NotDivisible) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(w.to_json() + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vermahom", description="Homological and quantum braid representations.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", help="list compositions indexing W_{n,r}")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--r", type=int, required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_basis)

    m = sub.add_parser("matrix", help="braid word matrix on W_{n,r}")
    m.add_argument("--word", required=True)
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--r", type=int, required=True)
    m.add_argument("--basis", choices=[x for x in BRAID_BASES if x != "VermaTensor"], default="verma")
    m.add_argument("--colors", choices=("distinct", "unicolor"), default="distinct")
    m.add_argument("--homological", action="store_true", help="use the tt-generic homological formula")
    m.add_argument("--endomorphism", action="store_true", help="fail unless the word is an endomorphism")
    m.add_argument("--subst", help='monomial substitution, e.g. "tt=q^-2"')
    m.add_argument("--eval", help='numeric values, e.g. "q=2,s=1/3,tt=zeta(5)"')
    m.add_argument("--format", choices=("json", "csv"), default="json")
    m.add_argument("--out")
    m.set_defaults(func=cmd_matrix)

    c = sub.add_parser("check", help="run a verification suite")
    c.add_argument("suite", choices=sorted(checks.SUITES))
    c.add_argument("--n", type=int)
    c.add_argument("--rmax", "--r", type=int, dest="rmax")
    c.set_defaults(func=cmd_check)

    cb = sub.add_parser("change-basis", help="convert an HVector JSON file")
    cb.add_argument("input")
    cb.add_argument("--from", dest="from_basis", choices=BASES)
    cb.add_argument("--to", required=True, choices=BASES)
    cb.add_argument("--out")
    cb.set_defaults(func=cmd_change_basis)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    for name in ("n", "r", "rmax"):
        val = getattr(args, name, None)
        if val is not None and val < (1 if name == "n" else 0):
            print(f"error: --{name} out of range: {val}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
