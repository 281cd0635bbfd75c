"""Command-line front end.

Every command prints rows in a fixed total order (length, then one-line
notation of ``w``), so output is byte-identical across runs and independent
of ``--jobs``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from .counting import gamma_of
from .final import (
    YoungDiagram, final_of_young, final_type_of, is_final, parse_young, young_of,
)
from .polyp import RatP, parse_ratp
from .rings import (
    BaseClass, FlagClass, SingularSystem, class_to_json, degree, parse_class,
)
from .strata import (
    InconsistencyError, anumber_class, class_u, class_v, kt_class, pieri_expand,
    pieri_class, prank_class, push_u, tau_of,
)
from .verify import SUPPORTED, verify_tables
from .weyl import (
    bruhat_leq, covers, enumerate_weyl, format_word, parse_perm, reduced_word,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_RANGE = 4
EXIT_INCONSISTENT = 5
EXIT_DATA = 6

EXIT_HELP = f"""exit codes:
  {EXIT_OK}  success
  {EXIT_MISMATCH}  verification found a mismatch (row-level diff printed)
  {EXIT_USAGE}  unknown command or flag
  {EXIT_INPUT}  malformed permutation, diagram, word or expression
  {EXIT_RANGE}  g (or another index) outside the supported range
  {EXIT_INCONSISTENT}  a computed class contradicts a structural statement
  {EXIT_DATA}  golden data missing or unreadable

row order: by length of w, then by the one-line notation of w.
"""

ENUM_MAX_G = 6
CLASS_MAX_G = 5

COLUMN_ORDER = ("len", "Y", "w", "nu", "word", "f", "a", "i", "value", "tau", "mult", "class")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_USAGE, f"{self.prog}: {message}")


# -- argument coercion -----------------------------------------------------------

def _check_g(g: int | None, limit: int) -> int:
    if g is None:
        raise CliError(EXIT_USAGE, "--g is required")
    if not 1 <= g <= limit:
        raise CliError(EXIT_RANGE, f"g={g} outside the supported range 1..{limit}")
    return g


def _perm(text: str, g: int):
    try:
        return parse_perm(text, g)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None


def _young(text: str, g: int) -> YoungDiagram:
    try:
        return parse_young(text, g)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None


def _final(args, g: int):
    """The final element named by ``--w`` or ``--y``, or ``None``."""
    if args.w and args.y:
        raise CliError(EXIT_USAGE, "give either --w or --y, not both")
    if args.y:
        return final_of_young(_young(args.y, g))
    if args.w:
        w = _perm(args.w, g)
        if not is_final(w):
            raise CliError(EXIT_INPUT, f"{w} is not a final element")
        return w
    return None


def _sample(items: list, args) -> list:
    k = getattr(args, "sample", None)
    if k is None or k >= len(items):
        return items
    rng = random.Random(args.seed)
    keep = set(rng.sample(range(len(items)), k))
    return [x for n, x in enumerate(items) if n in keep]


def _pmap(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# -- output ------------------------------------------------------------------------

def _cell(value, style: str):
    if isinstance(value, (FlagClass, BaseClass)):
        if style == "json":
            return class_to_json(value)
        return value.to_str("latex" if style == "latex" else "text")
    if value is None:
        return None if style == "json" else "-"
    if style == "latex" and isinstance(value, YoungDiagram) and not value.parts:
        return r"\emptyset"
    if style == "json" and isinstance(value, (int, bool)):
        return value
    text = str(value)
    if style == "latex":
        text = text.replace("{", r"\{").replace("}", r"\}")
    return text


def render(rows: list[dict], fmt: str, bare: bool = False) -> str:
    """Format rows; ``bare`` prints only the last column of a single text row."""
    if not rows:
        return ""
    cols = [c for c in COLUMN_ORDER if any(c in r for r in rows)]
    cols += [c for c in rows[0] if c not in cols]
    if fmt == "json":
        return "".join(json.dumps({c: _cell(r.get(c), "json") for c in cols}, ensure_ascii=False,
                                  sort_keys=False) + "\n" for r in rows)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for r in rows:
            writer.writerow([_cell(r.get(c), "csv") for c in cols])
        return buf.getvalue()
    if fmt == "latex":
        return "".join(" & ".join(_cell(r.get(c), "latex") for c in cols) + r" \\" + "\n" for r in rows)
    if bare and len(rows) == 1:
        return _cell(rows[0][cols[-1]], "text") + "\n"
    return "".join("\t".join(_cell(r.get(c), "text") for c in cols) + "\n" for r in rows)


def _element_row(w, with_young: bool = False) -> dict:
    row = {"len": w.length}
    if with_young:
        row["Y"] = young_of(w) if is_final(w) else None
    row["w"] = w
    row["nu"] = final_type_of(w)
    row["word"] = format_word(reduced_word(w))
    return row


# -- commands ------------------------------------------------------------------------

def cmd_weyl_list(args):
    g = _check_g(args.g, ENUM_MAX_G)
    items = _sample(enumerate_weyl(g, args.which), args)
    return [_element_row(w, with_young=True) for w in items], False


def cmd_weyl_order(args):
    g = _check_g(args.g, ENUM_MAX_G)
    u = _perm(args.u, g)
    if args.v:
        v = _perm(args.v, g)
        return [{"value": f"{u} {'<=' if bruhat_leq(u, v) else 'not <='} {v}"}], True
    below = sorted(covers(u), key=lambda x: x.sort_key())
    return [_element_row(x) for x in below], False


def _uc_like(args, fn):
    g = _check_g(args.g, CLASS_MAX_G)
    if args.w:
        items = [_perm(args.w, g)]
    else:
        items = _sample(enumerate_weyl(g, args.which), args)
    values = _pmap(fn, items, args.jobs)
    rows = [{"len": w.length, "w": w, "word": format_word(reduced_word(w)), "class": c}
            for w, c in zip(items, values)]
    return rows, bool(args.w)


def cmd_class_uc(args):
    return _uc_like(args, class_u)


def cmd_push(args):
    return _uc_like(args, push_u)


def _finals(args, g: int) -> tuple[list, bool]:
    w = _final(args, g)
    if w is not None:
        return [w], True
    return _sample(enumerate_weyl(g, "final"), args), False


def cmd_class_vc(args):
    g = _check_g(args.g, CLASS_MAX_G)
    items, single = _finals(args, g)
    values = _pmap(class_v, items, args.jobs)
    return [{"len": w.length, "Y": young_of(w), "w": w, "nu": final_type_of(w), "class": c}
            for w, c in zip(items, values)], single


def cmd_class_prank(args):
    g = _check_g(args.g, CLASS_MAX_G)
    fs = [args.f] if args.f is not None else list(range(g, -1, -1))
    if any(not 0 <= f <= g for f in fs):
        raise CliError(EXIT_RANGE, f"p-rank must lie in 0..{g}")
    return [{"f": f, "class": prank_class(f, g)} for f in fs], args.f is not None


def cmd_class_anumber(args):
    g = _check_g(args.g, CLASS_MAX_G)
    As = [args.a] if args.a is not None else list(range(1, g + 1))
    if any(not 1 <= a <= g for a in As):
        raise CliError(EXIT_RANGE, f"a-number must lie in 1..{g}")
    return [{"a": a, "class": anumber_class(a, g)} for a in As], args.a is not None


def cmd_class_kt(args):
    g = _check_g(args.g, CLASS_MAX_G)
    items, single = _finals(args, g)
    rows = []
    for w in items:
        c = kt_class(young_of(w), args.interpretation)
        rows.append({"Y": young_of(w), "w": w, "matches_vc": c == class_v(w), "class": c})
    print("experimental, unvalidated: the sub-bundle Chern classes have no settled meaning on the base",
          file=sys.stderr)
    return rows, False


def cmd_gamma(args):
    g = _check_g(args.g, ENUM_MAX_G)
    items, single = _finals(args, g)
    rows = []
    for w in items:
        gm = gamma_of(w)
        rows.append({"Y": young_of(w), "w": w, "value": gm(args.at) if args.at is not None else gm})
    return rows, single


def cmd_pieri(args):
    g = _check_g(args.g, CLASS_MAX_G)
    w = _perm(args.w, g)
    if not 1 <= args.i <= g:
        raise CliError(EXIT_RANGE, f"i must lie in 1..{g}")
    covered, residual = pieri_expand(w, args.i)
    rows = [{"w": w, "i": args.i, "value": "factor", "class": pieri_class(w, args.i)}]
    for v in sorted(covered, key=lambda x: x.sort_key()):
        rows.append({"w": v, "i": args.i, "value": "covered", "mult": covered[v]})
    for v in sorted(residual, key=lambda x: x.sort_key()):
        rows.append({"w": v, "i": args.i, "value": "residual", "mult": residual[v]})
    if residual:
        print(f"support outside the elements covered by {w}: {len(residual)} terms", file=sys.stderr)
    return rows, False


def cmd_tau(args):
    g = _check_g(args.g, CLASS_MAX_G)
    items = [_perm(args.w, g)] if args.w else _sample(enumerate_weyl(g, args.which), args)
    values = _pmap(tau_of, items, args.jobs)
    rows = []
    for w, t in zip(items, values):
        rows.append({"len": w.length, "w": w, "tau": t[0] if t else None, "mult": t[1] if t else None})
    return rows, False


def cmd_degree(args):
    g = _check_g(args.g, CLASS_MAX_G)
    try:
        c = parse_class(args.cls, g)
        factor = parse_ratp(args.times) if args.times else RatP(1)
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    if isinstance(c, FlagClass):
        raise CliError(EXIT_INPUT, "degree needs a class on the base (no l variables)")
    try:
        value = degree(c.scale(factor))
    except ValueError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None
    return [{"value": value}], True


def cmd_verify(args):
    if args.g is None:
        raise CliError(EXIT_USAGE, "--g is required")
    if args.g not in SUPPORTED:
        raise CliError(EXIT_RANGE, f"no golden table for g={args.g}; available: {SUPPORTED}")
    try:
        report = verify_tables(args.g, jobs=args.jobs)
    except FileNotFoundError as exc:
        raise CliError(EXIT_DATA, str(exc)) from None
    if args.format == "json":
        text = json.dumps({"g": args.g, "passed": report.passed, "rows": len(report.rows),
                           "notes": report.notes,
                           "results": [{"label": r.label, "ok": r.ok, "diffs": r.diffs}
                                       for r in report.rows]}, ensure_ascii=False) + "\n"
    elif args.verbose or not report.ok:
        text = "\n".join(report.lines()) + "\n"
    else:
        text = report.summary() + "\n"
    return text, EXIT_OK if report.ok else EXIT_MISMATCH


# -- parser ------------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--g", type=int, help="genus (rank of W_g)")
    p.add_argument("--format", choices=("text", "json", "csv", "latex"), default="text")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for per-element work")
    p.add_argument("--seed", type=int, default=0, help="seed for --sample")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = _Parser(prog="eo-strata", description="Exact cycle classes of E-O strata.",
                  epilog=EXIT_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(parent, name, fn, help_text):
        p = parent.add_parser(name, parents=[common], help=help_text, epilog=EXIT_HELP,
                              formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=fn)
        return p

    def group(name, help_text):
        p = sub.add_parser(name, help=help_text)
        return p.add_subparsers(dest="sub", required=True, parser_class=_Parser)

    weyl = group("weyl", "enumerate W_g and compare elements")
    p = leaf(weyl, "list", cmd_weyl_list, "list elements with length, Y, nu and a reduced word")
    p.add_argument("--which", choices=("all", "final", "admissible"), default="all")
    p.add_argument("--sample", type=int, help="random subset of this size (see --seed)")
    p = leaf(weyl, "order", cmd_weyl_order, "Bruhat comparison, or the elements covered by --u")
    p.add_argument("--u", required=True)
    p.add_argument("--v")

    cls = group("class", "cycle classes")
    for name, fn, text in (("uc", cmd_class_uc, "class of the flag-space stratum of w"),):
        p = leaf(cls, name, fn, text)
        p.add_argument("--w")
        p.add_argument("--which", choices=("all", "final", "admissible"), default="all")
        p.add_argument("--sample", type=int)
    for name, fn, text in (("vc", cmd_class_vc, "E-O class of a final element or Young diagram"),
                           ("kt", cmd_class_kt, "experimental closed formula for the E-O class")):
        p = leaf(cls, name, fn, text)
        p.add_argument("--w")
        p.add_argument("--y")
        p.add_argument("--sample", type=int)
        if name == "kt":
            p.add_argument("--interpretation", choices=("full", "truncated"), default="truncated")
    p = leaf(cls, "prank", cmd_class_prank, "class of the locus of p-rank <= f")
    p.add_argument("--f", type=int)
    p = leaf(cls, "anumber", cmd_class_anumber, "class of the locus of a-number >= a")
    p.add_argument("--a", type=int)

    p = leaf(sub, "push", cmd_push, "pushdown of the flag-space class to the base")
    p.add_argument("--w")
    p.add_argument("--which", choices=("all", "final", "admissible"), default="all")
    p.add_argument("--sample", type=int)

    p = leaf(sub, "gamma", cmd_gamma, "flag-count factor gamma of a final element")
    p.add_argument("--w")
    p.add_argument("--y")
    p.add_argument("--at", type=int, help="evaluate at this integer")
    p.add_argument("--sample", type=int)

    p = leaf(sub, "pieri", cmd_pieri, "Pieri factor and its expansion on covered elements")
    p.add_argument("--w", required=True)
    p.add_argument("--i", type=int, required=True)

    p = leaf(sub, "tau", cmd_tau, "final element and multiplicity of the pushdown")
    p.add_argument("--w")
    p.add_argument("--which", choices=("all", "final", "admissible"), default="all")
    p.add_argument("--sample", type=int)

    p = leaf(sub, "degree", cmd_degree, "degree of a top-degree base class")
    p.add_argument("--class", dest="cls", required=True, help='e.g. "λ1" or "L1L2"')
    p.add_argument("--times", help="scalar factor, e.g. p-1")

    p = leaf(sub, "verify", cmd_verify, "recompute the golden tables (g = 2, 3, 4)")
    p.add_argument("--verbose", action="store_true", help="list passing rows too")
    return top


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise CliError(EXIT_USAGE, "--jobs must be positive")
        result = args.func(args)
        if args.func is cmd_verify:
            text, code = result
        else:
            rows, bare = result
            text, code = render(rows, args.format, bare), EXIT_OK
        _emit(text, args.out)
        return code
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (InconsistencyError, SingularSystem) as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
