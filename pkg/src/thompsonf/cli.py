"""Command-line front end.

Words are read in application order: ``"x0 x1"`` applies x0 first, then x1.
This is the reverse of the usual f(g(x)) composition order.

Exit status: 0 on success or a passing check, 1 on a failing check (or a map
outside the wreath subgroup), 2 on usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import plmap, treepair, verify, wreath
from .dyadic import Dyadic
from .words import WordSyntaxError, eval_word, parse

GRAPH_WIDTH = 64
GRAPH_HEIGHT = 32


class UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        raise UsageError(f"{name} must be an integer")


def _word_map(text: str) -> plmap.PLMap:
    try:
        return eval_word(parse(text))
    except WordSyntaxError as e:
        raise UsageError(str(e))


def _fmt(x, power: bool) -> str:
    if isinstance(x, Dyadic):
        return str(x) if power else x.frac_str()
    return str(x)


def ascii_graph(f: plmap.PLMap, width: int = GRAPH_WIDTH, height: int = GRAPH_HEIGHT) -> str:
    """Plot f on [0,1] sampled at column midpoints; '.' marks the diagonal."""
    grid = [[" "] * width for _ in range(height)]
    for c in range(width):
        x = Dyadic(2 * c + 1, (2 * width).bit_length() - 1)
        diag = min(height - 1, (x * height).floor())
        grid[diag][c] = "."
        row = min(height - 1, (plmap.evaluate(f, x) * height).floor())
        grid[row][c] = "*"
    lines = ["+" + "-" * width + "+"]
    lines += ["|" + "".join(r) + "|" for r in reversed(grid)]
    lines.append("+" + "-" * width + "+")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="thompsonf",
        description="Exact computations in Thompson's group F as dyadic PL maps of [0,1]. "
        "Words are applied left to right (maps act on the right).",
    )
    p.add_argument("--power", action="store_true", help="print dyadics as n/2^e instead of n/d")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("eval", help="image of a point under a word")
    s.add_argument("word")
    s.add_argument("--at", required=True, help="dyadic point, e.g. 3/8 or 3/2^3")

    for verb, help_ in [
        ("map", "canonical breakpoint list"),
        ("support", "open intervals moved by the map"),
        ("slopes", "slope of every linear piece"),
        ("is-trivial", "word problem: is the word the identity?"),
        ("abelianize", "(initial, final) slope exponents"),
        ("wreath-decompose", "normal form a^m prod a^-k b^m_k a^k"),
        ("graph", "ASCII plot on a 64x32 grid"),
        ("tree", "reduced tree-pair diagram"),
    ]:
        s = sub.add_parser(verb, help=help_)
        s.add_argument("word")
        if verb == "wreath-decompose":
            s.add_argument("--json", action="store_true")

    s = sub.add_parser("wreath-embed", help="map of a Z wr Z element")
    s.add_argument("spec", help='e.g. "shift=1; coeffs={-2:1, 0:3}"')

    s = sub.add_parser("verify", help="run a verification check")
    s.add_argument("check", choices=["lemma1", "claim", "relations", "centralizer", "all"])
    s.add_argument("--kmax", type=int)
    s.add_argument("--nmax", type=int)
    s.add_argument("--radius", type=int)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("export", help="breakpoints as JSON or CSV")
    s.add_argument("word")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    return p


def _run(args, out) -> int:
    power = args.power
    verb = args.verb

    if verb == "verify":
        kmax = args.kmax if args.kmax is not None else _env_int("THOMPSONF_KMAX", 20)
        nmax = args.nmax if args.nmax is not None else _env_int("THOMPSONF_NMAX", 20)
        radius = args.radius if args.radius is not None else _env_int("THOMPSONF_RADIUS", 8)
        if kmax < 1 or nmax < 0 or radius < 0:
            raise UsageError("--kmax must be >= 1, --nmax and --radius >= 0")
        try:
            if args.check == "lemma1":
                reports = [verify.verify_lemma1(kmax)]
            elif args.check == "claim":
                reports = [verify.verify_claim(kmax)]
            elif args.check == "relations":
                reports = [verify.verify_relations(nmax)]
            elif args.check == "centralizer":
                reports = [verify.check_x0_centralizer(radius),
                           verify.check_base_centralizer(radius, min(kmax, 3))]
            else:
                reports = verify.run_all(kmax, nmax, radius)
        except verify.CapExceeded as e:
            raise UsageError(str(e))
        if args.json:
            print(verify.reports_json(reports), file=out)
        else:
            for r in reports:
                print(r.render(), file=out)
        return 0 if all(r.passed for r in reports) else 1

    if verb == "wreath-embed":
        try:
            u = wreath.WreathElement.parse(args.spec)
        except ValueError as e:
            raise UsageError(str(e))
        print(wreath.embed(u).render(not power), file=out)
        return 0

    f = _word_map(args.word)

    if verb == "eval":
        try:
            x = Dyadic.parse(args.at)
            print(_fmt(plmap.evaluate(f, x), power), file=out)
        except ValueError as e:
            raise UsageError(str(e))
    elif verb == "map":
        print(f.render(not power), file=out)
    elif verb == "support":
        sup = plmap.support(f)
        if not sup:
            print("empty", file=out)
        for iv in sup:
            print(f"({_fmt(iv.lo, power)}, {_fmt(iv.hi, power)})", file=out)
    elif verb == "slopes":
        for (x0, _), (x1, _), s in zip(f.points, f.points[1:], f.slopes):
            print(f"[{_fmt(x0, power)}, {_fmt(x1, power)}] 2^{s}", file=out)
    elif verb == "is-trivial":
        print("true" if f.is_identity else "false", file=out)
    elif verb == "abelianize":
        print("({}, {})".format(*plmap.abelianize(f)), file=out)
    elif verb == "wreath-decompose":
        try:
            u = wreath.decompose(f)
        except wreath.NotInWreathSubgroup as e:
            print(f"not in <a, b>: {e}", file=sys.stderr)
            return 1
        print(json.dumps(u.to_json()) if args.json else str(u), file=out)
    elif verb == "graph":
        print(ascii_graph(f), file=out)
    elif verb == "tree":
        print(treepair.from_map(f), file=out)
    elif verb == "export":
        if args.format == "json":
            print(json.dumps(f.to_json()), file=out)
        else:
            out.write(f.to_csv())
    return 0


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _run(args, out)
    except UsageError as e:
        print(f"thompsonf: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
