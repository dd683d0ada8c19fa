"""Command-line interface.

Every command prints a human report, or with ``--tsv`` the same facts as
``key<TAB>value`` lines.  Exit codes: 0 answer produced, 2 invalid input,
3 bound exceeded or result unsaturated.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path as FsPath

from . import fixtures
from .contraction import ContractionError, contract, identity_map, reduce_removable_two_cycles
from .io import ParseError, read, serialize, write
from .matchings import (classify_two_cycles, enumerate_perfect_matchings, is_cancellative,
                        is_nondegenerate, simple_matchings, uncovered_arrows)
from .monoid import center, cycle_algebra, is_cyclic, minimal_generators, monomial_str
from .paths import find_non_cancellative_pairs
from .quiver import InvalidQuiver, PathError, validate

OK, INVALID, BOUND = 0, 2, 3


class UsageError(Exception):
    pass


class Report:
    """Ordered facts.  Each has a machine key, a value and the human line showing it.

    An empty human line marks a fact already shown in another line.
    """

    def __init__(self):
        self.rows = []

    def add(self, key, value, text=None):
        self.rows.append((key, value, f"{key}: {value}" if text is None else text))

    def note(self, text):
        self.rows.append((None, None, text))

    def emit(self, tsv: bool, out=None):
        out = out or sys.stdout
        for key, value, text in self.rows:
            if tsv:
                if key is not None:
                    out.write(f"{key}\t{value}\n")
            elif text:
                out.write(text + "\n")


def load_quiver(spec: str):
    """A file path, or the name of a bundled fixture."""
    p = FsPath(spec)
    if p.exists():
        return read(p)
    if spec in fixtures.NAMES:
        return fixtures.load(spec)
    raise UsageError(f"no such file or fixture: {spec}")


def _arrow_list(text: str) -> list:
    return [a for a in (x.strip() for x in text.split(",")) if a]


def _names(q, ids) -> str:
    return ", ".join(q.name(a) for a in sorted(ids)) or "-"


def _require_valid(q):
    v = validate(q)
    if v:
        raise InvalidQuiver(v)


def _map(args):
    q = load_quiver(args.file)
    _require_valid(q)
    arrows = _arrow_list(args.arrows) if getattr(args, "arrows", None) else []
    for a in arrows:
        q.arrow_id(a)
    return contract(q, arrows) if arrows else identity_map(q)


# -- commands ------------------------------------------------------------------------

def cmd_validate(args, r):
    q = load_quiver(args.file)
    v = validate(q)
    r.add("vertices", q.vertex_count)
    r.add("arrows", len(q.arrows))
    r.add("faces", len(q.faces))
    if v:
        r.add("valid", "no")
        for x in v:
            r.add("violation", f"{x.code}: {x.message}")
        return INVALID
    r.add("valid", "yes")
    return OK


def cmd_matchings(args, r):
    q = load_quiver(args.file)
    _require_valid(q)
    fam = enumerate_perfect_matchings(q)
    r.add("perfect_matchings", len(fam), f"{len(fam)} perfect matchings")
    for name, d in zip(fam.names, fam.matchings):
        r.add(f"matching.{name}", _names(q, d), f"  {name}: {{{_names(q, d)}}}")
    unc = uncovered_arrows(q, fam)
    r.add("nondegenerate", "yes" if not unc else "no")
    if unc:
        r.add("uncovered", _names(q, unc), f"arrows in no perfect matching: {_names(q, unc)}")
    return OK


def cmd_simple(args, r):
    q = load_quiver(args.file)
    _require_valid(q)
    fam = simple_matchings(q)
    r.add("simple_matchings", len(fam), f"{len(fam)} simple matchings")
    for name, d in zip(fam.names, fam.matchings):
        r.add(f"matching.{name}", _names(q, d), f"  {name}: {{{_names(q, d)}}}")
    return OK


def cmd_cancellative(args, r):
    q = load_quiver(args.file)
    _require_valid(q)
    c = is_cancellative(q)
    if c:
        r.add("cancellative", "yes", "cancellative")
    else:
        r.add("cancellative", "no", f"non-cancellative; uncovered arrows: {_names(q, c.uncovered)}")
        r.add("uncovered", _names(q, c.uncovered), "")
    if not is_nondegenerate(q):
        r.add("degenerate", "yes", "degenerate: some arrow lies in no perfect matching")
    for f, kind in classify_two_cycles(q):
        names = " ".join(q.name(a) for a in q.faces[f].arrows)
        r.add("two_cycle", f"face {f}: {names} {kind}", f"two-cycle {names} (face {f}): {kind}")
    return OK


def cmd_pairs(args, r):
    q = load_quiver(args.file)
    _require_valid(q)
    if not is_nondegenerate(q):
        raise UsageError("pair search needs a nondegenerate quiver")
    pairs = find_non_cancellative_pairs(q, args.max_len, limit=args.limit)
    r.add("max_len", args.max_len, f"search bound: paths of length <= {args.max_len}")
    r.add("pairs", len(pairs), f"{len(pairs)} non-cancellative pairs found")
    for k, p in enumerate(pairs):
        r.add(f"pair.{k}", f"{q.words(p.p)} | {q.words(p.r)} | witness {p.witness}",
              f"  {q.words(p.p)}  /  {q.words(p.r)}   (equal after unit cycle power {p.witness})")
    if pairs.truncated:
        r.add("truncated", "yes", f"stopped after {args.limit} pairs")
    if not pairs:
        r.note("no pair up to the bound; this does not prove cancellativity")
    return OK


def cmd_contract(args, r):
    m = _map(args)
    out = m.target
    if args.reduce_2cycles:
        out = reduce_removable_two_cycles(out)
    r.add("contracted", _names(m.source, m.contracted))
    r.add("target_vertices", out.vertex_count)
    r.add("target_arrows", len(out.arrows))
    r.add("target_faces", len(out.faces))
    if args.out:
        write(out, args.out)
        r.add("written", args.out)
    else:
        for k, line in enumerate(serialize(out).splitlines()):
            r.add(f"target.{k}", line, line)
    return OK


def _bounds(args):
    return dict(degree_bound=args.degree_bound, box=args.box, max_len=args.max_len)


def _bounds_rows(args, r):
    r.add("degree_bound", args.degree_bound,
          f"bounds: degree {args.degree_bound}, box {args.box}, max length {args.max_len}")
    r.add("box", args.box, "")
    r.add("max_len", args.max_len, "")


def _describe_monoid(r, prefix, mon):
    gens = minimal_generators(mon)
    text = ", ".join(monomial_str(g, mon.names) for g in gens)
    r.add(f"{prefix}.generators", text, f"{prefix} minimal generators (up to degree {mon.degree_bound}): {text}")
    counts = mon.counts_by_degree()
    r.add(f"{prefix}.counts", " ".join(map(str, counts)),
          f"{prefix} monomials by degree 0..{mon.degree_bound}: {' '.join(map(str, counts))}")
    r.add(f"{prefix}.saturated", "yes" if mon.saturated else "no")


def _plot(args, r, series, title):
    if getattr(args, "plot", None):
        from .plots import counts_figure
        counts_figure(series, title, args.plot)
        r.add("figure", args.plot)


def _algebra_command(fn, prefix):
    def run(args, r):
        m = _map(args)
        mon = fn(m, method=args.method, **_bounds(args))
        _bounds_rows(args, r)
        r.add("variables", " ".join(mon.names))
        _describe_monoid(r, prefix, mon)
        _plot(args, r, {prefix: mon}, f"{args.file} {prefix}")
        return OK if mon.saturated else BOUND
    return run


def cmd_check_cyclic(args, r):
    m = _map(args)
    rep = is_cyclic(m, method=args.method, **_bounds(args))
    d = args.degree_bound
    _bounds_rows(args, r)
    canc = rep.cancellative_target
    r.add("target_cancellative", "yes" if canc else "no",
          "target cancellative" if canc else
          f"target non-cancellative; uncovered arrows: {_names(m.target, rep.uncovered_target)}")
    r.add("variables", " ".join(rep.source_algebra.names))
    _describe_monoid(r, "source", rep.source_algebra)
    _describe_monoid(r, "target", rep.target_algebra)
    cmp = rep.comparison
    if not cmp.equal:
        mono = monomial_str(cmp.discrepancy, rep.source_algebra.names)
        where = "target" if cmp.side == "right" else "source"
        r.add("discrepancy", mono, f"first discrepancy: {mono} (only in the {where} cycle algebra)")
        r.add("discrepancy_side", where, "")
    verdict = "yes" if rep.cyclic else "no"
    r.add("cyclic", verdict, f"cyclic: {verdict} (up to degree {d})")
    _plot(args, r, {"source": rep.source_algebra, "target": rep.target_algebra}, f"{args.file} cycle algebras")
    if not rep.saturated:
        r.note("warning: unsaturated at the given bounds")
        return BOUND
    return OK


def _values(text, m):
    from .representations import ones, point
    if not text:
        return ones(m)
    vals = {}
    for part in _arrow_list(text):
        name, sep, v = part.partition("=")
        if not sep:
            raise UsageError(f"bad value {part!r}; expected name=rational")
        try:
            vals[name.strip()] = Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad rational {v!r}") from None
    try:
        return point(m, vals)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_rep(args, r):
    from .representations import NonGenericPoint, build_representation, is_simple, reps_equivalent
    spec, _, arrows = args.mapspec.partition(":")
    args.file, args.arrows = spec, arrows
    m = _map(args)
    b = _values(args.values, m)
    rep = build_representation(m, b)
    r.add("point", " ".join(f"{k}={v}" for k, v in b.items()))
    for a, v in enumerate(rep.arrow_values):
        r.add(f"arrow.{m.source.name(a)}", v, f"  {m.source.name(a)} -> {v}")
    r.add("simple", "yes" if is_simple(m, rep) else "no")
    if args.compare:
        b2 = _values(args.compare, m)
        try:
            eq = reps_equivalent(m, b, b2, args.box, args.max_len, args.degree_bound)
        except NonGenericPoint as e:
            raise UsageError(str(e)) from None
        r.add("equivalent", "yes" if eq else "no",
              f"equivalent to {' '.join(f'{k}={v}' for k, v in b2.items())}: {'yes' if eq else 'no'}")
    return OK


def cmd_render(args, r):
    from .render import render
    q = load_quiver(args.file)
    _require_valid(q)
    contracted = _arrow_list(args.contracted) if args.contracted else []
    matching = ()
    if args.matching:
        fam = simple_matchings(q) if args.matching.startswith("m") else enumerate_perfect_matchings(q)
        if args.matching not in fam.names:
            raise UsageError(f"unknown matching {args.matching!r}")
        matching = fam.matchings[fam.names.index(args.matching)]
    path = q.path(*args.path.split()) if args.path else None
    svg = render(q, contracted=contracted, matching=matching, path=path, title=args.file)
    FsPath(args.out).write_text(svg, encoding="utf-8", newline="\n")
    r.add("written", args.out)
    return OK


def cmd_fixtures(args, r):
    if args.emit:
        if args.emit not in fixtures.NAMES:
            raise UsageError(f"unknown fixture {args.emit!r}")
        sys.stdout.write(fixtures.text(args.emit))
        return OK
    for n in fixtures.NAMES:
        r.add("fixture", n, n)
    for n, spec in fixtures.MAPS.items():
        r.add(f"map.{n}", f"{spec.source} {','.join(spec.arrows)}",
              f"map {n}: contract {','.join(spec.arrows)} in {spec.source}")
    return OK


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dimerlab", description="Dimer quivers on the torus.")
    p.add_argument("--tsv", action="store_true", help="machine-readable key<TAB>value output")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--tsv", action="store_true", default=argparse.SUPPRESS)
        s.set_defaults(fn=fn)
        return s

    for name, fn, h in (("validate", cmd_validate, "check the dimer quiver axioms"),
                        ("matchings", cmd_matchings, "list perfect matchings"),
                        ("simple", cmd_simple, "list simple matchings"),
                        ("cancellative", cmd_cancellative, "decide cancellativity")):
        add(name, fn, h).add_argument("file")

    s = add("pairs", cmd_pairs, "search for non-cancellative pairs")
    s.add_argument("file")
    s.add_argument("--max-len", type=int, default=12)
    s.add_argument("--limit", type=int, default=None)

    s = add("contract", cmd_contract, "contract a set of arrows")
    s.add_argument("file")
    s.add_argument("--arrows", required=True)
    s.add_argument("--out")
    s.add_argument("--reduce-2cycles", action="store_true")

    def bounds(s):
        s.add_argument("--degree-bound", type=int, default=8)
        s.add_argument("--box", type=int, default=3)
        s.add_argument("--max-len", type=int, default=12)
        s.add_argument("--method", choices=("cycles", "labels"), default="cycles")

    s = add("check-cyclic", cmd_check_cyclic, "test whether a contraction is cyclic")
    s.add_argument("file")
    s.add_argument("arrows")
    bounds(s)
    s.add_argument("--plot", help="write a monomial-count figure to this file")

    for name, fn in (("cycle-algebra", _algebra_command(cycle_algebra, "cycle_algebra")),
                     ("center", _algebra_command(center, "center"))):
        s = add(name, fn, f"{name.replace('-', ' ')} of a contraction, truncated")
        s.add_argument("file")
        s.add_argument("arrows", nargs="?", default="")
        bounds(s)
        s.add_argument("--plot", help="write a monomial-count figure to this file")

    s = add("rep", cmd_rep, "evaluate a point to a representation")
    s.add_argument("mapspec", help="FILE or FILE:a,b,... (arrows to contract)")
    s.add_argument("--values", help="name=rational,... over the target simple matchings (default all 1)")
    s.add_argument("--compare", help="second point; report whether the representations are isomorphic")
    s.add_argument("--degree-bound", type=int, default=8)
    s.add_argument("--box", type=int, default=3)
    s.add_argument("--max-len", type=int, default=12)

    s = add("render", cmd_render, "draw the quiver as SVG")
    s.add_argument("file")
    s.add_argument("--out", required=True)
    s.add_argument("--contracted", help="arrows to highlight as contracted")
    s.add_argument("--matching", help="matching name to highlight (P.. perfect, m.. simple)")
    s.add_argument("--path", help="arrow names in traversal order")

    s = add("fixtures", cmd_fixtures, "bundled fixtures")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--emit")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INVALID if e.code else OK
    r = Report()
    try:
        code = args.fn(args, r)
    except ContractionError as e:
        print(f"error: {e}", file=sys.stderr)
        if args.tsv:
            print(f"error\t{e.reason}")
        return INVALID
    except (ParseError, InvalidQuiver, UsageError, PathError, KeyError, ValueError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return INVALID
    r.emit(args.tsv)
    return code


if __name__ == "__main__":
    sys.exit(main())
