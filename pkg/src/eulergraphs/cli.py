"""Command-line interface.

Every subcommand prints plain aligned text by default and JSON with
``--json``.  Rationals are printed as ``num/den`` and integers without a
denominator.  Errors go to stderr with exit status 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .cache import CacheConsistencyError, OCache
from .graphs import (DecoratedGraph, HalfEdgeGraph, automorphisms, colored_o_table, cycle_index_specialize,
                     decorated_automorphisms, parse_graph, polya_petersen, profile_o_table)
from .partitions import GenPartition, TwoPartition, centralizer_order, class_enumeration, class_size
from .pipeline import (FixtureError, FixtureTable, InterpolationError, compactified_series, interpolate_in_r,
                       load_fixtures, stable_maps_series, stratum_series)
from .symfunc import GenusSeries, SymFunc, TruncationError, format_rational
from .wreath import WreathSymFunc, monomial_str


class UsageError(ValueError):
    pass


# --- formatting ---------------------------------------------------------------

def _align(rows: Sequence[Sequence[str]]) -> str:
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for r in rows:
        cells = [c.ljust(w) for c, w in zip(r[:-1], widths)] + [r[-1]]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _zeta_text(z: WreathSymFunc) -> str:
    """``1/N*(c1*m1 + c2*m2 + ...)`` over the common denominator ``N``."""
    terms = z.sorted_terms()
    if not terms:
        return "0"
    den = 1
    for _, c in terms:
        den = lcm(den, c.denominator)
    bits = []
    for theta, c in terms:
        k = c * den
        mono = monomial_str(theta) or "1"
        body = mono if abs(k) == 1 else f"{format_rational(abs(k))}*{mono}"
        if not bits:
            bits.append(("-" if k < 0 else "") + body)
        else:
            bits.append(("- " if k < 0 else "+ ") + body)
    inner = " ".join(bits)
    return inner if den == 1 else f"1/{den}*({inner})"


def _series_rows(s: GenusSeries, g_max: int, n_max: int, stable_only: bool):
    rows = []
    for g in range(g_max + 1):
        for n in range(n_max + 1):
            if stable_only and 2 * g - 2 + n <= 0:
                continue
            rows.append((g, n, s.coefficient(g - 1, n)))
    return rows


def _print_series(s: GenusSeries, g_max: int, n_max: int, as_json: bool, stable_only: bool, title: str):
    rows = _series_rows(s, g_max, n_max, stable_only)
    if as_json:
        return _dump({"title": title, "window": {"g_max": g_max, "n_max": n_max},
                      "entries": [{"g": g, "n": n, "value": f.to_json()} for g, n, f in rows]})
    table = [("g", "n", "value")] + [(str(g), str(n), str(f)) for g, n, f in rows]
    return f"# {title}\n" + _align(table)


# --- argument helpers ---------------------------------------------------------

def _parse_theta(text: str) -> TwoPartition:
    try:
        return TwoPartition.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad 2-partition: {exc}") from exc


def _parse_nu(text: str) -> GenPartition:
    try:
        return GenPartition.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad valence profile: {exc}") from exc


def _parse_r_range(text: str) -> List[int]:
    out = set()
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        for sep in ("..", "-"):
            if sep in chunk:
                lo, hi = chunk.split(sep, 1)
                try:
                    out.update(range(int(lo), int(hi) + 1))
                except ValueError as exc:
                    raise UsageError(f"bad r range {text!r}") from exc
                break
        else:
            try:
                out.add(int(chunk))
            except ValueError as exc:
                raise UsageError(f"bad r value {chunk!r}") from exc
    if not out or min(out) < 1:
        raise UsageError(f"r values must be positive integers, got {text!r}")
    return sorted(out)


def _read_graph(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc
    # allow '#' comment lines
    text = "\n".join(line for line in text.splitlines() if not line.lstrip().startswith("#"))
    try:
        return parse_graph(text.replace("\n", " "))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for '{args.command}'")


def _cache(args) -> Optional[OCache]:
    return None if args.no_cache else OCache(args.cache_dir)


def _profile_tables(args) -> Callable[[GenPartition], Dict]:
    c = _cache(args)
    return profile_o_table if c is None else c.profile_table


def _colored(args, r: int, d: int):
    c = _cache(args)
    return colored_o_table(r, d) if c is None else c.colored_table(r, d)


def _fixtures(args, kind: str, required: bool) -> FixtureTable:
    if args.fixtures is None:
        if required:
            raise UsageError(f"--fixtures is required for '{args.command}'")
        return FixtureTable.builtin(kind)
    table = load_fixtures(args.fixtures)
    if table.kind != kind:
        raise UsageError(f"{args.fixtures}: '{args.command}' needs a fixture table of kind {kind!r}, "
                         f"got {table.kind!r}")
    return table


# --- commands -----------------------------------------------------------------

def cmd_classes(args) -> str:
    nu = _parse_nu(args.nu)
    rows = [(t, centralizer_order(t), class_size(t)) for t in class_enumeration(nu)]
    if args.json:
        return _dump({"nu": str(nu), "group_order": nu.group_order(),
                      "classes": [{"theta": t.serialize(), "z": z, "size": s} for t, z, s in rows]})
    table = [("theta", "z", "size")] + [(t.serialize(), str(z), str(s)) for t, z, s in rows]
    return f"# conjugacy classes of S_nu, nu = {nu}, |S_nu| = {nu.group_order()}\n" + _align(table)


def cmd_otheta(args) -> str:
    if (args.theta is None) == (args.all_for_nu is None):
        raise UsageError("give exactly one of THETA or --all-for-nu")
    colored = args.r is not None or args.d is not None
    if colored:
        _need(args, "r", "d")
        full = _colored(args, args.r, args.d)
    if args.theta is not None:
        theta = _parse_theta(args.theta)
        if theta.norm % 2:
            value = Fraction(0)
        elif colored:
            value = full.get(theta, Fraction(0))
        else:
            value = _profile_tables(args)(theta.profile()).get(theta, Fraction(0))
        if args.json:
            return _dump({"theta": theta.serialize(), "value": format_rational(value)})
        return format_rational(value)
    nu = _parse_nu(args.all_for_nu)
    if colored:
        table = {t: v for t, v in full.items() if t.profile() == nu}
    else:
        table = _profile_tables(args)(nu) if nu.half_edge_count % 2 == 0 else {}
    rows = [(t, table.get(t, Fraction(0))) for t in class_enumeration(nu)]
    if args.json:
        return _dump({"nu": str(nu), "values": [{"theta": t.serialize(), "value": format_rational(v)}
                                                 for t, v in rows]})
    return _align([("theta", "O")] + [(t.serialize(), format_rational(v)) for t, v in rows])


def _graph_and_auts(path: str):
    G = _read_graph(path)
    if isinstance(G, DecoratedGraph):
        return G.base, decorated_automorphisms(G)
    return G, automorphisms(G)


def cmd_zeta(args) -> str:
    G, auts = _graph_and_auts(args.graph)
    z = polya_petersen(G, auts)
    ci = cycle_index_specialize(z)
    if args.json:
        return _dump({"graph": G.to_text(), "aut_order": len(auts), "zeta": z.to_json(),
                      "cycle_index": ci.to_json()})
    return "\n".join([f"graph: {G.to_text()}", f"|Aut(G)| = {len(auts)}", f"zeta_G = {_zeta_text(z)}",
                      f"cycle index = {ci}"])


def cmd_strata(args) -> str:
    _need(args, "gmax", "nmax")
    G, auts = _graph_and_auts(args.graph)
    a = _fixtures(args, "open", True)
    s = stratum_series(G, a, args.gmax, args.nmax, auts)
    return _print_series(s, args.gmax, args.nmax, args.json, True, f"stratum of {G.to_text()}")


def cmd_compactify(args) -> str:
    _need(args, "gmax", "nmax")
    a = _fixtures(args, "open", True)
    s = compactified_series(a, args.gmax, args.nmax, o_tables=_profile_tables(args), jobs=args.jobs)
    return _print_series(s, args.gmax, args.nmax, args.json, True, "compactified series")


def _stable_maps(args, abar, r: int, d: int, g_max: int, n_max: int) -> GenusSeries:
    return stable_maps_series(abar, r, d, g_max, n_max, o_table=_colored(args, r, d))


def cmd_stablemaps(args) -> str:
    _need(args, "r", "d", "gmax", "nmax")
    abar = _fixtures(args, "compact", False)
    s = _stable_maps(args, abar, args.r, args.d, args.gmax, args.nmax)
    return _print_series(s, args.gmax, args.nmax, args.json, False,
                         f"stable maps to P^{args.r} of degree {args.d}")


def cmd_table(args) -> str:
    _need(args, "d", "gmax")
    d, g_max = args.d, args.gmax
    n = args.nmax if args.nmax is not None else 0
    rs = _parse_r_range(args.r_range or f"1..{d + 2}")
    abar = _fixtures(args, "compact", False)
    # fit on r = 1..d+2 and hold out one more value, whatever was asked for
    fit_rs = sorted(set(rs) | set(range(1, d + 4)))
    values = {}
    for r in fit_rs:
        s = _stable_maps(args, abar, r, d, g_max, n)
        for g in range(g_max + 1):
            values[(g, r)] = s.coefficient(g - 1, n)
    rows = []
    for g in range(g_max + 1):
        poly = interpolate_in_r(d, g, n, [(r, values[(g, r)]) for r in fit_rs])
        rows.append((g, [values[(g, r)] for r in rs], poly))
    if args.json:
        return _dump({"d": d, "n": n, "r": rs,
                      "rows": [{"g": g, "values": [v.to_json() for v in vals], "binomial": p.binomial_str(),
                                "polynomial": p.to_json()} for g, vals, p in rows]})
    head = ["g"] + [f"r={r}" for r in rs] + ["binomial form"]
    body = [[str(g)] + [str(v) for v in vals] + [p.binomial_str()] for g, vals, p in rows]
    return f"# chi(Mbar_(g,{n})(P^r, {d}))\n" + _align([head] + body)


COMMANDS = {
    "classes": cmd_classes,
    "otheta": cmd_otheta,
    "zeta": cmd_zeta,
    "strata": cmd_strata,
    "compactify": cmd_compactify,
    "stablemaps": cmd_stablemaps,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixtures", help="fixture table (JSON)")
    common.add_argument("--gmax", type=int)
    common.add_argument("--nmax", type=int)
    common.add_argument("--d", type=int)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--cache-dir", help="directory for the O(Theta) cache")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = argparse.ArgumentParser(prog="eulergraphs", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classes", parents=[common], help="conjugacy classes of S_nu")
    s.add_argument("nu", help='valence profile, e.g. "2^3,3^2"')

    s = sub.add_parser("otheta", parents=[common], help="graph-enumeration coefficients O(Theta)")
    s.add_argument("theta", nargs="?", help='2-partition, e.g. "{[]:[1]}"')
    s.add_argument("--all-for-nu", metavar="NU")
    s.add_argument("--r", type=int, help="use stable-map graphs to P^r (needs --d)")

    s = sub.add_parser("zeta", parents=[common], help="Polya-Petersen character of a graph")
    s.add_argument("graph", help="graph file")

    s = sub.add_parser("strata", parents=[common], help="contribution of one dual graph")
    s.add_argument("graph", help="graph file")

    sub.add_parser("compactify", parents=[common], help="open series to compactified series")

    s = sub.add_parser("stablemaps", parents=[common], help="stable maps to P^r")
    s.add_argument("--r", type=int)

    s = sub.add_parser("table", parents=[common], help="Euler characteristics as polynomials in r")
    s.add_argument("--r", dest="r_range", help='r values, e.g. "1..5" or "1,2,4"')
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        out = COMMANDS[args.command](args)
    except (UsageError, FixtureError, TruncationError, InterpolationError, CacheConsistencyError) as exc:
        print(f"eulergraphs {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"eulergraphs {args.command}: error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
