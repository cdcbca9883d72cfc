"""End-to-end graph sums for compactified moduli and stable maps.

The two main entry points are :func:`compactified_series`, which turns the
open-moduli series ``a`` into ``abar`` by summing ``O(Theta) D_Theta(a)``
over 2-partitions, and :func:`stable_maps_series`, which does the same over
the coloured, weighted graphs of degree-``d`` maps to ``P^r``.

Every computation is truncated to an explicit window ``(g_max, n_max)``.
Before evaluating, the inputs needed for that window are listed vertex by
vertex; if any of them is not available the computation stops with a
:class:`~eulergraphs.symfunc.TruncationError` naming the missing ``(g, n)``.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from .graphs import (DecoratedGraph, HalfEdgeGraph, colored_o_table, decorated_automorphisms,
                     enumerate_graphs, enumerate_stable_map_graphs, polya_petersen, profile_o_table)
from .partitions import GenPartition, Partition, TwoPartition
from .symfunc import (GenusSeries, SymFunc, TruncationError, _adams_sym, euler_specializations,
                      format_rational, h_to_p, skew_power)
from .wreath import WreathSymFunc, act

STABLE = "stable"
FORMAL = "formal"

OTable = Dict[TwoPartition, Fraction]


class FixtureError(ValueError):
    """A fixture file or table failed validation."""


# --- fixtures -----------------------------------------------------------------

@dataclass
class FixtureTable:
    """Equivariant Euler characteristics indexed by ``(g, n)``.

    ``window`` promises that every ``(g, n)`` with ``g <= g_max`` and
    ``n <= n_max`` is either listed or zero.  ``kind`` is ``"compact"`` for
    tables of ``chi(Mbar_{g,n})`` and ``"open"`` for ``chi(M_{g,n})``.
    """

    entries: Dict[Tuple[int, int], SymFunc] = field(default_factory=dict)
    provenance: Dict[Tuple[int, int], str] = field(default_factory=dict)
    window: Optional[Tuple[int, int]] = None
    kind: str = "compact"

    @classmethod
    def builtin(cls, kind: str = "compact") -> "FixtureTable":
        return cls({(0, 3): h_to_p(3)}, {(0, 3): "built-in: (g,n)=(0,3) is a point with trivial action"},
                   None, kind)

    def available(self, g: int, n: int) -> bool:
        if 2 * g - 2 + n <= 0 or (g, n) in self.entries:
            return True
        if self.window is None:
            return False
        return g <= self.window[0] and n <= self.window[1]

    def by_exponent(self) -> Dict[int, SymFunc]:
        out: Dict[int, SymFunc] = {}
        for (g, _), f in sorted(self.entries.items()):
            out[g - 1] = out.get(g - 1, SymFunc.zero()) + f
        return out

    def merged(self, other: "FixtureTable") -> "FixtureTable":
        if other.kind != self.kind:
            raise FixtureError(f"cannot merge a {other.kind!r} table into a {self.kind!r} table")
        entries = dict(self.entries)
        prov = dict(self.provenance)
        for key, f in other.entries.items():
            if key in entries and entries[key] != f:
                raise FixtureError(f"conflicting values for (g,n)={key}")
            entries[key] = f
            prov.setdefault(key, other.provenance.get(key, ""))
        window = other.window if other.window is not None else self.window
        return FixtureTable(entries, prov, window, self.kind)

    def to_series(self) -> GenusSeries:
        g_max, n_max = self.window if self.window is not None else (None, None)
        return GenusSeries(self.by_exponent(), g_max, n_max, floor=-1)

    def to_json(self):
        out: List[dict] = [{"window": {"g_max": self.window[0], "n_max": self.window[1]} if self.window else None,
                            "kind": self.kind}]
        for (g, n) in sorted(self.entries):
            out.append({"g": g, "n": n, "value": self.entries[(g, n)].to_json(),
                        "provenance": self.provenance.get((g, n), "")})
        return out


def _parse_fixture_json(data, where: str) -> FixtureTable:
    window = None
    kind = "compact"
    if isinstance(data, Mapping):
        items = data.get("entries")
        if items is None:
            raise FixtureError(f"{where}: object form needs an 'entries' array")
        if data.get("window") is not None:
            window = data["window"]
        kind = data.get("kind", kind)
    elif isinstance(data, list):
        items = []
        for x in data:
            if isinstance(x, Mapping) and ("window" in x or "kind" in x) and "g" not in x:
                if x.get("window") is not None:
                    window = x["window"]
                kind = x.get("kind", kind)
            else:
                items.append(x)
    else:
        raise FixtureError(f"{where}: expected a JSON array or object")
    if kind not in ("compact", "open"):
        raise FixtureError(f"{where}: kind must be 'compact' or 'open', got {kind!r}")
    if window is not None:
        try:
            window = (int(window["g_max"]), int(window["n_max"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FixtureError(f"{where}: window needs integer g_max and n_max") from exc
    entries: Dict[Tuple[int, int], SymFunc] = {}
    prov: Dict[Tuple[int, int], str] = {}
    for idx, item in enumerate(items):
        loc = f"{where}: entry {idx}"
        if not isinstance(item, Mapping):
            raise FixtureError(f"{loc}: expected an object")
        try:
            g, n = int(item["g"]), int(item["n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FixtureError(f"{loc}: needs integer 'g' and 'n'") from exc
        if "value" not in item:
            raise FixtureError(f"{loc}: missing 'value'")
        if not str(item.get("provenance", "")).strip():
            raise FixtureError(f"{loc} (g={g}, n={n}): a provenance string is mandatory")
        try:
            f = SymFunc.from_json(item["value"])
        except ValueError as exc:
            raise FixtureError(f"{loc} (g={g}, n={n}): {exc}") from exc
        if (g, n) in entries:
            raise FixtureError(f"{loc}: duplicate entry for (g,n)=({g},{n})")
        entries[(g, n)] = f
        prov[(g, n)] = str(item["provenance"])
    return FixtureTable(entries, prov, window, kind)


@dataclass
class ValidationReport:
    problems: List[str]
    checked: int

    @property
    def ok(self) -> bool:
        return not self.problems

    def __str__(self):
        if self.ok:
            return f"{self.checked} entries validated"
        return "\n".join(self.problems)


def validate_fixtures(table: FixtureTable) -> ValidationReport:
    problems = []
    for (g, n), f in sorted(table.entries.items()):
        where = f"(g,n)=({g},{n})"
        if g < 0 or n < 0:
            problems.append(f"{where}: negative index")
            continue
        if 2 * g - 2 + n <= 0:
            problems.append(f"{where}: unstable, 2g-2+n must be positive")
        bad = sorted(d for d in f.degrees() if d != n)
        if bad:
            problems.append(f"{where}: terms of degree {bad} in an entry of degree {n}")
        plain, quotient = euler_specializations(f, n)
        if plain.denominator != 1:
            problems.append(f"{where}: non-integral Euler characteristic {format_rational(plain)}")
        if quotient.denominator != 1:
            problems.append(f"{where}: non-integral quotient Euler characteristic {format_rational(quotient)}")
        if table.kind == "compact" and (g, n) == (0, 4) and plain != 2:
            problems.append(f"{where}: Euler characteristic {format_rational(plain)}, expected 2 (a P^1)")
    return ValidationReport(problems, len(table.entries))


def load_fixtures(path: Union[str, Path], include_builtin: bool = True) -> FixtureTable:
    """Read a fixture file, validate it and merge it with the built-in entries."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    except OSError as exc:
        raise FixtureError(f"{path}: cannot read fixture file: {exc.strerror}") from exc
    table = _parse_fixture_json(data, str(path))
    report = validate_fixtures(table)
    if not report.ok:
        raise FixtureError("\n".join(f"{path}: {p}" for p in report.problems))
    if include_builtin:
        table = FixtureTable.builtin(table.kind).merged(table)
    return table


# --- input sources ------------------------------------------------------------

class _Source:
    """Uniform view of the input series: data per exponent plus availability."""

    def __init__(self, data: Dict[int, SymFunc], available: Callable[[int, int], bool]):
        self.data = data
        self.available = available


def _source(a, formal: bool = False) -> _Source:
    if isinstance(a, FixtureTable):
        data = a.by_exponent()
        avail = a.available
    elif isinstance(a, GenusSeries):
        data = dict(a.coeffs)

        def avail(g, n, a=a):
            if 2 * g - 2 + n <= 0:
                return True
            return g - 1 <= a.e_max and (a.n_max is None or n <= a.n_max)
    else:
        raise TypeError(f"expected a FixtureTable or GenusSeries, got {type(a).__name__}")
    if not formal:
        return _Source(data, avail)
    data = dict(data)
    data[-1] = data.get(-1, SymFunc.zero()) + h_to_p(1) + h_to_p(2)

    def avail_formal(g, n):
        return (g == 0 and n in (1, 2)) or avail(g, n)

    return _Source(data, avail_formal)


# --- window bookkeeping -------------------------------------------------------

def _min_markings(g: int, k: int, floor: str) -> Optional[int]:
    if floor == FORMAL and g == 0:
        return max(0, 1 - k)
    return max(0, 3 - 2 * g - k)


def required_entries(valences: Sequence[int], betti: int, g_max: int, n_max: int,
                     floor: str = STABLE) -> Set[Tuple[int, int]]:
    """Input entries ``(g_v, k_v + n_v)`` that can reach the window.

    Empty exactly when a connected graph with these valences and first Betti
    number cannot contribute to any genus ``<= g_max`` with ``<= n_max``
    markings.
    """
    budget = g_max - betti
    if budget < 0 or n_max < 0:
        return set()
    V = len(valences)
    need: Set[Tuple[int, int]] = set()
    for genera in product(range(budget + 1), repeat=V):
        if sum(genera) > budget:
            continue
        mins = [_min_markings(g, k, floor) for g, k in zip(genera, valences)]
        slack = n_max - sum(mins)
        if slack < 0:
            continue
        for g, k, m in zip(genera, valences, mins):
            for n in range(m, m + slack + 1):
                need.add((g, k + n))
    return need


def _profile_betti(nu: GenPartition) -> int:
    return nu.half_edge_count // 2 - nu.vertex_count + 1


def stable_profiles(g_max: int, n_max: int, floor: str = STABLE,
                    max_edges: Optional[int] = None) -> List[GenPartition]:
    """Valence profiles of connected graphs that can reach the window."""
    if floor == STABLE:
        v_max = 2 * g_max - 2 + n_max
    else:
        # formal genus-0 vertices may be bivalent without markings; only the edge bound limits size
        if max_edges is None:
            raise ValueError("the formal vertex floor needs an edge bound")
        v_max = max_edges + 1
    out = []
    if v_max < 1:
        return out
    for V in range(1, v_max + 1):
        e_lo = 0 if V == 1 else V - 1
        e_hi = V - 1 + g_max
        if max_edges is not None:
            e_hi = min(e_hi, max_edges)
        for E in range(e_lo, e_hi + 1):
            if V == 1:
                candidates = [(2 * E,)]
            else:
                candidates = _sorted_parts(2 * E, V)
            for vals in candidates:
                if required_entries(vals, E - V + 1, g_max, n_max, floor):
                    out.append(GenPartition.from_valences(vals))
    return out


def _sorted_parts(total: int, parts: int, smallest: int = 1):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(smallest, total // parts + 1):
        for rest in _sorted_parts(total - first, parts - 1, first):
            yield (first,) + rest


def _check_available(src: _Source, needed: Iterable[Tuple[int, int]], what: str):
    missing = sorted(x for x in set(needed) if not src.available(*x))
    if missing:
        listed = ", ".join(f"(g={g}, n={n})" for g, n in missing)
        raise TruncationError(f"{what}: input is missing required entries {listed}")


# --- truncated evaluation of D_Theta ------------------------------------------

def _series_mul(a: Dict[int, SymFunc], b: Dict[int, SymFunc], e_cap: float, n_cap: int) -> Dict[int, SymFunc]:
    out: Dict[int, SymFunc] = {}
    for e1, f1 in a.items():
        for e2, f2 in b.items():
            e = e1 + e2
            if e > e_cap:
                continue
            p = f1.mul_truncated(f2, n_cap)
            if p:
                out[e] = out.get(e, SymFunc.zero()) + p
    return {e: f for e, f in out.items() if f}


class _Evaluator:
    """Caches ``psi_n(p_mu^perp a)`` while evaluating many ``D_Theta``."""

    def __init__(self, src: _Source, n_max: int):
        self.data = src.data
        self.n_max = n_max
        self._cache: Dict[Tuple[int, Partition], Dict[int, SymFunc]] = {}

    def factor(self, n: int, mu: Partition) -> Dict[int, SymFunc]:
        key = (n, mu)
        if key not in self._cache:
            out = {}
            for e, f in self.data.items():
                g = skew_power(mu, f.truncate(mu.size + self.n_max // n))
                if g:
                    out[n * e] = _adams_sym(n, g).truncate(self.n_max)
            self._cache[key] = {e: f for e, f in out.items() if f}
        return self._cache[key]

    def d_theta(self, theta: TwoPartition, e_cap: int) -> Dict[int, SymFunc]:
        """``D_Theta(a)`` keeping exponents ``<= e_cap`` and degrees ``<= n_max``."""
        factors = [(n, mu) for mu, lam in theta.items() for n in lam.parts]
        # every factor psi_n(...) has exponents >= -n
        remaining = -sum(n for n, _ in factors)
        acc: Dict[int, SymFunc] = {0: SymFunc.one()}
        for n, mu in factors:
            remaining += n
            acc = _series_mul(acc, self.factor(n, mu), e_cap - remaining, self.n_max)
            if not acc:
                break
        return acc


def _accumulate(total: Dict[int, SymFunc], part: Dict[int, SymFunc], coeff: Fraction, shift: int):
    for e, f in part.items():
        total[e + shift] = total.get(e + shift, SymFunc.zero()) + f * coeff


def _finish(total: Dict[int, SymFunc], g_max: int, n_max: int) -> GenusSeries:
    return GenusSeries({e: f for e, f in total.items() if e <= g_max - 1}, g_max, n_max, floor=-1)


def _pmap(fn, items: List, jobs: int) -> List:
    if jobs is None or jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


# --- compactification sums ----------------------------------------------------

def relevant_thetas(g_max: int, n_max: int, vertex_floor: str = STABLE, max_edges: Optional[int] = None,
                    loopless: bool = False) -> List[TwoPartition]:
    """2-partitions realised by a connected graph that can reach the window."""
    out = set()
    for nu in stable_profiles(g_max, n_max, vertex_floor, max_edges):
        if loopless:
            for G in enumerate_graphs(nu, True, loops=False):
                out.update(profile_census_keys(G))
        else:
            out.update(profile_o_table(nu))
    return sorted(out)


def profile_census_keys(G: HalfEdgeGraph) -> Set[TwoPartition]:
    from .graphs import aut_type_census
    return set(aut_type_census(G))


def compactification_requirements(g_max: int, n_max: int) -> Set[Tuple[int, int]]:
    """Input entries ``(g, n)`` of ``a`` read by :func:`compactified_series` on the window."""
    needed: Set[Tuple[int, int]] = set()
    for nu in stable_profiles(g_max, n_max, STABLE):
        needed |= required_entries(nu.valences(), _profile_betti(nu), g_max, n_max, STABLE)
    return needed


def stable_maps_requirements(r: int, d: int, g_max: int, n_max: int) -> Set[Tuple[int, int]]:
    """Entries ``(g, n)`` of ``abar`` read by :func:`stable_maps_series`, formal ones excluded."""
    needed: Set[Tuple[int, int]] = set()
    for _, need in _stable_map_needs(r, d, g_max, n_max):
        needed |= need
    return {(g, n) for g, n in needed if 2 * g - 2 + n > 0}


def compactified_series(a, g_max: int, n_max: int, o_tables: Optional[Callable[[GenPartition], OTable]] = None,
                        max_norm: Optional[int] = None, jobs: int = 1) -> GenusSeries:
    """``abar = sum_Theta O(Theta) D_Theta(a) t^{||Theta||/2}`` on the window.

    ``a`` is a :class:`FixtureTable` (kind ``open``) or a :class:`GenusSeries`
    holding ``chi(M_{g,n})``.  ``max_norm`` restricts the sum to
    ``||Theta|| <= max_norm``.
    """
    src = _source(a)
    profiles = stable_profiles(g_max, n_max, STABLE)
    if max_norm is not None:
        profiles = [nu for nu in profiles if nu.half_edge_count <= max_norm]
    needed: Set[Tuple[int, int]] = set()
    for nu in profiles:
        needed |= required_entries(nu.valences(), _profile_betti(nu), g_max, n_max, STABLE)
    _check_available(src, needed, f"compactified series on window (g_max={g_max}, n_max={n_max})")
    tables = _pmap(o_tables or profile_o_table, profiles, jobs)
    ev = _Evaluator(src, n_max)
    total: Dict[int, SymFunc] = {}
    for nu, table in zip(profiles, tables):
        for theta, coeff in sorted(table.items()):
            if not coeff:
                continue
            E = theta.norm // 2
            _accumulate(total, ev.d_theta(theta, g_max - 1 - E), coeff, E)
    return _finish(total, g_max, n_max)


def stratum_series(G: HalfEdgeGraph, a, g_max: Optional[int] = None, n_max: Optional[int] = None,
                   auts=None) -> GenusSeries:
    """Contribution ``(zeta_G (.) a) t^{|E(G)|}`` of the curves with dual graph ``G``.

    With a window, the inputs are checked and the result truncated to it;
    without one, ``a`` must be a :class:`GenusSeries` and the window follows
    from series arithmetic.
    """
    zeta = polya_petersen(G, auts)
    if g_max is None or n_max is None:
        if not isinstance(a, GenusSeries):
            raise ValueError("a window (g_max, n_max) is required for fixture-table input")
        return act(zeta, a).shift(G.edge_count)
    if not G.is_connected():
        raise ValueError("stratum series with a window need a connected graph")
    src = _source(a)
    needed = required_entries(G.valences(), G.first_betti(), g_max, n_max, STABLE)
    _check_available(src, needed, f"stratum {G.to_text()}")
    return _zeta_sum(zeta, src, G.edge_count, g_max, n_max)


def _zeta_sum(zeta: WreathSymFunc, src: _Source, E: int, g_max: int, n_max: int) -> GenusSeries:
    ev = _Evaluator(src, n_max)
    total: Dict[int, SymFunc] = {}
    for theta, coeff in zeta.sorted_terms():
        _accumulate(total, ev.d_theta(theta, g_max - 1 - E), coeff, E)
    return _finish(total, g_max, n_max)


def strata_sum(a, g_max: int, n_max: int) -> GenusSeries:
    """Sum of :func:`stratum_series` over every connected graph reaching the window."""
    total = GenusSeries({}, g_max, n_max, floor=-1)
    for nu in stable_profiles(g_max, n_max, STABLE):
        for G in enumerate_graphs(nu, connected_only=True):
            total = total + stratum_series(G, a, g_max, n_max)
    return total


# --- stable maps --------------------------------------------------------------

def _stable_map_needs(r: int, d: int, g_max: int, n_max: int):
    for D in enumerate_stable_map_graphs(r, d):
        need = required_entries(D.base.valences(), D.base.first_betti(), g_max, n_max, FORMAL)
        if need:
            yield D, need


def stable_maps_series(abar, r: int, d: int, g_max: int, n_max: int,
                       o_table: Optional[OTable] = None) -> GenusSeries:
    """``abar_{P^r,d} = sum_Theta O_{P^r,d}(Theta) D_Theta(abar_dagger) t^{||Theta||/2}``.

    ``abar`` holds ``chi(Mbar_{g,n})``; the formal terms ``h_1 + h_2`` at
    ``t^{-1}`` are added here.  Pass ``FixtureTable.builtin()`` when only
    genus-0 data up to three points is needed.
    """
    if r < 1 or d < 1:
        raise ValueError("stable maps need r >= 1 and d >= 1")
    src = _source(abar, formal=True)
    needed: Set[Tuple[int, int]] = set()
    for _, need in _stable_map_needs(r, d, g_max, n_max):
        needed |= need
    _check_available(src, needed, f"stable maps to P^{r} of degree {d} on window (g_max={g_max}, n_max={n_max})")
    table = colored_o_table(r, d) if o_table is None else o_table
    ev = _Evaluator(src, n_max)
    total: Dict[int, SymFunc] = {}
    for theta, coeff in sorted(table.items()):
        E = theta.norm // 2
        if E - theta.profile().vertex_count + 1 > g_max:
            continue
        _accumulate(total, ev.d_theta(theta, g_max - 1 - E), coeff, E)
    return _finish(total, g_max, n_max)


def stable_maps_strata(abar, r: int, d: int, g_max: int, n_max: int) -> GenusSeries:
    """The same series summed graph by graph with decorated Polya-Petersen characters."""
    src = _source(abar, formal=True)
    total = GenusSeries({}, g_max, n_max, floor=-1)
    for D, need in _stable_map_needs(r, d, g_max, n_max):
        _check_available(src, need, f"stable-map graph {D.to_text()}")
        zeta = polya_petersen(D.base, decorated_automorphisms(D))
        total = total + _zeta_sum(zeta, src, D.base.edge_count, g_max, n_max)
    return total


# --- polynomiality in r -------------------------------------------------------

def _poly_mul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


class InterpolationError(ArithmeticError):
    pass


@dataclass
class RPolynomial:
    """``chi(Mbar_{g,n}(P^r, d))`` as a polynomial in ``r`` with coefficients in Lambda.

    ``coeffs[k]`` multiplies ``r^k``; ``binomial[k]`` multiplies ``C(r+1, k)``.
    """

    d: int
    g: int
    n: int
    coeffs: List[SymFunc]
    binomial: Dict[int, SymFunc]
    held_out: List[int]

    def __call__(self, r) -> SymFunc:
        out = SymFunc.zero()
        for k, c in enumerate(self.coeffs):
            out = out + c * Fraction(r) ** k
        return out

    @property
    def degree(self) -> int:
        nz = [k for k, c in enumerate(self.coeffs) if c]
        return max(nz) if nz else -1

    def binomial_str(self) -> str:
        bits = []
        for k in sorted(self.binomial, reverse=True):
            c = self.binomial[k]
            scalar = not c or set(c.terms) == {Partition()}
            if scalar:
                v = c.coefficient(())
                sign = "-" if v < 0 else "+"
                body = f"{format_rational(abs(v))}·C(r+1,{k})"
            else:
                sign, body = "+", f"({c})·C(r+1,{k})"
            bits.append((sign, body))
        if not bits:
            return "0"
        text = ("-" if bits[0][0] == "-" else "") + bits[0][1]
        for sign, body in bits[1:]:
            text += sign + body
        return text

    def to_json(self):
        return {"d": self.d, "g": self.g, "n": self.n,
                "power_basis": [c.to_json() for c in self.coeffs],
                "binomial_basis": {str(k): self.binomial[k].to_json() for k in sorted(self.binomial)},
                "held_out": self.held_out}


def interpolate_in_r(d: int, g: int, n: int, samples: Sequence[Tuple[int, SymFunc]]) -> RPolynomial:
    """Fit ``d + 2`` samples and check the structure predicted for stable maps.

    The fit must vanish at ``r = -1`` (divisibility by ``r + 1``), have
    degree ``<= d + 1`` and reproduce every further sample exactly.
    """
    samples = sorted(samples, key=lambda s: s[0])
    rs = [s[0] for s in samples]
    if len(set(rs)) != len(rs):
        raise InterpolationError("sample points must be distinct")
    need = d + 2
    if len(samples) < need:
        raise InterpolationError(f"need at least {need} samples for degree {d}, got {len(samples)}")
    fit, rest = samples[:need], samples[need:]
    coeffs = [SymFunc.zero() for _ in range(need)]
    for i, (ri, yi) in enumerate(fit):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (rj, _) in enumerate(fit):
            if j != i:
                basis = _poly_mul(basis, [Fraction(-rj), Fraction(1)])
                denom *= ri - rj
        for k, b in enumerate(basis):
            if b:
                coeffs[k] = coeffs[k] + yi * (b / denom)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    poly = RPolynomial(d, g, n, coeffs, {}, [r for r, _ in rest])
    if poly.degree > d + 1:
        raise InterpolationError(f"degree {poly.degree} exceeds d + 1 = {d + 1}")
    for r, y in rest:
        if poly(r) != y:
            raise InterpolationError(f"held-out sample r={r} disagrees: {poly(r)} != {y}")
    if poly(-1):
        raise InterpolationError(f"fit is not divisible by (r + 1): value {poly(-1)} at r = -1")
    # forward differences in x = r + 1 give the C(x, k) coefficients
    values = [poly(x - 1) for x in range(d + 2)]
    binom: Dict[int, SymFunc] = {}
    row = values
    for k in range(d + 2):
        if row[0]:
            binom[k] = row[0]
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    poly.binomial = binom
    for x in range(d + 3):
        check = SymFunc.zero()
        for k, c in binom.items():
            check = check + c * comb(x, k)
        if check != poly(x - 1):
            raise InterpolationError("binomial form does not reproduce the fit")
    return poly


def stable_maps_value(abar, r: int, d: int, g: int, n: int) -> SymFunc:
    """``chi^{S_n}(Mbar_{g,n}(P^r, d))``."""
    return stable_maps_series(abar, r, d, g, n).coefficient(g - 1, n)


def stable_maps_polynomial(abar, d: int, g: int, n: int, rs: Iterable[int]) -> RPolynomial:
    samples = [(r, stable_maps_value(abar, r, d, g, n)) for r in sorted(set(rs))]
    return interpolate_in_r(d, g, n, samples)
