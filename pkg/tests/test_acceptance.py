"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

All comparisons are exact.  Criterion 11 is opt-in: set
``EULERGRAPHS_HIGHER_GENUS_FIXTURES`` to a compact fixture file (or several,
separated by ``os.pathsep``) holding chi^{S_n}(Mbar_{g,n}) for g >= 1.
"""

import json
import os
import random
import time
from fractions import Fraction
from math import comb

import pytest

from eulergraphs.cli import main
from eulergraphs.graphs import (aut_type_census, automorphisms, cycle_index_specialize, enumerate_graphs,
                                o_theta, parse_graph, polya_petersen, profile_o_table, vertex_cycle_index)
from eulergraphs.partitions import (GenPartition, Partition, TwoPartition, centralizer_order, class_enumeration,
                                    class_representative, class_size, conjugacy_type, partitions_of)
from eulergraphs.pipeline import (FixtureTable, compactification_requirements, compactified_series,
                                  load_fixtures, stable_maps_polynomial, stable_maps_requirements,
                                  stable_maps_series, stable_maps_strata, stable_maps_value, strata_sum)
from eulergraphs.symfunc import SymFunc, TruncationError, adams, h_to_p, skew_power
from eulergraphs.wreath import WreathSymFunc, act, d_theta
from conftest import FIXTURES
from oracles import (commuting_matchings, conjugacy_orbits, slots_to_wreath, vertex_cycle_index_bruteforce,
                     wreath_elements_as_slots)
from test_graphs import _multisets, profiles_up_to
from test_partitions import small_profiles

BUILTIN = FixtureTable.builtin()
DEGREE3_ROWS = {0: {4: 16, 3: 21, 2: 6}, 1: {4: 216, 3: 247, 2: 55}, 2: {4: 3160, 3: 3342, 2: 645},
          3: {4: 44800, 3: 45114, 2: 8088}, 4: {4: 630352, 3: 613213, 2: 104208}}


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return emit


def T(mapping):
    return TwoPartition({Partition(k): Partition(v) for k, v in mapping.items()})


def random_table(needed, seed, kind):
    rng = random.Random(seed)
    entries = {}
    for g, n in sorted(needed):
        if 2 * g - 2 + n > 0:
            entries[(g, n)] = SymFunc({lam: Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                                       for lam in partitions_of(n)})
    return FixtureTable(entries, {k: "random" for k in entries}, None, kind)


def test_criterion_01_degree3_genus0(report, capsys, tmp_path):
    start = time.monotonic()
    got = []
    for r in range(1, 6):
        code = main(["stablemaps", "--r", str(r), "--d", "3", "--gmax", "0", "--nmax", "0",
                     "--cache-dir", str(tmp_path), "--json"])
        out = capsys.readouterr().out
        assert code == 0
        entries = json.loads(out)["entries"]
        got.append(SymFunc.from_json(entries[0]["value"]))
    expected = [sum(c * comb(r + 1, k) for k, c in DEGREE3_ROWS[0].items()) for r in range(1, 6)]
    elapsed = time.monotonic() - start
    ok = got == [SymFunc.constant(v) for v in expected] and expected == [6, 39, 136, 350, 750] and elapsed < 60
    report(1, ok, f"r=1..5 -> {[str(v) for v in got]}, {elapsed:.1f}s")


def test_criterion_02_grassmannian(report):
    h1 = h_to_p(1)
    ok = True
    for r in range(1, 7):
        s = stable_maps_series(BUILTIN, r, 1, 0, 1)
        ok &= s.coefficient(-1, 0) == SymFunc.constant(comb(r + 1, 2))
        ok &= s.coefficient(-1, 1) == 2 * comb(r + 1, 2) * h1
    report(2, ok, "d=1: C(r+1,2) and 2*C(r+1,2)*h1 for r=1..6")


def test_criterion_03_polynomiality(report):
    ok, forms = True, []
    for d in (1, 2, 3):
        poly = stable_maps_polynomial(BUILTIN, d, 0, 0, range(1, d + 5))
        ok &= poly.degree <= d + 1 and not poly(-1) and len(poly.held_out) == 2
        ok &= all(poly(r) == stable_maps_value(BUILTIN, r, d, 0, 0) for r in poly.held_out)
        forms.append(poly.binomial_str())
    report(3, ok, "; ".join(forms))


def test_criterion_04_zeta_golden(report, capsys):
    code = main(["zeta", str(FIXTURES / "graphs" / "subdivided_theta.graph"), "--no-cache"])
    out = capsys.readouterr().out
    expected = ("zeta_G = 1/12*(p_1[1,1]^3*p_1[1,1,1]^2 + 3*p_1[1,1]*p_2[1,1]*p_1[2,1]^2 + 2*p_3[1,1]*p_1[3]^2"
                " + 3*p_2[1,1]*p_1[2]*p_2[1,1,1] + p_1[2]^3*p_2[1,1,1] + 2*p_3[2]*p_2[3])")
    G = parse_graph("vertices: 5; edges: [(0,3), (0,4), (1,3), (1,4), (2,3), (2,4)]")
    census = aut_type_census(G)
    ok = (code == 0 and expected in out.splitlines() and "|Aut(G)| = 12" in out
          and len(automorphisms(G)) == 12 and sorted(census.values()) == [1, 1, 2, 2, 3, 3])
    report(4, ok, "six terms, |Aut(G)| = 12")


def test_criterion_05_cycle_index(report):
    count, ok = 0, True
    for nu in profiles_up_to(6, 0):
        for G in enumerate_graphs(nu):
            z = cycle_index_specialize(polya_petersen(G))
            ok &= z == vertex_cycle_index_bruteforce(G.n_vertices, G.vertex_edges())
            ok &= z == vertex_cycle_index(G)
            count += 1
    report(5, ok and count == 17, f"{count} connected multigraphs with at most 3 edges")


def test_criterion_06_specht(report):
    checked, elements, ok = 0, 0, True
    for nu in small_profiles(10 ** 4):
        els = list(wreath_elements_as_slots(nu))
        ok &= len(els) == nu.group_order()
        labels = []
        for orbit in conjugacy_orbits(els):
            types = {conjugacy_type(slots_to_wreath(nu, x)) for x in orbit}
            ok &= len(types) == 1
            theta = types.pop()
            ok &= class_size(theta) == len(orbit) == nu.group_order() // centralizer_order(theta)
            labels.append(theta)
        ok &= sorted(labels) == class_enumeration(nu) and len(set(labels)) == len(labels)
        ok &= sum(class_size(t) for t in labels) == nu.group_order()
        checked += 1
        elements += len(els)
    report(6, ok, f"{checked} profiles, {elements} elements")


def test_criterion_07_o_theta(report):
    ok = o_theta(T({(): (1,)})) == 1
    profiles = profiles_up_to(8)
    for nu in profiles:
        table = profile_o_table(nu)
        ok &= sum(table.values(), Fraction(0)) == len(enumerate_graphs(nu))
        totals = {}
        for G in enumerate_graphs(nu, connected_only=False):
            auts = automorphisms(G)
            for t, c in aut_type_census(G, auts).items():
                totals[t] = totals.get(t, 0) + Fraction(c, len(auts))
        for theta in class_enumeration(nu):
            fix = commuting_matchings(class_representative(theta))
            ok &= totals.get(theta, 0) == Fraction(fix, centralizer_order(theta))
    report(7, ok, f"{len(profiles)} profiles with at most 8 half-edges")


def _all_thetas(max_norm, max_isolated=2):
    out = set()
    for total in range(max_norm + 1):
        for vals in _multisets(total):
            for iso in range(max_isolated + 1):
                if vals or iso:
                    out.update(class_enumeration(GenPartition.from_valences(list(vals) + [0] * iso)))
    return sorted(out)


def test_criterion_08_generator_identity(report):
    rng = random.Random(8)
    thetas = _all_thetas(6)

    def rand_f():
        return SymFunc({rng.choice(partitions_of(rng.randint(0, 5))): Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                        for _ in range(rng.randint(1, 4))})

    def rand_w():
        return WreathSymFunc({rng.choice(thetas): Fraction(rng.randint(1, 3), rng.randint(1, 2))
                              for _ in range(rng.randint(1, 2))})

    ok = True
    for _ in range(100):
        f = rand_f()
        n, mu = rng.randint(1, 3), rng.choice(partitions_of(rng.randint(0, 3)))
        ok &= act(WreathSymFunc.generator(n, mu), f) == adams(n, skew_power(mu, f))
        g, h = rand_w(), rand_w()
        ok &= act(g * h, f) == act(g, f) * act(h, f)
    f = h_to_p(3) + SymFunc.p(2, 1) - Fraction(1, 2) * SymFunc.p(1) + SymFunc.p(4) + h_to_p(2) + h_to_p(6)
    for theta in thetas:
        ok &= d_theta(theta, f) == act(WreathSymFunc.monomial(theta), f)
    report(8, ok, f"100 random instances, {len(thetas)} classes with norm <= 6")


def test_criterion_09_path_equivalence(report):
    ok, windows = True, 0
    for g_max in range(3):
        for n_max in range(5):
            if (g_max, n_max) == (0, 0):
                continue
            a = random_table(compactification_requirements(g_max, n_max), 97 * g_max + n_max, "open")
            ok &= compactified_series(a, g_max, n_max).same_values(strata_sum(a, g_max, n_max))
            windows += 1
    for r in (1, 2):
        for d in (1, 2):
            for g_max, n_max in [(0, 0), (0, 3), (1, 2), (2, 2)]:
                abar = random_table(stable_maps_requirements(r, d, g_max, n_max), r + 7 * d + 31 * g_max, "compact")
                ok &= stable_maps_series(abar, r, d, g_max, n_max).same_values(
                    stable_maps_strata(abar, r, d, g_max, n_max))
                windows += 1
    report(9, ok, f"{windows} windows agree")


def test_criterion_10_mbar11(report):
    a = FixtureTable({(0, 3): h_to_p(3), (1, 1): SymFunc.p(1)}, {}, None, "open")
    value = compactified_series(a, 1, 1).coefficient(0, 1)
    report(10, value == 2 * h_to_p(1), f"coefficient at t^0 = {value}")


def test_criterion_11_degree3_higher_genus(report, capsys):
    paths = os.environ.get("EULERGRAPHS_HIGHER_GENUS_FIXTURES")
    if not paths:
        with capsys.disabled():
            print("\ncriterion 11: SKIP - set EULERGRAPHS_HIGHER_GENUS_FIXTURES to run")
        pytest.skip("opt-in: needs externally sourced fixtures for g >= 1")
    table = FixtureTable.builtin("compact")
    for path in paths.split(os.pathsep):
        table = table.merged(load_fixtures(path, include_builtin=False))
    rows, ok = [], True
    for g in range(1, 5):
        try:
            poly = stable_maps_polynomial(table, 3, g, 0, range(1, 8))
        except TruncationError as exc:
            if g == 1:
                report(11, False, f"g=1 row not computable: {exc}")
            break
        want = {k: SymFunc.constant(c) for k, c in DEGREE3_ROWS[g].items()}
        ok &= poly.binomial == want
        rows.append(f"g={g}: {poly.binomial_str()}")
    report(11, ok, "; ".join(rows))
