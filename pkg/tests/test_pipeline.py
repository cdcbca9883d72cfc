import json
import random
from fractions import Fraction
from math import comb

import pytest

from eulergraphs.cache import CacheConsistencyError, OCache
from eulergraphs.graphs import colored_o_table, parse_graph, profile_o_table
from eulergraphs.partitions import GenPartition, Partition, TwoPartition, partitions_of
from eulergraphs.pipeline import (FORMAL, FixtureError, FixtureTable, InterpolationError, compactification_requirements,
                                  compactified_series, interpolate_in_r, load_fixtures, relevant_thetas,
                                  required_entries, stable_maps_polynomial, stable_maps_requirements,
                                  stable_maps_series, stable_maps_strata, stable_maps_value, strata_sum,
                                  stratum_series, validate_fixtures)
from eulergraphs.symfunc import GenusSeries, SymFunc, TruncationError, h_to_p
from conftest import FIXTURES
from oracles import schur

p = SymFunc.p
h1, h2, h3 = h_to_p(1), h_to_p(2), h_to_p(3)
BUILTIN = FixtureTable.builtin()


def T(mapping):
    return TwoPartition({Partition(k): Partition(v) for k, v in mapping.items()})


def random_table(needed, seed, kind="open"):
    rng = random.Random(seed)
    entries = {}
    for g, n in sorted(needed):
        if 2 * g - 2 + n <= 0:
            continue
        entries[(g, n)] = SymFunc({lam: Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                                   for lam in partitions_of(n)})
    return FixtureTable(entries, {k: "random" for k in entries}, None, kind)


# --- bookkeeping -------------------------------------------------------------------------

def test_relevant_thetas_examples():
    assert relevant_thetas(0, 3) == [T({(): (1,)})]
    assert set(relevant_thetas(1, 1)) == {T({(): (1,)}), T({(1, 1): (1,)}), T({(2,): (1,)})}
    for g_max in range(3):
        got = relevant_thetas(g_max, 0, FORMAL, max_edges=1, loopless=True)
        assert {t for t in got if t.norm == 2} == {T({(1,): (1, 1)}), T({(1,): (2,)})}
        # a lone vertex with no markings is stable from genus 2 on
        assert (T({(): (1,)}) in got) == (g_max >= 2)


def test_required_entries():
    # one loop at a single vertex: genus 0 with valence 2 needs one marking
    assert required_entries([2], 1, 1, 1) == {(0, 3)}
    assert required_entries([2], 1, 0, 5) == set()
    assert required_entries([1, 1], 0, 0, 0, FORMAL) == {(0, 1)}


def test_parity_of_tables():
    for nu in [GenPartition.parse(s) for s in ["1^2", "2^2", "1^2,2^2", "3^2", "1,3"]]:
        assert all(t.norm % 2 == 0 for t in profile_o_table(nu))
    assert all(t.norm % 2 == 0 for t in colored_o_table(2, 3))


# --- compactification ------------------------------------------------------------------------

def test_point_compactifies_to_itself():
    s = compactified_series(GenusSeries({-1: h3}, g_max=0, n_max=3), 0, 3)
    assert s.coeffs == {-1: h3}
    assert (s.g_max, s.n_max) == (0, 3)


def test_mbar_1_1():
    a = FixtureTable({(0, 3): h3, (1, 1): p(1)}, {}, None, "open")
    s = compactified_series(a, 1, 1)
    assert s.coefficient(0, 1) == 2 * h1


def test_edgeless_restriction_returns_input():
    a = random_table(compactification_requirements(1, 2), 3)
    s = compactified_series(a, 1, 2, max_norm=0)
    for g in range(2):
        for n in range(3):
            assert s.coefficient(g - 1, n) == a.entries.get((g, n), SymFunc.zero())


def test_missing_input_is_named():
    a = FixtureTable({(0, 3): h3}, {}, None, "open")
    with pytest.raises(TruncationError, match=r"\(g=1, n=1\)"):
        compactified_series(a, 1, 1)


def test_genus0_compactification_matches_fixture():
    open_ = load_fixtures(FIXTURES / "genus0_open.json")
    compact = load_fixtures(FIXTURES / "genus0_compact.json")
    s = compactified_series(open_, 0, 5)
    assert s.coefficient(-1, 4) == 2 * h_to_p(4)
    for n in (3, 4, 5):
        assert s.coefficient(-1, n) == compact.entries[(0, n)]


def test_genus0_open_fixture_matches_representations():
    t = load_fixtures(FIXTURES / "genus0_open.json")
    assert t.entries[(0, 4)] == schur(4) - schur(2, 2)
    assert t.entries[(0, 5)] == schur(5) - schur(3, 2) + schur(3, 1, 1)


# --- strata ---------------------------------------------------------------------------------

def test_stratum_examples():
    a = GenusSeries({-1: h3, 0: p(1)})
    lone = parse_graph("vertices: 1; edges: []")
    assert stratum_series(lone, a).coeffs == a.coeffs
    loop = parse_graph("vertices: 1; edges: [(0,0)]")
    assert stratum_series(loop, GenusSeries({-1: h3})).coeffs == {0: h1}


@pytest.mark.parametrize("g_max,n_max", [(g, n) for g in range(3) for n in range(5) if (g, n) != (0, 0)])
def test_compactification_path_equivalence(g_max, n_max):
    a = random_table(compactification_requirements(g_max, n_max), 100 * g_max + n_max)
    assert compactified_series(a, g_max, n_max).same_values(strata_sum(a, g_max, n_max))


def test_parallel_matches_serial():
    a = random_table(compactification_requirements(2, 2), 7)
    assert compactified_series(a, 2, 2, jobs=2) == compactified_series(a, 2, 2, jobs=1)


# --- stable maps ----------------------------------------------------------------------------------

@pytest.mark.parametrize("r", range(1, 7))
def test_grassmannian(r):
    s = stable_maps_series(BUILTIN, r, 1, 0, 1)
    assert s.coefficient(-1, 0) == SymFunc.constant(comb(r + 1, 2))
    assert s.coefficient(-1, 1) == 2 * comb(r + 1, 2) * h1


def test_degree_three_plane_value():
    assert stable_maps_value(BUILTIN, 2, 3, 0, 0) == SymFunc.constant(39)


def test_stable_maps_need_inputs():
    with pytest.raises(TruncationError, match=r"\(g=1, n=1\)"):
        stable_maps_series(BUILTIN, 1, 2, 1, 0)
    with pytest.raises(ValueError):
        stable_maps_series(BUILTIN, 0, 1, 0, 0)


@pytest.mark.parametrize("r,d,g_max,n_max", [(r, d, g, n) for r in (1, 2) for d in (1, 2)
                                             for g, n in [(0, 3), (1, 2), (2, 2)]])
def test_stable_maps_path_equivalence(r, d, g_max, n_max):
    abar = random_table(stable_maps_requirements(r, d, g_max, n_max), r + 10 * d + 100 * g_max, "compact")
    assert stable_maps_series(abar, r, d, g_max, n_max).same_values(stable_maps_strata(abar, r, d, g_max, n_max))


@pytest.mark.parametrize("d,n", [(d, n) for d in (1, 2, 3) for n in (0, 1, 2)])
def test_polynomiality_in_r(d, n):
    abar = load_fixtures(FIXTURES / "genus0_compact.json")
    poly = stable_maps_polynomial(abar, d, 0, n, range(1, d + 4))
    assert poly.degree <= d + 1
    assert not poly(-1)
    assert poly.held_out == [d + 3]


# --- interpolation ------------------------------------------------------------------------------------

def test_interpolation_examples():
    samples = [(r, SymFunc.constant(v)) for r, v in zip(range(1, 6), [6, 39, 136, 350, 750])]
    poly = interpolate_in_r(3, 0, 0, samples)
    assert poly.binomial == {4: SymFunc.constant(16), 3: SymFunc.constant(21), 2: SymFunc.constant(6)}
    assert poly.binomial_str() == "16·C(r+1,4)+21·C(r+1,3)+6·C(r+1,2)"
    grass = interpolate_in_r(1, 0, 0, [(r, SymFunc.constant(comb(r + 1, 2))) for r in (1, 2, 3)])
    assert grass.binomial_str() == "C(r+1,2)" or grass.binomial_str() == "1·C(r+1,2)"
    zero = interpolate_in_r(2, 0, 0, [(r, SymFunc.zero()) for r in range(1, 6)])
    assert zero.degree == -1 and zero.binomial_str() == "0"


def test_interpolation_failures():
    with pytest.raises(InterpolationError):
        interpolate_in_r(3, 0, 0, [(1, SymFunc.one())])
    with pytest.raises(InterpolationError):
        # values of r^3 at five points do not vanish at r = -1
        interpolate_in_r(3, 0, 0, [(r, SymFunc.constant(r ** 3)) for r in range(1, 6)])
    with pytest.raises(InterpolationError):
        interpolate_in_r(1, 0, 0, [(r, SymFunc.constant(comb(r + 1, 2) + (r == 4))) for r in range(1, 5)])


# --- fixtures --------------------------------------------------------------------------------------------

def write(tmp_path, data, name="f.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


def test_fixture_loading(tmp_path):
    path = write(tmp_path, [{"window": {"g_max": 0, "n_max": 4}},
                            {"g": 0, "n": 4, "value": {"1,1,1,1": "1/12", "2,1,1": "1/2", "2,2": "1/4",
                                                       "3,1": "2/3", "4": "1/2"}, "provenance": "test"}])
    t = load_fixtures(path)
    assert t.entries[(0, 4)] == 2 * h_to_p(4)
    assert t.entries[(0, 3)] == h3
    assert t.window == (0, 4) and t.available(0, 4) and not t.available(1, 1)


@pytest.mark.parametrize("entry,message", [
    ({"g": 0, "n": 4, "value": {"1,1,1,1": "1/24"}, "provenance": "x"}, "expected 2"),
    ({"g": 0, "n": 3, "value": {"1,1": "1"}, "provenance": "x"}, "degree"),
    ({"g": 0, "n": 3, "value": {"1,1,1": "1/12"}, "provenance": "x"}, "non-integral"),
    ({"g": 0, "n": 3, "value": {"1,x": "1"}, "provenance": "x"}, "entry 0"),
    ({"g": 0, "n": 3, "value": {"3": "1/0"}, "provenance": "x"}, "entry 0"),
    ({"g": 0, "n": 3, "value": {"3": "1"}}, "provenance"),
    ({"g": 0, "n": 2, "value": {"2": "1"}, "provenance": "x"}, "unstable"),
])
def test_fixture_rejections(tmp_path, entry, message):
    path = write(tmp_path, [entry])
    with pytest.raises(FixtureError, match=message) as info:
        load_fixtures(path)
    assert str(path) in str(info.value)


def test_invalid_json_is_located(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("[{")
    with pytest.raises(FixtureError, match="line 1"):
        load_fixtures(path)


def test_shipped_fixtures_validate():
    for name in ["genus0_open.json", "genus0_compact.json", "genus1_compact.json"]:
        t = load_fixtures(FIXTURES / name)
        assert validate_fixtures(t).ok
        assert all(t.provenance[k].strip() for k in t.entries)


# --- cache -------------------------------------------------------------------------------------------------

def test_cache_roundtrip_and_idempotence(tmp_path):
    nu = GenPartition.parse("1^2,2^2")
    c = OCache(tmp_path)
    first = c.profile_table(nu)
    assert first == dict(profile_o_table(nu))
    assert OCache(tmp_path).profile_table(nu) == first
    assert c.verify(nu)
    assert c.colored_table(2, 2) == dict(colored_o_table(2, 2))


def test_cache_version_mismatch_invalidates(tmp_path, monkeypatch):
    nu = GenPartition.parse("3^2")
    c = OCache(tmp_path)
    c.profile_table(nu)
    files = list(tmp_path.rglob("*.json"))
    assert len(files) == 1
    data = json.loads(files[0].read_text())
    data["version"] = "0.0.0"
    data["entries"] = {k: "99" for k in data["entries"]}
    files[0].write_text(json.dumps(data))
    assert c.profile_table(nu) == dict(profile_o_table(nu))


def test_cache_detects_disagreement(tmp_path):
    nu = GenPartition.parse("3^2")
    c = OCache(tmp_path)
    c.profile_table(nu)
    f = next(tmp_path.rglob("*.json"))
    data = json.loads(f.read_text())
    key = next(iter(data["entries"]))
    data["entries"][key] = "12345"
    f.write_text(json.dumps(data))
    assert not c.verify(nu)
    with pytest.raises(CacheConsistencyError):
        c._write("plain", str(nu), dict(profile_o_table(nu)))


def test_cache_on_off_identical(tmp_path):
    a = random_table(compactification_requirements(2, 2), 11)
    c = OCache(tmp_path)
    with_cache = compactified_series(a, 2, 2, o_tables=c.profile_table)
    again = compactified_series(a, 2, 2, o_tables=OCache(tmp_path).profile_table)
    assert with_cache == compactified_series(a, 2, 2) == again
