"""Half-edge multigraphs, their automorphism groups and Specht censuses.

Graphs are stored as combinatorial maps: half-edges ``0..2E-1``, a vertex
assignment and a fixed-point-free pairing involution.  Automorphisms act on
half-edges, so swapping parallel edges and flipping loops are genuine group
elements, and every automorphism embeds in ``S_nu`` for the valence profile
``nu`` of the graph.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .partitions import GenPartition, Partition, TwoPartition, WreathElement, conjugacy_type, cycle_type
from .symfunc import SymFunc
from .wreath import WreathSymFunc

Matrix = Tuple[Tuple[int, ...], ...]


class HalfEdgeGraph:
    """A finite multigraph in half-edge form.

    ``vertex_of[h]`` is the vertex carrying half-edge ``h`` and
    ``pairing[h]`` is the other half of its edge.  Loops contribute two
    half-edges to their vertex.
    """

    __slots__ = ("n_vertices", "vertex_of", "pairing", "_at")

    def __init__(self, n_vertices: int, vertex_of: Sequence[int], pairing: Sequence[int]):
        vertex_of = tuple(vertex_of)
        pairing = tuple(pairing)
        if len(vertex_of) != len(pairing):
            raise ValueError("vertex_of and pairing must have equal length")
        for h, k in enumerate(pairing):
            if not 0 <= k < len(pairing) or k == h or pairing[k] != h:
                raise ValueError(f"pairing is not a fixed-point-free involution at half-edge {h}")
        for v in vertex_of:
            if not 0 <= v < n_vertices:
                raise ValueError(f"half-edge attached to unknown vertex {v}")
        self.n_vertices = n_vertices
        self.vertex_of = vertex_of
        self.pairing = pairing
        at: List[List[int]] = [[] for _ in range(n_vertices)]
        for h, v in enumerate(vertex_of):
            at[v].append(h)
        self._at = tuple(tuple(x) for x in at)

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Sequence[Tuple[int, int]]) -> "HalfEdgeGraph":
        """Edge ``j = (u, v)`` becomes half-edges ``2j`` (at u) and ``2j + 1`` (at v)."""
        vertex_of = []
        pairing = []
        for j, (u, v) in enumerate(edges):
            vertex_of.extend([u, v])
            pairing.extend([2 * j + 1, 2 * j])
        return cls(n_vertices, vertex_of, pairing)

    @classmethod
    def from_matrix(cls, A: Matrix) -> "HalfEdgeGraph":
        edges = []
        n = len(A)
        for u in range(n):
            edges.extend([(u, u)] * A[u][u])
            for v in range(u + 1, n):
                edges.extend([(u, v)] * A[u][v])
        return cls.from_edges(n, edges)

    def half_edges_at(self, v: int) -> Tuple[int, ...]:
        return self._at[v]

    def edges(self) -> List[Tuple[int, int]]:
        """Edges as half-edge pairs ``(h, pairing[h])`` with ``h`` the smaller id."""
        return [(h, k) for h, k in enumerate(self.pairing) if h < k]

    def edge_index(self) -> Dict[int, int]:
        """Half-edge -> index of its edge in :meth:`edges`."""
        out = {}
        for j, (h, k) in enumerate(self.edges()):
            out[h] = j
            out[k] = j
        return out

    def vertex_edges(self) -> List[Tuple[int, int]]:
        return [(self.vertex_of[h], self.vertex_of[k]) for h, k in self.edges()]

    @property
    def edge_count(self) -> int:
        return len(self.pairing) // 2

    def valences(self) -> List[int]:
        return [len(x) for x in self._at]

    def profile(self) -> GenPartition:
        return GenPartition.from_valences(self.valences())

    def adjacency(self) -> Matrix:
        n = self.n_vertices
        A = [[0] * n for _ in range(n)]
        for u, v in self.vertex_edges():
            if u == v:
                A[u][u] += 1
            else:
                A[u][v] += 1
                A[v][u] += 1
        return tuple(tuple(r) for r in A)

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.vertex_edges())

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return False
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.vertex_edges():
            parent[find(u)] = find(v)
        return len({find(v) for v in range(self.n_vertices)}) == 1

    def first_betti(self) -> int:
        """``|E| - |V| + #components``."""
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.vertex_edges():
            parent[find(u)] = find(v)
        comps = len({find(v) for v in range(self.n_vertices)})
        return self.edge_count - self.n_vertices + comps

    def canonical_key(self) -> Matrix:
        return canonical_matrix(self.adjacency(), self.valences())

    def to_text(self) -> str:
        edges = ", ".join(f"({u},{v})" for u, v in self.vertex_edges())
        return f"vertices: {self.n_vertices}; edges: [{edges}]"

    def __repr__(self):
        return f"HalfEdgeGraph({self.to_text()})"

    def __eq__(self, other):
        if isinstance(other, HalfEdgeGraph):
            return (self.n_vertices, self.vertex_of, self.pairing) == (other.n_vertices, other.vertex_of,
                                                                        other.pairing)
        return NotImplemented

    def __hash__(self):
        return hash((self.n_vertices, self.vertex_of, self.pairing))


class GraphAutomorphism:
    """A half-edge automorphism together with its vertex permutation.

    The vertex permutation is stored explicitly because isolated vertices
    carry no half-edges.
    """

    __slots__ = ("vertex_perm", "half_edge_perm")

    def __init__(self, vertex_perm: Sequence[int], half_edge_perm: Sequence[int]):
        self.vertex_perm = tuple(vertex_perm)
        self.half_edge_perm = tuple(half_edge_perm)

    def __mul__(self, other: "GraphAutomorphism") -> "GraphAutomorphism":
        return GraphAutomorphism(tuple(self.vertex_perm[v] for v in other.vertex_perm),
                                 tuple(self.half_edge_perm[h] for h in other.half_edge_perm))

    def is_valid_for(self, G: HalfEdgeGraph) -> bool:
        a, s = self.half_edge_perm, self.vertex_perm
        if sorted(a) != list(range(len(G.pairing))) or sorted(s) != list(range(G.n_vertices)):
            return False
        return all(a[G.pairing[h]] == G.pairing[a[h]] and G.vertex_of[a[h]] == s[G.vertex_of[h]]
                   for h in range(len(a)))

    def __eq__(self, other):
        if isinstance(other, GraphAutomorphism):
            return (self.vertex_perm, self.half_edge_perm) == (other.vertex_perm, other.half_edge_perm)
        return NotImplemented

    def __hash__(self):
        return hash((self.vertex_perm, self.half_edge_perm))

    def __repr__(self):
        return f"GraphAutomorphism(vertices={self.vertex_perm}, half_edges={self.half_edge_perm})"


class DecoratedGraph:
    """A graph with a vertex colouring and positive integer edge weights.

    ``weight[j]`` belongs to edge ``j`` of ``base.edges()``.
    """

    __slots__ = ("base", "color", "weight")

    def __init__(self, base: HalfEdgeGraph, color: Sequence[int], weight: Sequence[int]):
        color = tuple(color)
        weight = tuple(weight)
        if len(color) != base.n_vertices:
            raise ValueError("one colour per vertex is required")
        if len(weight) != base.edge_count:
            raise ValueError("one weight per edge is required")
        if any(w <= 0 for w in weight):
            raise ValueError("edge weights must be positive")
        for u, v in base.vertex_edges():
            if color[u] == color[v]:
                raise ValueError(f"colouring is not proper on edge ({u},{v})")
        self.base = base
        self.color = color
        self.weight = weight

    @property
    def degree(self) -> int:
        return sum(self.weight)

    def to_text(self) -> str:
        return (f"{self.base.to_text()}; colors: [{', '.join(map(str, self.color))}]; "
                f"weights: [{', '.join(map(str, self.weight))}]")

    def __repr__(self):
        return f"DecoratedGraph({self.to_text()})"


_FIELD_RE = re.compile(r"^\s*(\w+)\s*:\s*(.*?)\s*$", re.S)


def parse_graph(text: str):
    """Parse ``vertices: k; edges: [(u,v),...]`` with optional colours and weights.

    Returns a :class:`HalfEdgeGraph`, or a :class:`DecoratedGraph` when both
    ``colors`` and ``weights`` are present.
    """
    fields = {}
    for chunk in text.strip().split(";"):
        if not chunk.strip():
            continue
        m = _FIELD_RE.match(chunk)
        if m is None:
            raise ValueError(f"cannot parse graph field {chunk.strip()!r}")
        name = m.group(1).lower()
        if name in fields:
            raise ValueError(f"duplicate graph field {name!r}")
        fields[name] = m.group(2)
    if "vertices" not in fields or "edges" not in fields:
        raise ValueError("graph text needs 'vertices' and 'edges' fields")
    try:
        k = int(fields["vertices"])
    except ValueError as exc:
        raise ValueError(f"vertex count must be an integer, got {fields['vertices']!r}") from exc
    body = fields["edges"].strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"edges must be a bracketed list, got {body!r}")
    inner = body[1:-1].strip()
    edges = []
    if inner:
        for m in re.finditer(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)|([^\s,])", inner):
            if m.group(3) is not None:
                raise ValueError(f"unexpected {m.group(3)!r} in edge list {body!r}")
            edges.append((int(m.group(1)), int(m.group(2))))
    for u, v in edges:
        if u >= k or v >= k:
            raise ValueError(f"edge ({u},{v}) refers to a vertex >= {k}")
    G = HalfEdgeGraph.from_edges(k, edges)
    extra = set(fields) - {"vertices", "edges", "colors", "weights"}
    if extra:
        raise ValueError(f"unknown graph fields {sorted(extra)}")
    if "colors" in fields or "weights" in fields:
        if "colors" not in fields or "weights" not in fields:
            raise ValueError("decorated graphs need both 'colors' and 'weights'")
        colors = _int_list(fields["colors"])
        weights = _int_list(fields["weights"])
        return DecoratedGraph(G, colors, weights)
    return G


def _int_list(text: str) -> List[int]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"expected a bracketed integer list, got {text!r}")
    return [int(x) for x in text[1:-1].split(",") if x.strip()]


# --- enumeration --------------------------------------------------------------

def canonical_matrix(A: Matrix, valences: Sequence[int]) -> Matrix:
    """Canonical relabelling under valence-preserving permutations.

    Vertices are placed one position at a time, each position drawing from
    its valence block; the chosen order minimises the sequence of rows
    ``(A[v_k][v_0], ..., A[v_k][v_k])``.  That sequence determines the
    symmetric matrix, and partial orders whose prefix is already worse than
    the best found are abandoned.
    """
    n = len(A)
    vals = sorted(valences)
    blocks: Dict[int, List[int]] = {}
    for v in range(n):
        blocks.setdefault(valences[v], []).append(v)
    best: Optional[List[Tuple[int, ...]]] = None
    best_order: List[int] = []
    chosen: List[int] = []
    rows: List[Tuple[int, ...]] = []
    used = [False] * n

    def rec(k):
        nonlocal best, best_order
        if k == n:
            if best is None or rows < best:
                best = list(rows)
                best_order = list(chosen)
            return
        options = []
        for v in blocks[vals[k]]:
            if not used[v]:
                options.append((tuple(A[v][chosen[j]] for j in range(k)) + (A[v][v],), v))
        options.sort()
        for row, v in options:
            rows.append(row)
            if best is not None and rows > best[:k + 1]:
                rows.pop()
                break
            used[v] = True
            chosen.append(v)
            rec(k + 1)
            chosen.pop()
            used[v] = False
            rows.pop()

    rec(0)
    o = best_order
    return tuple(tuple(A[o[i]][o[j]] for j in range(n)) for i in range(n))


def _matrix_connected(A: Matrix) -> bool:
    n = len(A)
    if n == 0:
        return False
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in range(n):
            if v not in seen and A[u][v]:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


def _labelled_matrices(valences: Sequence[int], loops: bool) -> Iterator[Matrix]:
    n = len(valences)
    A = [[0] * n for _ in range(n)]
    rem = list(valences)

    def fill_row(u):
        if u == n:
            yield tuple(tuple(r) for r in A)
            return
        max_loops = rem[u] // 2 if loops else 0
        for L in range(max_loops, -1, -1):
            A[u][u] = L
            rem[u] -= 2 * L
            yield from spread(u, u + 1)
            rem[u] += 2 * L
            A[u][u] = 0

    def spread(u, v):
        if v == n:
            if rem[u] == 0:
                yield from fill_row(u + 1)
            return
        # later vertices must be able to absorb what is left
        if rem[u] > sum(rem[v:]):
            return
        for m in range(min(rem[u], rem[v]), -1, -1):
            A[u][v] = A[v][u] = m
            rem[u] -= m
            rem[v] -= m
            yield from spread(u, v + 1)
            rem[u] += m
            rem[v] += m
        A[u][v] = A[v][u] = 0

    yield from fill_row(0)


@lru_cache(maxsize=None)
def _graph_keys(nu: GenPartition, connected_only: bool, loops: bool) -> Tuple[Matrix, ...]:
    valences = nu.valences()
    if sum(valences) % 2:
        return ()
    keys = set()
    for A in _labelled_matrices(valences, loops):
        if connected_only and not _matrix_connected(A):
            continue
        keys.add(canonical_matrix(A, valences))
    return tuple(sorted(keys))


def enumerate_graphs(nu: GenPartition, connected_only: bool = True, loops: bool = True) -> List[HalfEdgeGraph]:
    """One representative per isomorphism class of multigraphs with profile ``nu``.

    Representatives are built from canonical adjacency matrices, with
    vertices sorted by valence, and are returned in a deterministic order.
    """
    return [HalfEdgeGraph.from_matrix(A) for A in _graph_keys(nu, connected_only, loops)]


def graph_profiles(max_vertices: int, max_edges: int, min_vertices: int = 1) -> Iterator[GenPartition]:
    """Valence profiles of graphs without isolated vertices (plus the lone vertex)."""
    if min_vertices <= 1:
        yield GenPartition([1])
    for e in range(1, max_edges + 1):
        for v in range(max(min_vertices, 1), min(max_vertices, 2 * e) + 1):
            for vals in _compositions_sorted(2 * e, v):
                yield GenPartition.from_valences(vals)


def _compositions_sorted(total: int, parts: int, smallest: int = 1):
    # nondecreasing sequences of `parts` integers >= smallest summing to total
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(smallest, total // parts + 1):
        for rest in _compositions_sorted(total - first, parts - 1, first):
            yield (first,) + rest


# --- automorphisms ------------------------------------------------------------

def _vertex_automorphisms(A: Matrix, valences: Sequence[int], keep=None) -> List[Tuple[int, ...]]:
    n = len(A)
    out = []
    perm = [-1] * n
    used = [False] * n

    def rec(i):
        if i == n:
            out.append(tuple(perm))
            return
        for c in range(n):
            if used[c] or valences[c] != valences[i]:
                continue
            if keep is not None and not keep(i, c):
                continue
            if A[c][c] != A[i][i]:
                continue
            if any(A[i][j] != A[c][perm[j]] for j in range(i)):
                continue
            perm[i] = c
            used[c] = True
            rec(i + 1)
            used[c] = False
        perm[i] = -1

    rec(0)
    return out


def automorphisms(G: HalfEdgeGraph, vertex_ok=None, edge_ok=None) -> List[GraphAutomorphism]:
    """The full half-edge automorphism group of ``G``.

    ``vertex_ok(v, w)`` and ``edge_ok(e, f)`` optionally restrict which
    vertices and edges may be matched (used for decorations).
    """
    A = G.adjacency()
    valences = G.valences()
    bundles: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for h, k in G.edges():
        u, v = G.vertex_of[h], G.vertex_of[k]
        if u > v or (u == v and h > k):
            h, k, u, v = k, h, v, u
        bundles.setdefault((u, v), []).append((h, k))
    eidx = G.edge_index()
    out = []
    for sigma in _vertex_automorphisms(A, valences, vertex_ok):
        per_bundle = []
        for (u, v), edges in sorted(bundles.items()):
            su, sv = sigma[u], sigma[v]
            if u == v:
                target = bundles[(su, su)]
                opts = []
                for order in permutations(range(len(edges))):
                    for flips in product((False, True), repeat=len(edges)):
                        opts.append((edges, [(target[o][1], target[o][0]) if f else target[o]
                                             for o, f in zip(order, flips)]))
            else:
                if su < sv:
                    target = bundles[(su, sv)]
                else:
                    target = [(k, h) for h, k in bundles[(sv, su)]]
                opts = [(edges, [target[o] for o in order]) for order in permutations(range(len(edges)))]
            if edge_ok is not None:
                opts = [o for o in opts if all(edge_ok(eidx[a[0]], eidx[b[0]]) for a, b in zip(*o))]
            per_bundle.append(opts)
        for choice in product(*per_bundle):
            img = [0] * len(G.pairing)
            for src, dst in choice:
                for (h, k), (h2, k2) in zip(src, dst):
                    img[h] = h2
                    img[k] = k2
            out.append(GraphAutomorphism(sigma, img))
    return out


def decorated_automorphisms(D: DecoratedGraph) -> List[GraphAutomorphism]:
    """Automorphisms of the underlying graph that preserve colours and weights."""
    return automorphisms(D.base,
                         vertex_ok=lambda v, w: D.color[v] == D.color[w],
                         edge_ok=lambda e, f: D.weight[e] == D.weight[f])


def to_wreath(G: HalfEdgeGraph, aut: GraphAutomorphism) -> WreathElement:
    """Image of ``aut`` under the embedding ``Aut(G) -> S_{nu(G)}``.

    Vertices of valence ``i`` are numbered in increasing id order, and the
    slots of a vertex are its half-edges in increasing id order.
    """
    valences = G.valences()
    index: Dict[int, int] = {}
    by_val: Dict[int, List[int]] = {}
    for v in range(G.n_vertices):
        lst = by_val.setdefault(valences[v], [])
        index[v] = len(lst)
        lst.append(v)
    blocks = {}
    for i, verts in by_val.items():
        outer = []
        inners = []
        for v in verts:
            w = aut.vertex_perm[v]
            outer.append(index[w])
            slot_of = {h: s for s, h in enumerate(G.half_edges_at(w))}
            inners.append([slot_of[aut.half_edge_perm[h]] for h in G.half_edges_at(v)])
        blocks[i] = (outer, inners)
    return WreathElement(G.profile(), blocks)


def aut_type_census(G: HalfEdgeGraph, auts: Optional[List[GraphAutomorphism]] = None) -> Dict[TwoPartition, int]:
    """``Theta -> |Aut^Theta(G)|`` via the embedding into ``S_{nu(G)}``."""
    if auts is None:
        auts = automorphisms(G)
    census: Dict[TwoPartition, int] = {}
    for a in auts:
        theta = conjugacy_type(to_wreath(G, a))
        census[theta] = census.get(theta, 0) + 1
    return census


def polya_petersen(G: HalfEdgeGraph, auts: Optional[List[GraphAutomorphism]] = None) -> WreathSymFunc:
    """``zeta_G = (1/|Aut G|) sum_a p_{Theta^a}``."""
    if auts is None:
        auts = automorphisms(G)
    census = aut_type_census(G, auts)
    n = len(auts)
    return WreathSymFunc({theta: Fraction(c, n) for theta, c in census.items()})


def cycle_index_specialize(z: WreathSymFunc) -> SymFunc:
    """Apply ``p_n(mu) -> p_n`` termwise."""
    out: Dict[Partition, Fraction] = {}
    for theta, c in z.terms.items():
        parts: List[int] = []
        for _, lam in theta.items():
            parts.extend(lam.parts)
        key = Partition(parts)
        out[key] = out.get(key, 0) + c
    return SymFunc(out)


def vertex_cycle_index(G: HalfEdgeGraph, auts: Optional[List[GraphAutomorphism]] = None) -> SymFunc:
    """Cycle index of ``Aut(G)`` acting on the vertex set."""
    if auts is None:
        auts = automorphisms(G)
    out: Dict[Partition, Fraction] = {}
    for a in auts:
        key = Partition._trusted(cycle_type(a.vertex_perm))
        out[key] = out.get(key, 0) + Fraction(1, len(auts))
    return SymFunc(out)


# --- O(Theta) -----------------------------------------------------------------

@lru_cache(maxsize=None)
def profile_o_table(nu: GenPartition) -> Dict[TwoPartition, Fraction]:
    """``Theta -> O(Theta)`` for every ``Theta`` with profile ``nu``."""
    table: Dict[TwoPartition, Fraction] = {}
    for G in enumerate_graphs(nu, connected_only=True):
        auts = automorphisms(G)
        for theta, c in aut_type_census(G, auts).items():
            table[theta] = table.get(theta, 0) + Fraction(c, len(auts))
    return {k: table[k] for k in sorted(table)}


def o_theta(theta: TwoPartition) -> Fraction:
    """``O(Theta) = sum_G |Aut^Theta(G)| / |Aut(G)|`` over connected graphs."""
    if theta.norm % 2:
        return Fraction(0)
    return profile_o_table(theta.profile()).get(theta, Fraction(0))


# --- stable maps --------------------------------------------------------------

@lru_cache(maxsize=None)
def _loopless_connected(max_edges: int) -> Tuple[HalfEdgeGraph, ...]:
    out = []
    for e in range(1, max_edges + 1):
        for v in range(2, e + 2):
            for vals in _compositions_sorted(2 * e, v):
                out.extend(enumerate_graphs(GenPartition.from_valences(vals), True, loops=False))
    return tuple(out)


def _weightings(n_edges: int, d: int) -> Iterator[Tuple[int, ...]]:
    if n_edges == 0:
        if d == 0:
            yield ()
        return
    for first in range(1, d - n_edges + 2):
        for rest in _weightings(n_edges - 1, d - first):
            yield (first,) + rest


def _proper_colorings(G: HalfEdgeGraph, ncolors: int) -> Iterator[Tuple[int, ...]]:
    n = G.n_vertices
    nbrs = [set() for _ in range(n)]
    for u, v in G.vertex_edges():
        nbrs[u].add(v)
        nbrs[v].add(u)
    col = [-1] * n

    def rec(i):
        if i == n:
            yield tuple(col)
            return
        for c in range(ncolors):
            if all(col[j] != c for j in nbrs[i] if j < i):
                col[i] = c
                yield from rec(i + 1)
        col[i] = -1

    yield from rec(0)


@lru_cache(maxsize=None)
def enumerate_stable_map_graphs(r: int, d: int) -> Tuple[DecoratedGraph, ...]:
    """Representatives of the isomorphism classes of ``(G, f, delta)``.

    ``G`` is connected and loop-free with a proper colouring by
    ``{0..r}`` and positive edge weights summing to ``d``.
    """
    if r < 1 or d < 1:
        raise ValueError("stable-map graphs need r >= 1 and d >= 1")
    out = []
    for G in _loopless_connected(d):
        auts = automorphisms(G)
        eidx = G.edge_index()
        edge_maps = []
        for a in auts:
            # edge j is sent to edge emap[j]
            emap = [eidx[a.half_edge_perm[h]] for h, _ in G.edges()]
            edge_maps.append((a.vertex_perm, emap))
        seen = set()
        for weights in _weightings(G.edge_count, d):
            for colors in _proper_colorings(G, r + 1):
                best = None
                for sigma, emap in edge_maps:
                    c2 = [0] * len(colors)
                    for v, c in enumerate(colors):
                        c2[sigma[v]] = c
                    w2 = [0] * len(weights)
                    for j, w in enumerate(weights):
                        w2[emap[j]] = w
                    cand = (tuple(w2), tuple(c2))
                    if best is None or cand < best:
                        best = cand
                if best in seen:
                    continue
                seen.add(best)
                out.append(DecoratedGraph(G, best[1], best[0]))
    return tuple(out)


@lru_cache(maxsize=None)
def colored_o_table(r: int, d: int) -> Dict[TwoPartition, Fraction]:
    """``Theta -> O_{P^r,d}(Theta)``, using decoration-preserving automorphisms."""
    table: Dict[TwoPartition, Fraction] = {}
    for D in enumerate_stable_map_graphs(r, d):
        auts = decorated_automorphisms(D)
        for theta, c in aut_type_census(D.base, auts).items():
            table[theta] = table.get(theta, 0) + Fraction(c, len(auts))
    return {k: table[k] for k in sorted(table)}


def o_theta_colored(theta: TwoPartition, r: int, d: int) -> Fraction:
    if r < 1 or d < 1:
        raise ValueError("r and d must be positive")
    return colored_o_table(r, d).get(theta, Fraction(0))


