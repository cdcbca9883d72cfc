"""Partitions, valence profiles, 2-partitions and the wreath groups S_nu.

Conjugacy classes of ``S_nu = prod_i S_i wr S_{nu_i}`` are labelled by
2-partitions (maps ``Partition -> Partition``), following Specht's
classification.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache, total_ordering
from itertools import permutations, product
from math import factorial, prod
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple


def cycle_type(perm: Sequence[int]) -> Tuple[int, ...]:
    """Cycle lengths of a one-line permutation, weakly decreasing."""
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        n = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def cycles(perm: Sequence[int]) -> List[List[int]]:
    """Cycles of a one-line permutation, each starting at its smallest point."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        c = []
        j = start
        while not seen[j]:
            seen[j] = True
            c.append(j)
            j = perm[j]
        out.append(c)
    return out


@total_ordering
class Partition:
    """An integer partition, stored as a weakly decreasing tuple of parts.

    Partitions sort by size, then reverse-lexicographically, so that
    ``(3) < (2, 1) < (1, 1, 1)``.
    """

    __slots__ = ("parts", "_hash")

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if parts and parts[-1] <= 0:
            raise ValueError(f"partition parts must be positive: {parts}")
        self.parts = parts
        self._hash = hash(parts)

    @classmethod
    def _trusted(cls, parts: Tuple[int, ...]) -> "Partition":
        # parts already positive and sorted; skips validation on hot paths
        obj = object.__new__(cls)
        obj.parts = parts
        obj._hash = hash(parts)
        return obj

    @classmethod
    def from_multiplicities(cls, mult: Dict[int, int]) -> "Partition":
        parts = []
        for i, m in mult.items():
            parts.extend([i] * m)
        return cls(parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def multiplicities(self) -> Dict[int, int]:
        return dict(Counter(self.parts))

    def z(self) -> int:
        """Centralizer order ``prod_i i^{m_i} m_i!`` of the cycle type."""
        return prod(i**m * factorial(m) for i, m in Counter(self.parts).items())

    def union(self, other: "Partition") -> "Partition":
        return Partition._trusted(tuple(sorted(self.parts + other.parts, reverse=True)))

    def scaled(self, k: int) -> "Partition":
        return Partition._trusted(tuple(k * p for p in self.parts))

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (sum(self.parts), self.parts)

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        return NotImplemented

    def __lt__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Partition({list(self.parts)})"

    def serialize(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"

    def exponent_str(self) -> str:
        """Multiplicity notation, e.g. ``1^2 2`` for ``(2, 1, 1)``."""
        if not self.parts:
            return "0"
        bits = []
        for i, m in sorted(Counter(self.parts).items()):
            bits.append(f"{i}^{m}" if m > 1 else str(i))
        return " ".join(bits)


EMPTY = Partition(())


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(n: int) -> List[Partition]:
    """All partitions of ``n`` in canonical order."""
    if n < 0:
        return []
    return [Partition._trusted(p) for p in reversed(_partitions(n, n))]


class GenPartition:
    """A generalized partition: multiplicities ``nu_i`` for ``i >= 0``.

    Used as the valence profile of a graph, so parts of size 0 (isolated
    vertices) are allowed.
    """

    __slots__ = ("mult",)

    def __init__(self, mult: Sequence[int] = ()):
        mult = list(int(m) for m in mult)
        if any(m < 0 for m in mult):
            raise ValueError(f"negative multiplicity in {mult}")
        while mult and mult[-1] == 0:
            mult.pop()
        self.mult = tuple(mult)

    @classmethod
    def from_valences(cls, valences: Iterable[int]) -> "GenPartition":
        c = Counter(valences)
        if not c:
            return cls(())
        if min(c) < 0:
            raise ValueError("valences must be nonnegative")
        return cls([c.get(i, 0) for i in range(max(c) + 1)])

    @classmethod
    def from_dict(cls, d: Dict[int, int]) -> "GenPartition":
        if not d:
            return cls(())
        return cls([d.get(i, 0) for i in range(max(d) + 1)])

    @classmethod
    def parse(cls, text: str) -> "GenPartition":
        """Parse ``"2^3,3^2"``, ``"2,2,2,3,3"`` or ``"(2^3, 3^2)"``."""
        text = text.strip().strip("()[]")
        if not text:
            return cls(())
        valences = []
        for tok in re.split(r"[,\s]+", text):
            if not tok:
                continue
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
            if m is None:
                raise ValueError(f"bad valence profile token {tok!r} in {text!r}")
            valences.extend([int(m.group(1))] * int(m.group(2) or 1))
        return cls.from_valences(valences)

    def __getitem__(self, i: int) -> int:
        return self.mult[i] if 0 <= i < len(self.mult) else 0

    def items(self) -> Iterator[Tuple[int, int]]:
        return ((i, m) for i, m in enumerate(self.mult) if m)

    def valences(self) -> List[int]:
        """Vertex valences in increasing order."""
        out = []
        for i, m in self.items():
            out.extend([i] * m)
        return out

    @property
    def vertex_count(self) -> int:
        return sum(self.mult)

    @property
    def half_edge_count(self) -> int:
        return sum(i * m for i, m in enumerate(self.mult))

    def group_order(self) -> int:
        """``|S_nu| = prod_i (i!)^{nu_i} nu_i!``."""
        return prod(factorial(i) ** m * factorial(m) for i, m in self.items())

    def __eq__(self, other):
        if isinstance(other, GenPartition):
            return self.mult == other.mult
        return NotImplemented

    def __hash__(self):
        return hash(("GenPartition", self.mult))

    def __repr__(self):
        return f"GenPartition({self})"

    def __str__(self):
        return "(" + ",".join(f"{i}^{m}" for i, m in self.items()) + ")"


_PAIR_RE = re.compile(r"\[\s*([\d,\s]*?)\s*\]\s*:\s*\[\s*([\d,\s]*?)\s*\]")


def _parse_parts(text: str) -> Partition:
    text = text.strip()
    if not text:
        return EMPTY
    return Partition(int(x) for x in text.split(",") if x.strip())


@total_ordering
class TwoPartition:
    """A finitely supported map ``Partition -> Partition``.

    Keys mapping to the empty partition are dropped, so each 2-partition has
    a unique stored form.  ``theta[mu]`` returns the empty partition for keys
    that are absent.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, mapping=None):
        if mapping is None:
            mapping = {}
        if isinstance(mapping, dict):
            pairs = mapping.items()
        else:
            pairs = mapping
        merged: Dict[Partition, Partition] = {}
        for mu, lam in pairs:
            mu = mu if isinstance(mu, Partition) else Partition(mu)
            lam = lam if isinstance(lam, Partition) else Partition(lam)
            if mu in merged:
                raise ValueError(f"duplicate key {mu} in 2-partition")
            if lam:
                merged[mu] = lam
        self._items = tuple(sorted(merged.items(), key=lambda kv: kv[0].sort_key()))
        self._hash = hash(self._items)

    def __getitem__(self, mu) -> Partition:
        if not isinstance(mu, Partition):
            mu = Partition(mu)
        for k, v in self._items:
            if k == mu:
                return v
        return EMPTY

    def items(self) -> Tuple[Tuple[Partition, Partition], ...]:
        return self._items

    def keys(self) -> List[Partition]:
        return [k for k, _ in self._items]

    def __len__(self):
        return len(self._items)

    @property
    def norm(self) -> int:
        """``||Theta|| = sum_mu |mu| * |Theta(mu)|``: the half-edge count."""
        return sum(mu.size * lam.size for mu, lam in self._items)

    def profile(self) -> GenPartition:
        d: Dict[int, int] = {}
        for mu, lam in self._items:
            d[mu.size] = d.get(mu.size, 0) + lam.size
        return GenPartition.from_dict(d)

    def sort_key(self):
        return (self.norm, tuple((mu.sort_key(), -lam.size, lam.parts) for mu, lam in self._items))

    def __eq__(self, other):
        if isinstance(other, TwoPartition):
            return self._items == other._items
        return NotImplemented

    def __lt__(self, other):
        if not isinstance(other, TwoPartition):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return self._hash

    def serialize(self) -> str:
        return "{" + ", ".join(f"{mu.serialize()}:{lam.serialize()}" for mu, lam in self._items) + "}"

    __str__ = serialize

    def __repr__(self):
        return f"TwoPartition({self.serialize()})"

    @classmethod
    def parse(cls, text: str) -> "TwoPartition":
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ValueError(f"2-partition must be enclosed in braces: {text!r}")
        body = body[1:-1].strip()
        pairs = []
        pos = 0
        while pos < len(body):
            m = _PAIR_RE.match(body, pos)
            if m is None:
                raise ValueError(f"cannot parse 2-partition {text!r} at offset {pos + 1}")
            pairs.append((_parse_parts(m.group(1)), _parse_parts(m.group(2))))
            pos = m.end()
            rest = body[pos:].lstrip()
            if rest.startswith(","):
                rest = rest[1:].lstrip()
            elif rest:
                raise ValueError(f"expected ',' in 2-partition {text!r}")
            pos = len(body) - len(rest)
        return cls(pairs)


def centralizer_order(theta: TwoPartition) -> int:
    """``z_Theta = prod_mu z_{Theta(mu)} * z_mu^{len Theta(mu)}``."""
    return prod(lam.z() * mu.z() ** len(lam) for mu, lam in theta.items())


def class_size(theta: TwoPartition) -> int:
    return theta.profile().group_order() // centralizer_order(theta)


@lru_cache(maxsize=None)
def _block_distributions(i: int, n: int) -> Tuple[Tuple[Tuple[Partition, Partition], ...], ...]:
    # ways to hand out n "cycles" among the partitions mu of i
    mus = partitions_of(i)
    out = []

    def rec(k, remaining, acc):
        if k == len(mus):
            if remaining == 0:
                out.append(tuple(acc))
            return
        for size in range(remaining, -1, -1):
            for lam in partitions_of(size):
                rec(k + 1, remaining - size, acc + ([(mus[k], lam)] if size else []))

    rec(0, n, [])
    return tuple(out)


def class_enumeration(nu: GenPartition) -> List[TwoPartition]:
    """Every 2-partition with profile ``nu``, i.e. every conjugacy class of S_nu."""
    blocks = [_block_distributions(i, m) for i, m in nu.items()]
    out = [TwoPartition([pair for block in choice for pair in block]) for choice in product(*blocks)]
    return sorted(out)


class WreathElement:
    """An element of ``S_nu = prod_i S_i wr S_{nu_i}``.

    For each valence ``i`` with ``nu_i > 0`` there is an outer permutation of
    ``range(nu_i)`` and ``nu_i`` inner permutations of ``range(i)``.  The
    element acts on slots ``(i, j, s)`` by
    ``(i, j, s) -> (i, outer[j], inner[j][s])``.
    """

    __slots__ = ("nu", "blocks")

    def __init__(self, nu: GenPartition, blocks: Dict[int, Tuple[Sequence[int], Sequence[Sequence[int]]]]):
        self.nu = nu
        norm = {}
        for i, m in nu.items():
            if i not in blocks:
                raise ValueError(f"missing block for valence {i}")
            outer, inners = blocks[i]
            outer = tuple(outer)
            inners = tuple(tuple(p) for p in inners)
            if sorted(outer) != list(range(m)) or len(inners) != m:
                raise ValueError(f"bad outer permutation for valence {i}")
            for p in inners:
                if sorted(p) != list(range(i)):
                    raise ValueError(f"bad inner permutation {p} for valence {i}")
            norm[i] = (outer, inners)
        extra = set(blocks) - set(norm)
        if extra:
            raise ValueError(f"blocks given for valences absent from profile: {sorted(extra)}")
        self.blocks = norm

    @classmethod
    def identity(cls, nu: GenPartition) -> "WreathElement":
        return cls(nu, {i: (range(m), [range(i)] * m) for i, m in nu.items()})

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        """Composition: ``(self * other)(x) = self(other(x))``."""
        if self.nu != other.nu:
            raise ValueError("cannot compose elements of different S_nu")
        blocks = {}
        for i, (o1, in1) in self.blocks.items():
            o2, in2 = other.blocks[i]
            outer = tuple(o1[o2[j]] for j in range(len(o2)))
            inners = tuple(tuple(in1[o2[j]][in2[j][s]] for s in range(i)) for j in range(len(o2)))
            blocks[i] = (outer, inners)
        return WreathElement(self.nu, blocks)

    def inverse(self) -> "WreathElement":
        blocks = {}
        for i, (outer, inners) in self.blocks.items():
            inv_outer = [0] * len(outer)
            for j, oj in enumerate(outer):
                inv_outer[oj] = j
            inv_inners = []
            for k in range(len(outer)):
                # slot s of vertex k comes from vertex inv_outer[k]
                src = inners[inv_outer[k]]
                inv = [0] * i
                for s, t in enumerate(src):
                    inv[t] = s
                inv_inners.append(inv)
            blocks[i] = (inv_outer, inv_inners)
        return WreathElement(self.nu, blocks)

    def key(self):
        return tuple((i, self.blocks[i]) for i in sorted(self.blocks))

    def __eq__(self, other):
        if isinstance(other, WreathElement):
            return self.nu == other.nu and self.key() == other.key()
        return NotImplemented

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"WreathElement({self.nu}, {self.blocks})"


def conjugacy_type(w: WreathElement) -> TwoPartition:
    """Specht class label of ``w``.

    Each cycle of length ``l`` of an outer permutation contributes a part
    ``l`` to ``Theta(mu)``, where ``mu`` is the cycle type of the product of
    the inner permutations taken around that cycle.
    """
    acc: Dict[Partition, List[int]] = {}
    for i, (outer, inners) in w.blocks.items():
        for c in cycles(outer):
            ret = list(range(i))
            for j in c:
                inner = inners[j]
                ret = [inner[s] for s in ret]
            mu = Partition._trusted(cycle_type(ret))
            acc.setdefault(mu, []).append(len(c))
    return TwoPartition({mu: Partition(ls) for mu, ls in acc.items()})


def class_representative(theta: TwoPartition) -> WreathElement:
    """A fixed element of the class labelled ``theta``."""
    nu = theta.profile()
    per_valence: Dict[int, Tuple[List[int], List[List[int]]]] = {i: ([], []) for i, _ in nu.items()}
    for mu, lam in theta.items():
        i = mu.size
        # a permutation of range(i) with cycle type mu
        base = []
        start = 0
        for part in mu.parts:
            base.extend(start + (k + 1) % part for k in range(part))
            start += part
        outer, inners = per_valence[i]
        for ell in lam.parts:
            first = len(outer)
            for k in range(ell):
                outer.append(first + (k + 1) % ell)
                # the whole cycle product lands on the first vertex's inner perm
                inners.append(base if k == 0 else list(range(i)))
    return WreathElement(nu, per_valence)


def generators(nu: GenPartition) -> List[WreathElement]:
    """A generating set of S_nu: adjacent block swaps and inner transpositions."""
    gens = []
    ident = WreathElement.identity(nu)
    for i, m in nu.items():
        base_outer, base_inners = ident.blocks[i]
        for j in range(m - 1):
            outer = list(base_outer)
            outer[j], outer[j + 1] = outer[j + 1], outer[j]
            blocks = dict(ident.blocks)
            blocks[i] = (outer, base_inners)
            gens.append(WreathElement(nu, blocks))
        if i >= 2 and m >= 1:
            for s in range(i - 1):
                t = list(range(i))
                t[s], t[s + 1] = t[s + 1], t[s]
                inners = list(base_inners)
                inners[0] = t
                blocks = dict(ident.blocks)
                blocks[i] = (base_outer, inners)
                gens.append(WreathElement(nu, blocks))
    return gens


def all_elements(nu: GenPartition) -> Iterator[WreathElement]:
    """Every element of S_nu (brute force; only for small groups)."""
    factors = []
    for i, m in nu.items():
        opts = []
        sym_i = list(permutations(range(i)))
        for outer in permutations(range(m)):
            for inners in product(sym_i, repeat=m):
                opts.append((i, (outer, inners)))
        factors.append(opts)
    for choice in product(*factors):
        yield WreathElement(nu, dict(choice))
