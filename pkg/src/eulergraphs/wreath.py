"""The ring of 2-symmetric functions and its action on Lambda.

A :class:`WreathSymFunc` is a rational combination of monomials
``p_Theta = prod_mu prod_{n in Theta(mu)} p_n(mu)``.  The action on ordinary
symmetric functions is multiplicative in the first argument and sends the
generator ``p_n(mu)`` to ``f -> psi_n(p_mu^perp f)``.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional

from .partitions import Partition, TwoPartition, WreathElement, conjugacy_type
from .symfunc import GenusSeries, SymFunc, adams, format_rational, parse_rational, skew_power


def _merge(a: TwoPartition, b: TwoPartition) -> TwoPartition:
    acc: Dict[Partition, Partition] = dict(a.items())
    for mu, lam in b.items():
        acc[mu] = acc[mu].union(lam) if mu in acc else lam
    return TwoPartition(acc)


class WreathSymFunc:
    """A finite sum ``sum_Theta c_Theta p_Theta`` with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[TwoPartition, object]] = None):
        clean: Dict[TwoPartition, Fraction] = {}
        for theta, c in (terms or {}).items():
            if not isinstance(theta, TwoPartition):
                theta = TwoPartition(theta)
            c = Fraction(c)
            if c:
                clean[theta] = clean.get(theta, 0) + c
                if not clean[theta]:
                    del clean[theta]
        self.terms = clean

    @classmethod
    def monomial(cls, theta: TwoPartition, coeff=1) -> "WreathSymFunc":
        return cls({theta: coeff})

    @classmethod
    def generator(cls, n: int, mu) -> "WreathSymFunc":
        """The power sum ``p_n(mu)``."""
        return cls({TwoPartition({Partition(mu) if not isinstance(mu, Partition) else mu: Partition([n])}): 1})

    @classmethod
    def one(cls) -> "WreathSymFunc":
        return cls({TwoPartition(): 1})

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "WreathSymFunc") -> "WreathSymFunc":
        out = dict(self.terms)
        for theta, c in other.terms.items():
            out[theta] = out.get(theta, 0) + c
        return WreathSymFunc(out)

    def __neg__(self):
        return WreathSymFunc({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, WreathSymFunc):
            c = Fraction(other)
            return WreathSymFunc({k: v * c for k, v in self.terms.items()})
        out: Dict[TwoPartition, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = _merge(a, b)
                out[key] = out.get(key, 0) + ca * cb
        return WreathSymFunc(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = WreathSymFunc.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, WreathSymFunc):
            return self.terms == other.terms
        return NotImplemented

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for theta, c in self.sorted_terms():
            mono = monomial_str(theta)
            if not mono:
                body = format_rational(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{format_rational(abs(c))}*{mono}"
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"WreathSymFunc({self})"

    def to_json(self) -> Dict[str, str]:
        return {theta.serialize(): format_rational(c) for theta, c in self.sorted_terms()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "WreathSymFunc":
        return cls({TwoPartition.parse(k): parse_rational(v) for k, v in data.items()})


def monomial_str(theta: TwoPartition) -> str:
    """E.g. ``p_1[1,1]^3*p_1[1,1,1]^2``."""
    bits = []
    for mu, lam in theta.items():
        for n, m in sorted(Counter(lam.parts).items()):
            bits.append(f"p_{n}{mu.serialize()}" + (f"^{m}" if m > 1 else ""))
    return "*".join(bits)


def induced_trivial_character(elements: Iterable[WreathElement], nu=None) -> WreathSymFunc:
    """Frobenius characteristic of ``Ind_H^{S_nu} triv`` for ``H = elements``.

    Equals ``(1/|H|) sum_{h in H} p_{Theta^h}``.
    """
    elements = list(elements)
    if not elements:
        raise ValueError("a subgroup has at least the identity element")
    nu = elements[0].nu if nu is None else nu
    counts: Dict[TwoPartition, int] = {}
    for h in elements:
        if h.nu != nu:
            raise ValueError(f"element with profile {h.nu} in a subgroup of S_{nu}")
        theta = conjugacy_type(h)
        counts[theta] = counts.get(theta, 0) + 1
    n = len(elements)
    return WreathSymFunc({theta: Fraction(c, n) for theta, c in counts.items()})


def is_subgroup(elements: Iterable[WreathElement]) -> bool:
    """Closure check, for use by oracles and debug paths."""
    elements = list(elements)
    pool = set(elements)
    if len(pool) != len(elements):
        return False
    return all(a * b in pool for a in elements for b in elements)


def _generator_action(n: int, mu: Partition, f, cache: dict):
    key = (n, mu)
    if key not in cache:
        if isinstance(f, GenusSeries):
            cache[key] = f.skew(mu).adams(n)
        else:
            cache[key] = adams(n, skew_power(mu, f))
    return cache[key]


def d_theta(theta: TwoPartition, f, _cache: Optional[dict] = None):
    """``D_Theta(f) = prod_mu psi_{Theta(mu)}(p_mu^perp f)``."""
    cache = {} if _cache is None else _cache
    out = GenusSeries.one() if isinstance(f, GenusSeries) else SymFunc.one()
    for mu, lam in theta.items():
        for n in lam.parts:
            out = out * _generator_action(n, mu, f, cache)
    return out


def act(g: WreathSymFunc, f):
    """The action ``g (.) f``, extended linearly from monomials ``p_Theta``."""
    cache: dict = {}
    if isinstance(f, GenusSeries):
        out = None
        for theta, c in g.sorted_terms():
            term = d_theta(theta, f, cache) * c
            out = term if out is None else out + term
        return out if out is not None else GenusSeries.zero()
    out = SymFunc.zero()
    for theta, c in g.sorted_terms():
        out = out + d_theta(theta, f, cache) * c
    return out
