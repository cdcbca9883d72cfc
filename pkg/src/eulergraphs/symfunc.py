"""Exact arithmetic in Lambda = Q[p_1, p_2, ...] and genus-graded series.

Everything is stored in the power-sum basis with ``Fraction`` coefficients.
A :class:`GenusSeries` is a Laurent polynomial in ``t`` with symmetric
function coefficients, carrying a completeness window so that truncated
data can never be mistaken for exact data.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import factorial, prod
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from .partitions import EMPTY, Partition, partitions_of

Number = Union[int, Fraction]


class TruncationError(LookupError):
    """Raised when a coefficient outside the guaranteed-complete window is requested."""


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rationals must be strings 'num/den' or integers, got {text!r}")
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc
    return value


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _falling(n: int, k: int) -> int:
    return prod(range(n - k + 1, n + 1))


class SymFunc:
    """A symmetric function as a finite sum of ``c * p_lambda``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping] = None):
        clean: Dict[Partition, Fraction] = {}
        if terms:
            for lam, c in terms.items():
                if not isinstance(lam, Partition):
                    lam = Partition(lam)
                c = Fraction(c)
                if c:
                    clean[lam] = clean.get(lam, 0) + c
                    if not clean[lam]:
                        del clean[lam]
        self.terms = clean

    @classmethod
    def _raw(cls, terms: Dict[Partition, Fraction]) -> "SymFunc":
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls) -> "SymFunc":
        return cls._raw({})

    @classmethod
    def one(cls) -> "SymFunc":
        return cls._raw({EMPTY: Fraction(1)})

    @classmethod
    def constant(cls, c: Number) -> "SymFunc":
        c = Fraction(c)
        return cls._raw({EMPTY: c} if c else {})

    @classmethod
    def p(cls, *parts: int) -> "SymFunc":
        """The monomial ``p_lambda`` for ``lambda = parts``."""
        return cls._raw({Partition(parts): Fraction(1)})

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[Partition, Fraction]]:
        return iter(self.terms.items())

    def coefficient(self, lam) -> Fraction:
        if not isinstance(lam, Partition):
            lam = Partition(lam)
        return self.terms.get(lam, Fraction(0))

    def degrees(self) -> set:
        return {lam.size for lam in self.terms}

    def homogeneous(self, n: int) -> "SymFunc":
        return SymFunc._raw({lam: c for lam, c in self.terms.items() if lam.size == n})

    def truncate(self, max_degree: int) -> "SymFunc":
        return SymFunc._raw({lam: c for lam, c in self.terms.items() if lam.size <= max_degree})

    def max_degree(self) -> int:
        return max((lam.size for lam in self.terms), default=-1)

    def __add__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc.constant(other)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            v = out.get(lam, 0) + c
            if v:
                out[lam] = v
            else:
                out.pop(lam, None)
        return SymFunc._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc._raw({lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SymFunc):
            c = Fraction(other)
            if not c:
                return SymFunc.zero()
            return SymFunc._raw({lam: v * c for lam, v in self.terms.items()})
        return self.mul_truncated(other, None)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = Fraction(other)
        return SymFunc._raw({lam: v / c for lam, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = SymFunc.one()
        for _ in range(k):
            out = out * self
        return out

    def mul_truncated(self, other: "SymFunc", max_degree: Optional[int]) -> "SymFunc":
        out: Dict[Partition, Fraction] = {}
        for a, ca in self.terms.items():
            sa = a.size
            for b, cb in other.terms.items():
                if max_degree is not None and sa + b.size > max_degree:
                    continue
                key = Partition._trusted(tuple(sorted(a.parts + b.parts, reverse=True)))
                v = out.get(key, 0) + ca * cb
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return SymFunc._raw(out)

    def __eq__(self, other):
        if isinstance(other, SymFunc):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == SymFunc.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for lam, c in self.sorted_terms():
            mono = _monomial_str(lam)
            if not mono:
                body = format_rational(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{format_rational(abs(c))}*{mono}"
            sign = "-" if c < 0 else "+"
            chunks.append((sign, body))
        first_sign, first = chunks[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"SymFunc({self})"

    def to_json(self) -> Dict[str, str]:
        return {",".join(map(str, lam.parts)): format_rational(c) for lam, c in self.sorted_terms()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "SymFunc":
        if not isinstance(data, Mapping):
            raise ValueError(f"symmetric function must be a JSON object, got {type(data).__name__}")
        terms = {}
        for key, val in data.items():
            key = key.strip()
            try:
                parts = [int(x) for x in key.split(",")] if key else []
                lam = Partition(parts)
            except ValueError as exc:
                raise ValueError(f"malformed partition key {key!r}") from exc
            if lam in terms:
                raise ValueError(f"duplicate partition key {key!r}")
            terms[lam] = parse_rational(val)
        return cls(terms)


def _monomial_str(lam: Partition) -> str:
    bits = []
    for i, m in sorted(Counter(lam.parts).items(), reverse=True):
        bits.append(f"p{i}^{m}" if m > 1 else f"p{i}")
    return "*".join(bits)


def skew_power(mu, f: "SymFunc") -> "SymFunc":
    """``p_mu^perp f = (prod_i i^{m_i}) d^{|m|} f / prod_i dp_i^{m_i}``."""
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    if not mu:
        return f
    need = Counter(mu.parts)
    scale = prod(i**m for i, m in need.items())
    out: Dict[Partition, Fraction] = {}
    for lam, c in f.terms.items():
        have = Counter(lam.parts)
        if any(have[i] < m for i, m in need.items()):
            continue
        factor = scale * prod(_falling(have[i], m) for i, m in need.items())
        rest = have.copy()
        rest.subtract(need)
        key = Partition._trusted(tuple(sorted(rest.elements(), reverse=True)))
        out[key] = out.get(key, 0) + c * factor
    return SymFunc._raw({k: v for k, v in out.items() if v})


def _adams_sym(k: int, f: SymFunc) -> SymFunc:
    if k == 1:
        return f
    return SymFunc._raw({lam.scaled(k): c for lam, c in f.terms.items()})


def adams(k: int, f):
    """The Adams operation ``psi_k``: ``p_i -> p_{ik}`` and, on series, ``t^m -> t^{km}``."""
    if not isinstance(k, int) or k <= 0:
        raise ValueError(f"Adams operations are indexed by positive integers, got {k!r}")
    if isinstance(f, GenusSeries):
        return f.adams(k)
    return _adams_sym(k, f)


def adams_mu(mu, f):
    """``psi_mu(f) = p_mu o f``: the product of ``psi_k(f)`` over the parts ``k`` of ``mu``."""
    if not isinstance(mu, Partition):
        mu = Partition(mu)
    if isinstance(f, GenusSeries):
        out = GenusSeries.one()
    else:
        out = SymFunc.one()
    for k in mu.parts:
        out = out * adams(k, f)
    return out


def h_to_p(n: int) -> SymFunc:
    """Complete homogeneous ``h_n = sum_{lambda |- n} p_lambda / z_lambda``."""
    if n < 0:
        raise ValueError("h_n needs n >= 0")
    return SymFunc._raw({lam: Fraction(1, lam.z()) for lam in partitions_of(n)})


def euler_specializations(f: SymFunc, n: int) -> Tuple[Fraction, Fraction]:
    """Plain and quotient Euler characteristics of the degree-``n`` part.

    The first is ``n!`` times the ``p_1^n`` coefficient (the dimension count),
    the second is ``<f_n, h_n>``, obtained by setting every ``p_i`` to 1.
    """
    part = f.homogeneous(n)
    plain = factorial(n) * part.coefficient(Partition([1] * n))
    quotient = sum(part.terms.values(), Fraction(0))
    return plain, quotient


_INF = float("inf")


class GenusSeries:
    """``sum_e f_e * t^e`` with a completeness window.

    ``g_max``/``n_max`` say that the coefficient of ``t^e`` is exact in every
    degree ``<= n_max`` whenever ``e <= g_max - 1``.  ``None`` means the
    bound is absent (exact in that direction).  ``floor`` is a lower bound on
    the exponents that can occur, which the product needs in order to know
    how far truncation errors can travel.
    """

    __slots__ = ("coeffs", "g_max", "n_max", "floor")

    def __init__(self, coeffs: Optional[Mapping[int, SymFunc]] = None, g_max: Optional[int] = None,
                 n_max: Optional[int] = None, floor: Optional[int] = None):
        clean = {}
        for e, f in (coeffs or {}).items():
            if not isinstance(f, SymFunc):
                raise TypeError("GenusSeries coefficients must be SymFunc")
            if n_max is not None:
                f = f.truncate(n_max) if f.max_degree() > n_max else f
            if f:
                clean[int(e)] = f
        self.coeffs = clean
        self.g_max = g_max
        self.n_max = n_max
        lowest = min(clean) if clean else None
        if floor is None:
            if g_max is not None or n_max is not None:
                # truncated data: the geometric convention t^{g-1}, g >= 0
                floor = -1 if lowest is None else min(-1, lowest)
            else:
                floor = lowest
        elif lowest is not None and lowest < floor:
            raise ValueError(f"stored exponent {lowest} lies below declared floor {floor}")
        self.floor = floor

    @classmethod
    def zero(cls) -> "GenusSeries":
        return cls({})

    @classmethod
    def one(cls) -> "GenusSeries":
        return cls({0: SymFunc.one()})

    @classmethod
    def monomial(cls, f: SymFunc, e: int) -> "GenusSeries":
        return cls({e: f})

    @property
    def e_max(self):
        return _INF if self.g_max is None else self.g_max - 1

    def is_exact(self) -> bool:
        return self.g_max is None and self.n_max is None

    def _check(self, e: int, n: Optional[int] = None):
        if e > self.e_max:
            raise TruncationError(f"t^{e} lies outside the window g_max={self.g_max} (exponents <= {self.e_max})")
        if n is not None and self.n_max is not None and n > self.n_max:
            raise TruncationError(f"degree {n} at t^{e} lies outside the window n_max={self.n_max}")

    def __getitem__(self, e: int) -> SymFunc:
        """The ``t^e`` coefficient, truncated to the complete degrees."""
        self._check(e)
        return self.coeffs.get(e, SymFunc.zero())

    def coefficient(self, e: int, n: int) -> SymFunc:
        self._check(e, n)
        return self.coeffs.get(e, SymFunc.zero()).homogeneous(n)

    def exponents(self):
        return sorted(self.coeffs)

    def _window_min(self, other: "GenusSeries"):
        def lo(a, b):
            if a is None:
                return b
            if b is None:
                return a
            return min(a, b)
        return lo(self.g_max, other.g_max), lo(self.n_max, other.n_max)

    def _coerce(self, other) -> "GenusSeries":
        if isinstance(other, GenusSeries):
            return other
        if isinstance(other, SymFunc):
            return GenusSeries({0: other})
        return GenusSeries({0: SymFunc.constant(other)})

    def __add__(self, other):
        other = self._coerce(other)
        g_max, n_max = self._window_min(other)
        out = dict(self.coeffs)
        for e, f in other.coeffs.items():
            out[e] = out.get(e, SymFunc.zero()) + f
        floors = [x for x in (self.floor, other.floor) if x is not None]
        return GenusSeries(out, g_max, n_max, floor=min(floors) if floors else None)

    __radd__ = __add__

    def __neg__(self):
        return GenusSeries({e: -f for e, f in self.coeffs.items()}, self.g_max, self.n_max, self.floor)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GenusSeries({e: f * other for e, f in self.coeffs.items()}, self.g_max, self.n_max, self.floor)
        other = self._coerce(other)
        if self.floor is None or other.floor is None:
            # one side is exactly zero
            return GenusSeries({}, floor=None)
        # an error term at exponent e of one factor reaches e + floor(other)
        e_max = min(self.e_max + other.floor, other.e_max + self.floor)
        g_max = None if e_max == _INF else int(e_max) + 1
        _, n_max = self._window_min(other)
        out: Dict[int, SymFunc] = {}
        for e1, f1 in self.coeffs.items():
            for e2, f2 in other.coeffs.items():
                e = e1 + e2
                if e > e_max:
                    continue
                prod_ = f1.mul_truncated(f2, n_max)
                if prod_:
                    out[e] = out.get(e, SymFunc.zero()) + prod_
        return GenusSeries(out, g_max, n_max, floor=self.floor + other.floor)

    __rmul__ = __mul__

    def shift(self, m: int) -> "GenusSeries":
        """Multiply by ``t^m``."""
        return GenusSeries({e + m: f for e, f in self.coeffs.items()},
                           None if self.g_max is None else self.g_max + m, self.n_max,
                           None if self.floor is None else self.floor + m)

    def adams(self, k: int) -> "GenusSeries":
        e_max = self.e_max
        g_max = None if e_max == _INF else k * int(e_max) + 1
        n_max = None if self.n_max is None else k * self.n_max
        return GenusSeries({k * e: _adams_sym(k, f) for e, f in self.coeffs.items()}, g_max, n_max,
                           None if self.floor is None else k * self.floor)

    def skew(self, mu) -> "GenusSeries":
        if not isinstance(mu, Partition):
            mu = Partition(mu)
        n_max = None if self.n_max is None else self.n_max - mu.size
        return GenusSeries({e: skew_power(mu, f) for e, f in self.coeffs.items()}, self.g_max, n_max,
                           self.floor)

    def restrict(self, g_max: int, n_max: int) -> "GenusSeries":
        """Narrow the window; widening is refused."""
        if self.g_max is not None and g_max > self.g_max:
            raise TruncationError(f"cannot widen g_max from {self.g_max} to {g_max}")
        if self.n_max is not None and n_max > self.n_max:
            raise TruncationError(f"cannot widen n_max from {self.n_max} to {n_max}")
        return GenusSeries({e: f for e, f in self.coeffs.items() if e <= g_max - 1}, g_max, n_max,
                           self.floor if self.floor is not None else -1)

    def __eq__(self, other):
        if not isinstance(other, GenusSeries):
            return NotImplemented
        return (self.coeffs == other.coeffs and self.g_max == other.g_max and self.n_max == other.n_max)

    def same_values(self, other: "GenusSeries") -> bool:
        """Coefficient equality on the common window, ignoring window metadata."""
        g_max, n_max = self._window_min(other)
        for e in set(self.coeffs) | set(other.coeffs):
            if g_max is not None and e > g_max - 1:
                continue
            a = self.coeffs.get(e, SymFunc.zero())
            b = other.coeffs.get(e, SymFunc.zero())
            if n_max is not None:
                a, b = a.truncate(n_max), b.truncate(n_max)
            if a != b:
                return False
        return True

    def __repr__(self):
        return f"GenusSeries({self.coeffs!r}, g_max={self.g_max}, n_max={self.n_max})"

    def __str__(self):
        if not self.coeffs:
            body = "0"
        else:
            body = "\n".join(f"t^{e}: {self.coeffs[e]}" for e in sorted(self.coeffs))
        if self.g_max is None and self.n_max is None:
            return body
        return body + f"\n[window g_max={self.g_max}, n_max={self.n_max}]"

    def to_json(self):
        return {
            "coefficients": [{"t": e, "value": self.coeffs[e].to_json()} for e in sorted(self.coeffs)],
            "window": {"g_max": self.g_max, "n_max": self.n_max},
        }

    @classmethod
    def from_json(cls, data) -> "GenusSeries":
        if isinstance(data, list):
            items, window = data, {}
            # allow the window object inline in the array
            rest = [x for x in items if "t" not in x]
            items = [x for x in items if "t" in x]
            for x in rest:
                window.update(x)
        else:
            items, window = data.get("coefficients", []), data.get("window", {})
        coeffs = {}
        for item in items:
            e = int(item["t"])
            if e in coeffs:
                raise ValueError(f"duplicate exponent t^{e}")
            coeffs[e] = SymFunc.from_json(item["value"])
        return cls(coeffs, window.get("g_max"), window.get("n_max"))

