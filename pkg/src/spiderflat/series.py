"""Truncated power series in Q[t]/(t^n), Moebius generators and
divided-difference coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .poly import Poly


class NotAUnit(ArithmeticError):
    """The series has zero constant term and cannot be inverted."""


class OrderCollapse(ArithmeticError):
    """A divided-difference coordinate has the wrong t-adic order."""


@dataclass(frozen=True)
class TruncSeries:
    """Element of Q[t]/(t^n) stored densely; ``coeffs[i]`` multiplies ``t^i``."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("truncation order must be at least 1")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def zero(cls, n: int) -> "TruncSeries":
        return cls((0,) * n)

    @classmethod
    def one(cls, n: int) -> "TruncSeries":
        return cls((1,) + (0,) * (n - 1))

    @classmethod
    def t(cls, n: int) -> "TruncSeries":
        return cls.from_terms({1: 1}, n)

    @classmethod
    def from_terms(cls, terms: dict, n: int) -> "TruncSeries":
        c = [Fraction(0)] * n
        for k, v in terms.items():
            if k < n:
                c[k] += Fraction(v)
        return cls(tuple(c))

    def _check(self, other: "TruncSeries"):
        if other.order != self.order:
            raise ValueError(f"order mismatch: t^{self.order} vs t^{other.order}")

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.one(self.order) * Fraction(other)
        self._check(other)
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            s = Fraction(other)
            return TruncSeries(tuple(a * s for a in self.coeffs))
        self._check(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * n
        for i in range(n):
            ai = a[i]
            if not ai:
                continue
            for j in range(n - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        return TruncSeries(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return invert(self) ** (-k)
        out = TruncSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        """The t-adic order; ``None`` for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def __repr__(self):
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"TruncSeries({' + '.join(terms) or '0'} mod t^{self.order})"


def series_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a + b


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def invert(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse modulo t^n."""
    c = a.coeffs
    if not c[0]:
        raise NotAUnit("constant term is zero")
    n = a.order
    inv0 = 1 / c[0]
    b = [inv0] + [Fraction(0)] * (n - 1)
    for k in range(1, n):
        s = sum((c[j] * b[k - j] for j in range(1, k + 1) if c[j]), Fraction(0))
        b[k] = -s * inv0
    return TruncSeries(tuple(b))


series_invert = invert


def mobius_generator(a, n: int) -> TruncSeries:
    """``t / (1 - a t)`` truncated at ``t^n``."""
    if n < 1:
        raise ValueError("n must be positive")
    a = Fraction(a)
    c = [Fraction(0)] * n
    p = Fraction(1)
    for k in range(1, n):
        c[k] = p
        p *= a
    return TruncSeries(tuple(c))


def divided_difference(values: Sequence[TruncSeries], points: Sequence) -> TruncSeries:
    """Divided difference ``f[a_1, ..., a_k]`` of sampled values ``f(a_j)``."""
    out = TruncSeries.zero(values[0].order)
    pts = [Fraction(p) for p in points]
    for j, v in enumerate(values):
        den = Fraction(1)
        for m, q in enumerate(pts):
            if m != j:
                den *= pts[j] - q
        out = out + v * (1 / den)
    return out


@dataclass(frozen=True)
class CoordinateSystem:
    """Moebius generators ``u_a`` and the coordinates ``v_1..v_r`` with ord_t(v_i) = i.

    ``assignment[j]`` is the index into ``coords`` used for variable ``x_{j+1}``;
    it is the identity when the legs are non-increasing.
    """

    spider: object
    a_values: tuple
    mobius: tuple
    coords: tuple
    assignment: tuple

    @property
    def n(self) -> int:
        return self.spider.colength

    def variable_series(self, j: int) -> TruncSeries:
        """Series substituted for ``x_{j+1}`` (0-based ``j``)."""
        return self.coords[self.assignment[j]]


def divided_difference_coords(spider, a_values: Sequence | None = None) -> CoordinateSystem:
    """Build ``u_a = t/(1-at)`` and ``v_i = (i-1)! u[a_1..a_i]``.

    For the default points ``a = 1..r`` this is the forward difference
    ``v_i = Delta^{i-1} u_1``.  Leg ``j`` receives the coordinate whose order is
    its rank among the legs sorted longest first (ties keep input order).
    """
    r = len(spider.legs)
    n = spider.colength
    if r < 1:
        raise ValueError("need at least one leg")
    if a_values is None:
        a_values = tuple(Fraction(a) for a in range(1, r + 1))
    else:
        a_values = tuple(Fraction(a) for a in a_values)
    if len(a_values) != r:
        raise ValueError(f"need {r} a-values, got {len(a_values)}")
    if any(a == 0 for a in a_values) or len(set(a_values)) != r:
        raise ValueError("a-values must be distinct and nonzero")

    u = tuple(mobius_generator(a, n) for a in a_values)
    coords = []
    for i in range(1, r + 1):
        v = divided_difference(u[:i], a_values[:i]) * factorial(i - 1)
        if v.valuation() != i:
            raise OrderCollapse(f"ord_t(v_{i}) = {v.valuation()}, expected {i}")
        coords.append(v)
    return CoordinateSystem(spider, a_values, u, tuple(coords),
                            tuple(spider.coordinate_index))


def eval_poly_as_series(p: Poly, coords: CoordinateSystem) -> TruncSeries:
    """Substitute the coordinate series for ``x_1..x_r`` and evaluate mod t^n."""
    r = len(coords.coords)
    if p.nvars != r + 1:
        raise ValueError(f"polynomial has {p.nvars - 1} variables, coordinates have {r}")
    n = coords.n
    powers = [[TruncSeries.one(n)] for _ in range(r)]

    def power(j, k):
        cache = powers[j]
        while len(cache) <= k:
            cache.append(cache[-1] * coords.variable_series(j))
        return cache[k]

    acc = [Fraction(0)] * n
    for m, c in p.terms.items():
        if m[0]:
            raise ValueError("polynomial involves the deformation parameter")
        s = TruncSeries.one(n)
        for j in range(r):
            if m[j + 1]:
                s = s * power(j, m[j + 1])
        for i, v in enumerate(s.coeffs):
            if v:
                acc[i] += c * v
    return TruncSeries(tuple(acc))
