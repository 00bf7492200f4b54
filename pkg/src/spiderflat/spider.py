"""Spider types, the curvilinear basis, generic relations, weights and the
weighted Rees family."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactlinear import Matrix, rank, solve_linear
from .poly import Poly, WeightedDegRevLex, format_monomial
from .series import (
    CoordinateSystem,
    TruncSeries,
    divided_difference_coords,
    eval_poly_as_series,
)


class BasisDegenerate(ArithmeticError):
    """The spider monomials are linearly dependent in Q[t]/(t^n)."""


class NoFeasibleWeights(ValueError):
    """No weight vector in the searched range makes every border strictly heaviest."""


class TiedLeadingWeight(ValueError):
    """Two monomials of a relation share the maximal weight."""


@dataclass(frozen=True)
class SpiderType:
    legs: tuple

    def __post_init__(self):
        legs = tuple(int(l) for l in self.legs)
        if not legs:
            raise ValueError("a spider needs at least one leg")
        if any(l < 1 for l in legs):
            raise ValueError(f"leg lengths must be >= 1, got {legs}")
        object.__setattr__(self, "legs", legs)

    @property
    def r(self) -> int:
        return len(self.legs)

    @property
    def colength(self) -> int:
        return 1 + sum(self.legs)

    @property
    def nvars(self) -> int:
        """Length of exponent vectors: the parameter plus one slot per leg."""
        return self.r + 1

    @property
    def coordinate_index(self) -> tuple:
        """For each leg, the index (0-based) of the coordinate series it uses.

        Legs sorted longest first get coordinates of t-adic order 1, 2, ...;
        ties keep their input order.
        """
        ranked = sorted(range(self.r), key=lambda j: -self.legs[j])
        out = [0] * self.r
        for pos, j in enumerate(ranked):
            out[j] = pos
        return tuple(out)

    @property
    def generator_variable(self) -> int:
        """Exponent position of the variable carrying the order-one coordinate."""
        return self.coordinate_index.index(0) + 1

    def variable_names(self) -> list:
        if self.r <= 3:
            xs = ["x", "y", "z"][: self.r]
        else:
            xs = [f"x{i}" for i in range(1, self.r + 1)]
        return ["e"] + xs

    def x_power(self, i: int, k: int) -> tuple:
        """Exponent vector of ``x_i^k`` (1-based ``i``)."""
        e = [0] * self.nvars
        e[i] = k
        return tuple(e)

    def spider_ideal(self) -> list:
        """Generators ``x_i^(l_i+1)`` and ``x_i x_j`` of the monomial ideal."""
        gens = []
        for i, j in itertools.combinations(range(1, self.r + 1), 2):
            e = [0] * self.nvars
            e[i] = e[j] = 1
            gens.append(Poly.monomial(e))
        for i, l in enumerate(self.legs, start=1):
            gens.append(Poly.monomial(self.x_power(i, l + 1)))
        return gens

    def __str__(self):
        return "(" + ",".join(map(str, self.legs)) + ")"


@dataclass(frozen=True)
class SpiderBasis:
    spider: SpiderType
    coords: CoordinateSystem
    monomials: tuple
    series: tuple
    matrix: Matrix  # column m holds the t-coefficients of series[m]


@dataclass(frozen=True)
class Relation:
    polynomial: Poly
    border: tuple
    kind: str  # "mixed", "pure_power" or "vanishing_power"
    indices: tuple

    @property
    def border_coefficient(self) -> Fraction:
        return self.polynomial.coefficient(self.border)

    @property
    def tail(self) -> dict:
        return {m: c for m, c in self.polynomial.terms.items() if m != self.border}

    @property
    def vanishing(self) -> bool:
        return not self.tail


@dataclass(frozen=True)
class BorderMargin:
    relation: Relation
    border_weight: int
    heaviest_tail: tuple | None
    tail_weight: int | None

    @property
    def margin(self) -> int | None:
        if self.tail_weight is None:
            return None
        return self.border_weight - self.tail_weight

    @property
    def ok(self) -> bool:
        return self.tail_weight is None or self.border_weight > self.tail_weight


@dataclass(frozen=True)
class ReesFamily:
    spider: SpiderType
    relations: tuple
    weights: tuple
    family: tuple
    borders: tuple  # (border monomial, w_max) per generator
    a_values: tuple = field(default=())

    @property
    def order(self) -> WeightedDegRevLex:
        return WeightedDegRevLex(self.weights)

    @property
    def constant_in_eps(self) -> bool:
        """True when no generator involves the parameter (e.g. a single leg)."""
        return all(m[0] == 0 for f in self.family for m in f.terms)


# --- basis and expansion ---------------------------------------------------

def build_basis(spider: SpiderType, a_values: Sequence | None = None) -> SpiderBasis:
    """Series of the spider monomials ``1, x_i^k`` and a full-rank check."""
    coords = divided_difference_coords(spider, a_values)
    n = spider.colength
    monos = [(0,) * spider.nvars]
    series = [TruncSeries.one(n)]
    for i, l in enumerate(spider.legs, start=1):
        v = coords.variable_series(i - 1)
        s = TruncSeries.one(n)
        for k in range(1, l + 1):
            s = s * v
            monos.append(spider.x_power(i, k))
            series.append(s)
    M = Matrix.from_rows([[s.coeffs[row] for s in series] for row in range(n)])
    rk = rank(M)
    if rk < n:
        raise BasisDegenerate(f"spider {spider}: basis matrix has rank {rk} < {n}")
    return SpiderBasis(spider, coords, tuple(monos), tuple(series), M)


def expand_in_basis(f: TruncSeries, basis: SpiderBasis) -> list:
    """Coordinates of ``f`` with respect to the spider basis."""
    if f.order != basis.spider.colength:
        raise ValueError("series has the wrong truncation order")
    return solve_linear(basis.matrix, list(f.coeffs))


def _relation_from_expansion(border: tuple, coeffs: Sequence, basis: SpiderBasis,
                             kind: str, indices: tuple) -> Relation:
    terms = {border: Fraction(1)}
    for m, c in zip(basis.monomials, coeffs):
        if c:
            terms[m] = terms.get(m, 0) - c
    p = Poly(terms, basis.spider.nvars).primitive()
    if p.coefficient(border) < 0:
        p = -p
    return Relation(p, border, kind, indices)


def derive_relations(spider: SpiderType, a_values: Sequence | None = None,
                     basis: SpiderBasis | None = None) -> list:
    """Generators of the kernel of ``Q[x_1..x_r] -> Q[t]/(t^n)``.

    One mixed relation per pair ``i < j`` (border ``x_i x_j``), then one
    pure-power relation per leg (border ``x_i^(l_i+1)``), each obtained by
    expanding the border's series in the spider basis and clearing
    denominators.
    """
    if basis is None:
        basis = build_basis(spider, a_values)
    coords = basis.coords
    rels = []
    for i, j in itertools.combinations(range(1, spider.r + 1), 2):
        border = [0] * spider.nvars
        border[i] = border[j] = 1
        s = coords.variable_series(i - 1) * coords.variable_series(j - 1)
        rels.append(_relation_from_expansion(
            tuple(border), expand_in_basis(s, basis), basis, "mixed", (i, j)))
    for i, l in enumerate(spider.legs, start=1):
        border = spider.x_power(i, l + 1)
        s = coords.variable_series(i - 1) ** (l + 1)
        if s.is_zero():
            rels.append(Relation(Poly.monomial(border), border, "vanishing_power", (i,)))
        else:
            rels.append(_relation_from_expansion(
                border, expand_in_basis(s, basis), basis, "pure_power", (i,)))
    for rel in rels:
        if not eval_poly_as_series(rel.polynomial, coords).is_zero():
            raise ArithmeticError(f"derived relation does not vanish: {rel.polynomial}")
    return rels


# --- weights ---------------------------------------------------------------

def monomial_weight(m: tuple, weights: Sequence[int]) -> int:
    return sum(w * e for w, e in zip(weights, m[1:]))


def margins(relations: Sequence[Relation], weights: Sequence[int]) -> list:
    """Border weight against the heaviest tail weight, per relation."""
    out = []
    for rel in relations:
        bw = monomial_weight(rel.border, weights)
        tail = rel.tail
        if tail:
            heavy = max(tail, key=lambda m: (monomial_weight(m, weights), m))
            out.append(BorderMargin(rel, bw, heavy, monomial_weight(heavy, weights)))
        else:
            out.append(BorderMargin(rel, bw, None, None))
    return out


def weights_dominate(relations: Sequence[Relation], weights: Sequence[int]) -> bool:
    """True when every border is strictly heavier than all of its tail monomials."""
    if any(w < 1 for w in weights):
        return False
    return all(m.ok for m in margins(relations, weights))


def consecutive_weights(spider: SpiderType, w: int) -> tuple:
    """``(w, w+1, ..., w+r-1)`` laid out along the coordinate orders."""
    return tuple(w + k for k in spider.coordinate_index)


def select_weights(relations: Sequence[Relation], spider: SpiderType,
                   bound: int = 10**6) -> tuple:
    """Smallest ``w >= 1`` such that the consecutive weights dominate every tail.

    Each border/tail pair gives one linear inequality ``a*w + b > 0`` in ``w``,
    so the answer is read off from the bounds instead of scanning.
    """
    off = consecutive_weights(spider, 0)
    lo, hi = 1, bound
    for rel in relations:
        for m in rel.tail:
            a = sum(rel.border[1:]) - sum(m[1:])
            b = monomial_weight(rel.border, off) - monomial_weight(m, off)
            if a > 0:
                lo = max(lo, (-b) // a + 1)
            elif a == 0:
                if b <= 0:
                    raise NoFeasibleWeights(
                        f"border {rel.border} never outweighs tail {m}")
            else:
                # w < b / c with c = -a > 0
                c = -a
                hi = min(hi, b // c - 1 if b % c == 0 else b // c)
    if lo > hi:
        raise NoFeasibleWeights(f"no consecutive weights with w <= {bound}")
    w = consecutive_weights(spider, lo)
    assert weights_dominate(relations, w)
    return w


def search_weights(relations: Sequence[Relation], spider: SpiderType,
                   max_weight: int = 40) -> tuple:
    """Exhaustive search over integer vectors, smallest total weight first."""
    r = spider.r
    for total in range(r, r * max_weight + 1):
        for w in _compositions(total, r, max_weight):
            if weights_dominate(relations, w):
                return w
    raise NoFeasibleWeights(f"no weights with entries <= {max_weight}")


def _compositions(total: int, parts: int, cap: int):
    if parts == 1:
        if 1 <= total <= cap:
            yield (total,)
        return
    for first in range(1, min(cap, total - parts + 1) + 1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield (first,) + rest


# --- homogenization --------------------------------------------------------

def homogenize(rel: Relation, weights: Sequence[int]) -> Poly:
    """Weighted Rees homogenization: ``c m -> c eps^(w_max - w(m)) m``."""
    p = rel.polynomial
    ws = {m: monomial_weight(m, weights) for m in p.terms}
    wmax = max(ws.values())
    heaviest = [m for m, w in ws.items() if w == wmax]
    if len(heaviest) > 1:
        raise TiedLeadingWeight(f"monomials {heaviest} share the maximal weight {wmax}")
    if heaviest[0] != rel.border:
        raise ValueError(f"border {rel.border} is not the heaviest monomial")
    terms = {}
    for m, c in p.terms.items():
        terms[(m[0] + wmax - ws[m],) + m[1:]] = c
    return Poly(terms, p.nvars)


def build_family(spider: SpiderType | Sequence[int], a_values: Sequence | None = None,
                 weights: Sequence[int] | None = None,
                 general_search: bool = False) -> ReesFamily:
    """Run basis -> relations -> weights -> homogenization for one spider type."""
    if not isinstance(spider, SpiderType):
        spider = SpiderType(tuple(spider))
    basis = build_basis(spider, a_values)
    rels = derive_relations(spider, basis=basis)
    if weights is not None:
        weights = tuple(int(w) for w in weights)
        if len(weights) != spider.r or not weights_dominate(rels, weights):
            raise NoFeasibleWeights(f"weights {weights} do not dominate every tail")
    elif general_search:
        weights = search_weights(rels, spider)
    else:
        weights = select_weights(rels, spider)
    fam = tuple(homogenize(rel, weights) for rel in rels)
    borders = tuple((rel.border, monomial_weight(rel.border, weights)) for rel in rels)
    return ReesFamily(spider, tuple(rels), weights, fam, borders,
                      tuple(basis.coords.a_values))


def margin_table(family: ReesFamily) -> str:
    """Plain-text table of border weights against the heaviest tails."""
    names = family.spider.variable_names()
    lines = [f"weights {family.weights}",
             f"{'border':>10} {'w(border)':>10} {'heaviest tail':>14} {'w(tail)':>8} {'margin':>7}"]
    for m in margins(family.relations, family.weights):
        b = format_monomial(m.relation.border, names) or "1"
        if m.heaviest_tail is None:
            lines.append(f"{b:>10} {m.border_weight:>10} {'-':>14} {'-':>8} {'-':>7}")
        else:
            t = format_monomial(m.heaviest_tail, names) or "1"
            lines.append(f"{b:>10} {m.border_weight:>10} {t:>14} "
                         f"{m.tail_weight:>8} {m.margin:>7}")
    return "\n".join(lines)
