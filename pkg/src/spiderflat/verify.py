"""Checks on a Rees family: fibres, curvilinearity and the flatness certificate."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactlinear import Matrix, rank
from .poly import (
    Lex,
    Poly,
    buchberger,
    fglm,
    format_monomial,
    leading_monomial,
    normal_form,
    s_polynomial,
    standard_monomials,
)
from .series import divided_difference_coords, eval_poly_as_series
from .spider import ReesFamily, SpiderType

DEFAULT_LAMBDAS = tuple(Fraction(v) for v in ("0", "1", "2", "-1", "1/2", "1/3"))


class InfiniteDimensional(ArithmeticError):
    """A fibre of the family is not Artinian."""


@dataclass
class FiberReport:
    lam: Fraction
    dimension: int
    is_spider: bool | None = None
    is_curvilinear: bool | None = None
    gb_shape: str = ""
    gb: list = field(default_factory=list, repr=False)
    note: str = ""


@dataclass
class FlatnessCertificate:
    spair_count: int
    all_reduce_to_zero: bool
    module_rank: int | None
    nonzero_pairs: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.all_reduce_to_zero


def specialize(family: ReesFamily, lam) -> list:
    """Set the parameter to ``lam`` in every generator."""
    return [f.subs(0, lam) for f in family.family]


def _shape(gb: Sequence[Poly], order, names) -> str:
    return "{" + ", ".join(
        _mono_str(leading_monomial(g, order), names) for g in gb) + "}"


def _mono_str(m, names):
    return format_monomial(m, names) or "1"


def fiber_dimension(family: ReesFamily, lam) -> FiberReport:
    """Groebner basis of the fibre at ``eps = lam`` and its standard-monomial count."""
    lam = Fraction(lam)
    order = family.order
    gb = buchberger(specialize(family, lam), order)
    std = standard_monomials(gb, order)
    if std is None:
        raise InfiniteDimensional(f"fibre at eps={lam} is not finite dimensional")
    rep = FiberReport(lam, len(std), gb=gb,
                      gb_shape=_shape(gb, order, family.spider.variable_names()))
    if lam == 0:
        rep.is_spider = gb == _spider_gb(family.spider, order)
    return rep


def _spider_gb(spider: SpiderType, order) -> list:
    return buchberger(spider.spider_ideal(), order)


def check_special_fiber(family: ReesFamily) -> bool:
    """True iff the fibre at ``eps = 0`` is the monomial spider ideal."""
    order = family.order
    return buchberger(specialize(family, 0), order) == _spider_gb(family.spider, order)


def curvilinear_order(spider: SpiderType) -> Lex:
    """Lex order with the order-one variable smallest among the ``x_i``."""
    g = spider.generator_variable
    rest = [i for i in range(spider.r, 0, -1) if i != g]
    return Lex(rest + [g, 0])


def check_curvilinear_fiber(family: ReesFamily, lam) -> FiberReport:
    """Lex Groebner basis of a nonzero fibre and its shape.

    The expected shape is ``{g^n} + {x_j - p_j(g)}`` where ``g`` is the variable
    carrying the order-one coordinate.  The lex basis is obtained from the
    weighted one by FGLM conversion.
    """
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("the curvilinear check needs a nonzero parameter value")
    spider = family.spider
    order = curvilinear_order(spider)
    weighted = buchberger(specialize(family, lam), family.order)
    if standard_monomials(weighted, family.order) is None:
        raise InfiniteDimensional(f"fibre at eps={lam} is not finite dimensional")
    gb = fglm(weighted, family.order, order)
    std = standard_monomials(gb, order)
    n = spider.colength
    g = spider.generator_variable
    names = spider.variable_names()
    ok = len(gb) == spider.r and len(std) == n
    if ok:
        for p in gb:
            lm = leading_monomial(p, order)
            if lm == spider.x_power(g, n):
                ok = ok and len(p) == 1
            elif sum(lm) == 1 and lm[g] == 0:
                others = [m for m in p.terms if m != lm]
                ok = ok and all(m[g] == sum(m) for m in others)
            else:
                ok = False
    rep = FiberReport(lam, len(std), is_curvilinear=ok, gb=gb,
                      gb_shape=_shape(gb, order, names))
    if not ok and len(std) == n:
        rep.note = "dimension correct, shape unexpected"
    return rep


def flatness_certificate(family: ReesFamily) -> FlatnessCertificate:
    """Reduce every S-pair of the family generators under the family order.

    ``module_rank`` counts parameter-free standard monomials of the family's
    Groebner basis; the generators themselves when every pair reduces to zero.
    """
    order = family.order
    gens = list(family.family)
    bad = []
    pairs = list(itertools.combinations(range(len(gens)), 2))
    for i, j in pairs:
        r = normal_form(s_polynomial(gens[i], gens[j], order), gens, order)
        if r.terms:
            bad.append((i, j))
    gb = gens if not bad else buchberger(gens, order)
    std = standard_monomials(gb, order)
    return FlatnessCertificate(len(pairs), not bad,
                               None if std is None else len(std), bad)


def verify_relation(rel: Poly, spider: SpiderType, a_values=None) -> bool:
    """True iff ``rel`` vanishes on the coordinate series of ``spider``."""
    coords = divided_difference_coords(spider, a_values)
    return eval_poly_as_series(rel, coords).is_zero()


def macaulay_corank(gens: Sequence[Poly], spider_or_nvars, degree: int) -> int:
    """``dim Q[x]/(I + m^degree)`` by linear algebra on truncated multiples.

    Rows are ``m * g`` truncated below total degree ``degree`` for every
    monomial ``m`` of degree ``< degree``.  When ``m^degree`` lies in ``I``
    (true for ideals supported at the origin with colength ``<= degree``) this
    is the colength of ``I``.
    """
    nv = spider_or_nvars.nvars if isinstance(spider_or_nvars, SpiderType) else spider_or_nvars
    r = nv - 1
    monos = [m for d in range(degree) for m in _monos_of_degree(r, d)]
    col = {m: k for k, m in enumerate(monos)}
    rows = []
    for g in gens:
        for m in monos:
            row = [Fraction(0)] * len(monos)
            for gm, c in g.terms.items():
                if gm[0]:
                    raise ValueError("generators must not involve the parameter")
                nm = (0,) + tuple(a + b for a, b in zip(gm[1:], m[1:]))
                k = col.get(nm)
                if k is not None:
                    row[k] += c
            if any(row):
                rows.append(row)
    if not rows:
        return len(monos)
    return len(monos) - rank(Matrix.from_rows(rows, cols=len(monos)))


def _monos_of_degree(r: int, d: int):
    for combo in itertools.combinations_with_replacement(range(r), d):
        e = [0] * (r + 1)
        for i in combo:
            e[i + 1] += 1
        yield tuple(e)
