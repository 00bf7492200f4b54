"""Stand-alone verification scripts for external computer algebra systems.

Two dialects are supported: ``m2`` (Macaulay2) and ``sage``.  A script first
builds the family ideal and checks the special fibre and the fibre
dimensions, then rebuilds the coordinate series in Q[t]/(t^n) and asserts
every generic relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .poly import Poly, format_term
from .spider import Relation, ReesFamily, SpiderType
from .verify import DEFAULT_LAMBDAS

DIALECTS = ("m2", "sage")


class UnknownDialect(ValueError):
    pass


@dataclass(frozen=True)
class VerificationScript:
    dialect: str
    body: str


def _join(terms: list) -> str:
    if not terms:
        return "0"
    s = terms[0]
    for t in terms[1:]:
        s += " - " + t[1:] if t.startswith("-") else " + " + t
    return s


def _fmt(c, m, names) -> str:
    return format_term(Fraction(c), m, names, mul="*")


def _rhs_order(m: tuple) -> tuple:
    # linear terms first, last variable first; then higher powers by variable
    deg = sum(m[1:])
    var = next(i for i, e in enumerate(m) if e)
    if deg == 1:
        return (0, -var, 0)
    return (1, var, deg)


def _pure_order(m: tuple, border: tuple) -> tuple:
    # border, then per variable: the linear term, then descending powers
    if m == border:
        return (-1, 0, 0)
    if not any(m):
        return (10**9, 0, 0)
    var = next(i for i, e in enumerate(m) if e)
    e = m[var]
    return (var, 0 if e == 1 else 1, -e)


def mixed_assertion(rel: Relation, names) -> tuple[str, str]:
    """``(lhs, rhs)`` with the border on the left and the tail moved right."""
    b = rel.border
    lhs = _fmt(rel.polynomial.terms[b], b, names)
    tail = sorted(rel.tail, key=_rhs_order)
    rhs = _join([_fmt(-rel.polynomial.terms[m], m, names) for m in tail])
    return lhs, rhs


def pure_expression(rel: Relation, names) -> str:
    monos = sorted(rel.polynomial.terms, key=lambda m: _pure_order(m, rel.border))
    return _join([_fmt(rel.polynomial.terms[m], m, names) for m in monos])


def _relation_name(rel: Relation, names) -> str:
    return "g" + names[rel.indices[0]]


def _frac_str(q: Fraction, dialect: str) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"({q.numerator}/{q.denominator})"


def _coord_expr(spider: SpiderType, j: int) -> str:
    """``(i-1)! * t^i * s_1 * ... * s_i`` for the coordinate used by ``x_j``."""
    i = spider.coordinate_index[j - 1] + 1
    parts = []
    if factorial(i - 1) > 1:
        parts.append(str(factorial(i - 1)))
    parts.append("t" if i == 1 else f"t^{i}")
    parts += [f"s{a}" for a in range(1, i + 1)]
    return "*".join(parts)


def _s_expr(a: Fraction, n: int, dialect: str) -> str:
    base = "t" if a == 1 else f"({_frac_str(a, dialect)}*t)"
    if dialect == "m2":
        return f"sum({n}, i->{base}^i)"
    return f"sum({base}^i for i in range({n}))"


def emit_script(family: ReesFamily, dialect: str = "m2",
                lambdas: Sequence = DEFAULT_LAMBDAS) -> VerificationScript:
    if dialect not in DIALECTS:
        raise UnknownDialect(f"unknown dialect {dialect!r}; choose from {DIALECTS}")
    spider = family.spider
    names = spider.variable_names()
    xs = names[1:]
    n = spider.colength
    ring_vars = ",".join(xs + ["e"])
    order = family.order
    gens = [f.to_str(names, order) for f in family.family]
    spider_gens = [Poly(g.terms, g.nvars).to_str(names) for g in spider.spider_ideal()]
    a_values = family.a_values or tuple(Fraction(a) for a in range(1, spider.r + 1))
    lam_strs = [_frac_str(Fraction(l), dialect) for l in lambdas]
    mixed = [r for r in family.relations if r.kind == "mixed"]
    pure = [r for r in family.relations if r.kind == "pure_power"]
    vanishing = [r for r in family.relations if r.kind == "vanishing_power"]

    out = []
    c = "--" if dialect == "m2" else "#"
    out.append(f"{c} Flat family for the spider of type {spider}, length {n}")
    out.append(f"{c} weights {family.weights}; e is the deformation parameter")
    if dialect == "m2":
        out.append(f"S = QQ[{ring_vars}];")
        out.append("I = ideal(")
        out.append(",\n".join("  " + g for g in gens) + ");")
        out.append(f"{c} Special fibre is the spider ideal")
        out.append(f"assert(sub(I, e => 0) == ideal({', '.join(spider_gens)}));")
        out.append(f"{c} Fibre dimensions")
        out.append(f"scan({{{', '.join(lam_strs)}}}, lam -> "
                   f"assert(degree(S/(I + ideal(e - lam))) == {n}));")
        out.append(f"R = QQ[t]/ideal(t^{n});")
        for k, a in enumerate(a_values, start=1):
            out.append(f"s{k} = {_s_expr(a, n, dialect)};")
        for j, x in enumerate(xs, start=1):
            out.append(f"{x} = {_coord_expr(spider, j)};")
        out.append(f"{c} Mixed relations")
        for rel in mixed:
            lhs, rhs = mixed_assertion(rel, names)
            out.append(f"assert({lhs} == {rhs});")
        for rel in pure:
            g = _relation_name(rel, names)
            out.append(f"{c} Pure-power relation {g}")
            out.append(f"{g} = {pure_expression(rel, names)};")
            out.append(f"assert({g} == 0);")
        for rel in vanishing:
            out.append(f"assert({_fmt(1, rel.border, names)} == 0);")
    else:
        out.append(f"S.<{ring_vars}> = QQ[]")
        out.append("I = S.ideal([")
        out.append(",\n".join("    " + g for g in gens) + "])")
        out.append(f"{c} Special fibre is the spider ideal")
        out.append(f"assert S.ideal([f.subs(e=0) for f in I.gens()]) == "
                   f"S.ideal([{', '.join(spider_gens)}])")
        out.append(f"{c} Fibre dimensions")
        out.append(f"for lam in [{', '.join(lam_strs)}]:")
        out.append(f"    assert (I + S.ideal([e - lam])).vector_space_dimension() == {n}")
        out.append("P.<T> = QQ[]")
        out.append(f"R.<t> = P.quotient(T^{n})")
        for k, a in enumerate(a_values, start=1):
            out.append(f"s{k} = {_s_expr(a, n, dialect)}")
        for j, x in enumerate(xs, start=1):
            out.append(f"{x} = {_coord_expr(spider, j)}")
        out.append(f"{c} Mixed relations")
        for rel in mixed:
            lhs, rhs = mixed_assertion(rel, names)
            out.append(f"assert {lhs} == {rhs}")
        for rel in pure:
            g = _relation_name(rel, names)
            out.append(f"{c} Pure-power relation {g}")
            out.append(f"{g} = {pure_expression(rel, names)}")
            out.append(f"assert {g} == 0")
        for rel in vanishing:
            out.append(f"assert {_fmt(1, rel.border, names)} == 0")
    return VerificationScript(dialect, "\n".join(out) + "\n")
