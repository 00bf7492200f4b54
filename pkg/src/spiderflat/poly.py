"""Sparse multivariate polynomials over the rationals and Groebner bases.

A monomial is a tuple of non-negative exponents.  Throughout the package the
tuple has length ``r + 1``: position 0 holds the exponent of the deformation
parameter ``eps`` and positions ``1..r`` the exponents of ``x_1..x_r``.  The
polynomial code itself does not care; it only needs all monomials of a
computation to share one length.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from operator import add, sub
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

Monomial = tuple


class ZeroPolynomial(ValueError):
    """An operation needed a leading term of the zero polynomial."""


# --- monomial helpers -------------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(add, a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(map(sub, a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    """True when monomial ``a`` divides monomial ``b``."""
    return all(x <= y for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


# --- polynomials --------------------------------------------------------------

class Poly:
    """Immutable sparse polynomial; ``terms`` maps monomial -> nonzero Fraction."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Mapping | Iterable = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for m, c in items:
            m = tuple(m)
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        if nvars is None:
            if not clean:
                raise ValueError("nvars is required for the zero polynomial")
            nvars = len(next(iter(clean)))
        for m in clean:
            if len(m) != nvars or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for {nvars} variables")
        self.terms = clean
        self.nvars = nvars

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Poly":
        p = object.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "Poly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Poly":
        return cls({tuple(exps): c}, len(exps))

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        return Poly.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw({m: v * c for m, v in self.terms.items()}, self.nvars)

    def mul_term(self, mono: Monomial, c=1) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw(
            {mono_mul(m, mono): v * c for m, v in self.terms.items()}, self.nvars
        )

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly._raw(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=0)

    def subs(self, i: int, value) -> "Poly":
        """Substitute the scalar ``value`` for variable ``i`` (exponent set to 0)."""
        value = Fraction(value)
        out: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e and not value:
                continue
            nm = m[:i] + (0,) + m[i + 1:]
            v = out.get(nm, 0) + c * value ** e
            if v:
                out[nm] = v
            else:
                out.pop(nm, None)
        return Poly._raw(out, self.nvars)

    def scale_variables(self, factors: Sequence) -> "Poly":
        """Substitute ``x_i -> factors[i] * x_i`` for every variable."""
        factors = [Fraction(f) for f in factors]
        out = {}
        for m, c in self.terms.items():
            for f, e in zip(factors, m):
                if e:
                    c = c * f ** e
            if c:
                out[m] = c
        return Poly._raw(out, self.nvars)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def primitive(self, order: "MonomialOrder | None" = None) -> "Poly":
        """Scale to coprime integer coefficients with a positive leading coefficient.

        Without an order the sign is left as is.
        """
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, c.numerator * (den // c.denominator))
        s = Fraction(den, num)
        if order is not None and leading_term(self, order)[1] < 0:
            s = -s
        return self.scale(s)

    def to_str(self, names: Sequence[str], order: "MonomialOrder | None" = None,
               mul: str = "*") -> str:
        """Render with the given variable names, terms in descending ``order``."""
        if not self.terms:
            return "0"
        monos = list(self.terms)
        if order is not None:
            monos.sort(key=order.key, reverse=True)
        parts = []
        for m in monos:
            parts.append(format_term(self.terms[m], m, names, mul=mul))
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    def __repr__(self):
        names = ["e"] + [f"x{i}" for i in range(1, self.nvars)]
        return f"Poly({self.to_str(names)})"


def format_monomial(m: Monomial, names: Sequence[str], mul: str = "*") -> str:
    factors = []
    for name, e in zip(names, m):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return mul.join(factors)


def format_term(c: Fraction, m: Monomial, names: Sequence[str], mul: str = "*") -> str:
    mono = format_monomial(m, names, mul)
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}{mul}{mono}"


# --- monomial orders ------------------------------------------------------------

class MonomialOrder:
    """A monomial order given by a sort key: larger key means larger monomial."""

    def key(self, m: Monomial) -> tuple:
        raise NotImplementedError

    def less(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) < self.key(b)

    def max(self, monos: Iterable[Monomial]) -> Monomial:
        return max(monos, key=self.key)


class WeightedDegRevLex(MonomialOrder):
    """Weighted degree, then degrevlex on ``x_1..x_r``, then the ``eps`` exponent.

    ``weights`` are the weights of ``x_1..x_r``; the parameter at position 0
    has weight 0 and only breaks the remaining ties, so it sits below every
    ``x_i``.
    """

    def __init__(self, weights: Sequence[int]):
        self.weights = tuple(int(w) for w in weights)
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers")

    def weight(self, m: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, m[1:]))

    def key(self, m):
        xs = m[1:]
        return (self.weight(m), sum(xs), *(-e for e in reversed(xs)), m[0])

    def __eq__(self, other):
        return isinstance(other, WeightedDegRevLex) and other.weights == self.weights

    def __hash__(self):
        return hash(("wdrl", self.weights))

    def __repr__(self):
        return f"WeightedDegRevLex({self.weights})"


class Lex(MonomialOrder):
    """Lexicographic order; ``perm`` lists variable positions, greatest first."""

    def __init__(self, perm: Sequence[int]):
        self.perm = tuple(perm)
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"{perm} is not a permutation")

    def key(self, m):
        return tuple(m[p] for p in self.perm)

    def __eq__(self, other):
        return isinstance(other, Lex) and other.perm == self.perm

    def __hash__(self):
        return hash(("lex", self.perm))

    def __repr__(self):
        return f"Lex({self.perm})"


# --- division ---------------------------------------------------------------

def leading_term(p: Poly, order: MonomialOrder) -> tuple[Monomial, Fraction]:
    if not p.terms:
        raise ZeroPolynomial("the zero polynomial has no leading term")
    m = max(p.terms, key=order.key)
    return m, p.terms[m]


def leading_monomial(p: Poly, order: MonomialOrder) -> Monomial:
    return leading_term(p, order)[0]


def _to_mpq(c: Fraction):
    return mpq(c.numerator, c.denominator)


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def normal_form(p: Poly, gens: Sequence[Poly], order: MonomialOrder, *,
                with_cofactors: bool = False):
    """Fully reduce ``p`` by ``gens`` (multivariate division with remainder).

    Returns the remainder, or ``(remainder, cofactors)`` with
    ``p == sum(q * g) + remainder`` when ``with_cofactors`` is set.
    """
    nv = p.nvars
    heads = []
    for g in gens:
        if not g.terms:
            raise ZeroPolynomial("cannot divide by the zero polynomial")
        lm, lc = leading_term(g, order)
        tail = [(m, _to_mpq(c)) for m, c in g.terms.items() if m != lm]
        heads.append((lm, _to_mpq(lc), tail))
    cof = [dict() for _ in gens] if with_cofactors else None

    # coefficients are gmpy2 rationals inside the loop for speed
    work = {m: _to_mpq(c) for m, c in p.terms.items()}
    key = order.key
    heap = [(_neg(key(m)), m) for m in work]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        for idx, (lm, lc, tail) in enumerate(heads):
            if divides(lm, m):
                q = mono_div(m, lm)
                f = c / lc
                for gm, gc in tail:
                    nm = tuple(map(add, gm, q))
                    old = work.get(nm)
                    if old is None:
                        work[nm] = -f * gc
                        heapq.heappush(heap, (_neg(key(nm)), nm))
                    else:
                        v = old - f * gc
                        if v:
                            work[nm] = v
                        else:
                            del work[nm]
                if cof is not None:
                    d = cof[idx]
                    v = d.get(q, 0) + f
                    if v:
                        d[q] = v
                    else:
                        d.pop(q, None)
                break
        else:
            rem[m] = _to_fraction(c)
    r = Poly._raw(rem, nv)
    if with_cofactors:
        return r, [Poly._raw({k: _to_fraction(v) for k, v in d.items()}, nv)
                   for d in cof]
    return r


def _neg(key: tuple) -> tuple:
    return tuple(-k for k in key)


def s_polynomial(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    """``lc(g) * (L/lm(f)) * f - lc(f) * (L/lm(g)) * g`` with ``L = lcm(lm f, lm g)``.

    Cross-multiplying by the leading coefficients keeps integer inputs integral.
    """
    mf, cf = leading_term(f, order)
    mg, cg = leading_term(g, order)
    L = mono_lcm(mf, mg)
    return f.mul_term(mono_div(L, mf), cg) - g.mul_term(mono_div(L, mg), cf)


# --- Buchberger -------------------------------------------------------------------

def _gm_update(G: list, pairs: set, h: int, lms: list) -> tuple[list, set]:
    """Gebauer-Moeller installation of the new basis element ``h``."""
    lh = lms[h]
    C = list(G)
    D = []
    while C:
        g = C.pop(0)
        L = mono_lcm(lms[g], lh)
        if coprime(lms[g], lh) or not any(
            divides(mono_lcm(lms[o], lh), L) for o in C + D
        ):
            D.append(g)
    E = {(g, h) for g in D if not coprime(lms[g], lh)}
    kept = set()
    for a, b in pairs:
        L = mono_lcm(lms[a], lms[b])
        if (not divides(lh, L) or mono_lcm(lms[a], lh) == L
                or mono_lcm(lms[b], lh) == L):
            kept.add((a, b))
    newG = [g for g in G if not divides(lh, lms[g])] + [h]
    return newG, kept | E


def buchberger(gens: Sequence[Poly], order: MonomialOrder) -> list[Poly]:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Elements are scaled to coprime integer coefficients with positive leading
    coefficient and returned sorted by increasing leading monomial.
    """
    polys: list = []
    lms: list = []
    G: list = []
    pairs: set = set()

    def install(p):
        nonlocal G, pairs
        p = p.scale(1 / leading_term(p, order)[1])
        polys.append(p)
        lms.append(leading_monomial(p, order))
        G, pairs = _gm_update(G, pairs, len(polys) - 1, lms)

    for g in gens:
        if g.terms:
            r = normal_form(g, [polys[i] for i in G], order) if G else g
            if r.terms:
                install(r)
    while pairs:
        a, b = min(
            pairs,
            key=lambda ab: (order.key(mono_lcm(lms[ab[0]], lms[ab[1]])), ab),
        )
        pairs.discard((a, b))
        s = s_polynomial(polys[a], polys[b], order)
        r = normal_form(s, [polys[i] for i in G], order)
        if r.terms:
            install(r)
    return reduce_basis([polys[i] for i in G], order)


def reduce_basis(gb: Sequence[Poly], order: MonomialOrder) -> list[Poly]:
    """Minimalize and interreduce a Groebner basis."""
    gb = [g for g in gb if g.terms]
    lm = [leading_monomial(g, order) for g in gb]
    keep = []
    for i, g in enumerate(gb):
        dominated = False
        for j in range(len(gb)):
            if j == i:
                continue
            if divides(lm[j], lm[i]) and (lm[j] != lm[i] or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        head = leading_term(g, order)
        tail = Poly._raw({m: c for m, c in g.terms.items() if m != head[0]}, g.nvars)
        tail = normal_form(tail, others, order) if others else tail
        out.append((tail + Poly.monomial(head[0], head[1])).primitive(order))
    out.sort(key=lambda p: order.key(leading_monomial(p, order)))
    return out


def is_groebner(gens: Sequence[Poly], order: MonomialOrder) -> bool:
    """Buchberger's criterion: every S-pair reduces to zero."""
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if normal_form(s_polynomial(gens[i], gens[j], order), gens, order).terms:
                return False
    return True


def standard_monomials(gb: Sequence[Poly], order: MonomialOrder,
                       variables: Sequence[int] | None = None) -> list | None:
    """Monomials in ``variables`` not divisible by any leading monomial of ``gb``.

    ``variables`` defaults to positions ``1..nvars-1`` (every ``x_i``, not the
    parameter).  Returns ``None`` when there are infinitely many.
    """
    if not gb:
        return None
    nv = gb[0].nvars
    if variables is None:
        variables = range(1, nv)
    variables = list(variables)
    lms = [leading_monomial(g, order) for g in gb]
    for v in variables:
        if not any(m[v] > 0 and all(e == 0 for k, e in enumerate(m) if k != v)
                   for m in lms):
            return None
    start = (0,) * nv
    if any(divides(m, start) for m in lms):
        return []
    seen = {start}
    stack = [start]
    while stack:
        m = stack.pop()
        for v in variables:
            n = m[:v] + (m[v] + 1,) + m[v + 1:]
            if n not in seen and not any(divides(l, n) for l in lms):
                seen.add(n)
                stack.append(n)
    return sorted(seen, key=order.key)


def fglm(gb: Sequence[Poly], order: MonomialOrder, target: MonomialOrder,
         variables: Sequence[int] | None = None) -> list[Poly]:
    """Convert a zero-dimensional reduced Groebner basis to another order.

    Walks monomials in increasing ``target`` order, writing each normal form
    (with respect to ``gb``) in the standard-monomial basis; the first linear
    dependency found for a monomial gives a new basis element.
    """
    std = standard_monomials(gb, order, variables)
    if std is None:
        raise ValueError("fglm needs a zero-dimensional ideal")
    nv = gb[0].nvars
    if variables is None:
        variables = range(1, nv)
    variables = list(variables)
    index = {m: k for k, m in enumerate(std)}
    size = len(std)

    # echelon rows: (pivot, vector, combination over the new staircase)
    echelon: list = []
    staircase: list = []
    nfs: dict = {}
    new_gb: list = []
    new_lms: list = []

    def vector(p: Poly) -> list:
        v = [Fraction(0)] * size
        for m, c in p.terms.items():
            v[index[m]] = c
        return v

    one = (0,) * nv
    candidates = {one: None}
    while candidates:
        m = min(candidates, key=target.key)
        parent = candidates.pop(m)
        if any(divides(l, m) for l in new_lms):
            continue
        if parent is None:
            nf = normal_form(Poly.monomial(m), gb, order)
        else:
            prev, var = parent
            nf = normal_form(nfs[prev] * Poly.var(var, nv), gb, order)
        vec = vector(nf)
        comb = {m: Fraction(1)}
        for piv, row, rcomb in echelon:
            c = vec[piv]
            if c:
                vec = [a - c * b for a, b in zip(vec, row)]
                for k, v in rcomb.items():
                    comb[k] = comb.get(k, 0) - c * v
        nz = next((k for k, a in enumerate(vec) if a), None)
        if nz is None:
            g = Poly({k: v for k, v in comb.items() if v}, nv)
            new_gb.append(g.primitive(target))
            new_lms.append(m)
            continue
        inv = 1 / vec[nz]
        vec = [a * inv for a in vec]
        comb = {k: v * inv for k, v in comb.items()}
        echelon.append((nz, vec, comb))
        staircase.append(m)
        nfs[m] = nf
        for v in variables:
            n = m[:v] + (m[v] + 1,) + m[v + 1:]
            if n not in candidates and n not in nfs:
                candidates[n] = (m, v)
    return reduce_basis(new_gb, target)
