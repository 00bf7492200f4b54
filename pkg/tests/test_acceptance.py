"""Acceptance criteria, one test per criterion.

A pass/fail line per criterion is printed in the terminal summary.  All
comparisons are exact.
"""

import itertools
import random
import sys
from fractions import Fraction

import pytest

from _polytext import parse
from spiderflat import (
    BasisDegenerate,
    NoFeasibleWeights,
    DEFAULT_LAMBDAS,
    SpiderType,
    build_basis,
    build_family,
    check_curvilinear_fiber,
    check_special_fiber,
    derive_relations,
    emit_script,
    fiber_dimension,
    flatness_certificate,
    macaulay_corank,
    mobius_generator,
    rank,
    select_weights,
    verify_relation,
)
from spiderflat.poly import Poly, leading_monomial, standard_monomials
from spiderflat.spider import margins, weights_dominate
from spiderflat.verify import curvilinear_order

GX = """32*x^8 - 1728*x^7 - 2864*x^6 - 11088*x^5 - 14988*x^4 - 28080*x^3
 - 23484*x^2 + 23484*y - 2048*y^7 - 9728*y^6 - 18944*y^5 - 25888*y^4
 - 20384*y^3 - 22284*y^2 + 2298*z + 16*z^7 - 8*z^6 + 16*z^5 - 46*z^4
 + 156*z^3 - 581*z^2"""
GY = """2048*y^8 - 112608*x^7 - 196272*x^6 - 723264*x^5 - 1000056*x^4
 - 1835964*x^3 - 1556406*x^2 + 1556406*y - 116736*y^7 - 582656*y^6
 - 1144064*y^5 - 1576192*y^4 - 1226864*y^3 - 1395024*y^2 + 139779*z
 + 1008*z^7 - 496*z^6 + 984*z^5 - 2816*z^4 + 9522*z^3 - 35392*z^2"""

F1 = "x*y + e*x^2 - e^15*y"
F2 = "2*x*z - 2*e^2*x^2 + 2*e^16*y - e^15*z"
F3 = "2*y*z - 2*e^3*x^2 + 4*e*y^2 + 2*e^17*y - e^16*z"
F4 = """32*x^8 + 16*e*z^7 - 2048*e^8*y^7 - 1728*e^15*x^7 - 8*e^18*z^6
 - 9728*e^24*y^6 - 2864*e^30*x^6 + 16*e^35*z^5 - 18944*e^40*y^5
 - 11088*e^45*x^5 - 46*e^52*z^4 - 25888*e^56*y^4 - 14988*e^60*x^4
 + 156*e^69*z^3 - 20384*e^72*y^3 - 28080*e^75*x^3 - 581*e^86*z^2
 - 22284*e^88*y^2 - 23484*e^90*x^2 + 2298*e^103*z + 23484*e^104*y"""
F5 = """2048*y^8 + 1008*e^9*z^7 - 116736*e^16*y^7 - 112608*e^23*x^7
 - 496*e^26*z^6 - 582656*e^32*y^6 - 196272*e^38*x^6 + 984*e^43*z^5
 - 1144064*e^48*y^5 - 723264*e^53*x^5 - 2816*e^60*z^4 - 1576192*e^64*y^4
 - 1000056*e^68*x^4 + 9522*e^77*z^3 - 1226864*e^80*y^3 - 1835964*e^83*x^3
 - 35392*e^94*z^2 - 1395024*e^96*y^2 - 1556406*e^98*x^2
 + 139779*e^111*z + 1556406*e^112*y"""
F6 = "z^8"

ASSERTION_BLOCK = """
R = QQ[t]/ideal(t^22);
s1 = sum(22, i->t^i);  s2 = sum(22, i->(2*t)^i);
s3 = sum(22, i->(3*t)^i);
x = t*s1;  y = t^2*s1*s2;  z = 2*t^3*s1*s2*s3;
assert(x*y == y - x^2);
assert(2*x*z == z - 2*y + 2*x^2);
assert(2*y*z == z - 2*y + 2*x^2 - 4*y^2);
gx = 32*x^8-1728*x^7-2864*x^6-11088*x^5-14988*x^4
  -28080*x^3-23484*x^2+23484*y-2048*y^7-9728*y^6
  -18944*y^5-25888*y^4-20384*y^3-22284*y^2+2298*z
  +16*z^7-8*z^6+16*z^5-46*z^4+156*z^3-581*z^2;
assert(gx == 0);
gy = 2048*y^8-112608*x^7-196272*x^6-723264*x^5
  -1000056*x^4-1835964*x^3-1556406*x^2+1556406*y
  -116736*y^7-582656*y^6-1144064*y^5-1576192*y^4
  -1226864*y^3-1395024*y^2+139779*z+1008*z^7
  -496*z^6+984*z^5-2816*z^4+9522*z^3-35392*z^2;
assert(gy == 0);
"""

S777 = SpiderType((7, 7, 7))


@pytest.fixture(scope="module")
def family777():
    return build_family(S777)


def _statements(text):
    """Split a script into ';'-terminated statements with whitespace removed."""
    code = [ln for ln in text.splitlines() if not ln.lstrip().startswith("--")]
    flat = "".join("".join(code).split())
    return [s + ";" for s in flat.split(";") if s]


@pytest.mark.criterion(1, "golden relations for (7,7,7)")
def test_criterion_1_golden_relations():
    rels = derive_relations(S777)
    expected = [parse("x*y + x^2 - y"),
                parse("2*x*z - 2*x^2 + 2*y - z"),
                parse("2*y*z - 2*x^2 + 2*y + 4*y^2 - z"),
                parse(GX), parse(GY), parse("z^8")]
    assert [r.polynomial for r in rels] == expected
    gx, gy = rels[3].polynomial, rels[4].polynomial
    assert gx.coefficient((0, 0, 0, 2)) == -581
    assert gy.coefficient((0, 0, 0, 2)) == -35392
    assert gy.coefficient((0, 0, 0, 1)) == 139779
    assert rels[5].vanishing


@pytest.mark.criterion(2, "weights (15,16,17) with binding margin 120 > 119")
def test_criterion_2_weights():
    rels = derive_relations(S777)
    w = select_weights(rels, S777)
    assert w == (15, 16, 17)
    gx = next(m for m in margins(rels, w) if m.relation.border == (0, 8, 0, 0))
    assert (gx.border_weight, gx.heaviest_tail, gx.tail_weight) == (120, (0, 0, 0, 7), 119)
    assert min(m.margin for m in margins(rels, w) if m.margin is not None) == 1
    assert not weights_dominate(rels, (14, 15, 16))


@pytest.mark.criterion(3, "homogenized generators f1..f6 term for term")
def test_criterion_3_family(family777):
    expected = [parse(s) for s in (F1, F2, F3, F4, F5, F6)]
    assert list(family777.family) == expected
    f4, f5 = family777.family[3], family777.family[4]
    assert f4.coefficient((1, 0, 0, 7)) == 16
    assert f4.coefficient((8, 0, 7, 0)) == -2048
    assert f4.coefficient((104, 0, 1, 0)) == 23484
    assert f5.coefficient((9, 0, 0, 7)) == 1008
    assert f5.coefficient((112, 0, 1, 0)) == 1556406


def _lex_oracle(n):
    """Coefficients of y = x^2/(1-x) and z = 2x^3/((1-x)(1-2x)) below x^n."""
    geo1 = [Fraction(1)] * n
    geo2 = [Fraction(2) ** k for k in range(n)]
    prod = [sum(geo1[i] * geo2[k - i] for i in range(k + 1)) for k in range(n)]
    alpha = {k: geo1[k - 2] for k in range(2, n)}
    beta = {k: 2 * prod[k - 3] for k in range(3, n)}
    return alpha, beta


@pytest.mark.criterion(4, "fibres: dimension 22, special fibre, lex shape at 1")
def test_criterion_4_fibres(family777):
    for lam in (0, 1, 2, -1, Fraction(1, 2), Fraction(1, 3)):
        assert fiber_dimension(family777, lam).dimension == 22
    special = fiber_dimension(family777, 0).gb
    monos = {(0, 1, 1, 0), (0, 1, 0, 1), (0, 0, 1, 1),
             (0, 8, 0, 0), (0, 0, 8, 0), (0, 0, 0, 8)}
    assert {g for g in special} == {Poly.monomial(m) for m in monos}
    assert check_special_fiber(family777)

    rep = check_curvilinear_fiber(family777, 1)
    assert rep.is_curvilinear
    alpha, beta = _lex_oracle(22)
    order = curvilinear_order(S777)
    by_lead = {leading_monomial(g, order): g for g in rep.gb}
    assert set(by_lead) == {(0, 22, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)}
    assert by_lead[(0, 22, 0, 0)] == Poly.monomial((0, 22, 0, 0))
    y_rel = Poly.var(2, 4) - Poly({(0, k, 0, 0): c for k, c in alpha.items()}, 4)
    z_rel = Poly.var(3, 4) - Poly({(0, k, 0, 0): c for k, c in beta.items()}, 4)
    assert by_lead[(0, 0, 1, 0)] == y_rel
    assert by_lead[(0, 0, 0, 1)] == z_rel


@pytest.mark.criterion(5, "flatness certificate: 15 S-pairs reduce to zero, rank 22")
def test_criterion_5_flatness(family777):
    cert = flatness_certificate(family777)
    assert cert.spair_count == 15
    assert cert.all_reduce_to_zero and cert.nonzero_pairs == []
    assert cert.module_rank == 22
    assert family777.weights == (15, 16, 17)


@pytest.mark.criterion(6, "warm-up (1,1): family (x^2 - e*y, x*y, y^2), weights (2,3)")
def test_criterion_6_warmup():
    sp = SpiderType((1, 1))
    rels = derive_relations(sp)
    # brute-force scan over consecutive weights, independent of select_weights
    scan = next((w, w + 1) for w in itertools.count(1) if weights_dominate(rels, (w, w + 1)))
    fam = build_family(sp)
    assert fam.weights == scan == (2, 3)
    assert set(fam.family) == {parse(s, ("e", "x", "y")) for s in ("x^2 - e*y", "x*y", "y^2")}
    for lam in (0, 1, 2):
        assert fiber_dimension(fam, lam).dimension == 3


ALL_TYPES = [legs for r in (1, 2, 3) for legs in itertools.product((1, 2, 3), repeat=r)]


@pytest.mark.criterion(7, "property suite over all types with r <= 3, legs <= 3")
def test_criterion_7_property_suite():
    failures = []
    for legs in ALL_TYPES:
        sp = SpiderType(legs)
        n = sp.colength
        try:
            basis = build_basis(sp)
        except BasisDegenerate:
            failures.append((legs, "basis rank"))
            continue
        if rank(basis.matrix) != n:
            failures.append((legs, "basis rank"))
        rels = derive_relations(sp)
        if not all(verify_relation(r.polynomial, sp) for r in rels):
            failures.append((legs, "relation not zero"))
        try:
            fam = build_family(sp)
        except NoFeasibleWeights as exc:
            failures.append((legs, f"select_weights: {exc}"))
            # keep checking the remaining properties with searched weights
            fam = build_family(sp, general_search=True)
        if not check_special_fiber(fam):
            failures.append((legs, "special fibre"))
        for lam in (1, 2, -1):
            if fiber_dimension(fam, lam).dimension != n:
                failures.append((legs, f"dimension at {lam}"))
        cert = flatness_certificate(fam)
        if not (cert.passed and cert.module_rank == n):
            failures.append((legs, "flatness"))
        if n <= 8:
            gb = fiber_dimension(fam, 1).gb
            std = standard_monomials(gb, fam.order)
            corank = macaulay_corank([r.polynomial for r in rels], sp, n)
            if corank != len(std):
                failures.append((legs, "Macaulay corank"))
    assert failures == []


@pytest.mark.criterion(8, "Moebius identity for 100 random pairs in Q[t]/(t^30)")
def test_criterion_8_mobius():
    rng = random.Random(20240613)
    for _ in range(100):
        a, b = (Fraction(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(2))
        ua, ub = mobius_generator(a, 30), mobius_generator(b, 30)
        assert ub - ua == ua * ub * (b - a)


@pytest.mark.criterion(9, "emitted Macaulay2 script contains the reference assertion block")
def test_criterion_9_emitter(family777):
    body = emit_script(family777, "m2").body
    emitted = _statements(body)
    for stmt in _statements(ASSERTION_BLOCK):
        assert stmt in emitted, stmt
    assert "assert(gy==0);" in emitted


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
