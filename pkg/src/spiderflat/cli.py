"""Command line: ``spiderflat derive | verify | emit | report-weights``.

Exit status: 0 success, 1 verification failure, 2 usage or parse error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .descriptor import DescriptorError, FamilyDescriptor, describe, to_family
from .emit import DIALECTS, emit_script
from .poly import format_monomial
from .series import OrderCollapse
from .spider import (
    BasisDegenerate,
    NoFeasibleWeights,
    SpiderType,
    TiedLeadingWeight,
    build_family,
    margin_table,
)
from .verify import (
    DEFAULT_LAMBDAS,
    InfiniteDimensional,
    check_curvilinear_fiber,
    check_special_fiber,
    fiber_dimension,
    flatness_certificate,
    verify_relation,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class NoWeights(Exception):
    """Consecutive weights are infeasible for the requested type."""


def _int_list(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _rational_list(text: str) -> list:
    out = []
    for tok in text.replace(" ", ",").split(","):
        if not tok:
            continue
        try:
            out.append(Fraction(tok))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad rational {tok!r}; use p/q") from None
    return out


def _spider(args) -> SpiderType:
    legs = _int_list(args.legs)
    try:
        return SpiderType(tuple(legs))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _family_from_args(args):
    spider = _spider(args)
    a_values = _rational_list(args.a_values) if args.a_values else None
    weights = _int_list(args.weights) if args.weights else None
    if a_values is not None and (len(a_values) != spider.r or 0 in a_values
                                 or len(set(a_values)) != spider.r):
        raise UsageError("--a-values must be r distinct nonzero rationals")
    if weights is not None and (len(weights) != spider.r or min(weights) < 1):
        raise UsageError("--weights must be r positive integers")
    try:
        return build_family(spider, a_values, weights, general_search=args.general_weights)
    except NoFeasibleWeights as exc:
        if weights is not None:
            raise UsageError(str(exc)) from None
        raise NoWeights(f"{exc}; rerun with --general-weights") from None


def _load(path) -> FamilyDescriptor:
    try:
        return FamilyDescriptor.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except DescriptorError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _relations_report(family) -> str:
    names = family.spider.variable_names()
    lines = [f"spider {family.spider}, colength {family.spider.colength}"]
    lines.append(f"a-values {', '.join(str(a) for a in family.a_values)}")
    lines.append("relations:")
    for rel in family.relations:
        lines.append(f"  [{rel.kind}] {rel.polynomial.to_str(names, family.order)}")
    lines.append("family:")
    for k, f in enumerate(family.family, start=1):
        lines.append(f"  f{k} = {f.to_str(names, family.order)}")
    lines.append(margin_table(family))
    if family.constant_in_eps:
        lines.append("note: the family does not involve e (already curvilinear)")
    return "\n".join(lines)


def cmd_derive(args, out) -> int:
    family = _family_from_args(args)
    desc = describe(family)
    if args.out:
        desc.save(args.out)
        print(_relations_report(family), file=out)
        print(f"wrote {args.out}", file=out)
    else:
        out.write(desc.to_json())
        print(_relations_report(family), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    family = to_family(_load(args.family))
    lambdas = _rational_list(args.lambdas) if args.lambdas else list(DEFAULT_LAMBDAS)
    spider = family.spider
    n = spider.colength
    names = spider.variable_names()
    print(f"spider {spider}, colength {n}, weights {family.weights}", file=out)

    for k, rel in enumerate(family.relations, start=1):
        if not verify_relation(rel.polynomial, spider, family.a_values):
            print(f"FAIL relation check: f{k} at e=1 does not vanish in Q[t]/(t^{n})",
                  file=out)
            return EXIT_FAIL
    print(f"ok   relations: all {len(family.relations)} vanish in Q[t]/(t^{n})", file=out)

    if not check_special_fiber(family):
        print("FAIL special fibre: the e=0 ideal is not the spider ideal", file=out)
        return EXIT_FAIL
    print("ok   special fibre equals the spider ideal", file=out)

    for lam in lambdas:
        try:
            rep = fiber_dimension(family, lam)
        except InfiniteDimensional:
            print(f"FAIL fibre dimension at e={lam}: infinite", file=out)
            return EXIT_FAIL
        if rep.dimension != n:
            print(f"FAIL fibre dimension at e={lam}: {rep.dimension} != {n}", file=out)
            return EXIT_FAIL
        print(f"ok   fibre e={lam}: dimension {rep.dimension}", file=out)
        if lam != 0:
            cur = check_curvilinear_fiber(family, lam)
            if not cur.is_curvilinear:
                print(f"FAIL curvilinear fibre at e={lam}: lex basis {cur.gb_shape}"
                      f" {cur.note}".rstrip(), file=out)
                return EXIT_FAIL
            g = format_monomial(spider.x_power(spider.generator_variable, 1), names)
            print(f"ok   fibre e={lam}: lex basis {cur.gb_shape}, generated by {g}",
                  file=out)

    cert = flatness_certificate(family)
    if not cert.all_reduce_to_zero or cert.module_rank != n:
        print(f"FAIL flatness certificate: pairs {cert.nonzero_pairs} do not reduce, "
              f"rank {cert.module_rank}", file=out)
        return EXIT_FAIL
    print(f"ok   flatness: {cert.spair_count} S-pairs reduce to zero, "
          f"free of rank {cert.module_rank}", file=out)
    return EXIT_OK


def cmd_emit(args, out) -> int:
    family = to_family(_load(args.family))
    if args.dialect not in DIALECTS:
        raise UsageError(f"unknown dialect {args.dialect!r}")
    script = emit_script(family, args.dialect)
    if args.out:
        Path(args.out).write_text(script.body, encoding="utf-8")
    else:
        out.write(script.body)
    return EXIT_OK


def cmd_report_weights(args, out) -> int:
    if args.family:
        family = to_family(_load(args.family))
    elif args.legs:
        family = _family_from_args(args)
    else:
        raise UsageError("give a family file or --legs")
    print(margin_table(family), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spiderflat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def family_opts(sp, legs_required):
        sp.add_argument("--legs", required=legs_required, help="leg lengths, e.g. 7,7,7")
        sp.add_argument("--a-values", help="Moebius points, default 1,2,...,r")
        sp.add_argument("--weights", help="manual weight vector (validated)")
        sp.add_argument("--general-weights", action="store_true",
                        help="search all integer weight vectors, not only w, w+1, ...")

    d = sub.add_parser("derive", help="derive the family and write a descriptor")
    family_opts(d, True)
    d.add_argument("--out", help="descriptor path (default: stdout)")
    d.set_defaults(func=cmd_derive)

    v = sub.add_parser("verify", help="check a family descriptor")
    v.add_argument("family")
    v.add_argument("--lambdas", help="fibre values, e.g. 0,1,2,-1,1/2,1/3")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("emit", help="write an external verification script")
    e.add_argument("family")
    e.add_argument("--dialect", default="m2")
    e.add_argument("--out")
    e.set_defaults(func=cmd_emit)

    w = sub.add_parser("report-weights", help="print border/tail weight margins")
    w.add_argument("family", nargs="?")
    family_opts(w, False)
    w.set_defaults(func=cmd_report_weights)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"spiderflat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoWeights as exc:
        print(f"spiderflat: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (BasisDegenerate, OrderCollapse, TiedLeadingWeight, NoFeasibleWeights,
            InfiniteDimensional, ArithmeticError, AssertionError) as exc:
        print(f"spiderflat: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
