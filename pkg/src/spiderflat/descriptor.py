"""JSON family descriptors.

Coefficients are written as decimal integer strings and exponent vectors are
ordered ``(eps, x_1, ..., x_r)``.  Nothing run-dependent goes into the
payload, so deriving the same family twice gives byte-identical files.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .poly import Poly, WeightedDegRevLex
from .spider import Relation, ReesFamily, SpiderType, build_basis, monomial_weight

SCHEMA_VERSION = "1"
_INT = re.compile(r"^-?[0-9]+$")


class DescriptorError(ValueError):
    """The descriptor document is malformed."""


@dataclass
class FamilyDescriptor:
    legs: tuple
    weights: tuple
    generators: list  # per generator: list of (coefficient string, exponent list)
    a_values: list = field(default_factory=list)
    basis_order: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_json(self) -> str:
        doc = {
            "schema_version": self.schema_version,
            "legs": list(self.legs),
            "weights": list(self.weights),
            "variables": SpiderType(self.legs).variable_names(),
            "generators": [[[c, list(e)] for c, e in g] for g in self.generators],
            "derivation": {
                "a_values": list(self.a_values),
                "basis_order": [list(m) for m in self.basis_order],
            },
            "metadata": self.metadata,
        }
        return json.dumps(doc, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "FamilyDescriptor":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"not valid JSON: {exc}") from None
        if not isinstance(doc, dict):
            raise DescriptorError("descriptor must be a JSON object")
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise DescriptorError(f"unsupported schema_version {doc.get('schema_version')!r}")
        try:
            legs = tuple(_int(v) for v in doc["legs"])
            weights = tuple(_int(v) for v in doc["weights"])
            nv = len(legs) + 1
            gens = []
            for g in doc["generators"]:
                terms = []
                for c, e in g:
                    if not isinstance(c, str) or not _INT.match(c):
                        raise DescriptorError(f"coefficient {c!r} is not an integer string")
                    e = [_int(v) for v in e]
                    if len(e) != nv or any(v < 0 for v in e):
                        raise DescriptorError(f"bad exponent vector {e}")
                    terms.append((c, e))
                gens.append(terms)
            deriv = doc.get("derivation", {})
            a_values = [str(Fraction(a)) for a in deriv.get("a_values", [])]
            basis = [[_int(v) for v in m] for m in deriv.get("basis_order", [])]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DescriptorError):
                raise
            raise DescriptorError(f"malformed descriptor: {exc!r}") from None
        if len(weights) != len(legs):
            raise DescriptorError("weights and legs differ in length")
        return cls(legs, weights, gens, a_values, basis, doc.get("metadata", {}))

    def save(self, path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "FamilyDescriptor":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def _int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise DescriptorError(f"expected an integer, got {v!r}")
    return v


def describe(family: ReesFamily, metadata: dict | None = None) -> FamilyDescriptor:
    order = family.order
    gens = []
    for f in family.family:
        if not f.is_integral():
            raise ValueError("family generators must have integer coefficients")
        monos = sorted(f.terms, key=order.key, reverse=True)
        gens.append([(str(f.terms[m].numerator), list(m)) for m in monos])
    basis = build_basis(family.spider, family.a_values)
    return FamilyDescriptor(
        legs=family.spider.legs,
        weights=family.weights,
        generators=gens,
        a_values=[str(a) for a in family.a_values],
        basis_order=[list(m) for m in basis.monomials],
        metadata=dict(metadata or {}),
    )


def to_family(desc: FamilyDescriptor) -> ReesFamily:
    """Rebuild a family from a descriptor.

    Relations are recovered by setting the parameter to 1; the border of each
    generator is its heaviest parameter-free monomial.
    """
    spider = SpiderType(desc.legs)
    nv = spider.nvars
    fam = []
    rels = []
    borders = []
    for g in desc.generators:
        p = Poly({tuple(e): int(c) for c, e in g}, nv)
        if p.is_zero():
            raise DescriptorError("zero generator")
        fam.append(p)
        rel = p.subs(0, 1)
        free = [m for m in p.terms if m[0] == 0] or list(p.terms)
        border = max(free, key=lambda m: (monomial_weight(m, desc.weights), m))
        border = (0,) + border[1:]
        xs = [i for i in range(1, nv) if border[i]]
        if len(xs) > 1:
            kind, idx = "mixed", tuple(xs)
        elif len(rel) == 1:
            kind, idx = "vanishing_power", tuple(xs)
        else:
            kind, idx = "pure_power", tuple(xs)
        rels.append(Relation(rel, border, kind, idx))
        borders.append((border, monomial_weight(border, desc.weights)))
    WeightedDegRevLex(desc.weights)  # validates positivity
    a_values = tuple(Fraction(a) for a in desc.a_values) or None
    if a_values is None:
        a_values = tuple(Fraction(a) for a in range(1, spider.r + 1))
    return ReesFamily(spider, tuple(rels), tuple(desc.weights), tuple(fam),
                      tuple(borders), a_values)
