"""Presented algebras k[x_1..x_n]/(relations) and maps between them.

A PresentedAlgebra is an ambient polynomial ring plus a relation list;
elements are ambient polynomials and normal_form against the cached
reduced Groebner basis of the relations gives canonical representatives.
Rational points are variable assignments satisfying every relation.
"""

from __future__ import annotations

from .groebner import ideal_groebner, poly_normal_form
from .orders import MonomialOrder
from .poly import ParseError, Polynomial, PolyRing


class AlgebraError(ValueError):
    pass


class PointError(AlgebraError):
    pass


class PresentedAlgebra:
    def __init__(self, ring: PolyRing, relations=()):
        self.ring = ring
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = ring.poly(r)
            if r.ring != ring:
                raise AlgebraError("relation from a different ambient ring")
            if not r.is_zero():
                rels.append(r)
        self.relations = tuple(rels)
        self._gb: list[Polynomial] | None = None

    # -- presentation ----------------------------------------------------

    @property
    def field(self):
        return self.ring.field

    @property
    def variables(self):
        return self.ring.variables

    def groebner(self) -> list[Polynomial]:
        """Reduced Groebner basis of the defining ideal (cached)."""
        if self._gb is None:
            self._gb = ideal_groebner(self.relations, self.ring)
        return self._gb

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise AlgebraError("element from a different ambient ring")
        return poly_normal_form(p, self.groebner(), self.ring)

    def is_trivial(self) -> bool:
        """True when 1 lies in the defining ideal (the zero ring)."""
        gb = self.groebner()
        return any(g.is_constant() and not g.is_zero() for g in gb)

    def is_polynomial_ring(self) -> bool:
        return not self.relations

    def is_ground_field(self) -> bool:
        return self.ring.nvars == 0

    def poly(self, source: str) -> Polynomial:
        return self.ring.poly(source)

    def with_order(self, order: MonomialOrder) -> "PresentedAlgebra":
        ring = self.ring.with_order(order)
        return PresentedAlgebra(ring, [r.rename_into(ring) for r in self.relations])

    def quotient(self, extra_relations) -> "PresentedAlgebra":
        extra = []
        for r in extra_relations:
            if isinstance(r, str):
                r = self.ring.poly(r)
            extra.append(r)
        return PresentedAlgebra(self.ring, list(self.relations) + extra)

    # -- points -----------------------------------------------------------

    def parse_point(self, assignments: dict) -> dict:
        """Validate {var: value} as a rational point on this algebra."""
        point = {}
        field = self.field
        for v in self.variables:
            if v not in assignments:
                raise PointError(f"point does not assign variable {v!r}")
            val = assignments[v]
            if isinstance(val, str):
                val = parse_scalar(val, field)
            elif isinstance(val, int):
                val = field.from_int(val)
            point[v] = val
        for rel in self.relations:
            if not field.is_zero(rel.evaluate(point)):
                raise PointError("not a rational point")
        return point

    def is_rational_point(self, assignments: dict) -> bool:
        try:
            self.parse_point(assignments)
        except PointError:
            return False
        return True

    # -- identity -----------------------------------------------------------

    def describe(self) -> str:
        if not self.relations:
            if self.is_ground_field():
                return str(self.field)
            return f"{self.field}[{','.join(self.variables)}]"
        rels = ", ".join(str(r) for r in self.relations)
        return f"{self.field}[{','.join(self.variables)}]/({rels})"

    def to_json(self) -> dict:
        return {
            "field": {"kind": self.field.kind, "characteristic": self.field.characteristic},
            "variables": list(self.variables),
            "relations": [str(r) for r in self.relations],
        }

    def __eq__(self, other):
        return (
            isinstance(other, PresentedAlgebra)
            and other.ring == self.ring
            and other.relations == self.relations
        )

    def __hash__(self):
        return hash((self.ring, self.relations))

    def __repr__(self):
        return f"PresentedAlgebra({self.describe()})"


class AlgebraMap:
    """Map of presented algebras, one image per source variable.

    Images live in the target's ambient ring; well-definedness (relations
    map into the target ideal) is checked eagerly.
    """

    def __init__(self, source: PresentedAlgebra, target: PresentedAlgebra,
                 images: dict[str, Polynomial] | None = None, check: bool = True):
        self.source = source
        self.target = target
        imgs = {}
        images = images or {}
        for v in source.variables:
            if v in images:
                img = images[v]
                if isinstance(img, str):
                    img = target.poly(img)
                imgs[v] = target.normal_form(img)
            else:
                # omitted images default to the same-named target variable
                if v not in target.ring._var_index:
                    raise AlgebraError(
                        f"no image given for {v!r} and target has no such variable"
                    )
                imgs[v] = target.ring.var(v)
        self.images = imgs
        if check:
            bad = self.failing_relation()
            if bad is not None:
                raise AlgebraError(f"map does not kill source relation {bad}")

    def failing_relation(self):
        for rel in self.source.relations:
            if not self.apply(rel).is_zero():
                return rel
        return None

    def apply(self, p: Polynomial) -> Polynomial:
        """Image of a source element, normalized in the target."""
        if p.ring != self.source.ring:
            raise AlgebraError("element from a different ambient ring")
        img = p.substitute(self.target.ring, self.images)
        return self.target.normal_form(img)

    def is_identity_on_common(self) -> bool:
        return all(
            self.images[v] == self.target.ring.var(v)
            for v in self.source.variables
            if v in self.target.ring._var_index
        )

    def is_canonical_surjection(self) -> bool:
        """Same ambient variables, identity images: R -> R/I shape."""
        return (
            set(self.source.variables) == set(self.target.variables)
            and all(
                self.images[v] == self.target.ring.var(v) for v in self.source.variables
            )
        )

    def pullback_point(self, point: dict) -> dict:
        """Point on the source under the induced map of points."""
        vals = {v: self.images[v].evaluate(point) for v in self.source.variables}
        return self.source.parse_point(vals)

    def describe(self) -> str:
        imgs = ", ".join(f"{v} -> {self.images[v]}" for v in self.source.variables)
        return f"{self.source.describe()} --[{imgs}]--> {self.target.describe()}"

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "images": {v: str(self.images[v]) for v in self.source.variables},
        }

    def __repr__(self):
        return f"AlgebraMap({self.describe()})"


def compose(second: AlgebraMap, first: AlgebraMap) -> AlgebraMap:
    """second after first."""
    if first.target != second.source:
        raise AlgebraError("maps do not compose")
    images = {v: second.apply(first.images[v]) for v in first.source.variables}
    return AlgebraMap(first.source, second.target, images, check=False)


def groebner_basis(generators, algebra: PresentedAlgebra) -> list[Polynomial]:
    """Reduced Groebner basis of (generators) + algebra's relations."""
    gens = []
    for g in generators:
        if isinstance(g, str):
            g = algebra.poly(g)
        gens.append(g)
    return ideal_groebner(list(gens) + list(algebra.relations), algebra.ring)


def normal_form(p, generators, algebra: PresentedAlgebra) -> Polynomial:
    """Canonical representative of p modulo (generators) + relations."""
    if isinstance(p, str):
        p = algebra.poly(p)
    return poly_normal_form(p, groebner_basis(generators, algebra), algebra.ring)


def point_to_json(point: dict, algebra: PresentedAlgebra) -> dict:
    return {v: str(point[v]) for v in algebra.variables}


def parse_scalar(text: str, field):
    """Parse 'a' or 'a/b' as a field element."""
    text = text.strip()
    neg = text.startswith("-")
    if neg:
        text = text[1:].strip()
    if "/" in text:
        num, den = text.split("/", 1)
        val = field.fraction(int(num), int(den))
    else:
        if not text.lstrip("+").isdigit():
            raise ParseError(f"bad scalar {text!r}")
        val = field.from_int(int(text))
    return field.neg(val) if neg else val
