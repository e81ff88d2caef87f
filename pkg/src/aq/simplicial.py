"""Simplicial polynomial algebras that are free on variables level by level.

An extension stores, for every level n up to a cap, the variables adjoined
over a constant base algebra together with the face and degeneracy images
of those variables. All simplicial identities are checked exactly on
generators. Constructions provided:

- bar_construction / hypersurface_resolution: one new variable chain
  resolving base/(element),
- kill_cycle: attach cells along monotone surjections to kill a strict
  cycle in a chosen degree,
- tensor_resolutions: levelwise tensor product over the shared base.

A finite-rank simplicial vector space can be extracted by evaluating base
variables at a rational point and truncating to a monomial degree; its
Moore, unnormalized, and normalized homologies are computed exactly and
must agree, which is the main structural self-check.
"""

from __future__ import annotations

import itertools

from . import linalg
from .poly import Polynomial, PolyRing
from .rings import AlgebraError, AlgebraMap, PresentedAlgebra
from .modules import FPModule, koszul_complex, syzygies


class SimplicialError(AlgebraError):
    pass


# -- the ordinal category ----------------------------------------------------


class OrdinalMap:
    """Monotone map [m] -> [n], stored as the value tuple on 0..m."""

    __slots__ = ("src", "dst", "values")

    def __init__(self, src: int, dst: int, values):
        values = tuple(values)
        if len(values) != src + 1:
            raise SimplicialError("value list does not match the source ordinal")
        for v in values:
            if not (0 <= v <= dst):
                raise SimplicialError("value outside the target ordinal")
        if any(values[i] > values[i + 1] for i in range(src)):
            raise SimplicialError("map is not monotone")
        self.src = src
        self.dst = dst
        self.values = values

    def __call__(self, i: int) -> int:
        return self.values[i]

    def compose(self, other: "OrdinalMap") -> "OrdinalMap":
        """self after other."""
        if other.dst != self.src:
            raise SimplicialError("ordinal maps do not compose")
        return OrdinalMap(other.src, self.dst, tuple(self.values[v] for v in other.values))

    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.dst + 1

    def is_identity(self) -> bool:
        return self.src == self.dst and all(self.values[i] == i for i in range(self.src + 1))

    def missing_values(self):
        hit = set(self.values)
        return [v for v in range(self.dst + 1) if v not in hit]

    def __eq__(self, other):
        return (
            isinstance(other, OrdinalMap)
            and other.src == self.src
            and other.dst == self.dst
            and other.values == self.values
        )

    def __hash__(self):
        return hash((self.src, self.dst, self.values))

    def __repr__(self):
        return f"OrdinalMap([{self.src}]->[{self.dst}], {list(self.values)})"


def coface(n: int, i: int) -> OrdinalMap:
    """The injection [n-1] -> [n] that misses i."""
    if not (0 <= i <= n):
        raise SimplicialError("coface index out of range")
    return OrdinalMap(n - 1, n, tuple(v if v < i else v + 1 for v in range(n)))


def codegeneracy(n: int, j: int) -> OrdinalMap:
    """The surjection [n+1] -> [n] that hits j twice."""
    if not (0 <= j <= n):
        raise SimplicialError("codegeneracy index out of range")
    return OrdinalMap(n + 1, n, tuple(v if v <= j else v - 1 for v in range(n + 2)))


def monotone_surjections(n: int, d: int):
    """All monotone surjections [n] ->> [d], sorted by value tuple."""
    if d > n or d < 0:
        return []
    out = []
    for ascents in itertools.combinations(range(1, n + 1), d):
        vals = []
        cur = 0
        aset = set(ascents)
        for i in range(n + 1):
            if i in aset:
                cur += 1
            vals.append(cur)
        out.append(OrdinalMap(n, d, tuple(vals)))
    out.sort(key=lambda t: t.values)
    return out


def _drop_duplicate(u: OrdinalMap, j: int) -> OrdinalMap:
    vals = u.values[: j + 1] + u.values[j + 2:]
    return OrdinalMap(u.src - 1, u.dst, vals)


# -- levelwise free extensions ------------------------------------------------


class FreeExtensionLevelwise:
    """Simplicial algebra free over a constant base in each level."""

    def __init__(self, base: PresentedAlgebra, max_level: int,
                 levels: dict[int, tuple[str, ...]], kind: dict):
        self.base = base
        self.max_level = max_level
        self.levels = {n: tuple(levels.get(n, ())) for n in range(max_level + 1)}
        self.kind = dict(kind)
        for n, names in self.levels.items():
            for name in names:
                if name in base.ring._var_index:
                    raise SimplicialError(
                        f"level {n} variable {name!r} collides with the base")
        self._rings: dict[int, PolyRing] = {}
        self._algebras: dict[int, PresentedAlgebra] = {}
        self._faces: dict[tuple[int, int], dict[str, Polynomial]] = {}
        self._degeneracies: dict[tuple[int, int], dict[str, Polynomial]] = {}
        self._face_maps: dict[tuple[int, int], AlgebraMap] = {}
        self._deg_maps: dict[tuple[int, int], AlgebraMap] = {}

    # structure access

    def ring(self, n: int) -> PolyRing:
        if n not in self._rings:
            if not (0 <= n <= self.max_level):
                raise SimplicialError(f"level {n} outside 0..{self.max_level}")
            self._rings[n] = PolyRing(
                self.base.field,
                self.base.ring.variables + self.levels[n],
                self.base.ring.order.plain(),
            )
        return self._rings[n]

    def algebra(self, n: int) -> PresentedAlgebra:
        if n not in self._algebras:
            ring = self.ring(n)
            self._algebras[n] = PresentedAlgebra(
                ring, [r.rename_into(ring) for r in self.base.relations]
            )
        return self._algebras[n]

    def set_face(self, n: int, i: int, images: dict[str, Polynomial]):
        if set(images) != set(self.levels[n]):
            raise SimplicialError("face images must cover the level variables")
        self._faces[(n, i)] = images

    def set_degeneracy(self, n: int, j: int, images: dict[str, Polynomial]):
        if set(images) != set(self.levels[n]):
            raise SimplicialError("degeneracy images must cover the level variables")
        self._degeneracies[(n, j)] = images

    def face_map(self, n: int, i: int) -> AlgebraMap:
        key = (n, i)
        if key not in self._face_maps:
            if not (1 <= n <= self.max_level and 0 <= i <= n):
                raise SimplicialError(f"no face d_{i} at level {n}")
            images = self._faces.get(key)
            if images is None:
                raise SimplicialError(f"face d_{i} at level {n} is not defined")
            self._face_maps[key] = AlgebraMap(
                self.algebra(n), self.algebra(n - 1), dict(images)
            )
        return self._face_maps[key]

    def degeneracy_map(self, n: int, j: int) -> AlgebraMap:
        key = (n, j)
        if key not in self._deg_maps:
            if not (0 <= n < self.max_level and 0 <= j <= n):
                raise SimplicialError(f"no degeneracy s_{j} at level {n}")
            images = self._degeneracies.get(key)
            if images is None:
                raise SimplicialError(f"degeneracy s_{j} at level {n} is not defined")
            self._deg_maps[key] = AlgebraMap(
                self.algebra(n), self.algebra(n + 1), dict(images)
            )
        return self._deg_maps[key]

    def parse_level_element(self, n: int, source) -> Polynomial:
        if isinstance(source, Polynomial):
            if source.ring != self.ring(n):
                return source.rename_into(self.ring(n))
            return source
        return self.ring(n).poly(source)

    # validation

    def simplicial_identities_hold(self, up_to: int | None = None):
        """Exact generator-level check of all simplicial identities.

        Returns (ok, failure descriptions).
        """
        L = self.max_level if up_to is None else min(up_to, self.max_level)
        bad = []

        def check(n_target, lhs, rhs, tag):
            alg = self.algebra(n_target)
            if not alg.normal_form(lhs - rhs).is_zero():
                bad.append(tag)

        for n in range(2, L + 1):
            for j in range(n + 1):
                for i in range(j):
                    di, dj = self.face_map(n - 1, i), self.face_map(n, j)
                    dj1, di2 = self.face_map(n - 1, j - 1), self.face_map(n, i)
                    for x in self.levels[n]:
                        xv = self.ring(n).var(x)
                        check(n - 2, di.apply(dj.apply(xv)), dj1.apply(di2.apply(xv)),
                              f"d{i} d{j} level {n} on {x}")
        for n in range(0, L - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    si, sj = self.degeneracy_map(n + 1, i), self.degeneracy_map(n, j)
                    sj1, si2 = self.degeneracy_map(n + 1, j + 1), self.degeneracy_map(n, i)
                    for x in self.levels[n]:
                        xv = self.ring(n).var(x)
                        check(n + 2, si.apply(sj.apply(xv)), sj1.apply(si2.apply(xv)),
                              f"s{i} s{j} level {n} on {x}")
        for n in range(0, L):
            for j in range(n + 1):
                sj = self.degeneracy_map(n, j)
                for i in range(n + 2):
                    di = self.face_map(n + 1, i)
                    for x in self.levels[n]:
                        xv = self.ring(n).var(x)
                        got = di.apply(sj.apply(xv))
                        if i == j or i == j + 1:
                            want = xv
                        elif i < j:
                            want = self.degeneracy_map(n - 1, j - 1).apply(
                                self.face_map(n, i).apply(xv))
                        else:
                            want = self.degeneracy_map(n - 1, j).apply(
                                self.face_map(n, i - 1).apply(xv))
                        check(n, got, want, f"d{i} s{j} level {n} on {x}")
        return (not bad, bad)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "base": self.base.to_json(),
            "max_level": self.max_level,
            "levels": {str(n): list(self.levels[n]) for n in range(self.max_level + 1)},
            "faces": {
                f"{n},{i}": {x: str(p) for x, p in sorted(self._faces[(n, i)].items())}
                for (n, i) in sorted(self._faces)
            },
            "degeneracies": {
                f"{n},{j}": {x: str(p) for x, p in sorted(self._degeneracies[(n, j)].items())}
                for (n, j) in sorted(self._degeneracies)
            },
        }


def apply_surjection_contravariant(ext: FreeExtensionLevelwise, u: OrdinalMap,
                                   element: Polynomial) -> Polynomial:
    """Action of a monotone surjection u: [a] ->> [b] on a level-b element,
    written as the composite of the degeneracy operators that u factors into."""
    if u.is_identity():
        return element
    j = next(i for i in range(u.src) if u.values[i] == u.values[i + 1])
    lower = apply_surjection_contravariant(ext, _drop_duplicate(u, j), element)
    return ext.degeneracy_map(u.src - 1, j).apply(lower)


# -- constructions ------------------------------------------------------------


def constant_extension(base: PresentedAlgebra, max_level: int) -> FreeExtensionLevelwise:
    ext = FreeExtensionLevelwise(base, max_level, {}, {"construction": "constant"})
    for n in range(1, max_level + 1):
        for i in range(n + 1):
            ext.set_face(n, i, {})
    for n in range(0, max_level):
        for j in range(n + 1):
            ext.set_degeneracy(n, j, {})
    return ext


def _bar_like(base: PresentedAlgebra, element: Polynomial, max_level: int,
              kind: dict) -> FreeExtensionLevelwise:
    levels = {n: tuple(f"x{n}_{k}" for k in range(n)) for n in range(1, max_level + 1)}
    ext = FreeExtensionLevelwise(base, max_level, levels, kind)
    for n in range(1, max_level + 1):
        rng = ext.ring(n - 1)
        elem = element.rename_into(rng)
        for i in range(n + 1):
            images = {}
            for k in range(n):
                name = f"x{n}_{k}"
                if i == 0:
                    images[name] = elem if k == 0 else rng.var(f"x{n-1}_{k-1}")
                elif i < n:
                    images[name] = rng.var(f"x{n-1}_{k-1}" if i <= k else f"x{n-1}_{k}")
                else:
                    images[name] = rng.zero() if k == n - 1 else rng.var(f"x{n-1}_{k}")
            ext.set_face(n, i, images)
    for n in range(0, max_level):
        rng = ext.ring(n + 1)
        for j in range(n + 1):
            images = {}
            for k in range(n):
                name = f"x{n}_{k}"
                images[name] = rng.var(f"x{n+1}_{k+1}" if j <= k else f"x{n+1}_{k}")
            ext.set_degeneracy(n, j, images)
    return ext


def bar_construction(base: PresentedAlgebra, var_name: str,
                     max_level: int) -> FreeExtensionLevelwise:
    """Resolution of base/(v) obtained by freely contracting the variable v."""
    if var_name not in base.ring._var_index:
        raise SimplicialError(f"{var_name!r} is not a variable of the base")
    return _bar_like(base, base.ring.var(var_name), max_level,
                     {"construction": "bar", "element": var_name})


def hypersurface_resolution(base: PresentedAlgebra, element, max_level: int
                            ) -> FreeExtensionLevelwise:
    """Same chain of cells as the bar construction, contracting an element."""
    if isinstance(element, str):
        element = base.poly(element)
    element = base.normal_form(element)
    return _bar_like(base, element, max_level,
                     {"construction": "hypersurface", "element": str(element)})


def _cell_name(prefix: str, t: OrdinalMap) -> str:
    return prefix + "".join(str(v) for v in t.values)


def kill_cycle(ext: FreeExtensionLevelwise, cycle, degree: int,
               max_level: int | None = None) -> FreeExtensionLevelwise:
    """Attach cells in the given degree killing a strict cycle.

    The cycle must live at level degree-1 and all its faces must vanish.
    New cells are indexed by monotone surjections [n] ->> [degree]; the only
    nonzero face of the top cell is d_0, which maps it to the cycle.
    """
    d = degree
    if d < 1:
        raise SimplicialError("cells can only be attached in positive degrees")
    L = ext.max_level if max_level is None else max_level
    if L > ext.max_level:
        raise SimplicialError("cannot extend beyond the underlying level cap")
    z = ext.parse_level_element(d - 1, cycle)
    if d >= 2:
        for i in range(d):
            img = ext.face_map(d - 1, i).apply(z)
            if not img.is_zero():
                raise SimplicialError(f"face d_{i} of the cycle is nonzero: {img}")
    taken = set(ext.base.ring.variables)
    for n in range(L + 1):
        taken.update(ext.levels[n])
    prefix = "c"
    while any(_cell_name(prefix, t) in taken
              for n in range(d, L + 1) for t in monotone_surjections(n, d)):
        prefix = "c" + prefix
    cells = {n: monotone_surjections(n, d) for n in range(d, L + 1)}
    levels = {}
    for n in range(L + 1):
        extra = tuple(_cell_name(prefix, t) for t in cells.get(n, []))
        levels[n] = ext.levels[n] + extra
    kind = {
        "construction": "kill_cycle",
        "degree": d,
        "cycle": str(z),
        "base_kind": ext.kind,
    }
    new = FreeExtensionLevelwise(ext.base, L, levels, kind)
    for n in range(1, L + 1):
        rng = new.ring(n - 1)
        for i in range(n + 1):
            images = {}
            old = ext._faces[(n, i)]
            for x in ext.levels[n]:
                images[x] = old[x].rename_into(rng)
            for t in cells.get(n, []):
                v = t.compose(coface(n, i))
                if v.is_surjective():
                    images[_cell_name(prefix, t)] = rng.var(_cell_name(prefix, v))
                else:
                    missing = v.missing_values()
                    if len(missing) != 1:
                        raise SimplicialError(
                            "face of a surjection missed more than one value")
                    j = missing[0]
                    if j == 0:
                        u = OrdinalMap(n - 1, d - 1,
                                       tuple(w - 1 if w > 0 else w for w in v.values))
                        moved = apply_surjection_contravariant(ext, u, z)
                        images[_cell_name(prefix, t)] = moved.rename_into(rng)
                    else:
                        images[_cell_name(prefix, t)] = rng.zero()
            new.set_face(n, i, images)
    for n in range(0, L):
        rng = new.ring(n + 1)
        for j in range(n + 1):
            images = {}
            old = ext._degeneracies[(n, j)]
            for x in ext.levels[n]:
                images[x] = old[x].rename_into(rng)
            for t in cells.get(n, []):
                w = t.compose(codegeneracy(n, j))
                images[_cell_name(prefix, t)] = rng.var(_cell_name(prefix, w))
            new.set_degeneracy(n, j, images)
    return new


def tensor_resolutions(left: FreeExtensionLevelwise, right: FreeExtensionLevelwise
                       ) -> FreeExtensionLevelwise:
    """Levelwise tensor product over the shared constant base."""
    if left.base != right.base:
        raise SimplicialError("tensor factors must share the base")
    L = min(left.max_level, right.max_level)
    left_names = set().union(*(set(left.levels[n]) for n in range(L + 1)))
    rename = {}
    taken = set(left.base.ring.variables) | left_names
    for n in range(L + 1):
        for x in right.levels[n]:
            if x in rename:
                continue
            cand = x
            while cand in taken:
                cand = cand + "_b"
            rename[x] = cand
            taken.add(cand)
    levels = {
        n: left.levels[n] + tuple(rename[x] for x in right.levels[n])
        for n in range(L + 1)
    }
    kind = {"construction": "tensor", "factors": [left.kind, right.kind]}
    new = FreeExtensionLevelwise(left.base, L, levels, kind)
    for n in range(1, L + 1):
        rng = new.ring(n - 1)
        for i in range(n + 1):
            images = {}
            for x in left.levels[n]:
                images[x] = left._faces[(n, i)][x].rename_into(rng)
            for x in right.levels[n]:
                images[rename[x]] = right._faces[(n, i)][x].rename_into(rng, rename)
            new.set_face(n, i, images)
    for n in range(0, L):
        rng = new.ring(n + 1)
        for j in range(n + 1):
            images = {}
            for x in left.levels[n]:
                images[x] = left._degeneracies[(n, j)][x].rename_into(rng)
            for x in right.levels[n]:
                images[rename[x]] = right._degeneracies[(n, j)][x].rename_into(rng, rename)
            new.set_degeneracy(n, j, images)
    return new


# -- augmentation and homotopy ------------------------------------------------


def augmentation(ext: FreeExtensionLevelwise) -> PresentedAlgebra:
    """pi_0 = A_0 / (d_0(x) - d_1(x) : x at level 1)."""
    a0 = ext.algebra(0)
    if ext.max_level < 1:
        return a0
    diffs = []
    d0, d1 = ext.face_map(1, 0), ext.face_map(1, 1)
    for x in ext.levels[1]:
        xv = ext.ring(1).var(x)
        p = a0.normal_form(d0.apply(xv) - d1.apply(xv))
        if not p.is_zero():
            diffs.append(p)
    return PresentedAlgebra(a0.ring, list(a0.relations) + diffs)


def augmentation_of_level(ext: FreeExtensionLevelwise, n: int) -> AlgebraMap:
    """A_n -> pi_0, collapsing by iterated d_0."""
    aug = augmentation(ext)
    images = {}
    for x in ext.levels[n]:
        p = ext.ring(n).var(x)
        for m in range(n, 0, -1):
            p = ext.face_map(m, 0).apply(p)
        images[x] = aug.normal_form(p.rename_into(aug.ring))
    return AlgebraMap(ext.algebra(n), aug, images)


def _kill_element(ext_kind: dict):
    """The contracted element for the closed-form constructions, or None."""
    c = ext_kind.get("construction")
    if c in ("bar", "hypersurface"):
        return ext_kind["element"]
    if c == "kill_cycle" and ext_kind.get("degree") == 1 and \
            ext_kind.get("base_kind", {}).get("construction") == "constant":
        return ext_kind["cycle"]
    return None


def homotopy_modules(ext: FreeExtensionLevelwise, max_degree: int
                     ) -> dict[int, FPModule]:
    """Homotopy of the known constructions, as modules over pi_0.

    pi_0 is returned as the free rank-one module over the augmentation.
    Beyond the closed-form cases only degree 0 is available.
    """
    aug = augmentation(ext)
    out = {0: FPModule(aug, 1, [])}
    if max_degree == 0:
        return out
    kind = ext.kind
    elem = _kill_element(kind)
    if elem is not None:
        a0 = ext.algebra(0)
        r = a0.normal_form(a0.poly(elem) if isinstance(elem, str) else elem)
        ann_rows = syzygies([[r]], 1, a0)
        ann = [row[0] for row in ann_rows if not row[0].is_zero()]
        if not ann:
            pi1 = FPModule(aug, 0, [])
        else:
            rel_rows = syzygies([[a] for a in ann], 1, a0)
            pi1 = FPModule(
                aug, len(ann),
                [[aug.normal_form(p.rename_into(aug.ring)) for p in row]
                 for row in rel_rows],
            )
        out[1] = pi1
        for n in range(2, max_degree + 1):
            out[n] = FPModule(aug, 0, [])
        return out
    if kind.get("construction") == "constant":
        for n in range(1, max_degree + 1):
            out[n] = FPModule(aug, 0, [])
        return out
    if kind.get("construction") == "tensor":
        elems = [_kill_element(k) for k in kind["factors"]]
        if all(e is not None for e in elems):
            a0 = ext.algebra(0)
            kz = koszul_complex(a0, [a0.poly(e) if isinstance(e, str) else e
                                     for e in elems])
            for n in range(1, max_degree + 1):
                if n > kz.max_degree():
                    out[n] = FPModule(aug, 0, [])
                    continue
                h = kz.homology(n)
                out[n] = FPModule(
                    aug, h.gens,
                    [[aug.normal_form(p.rename_into(aug.ring)) for p in rel]
                     for rel in h.relations],
                )
            return out
    raise SimplicialError(
        "homotopy beyond degree 0 needs a closed-form construction")


# -- finite-rank simplicial vector spaces -------------------------------------


def _monomial_basis(nvars: int, max_degree: int):
    """Exponent tuples of total degree <= max_degree, sorted."""
    out = []
    def rec(prefix, remaining, budget):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(budget + 1):
            rec(prefix + [e], remaining - 1, budget - e)
    rec([], nvars, max_degree)
    out.sort(key=lambda e: (sum(e), e))
    return out


class SimplicialModuleFR:
    """Levelwise finite-dimensional simplicial vector space.

    Face and degeneracy operators are explicit matrices over the field
    (columns act on the source basis).
    """

    def __init__(self, field, dims: dict[int, int],
                 faces: dict[tuple[int, int], list],
                 degeneracies: dict[tuple[int, int], list],
                 max_level: int, labels=None):
        self.field = field
        self.dims = dict(dims)
        self.faces = faces
        self.degeneracies = degeneracies
        self.max_level = max_level
        self.labels = labels or {}

    @classmethod
    def from_extension(cls, ext: FreeExtensionLevelwise, base_point: dict,
                       max_degree: int = 2, up_to: int | None = None
                       ) -> "SimplicialModuleFR":
        """Evaluate base variables at a point and keep level-variable
        monomials of bounded degree.

        Requires every operator image to be affine in the level variables,
        which makes the bounded-degree span an honest simplicial subspace.
        """
        L = ext.max_level if up_to is None else min(up_to, ext.max_level)
        field = ext.base.field
        pt = ext.base.parse_point(base_point)

        def push_small(poly: Polynomial, n: int):
            """Coefficient dict {level exponent tuple: field value}."""
            ring = ext.ring(n)
            nbase = len(ext.base.ring.variables)
            out: dict = {}
            for e, c in poly.terms.items():
                val = c
                for b in range(nbase):
                    if e[b]:
                        base_val = pt[ext.base.ring.variables[b]]
                        for _ in range(e[b]):
                            val = field.mul(val, base_val)
                lev = tuple(e[nbase:])
                if sum(lev) > 1:
                    raise SimplicialError(
                        "operator image is not affine in the level variables")
                if lev in out:
                    s = field.add(out[lev], val)
                    if field.is_zero(s):
                        del out[lev]
                    else:
                        out[lev] = s
                elif not field.is_zero(val):
                    out[lev] = val
            return out

        bases = {n: _monomial_basis(len(ext.levels[n]), max_degree)
                 for n in range(L + 1)}
        index = {n: {e: i for i, e in enumerate(bases[n])} for n in range(L + 1)}
        dims = {n: len(bases[n]) for n in range(L + 1)}

        def operator_matrix(n_src: int, n_dst: int, images: dict[str, dict]):
            """Matrix of the multiplicative extension of affine variable images."""
            rows, cols = dims[n_dst], dims[n_src]
            zero = field.zero()
            mat = [[zero] * cols for _ in range(rows)]
            var_images = [images[x] for x in ext.levels[n_src]]
            for ci, expo in enumerate(bases[n_src]):
                # product of affine images, expanded over target monomials
                acc = {(0,) * len(ext.levels[n_dst]): field.one()}
                for vi, e in enumerate(expo):
                    for _ in range(e):
                        nxt: dict = {}
                        for mono, c in acc.items():
                            for m2, c2 in var_images[vi].items():
                                key = tuple(a + b for a, b in zip(mono, m2))
                                v = field.mul(c, c2)
                                if key in nxt:
                                    s = field.add(nxt[key], v)
                                    if field.is_zero(s):
                                        del nxt[key]
                                    else:
                                        nxt[key] = s
                                elif not field.is_zero(v):
                                    nxt[key] = v
                        acc = nxt
                        if not acc:
                            break
                    if not acc:
                        break
                for mono, c in acc.items():
                    if sum(mono) > max_degree:
                        raise SimplicialError("image degree exceeded the cap")
                    mat[index[n_dst][mono]][ci] = c
            return mat

        faces = {}
        for n in range(1, L + 1):
            for i in range(n + 1):
                imgs = {x: push_small(p, n - 1)
                        for x, p in ext._faces[(n, i)].items()}
                faces[(n, i)] = operator_matrix(n, n - 1, imgs)
        degs = {}
        for n in range(0, L):
            for j in range(n + 1):
                imgs = {x: push_small(p, n + 1)
                        for x, p in ext._degeneracies[(n, j)].items()}
                degs[(n, j)] = operator_matrix(n, n + 1, imgs)
        return cls(field, dims, faces, degs, L, labels=bases)

    # identities as matrix equations

    def validate(self):
        F = self.field
        bad = []

        def eq(a, b, tag):
            if len(a) != len(b) or any(len(r) != len(s) for r, s in zip(a, b)):
                bad.append(tag + " (shape)")
                return
            for r1, r2 in zip(a, b):
                for x, y in zip(r1, r2):
                    if x != y:
                        bad.append(tag)
                        return

        L = self.max_level
        for n in range(2, L + 1):
            for j in range(n + 1):
                for i in range(j):
                    eq(linalg.mat_mul(F, self.faces[(n - 1, i)], self.faces[(n, j)]),
                       linalg.mat_mul(F, self.faces[(n - 1, j - 1)], self.faces[(n, i)]),
                       f"d{i} d{j} level {n}")
        for n in range(0, L - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    eq(linalg.mat_mul(F, self.degeneracies[(n + 1, i)],
                                      self.degeneracies[(n, j)]),
                       linalg.mat_mul(F, self.degeneracies[(n + 1, j + 1)],
                                      self.degeneracies[(n, i)]),
                       f"s{i} s{j} level {n}")
        for n in range(0, L):
            ident = linalg.identity_matrix(F, self.dims[n])
            for j in range(n + 1):
                for i in range(n + 2):
                    got = linalg.mat_mul(F, self.faces[(n + 1, i)],
                                         self.degeneracies[(n, j)])
                    if i == j or i == j + 1:
                        want = ident
                    elif i < j:
                        want = linalg.mat_mul(F, self.degeneracies[(n - 1, j - 1)],
                                              self.faces[(n, i)])
                    else:
                        want = linalg.mat_mul(F, self.degeneracies[(n - 1, j)],
                                              self.faces[(n, i - 1)])
                    eq(got, want, f"d{i} s{j} level {n}")
        return (not bad, bad)

    # three homology computations that must agree

    def moore_homology_dims(self, up_to: int):
        F = self.field
        basis = {}
        for n in range(0, min(up_to + 1, self.max_level) + 1):
            if n == 0:
                basis[0] = [
                    [F.one() if i == j else F.zero() for i in range(self.dims[0])]
                    for j in range(self.dims[0])
                ]
            else:
                mats = [self.faces[(n, i)] for i in range(1, n + 1)]
                basis[n] = linalg.intersect_nullspaces(F, mats, self.dims[n])
        dims = {}
        for n in range(0, up_to + 1):
            if n + 1 not in basis:
                break
            bn, bn1 = basis[n], basis[n + 1]
            if n == 0:
                knd = len(bn)
            else:
                d0b = [linalg.mat_vec(F, self.faces[(n, 0)], v) for v in bn]
                knd = len(bn) - linalg.rank(F, _cols_to_matrix(F, d0b, self.dims[n - 1]))
            d0b1 = [linalg.mat_vec(F, self.faces[(n + 1, 0)], v) for v in bn1]
            img = linalg.rank(F, _cols_to_matrix(F, d0b1, self.dims[n]))
            dims[n] = knd - img
        return dims

    def alternating_differential(self, n: int):
        F = self.field
        rows, cols = self.dims[n - 1], self.dims[n]
        out = [[F.zero()] * cols for _ in range(rows)]
        sign = F.one()
        for i in range(n + 1):
            m = self.faces[(n, i)]
            for r in range(rows):
                row_m = m[r]
                row_o = out[r]
                for c in range(cols):
                    row_o[c] = F.add(row_o[c], F.mul(sign, row_m[c]))
            sign = F.neg(sign)
        return out

    def alternating_homology_dims(self, up_to: int):
        F = self.field
        dims = {}
        for n in range(0, up_to + 1):
            if n + 1 > self.max_level:
                break
            rk_n = 0 if n == 0 else linalg.rank(F, self.alternating_differential(n))
            rk_n1 = linalg.rank(F, self.alternating_differential(n + 1))
            dims[n] = self.dims[n] - rk_n - rk_n1
        return dims

    def normalized_complex(self):
        """Quotient by the degenerate subspace, with the induced differential."""
        F = self.field
        proj = {}
        qdims = {}
        reducers = {}
        for n in range(0, self.max_level + 1):
            degen = []
            if n >= 1:
                for j in range(n):
                    for col in _matrix_cols(self.degeneracies[(n - 1, j)]):
                        degen.append(col)
            if not degen:
                reducers[n] = ([], [])
                qdims[n] = self.dims[n]
                continue
            # degenerate vectors as rows: rref pivots are coordinate indices
            red, pivots = linalg.rref(F, [list(v) for v in degen])
            # rows of red with pivots reduce coordinates; quotient keeps the rest
            reducers[n] = (red, pivots)
            qdims[n] = self.dims[n] - len(pivots)

        def reduce_vec(n, v):
            red, pivots = reducers[n]
            v = list(v)
            for r, p in enumerate(pivots):
                c = v[p]
                if F.is_zero(c):
                    continue
                for k in range(len(v)):
                    v[k] = F.sub(v[k], F.mul(c, red[r][k]))
            free = [i for i in range(self.dims[n]) if i not in set(pivots)]
            return [v[i] for i in free]

        diffs = {}
        for n in range(1, self.max_level + 1):
            full = self.alternating_differential(n)
            _, pivots = reducers[n]
            free_src = [i for i in range(self.dims[n]) if i not in set(pivots)]
            cols = []
            for i in free_src:
                unit = [F.zero()] * self.dims[n]
                unit[i] = F.one()
                img = linalg.mat_vec(F, full, unit)
                cols.append(reduce_vec(n - 1, img))
            diffs[n] = _cols_to_matrix(F, cols, qdims[n - 1])
        return qdims, diffs

    def normalized_homology_dims(self, up_to: int):
        F = self.field
        qdims, diffs = self.normalized_complex()
        dims = {}
        for n in range(0, up_to + 1):
            if n + 1 not in diffs:
                break
            rk_n = 0 if n == 0 else linalg.rank(F, diffs[n])
            rk_n1 = linalg.rank(F, diffs[n + 1])
            dims[n] = qdims[n] - rk_n - rk_n1
        return dims


def _matrix_cols(m):
    if not m:
        return []
    return [[m[r][c] for r in range(len(m))] for c in range(len(m[0]))]


def _cols_to_matrix(F, cols, length: int):
    if not cols:
        return [[F.zero()] * 0 for _ in range(length)]
    return [[col[r] for col in cols] for r in range(length)]


# -- structural comparison of the two chain models ---------------------------


def homology_models_agree(ext: FreeExtensionLevelwise, base_point: dict,
                          max_degree: int = 2, up_to: int | None = None):
    """Moore, unnormalized, and normalized homology dims must coincide."""
    sm = SimplicialModuleFR.from_extension(ext, base_point, max_degree, up_to)
    ok_ids, bad = sm.validate()
    top = sm.max_level - 1
    moore = sm.moore_homology_dims(top)
    alt = sm.alternating_homology_dims(top)
    norm = sm.normalized_homology_dims(top)
    agree = moore == alt == norm
    return {
        "identities_hold": ok_ids,
        "identity_failures": bad,
        "moore": moore,
        "unnormalized": alt,
        "normalized": norm,
        "models_agree": agree,
        "ok": ok_ids and agree,
    }


def bar_kill_equivalence_holds(base: PresentedAlgebra, var_name: str,
                               max_level: int) -> bool:
    """The bar construction is the cell attachment killing the variable in
    degree one, under x{n}_{k} <-> the surjection [n]->>[1] with k+1 zeros."""
    bar = bar_construction(base, var_name, max_level)
    killed = kill_cycle(constant_extension(base, max_level),
                        base.ring.var(var_name), 1)
    # name dictionary level by level, looked up by cell position
    maps = {}
    for n in range(1, max_level + 1):
        cells = monotone_surjections(n, 1)
        for k in range(n):
            t = OrdinalMap(n, 1, (0,) * (k + 1) + (1,) * (n - k))
            maps[f"x{n}_{k}"] = killed.levels[n][cells.index(t)]
    for n in range(1, max_level + 1):
        rng = killed.ring(n - 1)
        for i in range(n + 1):
            for x in bar.levels[n]:
                want = killed._faces[(n, i)][maps[x]]
                got = bar._faces[(n, i)][x].rename_into(rng, maps)
                if not killed.algebra(n - 1).normal_form(want - got).is_zero():
                    return False
    for n in range(0, max_level):
        rng = killed.ring(n + 1)
        for j in range(n + 1):
            for x in bar.levels[n]:
                want = killed._degeneracies[(n, j)][maps[x]]
                got = bar._degeneracies[(n, j)][x].rename_into(rng, maps)
                if not killed.algebra(n + 1).normal_form(want - got).is_zero():
                    return False
    return True
