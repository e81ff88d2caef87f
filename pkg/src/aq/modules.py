"""Finitely presented modules, free complexes, and their homology.

Matrices over a presented algebra are lists of rows of ambient
polynomials acting on column vectors. Kernels and syzygies reduce to the
elimination engine in groebner.py; homology of a free complex is the
subquotient presentation ker(d_n)/im(d_{n+1}), and at a rational point
it is plain exact linear algebra over the coefficient field.
"""

from __future__ import annotations

from itertools import combinations

from . import linalg
from .groebner import (
    SubmoduleEngine,
    vp_from_poly,
    vp_lead,
)
from .poly import Polynomial
from .rings import AlgebraError, PresentedAlgebra

Matrix = list  # list of rows of Polynomial


class ModuleError(AlgebraError):
    pass


# -- matrix helpers ------------------------------------------------------


def matrix_shape(m: Matrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return rows, cols


def zero_poly_matrix(algebra: PresentedAlgebra, rows: int, cols: int) -> Matrix:
    z = algebra.ring.zero()
    return [[z] * cols for _ in range(rows)]


def normalize_matrix(algebra: PresentedAlgebra, m: Matrix) -> Matrix:
    out = []
    for row in m:
        nrow = []
        for entry in row:
            if isinstance(entry, str):
                entry = algebra.poly(entry)
            if isinstance(entry, int):
                entry = algebra.ring.from_int(entry)
            nrow.append(algebra.normal_form(entry))
        out.append(nrow)
    return out


def matrix_columns(m: Matrix) -> list[list[Polynomial]]:
    rows, cols = matrix_shape(m)
    return [[m[i][j] for i in range(rows)] for j in range(cols)]


def matrix_from_columns(cols: list[list[Polynomial]], rows: int, algebra) -> Matrix:
    if not cols:
        return [[] for _ in range(rows)]
    return [[col[i] for col in cols] for i in range(rows)]


def evaluate_matrix(algebra: PresentedAlgebra, m: Matrix, point: dict):
    return [[entry.evaluate(point) for entry in row] for row in m]


def matrix_to_json(m: Matrix) -> list:
    return [[str(entry) for entry in row] for row in m]


def dense_to_vp(vec: list[Polynomial]):
    return {i: p for i, p in enumerate(vec) if not p.is_zero()}


def vp_to_dense(v, rank: int, algebra: PresentedAlgebra) -> list[Polynomial]:
    return [v.get(i, algebra.ring.zero()) for i in range(rank)]


def _canonical_vectors(vectors, rank: int, algebra: PresentedAlgebra):
    """Normalize, dedupe, and sort dense vectors deterministically."""
    seen = set()
    cleaned = []
    for vec in vectors:
        nf = [algebra.normal_form(p) for p in vec]
        if all(p.is_zero() for p in nf):
            continue
        key = tuple(str(p) for p in nf)
        if key in seen:
            continue
        seen.add(key)
        cleaned.append(nf)
    def sort_key(vec):
        v = dense_to_vp(vec)
        c, m, _ = vp_lead(v, algebra.ring)
        return (-c, algebra.ring.order.key(m))
    cleaned.sort(key=sort_key, reverse=True)
    return cleaned


# -- kernels and syzygies --------------------------------------------------


def syzygies(vectors, rank: int, algebra: PresentedAlgebra):
    """Generators of {c : sum c_i v_i = 0 in A^rank} for column vectors v_i.

    Works over the quotient: relation multiples count as zero.
    """
    vps = []
    for vec in vectors:
        if isinstance(vec, dict):
            vps.append(vec)
        else:
            vps.append(dense_to_vp(vec))
    engine = SubmoduleEngine(algebra.ring, rank, vps, algebra.relations)
    out = [
        [algebra.normal_form(p) for p in row] for row in engine.syzygies()
    ]
    return _canonical_vectors(out, len(vps), algebra)


def kernel_generators(m: Matrix, algebra: PresentedAlgebra):
    """Column vectors spanning ker(A^cols -> A^rows)."""
    rows, cols = matrix_shape(m)
    if cols == 0:
        return []
    if rows == 0:
        unit = []
        for j in range(cols):
            v = [algebra.ring.zero()] * cols
            v[j] = algebra.ring.one()
            unit.append(v)
        return unit
    return syzygies(matrix_columns(m), rows, algebra)


def annihilator(vector, rank: int, denominators, algebra: PresentedAlgebra):
    """Generators of {a in A : a*vector lies in span(denominators) + I}."""
    vecs = [vector] + list(denominators)
    syz = syzygies(vecs, rank, algebra)
    out = [row[0] for row in syz if not row[0].is_zero()]
    gens = []
    seen = set()
    for g in sorted(out, key=lambda p: algebra.ring.order.key(p.leading_monomial()), reverse=True):
        s = str(g.monic())
        if s not in seen:
            seen.add(s)
            gens.append(g.monic())
    return gens


# -- finitely presented modules ---------------------------------------------


class FPModule:
    """Cokernel presentation: A^k --relations--> A^gens -> M -> 0."""

    def __init__(self, algebra: PresentedAlgebra, gens: int, relations=(), cycle_reps=None):
        self.algebra = algebra
        self.gens = gens
        rels = []
        for rel in relations:
            vec = [algebra.normal_form(p) for p in rel]
            if len(vec) != gens:
                raise ModuleError("relation length does not match generator count")
            rels.append(vec)
        self.relations = _canonical_vectors(rels, gens, algebra)
        # optional: ambient representatives of the generators (set by homology)
        self.cycle_reps = cycle_reps
        self._engine: SubmoduleEngine | None = None

    def _rel_engine(self) -> SubmoduleEngine:
        if self._engine is None:
            self._engine = SubmoduleEngine(
                self.algebra.ring,
                self.gens,
                [dense_to_vp(r) for r in self.relations],
                self.algebra.relations,
            )
        return self._engine

    def is_zero(self) -> bool:
        if self.gens == 0:
            return True
        engine = self._rel_engine()
        one = self.algebra.ring.one()
        return all(engine.contains({i: one}) for i in range(self.gens))

    def generator_is_zero(self, index: int) -> bool:
        return self._rel_engine().contains({index: self.algebra.ring.one()})

    def element_is_zero(self, coeffs) -> bool:
        """Is sum coeffs_i * gen_i zero in the module?"""
        v = {i: p for i, p in enumerate(coeffs) if not p.is_zero()}
        return self._rel_engine().contains(v)

    def free_rank(self):
        """gens when the presentation has no nonzero relations, else None."""
        return self.gens if not self.relations else None

    def dim_at_point(self, point: dict) -> int:
        """dim over k of M tensor k(point)."""
        pt = self.algebra.parse_point(point)
        field = self.algebra.field
        if self.gens == 0:
            return 0
        cols = [[p.evaluate(pt) for p in rel] for rel in self.relations]
        if not cols:
            return self.gens
        matrix = [[col[i] for col in cols] for i in range(self.gens)]
        return self.gens - linalg.rank(field, matrix)

    def annihilator_of_generator(self, index: int):
        unit = [self.algebra.ring.zero()] * self.gens
        unit[index] = self.algebra.ring.one()
        return annihilator(unit, self.gens, self.relations, self.algebra)

    def presentation_matrix(self) -> Matrix:
        """gens x (#relations) matrix whose columns are the relations."""
        return matrix_from_columns(self.relations, self.gens, self.algebra)

    def to_json(self) -> dict:
        return {
            "generators": self.gens,
            "relations": [[str(p) for p in rel] for rel in self.relations],
        }

    def __repr__(self):
        return f"FPModule(gens={self.gens}, rels={len(self.relations)} over {self.algebra.describe()})"


def present_subquotient(algebra, ambient_rank, numerators, denominators) -> FPModule:
    """Presentation of (span numerators)/(span denominators) in A^ambient_rank.

    Callers guarantee denominators lie in the numerator span (checked via
    the relation projection staying exact is the usual dd=0 situation).
    """
    nums = _canonical_vectors(numerators, ambient_rank, algebra)
    if not nums:
        return FPModule(algebra, 0, [])
    vecs = nums + list(denominators)
    syz = syzygies(vecs, ambient_rank, algebra)
    k = len(nums)
    relations = [row[:k] for row in syz]
    return FPModule(algebra, k, relations, cycle_reps=nums)


# -- free complexes ----------------------------------------------------------


class FreeComplex:
    """Bounded complex of free modules; diffs[n] maps degree n to n-1."""

    def __init__(self, algebra: PresentedAlgebra, ranks: dict[int, int],
                 diffs: dict[int, Matrix], check: bool = True):
        self.algebra = algebra
        self.ranks = {n: r for n, r in ranks.items() if r > 0}
        self.diffs = {}
        for n, m in diffs.items():
            mat = normalize_matrix(algebra, m)
            rows, cols = matrix_shape(mat)
            if rows != self.rank(n - 1) or cols != self.rank(n):
                raise ModuleError(
                    f"differential {n} has shape {rows}x{cols}, expected "
                    f"{self.rank(n - 1)}x{self.rank(n)}"
                )
            self.diffs[n] = mat
        if check:
            self.check_dd_zero()

    def degrees(self):
        return sorted(self.ranks)

    def min_degree(self) -> int:
        return min(self.ranks) if self.ranks else 0

    def max_degree(self) -> int:
        return max(self.ranks) if self.ranks else 0

    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def differential(self, n: int) -> Matrix:
        if n in self.diffs:
            return self.diffs[n]
        return zero_poly_matrix(self.algebra, self.rank(n - 1), self.rank(n))

    def check_dd_zero(self):
        for n in list(self.diffs):
            if self.rank(n + 1) == 0 or self.rank(n - 1) == 0:
                continue
            a = self.differential(n)
            b = self.differential(n + 1)
            rows, _ = matrix_shape(a)
            _, cols = matrix_shape(b)
            inner = self.rank(n)
            for i in range(rows):
                for j in range(cols):
                    s = self.algebra.ring.zero()
                    for k in range(inner):
                        s = s + a[i][k] * b[k][j]
                    if not self.algebra.normal_form(s).is_zero():
                        raise ModuleError(f"d_{n} . d_{n + 1} != 0 at entry ({i},{j})")

    def homology(self, n: int) -> FPModule:
        """ker(d_n)/im(d_{n+1}) as a finitely presented module."""
        if self.rank(n) == 0:
            return FPModule(self.algebra, 0, [])
        if self.rank(n - 1) == 0:
            # everything is a cycle; the empty matrix cannot say so
            zero, one = self.algebra.ring.zero(), self.algebra.ring.one()
            cycles = []
            for j in range(self.rank(n)):
                v = [zero] * self.rank(n)
                v[j] = one
                cycles.append(v)
        else:
            cycles = kernel_generators(self.differential(n), self.algebra)
        boundaries = matrix_columns(self.differential(n + 1))
        return present_subquotient(self.algebra, self.rank(n), cycles, boundaries)

    def evaluate_differential(self, n: int, point: dict):
        return evaluate_matrix(self.algebra, self.differential(n), point)

    def homology_dim_at_point(self, n: int, point: dict) -> int:
        """dim_k H_n(C tensor k(point)); exact linear algebra."""
        pt = self.algebra.parse_point(point)
        field = self.algebra.field
        rn = self.rank(n)
        if rn == 0:
            return 0
        rank_in = linalg.rank(field, self.evaluate_differential(n, pt)) if self.rank(n - 1) else 0
        rank_out = linalg.rank(field, self.evaluate_differential(n + 1, pt)) if self.rank(n + 1) else 0
        return rn - rank_in - rank_out

    def differential_rank_at_point(self, n: int, point: dict) -> int:
        pt = self.algebra.parse_point(point)
        if self.rank(n) == 0 or self.rank(n - 1) == 0:
            return 0
        return linalg.rank(self.algebra.field, self.evaluate_differential(n, pt))

    def to_json(self) -> dict:
        return {
            "ring": self.algebra.to_json(),
            "ranks": {str(n): r for n, r in sorted(self.ranks.items())},
            "differentials": {
                str(n): matrix_to_json(self.differential(n))
                for n in sorted(self.diffs)
            },
        }

    def __repr__(self):
        ranks = ", ".join(f"{n}:{r}" for n, r in sorted(self.ranks.items()))
        return f"FreeComplex({ranks} over {self.algebra.describe()})"


def complex_homology(complex_or_tensored, n: int) -> FPModule:
    return complex_or_tensored.homology(n)


class TensoredComplex:
    """A free complex with coefficients in a finitely presented module.

    Degree-n term is N^{rank_n}; homology is computed by blocking the
    differentials with the coefficient presentation.
    """

    def __init__(self, base: FreeComplex, coefficients: FPModule):
        if coefficients.algebra != base.algebra:
            raise ModuleError("coefficient module over a different algebra")
        self.base = base
        self.coefficients = coefficients
        self.algebra = base.algebra

    def rank(self, n: int) -> int:
        return self.base.rank(n) * self.coefficients.gens

    def _blocked_columns(self, n: int):
        """Columns of d_n tensor id_N, then the relation block of the target."""
        g = self.coefficients.gens
        src = self.base.rank(n)
        tgt = self.base.rank(n - 1)
        mat = self.base.differential(n)
        zero = self.algebra.ring.zero()
        cols = []
        for j in range(src):
            for t in range(g):
                col = [zero] * (tgt * g)
                for i in range(tgt):
                    col[i * g + t] = mat[i][j]
                cols.append(col)
        return cols

    def _relation_block(self, n: int):
        g = self.coefficients.gens
        r = self.base.rank(n)
        zero = self.algebra.ring.zero()
        cols = []
        for slot in range(r):
            for rel in self.coefficients.relations:
                col = [zero] * (r * g)
                for t in range(g):
                    col[slot * g + t] = rel[t]
                cols.append(col)
        return cols

    def homology(self, n: int) -> FPModule:
        g = self.coefficients.gens
        rn = self.base.rank(n)
        if rn == 0 or g == 0:
            return FPModule(self.algebra, 0, [])
        ambient = rn * g
        if self.base.rank(n - 1) == 0:
            cycles = []
            one = self.algebra.ring.one()
            zero = self.algebra.ring.zero()
            for j in range(ambient):
                v = [zero] * ambient
                v[j] = one
                cycles.append(v)
        else:
            down_cols = self._blocked_columns(n)
            target_rels = self._relation_block(n - 1)
            vecs = down_cols + target_rels
            syz = syzygies(vecs, self.base.rank(n - 1) * g, self.algebra)
            cycles = [row[:ambient] for row in syz]
        boundaries = self._blocked_columns(n + 1) if self.base.rank(n + 1) else []
        boundaries = boundaries + self._relation_block(n)
        return present_subquotient(self.algebra, ambient, cycles, boundaries)


def tensor_with_module(base: FreeComplex, coefficients) -> TensoredComplex:
    """Complex with coefficients; accepts an FPModule over the same algebra."""
    if not isinstance(coefficients, FPModule):
        raise ModuleError("coefficients must be an FPModule")
    return TensoredComplex(base, coefficients)


# -- Koszul complexes ----------------------------------------------------------


def koszul_complex(algebra: PresentedAlgebra, elements) -> FreeComplex:
    """Koszul complex on r_1..r_c: rank C(c, n) in degree n, standard signs."""
    elems = []
    for e in elements:
        if isinstance(e, str):
            e = algebra.poly(e)
        elems.append(algebra.normal_form(e))
    c = len(elems)
    basis = {n: list(combinations(range(c), n)) for n in range(c + 1)}
    index = {n: {s: i for i, s in enumerate(basis[n])} for n in basis}
    ranks = {n: len(basis[n]) for n in range(c + 1)}
    diffs = {}
    zero = algebra.ring.zero()
    field = algebra.field
    for n in range(1, c + 1):
        rows = ranks[n - 1]
        cols = ranks[n]
        mat = [[zero] * cols for _ in range(rows)]
        for j, subset in enumerate(basis[n]):
            for pos, el in enumerate(subset):
                rest = subset[:pos] + subset[pos + 1 :]
                i = index[n - 1][rest]
                sign = field.one() if pos % 2 == 0 else field.neg(field.one())
                mat[i][j] = mat[i][j] + elems[el].scale(sign)
        diffs[n] = mat
    return FreeComplex(algebra, ranks, diffs)


def koszul_homology_all_vanish(algebra, elements, max_degree=None) -> tuple[bool, dict]:
    """Check H_n(K(r)) = 0 for 1 <= n <= c; returns (all vanish, per-degree)."""
    kc = koszul_complex(algebra, elements)
    c = kc.max_degree()
    top = c if max_degree is None else min(max_degree, c)
    verdict = {}
    for n in range(1, top + 1):
        verdict[n] = kc.homology(n).is_zero()
    return all(verdict.values()), verdict
