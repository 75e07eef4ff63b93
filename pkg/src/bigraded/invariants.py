"""Numerical invariants of presented modules: Hilbert series, Krull
dimension, multiplicity, depth, grade, cohomological dimension, regularity
and minimal generator counts.

Krull dimension is read from the pole order of the Hilbert series; depth
comes from the resolution length via Auslander-Buchsbaum; grade is computed
from Koszul homology of the ideal generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .groebner import (
    PresentedModule,
    buchberger,
    free_resolution,
    in_submodule,
    is_zero_module,
    kernel_of_map,
    minimal_generators,
    minimal_presentation,
    normal_form,
    relations_groebner,
)
from .ring import (
    AlgebraError,
    FreeModule,
    Matrix,
    Polynomial,
    Vector,
    add_bidegrees,
    mono_divides,
    mono_mul,
    monomials_of_degree,
    sub_bidegrees,
)

NEG_INF = float("-inf")
POS_INF = float("inf")


class ZeroModuleError(AlgebraError):
    """Operation undefined on the zero module."""


class GradeInfiniteError(AlgebraError):
    """grade(I, M) is infinite because I*M = M."""


@dataclass(frozen=True)
class HilbertSeries:
    """H_M(t) = numerator(t) / (1-t)^denominator_exponent in the total
    grading, with all (1-t) factors cancelled from the numerator."""

    numerator: tuple  # coefficients, starting at degree `shift`
    denominator_exponent: int
    shift: int = 0

    @property
    def dimension(self):
        if not self.numerator:
            return NEG_INF
        return self.denominator_exponent

    @property
    def multiplicity(self) -> int:
        return sum(self.numerator)

    def coefficient(self, d: int) -> int:
        """Exact value of the Hilbert function at total degree d."""
        # expand numerator * sum_{k} C(k + e - 1, e - 1) t^k
        from math import comb

        e = self.denominator_exponent
        total = 0
        for i, c in enumerate(self.numerator):
            k = d - (i + self.shift)
            if k < 0:
                continue
            if e == 0:
                total += c if k == 0 else 0
            else:
                total += c * comb(k + e - 1, e - 1)
        return total


def _raw_hilbert_numerator(M: PresentedModule):
    """Alternating sum of t^{a+b} over the minimal resolution twists,
    returned as (coefficients, starting degree)."""
    res = free_resolution(M)
    coeffs = {}
    for i, module in enumerate(res.modules):
        sign = -1 if i % 2 else 1
        for a, b in module.twists:
            d = a + b
            coeffs[d] = coeffs.get(d, 0) + sign
    coeffs = {d: c for d, c in coeffs.items() if c}
    if not coeffs:
        return [], 0
    lo, hi = min(coeffs), max(coeffs)
    return [coeffs.get(d, 0) for d in range(lo, hi + 1)], lo


def hilbert_series(M: PresentedModule) -> HilbertSeries:
    ring = M.ring
    num, shift = _raw_hilbert_numerator(M)
    while num and num[-1] == 0:
        num.pop()
    cancelled = 0
    # divide by (1 - t) while t = 1 is a root
    while num and sum(num) == 0:
        quotient = [0] * (len(num) - 1)
        acc = 0
        for d in range(len(num) - 1):
            acc += num[d]
            quotient[d] = acc
        num = quotient
        while num and num[-1] == 0:
            num.pop()
        cancelled += 1
    return HilbertSeries(tuple(num), ring.nvars - cancelled, shift)


def dimension(M: PresentedModule):
    """Krull dimension; -inf sentinel for the zero module."""
    return hilbert_series(M).dimension


def multiplicity(M: PresentedModule) -> int:
    series = hilbert_series(M)
    if not series.numerator:
        raise ZeroModuleError("multiplicity of the zero module")
    return series.multiplicity


def depth(M: PresentedModule) -> int:
    """depth via Auslander-Buchsbaum: nvars - projective dimension."""
    if is_zero_module(M):
        raise ZeroModuleError("depth of the zero module")
    return M.ring.nvars - free_resolution(M).length


def regularity(M: PresentedModule):
    """Castelnuovo-Mumford regularity max_i (max twist of F_i) - i, in the
    total grading.  -inf sentinel for the zero module."""
    if is_zero_module(M):
        return NEG_INF
    res = free_resolution(M)
    return max(
        max(a + b for a, b in module.twists) - i
        for i, module in enumerate(res.modules)
    )


def minimal_generator_count(M: PresentedModule) -> int:
    return minimal_presentation(M).ambient.rank


def betti_numbers(M: PresentedModule):
    """List per homological degree of sorted twist tuples of the minimal
    resolution."""
    res = free_resolution(M)
    return [tuple(sorted(module.twists)) for module in res.modules]


def graded_dimension(M: PresentedModule, bidegree) -> int:
    """dim_K of the (dx, dy) bigraded piece of coker(relations), counted as
    standard monomials modulo the lead terms of the relation basis."""
    ring = M.ring
    gb = relations_groebner(M)
    leads = {}
    for g in gb.generators:
        (comp, mono), _ = g.terms[0]
        leads.setdefault(comp, []).append(mono)
    count = 0
    for comp, twist in enumerate(M.ambient.twists):
        dx, dy = sub_bidegrees(bidegree, twist)
        if dx < 0 or dy < 0:
            continue
        for ex in monomials_of_degree(ring.m, dx):
            for ey in monomials_of_degree(ring.n, dy):
                mono = ex + ey
                if not any(mono_divides(l, mono) for l in leads.get(comp, ())):
                    count += 1
    return count


# ---------------------------------------------------------------------------
# Ideals P = (x1..xm) and Q = (y1..yn)


def ideal_generators(M_or_ring, which: str):
    ring = M_or_ring.ring if isinstance(M_or_ring, PresentedModule) else M_or_ring
    if which == "P":
        return ring.x_vars()
    if which == "Q":
        return ring.y_vars()
    raise ValueError("ideal must be 'P' or 'Q'")


def quotient_by_ideal(M: PresentedModule, which: str) -> PresentedModule:
    """M / (P or Q)M: append generator multiples of the ambient basis."""
    gens = ideal_generators(M, which)
    extra = []
    for i in range(M.ambient.rank):
        e = M.ambient.basis_vector(i)
        for g in gens:
            extra.append(e.mul_poly(g))
    return M.quotient_ring_module(extra)


def cohomological_dimension(M: PresentedModule, which: str) -> int:
    """cd(Q, M) = dim M/PM and cd(P, M) = dim M/QM."""
    if is_zero_module(M):
        raise ZeroModuleError("cd of the zero module")
    other = "Q" if which == "P" else "P"
    d = dimension(quotient_by_ideal(M, other))
    return int(d) if d != NEG_INF else 0


# ---------------------------------------------------------------------------
# Koszul complexes and grade


def koszul_components(t: int, i: int):
    """Index sets of the degree-i part of the Koszul complex on t generators,
    in a fixed deterministic order."""
    return list(combinations(range(t), i))


def koszul_module(base: FreeModule, gens, i: int) -> FreeModule:
    ring = base.ring
    degs = [g.bidegree() for g in gens]
    twists = []
    for J in koszul_components(len(gens), i):
        shift = (0, 0)
        for j in J:
            shift = add_bidegrees(shift, degs[j])
        for tw in base.twists:
            twists.append(add_bidegrees(tw, shift))
    return FreeModule(ring, tuple(twists))


def koszul_differential(base: FreeModule, gens, i: int) -> Matrix:
    """d_i: (base tensor Lambda^i) -> (base tensor Lambda^{i-1})."""
    t = len(gens)
    rank = base.rank
    src = koszul_module(base, gens, i)
    tgt = koszul_module(base, gens, i - 1)
    tgt_index = {J: pos for pos, J in enumerate(koszul_components(t, i - 1))}
    columns = []
    for Jpos, J in enumerate(koszul_components(t, i)):
        for c in range(rank):
            entries = {}
            for l, j in enumerate(J):
                Jminus = tuple(v for v in J if v != j)
                sign = 1 if l % 2 == 0 else -1
                comp_base = tgt_index[Jminus] * rank + c
                for e, coeff in gens[j].terms:
                    key = (comp_base, e)
                    entries[key] = entries.get(key, 0) + sign * coeff
            columns.append(Vector(tgt, entries))
    return Matrix(src, tgt, tuple(columns))


def _spread_relations(base_relations: Matrix, base: FreeModule, gens, i: int):
    """Relation columns of M, placed in every Lambda^i component."""
    t = len(gens)
    rank = base.rank
    module = koszul_module(base, gens, i)
    cols = []
    for Jpos in range(len(koszul_components(t, i))):
        for rel in base_relations.columns:
            entries = {
                (Jpos * rank + c, e): coeff for (c, e), coeff in rel.terms
            }
            cols.append(Vector(module, entries))
    return [c for c in cols if not c.is_zero]


def koszul_homology_nonzero(M: PresentedModule, gens, i: int) -> bool:
    """Whether H_i(gens; M) is nonzero."""
    t = len(gens)
    if i < 0 or i > t:
        return False
    base = M.ambient
    src_rels = _spread_relations(M.relations, base, gens, i)
    src_module = koszul_module(base, gens, i)
    if i == 0:
        ker_cols = [src_module.basis_vector(c) for c in range(src_module.rank)]
    else:
        d_i = koszul_differential(base, gens, i)
        tgt_rels = _spread_relations(M.relations, base, gens, i - 1)
        modulo = (
            Matrix.from_columns(koszul_module(base, gens, i - 1), tgt_rels)
            if tgt_rels
            else None
        )
        ker_cols = list(kernel_of_map(d_i, modulo).columns)
    boundary = list(src_rels)
    if i + 1 <= t:
        boundary += [c for c in koszul_differential(base, gens, i + 1).columns if not c.is_zero]
    if not boundary:
        return any(not c.is_zero for c in ker_cols)
    gb = buchberger(boundary, src_module)
    return any(not in_submodule(c, gb) for c in ker_cols)


def grade(M: PresentedModule, which: str) -> int:
    """grade(I, M) = t - max{i : H_i(g; M) != 0} on the t ideal generators.

    Raises GradeInfiniteError when I*M = M (only possible for M = 0 among
    finitely generated graded modules, but checked explicitly).
    """
    gens = ideal_generators(M, which)
    t = len(gens)
    if is_zero_module(M):
        raise GradeInfiniteError("grade of the zero module")
    if not koszul_homology_nonzero(M, gens, 0):
        raise GradeInfiniteError("ideal times module equals module")
    for i in range(t, 0, -1):
        if koszul_homology_nonzero(M, gens, i):
            return t - i
    return t


def grade_via_ext(M: PresentedModule, which: str) -> int:
    """Cross-check route: min{i : Ext^i(S/I, M) != 0} via the Koszul
    resolution of S/I.  Agrees with `grade` on every module."""
    gens = ideal_generators(M, which)
    t = len(gens)
    if is_zero_module(M):
        raise GradeInfiniteError("grade of the zero module")
    for i in range(t + 1):
        if _koszul_ext_nonzero(M, gens, i):
            return i
    raise GradeInfiniteError("all Ext modules vanish")


def _hom_koszul_module(base: FreeModule, gens, i: int) -> FreeModule:
    ring = base.ring
    degs = [g.bidegree() for g in gens]
    twists = []
    for J in koszul_components(len(gens), i):
        shift = (0, 0)
        for j in J:
            shift = add_bidegrees(shift, degs[j])
        for tw in base.twists:
            twists.append(sub_bidegrees(tw, shift))
    return FreeModule(ring, tuple(twists))


def _hom_koszul_map(base: FreeModule, gens, i: int) -> Matrix:
    """delta^i: Hom(K_{i-1}, M) -> Hom(K_i, M), transpose of d_i."""
    t = len(gens)
    rank = base.rank
    src = _hom_koszul_module(base, gens, i - 1)
    tgt = _hom_koszul_module(base, gens, i)
    tgt_comps = koszul_components(t, i)
    src_index = {J: pos for pos, J in enumerate(koszul_components(t, i - 1))}
    columns = [dict() for _ in range(src.rank)]
    for Jpos, J in enumerate(tgt_comps):
        for c in range(rank):
            for l, j in enumerate(J):
                Jminus = tuple(v for v in J if v != j)
                sign = 1 if l % 2 == 0 else -1
                src_comp = src_index[Jminus] * rank + c
                for e, coeff in gens[j].terms:
                    key = (Jpos * rank + c, e)
                    col = columns[src_comp]
                    col[key] = col.get(key, 0) + sign * coeff
    return Matrix(src, tgt, tuple(Vector(tgt, col) for col in columns))


def _hom_spread_relations(M: PresentedModule, gens, i: int):
    t = len(gens)
    base = M.ambient
    rank = base.rank
    module = _hom_koszul_module(base, gens, i)
    rels = []
    for Jpos in range(len(koszul_components(t, i))):
        for rel in M.relations.columns:
            rels.append(
                Vector(module, {(Jpos * rank + c, e): coeff for (c, e), coeff in rel.terms})
            )
    return [r for r in rels if not r.is_zero]


def _koszul_ext_nonzero(M: PresentedModule, gens, i: int) -> bool:
    t = len(gens)
    base = M.ambient
    module = _hom_koszul_module(base, gens, i)
    rels = _hom_spread_relations(M, gens, i)
    if i + 1 <= t:
        delta_next = _hom_koszul_map(base, gens, i + 1)
        rels_next = _hom_spread_relations(M, gens, i + 1)
        modulo = (
            Matrix.from_columns(_hom_koszul_module(base, gens, i + 1), rels_next)
            if rels_next
            else None
        )
        ker_cols = list(kernel_of_map(delta_next, modulo).columns)
    else:
        ker_cols = [module.basis_vector(c) for c in range(module.rank)]
    boundary = list(rels)
    if i >= 1:
        boundary += [c for c in _hom_koszul_map(base, gens, i).columns if not c.is_zero]
    if not boundary:
        return any(not c.is_zero for c in ker_cols)
    gb = buchberger(boundary, module)
    return any(not in_submodule(c, gb) for c in ker_cols)


# ---------------------------------------------------------------------------
# Subquotients and Ext presentations


def present_subquotient(ker_matrix: Matrix, image_columns) -> PresentedModule:
    """Presentation of (submodule generated by ker columns) / (submodule
    generated by image columns), both inside ker_matrix.target."""
    ambient = ker_matrix.target
    kgens = minimal_generators(list(ker_matrix.columns), ambient)
    if not kgens:
        empty = FreeModule(ambient.ring, ())
        return PresentedModule.free(empty)
    K = Matrix.from_columns(ambient, kgens)
    image_columns = [c for c in image_columns if not c.is_zero]
    modulo = Matrix.from_columns(ambient, image_columns) if image_columns else None
    rels = kernel_of_map(K, modulo)
    return PresentedModule(K.source, rels)


def ext_module(M: PresentedModule, e: int, omega_twist) -> PresentedModule:
    """Ext^e(M, R(-omega_twist)) presented from the minimal free resolution:
    transpose the differentials against the twisted ring and take the
    subquotient ker(delta_{e+1}) / im(delta_e)."""
    ring = M.ring
    res = free_resolution(M)
    L = res.length
    if e < 0 or e > L:
        return PresentedModule.free(FreeModule(ring, ()))

    def dual_module(i: int) -> FreeModule:
        return FreeModule(
            ring, tuple(sub_bidegrees(omega_twist, tw) for tw in res.modules[i].twists)
        )

    def delta(i: int) -> Matrix:
        # transpose of phi_i: Hom(F_{i-1}, omega) -> Hom(F_i, omega)
        phi = res.maps[i - 1]
        src = dual_module(i - 1)
        tgt = dual_module(i)
        columns = []
        for t_comp in range(src.rank):
            entries = {}
            for s_comp in range(tgt.rank):
                poly = phi.columns[s_comp].entry(t_comp)
                for mono, coeff in poly.terms:
                    entries[(s_comp, mono)] = coeff
            columns.append(Vector(tgt, entries))
        return Matrix(src, tgt, tuple(columns))

    target = dual_module(e)
    if e + 1 <= L:
        ker = kernel_of_map(delta(e + 1))
    else:
        ker = Matrix.identity(target)
    image = list(delta(e).columns) if e >= 1 else []
    return present_subquotient(ker, image)
