"""Graded components of local cohomology with respect to Q = (y1..yn).

Applying the top-local-cohomology functor (in a fixed y-strand j) to a
bigraded free resolution yields a complex of free K[x]-modules whose
homology at position n-i presents H^i_Q(M)_j as a finitely generated graded
K[x]-module.  The z^a basis symbols index the Cech classes y^{-a-1} of the
top local cohomology of a free summand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .groebner import (
    FreeResolution,
    PresentedModule,
    free_resolution,
    is_zero_module,
    kernel_of_map,
    minimal_generators,
    syzygy_module,
)
from .invariants import (
    NEG_INF,
    AlgebraError,
    cohomological_dimension,
    grade,
    minimal_generator_count,
    multiplicity,
    present_subquotient,
    regularity,
)
from .ring import (
    FreeModule,
    Matrix,
    Ring,
    ShapeMismatchError,
    Vector,
    monomials_of_degree,
)


class NotRelativeCMError(AlgebraError):
    """The module is not relative Cohen-Macaulay with respect to Q."""


class KernelNotFreeError(AlgebraError):
    """The kernel expected to be free fails the freeness certificate."""


def kx_ring(ring: Ring) -> Ring:
    """The x-block subring K[x1..xm] as a ring with no y-variables."""
    return Ring(ring.p, ring.m, 0)


def zero_kx_module(ring: Ring) -> PresentedModule:
    return PresentedModule.free(FreeModule(kx_ring(ring), ()))


@dataclass(frozen=True)
class LCFreeComponent:
    """Free K[x]-module H^n_Q(F)_j with its z-monomial-labelled basis.

    basis[i] = (summand index in F, z-exponent tuple a); the i-th basis
    element has x-twist equal to the a-twist of its summand.
    """

    basis: tuple
    module: FreeModule

    @property
    def rank(self) -> int:
        return len(self.basis)


def top_component_free(F: FreeModule, j: int) -> LCFreeComponent:
    """H^n_Q(F)_j = ⊕_i ⊕_{|a| = -n-j+b_i} K[x](-a_i) z^a."""
    ring = F.ring
    n = ring.n
    basis = []
    twists = []
    for i, (a, b) in enumerate(F.twists):
        total = -n - j + b
        if total < 0:
            continue
        for zmono in sorted(monomials_of_degree(n, total)):
            basis.append((i, zmono))
            twists.append((a, 0))
    return LCFreeComponent(tuple(basis), FreeModule(kx_ring(ring), tuple(twists)))


def induced_component_map(phi: Matrix, j: int) -> Matrix:
    """Map H^n_Q(source)_j -> H^n_Q(target)_j induced by phi.

    A term c*x^alpha*y^beta of an entry acts on z^a as c*x^alpha on
    z^{a-beta} when a-beta >= 0 componentwise, and as zero otherwise (the
    Cech-class action on y^{-a-1})."""
    ring = phi.source.ring
    m = ring.m
    src = top_component_free(phi.source, j)
    tgt = top_component_free(phi.target, j)
    tgt_index = {key: pos for pos, key in enumerate(tgt.basis)}
    columns = []
    for s_summand, a in src.basis:
        entries = {}
        col = phi.columns[s_summand]
        for (t_summand, mono), coeff in col.terms:
            alpha, beta = mono[:m], mono[m:]
            shifted = tuple(ai - bi for ai, bi in zip(a, beta))
            if any(v < 0 for v in shifted):
                continue
            pos = tgt_index.get((t_summand, shifted))
            if pos is None:
                raise ShapeMismatchError("induced term misses the target basis")
            key = (pos, alpha)
            entries[key] = entries.get(key, 0) + coeff
        columns.append(Vector(tgt.module, entries))
    return Matrix(src.module, tgt.module, tuple(columns))


@dataclass(frozen=True)
class LCComponentComplex:
    """Complex of free K[x]-modules H^n_Q(F_i)_j with induced maps psi_i."""

    j: int
    components: tuple  # LCFreeComponent per homological degree 0..L
    maps: tuple  # psi_1..psi_L

    @property
    def length(self) -> int:
        return len(self.maps)


def component_complex(res: FreeResolution, j: int) -> LCComponentComplex:
    components = tuple(top_component_free(F, j) for F in res.modules)
    maps = tuple(induced_component_map(phi, j) for phi in res.maps)
    for i in range(len(maps) - 1):
        if not maps[i].compose(maps[i + 1]).is_zero:
            raise AlgebraError("induced maps do not form a complex")
    return LCComponentComplex(j, components, maps)


def _cycle_columns(C: LCComponentComplex, i: int):
    """Generators of ker psi_i (everything for i = 0)."""
    amb = C.components[i].module
    if i == 0:
        return [amb.basis_vector(c) for c in range(amb.rank)]
    return list(kernel_of_map(C.maps[i - 1]).columns)


def component_homology(C: LCComponentComplex, i: int) -> PresentedModule:
    """H_i of the component complex, presented over K[x]."""
    ring = C.components[0].module.ring if C.components else None
    if i < 0 or i > C.length:
        if C.components:
            return PresentedModule.free(FreeModule(ring, ()))
        raise ValueError("empty complex")
    amb = C.components[i].module
    cycles = _cycle_columns(C, i)
    boundary = list(C.maps[i].columns) if i + 1 <= C.length else []
    ker = Matrix.from_columns(amb, minimal_generators(cycles, amb))
    return present_subquotient(ker, boundary)


@lru_cache(maxsize=None)
def _component_complex_of(M: PresentedModule, j: int) -> LCComponentComplex:
    return component_complex(free_resolution(M), j)


def lc_component(M: PresentedModule, i: int, j: int) -> PresentedModule:
    """H^i_Q(M)_j as a finitely presented graded K[x]-module."""
    ring = M.ring
    n = ring.n
    if i < 0 or i > n:
        return zero_kx_module(ring)
    pos = n - i
    res = free_resolution(M)
    if pos > res.length:
        return zero_kx_module(ring)
    return component_homology(_component_complex_of(M, j), pos)


def check_relative_cm(M: PresentedModule) -> int:
    """Return rdim(Q, M) = grade(Q, M) when it equals cd(Q, M); raise
    NotRelativeCMError otherwise."""
    if is_zero_module(M):
        raise NotRelativeCMError("the zero module has no relative dimension")
    g = grade(M, "Q")
    c = cohomological_dimension(M, "Q")
    if g != c:
        raise NotRelativeCMError("grade(Q) = %d but cd(Q) = %d" % (g, c))
    return g


@dataclass(frozen=True)
class ComponentResolution:
    """Explicit free K[x]-resolution of H^q_Q(M)_j: the tail of the
    component complex with Ker psi_{n-q} (certified free) in front."""

    target: PresentedModule  # presentation of H^q_Q(M)_j
    modules: tuple  # free K[x]-modules, position 0 = Ker psi_{n-q}
    maps: tuple

    @property
    def length(self) -> int:
        return len(self.maps)


def theorem22_resolution(M: PresentedModule, q: int, j: int) -> ComponentResolution:
    """Resolution 0 -> H^n_Q(F_{L})_j -> ... -> Ker psi_{n-q} -> H^q_Q(M)_j
    with the kernel certified free; total length at most m."""
    rd = check_relative_cm(M)
    if rd != q:
        raise NotRelativeCMError("module has rdim %d, not %d" % (rd, q))
    ring = M.ring
    n = ring.n
    pos = n - q
    res = free_resolution(M)
    C = _component_complex_of(M, j)
    if pos > C.length:
        # the whole complex vanishes at and beyond pos
        target = zero_kx_module(ring)
        return ComponentResolution(target, (target.ambient,), ())
    amb = C.components[pos].module
    kgens = minimal_generators(_cycle_columns(C, pos), amb)
    # freeness certificate: no syzygies among the minimal kernel generators
    if kgens:
        syz = minimal_generators(
            syzygy_module(kgens, amb), Matrix.from_columns(amb, kgens).source
        )
        if syz:
            raise KernelNotFreeError(
                "Ker psi_%d has %d relations after minimalization" % (pos, len(syz))
            )
        G0 = Matrix.from_columns(amb, kgens).source
    else:
        G0 = FreeModule(kx_ring(ring), ())
    modules = [G0]
    maps = []
    if pos + 1 <= C.length and kgens:
        from .groebner import _AugmentedBasis

        lifter = _AugmentedBasis(kgens, amb)
        psi_next = C.maps[pos]
        lifted = tuple(lifter.express(col) for col in psi_next.columns)
        maps.append(Matrix(psi_next.source, G0, lifted))
        modules.append(psi_next.source)
        for i in range(pos + 2, C.length + 1):
            maps.append(C.maps[i - 1])
            modules.append(C.maps[i - 1].source)
    for a, b in zip(maps, maps[1:]):
        if not a.compose(b).is_zero:
            raise AlgebraError("assembled resolution is not a complex")
    if len(maps) > ring.m:
        raise AlgebraError("assembled resolution longer than %d" % ring.m)
    target = component_homology(C, pos)
    return ComponentResolution(target, tuple(modules), tuple(maps))


def default_j_window(M: PresentedModule):
    """[-n - B - 6, B + 2] with B the largest |b|-twist in the minimal
    resolution; covers all homologically active strands plus a tail."""
    res = free_resolution(M)
    btwists = [abs(b) for module in res.modules for _, b in module.twists]
    B = max(btwists, default=0)
    n = M.ring.n
    return (-n - B - 6, B + 2)


def regularity_bound_constant(M: PresentedModule) -> int:
    """c = max_{i,k} {a_ik - i} over the minimal resolution twists."""
    res = free_resolution(M)
    return max(
        a - i for i, module in enumerate(res.modules) for a, _ in module.twists
    )


def regularity_profile(M: PresentedModule, q: int, jmin: int, jmax: int):
    """Per-j regularity of H^q_Q(M)_j together with the uniform bound c."""
    rd = check_relative_cm(M)
    if rd != q:
        raise NotRelativeCMError("module has rdim %d, not %d" % (rd, q))
    c = regularity_bound_constant(M)
    profile = []
    for j in range(jmin, jmax + 1):
        N = lc_component(M, q, j)
        profile.append((j, regularity(N), c))
    return profile


def mu_polynomial_fit(points):
    """Exact polynomial interpolation through (j, mu) points via Newton
    divided differences over Q; returns (degree, predict callable) or None
    if any divided difference is non-polynomial (never happens for exact
    data)."""
    xs = [Fraction(j) for j, _ in points]
    ys = [Fraction(v) for _, v in points]
    coeffs = list(ys)
    for level in range(1, len(xs)):
        for i in range(len(xs) - 1, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - level])
    degree = max((i for i, c in enumerate(coeffs) if c != 0), default=0)

    def predict(j):
        acc = Fraction(0)
        term = Fraction(1)
        x = Fraction(j)
        for i, c in enumerate(coeffs):
            acc += c * term
            term *= x - xs[i]
        return acc

    return degree, predict


def mu_window_fit(M: PresentedModule, q: int):
    """Minimal generator counts of H^q_Q(M)_j at the 2(q+2) most negative
    default-window values of j, with the interpolating polynomial degree.

    Returns (points, degree, exact_fit)."""
    jmin, _ = default_j_window(M)
    count = 2 * (q + 2)
    js = list(range(jmin, jmin + count))
    points = [(j, minimal_generator_count(lc_component(M, q, j))) for j in js]
    half = points[: q + 1]
    degree, predict = mu_polynomial_fit(half)
    exact = all(predict(j) == v for j, v in points)
    if exact:
        return points, degree, True
    # fall back to fitting the full sample to report the true degree
    degree_full, predict_full = mu_polynomial_fit(points)
    exact_full = all(predict_full(j) == v for j, v in points)
    return points, degree_full, exact_full and degree_full <= q
