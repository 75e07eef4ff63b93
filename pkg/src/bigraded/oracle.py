"""Independent verification path: x-degree strands of a bigraded module as
finitely presented K[y]-modules, with graded local-cohomology dimensions
computed through local duality over K[y].

This route shares no code with the component-complex pipeline, so agreement
between the two is a strong correctness check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .groebner import PresentedModule, free_resolution, is_zero_module
from .invariants import (
    NEG_INF,
    ZeroModuleError,
    depth,
    dimension,
    ext_module,
    graded_dimension,
)
from .localcoh import lc_component
from .ring import FreeModule, Matrix, Ring, Vector, monomials_of_degree


def ky_ring(ring: Ring) -> Ring:
    """The y-block subring K[y1..yn] as a ring with no x-variables."""
    return Ring(ring.p, 0, ring.n)


@lru_cache(maxsize=None)
def strand_module(M: PresentedModule, k: int) -> PresentedModule:
    """The x-degree-k slice M_k as a finitely presented graded K[y]-module.

    Generators: per ambient summand with twist (a, b), the x-monomials of
    degree k - a, carrying y-twist b.  Relations: all x-monomial multiples
    of the relation columns that land in x-degree k, expanded on that basis.
    """
    ring = M.ring
    ky = ky_ring(ring)
    m = ring.m
    basis = []
    twists = []
    for c, (a, b) in enumerate(M.ambient.twists):
        for mono in sorted(monomials_of_degree(m, k - a)):
            basis.append((c, mono))
            twists.append((0, b))
    index = {key: pos for pos, key in enumerate(basis)}
    ambient = FreeModule(ky, tuple(twists))
    columns = []
    for col_idx, col in enumerate(M.relations.columns):
        dx, _ = M.relations.source.twists[col_idx]
        for u in sorted(monomials_of_degree(m, k - dx)):
            entries = {}
            for (c, mono), coeff in col.terms:
                alpha, beta = mono[:m], mono[m:]
                xmono = tuple(ui + ai for ui, ai in zip(u, alpha))
                pos = index[(c, xmono)]
                key = (pos, beta)
                entries[key] = entries.get(key, 0) + coeff
            v = Vector(ambient, entries)
            if not v.is_zero:
                columns.append(v)
    return PresentedModule(ambient, Matrix.from_columns(ambient, columns))


def strand_invariants(M: PresentedModule, k: int):
    """(dim, depth) of the strand over K[y]; None for a zero strand."""
    strand = strand_module(M, k)
    if is_zero_module(strand):
        return None
    return (int(dimension(strand)), depth(strand))


def lc_piece_via_duality(M: PresentedModule, k: int, j: int, i: int) -> int:
    """dim_K H^i_Q(M)_(k,j), computed as the graded dimension of
    Ext^{n-i}_{K[y]}(M_k, K[y](-n)) in degree -j (graded local duality)."""
    ring = M.ring
    n = ring.n
    if i < 0 or i > n:
        return 0
    strand = strand_module(M, k)
    if is_zero_module(strand):
        return 0
    ext = ext_module(strand, n - i, (0, n))
    return graded_dimension(ext, (0, -j))


def default_k_window(M: PresentedModule):
    """[min a - 1, max a + 5] over the ambient twists."""
    atwists = [a for a, _ in M.ambient.twists]
    lo = min(atwists, default=0)
    hi = max(atwists, default=0)
    return (lo - 1, hi + 5)


@dataclass(frozen=True)
class Mismatch:
    k: int
    j: int
    i: int
    pipeline_dim: int
    oracle_dim: int

    def to_dict(self):
        return {
            "k": self.k,
            "j": self.j,
            "i": self.i,
            "pipelineDim": self.pipeline_dim,
            "oracleDim": self.oracle_dim,
        }


@dataclass(frozen=True)
class CrossCheckReport:
    k_window: tuple
    j_window: tuple
    checked: int
    mismatches: tuple

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self):
        return {
            "kWindow": list(self.k_window),
            "jWindow": list(self.j_window),
            "checked": self.checked,
            "mismatches": [m.to_dict() for m in sorted(
                self.mismatches, key=lambda m: (m.i, m.k, m.j))],
        }


def cross_check(M: PresentedModule, k_window=None, j_window=None) -> CrossCheckReport:
    """Compare graded K-dimensions from the component-complex pipeline with
    the strand-duality oracle over the given windows."""
    from .localcoh import default_j_window

    if k_window is None:
        k_window = default_k_window(M)
    if j_window is None:
        j_window = default_j_window(M)
    n = M.ring.n
    mismatches = []
    checked = 0
    for i in range(n + 1):
        for j in range(j_window[0], j_window[1] + 1):
            component = lc_component(M, i, j)
            for k in range(k_window[0], k_window[1] + 1):
                pipeline = graded_dimension(component, (k, 0))
                oracle = lc_piece_via_duality(M, k, j, i)
                checked += 1
                if pipeline != oracle:
                    mismatches.append(Mismatch(k, j, i, pipeline, oracle))
    return CrossCheckReport(tuple(k_window), tuple(j_window), checked, tuple(mismatches))
