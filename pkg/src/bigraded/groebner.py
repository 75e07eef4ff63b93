"""Groebner-basis engine for submodules of free bigraded modules.

Buchberger with the normal selection strategy, syzygies and kernels via
elimination orders on an augmented module, and minimal free resolutions by
taking minimal generators of successive syzygy modules (graded Nakayama).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .ring import (
    AlgebraError,
    FreeModule,
    Matrix,
    Ring,
    ShapeMismatchError,
    Vector,
    add_bidegrees,
    inv_mod,
    mono_div,
    mono_divides,
    mono_key,
    mono_lcm,
    mono_mul,
)


class ResolutionLengthError(AlgebraError):
    """A resolution exceeded the Hilbert syzygy bound: engine bug."""


@dataclass(frozen=True)
class PresentedModule:
    """Finitely presented bigraded module coker(relations: F1 -> ambient)."""

    ambient: FreeModule
    relations: Matrix

    def __post_init__(self):
        if self.relations.target != self.ambient:
            raise ShapeMismatchError("relations must land in the ambient module")

    @property
    def ring(self) -> Ring:
        return self.ambient.ring

    @staticmethod
    def free(module: FreeModule) -> "PresentedModule":
        empty = Matrix(FreeModule(module.ring, ()), module, ())
        return PresentedModule(module, empty)

    @staticmethod
    def from_relations(ambient: FreeModule, columns) -> "PresentedModule":
        cols = [c for c in columns if not c.is_zero]
        return PresentedModule(ambient, Matrix.from_columns(ambient, cols))

    def quotient_ring_module(self, extra_columns) -> "PresentedModule":
        """Augment the relations by further bihomogeneous columns."""
        cols = list(self.relations.columns) + [c for c in extra_columns if not c.is_zero]
        return PresentedModule(self.ambient, Matrix.from_columns(self.ambient, cols))


def _elim_term_key(split: int):
    """Module term order where components < split dominate (elimination),
    term-over-position within each block."""

    def key(term):
        c, e = term
        return (1 if c < split else 0, mono_key(e), -c)

    return key


class _GBElement:
    __slots__ = ("lead", "lead_key", "terms")

    def __init__(self, terms: dict, key):
        # terms: {(comp, mono): coeff}, assumed monic on the lead term
        self.terms = terms
        self.lead = max(terms, key=key)
        self.lead_key = key(self.lead)


def _to_dict(v: Vector) -> dict:
    return dict(v.terms)


def _reduce(terms: dict, basis, p: int, key, stop_key=None) -> dict:
    """Full normal form of a term dict against monic basis elements.

    If stop_key is given, terms with key < stop_key are left untouched (used
    to stop once the eliminated block has been cleared).
    """
    remainder = {}
    work = dict(terms)
    while work:
        t = max(work, key=key)
        if stop_key is not None and key(t) < stop_key:
            remainder.update(work)
            break
        c = work.pop(t) % p
        if not c:
            continue
        comp, mono = t
        reducer = None
        for g in basis:
            gc, ge = g.lead
            if gc == comp and mono_divides(ge, mono):
                reducer = g
                break
        if reducer is None:
            remainder[t] = c
            continue
        shift = mono_div(mono, reducer.lead[1])
        for (rc, re), rcoeff in reducer.terms.items():
            tt = (rc, mono_mul(re, shift))
            if tt == t:
                continue
            work[tt] = (work.get(tt, 0) - c * rcoeff) % p
            if not work[tt]:
                del work[tt]
    return {t: c % p for t, c in remainder.items() if c % p}


def _make_monic(terms: dict, p: int, key) -> dict:
    lead = max(terms, key=key)
    inv = inv_mod(terms[lead], p)
    return {t: (c * inv) % p for t, c in terms.items()}


def _buchberger_dicts(gen_dicts, p: int, key):
    """Reduced Groebner basis of the given term dicts; deterministic."""
    basis = []
    for d in gen_dicts:
        d = {t: c % p for t, c in d.items() if c % p}
        if d:
            basis.append(_GBElement(_make_monic(d, p, key), key))
    # deterministic starting order
    basis.sort(key=lambda g: (g.lead_key, sorted(g.terms.items())), reverse=True)

    pairs = []

    def add_pairs(new_index):
        gnew = basis[new_index]
        for i in range(new_index):
            gi = basis[i]
            if gi is None or gi.lead[0] != gnew.lead[0]:
                continue
            lcm = mono_lcm(gi.lead[1], gnew.lead[1])
            pairs.append((sum(lcm), i, new_index))

    for i in range(len(basis)):
        add_pairs(i)

    while pairs:
        pairs.sort()
        _, i, j = pairs.pop(0)
        gi, gj = basis[i], basis[j]
        if gi is None or gj is None:
            continue
        lcm = mono_lcm(gi.lead[1], gj.lead[1])
        si = mono_div(lcm, gi.lead[1])
        sj = mono_div(lcm, gj.lead[1])
        spair = {}
        for (c, e), coeff in gi.terms.items():
            t = (c, mono_mul(e, si))
            spair[t] = (spair.get(t, 0) + coeff) % p
        for (c, e), coeff in gj.terms.items():
            t = (c, mono_mul(e, sj))
            spair[t] = (spair.get(t, 0) - coeff) % p
        spair = {t: c for t, c in spair.items() if c}
        live = [g for g in basis if g is not None]
        h = _reduce(spair, live, p, key)
        if h:
            basis.append(_GBElement(_make_monic(h, p, key), key))
            add_pairs(len(basis) - 1)

    # interreduce to the unique reduced basis
    elements = [g for g in basis if g is not None]
    changed = True
    while changed:
        changed = False
        for i in range(len(elements)):
            g = elements[i]
            if g is None:
                continue
            others = [h for k, h in enumerate(elements) if k != i and h is not None]
            reduced = _reduce(dict(g.terms), others, p, key)
            if not reduced:
                elements[i] = None
                changed = True
            elif reduced != g.terms:
                elements[i] = _GBElement(_make_monic(reduced, p, key), key)
                changed = True
    result = [g for g in elements if g is not None]
    result.sort(key=lambda g: g.lead_key, reverse=True)
    return result


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis of a submodule of `ambient`."""

    ambient: FreeModule
    generators: tuple

    def __iter__(self):
        return iter(self.generators)


def buchberger(gens, ambient: FreeModule) -> GroebnerBasis:
    key = _elim_term_key(0)
    p = ambient.ring.p
    gb = _buchberger_dicts([_to_dict(g) for g in gens], p, key)
    vectors = tuple(Vector(ambient, g.terms) for g in gb)
    return GroebnerBasis(ambient, vectors)


def normal_form(v: Vector, gb: GroebnerBasis) -> Vector:
    if v.module != gb.ambient:
        raise ShapeMismatchError("vector not in the basis ambient")
    key = _elim_term_key(0)
    p = gb.ambient.ring.p
    basis = [_GBElement(_to_dict(g), key) for g in gb.generators if not g.is_zero]
    return Vector(gb.ambient, _reduce(_to_dict(v), basis, p, key))


def in_submodule(v: Vector, gb: GroebnerBasis) -> bool:
    return normal_form(v, gb).is_zero


class _AugmentedBasis:
    """Groebner basis of {g_i + e_i} in T ⊕ E under the elimination order
    (T-block dominates).  Supports syzygies, membership and lifting."""

    def __init__(self, gens, ambient: FreeModule):
        self.ambient = ambient
        self.gens = list(gens)
        ring = ambient.ring
        self.p = ring.p
        self.split = ambient.rank
        twists = list(ambient.twists)
        for g in self.gens:
            deg = g.bidegree()
            if deg is None:
                raise ValueError("zero generator in augmented basis")
            twists.append(deg)
        self.aug_module = FreeModule(ring, tuple(twists))
        self.syz_module = FreeModule(ring, tuple(twists[self.split :]))
        key = _elim_term_key(self.split)
        aug_dicts = []
        for i, g in enumerate(self.gens):
            d = _to_dict(g)
            d[(self.split + i, ring.one_monomial())] = 1
            aug_dicts.append(d)
        self.key = key
        self.gb = _buchberger_dicts(aug_dicts, self.p, key)

    def syzygies(self):
        """Generators of the syzygy module of the input generators, as
        vectors in a free module with one basis element per generator."""
        result = []
        for g in self.gb:
            if all(c >= self.split for (c, _) in g.terms):
                shifted = {(c - self.split, e): coeff for (c, e), coeff in g.terms.items()}
                result.append(Vector(self.syz_module, shifted))
        return result

    def reduce(self, v: Vector):
        """Normal form of (v, 0); the T-part is the normal form of v modulo
        the submodule, the E-part records the (negated) quotients."""
        d = {(c, e): coeff for (c, e), coeff in v.terms}
        r = _reduce(d, self.gb, self.p, self.key)
        t_part = {t: c for t, c in r.items() if t[0] < self.split}
        e_part = {(c - self.split, e): coeff for (c, e), coeff in r.items() if c >= self.split}
        return Vector(self.ambient, t_part), Vector(self.syz_module, e_part)

    def contains(self, v: Vector) -> bool:
        t_part, _ = self.reduce(v)
        return t_part.is_zero

    def express(self, v: Vector):
        """Coordinates of v in terms of the input generators.

        Returns a vector in the generator-indexed free module such that
        v = sum coords_i * gens_i; raises if v is not in the submodule.
        """
        t_part, e_part = self.reduce(v)
        if not t_part.is_zero:
            raise AlgebraError("vector is not in the submodule")
        return -e_part


def syzygy_module(gens, ambient: FreeModule):
    """Generators of the syzygies among `gens` (vectors in ambient)."""
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return []
    return _AugmentedBasis(gens, ambient).syzygies()


def express_in_terms(v: Vector, gens, ambient: FreeModule) -> Vector:
    return _AugmentedBasis([g for g in gens], ambient).express(v)


def kernel_of_map(f: Matrix, modulo: Matrix = None) -> Matrix:
    """Generators of {v in f.source : f(v) in image(modulo)} (or ker f when
    modulo is None), returned as columns of a matrix into f.source."""
    if modulo is not None and modulo.target != f.target:
        raise ShapeMismatchError("modulo matrix must land in the target of f")
    combined = [c for c in f.columns]
    extra = list(modulo.columns) if modulo is not None else []
    nonzero = [(i, c) for i, c in enumerate(combined) if not c.is_zero]
    zero_cols = [i for i, c in enumerate(combined) if c.is_zero]
    all_gens = [c for _, c in nonzero] + [c for c in extra if not c.is_zero]
    projected = []
    if all_gens:
        syz = syzygy_module(all_gens, f.target)
        index_of = {pos: i for pos, (i, _) in enumerate(nonzero)}
        for s in syz:
            entries = {}
            for (c, e), coeff in s.terms:
                if c < len(nonzero):
                    entries[(index_of[c], e)] = coeff
            v = Vector(f.source, entries)
            if not v.is_zero:
                projected.append(v)
    # basis vectors mapped to zero are in the kernel outright
    for i in zero_cols:
        projected.append(f.source.basis_vector(i))
    projected = minimal_generators(projected, f.source)
    return Matrix.from_columns(f.source, projected)


def minimal_generators(gens, ambient: FreeModule):
    """Minimal generating set of the submodule generated by `gens`.

    Generators are processed in weakly increasing total degree; by graded
    Nakayama a generator is redundant iff it reduces to zero against the
    ones already kept.
    """
    gens = [g for g in gens if not g.is_zero]

    def canon_key(g: Vector):
        deg = g.bidegree()
        return (deg[0] + deg[1], deg, g.terms)

    gens.sort(key=canon_key)
    kept = []
    gb = None
    for g in gens:
        if gb is not None and in_submodule(g, gb):
            continue
        kept.append(g)
        gb = buchberger(kept, ambient)
    return kept


def is_zero_module(M: PresentedModule) -> bool:
    if M.ambient.rank == 0:
        return True
    gb = buchberger(list(M.relations.columns), M.ambient)
    return all(in_submodule(M.ambient.basis_vector(i), gb) for i in range(M.ambient.rank))


@lru_cache(maxsize=None)
def relations_groebner(M: PresentedModule) -> GroebnerBasis:
    return buchberger(list(M.relations.columns), M.ambient)


def minimal_presentation(M: PresentedModule) -> PresentedModule:
    """Cancel unit (constant, degree-(0,0)) relation entries by Gaussian
    elimination, then discard redundant relations.  The result presents an
    isomorphic module with a minimal generating set."""
    ring = M.ring
    p = ring.p
    one = ring.one_monomial()
    twists = list(M.ambient.twists)
    columns = [dict(col.terms) for col in M.relations.columns]

    while True:
        pivot = None
        for j, col in enumerate(columns):
            for (comp, mono), coeff in sorted(col.items()):
                if mono == one:
                    pivot = (j, comp, coeff)
                    break
            if pivot:
                break
        if pivot is None:
            break
        j, comp, coeff = pivot
        pivot_col = columns[j]
        inv = inv_mod(coeff, p)
        new_columns = []
        for jj, col in enumerate(columns):
            if jj == j:
                continue
            factor = {}
            for (c, e), cf in col.items():
                if c == comp:
                    factor[e] = cf
            if factor:
                # col -= (entry at comp) * inv * pivot_col
                new_col = dict(col)
                for fe, fc in factor.items():
                    scale = fc * inv % p
                    for (pc, pe), pcf in pivot_col.items():
                        t = (pc, mono_mul(pe, fe))
                        new_col[t] = (new_col.get(t, 0) - scale * pcf) % p
                        if not new_col[t]:
                            del new_col[t]
                col = new_col
            new_columns.append(col)
        # drop component `comp` and reindex
        remap = {c: (c if c < comp else c - 1) for c in range(len(twists)) if c != comp}
        twists.pop(comp)
        columns = []
        for col in new_columns:
            columns.append(
                {(remap[c], e): cf for (c, e), cf in col.items() if c != comp}
            )

    ambient = FreeModule(ring, tuple(twists))
    vectors = [Vector(ambient, col) for col in columns]
    vectors = [v for v in vectors if not v.is_zero]
    vectors = minimal_generators(vectors, ambient)
    return PresentedModule(ambient, Matrix.from_columns(ambient, vectors))


@dataclass(frozen=True)
class FreeResolution:
    """Chain of free bigraded modules F_0 <- F_1 <- ... with maps phi_i."""

    modules: tuple
    maps: tuple
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.maps)

    def betti_twists(self, i: int):
        return self.modules[i].twists

    def check_complex(self) -> bool:
        for i in range(len(self.maps) - 1):
            if not self.maps[i].compose(self.maps[i + 1]).is_zero:
                return False
        return True


@lru_cache(maxsize=None)
def free_resolution(M: PresentedModule) -> FreeResolution:
    """Minimal bigraded free resolution of coker(M.relations).

    Built by taking minimal generators of successive syzygy modules; length
    is bounded by the number of ring variables (Hilbert syzygy theorem).
    """
    ring = M.ring
    M0 = minimal_presentation(M)
    modules = [M0.ambient]
    maps = []
    gens = [c for c in M0.relations.columns if not c.is_zero]
    current = M0.ambient
    cap = ring.nvars
    while gens:
        if len(maps) >= cap:
            raise ResolutionLengthError(
                "resolution exceeded length %d: engine bug" % cap
            )
        phi = Matrix.from_columns(current, gens)
        modules.append(phi.source)
        maps.append(phi)
        syz = syzygy_module(gens, current)
        gens = minimal_generators(syz, phi.source)
        current = phi.source
    res = FreeResolution(tuple(modules), tuple(maps), minimal=True)
    if not res.check_complex():
        raise AlgebraError("resolution differentials do not compose to zero")
    return res


def projective_dimension(M: PresentedModule) -> int:
    return free_resolution(M).length
