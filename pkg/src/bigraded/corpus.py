"""Deterministic generators of test modules with known invariants: the
worked ring examples, tensor constructions I + J, hypersurfaces, free
modules and seeded random presentations."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .groebner import PresentedModule, is_zero_module
from .invariants import ZeroModuleError, depth, dimension
from .ring import (
    DEFAULT_PRIME,
    FreeModule,
    Matrix,
    Polynomial,
    Ring,
    Vector,
    monomials_of_degree,
    parse_polynomial,
)


class MixedVariablesError(ValueError):
    """Tensor construction received generators mixing x and y variables."""


# provenance tags for expected values
PAPER = "PAPER"
TRIVIAL = "TRIVIAL"
DERIVED = "DERIVED"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    module: PresentedModule
    expected: tuple = ()  # tuple of (key, value, provenance)

    def expected_dict(self):
        return {key: value for key, value, _ in self.expected}


def cyclic_quotient(ring: Ring, relation_texts) -> PresentedModule:
    """S / (relations), presented on a single rank-1 ambient module."""
    ambient = FreeModule(ring, (((0, 0)),))
    columns = []
    for text in relation_texts:
        poly = parse_polynomial(ring, text)
        if poly.is_zero:
            continue
        columns.append(ambient.basis_vector(0).mul_poly(poly))
    return PresentedModule(ambient, Matrix.from_columns(ambient, columns))


def free_module_entry(name: str, ring: Ring, twists) -> CorpusEntry:
    module = PresentedModule.free(FreeModule(ring, tuple(twists)))
    expected = (
        ("dim", ring.m + ring.n, TRIVIAL),
        ("depth", ring.m + ring.n, TRIVIAL),
        ("isCM", True, TRIVIAL),
        ("isRCM_Q", True, TRIVIAL),
        ("rdimQ", ring.n, TRIVIAL),
        ("isRCM_P", True, TRIVIAL),
        ("rdimP", ring.m, TRIVIAL),
    )
    return CorpusEntry(name, module, expected)


def _block_of(poly: Polynomial):
    """'x', 'y', 'const' or 'mixed' according to the variables appearing."""
    ring = poly.ring
    uses_x = uses_y = False
    for e, _ in poly.terms:
        if any(e[: ring.m]):
            uses_x = True
        if any(e[ring.m :]):
            uses_y = True
    if uses_x and uses_y:
        return "mixed"
    if uses_x:
        return "x"
    if uses_y:
        return "y"
    return "const"


def tensor_module(name: str, ring: Ring, i_texts, j_texts) -> CorpusEntry:
    """S/(I + J) for I in the x-block and J in the y-block, with expected
    relative dimensions read off the single-block quotients (a quotient ring
    tensor factors its local cohomology block by block)."""
    i_polys = [parse_polynomial(ring, t) for t in i_texts]
    j_polys = [parse_polynomial(ring, t) for t in j_texts]
    for poly in i_polys:
        if _block_of(poly) not in ("x", "const"):
            raise MixedVariablesError("I-generator %s is not purely in the x-block" % poly)
    for poly in j_polys:
        if _block_of(poly) not in ("y", "const"):
            raise MixedVariablesError("J-generator %s is not purely in the y-block" % poly)
    module = cyclic_quotient(ring, list(i_texts) + list(j_texts))

    expected = []
    # invariants of K[y]/J over the y-block ring
    ky = Ring(ring.p, 0, ring.n)
    r1 = cyclic_quotient(ky, [str(p) for p in j_polys]) if j_texts else cyclic_quotient(ky, [])
    if not is_zero_module(r1):
        dim1 = int(dimension(r1))
        cm1 = depth(r1) == dim1
        expected.append(("isRCM_Q", cm1, DERIVED))
        if cm1:
            expected.append(("rdimQ", dim1, DERIVED))
    kx = Ring(ring.p, ring.m, 0)
    r0 = cyclic_quotient(kx, [str(p) for p in i_polys]) if i_texts else cyclic_quotient(kx, [])
    if not is_zero_module(r0):
        dim0 = int(dimension(r0))
        cm0 = depth(r0) == dim0
        expected.append(("isRCM_P", cm0, DERIVED))
        if cm0:
            expected.append(("rdimP", dim0, DERIVED))
    return CorpusEntry(name, module, tuple(expected))


def paper_example(name: str, p: int = DEFAULT_PRIME) -> CorpusEntry:
    """The two worked quotient-ring fixtures with their published values."""
    if name == "ex35":
        ring = Ring(p, 2, 2)
        module = cyclic_quotient(ring, ["x1^2", "x1*x2"])
        expected = (
            ("dim", 3, PAPER),
            ("depth", 2, PAPER),
            ("isCM", False, PAPER),
            ("gradeP", 0, PAPER),
            ("cdP", 1, PAPER),
            ("gradeQ", 2, PAPER),
            ("cdQ", 2, PAPER),
            ("isRCM_Q", True, PAPER),
            ("rdimQ", 2, PAPER),
            ("isRCM_P", False, PAPER),
        )
        return CorpusEntry("ex35", module, expected)
    if name.startswith("ex36"):
        m = int(name.split("_")[1]) if "_" in name else 1
        if m < 1:
            raise ValueError("ex36 requires m >= 1")
        ring = Ring(p, m, 1)
        rels = ["x%d*y1" % (i + 1) for i in range(m)] + ["y1^2"]
        module = cyclic_quotient(ring, rels)
        expected = (
            ("dim", m, PAPER),
            ("depth", 0, PAPER),
            ("isCM", m == 0, PAPER),
            ("gradeQ", 0, PAPER),
            ("cdQ", 0, PAPER),
            ("isRCM_Q", True, PAPER),
            ("rdimQ", 0, PAPER),
            ("gradeP", 0, PAPER),
            ("cdP", m, PAPER),
            ("isRCM_P", False, PAPER),
        )
        return CorpusEntry(name, module, expected)
    raise ValueError("unknown example %r" % name)


def hypersurface_entry(name: str, ring: Ring, relation: str, expected=()) -> CorpusEntry:
    return CorpusEntry(name, cyclic_quotient(ring, [relation]), tuple(expected))


def random_module(seed: int, m: int = 2, n: int = 2, relations: int = 2,
                  max_degree: int = 2, p: int = DEFAULT_PRIME) -> CorpusEntry:
    """Seeded random bihomogeneous presentation; bidegree is drawn first and
    coefficients second so every entry is a valid bigraded module.  No
    expected values: used by the identity/property suites only."""
    ring = Ring(p, m, n)
    rng = random.Random(seed)
    ambient = FreeModule(ring, ((0, 0),))
    columns = []
    for _ in range(relations):
        dx = rng.randint(0, max_degree)
        dy = rng.randint(0, max_degree)
        if dx == 0 and dy == 0:
            dx = 1
        entries = {}
        monos = [
            ex + ey
            for ex in monomials_of_degree(m, dx)
            for ey in monomials_of_degree(n, dy)
        ]
        for mono in monos:
            if rng.random() < 0.5:
                c = rng.randrange(1, p)
                entries[(0, mono)] = c
        if not entries:
            mono = rng.choice(monos)
            entries[(0, mono)] = rng.randrange(1, p)
        columns.append(Vector(ambient, entries))
    module = PresentedModule(ambient, Matrix.from_columns(ambient, columns))
    return CorpusEntry("random_%d" % seed, module, ())


def default_corpus(p: int = DEFAULT_PRIME):
    """The fixture corpus used by the identity and cross-check suites."""
    r22 = Ring(p, 2, 2)
    r11 = Ring(p, 1, 1)
    entries = [
        paper_example("ex35", p),
        paper_example("ex36_1", p),
        paper_example("ex36_2", p),
        paper_example("ex36_3", p),
        free_module_entry("free_rank1", r22, [(0, 0)]),
        free_module_entry("free_twisted", r11, [(1, 1), (0, 2)]),
        tensor_module("tensor_y1sq", r22, [], ["y1^2"]),
        tensor_module("tensor_x1sq", r22, ["x1^2"], []),
        tensor_module("tensor_xy_hyper", r22, ["x1*x2"], ["y1*y2"]),
        tensor_module("tensor_ex35_y1sq", r22, ["x1^2", "x1*x2"], ["y1^2"]),
        tensor_module("tensor_noncm_y", r22, [], ["y1^2", "y1*y2"]),
        tensor_module("tensor_SmodP", r22, ["x1", "x2"], []),
        tensor_module("tensor_SmodQ", r22, [], ["y1", "y2"]),
        tensor_module("lemma34_x1sq", r11, ["x1^2"], []),
        hypersurface_entry(
            "hypersurface_11",
            r11,
            "x1*y1",
            (
                ("dim", 1, DERIVED),
                ("isCM", True, DERIVED),
                ("isRCM_Q", False, PAPER),
                ("isRCM_P", False, PAPER),
            ),
        ),
        hypersurface_entry(
            "hypersurface_22",
            r22,
            "x1*y1",
            (("dim", 3, DERIVED), ("isCM", True, DERIVED), ("isRCM_Q", False, DERIVED)),
        ),
        random_module(0, m=2, n=2, relations=2, max_degree=2, p=p),
        random_module(1, m=2, n=2, relations=3, max_degree=2, p=p),
    ]
    return entries


def corpus_entry(name: str, p: int = DEFAULT_PRIME) -> CorpusEntry:
    for entry in default_corpus(p):
        if entry.name == name:
            return entry
    raise KeyError(name)
