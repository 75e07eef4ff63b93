"""Exact kernel for bigraded modules over K[x1..xm, y1..yn] with K = Z/p:
Groebner bases, minimal free resolutions, numerical invariants, graded
local-cohomology components and relative Cohen-Macaulay analysis."""

from .ring import (
    DEFAULT_PRIME,
    AlgebraError,
    FreeModule,
    Matrix,
    NotBihomogeneousError,
    Polynomial,
    PolynomialParseError,
    Ring,
    ShapeMismatchError,
    Vector,
    parse_polynomial,
)
from .groebner import (
    FreeResolution,
    GroebnerBasis,
    PresentedModule,
    ResolutionLengthError,
    buchberger,
    free_resolution,
    in_submodule,
    is_zero_module,
    kernel_of_map,
    minimal_generators,
    minimal_presentation,
    normal_form,
    projective_dimension,
    syzygy_module,
)
from .invariants import (
    GradeInfiniteError,
    HilbertSeries,
    ZeroModuleError,
    betti_numbers,
    cohomological_dimension,
    depth,
    dimension,
    ext_module,
    grade,
    grade_via_ext,
    graded_dimension,
    hilbert_series,
    minimal_generator_count,
    multiplicity,
    quotient_by_ideal,
    regularity,
)
from .localcoh import (
    KernelNotFreeError,
    NotRelativeCMError,
    check_relative_cm,
    default_j_window,
    lc_component,
    mu_window_fit,
    regularity_bound_constant,
    regularity_profile,
    theorem22_resolution,
)
from .oracle import cross_check, lc_piece_via_duality, strand_module
from .rcm import (
    NotCMError,
    RCMReport,
    SearchExhaustedError,
    canonical_dual,
    descent_chain,
    find_regular_element,
    maximal_rcm_check,
    rcm_report,
)
from .corpus import CorpusEntry, corpus_entry, default_corpus
from .modfile import (
    DegreeInconsistentError,
    ParseError,
    module_to_json,
    module_to_text,
    parse_module_file,
)

__all__ = [name for name in dir() if not name.startswith("_")]
