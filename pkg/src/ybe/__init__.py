"""Exact construction and verification of Yang-Baxter solutions built
from matrix symmetric pairs.

The package carries four layers:

* :mod:`ybe.scalars` -- exact rationals, polynomials and rational
  functions in (s, u, v, h), and truncated h-series;
* :mod:`ybe.tensor` -- leg-structured matrices, Kronecker products,
  embeddings, the flip operator;
* :mod:`ybe.liepairs` / :mod:`ybe.catalog` -- symmetric pairs of matrix
  Lie algebras, their represented invariants, and the closed-form
  parametric R-matrix families;
* :mod:`ybe.verifiers` / :mod:`ybe.semiclassical` / :mod:`ybe.grassmann`
  -- the classical and quantum Yang-Baxter checks, identity suites,
  unitarity, h-expansions, coefficient recovery, and composed operators
  on Grassmannian tangent spaces.

Every computation is exact; a check passes only when its residual is
identically zero (or zero at every sampled rational point).
"""

from .catalog import (
    CatalogEntry,
    CoefficientPair,
    ENTRY_IDS,
    ParametricRMatrix,
    assemble_R,
    build_GC_closed,
    classical_r,
    coefficients,
    crosscheck_closed_vs_computed,
    list_entries,
    shift_constant,
)
from .grassmann import (
    ComposedRMatrix,
    build_leg_maps,
    check_qybe_grassmann,
    compose_R,
    compose_variant,
    expansion_check_grassmann,
)
from .liepairs import (
    COMPLEX,
    CurvatureTensor,
    DivisionAlgebra,
    GeomPair,
    QUATERNION,
    REAL,
    SymmetricPair,
    build_CG,
    build_basis,
    check_splitting,
    curvature_from_pair,
    grassmann_pair,
    gram_and_dual,
    involution_apply,
    kappa,
    pair_for_entry,
    represent_CG,
    represented_casimir_k,
    verify_curvature_casimir,
)
from .scalars import (
    MultiPoly,
    Rational,
    RatFunc,
    TruncatedSeries,
    poly_gcd,
    poly_normalize,
    ratfunc,
    series_from_ratfunc,
)
from .semiclassical import (
    FitResult,
    SeriesRMatrix,
    check_classical_limit,
    expand_R,
    fit_entry,
    fit_shift_constant,
    read_off_Rk,
)
from .tensor import (
    LegMatrix,
    RATFUNC_RING,
    RATIONAL_RING,
    elementary,
    embed_on_legs,
    flip_operator,
    kron,
)
from .verifiers import (
    SamplerConfig,
    VerificationReport,
    check_cybe,
    check_cybe_index,
    check_identity_suite,
    check_qybe,
    check_unitarity,
)

__version__ = "0.1.0"
