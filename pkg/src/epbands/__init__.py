"""Band structures and degeneracy taxonomy for small non-Hermitian matrix models.

The package evaluates parametrized Hamiltonian families over a hybrid
(momentum, gain/loss) parameter plane, tracks their complex bands, and
classifies spectral degeneracies as diabolic points, exceptional points
with linear dispersion, or conventional square-root exceptional points.
"""

from epbands.linalg import (
    CubicCoeffs,
    Spectrum,
    eig_dense,
    geometric_multiplicity,
    numerical_rank,
    pair_continuation,
    solve_cubic,
)
from epbands.models import (
    BlockStackSpec,
    HamiltonianFamily,
    ModelParams,
    PauliPerturbation,
    build_block_stack,
    build_h3,
    build_ha_double_prime,
    build_ha_prime,
    build_hb_prime,
    build_imag_cone,
    char_poly_h3,
    h3_cone_exact,
    h3_cone_ray,
    make_family,
    nonlinear_eig_ha,
    two_band_generic,
)
from epbands.bloch import BlochSpec, SweepResult, band_structure, build_bloch, hybrid_sweep
from epbands.analysis import (
    ClassifyConfig,
    ConeFit,
    DegeneracyCandidate,
    DegeneracyReport,
    classify_degeneracy,
    find_degeneracies,
    fit_cone,
    local_reality,
    puiseux_diagnostic,
)
from epbands.isospectral import IsospectralReport, free_space_equivalence, verify_isospectral

__version__ = "0.1.0"

__all__ = [
    "BlochSpec",
    "BlockStackSpec",
    "ClassifyConfig",
    "ConeFit",
    "CubicCoeffs",
    "DegeneracyCandidate",
    "DegeneracyReport",
    "HamiltonianFamily",
    "IsospectralReport",
    "ModelParams",
    "PauliPerturbation",
    "Spectrum",
    "SweepResult",
    "band_structure",
    "build_bloch",
    "build_block_stack",
    "build_h3",
    "build_ha_double_prime",
    "build_ha_prime",
    "build_hb_prime",
    "build_imag_cone",
    "char_poly_h3",
    "classify_degeneracy",
    "eig_dense",
    "find_degeneracies",
    "fit_cone",
    "free_space_equivalence",
    "geometric_multiplicity",
    "h3_cone_exact",
    "h3_cone_ray",
    "hybrid_sweep",
    "local_reality",
    "make_family",
    "nonlinear_eig_ha",
    "numerical_rank",
    "pair_continuation",
    "puiseux_diagnostic",
    "solve_cubic",
    "two_band_generic",
    "verify_isospectral",
]
