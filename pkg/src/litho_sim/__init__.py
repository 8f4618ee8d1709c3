"""Quantum photolithography with nonmaximally entangled two-mode photon states.

Closed-form deposition rates, an exact two-mode Fock-space oracle, and
pseudo-Fourier pattern synthesis.
"""

from litho_sim.errors import (
    DegenerateBranchError,
    LithoError,
    NoFringeError,
    PhotonCutoffError,
    PreconditionError,
)
from litho_sim.fock import (
    MAX_PHOTONS,
    NmesSpec,
    TwoModeFockState,
    apply_e_power,
    binomial,
    dosing_expectation,
    dosing_matrix_element,
    make_nmes_state,
    nmes_kets,
    superposition_state,
)
from litho_sim.deposition import (
    DepositionCurve,
    ResolutionScheme,
    deposition_general,
    deposition_mes,
    deposition_nmes,
    deposition_resonant,
    deposition_resonant_substituted,
    effective_resolution,
    matrix_element_general,
    sample_curve,
)
from litho_sim.pattern import (
    Branch,
    FourierPatternSpec,
    SuperpositionRecipe,
    TargetCoeffs,
    exposure_curve,
    fit_target,
    fourier_form,
    fringe_halfperiod,
    pattern_error,
    sinphi_recipe,
    sinphi_target_coeffs,
)

__version__ = "0.1.0"
