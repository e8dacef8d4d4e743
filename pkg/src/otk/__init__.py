"""Orthogonality and unitary dilation toolkit for complex matrices.

Birkhoff-James orthogonality verdicts with certificates, numerical-range
polygons, Schaffer-type and commuting unitary dilations on finite windows,
and seeded property suites tying them together.
"""

from .ando import (
    AndoBundle,
    AndoWitness,
    BrehmerReport,
    RegularOrthReport,
    ando_pair,
    brehmer_check,
    group_twist,
    regular_orth_predicate,
    schaffer_ST_criterion,
    shift_insert_map,
)
from .bjorth import (
    GridOracleConfig,
    NormAttainmentBasis,
    OrthVerdict,
    approx_grid_oracle,
    bj_grid_oracle,
    epsilon_min,
    is_approx_orthogonal,
    is_bj_orthogonal,
    norm_attainment_basis,
    norm_preserving_extension,
)
from .catalog import reproduce_scenario, scenario_ids
from .matcore import (
    DEFAULT_TOL,
    MatrixFormatError,
    ToleranceConfig,
    inner,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    op_norm,
    save_matrix,
)
from .numrange import (
    NRPolygon,
    NotInRangeError,
    Verdict,
    WitnessError,
    ZeroVerdict,
    maximal_numerical_range,
    mnr_sampling_oracle,
    nr_boundary,
    nr_contains_zero,
    nr_meets_nonpositive_reals,
    nr_witness,
    polygon_csv,
    polygon_svg,
    ray_probe,
    zero_margin,
)
from .properties import PropertyResult, run_suite, suite_names
from .rho import (
    KappaReport,
    PermutationSpec,
    RhoExampleBundle,
    kappa_bound,
    nilpotent_rho_example,
    permutation_window,
    rho_orth_transfer_check,
    unitary_from_permutation,
)
from .schaffer import (
    DilationWindow,
    GeneralizedParams,
    HalmosBlock,
    PowerDilationReport,
    adjoint_trick_pair,
    defect_pair,
    forced_orthogonal_pair,
    generalized_schaffer,
    halmos_block,
    halmos_orth_criterion,
    hat_pair,
    schaffer_window,
    verify_power_dilation,
)

__version__ = "0.1.0"

__all__ = [
    "AndoBundle",
    "AndoWitness",
    "BrehmerReport",
    "DEFAULT_TOL",
    "DilationWindow",
    "GeneralizedParams",
    "GridOracleConfig",
    "HalmosBlock",
    "KappaReport",
    "MatrixFormatError",
    "NRPolygon",
    "NormAttainmentBasis",
    "NotInRangeError",
    "OrthVerdict",
    "PermutationSpec",
    "PowerDilationReport",
    "PropertyResult",
    "RegularOrthReport",
    "RhoExampleBundle",
    "ToleranceConfig",
    "Verdict",
    "WitnessError",
    "ZeroVerdict",
    "adjoint_trick_pair",
    "ando_pair",
    "approx_grid_oracle",
    "bj_grid_oracle",
    "brehmer_check",
    "defect_pair",
    "epsilon_min",
    "forced_orthogonal_pair",
    "generalized_schaffer",
    "group_twist",
    "halmos_block",
    "halmos_orth_criterion",
    "hat_pair",
    "inner",
    "is_approx_orthogonal",
    "is_bj_orthogonal",
    "kappa_bound",
    "load_matrix",
    "matrix_from_json",
    "matrix_to_json",
    "maximal_numerical_range",
    "mnr_sampling_oracle",
    "nilpotent_rho_example",
    "norm_attainment_basis",
    "norm_preserving_extension",
    "nr_boundary",
    "nr_contains_zero",
    "nr_meets_nonpositive_reals",
    "nr_witness",
    "op_norm",
    "permutation_window",
    "polygon_csv",
    "polygon_svg",
    "ray_probe",
    "regular_orth_predicate",
    "reproduce_scenario",
    "rho_orth_transfer_check",
    "run_suite",
    "save_matrix",
    "scenario_ids",
    "schaffer_ST_criterion",
    "schaffer_window",
    "shift_insert_map",
    "suite_names",
    "unitary_from_permutation",
    "verify_power_dilation",
    "zero_margin",
]
