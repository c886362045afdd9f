"""Exact-arithmetic toolkit for Macaulay inverse systems of graded
artinian algebras: h-vectors of level algebras, annihilators, and
Weak Lefschetz certification."""

from .fields import DEFAULT_PRIME, QQ, PrimeField
from .forms import (
    Form,
    differentiate,
    form_to_str,
    monomials_of_degree,
    parse_form,
    power_of_linear,
    random_form,
)
from .hvectors import (
    count_maxima,
    count_plateau_maxima,
    first_difference,
    is_differentiable,
    is_o_sequence,
    is_si_sequence,
    is_unimodal,
    lemma1_predict,
    lift_hvector,
    macaulay_next_max,
)
from .linalg import (
    DEFAULT_POLICY,
    EXACT_POLICY,
    ExactMatrix,
    RankPolicy,
    kernel_basis,
    rank,
)
from .modules import (
    GradedBasis,
    InverseSystem,
    annihilator_component,
    catalecticant,
    derivative_space,
    h_vector,
    level_type,
    load_system,
    save_system,
)
from .symbolic import ParamMatrix, symbolic_rank
from .constructions import (
    ConstructionError,
    ConstructionReport,
    PointSet,
    add_generic_form,
    add_power_sum,
    build_arithmetic_tail,
    build_example2,
    build_example7,
    build_n_maxima,
    build_prop8,
    build_remark9,
    hilbert_function_of_points,
    lift_codim,
    points_from_staircase,
    points_on_rational_curve,
    powers_module,
)
from .wlp import WlpCertificate, mult_map_matrix, wlp_certify, wlp_probe

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRIME",
    "QQ",
    "PrimeField",
    "Form",
    "differentiate",
    "form_to_str",
    "monomials_of_degree",
    "parse_form",
    "power_of_linear",
    "random_form",
    "count_maxima",
    "count_plateau_maxima",
    "first_difference",
    "is_differentiable",
    "is_o_sequence",
    "is_si_sequence",
    "is_unimodal",
    "lemma1_predict",
    "lift_hvector",
    "macaulay_next_max",
    "DEFAULT_POLICY",
    "EXACT_POLICY",
    "ExactMatrix",
    "RankPolicy",
    "kernel_basis",
    "rank",
    "GradedBasis",
    "InverseSystem",
    "annihilator_component",
    "catalecticant",
    "derivative_space",
    "h_vector",
    "level_type",
    "load_system",
    "save_system",
    "ParamMatrix",
    "symbolic_rank",
    "ConstructionError",
    "ConstructionReport",
    "PointSet",
    "add_generic_form",
    "add_power_sum",
    "build_arithmetic_tail",
    "build_example2",
    "build_example7",
    "build_n_maxima",
    "build_prop8",
    "build_remark9",
    "hilbert_function_of_points",
    "lift_codim",
    "points_from_staircase",
    "points_on_rational_curve",
    "powers_module",
    "WlpCertificate",
    "mult_map_matrix",
    "wlp_certify",
    "wlp_probe",
]
