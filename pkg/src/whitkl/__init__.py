"""Exact Whittaker Kazhdan-Lusztig polynomials and character formulas
over crystallographic root systems, for arbitrary infinitesimal characters."""

from .charformula import (
    CharacterFormula,
    invert_multiplicities,
    regular_formula,
    singular_formula,
    verma_mode,
)
from .cosetlab import (
    CosetStep,
    IntegralData,
    IntegralModel,
    StabilizerData,
    ThetaCosets,
    build_integral_model,
    build_theta_cosets,
    conjugate_model,
    descent_chain,
    integral_data,
    stabilizer_data,
)
from .heckemodule import (
    HeckeElt,
    SpaceMismatchError,
    delta,
    global_tag,
    model_tag,
    restrict_lambda,
    right_mult_simple,
    t_alpha,
    t_alpha_model,
)
from .klengine import (
    KLTable,
    build_kl_table,
    kl_basis_model,
    kl_classical_relation_check,
    phi_direct,
    phi_transport,
)
from .laurent import LaurentPoly
from .rootsystem import (
    Classification,
    Kind,
    RootSystem,
    Weight,
    WeightFlags,
    build_root_system,
    classify,
    pair,
    weight_flags,
)
from .weylgroup import WeylElt, WeylGroup, enumerate_group

__version__ = "0.1.0"

__all__ = [
    "CharacterFormula",
    "Classification",
    "CosetStep",
    "HeckeElt",
    "IntegralData",
    "IntegralModel",
    "KLTable",
    "Kind",
    "LaurentPoly",
    "RootSystem",
    "SpaceMismatchError",
    "StabilizerData",
    "ThetaCosets",
    "Weight",
    "WeightFlags",
    "WeylElt",
    "WeylGroup",
    "build_integral_model",
    "build_kl_table",
    "build_root_system",
    "build_theta_cosets",
    "classify",
    "conjugate_model",
    "delta",
    "descent_chain",
    "enumerate_group",
    "global_tag",
    "integral_data",
    "invert_multiplicities",
    "kl_basis_model",
    "kl_classical_relation_check",
    "model_tag",
    "pair",
    "phi_direct",
    "phi_transport",
    "regular_formula",
    "restrict_lambda",
    "right_mult_simple",
    "singular_formula",
    "stabilizer_data",
    "t_alpha",
    "t_alpha_model",
    "verma_mode",
    "weight_flags",
]
