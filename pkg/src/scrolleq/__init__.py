"""Defining equations for rational normal scrolls, with verification tooling."""

from .polyring import (
    GF,
    QQ,
    VAR_S,
    VAR_T,
    VAR_V,
    VAR_W,
    VAR_Z,
    ZZ,
    Domain,
    DomainMismatchError,
    Monomial,
    Polynomial,
    VarId,
    binomial,
    eval_point,
    format_poly,
    is_prime,
    monomial,
    poly_add,
    poly_mul,
    poly_pow,
    reduce_mod,
    substitute,
    t_var,
    u_var,
    x_var,
)
from .scroll import (
    BridgeMeta,
    CatalecticantMatrix,
    EquationSet,
    ScrollProfile,
    WeightGroup,
    block_degree,
    bridge,
    bridge_meta,
    bridge_via_lists,
    build_profile,
    catalecticant,
    curve_equation,
    equation_set,
    g_polynomial,
    generator_count,
    minors_2x2,
    weight_groups,
)
from .textio import (
    ParseContext,
    ParseError,
    parse_poly,
    poly_from_json,
    poly_to_json,
    poly_to_json_text,
)
from .verify import (
    BudgetExceededError,
    VarietyReport,
    check_bridge_determinant_power,
    check_bridge_scroll_vanishing,
    check_parametrization,
    compare_varieties,
    enumerate_variety,
    generic_minor,
    plucker_identity,
    projective_size,
    sample_scroll_points,
    schwartz_zippel_equal,
    scroll_param_map,
)

__version__ = "0.1.0"
