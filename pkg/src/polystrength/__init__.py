"""Exact strength computations for homogeneous forms, torsor calculus and
finite-level GL case studies."""

__version__ = "0.1.0"

from .fields import GF, QQ, FieldSpecError, UndecidedError, parse_field_spec  # noqa: E402
from .poly import Poly, parse_poly  # noqa: E402
from .groebner import buchberger, eliminate, ideal_member, solvable_over_closure  # noqa: E402
from .strength import (  # noqa: E402
    Form,
    astr,
    extension_inequality_check,
    extension_lift_search,
    str_bounds,
    str_exact_finite_field,
    strength,
    theta_system,
)
from .torsor import TorsorAlgebra, delta, directional_derivative, embed_witness  # noqa: E402

__all__ = [
    "GF", "QQ", "FieldSpecError", "UndecidedError", "parse_field_spec",
    "Poly", "parse_poly",
    "buchberger", "eliminate", "ideal_member", "solvable_over_closure",
    "Form", "astr", "extension_inequality_check", "extension_lift_search",
    "str_bounds", "str_exact_finite_field", "strength", "theta_system",
    "TorsorAlgebra", "delta", "directional_derivative", "embed_witness",
]
