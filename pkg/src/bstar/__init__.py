"""Exact star operation and Thom-Sebastiani functional equations for reduced Bernstein-Sato polynomials."""

from .algebra import MPoly, divide_in_var, exact_div, partial, shift_expand
from .certify import (
    Certificate,
    EulerCertificate,
    Report,
    brieskorn_pham,
    compose,
    euler_field,
    integer_check,
    simple_root_shortcut,
    suspension_certificate,
    verify_certificate,
    verify_euler,
)
from .parsing import parse_factored, parse_operator, parse_poly
from .pfs import PowerElement, apply, apply_to_polynomial, equal, mk_power
from .star import (
    CofactorPair,
    FactoredPoly,
    cofactors_sum_form,
    cofactors_theorem_form,
    gcd_factored,
    lcm_factored,
    star,
    star_oracle,
)
from .weyl import WeylOp, eval_bipoly_at_operator, op_add, op_mul, substitute_parameter

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "CofactorPair",
    "EulerCertificate",
    "FactoredPoly",
    "MPoly",
    "PowerElement",
    "Report",
    "WeylOp",
    "apply",
    "apply_to_polynomial",
    "brieskorn_pham",
    "cofactors_sum_form",
    "cofactors_theorem_form",
    "compose",
    "divide_in_var",
    "equal",
    "euler_field",
    "eval_bipoly_at_operator",
    "exact_div",
    "gcd_factored",
    "integer_check",
    "lcm_factored",
    "mk_power",
    "op_add",
    "op_mul",
    "parse_factored",
    "parse_operator",
    "parse_poly",
    "partial",
    "shift_expand",
    "simple_root_shortcut",
    "star",
    "star_oracle",
    "substitute_parameter",
    "suspension_certificate",
    "verify_certificate",
    "verify_euler",
]
