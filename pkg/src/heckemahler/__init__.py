"""Exact continued fractions and irrationality exponents of Mahler-type
series evaluated at rational points.

The target number is xi = (b-1) * xi_s(1/b, 1/a), where xi_s is the series
attached to a Sturmian characteristic function with quadratic-irrational
slope and an intercept given by its numeration digits.  The package builds
its regular continued fraction exactly, computes the five classical
approximant families by three independent routes, and certifies everything
against direct interval evaluation of the series.
"""

from __future__ import annotations

from .errors import (
    DivergenceError,
    HeckeMahlerError,
    LengthCapExceeded,
    NonPositiveResidual,
    ParseError,
    SizeBudgetExceeded,
    UndecidableDigit,
    UndecidableLetter,
)
from .numbers import ExactFraction, QuadraticNumber, RealInterval
from .cf import Convergents, SlopeSpec, cf_extract, parse_slope, theta_interval
from .ostrowski import (
    DerivedSequences,
    DigitProvider,
    InterceptSpec,
    as_provider,
    digit_list,
    parse_intercept,
    validate_digits,
)
from .words import (
    BinaryWord,
    build_word_family,
    build_word_stats,
    periodic_value,
    sturmian_prefix,
    word_value,
)
from .expansion import (
    ElementSource,
    PartialQuotientStream,
    F_from_xi,
    contract,
    element_quads,
    expand_log,
    expand_xi,
    raw_stream,
    xi_from_F,
)
from .approximants import (
    FAMILY_NAMES,
    SigmaGamma,
    error_exponents,
    farey_chain,
    fraction_families,
    identity_difference,
    matrix_convergents,
    sigma_gamma,
)
from .analysis import (
    approximant_gap,
    eval_direct,
    eval_fast,
    eval_to_width,
    exponent_by_convergents,
    exponent_by_formula,
    floor_theta_plus_rho,
    oracle_quotients,
    verify_functional_equation,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryWord",
    "Convergents",
    "DerivedSequences",
    "DigitProvider",
    "DivergenceError",
    "ElementSource",
    "ExactFraction",
    "FAMILY_NAMES",
    "F_from_xi",
    "HeckeMahlerError",
    "InterceptSpec",
    "LengthCapExceeded",
    "NonPositiveResidual",
    "ParseError",
    "PartialQuotientStream",
    "QuadraticNumber",
    "RealInterval",
    "SigmaGamma",
    "SizeBudgetExceeded",
    "SlopeSpec",
    "UndecidableDigit",
    "UndecidableLetter",
    "approximant_gap",
    "as_provider",
    "build_word_family",
    "build_word_stats",
    "cf_extract",
    "contract",
    "digit_list",
    "element_quads",
    "error_exponents",
    "eval_direct",
    "eval_fast",
    "eval_to_width",
    "expand_log",
    "expand_xi",
    "exponent_by_convergents",
    "exponent_by_formula",
    "farey_chain",
    "floor_theta_plus_rho",
    "fraction_families",
    "identity_difference",
    "matrix_convergents",
    "oracle_quotients",
    "parse_intercept",
    "parse_slope",
    "periodic_value",
    "raw_stream",
    "sigma_gamma",
    "sturmian_prefix",
    "theta_interval",
    "validate_digits",
    "verify_functional_equation",
    "word_value",
    "xi_from_F",
]
