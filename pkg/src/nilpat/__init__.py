"""Potential nilpotence of zero-nonzero and sign patterns over Z_p."""

__version__ = "0.1.0"

from .coefficients import PrimeField, QQ, field_of  # noqa: E402
from .pattern import ZnzPattern, parse_pattern  # noqa: E402
from .charideal import char_coefficients, check_nilpotent, pattern_ideal  # noqa: E402
from .analysis import Verdict, decide_pn  # noqa: E402

__all__ = [
    "PrimeField", "QQ", "field_of", "ZnzPattern", "parse_pattern",
    "char_coefficients", "check_nilpotent", "pattern_ideal", "Verdict", "decide_pn",
]
