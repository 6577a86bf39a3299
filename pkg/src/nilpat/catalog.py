"""Reference data for the order-2 and order-3 classification.

The 30 irreducible 3x3 patterns are grouped by their loopless digraph
(case 1..5) and loop placement; labels read ``"<case>.<index>"``.  Each
class that is potentially nilpotent over some Z_p belongs to one of four
prime conditions.  Hand-built realizations carry the primes they are valid
for; entries may be fractions, read as field inverses.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from .analysis import roots_of_unity_split
from .pattern import ZnzPattern, canonicalize, parse_pattern

CASE_PATTERNS: Dict[str, str] = {
    "1.1": "0*0/00*/*00", "1.2": "**0/00*/*00", "1.3": "**0/0**/*00", "1.4": "**0/0**/*0*",
    "2.1": "0*0/*0*/0*0", "2.2": "**0/*0*/0*0", "2.3": "0*0/***/0*0",
    "2.4": "**0/***/0*0", "2.5": "**0/*0*/0**", "2.6": "**0/***/0**",
    "3.1": "0*0/*0*/*00", "3.2": "**0/*0*/*00", "3.3": "0*0/***/*00", "3.4": "0*0/*0*/*0*",
    "3.5": "**0/***/*00", "3.6": "**0/*0*/*0*", "3.7": "0*0/***/*0*", "3.8": "**0/***/*0*",
    "4.1": "0**/*0*/*00", "4.2": "***/*0*/*00", "4.3": "0**/***/*00", "4.4": "0**/*0*/*0*",
    "4.5": "***/***/*00", "4.6": "***/*0*/*0*", "4.7": "0**/***/*0*", "4.8": "***/***/*0*",
    "5.1": "0**/*0*/**0", "5.2": "***/*0*/**0", "5.3": "***/***/**0", "5.4": "***/***/***",
}

# prime condition name -> (labels, predicate on p)
GROUPS: Dict[str, Tuple[Tuple[str, ...], Callable[[int], bool]]] = {
    "all_primes": (("2.1", "3.6", "3.7", "5.3"), lambda p: True),
    "odd_primes": (("2.5", "4.5", "4.6", "4.8", "5.1", "5.4"), lambda p: p != 2),
    "primes_above_3": (("2.6", "3.8", "4.7"), lambda p: p not in (2, 3)),
    "cube_roots_of_unity": (("1.4",), lambda p: roots_of_unity_split(3, p)),
}

NOT_PN_GROUP = "not_pn"


def case_pattern(label: str) -> ZnzPattern:
    return parse_pattern(CASE_PATTERNS[label].replace("/", "\n"))


def group_of(label: str) -> str:
    for name, (labels, _) in GROUPS.items():
        if label in labels:
            return name
    return NOT_PN_GROUP


def expected_pn(label: str, p: int) -> bool:
    group = group_of(label)
    if group == NOT_PN_GROUP:
        return False
    return GROUPS[group][1](p)


FULL_2X2 = parse_pattern("**\n**")


def expected_pn_order2(A: ZnzPattern, p: int) -> bool:
    """Only the full pattern, for every prime."""
    return A.stars == FULL_2X2.stars


# (label, matrix, prime condition description, predicate)
_F = Fraction
REALIZATIONS: List[Tuple[str, List[list], str, Callable[[int], bool]]] = [
    ("2x2", [[1, 1], [-1, -1]], "any p", lambda p: True),
    ("2.1", [[0, 1, 0], [1, 0, 1], [0, -1, 0]], "any p", lambda p: True),
    ("2.5", [[1, _F(-1, 2), 0], [1, 0, _F(1, 2)], [0, -1, -1]], "p != 2", lambda p: p != 2),
    ("2.6", [[2, 2, 0], [-4, -3, 1], [0, 1, 1]], "p not in {2, 3}", lambda p: p not in (2, 3)),
    ("3.6", [[-1, -1, 0], [1, 0, 1], [1, 0, 1]], "any p", lambda p: True),
    ("3.7", [[0, -1, 0], [1, -1, 1], [1, 0, 1]], "any p", lambda p: True),
    ("3.8", [[-2, -1, 0], [3, 1, 1], [1, 0, 1]], "p not in {2, 3}", lambda p: p not in (2, 3)),
    ("4.5", [[1, 1, 1], [1, -1, -1], [2, 0, 0]], "p != 2", lambda p: p != 2),
    ("4.6", [[1, 1, 1], [1, 0, _F(1, 2)], [-2, 0, -1]], "p != 2", lambda p: p != 2),
    ("4.7", [[0, -2, 1], [1, -1, _F(3, 2)], [1, 0, 1]], "p != 3", lambda p: p != 3),
    ("4.8", [[-2, -4, 1], [1, 1, _F(1, 4)], [1, 0, 1]], "p >= 3", lambda p: p >= 3),
    ("5.1", [[0, -1, 1], [4, 0, 2], [2, 1, 0]], "p != 2", lambda p: p != 2),
    ("5.3", [[1, 1, 1], [-1, -1, -1], [1, 1, 0]], "any p", lambda p: True),
    ("5.4", [[1, 1, 1], [1, 1, 1], [-2, -2, -2]], "p >= 3", lambda p: p >= 3),
]


# The displayed 4.5 matrix has trace 0 but F_2 = -4, so it is nilpotent only
# in characteristic 2.  Flipping the sign of the (3,1) entry gives a
# realization valid for every odd p.
CORRECTED_REALIZATIONS: Dict[str, List[list]] = {
    "4.5": [[1, 1, 1], [1, -1, -1], [-2, 0, 0]],
}


def realization_pattern(label: str) -> ZnzPattern:
    return FULL_2X2 if label == "2x2" else case_pattern(label)


@lru_cache(maxsize=None)
def _labels_by_class() -> Dict[frozenset, str]:
    return {canonicalize(case_pattern(label)).stars: label for label in CASE_PATTERNS}


def label_of(A: ZnzPattern) -> Optional[str]:
    """Case label of the class containing ``A`` (order 3 only)."""
    if A.n != 3:
        return None
    return _labels_by_class().get(canonicalize(A.unsigned()).stars)
