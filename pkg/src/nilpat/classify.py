"""Classification of all irreducible patterns of a small order over a list
of primes."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence

from . import catalog
from .analysis import PN, UNKNOWN, decide_pn
from .groebner import DEFAULT_BUDGET
from .pattern import ZnzPattern, enumerate_irreducible, parse_pattern
from .search import DEFAULT_SEARCH_BUDGET

SUPPORTED_ORDERS = (2, 3)
MAX_PRIME = 101


def worker_count() -> int:
    raw = os.environ.get("NILPAT_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


@dataclass
class ClassRow:
    pattern: ZnzPattern
    label: Optional[str]
    group: str
    verdicts: Dict[int, str] = dc_field(default_factory=dict)
    certificates: Dict[int, str] = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern.render(),
            "label": self.label,
            "group": self.group,
            "verdicts": {str(p): v for p, v in self.verdicts.items()},
            "certificates": {str(p): c for p, c in self.certificates.items()},
        }


@dataclass
class ClassificationTable:
    order: int
    primes: List[int]
    rows: List[ClassRow]

    def pn_classes(self, p: int) -> List[ClassRow]:
        return [r for r in self.rows if r.verdicts.get(p) == PN]

    def to_dict(self) -> dict:
        return {"order": self.order, "primes": list(self.primes), "classes": [r.to_dict() for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def render_text(self) -> str:
        head = ["pattern", "label", "group"] + [f"p={p}" for p in self.primes]
        lines = ["\t".join(head)]
        short = {PN: "PN", UNKNOWN: "??"}
        for r in self.rows:
            cells = [r.pattern.render().replace("\n", "/"), r.label or "-", r.group]
            cells += [short.get(r.verdicts[p], "no") for p in self.primes]
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"


def _group(A: ZnzPattern) -> tuple:
    if A.n == 3:
        label = catalog.label_of(A)
        return label, catalog.group_of(label)
    if A.n == 2:
        return None, ("all_primes" if catalog.expected_pn_order2(A, 2) else catalog.NOT_PN_GROUP)
    return None, "unlisted"


def _cell(args):
    text, p, budget, gb_budget = args
    v = decide_pn(parse_pattern(text), p, budget=budget, gb_budget=gb_budget)
    return v.status, v.certificate.kind if v.certificate else None


def classify(order: int, primes: Sequence[int], budget: int = DEFAULT_SEARCH_BUDGET,
             gb_budget: int = DEFAULT_BUDGET, workers: Optional[int] = None) -> ClassificationTable:
    if order not in SUPPORTED_ORDERS:
        raise ValueError(f"classification supports orders {SUPPORTED_ORDERS}")
    primes = list(primes)
    classes = enumerate_irreducible(order)
    cells = [(A.render(), p, budget, gb_budget) for A in classes for p in primes]
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_cell, cells))
    else:
        results = [_cell(c) for c in cells]
    rows = []
    it = iter(results)
    for A in classes:
        label, group = _group(A)
        row = ClassRow(A, label, group)
        for p in primes:
            status, kind = next(it)
            row.verdicts[p] = status
            row.certificates[p] = kind
        rows.append(row)
    return ClassificationTable(order, primes, rows)


def golden_table(order: int, primes: Sequence[int]) -> dict:
    """Expected verdicts from the known prime conditions alone (no search)."""
    classes = []
    for A in enumerate_irreducible(order):
        label, group = _group(A)
        if order == 3:
            expect = {str(p): catalog.expected_pn(label, p) for p in primes}
        else:
            expect = {str(p): catalog.expected_pn_order2(A, p) for p in primes}
        classes.append({"pattern": A.render(), "label": label, "group": group, "pn": expect})
    return {"order": order, "primes": list(primes), "classes": classes}
