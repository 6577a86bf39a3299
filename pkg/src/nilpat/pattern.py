"""Zero-nonzero and sign patterns and their digraph combinatorics."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

Position = Tuple[int, int]

MAX_ORDER = 8
MAX_ENUM_ORDER = 4


class PatternError(ValueError):
    pass


class RaggedInput(PatternError):
    pass


class MixedAlphabet(PatternError):
    pass


class BadSymbol(PatternError):
    pass


class OrderTooLarge(PatternError):
    pass


class OrderTooSmall(PatternError):
    pass


_MINUS = ("-", "−")


@dataclass(frozen=True)
class ZnzPattern:
    """An ``n x n`` pattern; ``stars`` are 1-based positions.  ``signs`` is
    ``None`` for a znz-pattern, else a map star -> +1/-1."""

    n: int
    stars: FrozenSet[Position]
    signs: Optional[Tuple[Tuple[Position, int], ...]] = None

    def __post_init__(self):
        stars = frozenset((int(i), int(j)) for i, j in self.stars)
        for i, j in stars:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise PatternError(f"position {(i, j)} outside a {self.n}x{self.n} pattern")
        object.__setattr__(self, "stars", stars)
        if self.signs is not None:
            signs = dict(self.signs)
            if set(signs) != stars:
                raise PatternError("sign map must cover exactly the stars")
            if any(s not in (1, -1) for s in signs.values()):
                raise PatternError("signs must be +1 or -1")
            object.__setattr__(self, "signs", tuple(sorted(signs.items())))

    @classmethod
    def from_rows(cls, rows) -> "ZnzPattern":
        """Build from nested sequences or strings of ``*``/``0`` or ``+``/``-``/``0``."""
        return parse_pattern("\n".join("".join(str(c) for c in r) for r in rows))

    @classmethod
    def from_matrix(cls, matrix) -> "ZnzPattern":
        """The znz-pattern of a numeric matrix (nonzero -> star)."""
        n = len(matrix)
        return cls(n, frozenset((i + 1, j + 1) for i in range(n) for j in range(n) if matrix[i][j]))

    @property
    def is_signed(self) -> bool:
        return self.signs is not None

    def sign(self, pos: Position) -> int:
        if self.signs is None:
            return 1
        return dict(self.signs)[pos]

    @property
    def positions(self) -> Tuple[Position, ...]:
        """Stars in row-major order."""
        return tuple(sorted(self.stars))

    @property
    def loops(self) -> Tuple[int, ...]:
        return tuple(sorted(i for i, j in self.stars if i == j))

    def successors(self, i: int) -> List[int]:
        return sorted(j for a, j in self.stars if a == i)

    def arcs(self) -> FrozenSet[Position]:
        return self.stars

    def unsigned(self) -> "ZnzPattern":
        return ZnzPattern(self.n, self.stars)

    def relabel(self, perm) -> "ZnzPattern":
        """Apply ``P·A·Pᵀ`` where vertex ``v`` becomes ``perm[v-1]``."""
        m = {v + 1: perm[v] for v in range(self.n)}
        stars = frozenset((m[i], m[j]) for i, j in self.stars)
        signs = None
        if self.signs is not None:
            signs = tuple(((m[i], m[j]), s) for (i, j), s in self.signs)
        return ZnzPattern(self.n, stars, signs)

    def submatrix(self, vertices: Iterable[int]) -> "ZnzPattern":
        vs = sorted(vertices)
        idx = {v: k + 1 for k, v in enumerate(vs)}
        stars = frozenset((idx[i], idx[j]) for i, j in self.stars if i in idx and j in idx)
        signs = None
        if self.signs is not None:
            signs = tuple(((idx[i], idx[j]), s) for (i, j), s in self.signs if i in idx and j in idx)
        return ZnzPattern(len(vs), stars, signs)

    def render(self) -> str:
        rows = []
        for i in range(1, self.n + 1):
            row = []
            for j in range(1, self.n + 1):
                if (i, j) not in self.stars:
                    row.append("0")
                elif self.signs is None:
                    row.append("*")
                else:
                    row.append("+" if self.sign((i, j)) > 0 else "-")
            rows.append("".join(row))
        return "\n".join(rows)

    def __str__(self) -> str:
        return self.render()

    def bits(self) -> Tuple[int, ...]:
        """Row-major 0/1 indicator tuple; the canonical-form comparison key."""
        return tuple(int((i, j) in self.stars) for i in range(1, self.n + 1) for j in range(1, self.n + 1))


def parse_pattern(text: str) -> ZnzPattern:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise RaggedInput("empty pattern")
    n = len(lines)
    stars = set()
    signs: Dict[Position, int] = {}
    saw_star = saw_sign = False
    for i, line in enumerate(lines, 1):
        line = line.rstrip("\r")
        if len(line) != n:
            raise RaggedInput(f"line {i} has {len(line)} symbols, expected {n}")
        for j, ch in enumerate(line, 1):
            if ch == "0":
                continue
            if ch == "*":
                saw_star = True
                stars.add((i, j))
            elif ch == "+" or ch in _MINUS:
                saw_sign = True
                stars.add((i, j))
                signs[(i, j)] = 1 if ch == "+" else -1
            else:
                raise BadSymbol(f"bad symbol {ch!r} at row {i}, column {j}")
    if saw_star and saw_sign:
        raise MixedAlphabet("pattern mixes '*' with '+'/'-'")
    return ZnzPattern(n, frozenset(stars), tuple(signs.items()) if saw_sign else None)


# -- cycles and components ---------------------------------------------------------


def all_simple_cycles(A: ZnzPattern) -> List[Tuple[int, ...]]:
    """Every simple cycle (loops included), each rotated to start at its least
    vertex, sorted by (length, vertices)."""
    if A.n > MAX_ORDER:
        raise OrderTooLarge(f"order {A.n} exceeds {MAX_ORDER}")
    succ = {i: A.successors(i) for i in range(1, A.n + 1)}
    out = []
    for start in range(1, A.n + 1):
        # DFS over paths start -> ... using only vertices > start
        stack = [(start, (start,))]
        while stack:
            v, path = stack.pop()
            for w in succ[v]:
                if w == start:
                    out.append(path)
                elif w > start and w not in path:
                    stack.append((w, path + (w,)))
    return sorted(set(out), key=lambda c: (len(c), c))


def simple_cycles(A: ZnzPattern, k: int) -> List[Tuple[int, ...]]:
    if not 1 <= k <= A.n:
        raise ValueError(f"cycle length {k} outside 1..{A.n}")
    return [c for c in all_simple_cycles(A) if len(c) == k]


def strongly_connected_components(A: ZnzPattern) -> List[FrozenSet[int]]:
    """Tarjan's algorithm; components come out in a topological order of the
    condensation (sources first)."""
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    on_stack = set()
    stack: List[int] = []
    comps: List[FrozenSet[int]] = []
    counter = 0

    def visit(v):
        nonlocal counter
        index[v] = low[v] = counter
        counter += 1
        stack.append(v)
        on_stack.add(v)
        for w in A.successors(v):
            if w not in index:
                visit(w)
                low[v] = min(low[v], low[w])
            elif w in on_stack:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = set()
            while True:
                w = stack.pop()
                on_stack.discard(w)
                comp.add(w)
                if w == v:
                    break
            comps.append(frozenset(comp))

    for v in range(1, A.n + 1):
        if v not in index:
            visit(v)
    # Tarjan emits sinks first
    return comps[::-1]


def is_irreducible(A: ZnzPattern) -> bool:
    comps = strongly_connected_components(A)
    return len(comps) == 1 and len(comps[0]) == A.n


def irreducible_components(A: ZnzPattern) -> List[ZnzPattern]:
    return [A.submatrix(c) for c in strongly_connected_components(A)]


def transversal_count(A: ZnzPattern) -> int:
    if A.n > MAX_ORDER:
        raise OrderTooLarge(f"order {A.n} exceeds {MAX_ORDER}")
    rows = [set(A.successors(i)) for i in range(1, A.n + 1)]
    return sum(1 for s in permutations(range(1, A.n + 1)) if all(s[i] in rows[i] for i in range(A.n)))


def transpose(A: ZnzPattern) -> ZnzPattern:
    stars = frozenset((j, i) for i, j in A.stars)
    signs = None if A.signs is None else tuple(((j, i), s) for (i, j), s in A.signs)
    return ZnzPattern(A.n, stars, signs)


def canonicalize(A: ZnzPattern) -> ZnzPattern:
    """Lexicographically least row-major indicator over all relabelings."""
    if A.n > MAX_ORDER:
        raise OrderTooLarge(f"order {A.n} exceeds {MAX_ORDER}")
    best = None
    for perm in permutations(range(1, A.n + 1)):
        B = A.relabel(perm)
        if best is None or B.bits() < best.bits():
            best = B
    return best


def equivalent(A: ZnzPattern, B: ZnzPattern) -> bool:
    return A.n == B.n and canonicalize(A.unsigned()).stars == canonicalize(B.unsigned()).stars


def an_family(n: int) -> ZnzPattern:
    """Loops everywhere, the superdiagonal, and the corner ``(n, 1)``."""
    if n < 3:
        raise OrderTooSmall("the family starts at n = 3")
    stars = {(i, i) for i in range(1, n + 1)}
    stars |= {(i, i + 1) for i in range(1, n)}
    stars.add((n, 1))
    return ZnzPattern(n, frozenset(stars))


def all_patterns(n: int):
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for bits in product((0, 1), repeat=n * n):
        yield ZnzPattern(n, frozenset(c for c, b in zip(cells, bits) if b))


def enumerate_classes(n: int, irreducible_only: bool = True) -> List[ZnzPattern]:
    """One canonical representative per permutation-similarity class."""
    if n > MAX_ENUM_ORDER:
        raise OrderTooLarge(f"enumeration is capped at order {MAX_ENUM_ORDER}")
    seen = {}
    for A in all_patterns(n):
        if irreducible_only and not is_irreducible(A):
            continue
        C = canonicalize(A)
        seen.setdefault(C.bits(), C)
    return [seen[k] for k in sorted(seen)]


def enumerate_irreducible(n: int) -> List[ZnzPattern]:
    return enumerate_classes(n, irreducible_only=True)
