"""Closed-form optimal codebooks and quantization errors for every n.

For n >= 2 write ell for the unique exponent with 4^ell <= n < 4^(ell+1).
Optimal n-point codebooks are assembled on the 4^ell product cells of the
binary refinement at depth ell, in three regimes:

* POWER (n = 4^ell): every cell holds its midpoint; the codebook is
  unique and the error is (1/4) * 9^-ell.
* LOW (4^ell < n <= 2*4^ell): a set I of n - 4^ell cells is "split" into
  a two-point set along one axis (each split cell chooses the x or y
  pair); the rest keep their midpoint.  Error:
  (1/4) * 36^-ell * (2*4^ell - n + (5/9)(n - 4^ell)).
* HIGH (2*4^ell < n < 4^(ell+1)): in the lower band n <= 3*4^ell, a set
  I of n - 2*4^ell cells holds a three-point set (4 choices each) and
  the rest hold two-point axis pairs (2 choices each).  In the upper
  band n > 3*4^ell there are more split cells than cells, so the
  construction rolls over: a set I of n - 3*4^ell cells holds the full
  four-point child grid (unique) and the rest hold three-point sets
  (4 choices each).  Both bands share the error
  36^-(ell+1) * (9*4^ell - 2n), because the per-cell errors of the 2-,
  3- and 4-point local sets are in arithmetic progression, and the
  counts agree where the bands meet (n = 3*4^ell) and where the upper
  band runs into the next power (n = 4^(ell+1) gives one codebook).

Admitting ell = 0 (the single empty cell) makes n = 2 and n = 3 ordinary
instances of the LOW and HIGH constructions instead of special cases.
n = 1 stays outside the machinery: its codebook is the mean and its
error the total variance 1/4.

Variants are indexed deterministically: subsets I in lexicographic order
of their sorted cell addresses, then choice vectors in numeric order.
The index <-> VariantSpec mapping is part of the public contract.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .measure import Point, cantor_point
from .words import BinaryWord

CellAddress = tuple[BinaryWord, BinaryWord]


class Regime(Enum):
    POWER = "power"
    LOW = "low"
    HIGH = "high"


def level(n: int) -> tuple[int, Regime]:
    """Classify n >= 2 into (ell, regime); the regimes partition n >= 2."""
    if n < 2:
        raise ValueError(f"level requires n >= 2, got {n}")
    ell = 0
    while 4 ** (ell + 1) <= n:
        ell += 1
    if n == 4**ell:
        return ell, Regime.POWER
    if n <= 2 * 4**ell:
        return ell, Regime.LOW
    return ell, Regime.HIGH


def quantization_error(n: int) -> Fraction:
    """The exact n-point quantization error of the measure."""
    if n < 1:
        raise ValueError(f"quantization_error requires n >= 1, got {n}")
    if n == 1:
        return Fraction(1, 4)
    ell, regime = level(n)
    if regime is Regime.POWER:
        return Fraction(1, 4) * Fraction(1, 9**ell)
    if regime is Regime.LOW:
        inner = 2 * 4**ell - n + Fraction(5, 9) * (n - 4**ell)
        return Fraction(1, 4) * Fraction(1, 36**ell) * inner
    return Fraction(1, 36 ** (ell + 1)) * (9 * 4**ell - 2 * n)


def grid_cells(ell: int) -> tuple[CellAddress, ...]:
    """All product cells of depth ell, in lexicographic address order."""
    words = [BinaryWord("".join(bits)) for bits in itertools.product("12", repeat=ell)]
    return tuple((s, t) for s in words for t in words)


@dataclass(frozen=True, slots=True)
class VariantSpec:
    """One member of the optimal family for a given n.

    ``split_cells`` is the set I as a sorted tuple of cell addresses:
    the cells holding one point more than the rest.  ``choices`` aligns
    with the cells that carry a choice, in address order.  LOW: the
    split cells, each in {0,1} (x-pair or y-pair).  HIGH, lower band:
    every cell, {0,1,2,3} if split else {0,1}.  HIGH, upper band: the
    non-split cells only, each in {0,1,2,3}; split cells hold the full
    child grid, which is unique.  POWER variants carry no choices.
    """

    n: int
    level: int
    regime: Regime
    split_cells: tuple[CellAddress, ...]
    choices: tuple[int, ...]


def _split_count(n: int, ell: int, regime: Regime) -> int:
    if regime is Regime.POWER:
        return 0
    if regime is Regime.LOW:
        return n - 4**ell
    if n <= 3 * 4**ell:
        return n - 2 * 4**ell
    return n - 3 * 4**ell


def count_variants(n: int) -> int:
    """How many distinct optimal codebooks the construction yields."""
    if n < 2:
        raise ValueError(f"count_variants requires n >= 2, got {n}")
    ell, regime = level(n)
    cells = 4**ell
    k = _split_count(n, ell, regime)
    if regime is Regime.POWER:
        return 1
    if regime is Regime.LOW:
        return 2**k * math.comb(cells, k)
    if n <= 3 * cells:
        return 2 ** (3 * cells - n) * 4**k * math.comb(cells, k)
    return 4 ** (4 * cells - n) * math.comb(cells, k)


def _unrank_combination(total: int, size: int, rank: int) -> tuple[int, ...]:
    """The rank-th size-subset of range(total) in lexicographic order."""
    out = []
    x = 0
    for slot in range(size):
        while True:
            skip = math.comb(total - x - 1, size - slot - 1)
            if rank < skip:
                break
            rank -= skip
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def _rank_combination(total: int, picked: tuple[int, ...]) -> int:
    rank = 0
    prev = -1
    size = len(picked)
    for slot, x in enumerate(picked):
        for y in range(prev + 1, x):
            rank += math.comb(total - y - 1, size - slot - 1)
        prev = x
    return rank


def _choice_radices(
    n: int,
    regime: Regime,
    cells: tuple[CellAddress, ...],
    split: frozenset[CellAddress],
) -> tuple[tuple[CellAddress, ...], tuple[int, ...]]:
    """The cells that carry a choice, with each cell's number of options."""
    if regime is Regime.LOW:
        chosen = tuple(c for c in cells if c in split)
        return chosen, tuple(2 for _ in chosen)
    if regime is Regime.HIGH:
        if n <= 3 * len(cells):
            return cells, tuple(4 if c in split else 2 for c in cells)
        chosen = tuple(c for c in cells if c not in split)
        return chosen, tuple(4 for _ in chosen)
    return (), ()


def variant_by_index(n: int, index: int) -> VariantSpec:
    """The index-th variant (0-based) in the lexicographic enumeration."""
    total = count_variants(n)
    if not 0 <= index < total:
        raise ValueError(f"variant index {index} out of range [0, {total}) for n={n}")
    ell, regime = level(n)
    cells = grid_cells(ell)
    k = _split_count(n, ell, regime)
    if regime is Regime.POWER:
        return VariantSpec(n, ell, regime, (), ())
    per_subset = total // math.comb(len(cells), k)
    subset_rank, choice_code = divmod(index, per_subset)
    picked = _unrank_combination(len(cells), k, subset_rank)
    split = tuple(cells[i] for i in picked)
    chosen, radices = _choice_radices(n, regime, cells, frozenset(split))
    digits = [0] * len(radices)
    for pos in range(len(radices) - 1, -1, -1):
        choice_code, digits[pos] = divmod(choice_code, radices[pos])
    return VariantSpec(n, ell, regime, split, tuple(digits))


def variant_index(spec: VariantSpec) -> int:
    """Inverse of variant_by_index."""
    if spec.regime is Regime.POWER:
        return 0
    cells = grid_cells(spec.level)
    pos = {cell: idx for idx, cell in enumerate(cells)}
    picked = tuple(sorted(pos[c] for c in spec.split_cells))
    subset_rank = _rank_combination(len(cells), picked)
    _, radices = _choice_radices(spec.n, spec.regime, cells, frozenset(spec.split_cells))
    code = 0
    for digit, radix in zip(spec.choices, radices):
        code = code * radix + digit
    per_subset = 1
    for radix in radices:
        per_subset *= radix
    return subset_rank * per_subset + code


def spread_indices(total: int, cap: int) -> tuple[int, ...]:
    """At most cap distinct indices spread evenly over range(total).

    Endpoints are always included when total > cap, so checks cover the
    first and last variant of a family too large to enumerate in full.
    """
    if total < 0 or cap < 1:
        raise ValueError(f"need total >= 0 and cap >= 1, got {total}, {cap}")
    if total <= cap:
        return tuple(range(total))
    if cap == 1:
        return (0,)
    picked = {(i * (total - 1)) // (cap - 1) for i in range(cap)}
    return tuple(sorted(picked))


def enumerate_variants(n: int) -> Iterator[VariantSpec]:
    """All variants in index order: subsets lexicographic, then choices numeric."""
    if n < 2:
        raise ValueError(f"enumerate_variants requires n >= 2, got {n}")
    ell, regime = level(n)
    cells = grid_cells(ell)
    k = _split_count(n, ell, regime)
    if regime is Regime.POWER:
        yield VariantSpec(n, ell, regime, (), ())
        return
    for picked in itertools.combinations(range(len(cells)), k):
        split = tuple(cells[i] for i in picked)
        _, radices = _choice_radices(n, regime, cells, frozenset(split))
        for digits in itertools.product(*(range(r) for r in radices)):
            yield VariantSpec(n, ell, regime, split, digits)


# ============================================================
# Point patterns per cell
# ============================================================

def _midpoint(cell: CellAddress) -> Point:
    return Point(cantor_point(cell[0]), cantor_point(cell[1]))


def _axis_pair(cell: CellAddress, choice: int) -> list[Point]:
    s, t = cell
    if choice == 0:
        return [
            Point(cantor_point(s.append(1)), cantor_point(t)),
            Point(cantor_point(s.append(2)), cantor_point(t)),
        ]
    return [
        Point(cantor_point(s), cantor_point(t.append(1))),
        Point(cantor_point(s), cantor_point(t.append(2))),
    ]


def _triple(cell: CellAddress, choice: int) -> list[Point]:
    # The four three-point patterns: one child column/row pair plus the
    # opposite half's midpoint, in the documented choice order.
    s, t = cell
    s1, s2 = s.append(1), s.append(2)
    t1, t2 = t.append(1), t.append(2)
    patterns = {
        0: [(s1, t), (s2, t1), (s2, t2)],
        1: [(s1, t1), (s1, t2), (s2, t)],
        2: [(s1, t1), (s2, t1), (s, t2)],
        3: [(s, t1), (s1, t2), (s2, t2)],
    }
    return [Point(cantor_point(a), cantor_point(b)) for a, b in patterns[choice]]


def _child_grid(cell: CellAddress) -> list[Point]:
    s, t = cell
    return [
        Point(cantor_point(s.append(a)), cantor_point(t.append(b)))
        for a in (1, 2)
        for b in (1, 2)
    ]


@dataclass(frozen=True, slots=True)
class Codebook:
    """A finite set of codewords, stored sorted lexicographically by (x, y)."""

    points: tuple[Point, ...]

    @classmethod
    def of(cls, points: Iterable[Point]) -> "Codebook":
        ordered = tuple(sorted(points))
        for a, b in zip(ordered, ordered[1:]):
            if a == b:
                raise ValueError(f"duplicate codeword {a}")
        if not ordered:
            raise ValueError("codebook must contain at least one point")
        return cls(ordered)

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def to_json_obj(self) -> dict:
        return {"n": self.n, "points": [p.to_json() for p in self.points]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "Codebook":
        points = [Point.from_json(entry) for entry in obj["points"]]
        book = cls.of(points)
        declared = obj.get("n")
        if declared is not None and declared != book.n:
            raise ValueError(f"codebook declares n={declared} but has {book.n} points")
        return book

    @classmethod
    def from_json(cls, text: str) -> "Codebook":
        return cls.from_json_obj(json.loads(text))


def codebook_for(spec: VariantSpec) -> Codebook:
    """Assemble the codebook of a variant spec."""
    cells = grid_cells(spec.level)
    split = frozenset(spec.split_cells)
    if len(split) != _split_count(spec.n, spec.level, spec.regime):
        raise ValueError("split-cell count does not match the regime")
    chosen, radices = _choice_radices(spec.n, spec.regime, cells, split)
    if len(spec.choices) != len(radices):
        raise ValueError("choice vector length does not match the regime")
    for digit, radix in zip(spec.choices, radices):
        if not 0 <= digit < radix:
            raise ValueError(f"choice {digit} out of range for arity {radix}")
    choice_of = dict(zip(chosen, spec.choices))
    upper_band = spec.regime is Regime.HIGH and spec.n > 3 * len(cells)
    points: list[Point] = []
    for cell in cells:
        if spec.regime is Regime.POWER:
            points.append(_midpoint(cell))
        elif spec.regime is Regime.LOW:
            if cell in split:
                points.extend(_axis_pair(cell, choice_of[cell]))
            else:
                points.append(_midpoint(cell))
        elif upper_band:
            if cell in split:
                points.extend(_child_grid(cell))
            else:
                points.extend(_triple(cell, choice_of[cell]))
        else:
            if cell in split:
                points.extend(_triple(cell, choice_of[cell]))
            else:
                points.extend(_axis_pair(cell, choice_of[cell]))
    return Codebook.of(points)


def optimal_codebook(n: int, variant: int | VariantSpec = 0) -> Codebook:
    """The variant's codebook; default is variant 0 (first subset, all
    choices 0).  n = 1 yields the mean point."""
    if isinstance(variant, VariantSpec):
        return codebook_for(variant)
    if n < 1:
        raise ValueError(f"optimal_codebook requires n >= 1, got {n}")
    if n == 1:
        if variant != 0:
            raise ValueError("n=1 has a single variant")
        return Codebook.of([Point(Fraction(1, 2), Fraction(1, 2))])
    return codebook_for(variant_by_index(n, variant))
