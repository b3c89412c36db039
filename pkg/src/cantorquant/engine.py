"""Certified distortion evaluation, Lloyd iteration, multistart search.

The engine answers one question rigorously: how large is the distortion
integral of an arbitrary finite codebook against the product measure?
It recurses over the square product cells, keeping for each cell the
subset of codewords that can still own part of it.  A codeword is
discarded when a rival is weakly closer at all four rectangle corners:
the closer-to-the-rival set is a closed half-plane, which contains the
rectangle as soon as it contains the corners.  A cell with a single
survivor is owned outright and contributes a closed-form integral; a
contested cell splits into its four children.  Contested cells at the
depth limit contribute certified lower and upper bounds instead, so the
result is always a correct enclosure, and it is exact whenever the
recursion terminates.

Everything runs in exact rational arithmetic.  Distances appear only
squared; no roots, no rounding.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Sequence

from .measure import (
    Point,
    Region,
    RegionKind,
    TailMarker,
    cell_region,
    format_rational,
)
from .moments import region_centroid, region_moments, single_center_distortion
from .optimal import Codebook
from .words import BinaryWord

DEFAULT_TOLERANCE = Fraction(1, 10**12)
DEFAULT_MAX_DEPTH = 40
DEFAULT_MAX_ITERS = 50

UNRESOLVED = None

_ROOT_CELL = cell_region(BinaryWord(""), BinaryWord(""))


def _children(region: Region) -> tuple[Region, ...]:
    """The four child product cells, built in O(1) from the parent.

    Recomposing each cell's affine map from the root costs O(depth) per
    node and dominates deep walks; the child rectangle is just a corner
    third of the parent's.
    """
    rx = region.ratio_x / 3
    ry = region.ratio_y / 3
    mass = region.mass / 4
    xs = ((region.x0, region.x0 + rx), (region.x1 - rx, region.x1))
    ys = ((region.y0, region.y0 + ry), (region.y1 - ry, region.y1))
    sigmas = (region.sigma.append(1), region.sigma.append(2))
    taus = (region.tau.append(1), region.tau.append(2))
    return tuple(
        Region(
            kind=RegionKind.CELL,
            word=None,
            tail=TailMarker.NONE,
            sigma=sigmas[a],
            tau=taus[b],
            mass=mass,
            ratio_x=rx,
            ratio_y=ry,
            x0=xs[a][0],
            x1=xs[a][1],
            y0=ys[b][0],
            y1=ys[b][1],
        )
        for a in (0, 1)
        for b in (0, 1)
    )


class ResolutionError(Exception):
    """Voronoi resolution did not terminate at the requested depth."""

    NAMED_LIMIT = 32

    def __init__(self, depth: int, cells: Sequence[str], truncated: bool = False):
        self.depth = depth
        self.cells = tuple(cells[: self.NAMED_LIMIT])
        self.truncated = truncated or len(cells) > len(self.cells)
        listing = ", ".join(self.cells)
        count = f"at least {len(self.cells)}" if self.truncated else str(len(self.cells))
        super().__init__(f"{count} cells unresolved at depth {depth}: {listing}")


class EmptyRegionError(Exception):
    """Some codeword captures no mass at all."""

    def __init__(self, indices: Sequence[int]):
        self.indices = tuple(indices)
        joined = ", ".join(str(i) for i in self.indices)
        super().__init__(f"codewords with empty regions: {joined}")


@dataclass(frozen=True, slots=True)
class CertifiedInterval:
    """Rational enclosure [lower, upper] of a distortion integral."""

    lower: Fraction
    upper: Fraction
    exact: bool

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(f"interval has lower {self.lower} > upper {self.upper}")
        if self.exact and self.lower != self.upper:
            raise ValueError("exact interval must be degenerate")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def to_json_obj(self) -> dict:
        return {
            "lower": format_rational(self.lower),
            "upper": format_rational(self.upper),
            "exact": self.exact,
        }


@dataclass(frozen=True, slots=True)
class CellAssignment:
    """A product cell together with its owning codeword, if unique."""

    cell: Region
    owner: int | None


def _corner_table(
    points: Sequence[Point], active: Sequence[int], region: Region
) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
    corners = (
        (region.x0, region.y0),
        (region.x0, region.y1),
        (region.x1, region.y0),
        (region.x1, region.y1),
    )
    table = []
    for i in active:
        p = points[i]
        table.append(
            tuple((p.x - cx) ** 2 + (p.y - cy) ** 2 for cx, cy in corners)
        )
    return table


def _survivors(
    points: Sequence[Point], active: Sequence[int], region: Region
) -> tuple[int, ...]:
    """Active codewords not corner-dominated by another active codeword.

    Domination at all four corners extends to the whole rectangle by
    convexity of half-planes, so dropped codewords cannot own any point
    of the cell.  Two distinct codewords can never dominate each other:
    that would put four non-collinear corners on one bisector line.
    """
    if len(active) == 1:
        return tuple(active)
    table = _corner_table(points, active, region)
    keep = []
    for pos, i in enumerate(active):
        row = table[pos]
        dominated = False
        for rival_pos in range(len(active)):
            if rival_pos == pos:
                continue
            rival = table[rival_pos]
            if all(rival[c] <= row[c] for c in range(4)):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    return tuple(keep)


def resolve_cell(cell: Region, codebook: Codebook) -> int | None:
    """The codeword owning the whole cell rectangle, or UNRESOLVED.

    The owner is the codeword weakly closest at all four corners against
    every rival; by convexity it is then weakly closest on the whole
    rectangle, with ties confined to the boundary.
    """
    active = tuple(range(len(codebook)))
    surv = _survivors(codebook.points, active, cell)
    if len(surv) == 1:
        return surv[0]
    return UNRESOLVED


def _rect_dist2(region: Region, p: Point) -> Fraction:
    zero = Fraction(0)
    if p.x < region.x0:
        dx = region.x0 - p.x
    elif p.x > region.x1:
        dx = p.x - region.x1
    else:
        dx = zero
    if p.y < region.y0:
        dy = region.y0 - p.y
    elif p.y > region.y1:
        dy = p.y - region.y1
    else:
        dy = zero
    return dx * dx + dy * dy


def _bracket(
    points: Sequence[Point], active: Sequence[int], region: Region
) -> tuple[Fraction, Fraction]:
    """Certified bounds for a contested cell.

    Lower: every point of the cell is at least as far from each codeword
    as the rectangle itself.  Upper: assigning the whole cell to the
    codeword nearest its centroid overestimates the true minimum.
    """
    best_rect = min(_rect_dist2(region, points[i]) for i in active)
    cent = region_centroid(region)
    best_cent = min(cent.dist2(points[i]) for i in active)
    second = region_moments(region).second_moment_about_centroid
    return region.mass * best_rect, second + region.mass * best_cent


def exact_distortion(
    codebook: Codebook,
    tolerance: Fraction = DEFAULT_TOLERANCE,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> CertifiedInterval:
    """Certified distortion of a codebook, exact when resolution ends.

    Best-first refinement: contested cells wait in a heap keyed by the
    width of their bound gap, widest first, and are split into their
    four children until the global gap drops to the tolerance, the depth
    limit freezes the remainder, or nothing is contested.  The result is
    exact precisely when no contested cell remains.
    """
    if max_depth < 1:
        raise ValueError(f"max_depth must be >= 1, got {max_depth}")
    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    points = codebook.points
    resolved = Fraction(0)
    stuck_lo = Fraction(0)
    stuck_up = Fraction(0)
    stuck_cells = 0
    pending_lo = Fraction(0)
    pending_up = Fraction(0)
    heap: list[tuple] = []
    tick = itertools.count()

    def consider(region: Region, active: tuple[int, ...]) -> None:
        nonlocal resolved, stuck_lo, stuck_up, stuck_cells, pending_lo, pending_up
        surv = _survivors(points, active, region)
        if len(surv) == 1:
            resolved += single_center_distortion(region, points[surv[0]])
            return
        lo, up = _bracket(points, surv, region)
        if len(region.sigma) >= max_depth:
            stuck_cells += 1
            stuck_lo += lo
            stuck_up += up
        else:
            pending_lo += lo
            pending_up += up
            heapq.heappush(heap, (lo - up, next(tick), region, surv, lo, up))

    consider(_ROOT_CELL, tuple(range(len(points))))
    while heap and (pending_up - pending_lo) + (stuck_up - stuck_lo) > tolerance:
        _, _, region, surv, lo, up = heapq.heappop(heap)
        pending_lo -= lo
        pending_up -= up
        for child in _children(region):
            consider(child, surv)
    lower = resolved + pending_lo + stuck_lo
    upper = resolved + pending_up + stuck_up
    exact = not heap and stuck_cells == 0
    return CertifiedInterval(lower, upper, exact)


def iter_assignments(codebook: Codebook, depth: int) -> Iterator[CellAssignment]:
    """Maximal resolved cells of the tree, cut off at the given depth.

    Yields each cell the moment it resolves, so a cell resolved at depth
    2 stands for all its depth-5 descendants.  Cells still contested at
    the cutoff are yielded with owner None.
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    points = codebook.points
    stack = [(_ROOT_CELL, tuple(range(len(points))))]
    while stack:
        region, active = stack.pop()
        surv = _survivors(points, active, region)
        if len(surv) == 1:
            yield CellAssignment(region, surv[0])
        elif len(region.sigma) >= depth:
            yield CellAssignment(region, UNRESOLVED)
        else:
            for child in reversed(_children(region)):
                stack.append((child, surv))


def lloyd_step(codebook: Codebook, depth: int) -> Codebook:
    """One exact centroid update over the depth-resolved partition.

    Every codeword moves to the mass centroid of the cells it owns.
    Cells still contested at the cutoff abort the step: the partition is
    not known, so no centroid may be trusted.  A boundary that runs
    through the support contests exponentially many cells, so the scan
    stops as soon as the naming limit is reached rather than enumerating
    them all; one contested cell already dooms the step.
    """
    k = len(codebook)
    mass = [Fraction(0)] * k
    mx = [Fraction(0)] * k
    my = [Fraction(0)] * k
    failed: list[str] = []
    for assign in iter_assignments(codebook, depth):
        if assign.owner is UNRESOLVED:
            failed.append(assign.cell.address())
            if len(failed) >= ResolutionError.NAMED_LIMIT:
                raise ResolutionError(depth, failed, truncated=True)
            continue
        region = assign.cell
        cent = region_centroid(region)
        mass[assign.owner] += region.mass
        mx[assign.owner] += region.mass * cent.x
        my[assign.owner] += region.mass * cent.y
    if failed:
        raise ResolutionError(depth, failed)
    empty = [i for i in range(k) if mass[i] == 0]
    if empty:
        raise EmptyRegionError(empty)
    return Codebook.of(
        Point(mx[i] / mass[i], my[i] / mass[i]) for i in range(k)
    )


@dataclass(frozen=True, slots=True)
class LloydResult:
    codebook: Codebook
    interval: CertifiedInterval
    iterations: int
    converged: bool


def lloyd(
    codebook: Codebook,
    depth: int,
    max_iters: int = DEFAULT_MAX_ITERS,
    tolerance: Fraction = DEFAULT_TOLERANCE,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> LloydResult:
    """Iterate lloyd_step to an exact fixed point or the iteration cap.

    Convergence means exact rational equality of consecutive codebooks,
    not a numerical threshold.  The returned interval is the certified
    distortion of the final codebook.
    """
    current = codebook
    converged = False
    steps = 0
    for _ in range(max_iters):
        nxt = lloyd_step(current, depth)
        steps += 1
        if nxt == current:
            converged = True
            break
        current = nxt
    interval = exact_distortion(current, tolerance, max_depth)
    return LloydResult(current, interval, steps, converged)


class Lcg64:
    """64-bit linear congruential generator, fixed published constants.

    state' = (6364136223846793005 * state + 1442695040888963407) mod 2^64,
    emitting state'/2^64 as an exact dyadic fraction in [0, 1).  The
    stream depends only on the seed, never on platform or hash state.
    """

    MULT = 6364136223846793005
    INC = 1442695040888963407
    _MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self._MASK

    def next_fraction(self) -> Fraction:
        self.state = (self.state * self.MULT + self.INC) & self._MASK
        return Fraction(self.state, 1 << 64)


class RunStatus(Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max-iters"
    RESOLUTION_FAILURE = "resolution-failure"
    EMPTY_REGION = "empty-region"
    DEGENERATE = "degenerate"


@dataclass(frozen=True, slots=True)
class RunRecord:
    """Outcome of one multistart run."""

    index: int
    status: RunStatus
    depth: int
    iterations: int
    codebook: Codebook | None
    interval: CertifiedInterval | None


@dataclass(frozen=True, slots=True)
class MultistartResult:
    n: int
    seeds: int
    rng_seed: int
    depth: int
    runs: tuple[RunRecord, ...]

    @property
    def best(self) -> RunRecord | None:
        """The finished run with the smallest upper bound, earliest wins ties."""
        candidates = [r for r in self.runs if r.interval is not None]
        if not candidates:
            return None
        return min(candidates, key=lambda r: (r.interval.upper, r.index))

    def tally(self) -> dict[RunStatus, int]:
        counts = {status: 0 for status in RunStatus}
        for r in self.runs:
            counts[r.status] += 1
        return counts


def multistart_search(
    n: int,
    seeds: int,
    rng_seed: int,
    depth: int,
    max_iters: int = DEFAULT_MAX_ITERS,
    depth_step: int = 4,
    depth_span: int = 12,
) -> MultistartResult:
    """Lloyd iteration from uniform random starts, deterministic stream.

    All runs draw from one generator in run order, 2n draws per run, so
    run r's start depends only on (n, rng_seed, r).  A run that hits a
    resolution failure restarts from its initial points with the depth
    raised by depth_step, up to depth + depth_span, then gives up; a
    bisector through the support dust does not get better with depth,
    so most random starts for small n are expected to give up.  Failed
    runs are recorded and counted, never silently dropped.
    """
    if n < 1:
        raise ValueError(f"multistart_search requires n >= 1, got {n}")
    if seeds < 1:
        raise ValueError(f"multistart_search requires seeds >= 1, got {seeds}")
    rng = Lcg64(rng_seed)
    runs = []
    for r in range(seeds):
        coords = [(rng.next_fraction(), rng.next_fraction()) for _ in range(n)]
        try:
            initial = Codebook.of(Point(x, y) for x, y in coords)
        except ValueError:
            runs.append(RunRecord(r, RunStatus.DEGENERATE, depth, 0, None, None))
            continue
        record = None
        d = depth
        while d <= depth + depth_span:
            try:
                res = lloyd(initial, d, max_iters)
            except ResolutionError:
                d += depth_step
                continue
            except EmptyRegionError:
                record = RunRecord(r, RunStatus.EMPTY_REGION, d, 0, None, None)
                break
            except ValueError:
                record = RunRecord(r, RunStatus.DEGENERATE, d, 0, None, None)
                break
            status = RunStatus.CONVERGED if res.converged else RunStatus.MAX_ITERS
            record = RunRecord(r, status, d, res.iterations, res.codebook, res.interval)
            break
        if record is None:
            record = RunRecord(
                r, RunStatus.RESOLUTION_FAILURE, depth + depth_span, 0, None, None
            )
        runs.append(record)
    return MultistartResult(n, seeds, rng_seed, depth, tuple(runs))
