"""Curve measurements: isotropy tallies, straight runs, Z-order baseline,
and dimension-reduction displacement profiles."""

import csv
import io
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .cells import Cell, node_budget
from .errors import ArgumentError, FitError, SizeError
from .recurrence import encode_many

DEFAULT_SEED = 0x5FC5FC
DEFAULT_SAMPLES = 4096
MAX_GAP = 100


@dataclass(frozen=True)
class Tally:
    """Edges parallel to each axis in the first ``s**(d*levels)`` nodes."""

    counts: Tuple[int, ...]
    levels: int
    nodes: int
    closing_edge: bool = False

    @property
    def total(self) -> int:
        return sum(self.counts)

    def percent(self, axis: int) -> float:
        return 100.0 * self.counts[axis] / self.nodes

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["nodes", "axis", "count", "percent"])
        for axis, count in enumerate(self.counts):
            writer.writerow([self.nodes, axis, count, f"{self.percent(axis):.1f}"])
        return out.getvalue()


@dataclass(frozen=True)
class RunHistogram:
    """``runs[axis][length]`` = number of maximal straight runs."""

    runs: Tuple[Dict[int, int], ...]

    def lengths(self, axis: int) -> List[int]:
        return sorted(self.runs[axis])

    @property
    def total_edges(self) -> int:
        return sum(length * count for per_axis in self.runs for length, count in per_axis.items())

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["axis", "length", "count"])
        for axis, per_axis in enumerate(self.runs):
            for length in sorted(per_axis):
                writer.writerow([axis, length, per_axis[length]])
        return out.getvalue()


def _pattern(cell: Cell, levels: int, extra: int = 0) -> np.ndarray:
    if levels < 1:
        raise ArgumentError("levels must be >= 1")
    nodes = cell.side ** (cell.rank * levels)
    budget = node_budget()
    if nodes > budget:
        raise SizeError(f"{nodes} nodes exceeds the node budget {budget}")
    groups = -(-levels // cell.rank)
    if extra and nodes + extra > cell.side ** (cell.rank * cell.rank * groups):
        groups += 1
    return encode_many(np.arange(nodes + extra, dtype=np.int64), cell, groups=groups)


def _step_axes(points: np.ndarray) -> np.ndarray:
    steps = np.diff(points, axis=0)
    nonzero = steps != 0
    if np.any(nonzero.sum(axis=1) != 1) or np.any(np.abs(steps).sum(axis=1) != 1):
        bad = int(np.flatnonzero((np.abs(steps).sum(axis=1) != 1))[0])
        raise ArgumentError(f"curve is not continuous at u={bad}")
    return np.argmax(nonzero, axis=1), steps[nonzero]


def edge_tally(cell: Cell, levels: int, closing_edge: bool = False) -> Tally:
    """Count edges by axis over a complete ``s**(d*levels)``-node pattern.

    With ``closing_edge`` the edge leaving the pattern (to node
    ``s**(d*levels)``) is counted too.
    """
    points = _pattern(cell, levels, extra=1 if closing_edge else 0)
    axes, _ = _step_axes(points)
    counts = np.bincount(axes, minlength=cell.rank)
    nodes = cell.side ** (cell.rank * levels)
    return Tally(tuple(int(c) for c in counts), levels, nodes, closing_edge)


def run_histogram(cell: Cell, levels: int) -> RunHistogram:
    """Histogram of maximal runs of collinear consecutive edges, per axis."""
    points = _pattern(cell, levels)
    axes, signs = _step_axes(points)
    runs = [Counter() for _ in range(cell.rank)]
    if axes.size == 0:
        return RunHistogram(tuple(dict(c) for c in runs))
    # a run breaks where the axis or the direction changes
    breaks = np.flatnonzero((axes[1:] != axes[:-1]) | (signs[1:] != signs[:-1])) + 1
    starts = np.concatenate([[0], breaks])
    ends = np.concatenate([breaks, [axes.size]])
    for a, b in zip(starts, ends):
        runs[int(axes[a])][int(b - a)] += 1
    return RunHistogram(tuple(dict(sorted(c.items())) for c in runs))


def z_encode(u: int, d: int) -> Tuple[int, ...]:
    """Z-order (Morton) point: coordinate ``j`` takes bits ``j, j+d, ...``."""
    if d < 2:
        raise ArgumentError("rank must be >= 2")
    if u < 0:
        raise ArgumentError("scalar must be non-negative")
    coords = [0] * d
    bit = 0
    while u:
        for j in range(d):
            coords[j] |= (u & 1) << bit
            u >>= 1
        bit += 1
    return tuple(coords)


def z_decode(V, d: Optional[int] = None) -> int:
    V = tuple(int(v) for v in V)
    d = len(V) if d is None else d
    if d < 2 or len(V) != d:
        raise ArgumentError("rank must be >= 2 and match the point")
    if any(v < 0 for v in V):
        raise ArgumentError("coordinates must be non-negative")
    u = 0
    for bit in range(max(V).bit_length()):
        for j in range(d):
            u |= ((V[j] >> bit) & 1) << (bit * d + j)
    return u


def z_encode_many(us, d: int) -> np.ndarray:
    us = np.asarray(us, dtype=np.uint64)
    V = np.zeros((us.size, d), dtype=np.int64)
    rest = us.copy()
    bit = 0
    while rest.any():
        for j in range(d):
            V[:, j] |= ((rest & np.uint64(1)).astype(np.int64)) << bit
            rest >>= np.uint64(1)
        bit += 1
    return V


@dataclass(frozen=True)
class DimredSeries:
    curve: str
    rank: int
    side: int
    variant: str
    seed: int
    domain: int
    gaps: Tuple[int, ...]
    means: Tuple[float, ...]
    samples: Tuple[int, ...]

    def rows(self):
        for g, m, n in zip(self.gaps, self.means, self.samples):
            yield [self.curve, self.rank, self.side, self.variant, g, f"{m:.6g}", n, self.seed]

    def to_csv(self, header: bool = True) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        if header:
            writer.writerow(["curve", "d", "s", "variant", "gap", "mean_distance", "samples", "seed"])
        writer.writerows(self.rows())
        return out.getvalue()


def gap_generator(seed: int, gap: int) -> np.random.Generator:
    """Counter-based (Philox) stream keyed by ``(seed, gap)``.

    Each gap owns an independent stream, so the gaps can be evaluated in
    any order or in parallel with identical results.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, gap])))


def default_domain_levels(side: int, rank: int) -> int:
    """Smallest level count with ``side**(rank*m) >= 2**20``."""
    m = 1
    while side ** (rank * m) < 2**20:
        m += 1
    return m


def dimred_profile(cell: Optional[Cell] = None, rank: Optional[int] = None,
                   gaps=range(1, MAX_GAP + 1), samples: int = DEFAULT_SAMPLES,
                   domain_levels: Optional[int] = None, seed: int = DEFAULT_SEED) -> DimredSeries:
    """Mean Euclidean displacement between points ``gap`` apart in scalar.

    Pass a ``cell`` for the cell-based curve, or ``cell=None`` and a
    ``rank`` for the Z-order baseline (side 2). For every gap, ``samples``
    starting scalars are drawn uniformly from ``[0, s**(d*m) - gap)``.
    """
    if cell is None:
        if rank is None:
            raise ArgumentError("the Z-curve baseline needs a rank")
        side, curve, variant = 2, "z", "z"
    else:
        rank, side = cell.rank, cell.side
        curve = "hilbert" if side == 2 and not cell.is_diagonal else f"cell{side}"
        variant = cell.variant.value
    if domain_levels is None:
        domain_levels = default_domain_levels(side, rank)
    domain = side ** (rank * domain_levels)
    gaps = tuple(int(g) for g in gaps)
    if not gaps or min(gaps) < 1:
        raise ArgumentError("gaps must be positive")
    if samples < 1:
        raise ArgumentError("samples must be positive")
    if domain - max(gaps) <= samples:
        raise ArgumentError(f"domain of {domain} scalars is too small for {samples} samples per gap")
    if domain >= 1 << 62:
        raise ArgumentError("domain too large for the 64-bit sampler")

    if cell is None:
        points = lambda us: z_encode_many(us, rank)
    else:
        groups = -(-domain_levels // rank)
        points = lambda us: encode_many(us, cell, groups=groups)

    means = []
    for g in gaps:
        v1 = gap_generator(seed, g).integers(0, domain - g, size=samples, dtype=np.int64)
        delta = points(v1 + g) - points(v1)
        sq = (delta * delta).sum(axis=1)  # exact in int64
        means.append(float(np.sqrt(sq.astype(np.float64)).mean()))
    return DimredSeries(curve, rank, side, variant, seed, domain, gaps,
                        tuple(means), (samples,) * len(gaps))


def loglog_slope(series) -> float:
    """Least-squares slope of log(mean displacement) against log(gap)."""
    gaps = np.asarray(series.gaps, dtype=float)
    means = np.asarray(series.means, dtype=float)
    if gaps.size < 10:
        raise FitError(f"need at least 10 gaps, got {gaps.size}")
    if np.any(gaps <= 0) or np.any(means <= 0) or not np.all(np.isfinite(means)):
        raise FitError("gaps and means must be positive and finite")
    x, y = np.log(gaps), np.log(means)
    if np.ptp(x) == 0:
        raise FitError("all gaps are equal")
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
