"""Unit cells: Manhattan Hamiltonian paths on the s**d lattice.

A cell is the finite kernel every recurrence in this package consumes.
This module generates serpentine paths, reads user-supplied paths from
cell files, checks that a path is usable, and precomputes the per-node
orientation tables (entry/exit corners and rotation counts).

Coordinate index 0 is the outermost dimension of the serpentine
generator, i.e. the slowest-varying coordinate of the path.
"""

import enum
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    ArgumentError,
    OrientationRuleError,
    ParseError,
    PathValidationError,
    SizeError,
)

Point = Tuple[int, ...]

DEFAULT_NODE_BUDGET = 10**6


def node_budget() -> int:
    """The node budget in force: ``$SFC_NODE_BUDGET`` or 10**6."""
    value = os.environ.get("SFC_NODE_BUDGET")
    if value is None or not value.strip():
        return DEFAULT_NODE_BUDGET
    try:
        budget = int(value)
    except ValueError:
        raise ArgumentError(f"SFC_NODE_BUDGET is not an integer: {value!r}")
    if budget < 1:
        raise ArgumentError("SFC_NODE_BUDGET must be positive")
    return budget


@dataclass(frozen=True)
class PathSequence:
    """An ordered list of ``side**rank`` lattice points."""

    rank: int
    side: int
    nodes: Tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(tuple(int(c) for c in p) for p in self.nodes))

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __getitem__(self, t):
        return self.nodes[t]

    @property
    def exit(self) -> Point:
        return self.nodes[-1]


class CellKind(enum.Enum):
    DIAGONAL = "DiagonalCorners"
    ADJACENT = "AdjacentCorners"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CellClass:
    kind: CellKind
    travel_axis: Optional[int] = None

    def __str__(self):
        if self.kind is CellKind.ADJACENT:
            return f"{self.kind} (travel axis {self.travel_axis})"
        return str(self.kind)


@dataclass(frozen=True)
class OrientationTables:
    """Per-node corner orientations of the sub-cells.

    entry, exit
        Bit tuples: which corner of the sub-cell at node ``t`` the curve
        enters and leaves through.
    net_axis
        Index of the single coordinate where ``exit[t]`` and ``entry[t]``
        differ (adjacent-corner cells; all zero for diagonal cells).
    step_axis
        Index of the nonzero coordinate of ``H(t+1) - H(t)``; the last
        entry repeats the one before it.
    """

    entry: Tuple[Point, ...]
    exit: Tuple[Point, ...]
    net_axis: Tuple[int, ...]
    step_axis: Tuple[int, ...]


class AlignmentVariant(enum.Enum):
    """How sub-cells are rotated relative to their parent node.

    ADJACENT is the only choice for adjacent-corner cells. Diagonal cells
    take PLAIN (no rotation, the classic Peano construction), PRECESS
    (rotate by ``t``) or PRECESS_OFFSET (rotate by ``t + 1``).
    """

    ADJACENT = "adj"
    PLAIN = "peano"
    PRECESS = "precess"
    PRECESS_OFFSET = "precess1"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            names = ", ".join(v.value for v in cls)
            raise ArgumentError(f"unknown variant {value!r} (expected one of {names})")


@dataclass(frozen=True, eq=False)
class Cell:
    """A validated path with every table the recurrences need.

    Instances are immutable and safe to share. ``rotation[t]`` is the
    cyclic shift applied to the coordinates of the child placed at node
    ``t``; ``index`` maps each lattice point back to its path position.
    """

    path: PathSequence
    cell_class: CellClass
    tables: OrientationTables
    variant: AlignmentVariant
    rotation: Tuple[int, ...]
    index: Dict[Point, int] = field(repr=False)
    # numpy mirrors of the tables, used by the batch encoder
    _nodes: np.ndarray = field(init=False, repr=False)
    _entry: np.ndarray = field(init=False, repr=False)
    _gather: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        d = self.rank
        nodes = np.array(self.path.nodes, dtype=np.int64).reshape(-1, d)
        entry = np.array(self.tables.entry, dtype=np.int64).reshape(-1, d)
        rot = np.array(self.rotation, dtype=np.int64)
        gather = (np.arange(d)[None, :] + rot[:, None]) % d
        for arr in (nodes, entry, gather):
            arr.setflags(write=False)
        object.__setattr__(self, "_nodes", nodes)
        object.__setattr__(self, "_entry", entry)
        object.__setattr__(self, "_gather", gather)

    @property
    def rank(self) -> int:
        return self.path.rank

    @property
    def side(self) -> int:
        return self.path.side

    @property
    def size(self) -> int:
        """Number of nodes, ``side**rank``."""
        return len(self.path)

    @property
    def is_diagonal(self) -> bool:
        return self.cell_class.kind is CellKind.DIAGONAL

    def __repr__(self):
        return (f"Cell(rank={self.rank}, side={self.side}, "
                f"class={self.cell_class}, variant={self.variant.value})")


def make_serpentine_path(rank: int, side: int, budget: Optional[int] = None) -> PathSequence:
    """Serpentine Hamiltonian path on ``side**rank`` points.

    Each added dimension stacks ``side`` copies of the lower-rank path,
    reversing every odd copy, with the copy number prepended to the
    coordinates. The exit corner is diagonally opposite the origin when
    ``side`` is odd and adjacent to it when ``side`` is even.
    """
    if rank < 2 or side < 2:
        raise ArgumentError(f"rank and side must both be >= 2 (got rank={rank}, side={side})")
    budget = node_budget() if budget is None else budget
    if side**rank > budget:
        raise SizeError(f"{side}**{rank} = {side**rank} nodes exceeds the node budget {budget}")
    path = [()]
    for _ in range(rank):
        stacked = []
        for copy in range(side):
            layer = reversed(path) if copy % 2 else path
            stacked.extend((copy,) + coords for coords in layer)
        path = stacked
    return PathSequence(rank, side, tuple(path))


def validate_path(path: PathSequence) -> CellClass:
    """Check every path invariant and classify the exit corner.

    Raises PathValidationError naming the first offending node or step.
    """
    d, s = path.rank, path.side
    if d < 2 or s < 2:
        raise PathValidationError(f"rank and side must be >= 2 (got {d}, {s})")
    n = s**d
    if len(path.nodes) != n:
        raise PathValidationError(f"expected {n} nodes, got {len(path.nodes)}")
    for t, p in enumerate(path.nodes):
        if len(p) != d:
            raise PathValidationError(f"node {t} has {len(p)} coordinates, expected {d}", t)
        if any(c < 0 or c >= s for c in p):
            raise PathValidationError(f"node {t} {p} lies outside [0, {s})", t)
    if any(path.nodes[0]):
        raise PathValidationError(f"entry node {path.nodes[0]} is not the origin", 0)
    seen = {}
    for t, p in enumerate(path.nodes):
        if p in seen:
            raise PathValidationError(f"node {t} {p} repeats node {seen[p]}", t)
        seen[p] = t
    for t in range(n - 1):
        a, b = path.nodes[t], path.nodes[t + 1]
        if sum(abs(x - y) for x, y in zip(a, b)) != 1:
            raise PathValidationError(f"step {t} from {a} to {b} is not a unit axis step", t)

    last = path.nodes[-1]
    if all(c == s - 1 for c in last):
        return CellClass(CellKind.DIAGONAL)
    axes = [j for j, c in enumerate(last) if c != 0]
    if len(axes) == 1 and last[axes[0]] == s - 1:
        return CellClass(CellKind.ADJACENT, axes[0])
    raise PathValidationError(
        f"exit node {last} is neither the opposite corner nor an adjacent corner", n - 1)


def _changed_axis(a: Point, b: Point) -> int:
    for j, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return j
    raise PathValidationError(f"nodes {a} and {b} coincide")


def derive_orientations(path: PathSequence, cell_class: CellClass) -> OrientationTables:
    """Entry and exit corner tables for every sub-cell of ``path``.

    The entry of each sub-cell follows from the exit of its predecessor.
    Diagonal cells exit through the complementary corner. Adjacent-corner
    cells travel along the outgoing step when the entry corner permits it
    and along the incoming step otherwise; the first and last sub-cells
    are pinned by the cell's own entry and exit corners.

    Raises OrientationRuleError at the first node whose exit corner does
    not reach the next sub-cell, or whose entry/exit corners do not differ
    in exactly one coordinate (adjacent cells).
    """
    H = path.nodes
    d, s, n = path.rank, path.side, len(H)
    diagonal = cell_class.kind is CellKind.DIAGONAL

    step_axis = [_changed_axis(H[t], H[t + 1]) for t in range(n - 1)]
    step_axis.append(step_axis[-1])

    entry = [None] * n
    exit_ = [None] * n
    entry[0] = (0,) * d
    for t in range(n):
        if t > 0:
            entry[t] = tuple((exit_[t - 1][j] + H[t][j] - H[t - 1][j]) % 2 for j in range(d))
        N = entry[t]
        if diagonal:
            exit_[t] = tuple(1 - b for b in N)
            continue
        if t == 0:
            # first sub-cell crosses toward H(1)
            X = tuple((N[j] + H[1][j] - H[0][j]) % 2 for j in range(d))
        elif t == n - 1:
            X = tuple(c // (s - 1) for c in H[t])
        else:
            k = step_axis[t]
            step = H[t + 1][k] - H[t][k]
            if (N[k] == 0 and step == 1) or (N[k] == 1 and step == -1):
                flip = k
            else:
                flip = step_axis[t - 1]
            X = tuple(1 - b if j == flip else b for j, b in enumerate(N))
        exit_[t] = X

    net_axis = [0] * n
    for t in range(n):
        if not diagonal:
            diff = [j for j in range(d) if entry[t][j] != exit_[t][j]]
            if len(diff) != 1:
                raise OrientationRuleError(
                    f"sub-cell {t}: entry {entry[t]} and exit {exit_[t]} differ in "
                    f"{len(diff)} coordinates, expected exactly 1", t)
            net_axis[t] = diff[0]
        if t < n - 1:
            k = step_axis[t]
            want = 1 if H[t + 1][k] > H[t][k] else 0
            if exit_[t][k] != want:
                raise OrientationRuleError(
                    f"sub-cell {t}: exit corner {exit_[t]} does not touch sub-cell {t + 1}", t)

    return OrientationTables(tuple(entry), tuple(exit_), tuple(net_axis), tuple(step_axis))


def _rotation_table(variant, cell_class, tables, n, d):
    if variant is AlignmentVariant.ADJACENT:
        i = cell_class.travel_axis
        return tuple((i - k) % d for k in tables.net_axis)
    if variant is AlignmentVariant.PLAIN:
        return (0,) * n
    if variant is AlignmentVariant.PRECESS:
        return tuple(t % d for t in range(n))
    return tuple((t + 1) % d for t in range(n))


def build_cell(path: PathSequence, variant=None) -> Cell:
    """Validate ``path`` and assemble an immutable :class:`Cell`.

    ``variant`` defaults to ADJACENT for adjacent-corner paths and PLAIN
    for diagonal ones; strings such as ``"precess1"`` are accepted.
    """
    cell_class = validate_path(path)
    adjacent = cell_class.kind is CellKind.ADJACENT
    if variant is None:
        variant = AlignmentVariant.ADJACENT if adjacent else AlignmentVariant.PLAIN
    variant = AlignmentVariant.parse(variant)
    if adjacent != (variant is AlignmentVariant.ADJACENT):
        raise ArgumentError(f"variant {variant.value!r} does not apply to a {cell_class.kind} cell")
    tables = derive_orientations(path, cell_class)
    n, d = len(path), path.rank
    rotation = _rotation_table(variant, cell_class, tables, n, d)
    index = {p: t for t, p in enumerate(path.nodes)}
    return Cell(path, cell_class, tables, variant, rotation, index)


def verify_recurrence_compatibility(cell: Cell, max_points: int = 10**6) -> Optional[int]:
    """Check that the curve generated from ``cell`` is continuous.

    Evaluates the integer recurrence on ``[0, min(s**(d*L), max_points))``
    where ``L`` is the largest multiple of ``d`` (at least ``d``) with
    ``s**(d*L) <= max_points``. Returns ``None`` when every consecutive
    pair is one unit step apart, otherwise the first ``u`` for which
    ``Q(u) -> Q(u+1)`` is not.
    """
    from .recurrence import encode_many

    d, sd = cell.rank, cell.size
    levels = d
    while sd ** (levels + d) <= max_points:
        levels += d
    count = min(sd**levels, max_points)
    if count < 2:
        return None
    chunk = 1 << 16
    prev = None
    for start in range(0, count, chunk):
        stop = min(count, start + chunk)
        pts = encode_many(np.arange(start, stop, dtype=np.int64), cell, groups=levels // d)
        if prev is not None:
            pts = np.vstack([prev, pts])
            base = start - 1
        else:
            base = start
        steps = np.abs(np.diff(pts, axis=0)).sum(axis=1)
        bad = np.flatnonzero(steps != 1)
        if bad.size:
            return int(base + bad[0])
        prev = pts[-1:]
    return None


@dataclass(frozen=True)
class CellDiagnostics:
    rank: int
    side: int
    cell_class: CellClass
    variant: AlignmentVariant
    isotropy_feasible: bool
    aligned_runs_possible: bool
    edge_counts: Tuple[int, ...]

    def lines(self):
        yield f"rank {self.rank} side {self.side} nodes {self.side ** self.rank}"
        yield f"class {self.cell_class.kind}"
        if self.cell_class.travel_axis is not None:
            yield f"travel_axis {self.cell_class.travel_axis}"
        yield f"variant {self.variant.value}"
        yield f"isotropy_feasible {str(self.isotropy_feasible).lower()}"
        yield f"aligned_runs_possible {str(self.aligned_runs_possible).lower()}"
        yield "edge_counts " + " ".join(str(c) for c in self.edge_counts)


def diagnostics(cell: Cell) -> CellDiagnostics:
    """Summarize a cell.

    ``isotropy_feasible`` is the necessary condition ``s**d + 1 = 0 (mod d)``
    for a balanced ``s**(d*d)`` pattern; ``aligned_runs_possible`` is
    ``s**d = 0 (mod d)``, under which precessing sub-cells of neighbouring
    parents line up and long straight runs appear.
    """
    d, s = cell.rank, cell.side
    counts = [0] * d
    for k in cell.tables.step_axis[:-1]:
        counts[k] += 1
    return CellDiagnostics(
        rank=d,
        side=s,
        cell_class=cell.cell_class,
        variant=cell.variant,
        isotropy_feasible=(s**d + 1) % d == 0,
        aligned_runs_possible=s**d % d == 0,
        edge_counts=tuple(counts),
    )


def parse_cell_file(text: str, budget: Optional[int] = None) -> PathSequence:
    """Parse the cell text format and validate the result.

    Format: a ``"<d> <s>"`` header line followed by ``s**d`` lines of ``d``
    integers in path order. Blank lines and lines starting with ``#`` are
    ignored.
    """
    budget = node_budget() if budget is None else budget
    header = None
    nodes = []
    node_lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"expected decimal integers, got {line!r}", lineno)
        if header is None:
            if len(values) != 2:
                raise ParseError("header must be '<rank> <side>'", lineno)
            d, s = values
            if d < 2 or s < 2:
                raise ParseError(f"rank and side must be >= 2 (got {d} {s})", lineno)
            if s**d > budget:
                raise ParseError(f"{s}**{d} nodes exceeds the node budget {budget}", lineno)
            header = (d, s)
            continue
        d, s = header
        if len(values) != d:
            raise ParseError(f"expected {d} coordinates, got {len(values)}", lineno)
        for c in values:
            if not 0 <= c < s:
                raise ParseError(f"coordinate {c} outside [0, {s})", lineno)
        if len(nodes) == s**d:
            raise ParseError(f"more than {s**d} nodes", lineno)
        nodes.append(tuple(values))
        node_lines.append(lineno)
    if header is None:
        raise ParseError("missing '<rank> <side>' header")
    d, s = header
    if len(nodes) != s**d:
        raise ParseError(f"expected {s**d} nodes for rank {d} side {s}, got {len(nodes)}")
    path = PathSequence(d, s, tuple(nodes))
    try:
        validate_path(path)
    except PathValidationError as exc:
        line = node_lines[exc.index] if exc.index is not None else None
        raise ParseError(str(exc), line) from exc
    return path


def render_cell_file(path: PathSequence, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{path.rank} {path.side}")
    lines.extend(" ".join(str(c) for c in p) for p in path.nodes)
    return "\n".join(lines) + "\n"


def read_cell_file(filename) -> PathSequence:
    with open(filename, encoding="ascii") as fh:
        return parse_cell_file(fh.read())


def meander_path() -> PathSequence:
    """The bundled rank-2 side-3 adjacent-corner meander."""
    text = resources.files("spacefill").joinpath("data/meander_3x3.cell").read_text(encoding="ascii")
    return parse_cell_file(text)


def hilbert_cell(rank: int = 2) -> Cell:
    return build_cell(make_serpentine_path(rank, 2))


def peano_cell(rank: int = 2, side: int = 3, variant="peano") -> Cell:
    if side % 2 == 0:
        raise ArgumentError("diagonal serpentine cells need an odd side")
    return build_cell(make_serpentine_path(rank, side), variant)


def cell_from_nodes(nodes: Sequence[Sequence[int]], side: int, variant=None) -> Cell:
    nodes = tuple(tuple(p) for p in nodes)
    if not nodes:
        raise ArgumentError("empty node list")
    return build_cell(PathSequence(len(nodes[0]), side, nodes), variant)
