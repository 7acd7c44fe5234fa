"""Integer recurrences: scalar <-> lattice point.

``encode`` maps a non-negative integer to a lattice point by reading its
base ``s**d`` digits, most significant first, placing the child cell at
node ``H(t)`` of its parent and aligning it (coordinate rotation followed
by reflection) so consecutive children join with a single unit edge.
Digits are consumed in groups of ``d`` so that every rotation of the cell
is cycled through; a leading all-zero group never changes the result.

``decode`` runs the same digit walk backwards. The centered variants
shift scalar and coordinates by half the current scale so that the whole
integer lattice is reachable (diagonal-corner cells only).

All scale arithmetic is done with Python integers; there are no
logarithms and no size limit other than memory.
"""

from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np

from .cells import Cell
from .errors import ArgumentError, RangeError, UnsupportedClassError

Point = Tuple[int, ...]


def _align(V, t, w, cell):
    d = cell.rank
    r = cell.rotation[t]
    N = cell.tables.entry[t]
    return tuple(w - V[(j + r) % d] if N[j] else V[(j + r) % d] for j in range(d))


def _align_inv(V, t, w, cell):
    d = cell.rank
    r = cell.rotation[t]
    N = cell.tables.entry[t]
    reflected = [w - v if b else v for v, b in zip(V, N)]
    return tuple(reflected[(j - r) % d] for j in range(d))


def _check_align_args(V, t, w, cell):
    if len(V) != cell.rank:
        raise ArgumentError(f"expected {cell.rank} coordinates, got {len(V)}")
    if not 0 <= t < cell.size:
        raise ArgumentError(f"node index {t} outside [0, {cell.size})")
    for v in V:
        if not 0 <= v <= w:
            raise RangeError(f"coordinate {v} outside [0, {w}]")


def align(V: Sequence, t: int, w, cell: Cell) -> tuple:
    """Orient a child-cell point for placement at node ``t``.

    Coordinate ``j`` of the result is coordinate ``j + rotation[t]`` of
    ``V``, complemented against ``w`` where the entry corner of node ``t``
    has a 1 bit. Works on integers and on exact rationals alike.
    """
    _check_align_args(V, t, w, cell)
    return _align(V, t, w, cell)


def align_inv(V: Sequence, t: int, w, cell: Cell) -> tuple:
    """Exact inverse of :func:`align`: undo the reflection, then the rotation."""
    _check_align_args(V, t, w, cell)
    return _align_inv(V, t, w, cell)


def group_length(u: int, cell: Cell) -> int:
    """Smallest ``l >= 1`` with ``u < s**(d*d*l)``."""
    if u < 0:
        raise RangeError(f"scalar {u} is negative")
    block = cell.side ** (cell.rank * cell.rank)
    l, top = 1, block
    while u >= top:
        top *= block
        l += 1
    return l


def _coordinate_groups(V, cell):
    # smallest l >= 1 with max(V) < s**(d*l)
    base = cell.size
    top, l = base, 1
    biggest = max(V)
    while biggest >= top:
        top *= base
        l += 1
    return l


def encode(u: int, cell: Cell, groups: Optional[int] = None) -> Point:
    """Lattice point of scalar ``u`` (all coordinates below ``s**(d*l)``).

    ``groups`` forces the number of ``d``-digit groups processed; it must
    be at least :func:`group_length` and yields the same point.
    """
    u = int(u)
    need = group_length(u, cell)
    if groups is None:
        groups = need
    elif groups < need:
        raise ArgumentError(f"{groups} digit groups cannot hold {u} (need {need})")
    d, s, sd = cell.rank, cell.side, cell.size
    H = cell.path.nodes
    V = (0,) * d
    w = 1
    # innermost child first; equivalent to the top-down recursion
    for _ in range(d * groups):
        u, t = divmod(u, sd)
        A = _align(V, t, w - 1, cell)
        h = H[t]
        V = tuple(w * h[j] + A[j] for j in range(d))
        w *= s
    return V


def decode(V: Sequence[int], cell: Cell) -> int:
    """Scalar whose :func:`encode` image is ``V``.

    Defined for every non-negative integer tuple; digits are read from
    the most significant base-``s`` digit of the coordinates down.
    """
    V = tuple(int(v) for v in V)
    if len(V) != cell.rank:
        raise ArgumentError(f"expected {cell.rank} coordinates, got {len(V)}")
    if any(v < 0 for v in V):
        raise RangeError(f"negative coordinate in {V}")
    d, s, sd = cell.rank, cell.side, cell.size
    index = cell.index
    w = s ** (d * _coordinate_groups(V, cell) - 1)
    u = 0
    while w > 0:
        digits = tuple(v // w for v in V)
        t = index[digits]
        u = u * sd + t
        V = _align_inv(tuple(v % w for v in V), t, w - 1, cell)
        w //= s
    return u


def curve_point(y, cell: Cell) -> Tuple[Fraction, ...]:
    """Point at parameter ``y >= 0`` on the polyline through Q(0), Q(1), ..."""
    y = Fraction(y)
    if y < 0:
        raise RangeError(f"curve parameter {y} is negative")
    base = y.numerator // y.denominator
    frac = y - base
    a = encode(base, cell)
    if frac == 0:
        return tuple(Fraction(c) for c in a)
    b = encode(base + 1, cell)
    return tuple((1 - frac) * p + frac * q for p, q in zip(a, b))


def _require_diagonal(cell):
    if not cell.is_diagonal:
        raise UnsupportedClassError(
            "centered maps need a diagonal-corner cell (odd side); "
            f"got {cell.cell_class}")


def encode_centered(u: int, cell: Cell, groups: Optional[int] = None) -> Point:
    """Signed lattice point of signed scalar ``u``; ``0`` maps to the origin.

    ``groups`` may force a larger scale than the minimum; the result does
    not depend on it.
    """
    _require_diagonal(cell)
    u = int(u)
    d = cell.rank
    block = cell.side ** (d * d)
    l, top = 1, block
    while not 0 <= u + top // 2 < top:
        top *= block
        l += 1
    if groups is not None:
        if groups < l:
            raise ArgumentError(f"{groups} digit groups cannot hold {u} (need {l})")
        top *= block ** (groups - l)
        l = groups
    offset = cell.side ** (d * l) // 2
    V = encode(u + top // 2, cell, groups=l)
    return tuple(v - offset for v in V)


def decode_centered(V: Sequence[int], cell: Cell) -> int:
    """Inverse of :func:`encode_centered` on the whole signed lattice."""
    _require_diagonal(cell)
    V = tuple(int(v) for v in V)
    if len(V) != cell.rank:
        raise ArgumentError(f"expected {cell.rank} coordinates, got {len(V)}")
    d, sd = cell.rank, cell.size
    need = 2 * (1 + max(abs(v) for v in V))
    l, top = 1, sd
    while top < need:
        top *= sd
        l += 1
    offset = top // 2
    return decode(tuple(v + offset for v in V), cell) - cell.side ** (d * d * l) // 2


_INT64_SAFE = 1 << 62


def encode_many(us, cell: Cell, groups: Optional[int] = None) -> np.ndarray:
    """Vectorized :func:`encode` for an int64 array of scalars.

    Returns an ``(len(us), d)`` int64 array. Intended for bulk analysis
    on patterns whose coordinates fit comfortably in 64 bits; larger
    inputs raise ``ArgumentError`` (use :func:`encode`).
    """
    us = np.asarray(us, dtype=np.int64)
    if us.ndim != 1:
        raise ArgumentError("expected a one-dimensional array of scalars")
    if us.size and us.min() < 0:
        raise RangeError("negative scalar in batch")
    d, s, sd = cell.rank, cell.side, cell.size
    need = group_length(int(us.max()) if us.size else 0, cell)
    if groups is None:
        groups = need
    elif groups < need:
        raise ArgumentError(f"{groups} digit groups cannot hold the batch (need {need})")
    if sd ** (d * groups) >= _INT64_SAFE:
        raise ArgumentError("pattern too large for the 64-bit batch encoder")
    rows = np.arange(us.size)[:, None]
    V = np.zeros((us.size, d), dtype=np.int64)
    rest = us.copy()
    w = 1
    for _ in range(d * groups):
        t = rest % sd
        rest //= sd
        rotated = V[rows, cell._gather[t]]
        flip = cell._entry[t].astype(bool)
        A = np.where(flip, (w - 1) - rotated, rotated)
        V = w * cell._nodes[t] + A
        w *= s
    return V
