"""Unit-cube space-filling maps in exact rational arithmetic.

``unit_forward``/``unit_inverse`` are the finite-resolution integer
recurrences rescaled to ``[0, 1)``. ``mid_forward``/``mid_inverse`` are
the depth-limited real recurrences: they consume one base ``s**d`` digit
of the scalar (or one base ``s`` digit of each coordinate) per level and
stop after ``depth`` levels, the forward map landing on the centre of its
final sub-cell. Depths that are multiples of ``d`` line up with the
integer recurrence's digit groups.

Everything here is :class:`fractions.Fraction`; no floor is ever applied
to an inexact value.
"""

from fractions import Fraction
from typing import Sequence, Tuple

from .cells import Cell
from .errors import ArgumentError, DomainError, ParseError
from .recurrence import _align, _align_inv, decode, encode

RationalPoint = Tuple[Fraction, ...]

HALF = Fraction(1, 2)


def _unit_scalar(y, lo=0):
    y = Fraction(y)
    if not lo <= y < lo + 1:
        raise DomainError(f"{y} outside [{lo}, {lo + 1})")
    return y


def _unit_point(Y, cell, lo=0):
    Y = tuple(Fraction(c) for c in Y)
    if len(Y) != cell.rank:
        raise ArgumentError(f"expected {cell.rank} coordinates, got {len(Y)}")
    for c in Y:
        if not lo <= c < lo + 1:
            raise DomainError(f"coordinate {c} outside [{lo}, {lo + 1})")
    return Y


def _positive(n, what):
    if int(n) != n or n < 1:
        raise ArgumentError(f"{what} must be a positive integer, got {n}")
    return int(n)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def unit_forward(y, n: int, cell: Cell) -> RationalPoint:
    """Point of ``[0,1)**d`` for ``y`` in ``[0,1)`` at ``n`` digit groups.

    Equal to ``Q(floor(y * s**(d*d*n))) / s**(d*n)``.
    """
    y = _unit_scalar(y)
    n = _positive(n, "resolution")
    d, s = cell.rank, cell.side
    u = _floor(y * s ** (d * d * n))
    scale = s ** (d * n)
    return tuple(Fraction(c, scale) for c in encode(u, cell, groups=n))


def unit_inverse(Y: Sequence, n: int, cell: Cell) -> Fraction:
    """Scalar in ``[0,1)`` for a point of ``[0,1)**d`` at ``n`` digit groups.

    Equal to ``q(floor(Y * s**(d*n))) / s**(d*d*n)``.
    """
    Y = _unit_point(Y, cell)
    n = _positive(n, "resolution")
    d, s = cell.rank, cell.side
    scale = s ** (d * n)
    V = tuple(_floor(c * scale) for c in Y)
    return Fraction(decode(V, cell), s ** (d * d * n))


def mid_forward(y, depth: int, cell: Cell) -> RationalPoint:
    """Depth-limited real recurrence; lands on a sub-cell centre.

    The canonical depth for resolution ``n`` is ``n * d``.
    """
    y = _unit_scalar(y)
    depth = _positive(depth, "depth")
    s, sd = cell.side, cell.size
    H = cell.path.nodes
    digits = []
    for _ in range(depth):
        y *= sd
        t = _floor(y)
        digits.append(t)
        y -= t
    t = digits.pop()
    V = tuple((h + HALF) / s for h in H[t])
    for t in reversed(digits):
        A = _align(V, t, 1, cell)
        V = tuple((h + a) / s for h, a in zip(H[t], A))
    return V


def mid_inverse(Y: Sequence, depth: int, cell: Cell) -> Fraction:
    """Depth-limited inverse real recurrence.

    Reads ``depth`` base-``s`` digits of every coordinate and returns the
    truncated base ``s**d`` expansion of the scalar. A coordinate sitting
    exactly on the upper face of its sub-cell is kept in that (closed)
    sub-cell.
    """
    Y = _unit_point(Y, cell)
    depth = _positive(depth, "depth")
    s, sd = cell.side, cell.size
    index = cell.index
    u = 0
    for _ in range(depth):
        scaled = [c * s for c in Y]
        digits = tuple(min(_floor(c), s - 1) for c in scaled)
        t = index[digits]
        u = u * sd + t
        Y = _align_inv(tuple(c - k for c, k in zip(scaled, digits)), t, 1, cell)
    return Fraction(u, sd**depth)


def centered_forward(y, n: int, cell: Cell) -> RationalPoint:
    """``unit_forward`` recentred: ``[-1/2, 1/2) -> [-1/2, 1/2)**d``."""
    y = _unit_scalar(y, -HALF)
    return tuple(c - HALF for c in unit_forward(y + HALF, n, cell))


def centered_inverse(Y: Sequence, n: int, cell: Cell) -> Fraction:
    Y = _unit_point(Y, cell, -HALF)
    return unit_inverse(tuple(c + HALF for c in Y), n, cell) - HALF


def centered_mid_forward(y, depth: int, cell: Cell) -> RationalPoint:
    y = _unit_scalar(y, -HALF)
    return tuple(c - HALF for c in mid_forward(y + HALF, depth, cell))


def centered_mid_inverse(Y: Sequence, depth: int, cell: Cell) -> Fraction:
    Y = _unit_point(Y, cell, -HALF)
    return mid_inverse(tuple(c + HALF for c in Y), depth, cell) - HALF


_MAPS = {
    "F": (unit_forward, centered_forward),
    "f": (unit_inverse, centered_inverse),
    "E": (mid_forward, centered_mid_forward),
    "e": (mid_inverse, centered_mid_inverse),
}


def real_map(kind: str, argument, n: int, cell: Cell, centered: bool = False):
    """Dispatch by name: ``F``/``f`` (resolution ``n``) or ``E``/``e`` (depth ``n``)."""
    try:
        plain, shifted = _MAPS[kind]
    except KeyError:
        raise ArgumentError(f"unknown map {kind!r}; expected one of F, f, E, e")
    return (shifted if centered else plain)(argument, n, cell)


def centered(kind: str, argument, n: int, cell: Cell):
    return real_map(kind, argument, n, cell, centered=True)


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or a plain decimal integer."""
    text = text.strip()
    try:
        if "/" in text:
            p, q = text.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational of the form p/q: {text!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_point(text: str) -> RationalPoint:
    return tuple(parse_rational(part) for part in text.split(","))


def format_point(Y: Sequence) -> str:
    return ",".join(format_rational(c) for c in Y)
