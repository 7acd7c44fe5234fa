"""
Maps on the unit interval
=========================

The real-valued maps use exact rationals, so denominators stay powers of the
side length and nothing is rounded.
"""

from fractions import Fraction

from spacefill import mid_forward, mid_inverse, peano_cell, unit_forward, unit_inverse
from spacefill.realmap import format_point

cell = peano_cell()
y = Fraction(1234, 3**8)

for n in (1, 2, 3):
    print(n, format_point(unit_forward(y, n, cell)), format_point(mid_forward(y, 2 * n, cell)))

# Inverting at matching resolution truncates y to a multiple of s^(-d*d*n).
print(unit_inverse(unit_forward(y, 2, cell), 2, cell))

# The mid-cell form inverts exactly.
print(mid_inverse(mid_forward(y, 4, cell), 4, cell) == y)
