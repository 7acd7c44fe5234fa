"""
Signed scalars around the origin
================================

Cells exiting at the opposite corner can be centred so that scalar zero sits
at the lattice origin. Negative scalars then spiral outwards in all of the
plane.
"""

from spacefill import decode_centered, encode_centered, peano_cell

cell = peano_cell()
for u in (-3280, -40, -1, 0, 1, 40, 3280):
    print(u, encode_centered(u, cell))

points = [encode_centered(u, cell) for u in range(-3280, 1)]
print("extent", min(min(p) for p in points), max(max(p) for p in points))
print(decode_centered((10**20, -3), cell))
