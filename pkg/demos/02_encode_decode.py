"""
Scalars to lattice points and back
==================================

Integer encoding is exact for scalars of any size, because Python integers
never overflow.
"""

import numpy as np

from spacefill import decode, encode, encode_many, hilbert_cell, peano_cell

hilbert = hilbert_cell(2)
print([encode(u, hilbert) for u in range(16)])

# Consecutive scalars always land on neighbouring lattice points.
cell = peano_cell(2, 3, "precess1")
pts = encode_many(np.arange(3**8), cell)
print("max step:", np.abs(np.diff(pts, axis=0)).sum(axis=1).max())

# Very large scalars round-trip exactly.
u = 7**200
V = encode(u, cell)
print(len(str(V[0])), "digit coordinates; roundtrip ok:", decode(V, cell) == u)

# Three dimensions work the same way.
print(encode(123456789, hilbert_cell(3)))
