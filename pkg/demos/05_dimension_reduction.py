"""
Locality of the scalar order
============================

Mean Euclidean distance between points whose scalars differ by a fixed gap.
Continuous curves grow roughly like the square root of the gap. The bit
interleaving order jumps even at gap one.
"""

from spacefill import dimred_profile, hilbert_cell, loglog_slope, peano_cell

for name, cell in [("hilbert", hilbert_cell(2)), ("peano", peano_cell()),
                   ("peano precess1", peano_cell(2, 3, "precess1"))]:
    series = dimred_profile(cell)
    print(f"{name:15s} slope {loglog_slope(series):.3f}  gap 100 mean {series.means[-1]:.2f}")

for d in (2, 3, 4):
    print(f"z-order d={d}: unit gap mean {dimred_profile(rank=d, gaps=[1], samples=1 << 14).means[0]:.4f}")
