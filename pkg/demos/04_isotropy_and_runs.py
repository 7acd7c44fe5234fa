"""
Direction balance and straight runs
===================================

How many edges of a complete pattern point along each axis, and how long the
straight stretches get. Rotating the sub-cell orientation from node to node
spreads the travel across axes.
"""

from spacefill import edge_tally, hilbert_cell, peano_cell, run_histogram

for variant in ("peano", "precess", "precess1"):
    tally = edge_tally(peano_cell(2, 3, variant), 2)
    print(f"{variant:9s}", tally.counts)

for levels in range(1, 6):
    print("hilbert 3d", edge_tally(hilbert_cell(3), levels).counts)

print(run_histogram(peano_cell(2, 3, "peano"), 2).to_csv())
