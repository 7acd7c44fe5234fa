"""
Building and inspecting cells
=============================

A cell is a Hamiltonian lattice path that the recurrence repeats at every
scale. Serpentine cells exist for any rank and side.
"""

from spacefill import build_cell, diagnostics, make_serpentine_path, meander_path, render_cell_file

# Odd sides exit at the opposite corner; even sides exit one axis away.
for rank, side in [(2, 2), (2, 3), (3, 3), (4, 2)]:
    cell = build_cell(make_serpentine_path(rank, side))
    print(f"rank={rank} side={side}: {cell.cell_class.kind.value}")

# Per-node orientation tables for the 3x3 cell.
peano = build_cell(make_serpentine_path(2, 3))
for t, node in enumerate(peano.path.nodes):
    print(t, node, "entry", peano.tables.entry[t], "exit", peano.tables.exit[t])

# The diagnostics report flags whether balanced isotropy is even possible.
for line in diagnostics(peano).lines():
    print(line)

# Cells travel as small text files.
print(render_cell_file(meander_path(), "meander"))
