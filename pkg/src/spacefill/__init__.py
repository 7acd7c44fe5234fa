"""Space-filling curves of any rank and side, with exact arithmetic.

Hilbert, Peano and precessing (isotropic) variants for any rank d >= 2
and side s >= 2, built from a unit cell (a Manhattan Hamiltonian path on
the s**d lattice) by one integer recurrence and its inverse.

    >>> from spacefill import hilbert_cell, encode, decode
    >>> cell = hilbert_cell(2)
    >>> encode(4, cell)
    (0, 2)
    >>> decode((0, 2), cell)
    4
"""

from .analysis import (
    DimredSeries,
    RunHistogram,
    Tally,
    dimred_profile,
    edge_tally,
    loglog_slope,
    run_histogram,
    z_decode,
    z_encode,
)
from .cells import (
    AlignmentVariant,
    Cell,
    CellClass,
    CellKind,
    OrientationTables,
    PathSequence,
    build_cell,
    derive_orientations,
    diagnostics,
    hilbert_cell,
    make_serpentine_path,
    meander_path,
    parse_cell_file,
    peano_cell,
    read_cell_file,
    render_cell_file,
    validate_path,
    verify_recurrence_compatibility,
)
from .errors import *  # noqa: F401,F403
from .realmap import (
    centered,
    mid_forward,
    mid_inverse,
    real_map,
    unit_forward,
    unit_inverse,
)
from .recurrence import (
    align,
    align_inv,
    curve_point,
    decode,
    decode_centered,
    encode,
    encode_centered,
    encode_many,
    group_length,
)

__version__ = "0.1.0"
