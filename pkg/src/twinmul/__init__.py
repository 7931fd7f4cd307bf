"""Fast products with structured binary matrices."""
from .matrix_core import (
    BitMatrix,
    DimensionError,
    column_hamming_sum,
    diff,
    flip_entries,
    from_difference_representation,
    hamming_distance,
    pack_bits,
    prefix_sum,
    row_hamming_sum,
    transpose,
)
from .rect_decomp import PolygonStats, Rect, RectDecomposition, decompose, polygon_stats, validate
from .rect_engine import OpCounter, RectProduct, preprocess_and_wrap
from .hamming_engine import HammingPlan, HammingProduct, build_plan, coherence_upper_bound, mst_order
from .twinwidth import (
    Division,
    MergeOp,
    MergeSequence,
    build_theorem4_sequence,
    corner_count,
    gen_block_example,
    is_mixed,
    max_wideness,
    mixed_free_check,
    verify_wideness,
)
from .generators import (
    GeneratorSpec,
    corrupt,
    gen_chessboard,
    gen_grid_sparse,
    gen_random_dense,
    gen_random_twin_ordered,
    gen_theorem4,
)

__version__ = "0.1.0"
