"""cubeforge: restricted sumsets, GAPs, colorings, small Van der Waerden and
Hilbert cube numbers, dense-box sumset bounds and Sidon set growth."""

__version__ = "0.1.0"

from .colorings import (
    Coloring,
    CubeWitness,
    ProbabilityEstimate,
    estimate_mono_cube_probability,
    find_ap_free_coloring,
    find_mono_ap,
    find_mono_cube,
    parse_coloring,
    product_coloring,
    random_coloring,
)
from .errors import (
    BudgetError,
    BudgetExceeded,
    CapError,
    CubeforgeError,
    DegenerateError,
    DomainError,
    EmptyError,
    NotFoundError,
    NotPrimeError,
    PreconditionError,
    RangeError,
    SearchTimeout,
    ShapeError,
    SumOverflowError,
    WindowError,
)
from .gaps import (
    CollisionWitness,
    Gap,
    Rank2Decomposition,
    containing_ap,
    decompose_rank2,
    enumerate_gap,
    find_collision,
    parse_gap,
)
from .grids import (
    DenseBoxReport,
    DyadicChoice,
    GridSet,
    StackDecomposition,
    dyadic_select,
    freiman_embed_box,
    freiman_embed_set,
    grid_restricted_sumset,
    index_walk_witness,
    parse_grid_text,
    stack_partition,
    verify_dense_gap_bound,
)
from .intset import ApWitness, IntSet, parse_set_text, read_set_file
from .ramsey import (
    CensusResult,
    ConsistencyReport,
    RamseyResult,
    census_small_sumsets,
    consistency_h_le_w,
    hilbert_number,
    vdw_number,
)
from .sidon import (
    GrowthStep,
    GrowthTrace,
    erdos_turan_sidon,
    grow_large_phase,
    grow_small_phase,
    mian_chowla,
    sidon_cubic_lowerbound,
)
from .sumsets import (
    chain_witness,
    ell_fold_sums,
    is_sidon,
    longest_ap_in,
    m_fold_restricted_sumset,
    m_fold_sumset,
    restricted_sumset,
    sumset,
)
from .verify import verify_bounds
