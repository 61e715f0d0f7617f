# Restricted sumsets in integer boxes
#
# In more dimensions a set A in [N1] x ... x [Nd] is cut into stacks along
# the last axis.  Dense stacks carry at least half of A, and grouping them
# by size into dyadic classes picks out a large, uniform piece.

from cubeforge import (GridSet, dyadic_select, freiman_embed_set, grid_restricted_sumset,
                       index_walk_witness, stack_partition, verify_dense_gap_bound)
from cubeforge.grids import grid_sumset_size

A = GridSet.of([(1, 1), (2, 1), (2, 2), (2, 3)], box=(2, 3))
print("|S*A| =", len(grid_restricted_sumset(A).points))

S = stack_partition(A)
print("stacks:", S.stacks, " dense:", sorted(S.dense), " alpha =", S.alpha)
choice = dyadic_select(S)
print("dyadic class", choice.index, "covers", choice.covered, "of", choice.size)

# Inside one stack, replacing small elements by large ones one at a time
# gives a strictly increasing walk of sums.

print("index walk for [1,2,3,4]:", index_walk_witness([1, 2, 3, 4]))

# Flattening to two dimensions keeps A the same size, and the sumset can
# only shrink.

B = GridSet.of([(1, 2, 1), (2, 1, 2), (1, 1, 1)], box=(2, 2, 2))
print("|S*B| =", grid_sumset_size(B), " |S*phi(B)| =", grid_sumset_size(freiman_embed_set(B)))

# Full boxes, with the sumset size measured against |A|^3.

for side in (2, 3, 4, 5):
    rep = verify_dense_gap_bound(GridSet.full_box((side, side)))
    print(f"[{side}]x[{side}]  |S*A| = {rep.sumset_size:5d}  ratio to |A|^3 = {rep.sumset_size / rep.size**3:.3f}")
