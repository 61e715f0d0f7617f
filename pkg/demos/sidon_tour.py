# Growing a set inside the sumset of a Sidon set
#
# Starting from a Sidon set A, pairs of elements are merged into a growing
# set X while |S*X| increases: by a factor of 3/2 in the small phase, then by
# a fixed additive amount in the large phase.  The end result is a cubic
# lower bound |S*A| >= c |A|^3.

from cubeforge import erdos_turan_sidon, mian_chowla, restricted_sumset, sidon_cubic_lowerbound
from cubeforge.sidon import final_size_floor

for p in (11, 17, 23, 31, 43):
    A = erdos_turan_sidon(p)
    tr = sidon_cubic_lowerbound(A)
    print(f"p={p:2d} |A|={len(A):3d} steps={len(tr.steps):3d} small exit={tr.small_exit:10s} "
          f"|S*X|={tr.final_sumset:7d} floor={final_size_floor(len(A)):9.1f} "
          f"c={tr.constant:.3f}  full |S*A|={len(restricted_sumset(A))}")

# The greedy Mian-Chowla sequence is another source of Sidon sets.

A = mian_chowla(16)
print(list(A))
tr = sidon_cubic_lowerbound(A)
for step in tr.steps[:6]:
    print(f"  {step.phase:5s} merge {step.a1}+{step.a2}  {step.sumset_before} -> {step.sumset_after}")
