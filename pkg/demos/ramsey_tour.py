# Small Van der Waerden and Hilbert cube numbers
#
# W(k, r) is the least n such that every r-coloring of [n] has a
# single-colored k-term progression.  h(k, r) is the same for k-cubes.  The
# search certifies both sides: a good coloring of [n-1] and exhaustion at n.

import time

from cubeforge import census_small_sumsets, consistency_h_le_w, hilbert_number, vdw_number
from cubeforge.ramsey import check_against_baseline

for k, r, nmax in [(3, 2, 20), (4, 2, 40), (3, 3, 30)]:
    t0 = time.perf_counter()
    res = vdw_number(k, r, nmax)
    print(f"W({k},{r}) = {res.value}  witness {res.witness}  "
          f"{res.nodes} nodes  {time.perf_counter() - t0:.2f}s  baseline {check_against_baseline(res)}")

h = hilbert_number(2, 2, 30)
print("h(2,2) =", h.value, "witness", h.witness)

rep = consistency_h_le_w(2, 2)
print("h(2,2) <= W(4,2):", rep.status)

# How many k-subsets of [n] have a small restricted sumset?

for u in (6, 7, 8):
    print(f"k=3 subsets of [10] with |S*A| <= {u}:", census_small_sumsets(10, 3, u).count)
