# Restricted sumsets of integer sets
#
# The restricted sumset of A collects the sums of every subset of A, the
# empty subset included.  For a set of k positive integers it always has at
# least C(k+1, 2) + 1 elements, and a chain of k(k+1)/2 + 1 increasing sums
# shows why.

from cubeforge import (chain_witness, ell_fold_sums, is_sidon, longest_ap_in,
                       m_fold_restricted_sumset, restricted_sumset)
from cubeforge.sumsets import chain_lower_bound

A = [1, 2, 4]
S = restricted_sumset(A)
print("A =", A, " sums =", list(S))

# Powers of two are the extreme case: every subset sum is different.
# An arithmetic progression is the other extreme, reaching the lower bound.

for A in ([1, 2, 4, 8], [1, 2, 3, 4], [3, 10, 11, 40]):
    print(A, len(restricted_sumset(A)), ">=", chain_lower_bound(len(A)))

# The chain itself, one sum per step.

print("chain for [2,3,7]:", chain_witness([2, 3, 7]))

# Sums of exactly l elements, and the m-fold version where m distinct
# subsets are added together.

print("2-element sums of 1..4:", list(ell_fold_sums([1, 2, 3, 4], 2)))
print("|2 S*{1,2,3}| =", len(m_fold_restricted_sumset([1, 2, 3], 2)))

# Sidon sets have all pairwise sums distinct.  Their sumsets tend to be big,
# but not so big that they avoid long progressions.

B = [1, 2, 5, 11, 19]
print(B, "Sidon:", is_sidon(B))
ap = longest_ap_in(restricted_sumset(B))
print("longest AP in its sumset:", ap)
