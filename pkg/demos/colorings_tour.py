# Colorings, progressions and Hilbert cubes
#
# A coloring of [n] is a string of color digits.  We look for single-colored
# arithmetic progressions and Hilbert cubes x0 + S*{x1, ..., xk}.

from cubeforge import (estimate_mono_cube_probability, find_ap_free_coloring, find_mono_ap,
                       find_mono_cube, parse_coloring, product_coloring)

c = parse_coloring("00110011")
print(c.to_text(), "3-AP:", find_mono_ap(c, 3))
c = parse_coloring("001100110")
print(c.to_text(), "3-AP:", find_mono_ap(c, 3))

print("0000 has a 2-cube:", find_mono_cube(parse_coloring("0000"), 2))

# The product of two colorings is single-colored on a set exactly when both
# factors are.

p = product_coloring(parse_coloring("0101"), parse_coloring("0011"))
print("product coloring:", p.to_text(), "with", p.r, "colors")

# Searching for colorings that avoid 3-term progressions: possible up to 8.

for n in (8, 9):
    print(n, "->", find_ap_free_coloring(n, 3, 2))

# The chance that a random 2-coloring of [4] holds a single-colored 2-cube,
# exactly and by sampling.

print(estimate_mono_cube_probability(4, 2, exact=True).estimate)
est = estimate_mono_cube_probability(4, 2, 10_000, seed=0)
print(f"{est.estimate:.4f} +/- {est.stderr:.4f}")
