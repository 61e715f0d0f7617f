# Generalised arithmetic progressions of rank two
#
# A symmetric rank-2 GAP is {a + i d1 + j d2 : |i| <= m, |j| <= n}.  Here
# we enumerate one, cut it into its four sign quadrants and two axes, and
# find the single arithmetic progression that contains it.

from cubeforge import Gap, containing_ap, decompose_rank2, enumerate_gap, find_collision
from cubeforge.errors import NotFoundError

Q = Gap.symmetric((5, 1), (1, 1))
print("Q =", Q.to_text(), " elements:", list(enumerate_gap(Q.closed_box())))

dec = decompose_rank2(Q)
for name, part in zip(["++", "+-", "-+", "--", "d1 axis", "d2 axis"], dec.parts):
    print(f"  {name:8s}", list(part))

# Every such GAP sits inside an AP with difference gcd(d1, d2).

Q = Gap.symmetric((2, 3), (2, 2))
print("containing AP of", Q.to_text(), "->", containing_ap(Q))

# When the box is large compared with the differences the GAP stops being
# proper: two index pairs land on the same integer.

for d1, d2, m, n in [(2, 3, 4, 3), (1, 1, 2, 2), (2, 5, 2, 2)]:
    try:
        w = find_collision(d1, d2, m, n)
        print((d1, d2, m, n), "collision", w.x, w.y, "value", w.value())
    except NotFoundError:
        print((d1, d2, m, n), "proper, no collision")
