# Checking the bounds in batch
#
# verify_bounds runs randomised and exhaustive checks of the inequalities
# the library relies on.  Each suite reports how many cases it checked and
# how many violated the bound.

from cubeforge import verify_bounds

report = verify_bounds({"suites": {"chain": {"trials": 300}, "census": {}, "gap": {},
                                    "sidon": {}, "product": {"n": 3}}})
for row in report["suites"]:
    print(f"{row['suite']:8s} checked={row['checked']:5d} violations={row['violations']} "
          f"{row['seconds']:.2f}s")
print("all passed:", report["passed"])
