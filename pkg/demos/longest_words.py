"""Exhaustive searches for the longest binary words under combined
power-freeness and antisquare restrictions.

Two families are explored: capping the largest antisquare order, and
capping the number of distinct antisquares.  Each search closes the whole
tree, so the reported lengths are exact maxima.
"""

from antisquares.repetitions import PowerBound
from antisquares.search import ConstraintSet, longest_word

print("capping the antisquare order:")
for cap, beta in [(4, "8/3"), (5, "5/2"), (6, "7/3")]:
    c = ConstraintSet(power=PowerBound.parse(beta), max_antisquare_order=cap)
    out = longest_word(c, max_depth=256)
    print(
        f"  order < {cap}, {beta}-free: longest = {out.max_length}"
        f" (nodes {out.nodes_explored}, exhausted {out.exhausted})"
    )
    print(f"    witness: {out.witness}")

print("capping the number of distinct antisquares:")
for cap, beta in [(5, "3"), (8, "8/3"), (14, "5/2"), (15, "17/7"), (16, "7/3")]:
    c = ConstraintSet(power=PowerBound.parse(beta), max_distinct_antisquares=cap)
    out = longest_word(c, max_depth=256)
    print(
        f"  at most {cap} antisquares, {beta}-free: longest = {out.max_length}"
        f" (nodes {out.nodes_explored}, exhausted {out.exhausted})"
    )
