"""Enumerate minimal antisquares by brute force and compare with the
closed-form description (2n conjugates of 0^(n-2) 10 1^(n-2) 01 for n >= 5).
"""

from antisquares.antisquares import characterized_minimal, minimal_antisquares

MAX_ORDER = 10

table = minimal_antisquares(MAX_ORDER)
print("order  count  closed-form match  members (first few)")
for order in range(1, MAX_ORDER + 1):
    brute = table.by_order[order]
    closed = characterized_minimal(order)
    sample = ",".join(sorted(w.text for w in brute)[:3])
    print(f"{order:5d}  {len(brute):5d}  {str(brute == closed):>17}  {sample}")
