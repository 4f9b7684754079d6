"""
Diophantine triples inside a recurrence
=======================================

Search a < b < c <= c_max with ab+1, ac+1, bc+1 all sequence values and
compare with a plain triple loop.
"""

import time

from pisot_triples import FIBONACCI, LUCAS, TRIBONACCI, eval_range, find_triples

C_MAX = 300

for spec in (FIBONACCI, LUCAS, TRIBONACCI):
    t0 = time.perf_counter()
    hits = find_triples(spec, C_MAX)
    dt = time.perf_counter() - t0
    print(f"{spec}   {len(hits)} triple(s) in {dt:.3f}s")
    for h in hits:
        print("   ", h.as_tuple(), "indices", h.x, h.y, h.z)

# the naive loop, for comparison (slow but obviously right)
vals = set(eval_range(LUCAS, 0, 40))
naive = [(a, b, c) for c in range(3, 60) for b in range(2, c) for a in range(1, b)
         if {a * b + 1, a * c + 1, b * c + 1} <= vals]
print("naive Lucas, c <= 59:", naive)

# 1 is excluded with a_min=2
print("Lucas, a_min=2:", [h.as_tuple() for h in find_triples(LUCAS, C_MAX, a_min=2)])
