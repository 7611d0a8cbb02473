"""Higher preprojective algebras of type A for a few (d, s).

Vertices are tuples summing to s-1, arrows move one unit between
neighbouring coordinates.  The expected dimension is d(s-1)/(s+d).

    python3 demos/higher_type_a.py
"""
import time

from fcy.analysis import analyze
from fcy.constructions import higher_typeA

print(" d  s   dim  k  N   CY pair   expected   seconds")
for d, s in [(1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]:
    t0 = time.perf_counter()
    rep = analyze(higher_typeA(d, s), d=d)
    dt = time.perf_counter() - t0
    want = (d * (s - 1), s + d)
    print(f"{d:2d} {s:2d} {rep.dim:5d} {rep.k:2d} {rep.N:2d}   {str(rep.cy):9s} {str(want):10s} {dt:6.2f}")

# the triangle case: every path of length two vanishes
pres = higher_typeA(2, 2)
print("\ntypeA(2,2) arrows:")
for a in pres.quiver.arrows:
    print(f"  {a.id}: {a.source} -> {a.target}, degree {a.degree}")
print("relations:", [[p.arrows for _, p in r.terms] for r in pres.relations])
