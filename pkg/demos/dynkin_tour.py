"""Walk through the preprojective algebra of A_3 step by step, then
tabulate Calabi-Yau dimensions for the small Dynkin types.

    python3 demos/dynkin_tour.py
"""
from fcy.algebra import quotient_basis
from fcy.analysis import analyze, bbk_check
from fcy.constructions import preprojective_dynkin
from fcy.frobenius import Character, chi_twist, da_order, frobenius_form, nakayama_automorphism, selfinjectivity_test


def show(alg, x):
    return " + ".join(f"{c}*{alg.label(k)}" for k, c in sorted(x.items())) or "0"


pres, data = preprojective_dynkin("A", 3)
alg = quotient_basis(pres)
print(f"Pi(A_3) has dimension {alg.dim}; basis:")
for i, p in enumerate(alg.basis):
    print(f"  {i:2d}  {alg.label(i):12s} {p.source} -> {p.target}  degree {alg.deg[i][0]}")

nu = selfinjectivity_test(alg)
print("\nNakayama permutation:", nu)

form = frobenius_form(alg)
alpha = nakayama_automorphism(alg, form)
print("degree adjuster:", {v: d[0] for v, d in alpha.ell.items()})
for aid in ("a1", "a1*", "a2", "a2*"):
    j = alg.arrow_basis[aid]
    print(f"  alpha({aid}) = {show(alg, alpha.columns[j])}")

# twisting by the sign character flips the starred arrows
tw = chi_twist(alpha, Character.sign())
res = da_order(alg, tw)
print(f"\nwith chi = sgn: k = {res.k}, N = {res.N} (inner twist used: {res.used_inner}),"
      f" strict order {res.strict_order}")
print(f"so Pi(A_3) is fractional Calabi-Yau of dimension {res.N}/{res.k + res.N}")

print("\ntype  h   R   k   N   m   expected")
for t, n in [("A", 2), ("A", 3), ("A", 4), ("A", 5), ("D", 4), ("D", 5), ("E", 6)]:
    pres, data = preprojective_dynkin(t, n)
    rep = analyze(pres, chi="sgn")
    h = data.h
    want = (h // 2 - 1, h // 2) if data.rho_is_identity() else (h - 2, h)
    print(f"{data.name:5s} {h:2d}  {data.R:2d}  {rep.k}  {rep.N:2d}  {rep.m:2d}   {want[0]}/{want[1]}")

print("\nNakayama automorphism modulo inner automorphisms:")
for t, n in [("A", 2), ("A", 3), ("D", 4)]:
    b = bbk_check(t, n)
    print(f"  {b.name}: inner={b.alpha_inner}, square inner={b.alpha_squared_inner},"
          f" matches reference up to inner={b.agrees_up_to_inner}")
