"""Hochschild homology of the dual numbers Q[x]/(x^2), three ways.

Run: python3 demos/hkr_dual_numbers.py
"""
from hochkit import AffineAlgebra, bar_dims, build, decompose, homology_dims, koszul_tate_resolve

N, W = 4, 6
A = AffineAlgebra.build({"x": 1}, [lambda x: x**2])
M = build(koszul_tate_resolve(A, N, W))

print("resolvent generators:")
for i, v in enumerate(M.R.variables):
    print(f"  {v.name:10s} degree {v.degree:3d} weight {v.weight}  d = {M.R.d_value(i)}")

raw = homology_dims(M.H, range(-N, 1), range(W + 1))
hh = {(-n, w): d for (n, w), d in raw.items()}
oracle = bar_dims(A, N, W)
dec = decompose(M.C, M.cotangent.sym_degree, M.H, N, W)

print("\n n  w  HH  bar  pieces by symmetric degree p")
for (n, w), d in sorted(hh.items()):
    if d or oracle[(n, w)]:
        parts = {p: k for (n2, w2, p), k in dec.parts.items() if (n2, w2) == (n, w) and k}
        print(f"{n:2d} {w:2d} {d:3d} {oracle[(n, w)]:4d}  {parts}")
print("\nagrees with the bar complex:", hh == oracle)
print("sum rule holds:", dec.sum_rule)
