"""Q[x,y]/(x^2, xy) is not a complete intersection: the Tate procedure keeps
adding variables.  This prints them and checks HH against the bar complex.

Run: python3 demos/non_ci_tate.py
"""
from hochkit import AffineAlgebra, bar_dims, build, homology_dims, koszul_tate_resolve, verify_iso

N, W = 3, 6
A = AffineAlgebra.build({"x": 1, "y": 1}, [lambda x, y: x**2, lambda x, y: x * y])
res = koszul_tate_resolve(A, N, W)
for k, w, names in res.tate_log:
    print(f"degree -{k}, weight {w}: {', '.join(names)}")

M = build(res)
raw = homology_dims(M.H, range(-N, 1), range(W + 1))
hh = {(-n, w): d for (n, w), d in raw.items()}
print("HH totals by n:", [sum(d for (n, _), d in hh.items() if n == k) for k in range(N + 1)])
print("bar complex agrees:", hh == bar_dims(A, N, W))
rep = verify_iso(M.Phi, M.H, M.C, range(-N, 1), range(W + 1))
print("Phi is an isomorphism in every bidegree:", rep.passed)
