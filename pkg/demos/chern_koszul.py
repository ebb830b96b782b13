"""Atiyah class and Chern character of the Koszul-type complex
R e_a -> R e_b -> R e_c over the dual numbers resolvent.

Run: python3 demos/chern_koszul.py
"""
from hochkit import AffineAlgebra, build, koszul_tate_resolve
from hochkit.chern import (atiyah_is_closed, atiyah_of_complex, check_twisted, chern_character,
                           shift, twisted)

A = AffineAlgebra.build({"x": 1}, [lambda x: x**2])
M = build(koszul_tate_resolve(A, 4, 6))
x, z = M.R.gen("x"), M.R.gen("z1_2_0")

F = twisted(M.R, [("a", -2, 2), ("b", -1, 1), ("c", 0, 0)],
            [[0, 0, 0], [x, 0, 0], [-z, x, 0]])
print("diagnostics:", check_twisted(F) or "none")
At = atiyah_of_complex(F, M.cotangent)
for row in At:
    print("  ", [str(e) for e in row])
print("At closed:", atiyah_is_closed(F, At, M.cotangent))
print("ch(F)    =", chern_character(F, M.cotangent))
print("ch(F[1]) =", chern_character(shift(F), M.cotangent))
