"""Vectors of length 2p^3 and divisor p^2 in L_2d with d = p^3.

v_c = p^2 e2 + p(1 + c^2) f2 + c l lies in L_2d exactly when 1 + c^2 = 0 mod p.
Eichler's criterion says the stable orbit of v_c is fixed by its class in D,
so counting classes counts orbits.
"""

from latticefm import count_vc_orbits, eichler_invariant, discriminant_form, l2d, vc_vector

p = 5
L = l2d(p ** 3)
disc = discriminant_form(L)
for c in range(p * p):
    if (1 + c * c) % p == 0:
        inv = eichler_invariant(L, vc_vector(p, c), disc)
        print(f"c = {c:2d}: v^2 = {inv.length}, div = {inv.divisor}, class {inv.cls[0]} in Z/{2 * p ** 3}")

for p in (2, 3, 5, 7, 13, 17):
    stable, lower = count_vc_orbits(p)
    print(f"p = {p:2d}: {stable} stable orbits, at least {lower} orbits")
