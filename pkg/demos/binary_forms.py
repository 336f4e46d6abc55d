"""Three binary forms with the same determinant but different discriminant forms,
and two forms in one genus that are not isometric."""

from fractions import Fraction as F

from latticefm import (
    discriminant_form,
    fqf_isomorphic,
    is_isomorphic_definite,
    make_lattice,
    represents,
    same_genus,
)

A = make_lattice([[2, 4], [4, 0]], label="A")
B = make_lattice([[0, 4], [4, 0]], label="B")
C = make_lattice([[-2, 4], [4, 0]], label="C")

for L in (A, B, C):
    q = discriminant_form(L).form
    print(f"{L.label}: det {L.det}, D = {' x '.join(f'Z/{d}' for d in q.invariant_factors)}")

# the group structure already separates A from B
print("A ~ B in genus:", same_genus(A, B))

# A and C have the same group; look at q on the 2-torsion
dA, dC = discriminant_form(A), discriminant_form(C)
for name, d in (("A", dA), ("C", dC)):
    vals = sorted(v for _, v, o in d.form.element_table() if o <= 2)
    print(f"q_{name} on elements of order <= 2:", [str(v) for v in vals])
print("q_A ~ q_C:", fqf_isomorphic(dA.form, dC.form) is not None)

# values on the natural generators e1/2 and (2e1 + e2)/8
t1, t2 = dA.reduce([F(1, 2), 0]), dA.reduce([F(1, 4), F(1, 8)])
print("q_A(t1), q_A(t2) =", dA.form.value(t1), dA.form.value(t2))

# same genus, different class
D = make_lattice([[2, 1], [1, 12]], label="D")
E = make_lattice([[4, 1], [1, 6]], label="E")
print("\nD ~ E in genus:", same_genus(D, E))
print("D represents 2:", represents(D, 2))
print("E represents 2:", represents(E, 2))
print("D isometric to E:", is_isomorphic_definite(D, E) is not None)
