"""Overlattices from isotropic subgroups, and back."""

from fractions import Fraction as F

from latticefm import (
    FiniteQuadraticForm,
    FqfSubgroup,
    classifying_subgroup,
    discriminant_form,
    enumerate_gluings,
    glue,
    hyperbolic_basis,
    isotropic_subgroups,
    make_lattice,
    parse_lattice_expression,
)

M = parse_lattice_expression("<8> + <2>")
disc = discriminant_form(M)
print("D_M:", disc.form.describe())

for H in isotropic_subgroups(disc.form):
    res = glue(M, H, disc)
    back = classifying_subgroup(res.embedding, disc)
    print(f"|H| = {H.order}: glued Gram {[list(r) for r in res.lattice.gram]}, "
          f"det {res.lattice.det}, recovers H: {back == H}")

# the class of e1/2 glues <8> + <2> up to diag(2, 2)
H = FqfSubgroup(disc.form, [disc.reduce([F(1, 2), 0])])
print("\nglue along e1/2:", [list(r) for r in glue(M, H, disc).lattice.gram])

# unimodular gluings of <4> and <-4> correspond to O(D_<4>) = {+1, -1}
T, K = make_lattice([[4]]), make_lattice([[-4]])
for g in enumerate_gluings(T, K, FiniteQuadraticForm.trivial()):
    L = g.glue().lattice
    print("gamma", dict(sorted(g.gamma.items())), "-> Gram", [list(r) for r in L.gram],
          "hyperbolic basis", hyperbolic_basis(L))
