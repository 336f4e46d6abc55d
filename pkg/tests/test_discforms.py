from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from latticefm import intlinalg as la
from latticefm.discforms import (
    FiniteQuadraticForm,
    FqfSubgroup,
    InvalidForm,
    NotIsotropic,
    all_subgroups,
    cyclic_form,
    direct_sum,
    discriminant_form,
    elements,
    fqf_isomorphic,
    isotropic_subgroups,
    min_generators,
    negate,
    orthogonal_group,
    orthogonal_subgroup,
    quotient_form,
)
from latticefm.lattice import GroupTooLarge, make_lattice, standard_lattice
from oracles import (
    brute_orthogonal_group_order,
    brute_subgroups,
    distinct_prime_factors,
    dual_quotient_profile,
    form_profile,
    units_squaring_to_one,
)
from test_lattice import even_lattices

A = make_lattice([[2, 4], [4, 0]])
B = make_lattice([[0, 4], [4, 0]])
C = make_lattice([[-2, 4], [4, 0]])
TRIVIAL = FiniteQuadraticForm.trivial()


def qform(L):
    return discriminant_form(L).form


def test_unimodular_has_trivial_form():
    assert qform(standard_lattice("U")).order == 1
    assert qform(standard_lattice("E8")).orders == ()


def test_binary_form_values():
    dA = discriminant_form(A)
    assert dA.form.invariant_factors == (2, 8)
    t1, t2 = dA.reduce([F(1, 2), 0]), dA.reduce([F(1, 4), F(1, 8)])
    assert dA.form.value(t1) == F(1, 2) and dA.form.value(t2) == F(3, 8)
    assert dA.form.element_order(t1) == 2 and dA.form.element_order(t2) == 8
    dC = discriminant_form(C)
    s1, s2 = dC.reduce([F(1, 2), 0]), dC.reduce([F(-1, 4), F(1, 8)])
    assert dC.form.value(s1) == F(3, 2) and dC.form.value(s2) == F(13, 8)
    assert qform(B).invariant_factors == (4, 4)


def test_lifts_realise_the_form():
    for L in (A, B, C, standard_lattice("L2d", 6), standard_lattice("E6(-1)")):
        d = discriminant_form(L)
        for i, w in enumerate(d.lifts):
            assert d.reduce(w) == d.form.generator(i)
            assert F(L.norm(w)) % 2 == d.form.q_values[i]
            for j, u in enumerate(d.lifts):
                pair = sum(a * g * b for a, row in zip(w, L.gram) for g, b in zip(row, u))
                assert F(pair) % 1 == d.form.bilinear_matrix[i][j]


def test_l2d_generator_value():
    for d in range(1, 13):
        q = qform(standard_lattice("L2d", d))
        assert q.orders == (2 * d,)
        assert q.q_values == (F(-1, 2 * d) % 2,)
    assert qform(standard_lattice("L2d", 7)).q_values == (F(27, 14),)


def test_elements_examples():
    assert elements(TRIVIAL) == [((), F(0), 1)]
    vals = sorted(v for _, v, o in elements(qform(A)) if o <= 2)
    assert vals == [0, 0, F(1, 2), F(1, 2)]
    vals = sorted(v for _, v, o in elements(qform(C)) if o <= 2)
    assert vals == [0, 0, F(3, 2), F(3, 2)]


def test_element_limit():
    q = qform(standard_lattice("L2d", 10))
    with pytest.raises(GroupTooLarge):
        q.elements(limit=10)


def test_element_limit_env(monkeypatch):
    monkeypatch.setenv("LATTICE_FM_LIMIT", "5")
    with pytest.raises(GroupTooLarge):
        qform(A).elements()


def test_isomorphism_examples():
    assert fqf_isomorphic(qform(A), qform(C)) is None
    assert fqf_isomorphic(qform(A), qform(B)) is None
    for d in (1, 2, 6, 7):
        q2d = qform(make_lattice([[2 * d]]))
        assert fqf_isomorphic(q2d, negate(qform(standard_lattice("L2d", d)))) is not None


def test_negate():
    assert negate(TRIVIAL) == TRIVIAL
    qA = qform(A)
    assert negate(qA).q_values == tuple((-x) % 2 for x in qA.q_values)
    q = qform(standard_lattice("L2d", 5))
    assert negate(negate(q)) == q
    # negating A's form gives the isomorphism class of C's form
    assert fqf_isomorphic(negate(qA), qform(C)) is not None


def test_invalid_forms():
    with pytest.raises(InvalidForm):
        FiniteQuadraticForm((2,), (F(1, 4),), ((F(1, 4),),))  # 4 * 1/4 = 1 not in 2Z
    with pytest.raises(InvalidForm):
        FiniteQuadraticForm((1,), (0,), ((0,),))


def test_orthogonal_group_examples():
    assert len(orthogonal_group(TRIVIAL)) == 1
    q4 = qform(standard_lattice("L2d", 4))
    O = orthogonal_group(q4)
    assert sorted(f.images[0][0] for f in O) == [1, 7]
    assert len(orthogonal_group(qform(standard_lattice("L2d", 6)))) == 4
    assert O[0].is_identity()


def test_orthogonal_group_matches_units():
    for d in range(1, 13):
        q = qform(standard_lattice("L2d", d))
        ks = sorted(f.images[0][0] for f in orthogonal_group(q))
        assert ks == units_squaring_to_one(2 * d)
        if d >= 2:
            assert len(ks) == 2 ** distinct_prime_factors(d)


def test_orthogonal_group_against_brute_force():
    for L in (A, B, C, make_lattice([[2, 1], [1, 12]]), standard_lattice("A2")):
        q = qform(L)
        assert len(orthogonal_group(q)) == brute_orthogonal_group_order(q)


def test_subgroup_counts():
    z2 = cyclic_form(2, F(1, 2))
    assert len(all_subgroups(z2)) == 2
    klein = direct_sum(z2, z2)
    assert len(all_subgroups(klein)) == 5
    assert len(all_subgroups(qform(A))) == 11
    assert {H.elements for H in all_subgroups(qform(B))} == brute_subgroups((4, 4))


def test_isotropic_examples():
    assert [H.order for H in isotropic_subgroups(TRIVIAL)] == [1]
    dA = discriminant_form(A)
    four_t2 = dA.reduce([F(1), F(1, 2)])
    iso = isotropic_subgroups(dA.form)
    assert frozenset({dA.form.zero, four_t2}) in {H.elements for H in iso}
    assert [H.order for H in isotropic_subgroups(qform(standard_lattice("L2d", 1)))] == [1]


def test_orthogonal_and_quotient():
    qA = qform(A)
    zero = FqfSubgroup(qA)
    assert orthogonal_subgroup(qA, zero).order == 16
    assert quotient_form(qA, zero) == qA or fqf_isomorphic(quotient_form(qA, zero), qA)
    dA = discriminant_form(A)
    H = FqfSubgroup(qA, [dA.reduce([F(1), F(1, 2)])])
    assert orthogonal_subgroup(qA, H).order == 8
    assert quotient_form(qA, H).order == 4
    with pytest.raises(NotIsotropic):
        quotient_form(qA, FqfSubgroup(qA, [dA.reduce([F(1, 2), 0])]))


def test_quotient_of_full_gluing():
    M = make_lattice([[8, 0], [0, 2]])
    q = qform(M)
    (H,) = [H for H in isotropic_subgroups(q) if H.order == 2]
    assert fqf_isomorphic(quotient_form(q, H), qform(make_lattice([[2, 0], [0, 2]])))


def test_min_generators():
    assert min_generators(TRIVIAL) == 0
    assert min_generators(qform(A)) == 2
    for d in (1, 5, 12):
        assert min_generators(qform(standard_lattice("L2d", d))) == 1


def test_order_equals_det_for_standard_lattices():
    for name in ("U", "E8", "E6(-1)", "A2", "A2(-1)", "K3", "D16plus(-1)", "<-14>", "L2d(9)"):
        L = standard_lattice(name)
        assert qform(L).order == abs(L.det)


# --- properties ------------------------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(even_lattices())
def test_form_matches_brute_dual_quotient(L):
    q = qform(L)
    assert q.order == abs(L.det)
    assert form_profile(q) == dual_quotient_profile([list(r) for r in L.gram])


@settings(max_examples=40, deadline=None)
@given(even_lattices(max_rank=2, bound=4))
def test_polarisation_identity(L):
    q = qform(L)
    els = q.elements()
    for x in els:
        for y in els:
            lhs = (q.value(q.add(x, y)) - q.value(x) - q.value(y)) % 2
            assert lhs == (2 * q.bilinear(x, y)) % 2


@settings(max_examples=40, deadline=None)
@given(even_lattices(max_rank=2, bound=4))
def test_subgroup_order_law(L):
    q = qform(L)
    for H in all_subgroups(q):
        assert H.order * orthogonal_subgroup(q, H).order == q.order


@settings(max_examples=30, deadline=None)
@given(even_lattices(max_rank=2, bound=4), st.data())
def test_isomorphism_under_basis_change(L, data):
    S = data.draw(st.sampled_from([[[1, 1], [0, 1]], [[0, 1], [1, 0]], [[2, 1], [1, 1]], [[1, -2], [0, 1]]]))
    if L.rank != 2:
        return
    G2 = la.matmul(la.matmul(la.transpose(S), L.gram), S)
    q1, q2 = qform(L), qform(make_lattice(G2))
    iso = fqf_isomorphic(q1, q2)
    assert iso is not None
    assert all(q2.value(iso(x)) == q1.value(x) for x in q1.elements())


@settings(max_examples=30, deadline=None)
@given(even_lattices(max_rank=2, bound=4))
def test_orthogonal_group_divides_automorphisms(L):
    q = qform(L)
    O = orthogonal_group(q)
    assert len(O) == brute_orthogonal_group_order(q)
    members = set(O)
    for f in O:
        assert f.inverse() in members
