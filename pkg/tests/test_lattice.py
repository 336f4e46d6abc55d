import pytest
from hypothesis import given, settings, strategies as st

from latticefm import intlinalg as la
from latticefm.lattice import (
    BadParameter,
    Degenerate,
    IndefiniteInput,
    LatticeError,
    NotEven,
    NotFoundUpToBound,
    NotSymmetric,
    ObstructedMod,
    RankLimitExceeded,
    UnknownName,
    Witness,
    direct_sum,
    divisor,
    find_isometry_definite,
    hyperbolic_basis,
    is_primitive,
    isometry_group_definite,
    make_lattice,
    orthogonal_complement,
    parse_lattice_expression,
    primitive_hull,
    represents,
    same_image,
    short_vectors,
    signature,
    span_embedding,
    standard_lattice,
    twist,
)
from latticefm.genus import same_genus
from oracles import brute_isometry_count, brute_vectors_of_norm, represents_in_box

U = standard_lattice("U")


def test_make_lattice_validation():
    assert make_lattice([[0, 1], [1, 0]]).gram == ((0, 1), (1, 0))
    assert make_lattice([[2, 1], [1, 2]]).det == 3
    with pytest.raises(NotEven):
        make_lattice([[1, 0], [0, 1]])
    with pytest.raises(NotSymmetric):
        make_lattice([[2, 1], [0, 2]])
    with pytest.raises(Degenerate):
        make_lattice([[2, 2], [2, 2]])


def test_standard_lattices():
    K3 = standard_lattice("K3")
    assert K3.rank == 22 and tuple(signature(K3)) == (3, 19) and abs(K3.det) == 1
    L = standard_lattice("L2d", 7)
    assert L.rank == 21 and abs(L.det) == 14
    assert standard_lattice("L2d(7)") == L
    assert standard_lattice("<-2>").gram == ((-2,),)
    assert standard_lattice("E6(-1)").det == 3
    assert standard_lattice("A2(-1)").gram == ((-2, 1), (1, -2))
    D16 = standard_lattice("D16plus(-1)")
    assert D16.rank == 16 and D16.det == 1 and tuple(signature(D16)) == (0, 16)
    with pytest.raises(UnknownName):
        standard_lattice("F4")
    with pytest.raises(BadParameter):
        standard_lattice("<3>")
    with pytest.raises(BadParameter):
        standard_lattice("L2d", 0)


def test_basis_orders_frozen():
    # e, f, e, f, e, f, then E8(-1) twice; l sits at coordinate 4 of L2d
    K3 = standard_lattice("K3")
    assert K3.hyperbolic_planes == ((0, 1), (2, 3), (4, 5))
    assert K3.gram[6][6] == -2 and K3.gram[6][8] == 1
    L = standard_lattice("L2d", 5)
    assert L.gram[4][4] == -10 and L.hyperbolic_planes == ((0, 1), (2, 3))


def test_signature_examples():
    assert tuple(signature(U)) == (1, 1)
    assert tuple(signature(standard_lattice("E8(-1)"))) == (0, 8)
    for d in (1, 2, 7):
        assert tuple(signature(standard_lattice("L2d", d))) == (2, 19)


def test_sum_and_twist():
    S = direct_sum(U, U)
    assert S.rank == 4 and S.det == 1
    assert twist(standard_lattice("E8"), -1) == standard_lattice("E8(-1)")
    A2m = twist(standard_lattice("A2"), -1)
    assert A2m.det == 3 and A2m == standard_lattice("A2(-1)")
    assert twist(A2m, 3).det == 27
    with pytest.raises(LatticeError):
        twist(U, 0)
    assert parse_lattice_expression("2U + <-14> + 2E8(-1)") == standard_lattice("L2d", 7)


def test_complement_examples():
    L = make_lattice([[2, 0], [0, 2]])
    e = span_embedding(L, [[2, 0]])
    c = orthogonal_complement(e)
    assert c.columns == [[0, 1]] and c.domain.gram == ((2,),)
    M = make_lattice([[0, 1, 0], [1, 0, 0], [0, 0, 2]])
    c1 = orthogonal_complement(span_embedding(M, [[1, 1, 0]]))
    assert sorted(map(tuple, c1.columns)) == sorted([(1, -1, 0), (0, 0, 1)])
    assert abs(c1.domain.det) == 4
    c2 = orthogonal_complement(span_embedding(M, [[0, 0, 1]]))
    assert abs(c2.domain.det) == 1


def test_complement_of_polarisation_is_l2d():
    K3 = standard_lattice("K3")
    for d in (1, 2, 3, 7):
        h = [0] * 22
        h[2], h[3] = 1, d
        e = span_embedding(K3, [h])
        assert is_primitive(e)
        comp = orthogonal_complement(e)
        assert is_primitive(comp)
        assert same_genus(comp.domain, standard_lattice("L2d", d))


def test_primitivity_examples():
    L = make_lattice([[2, 0], [0, 2]])
    assert not is_primitive(span_embedding(L, [[2, 0]]))
    M = make_lattice([[0, 1, 0], [1, 0, 0], [0, 0, 2]])
    assert is_primitive(span_embedding(M, [[0, 0, 1]]))


def test_primitive_hull_examples():
    L = make_lattice([[2, 0], [0, 2]])
    h = primitive_hull(span_embedding(L, [[2, 0]]))
    assert h.columns == [[1, 0]]
    e = span_embedding(L, [[1, 1]])
    assert same_image(primitive_hull(e), e)
    assert primitive_hull(span_embedding(U, [[3, 3]])).columns == [[1, 1]]


def test_divisor_examples():
    assert divisor(U, [1, 1]) == 1
    assert divisor(make_lattice([[2, 0], [0, 2]]), [2, 0]) == 4
    L = standard_lattice("L2d", 125)
    v = [0] * 21
    v[2], v[3], v[4] = 25, 5 * 50, 7
    assert divisor(L, v) == 25 and L.norm(v) == 250


def test_represents_examples():
    assert represents(make_lattice([[0, -7], [-7, -2]]), -2) == Witness((0, 1), True)
    assert represents(make_lattice([[0, -7], [-7, 10]]), 6) == Witness((2, 3), True)
    r = represents(make_lattice([[4, 1], [1, 6]]), 2)
    assert isinstance(r, NotFoundUpToBound) and r.complete
    r = represents(make_lattice([[0, -7], [-7, -2]]), 10, bound=100)
    assert isinstance(r, (NotFoundUpToBound, ObstructedMod))
    assert isinstance(r, NotFoundUpToBound) and r.complete and r.bound == 100
    assert 8 * 49 in r.moduli_checked and 100 in r.moduli_checked
    assert represents(make_lattice([[2, 1], [1, 12]]), 2) == Witness((1, 0), True)


def test_represents_modular_obstruction():
    # 2U + <-2>: values are all even, so 3 is obstructed mod 2
    L = parse_lattice_expression("U + <2>")
    assert represents(L, 3, bound=3) == ObstructedMod(2)


def test_short_vectors_examples():
    assert short_vectors(make_lattice([[2, 0], [0, 2]]), 2) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert len(short_vectors(standard_lattice("E8"), 2)) == 240
    assert short_vectors(make_lattice([[2]]), 4) == []
    assert len(short_vectors(standard_lattice("E8(-1)"), -2)) == 240
    with pytest.raises(IndefiniteInput):
        short_vectors(U, 2)


def test_isometry_groups():
    assert len(isometry_group_definite(make_lattice([[2]]))) == 2
    assert len(isometry_group_definite(make_lattice([[4, 0], [0, 2]]))) == 4
    assert len(isometry_group_definite(make_lattice([[2, 0], [0, 2]]))) == 8
    assert len(isometry_group_definite(standard_lattice("A2"))) == 12
    with pytest.raises(RankLimitExceeded):
        isometry_group_definite(standard_lattice("D16plus(-1)"))
    with pytest.raises(LatticeError):
        find_isometry_definite(make_lattice([[2]]), make_lattice([[-2]]))


def test_hyperbolic_basis():
    for G in ([[0, -1], [-1, -4]], [[-2, -3], [-3, -4]], [[0, 1], [1, 0]], [[2, 1], [1, 0]]):
        L = make_lattice(G)
        S = hyperbolic_basis(L)
        assert abs(la.det_exact(S)) == 1
        assert la.matmul(la.matmul(la.transpose(S), G), S) == [[0, 1], [1, 0]]


# --- properties ---------------------------------------------------------------

def even_lattices(max_rank=3, bound=6):
    def build(data):
        n, entries = data
        G = [[0] * n for _ in range(n)]
        k = 0
        for i in range(n):
            for j in range(i, n):
                x = entries[k]
                k += 1
                G[i][j] = G[j][i] = 2 * x if i == j else x
        return G
    return st.integers(1, max_rank).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(st.integers(-bound, bound),
                                                  min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2))
    ).map(build).filter(lambda G: la.det_exact(G) != 0).map(make_lattice)


def definite_lattices():
    def build(data):
        a, b, c, sign = data
        return [[sign * 2 * a, sign * b], [sign * b, sign * 2 * c]]
    return st.tuples(st.integers(1, 5), st.integers(-4, 4), st.integers(1, 5), st.sampled_from([1, -1])) \
        .map(build).filter(lambda G: 4 * G[0][0] * G[1][1] // 4 - G[0][1] ** 2 > 0).map(make_lattice)


@settings(max_examples=80, deadline=None)
@given(even_lattices(), even_lattices())
def test_signature_additive(L1, L2):
    s = signature(direct_sum(L1, L2))
    assert s == signature(L1) + signature(L2)
    s1 = signature(twist(L1, -1))
    assert (s1.plus, s1.minus) == (signature(L1).minus, signature(L1).plus)


@settings(max_examples=60, deadline=None)
@given(even_lattices(), st.data())
def test_embedding_invariants(L, data):
    r = L.rank
    k = data.draw(st.integers(1, r))
    vecs = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=r, max_size=r), min_size=k, max_size=k))
    if la.rank(vecs) != k:
        return
    try:
        e = span_embedding(L, vecs)
    except LatticeError:
        return  # degenerate restriction
    P = [list(row) for row in e.matrix]
    assert la.matmul(la.matmul(la.transpose(P), L.gram), P) == [list(x) for x in e.domain.gram]
    hull = primitive_hull(e)
    assert is_primitive(hull)
    assert is_primitive(e) == same_image(hull, e)
    try:
        c = orthogonal_complement(e)
    except LatticeError:
        return
    assert is_primitive(c)
    assert e.domain.rank + c.domain.rank == r


@settings(max_examples=60, deadline=None)
@given(definite_lattices(), st.integers(1, 12))
def test_short_vectors_against_box(L, m):
    n = m if L.gram[0][0] > 0 else -m
    assert short_vectors(L, n) == brute_vectors_of_norm([list(r) for r in L.gram], n)


@settings(max_examples=40, deadline=None)
@given(definite_lattices())
def test_isometry_group_against_brute_force(L):
    G = isometry_group_definite(L)
    assert len(G) == brute_isometry_count([list(r) for r in L.gram])
    I = la.identity(L.rank)
    assert I in G and [[-x for x in r] for r in I] in G
    for S in G:
        assert la.matmul(la.matmul(la.transpose(S), L.gram), S) == [list(r) for r in L.gram]


@settings(max_examples=40, deadline=None)
@given(definite_lattices(), st.integers(-12, 12))
def test_definite_representation_complete(L, n):
    r = represents(L, n)
    box = represents_in_box([list(x) for x in L.gram], n, 12)
    if isinstance(r, Witness):
        assert L.norm(r.vector) == n
    else:
        assert r.complete and box is None
