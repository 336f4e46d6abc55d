"""Overlattices from isotropic subgroups and the reverse direction.

An overlattice ``M ⊂ L ⊂ M^dual`` is the preimage of an isotropic subgroup
``H ⊂ D_M``.  :func:`glue` builds ``L`` with an HNF-canonical basis and
:func:`classifying_subgroup` recovers ``H`` from a finite-index embedding.
For ``M = T ⊕ K`` the subgroups with both projections injective are the
graphs of anti-isometries between subgroups of ``D_T`` and ``D_K``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import intlinalg as la
from .discforms import (
    DiscriminantForm,
    FiniteQuadraticForm,
    FqfSubgroup,
    NotIsotropic,
    discriminant_form,
    fqf_isomorphic,
    isotropic_subgroups,
    quotient_form,
)
from .genus import Uniqueness, nikulin_unique_in_genus, same_genus
from .lattice import Embedding, Lattice, LatticeError, direct_sum, make_lattice


class RankMismatch(LatticeError):
    pass


class NotClosed(ValueError):
    pass


class GenusMismatch(ValueError):
    pass


class UniquenessUnknown(ValueError):
    pass


@dataclass(frozen=True)
class OverlatticeResult:
    lattice: Lattice
    embedding: Embedding
    index: int


def glue(M: Lattice, H: FqfSubgroup, disc: DiscriminantForm | None = None) -> OverlatticeResult:
    """The overlattice ``π^{-1}(H)`` of ``M``."""
    disc = disc or discriminant_form(M)
    if H.form != disc.form:
        raise ValueError("subgroup does not belong to the discriminant form of M")
    if not H.is_isotropic():
        raise NotIsotropic("glue needs an isotropic subgroup")
    r = M.rank
    lifts = [disc.lift(h) for h in H.generators]
    N = la.common_denominator(x for v in lifts for x in v)
    rows = [[N * int(i == j) for j in range(r)] for i in range(r)]
    rows += [[int(N * x) for x in v] for v in lifts]
    basis_N = la.row_span_basis(rows)
    B = [[Fraction(x, N) for x in row] for row in basis_N]
    gram = la.matmul(la.matmul(B, [list(g) for g in M.gram]), la.transpose(B))
    gram = la.as_int_matrix(gram)  # raises if the pairing is not integral
    L = make_lattice(gram, label=f"glue({M.label or 'M'})")
    # coordinates of the old basis in the new one: e_i = sum_j X[i][j] b_j
    X = la.as_int_matrix(la.inverse_rational(B))
    emb = Embedding(M, L, tuple(tuple(row) for row in la.transpose(X)))
    return OverlatticeResult(L, emb, H.order)


def classifying_subgroup(e: Embedding, disc: DiscriminantForm | None = None) -> FqfSubgroup:
    """Image of ``ambient / image(domain)`` in ``D_domain``."""
    if e.domain.rank != e.ambient.rank:
        raise RankMismatch("classifying_subgroup needs a finite-index embedding")
    disc = disc or discriminant_form(e.domain)
    Pinv = la.inverse_rational(e.matrix)
    cols = la.transpose(Pinv)
    gens = [disc.reduce(c) for c in cols]
    return FqfSubgroup(disc.form, gens)


@dataclass(frozen=True)
class SplitInfo:
    p_t_injective: bool
    p_k_injective: bool
    gamma_domain: frozenset | None
    gamma: dict | None = field(default=None, hash=False)


def split_projections(H: FqfSubgroup, n_t: int) -> SplitInfo:
    """Injectivity of the projections of ``H ⊂ D_T × D_K`` (first ``n_t`` coordinates = ``D_T``)."""
    pt = {x[:n_t] for x in H.elements}
    pk = {x[n_t:] for x in H.elements}
    inj_t = len(pt) == H.order
    inj_k = len(pk) == H.order
    if inj_t and inj_k:
        gamma = {x[:n_t]: x[n_t:] for x in H.elements}
        return SplitInfo(True, True, frozenset(pt), gamma)
    return SplitInfo(inj_t, inj_k, None, None)


@dataclass(frozen=True, eq=False)
class GluingDatum:
    """An isotropic ``H`` of ``D_T × D_K`` given as the graph of ``gamma``."""

    T: Lattice
    K: Lattice
    disc: DiscriminantForm
    subgroup: FqfSubgroup
    gamma: dict

    @property
    def n_t(self) -> int:
        return discriminant_form(self.T).form.rank

    def glue(self) -> OverlatticeResult:
        return glue(self.disc.lattice, self.subgroup, self.disc)

    def __repr__(self):
        return f"GluingDatum(|H|={self.subgroup.order}, gamma={sorted(self.gamma.items())})"


def _product_disc(T: Lattice, K: Lattice) -> DiscriminantForm:
    return discriminant_form(T) + discriminant_form(K)


def enumerate_gluings(T: Lattice, K: Lattice, target: FiniteQuadraticForm) -> list[GluingDatum]:
    """All ``H`` in kq(T, K, target), sorted canonically."""
    dT = discriminant_form(T)
    disc = dT + discriminant_form(K)
    n_t = dT.form.rank
    out = []
    for H in isotropic_subgroups(disc.form):
        info = split_projections(H, n_t)
        if not (info.p_t_injective and info.p_k_injective):
            continue
        if H.order ** 2 * target.order != disc.form.order:
            continue
        if fqf_isomorphic(quotient_form(disc.form, H), target) is None:
            continue
        out.append(GluingDatum(T, K, disc, H, info.gamma))
    return out


def orbit_count(items, maps) -> int:
    """Orbits of the group generated by ``maps`` acting on ``items``.

    ``items`` must be hashable and closed under every map; otherwise
    :class:`NotClosed` is raised.
    """
    items = list(items)
    index = {x: i for i, x in enumerate(items)}
    parent = list(range(len(items)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for x, i in index.items():
        for f in maps:
            y = f(x)
            j = index.get(y)
            if j is None:
                raise NotClosed(f"image {y!r} is not in the element list")
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
    return sum(1 for i in range(len(items)) if find(i) == i)


def double_orbit_count(group_elements, left_gens, right_gens) -> int:
    """Number of orbits of ``f -> g f h^{-1}`` (g in left, h in right)."""
    maps = [lambda f, g=g: g * f for g in left_gens]
    maps += [lambda f, h=h.inverse(): f * h for h in right_gens]
    return orbit_count(group_elements, maps)


def transfer_gluings(T: Lattice, K: Lattice, K2: Lattice, L: Lattice):
    """Match kq(T, K, q_L) with kq(T, K2, q_L) through ``q_K ≅ q_K2``.

    Returns pairs ``(datum for K, datum for K2)``.
    """
    if not same_genus(K, K2):
        raise GenusMismatch("K and K' are not in the same genus")
    if nikulin_unique_in_genus(L) is not Uniqueness.YES:
        raise UniquenessUnknown("L is not known to be unique in its genus")
    target = discriminant_form(L).form
    first = enumerate_gluings(T, K, target)
    second = enumerate_gluings(T, K2, target)
    qT = discriminant_form(T).form
    phi = fqf_isomorphic(discriminant_form(K).form, discriminant_form(K2).form)
    n_t = qT.rank
    by_elements = {d.subgroup.elements: d for d in second}
    pairs = []
    for d in first:
        image = frozenset(x[:n_t] + phi(x[n_t:]) for x in d.subgroup.elements)
        if image not in by_elements:
            raise AssertionError("transfer map does not land in the gluing set")
        pairs.append((d, by_elements[image]))
    if len(pairs) != len(second):
        raise AssertionError("transfer map is not a bijection")
    return pairs


def orthogonal_sum(T: Lattice, K: Lattice) -> Lattice:
    return direct_sum(T, K)
