"""K3 lattices: Eichler invariants and Fourier-Mukai partner counts.

The transcendental side enters only through images of groups in
discriminant forms.  Hodge isometries of ``T`` cannot be computed from
lattice data, so callers pass their image in ``O(D)``; the default is
``{±id}``.  Images of ``O(S)`` for indefinite ``S`` must also be supplied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import NamedTuple, Sequence

from sympy import isprime, primefactors

from . import intlinalg as la
from .discforms import (
    DiscriminantForm,
    FiniteQuadraticForm,
    FqfAutomorphism,
    all_isometries,
    discriminant_form,
    direct_sum,
    fqf_isomorphic,
    isotropic_subgroups,
    orthogonal_group,
    quotient_presentation,
)
from .genus import Uniqueness, genus_symbol, nikulin_unique_in_genus, same_genus
from .lattice import (
    BadParameter,
    Lattice,
    LatticeError,
    NotFoundUpToBound,
    Witness,
    is_definite,
    isometry_group_definite,
    make_lattice,
    parse_lattice_expression,
    represents,
    short_vectors,
    standard_lattice,
)
from .overlattice import double_orbit_count, orbit_count, split_projections


class NoMarkedHyperbolicPlanes(LatticeError):
    pass


class NotPrimitive(LatticeError):
    pass


def prime_count(d: int) -> int:
    """Number of distinct prime factors, with ``p(1) = 1``."""
    if d < 1:
        raise BadParameter("d must be positive")
    return 1 if d == 1 else len(primefactors(d))


def oguiso_count(d: int) -> int:
    return 2 ** (prime_count(d) - 1)


def l2d(d: int) -> Lattice:
    return standard_lattice("L2d", d)


def l2d_discriminant(d: int) -> DiscriminantForm:
    return discriminant_form(l2d(d))


def stable_covering_degree(d: int) -> int:
    """``|O(D_{L_2d})| / 2``; for ``d = 1`` the covering is trivial."""
    if d < 1:
        raise BadParameter("d must be positive")
    if d == 1:
        return 1
    return len(orthogonal_group(l2d_discriminant(d).form)) // 2


# --- Eichler invariant -----------------------------------------------------

@dataclass(frozen=True)
class EichlerInvariant:
    length: int
    divisor: int
    cls: tuple[int, ...]


def eichler_invariant(L: Lattice, v: Sequence[int], disc: DiscriminantForm | None = None):
    """``(v^2, [v / div(v)])`` for a primitive ``v`` in a lattice with a marked ``2U``."""
    if len(L.hyperbolic_planes) < 2:
        raise NoMarkedHyperbolicPlanes("lattice has fewer than two marked hyperbolic planes")
    v = list(v)
    if la.content(v) != 1:
        raise NotPrimitive(f"{v} is not primitive")
    disc = disc or discriminant_form(L)
    div = la.content(la.matvec(L.gram, v))
    cls = disc.reduce([Fraction(x, div) for x in v])
    return EichlerInvariant(L.norm(v), div, cls)


def vc_vector(p: int, c: int) -> list[int]:
    """``p^2 e2 + p(1 + c^2) f2 + c l`` in the coordinates of ``L2d(p^3)``."""
    v = [0] * 21
    v[2] = p * p
    v[3] = p * (1 + c * c)
    v[4] = c
    return v


class VcOrbitCount(NamedTuple):
    stable_orbit_count: int
    lower_bound_full_orbits: int


def count_vc_orbits(p: int, details: bool = False):
    """Distinct Eichler invariants of the vectors ``v_c`` for ``c`` mod ``p^2``.

    Each ``v_c`` with ``1 + c^2 ≡ 0 (p)`` is checked to be primitive with
    ``v_c^2 = 2p^3`` and divisor ``p^2``.
    """
    if not isprime(p):
        raise BadParameter(f"{p} is not prime")
    L = l2d(p ** 3)
    disc = discriminant_form(L)
    invariants = {}
    for c in range(p * p):
        if (1 + c * c) % p:
            continue
        v = vc_vector(p, c)
        inv = eichler_invariant(L, v, disc)
        if inv.length != 2 * p ** 3 or inv.divisor != p * p:
            raise AssertionError(f"v_c for c={c} has unexpected length or divisor")
        invariants[c] = inv
    distinct = len(set(invariants.values()))
    result = VcOrbitCount(distinct, ceil(distinct / 2))
    return (result, invariants) if details else result


# --- Fourier-Mukai counts ----------------------------------------------------

def plus_minus(q: FiniteQuadraticForm) -> list[FqfAutomorphism]:
    ident = FqfAutomorphism.identity(q)
    neg = FqfAutomorphism.scalar(q, -1)
    return [ident] if neg == ident else [ident, neg]


def fm_count_rank_one(d: int) -> int:
    """Double orbits of ``{±id}`` on both sides of ``O(D_{L_2d})``."""
    q = l2d_discriminant(d).form
    pm = plus_minus(q)
    return double_orbit_count(orthogonal_group(q), pm, pm)


def check_automorphism(q: FiniteQuadraticForm, f: FqfAutomorphism) -> None:
    if f.form != q:
        raise ValueError("automorphism belongs to a different form")
    images = {f(x) for x in q.elements()}
    if len(images) != q.order:
        raise ValueError("map is not bijective")
    for i in range(q.rank):
        if q.scale(q.orders[i], f.images[i]) != q.zero:
            raise ValueError("map is not a homomorphism")
    if any(q.value(f(x)) != q.value(x) for x in q.elements()):
        raise ValueError("map does not preserve q")


@dataclass(frozen=True, eq=False)
class FmCandidate:
    """A complement ``S`` described by ``D_S`` and the image of ``O(S)``."""

    form: FiniteQuadraticForm
    o_s_images: tuple[FqfAutomorphism, ...]
    label: str = "S"
    provenance: str = "manual"


def candidate_from_lattice(S: Lattice, o_s_images=None, label=None) -> FmCandidate:
    """Candidate from a lattice; ``O(S)`` images are computed when ``S`` is definite."""
    disc = discriminant_form(S)
    if o_s_images is not None:
        return FmCandidate(disc.form, tuple(o_s_images), label or S.label or "S", "manual")
    if not is_definite(S):
        raise ValueError("image of O(S) must be supplied for indefinite S")
    images = {disc.induced_automorphism(g) for g in isometry_group_definite(S)}
    images = tuple(sorted(images, key=lambda f: f.images))
    return FmCandidate(disc.form, images, label or S.label or "S", "automatic")


def hodge_images_definite(T: Lattice) -> tuple[FqfAutomorphism, ...]:
    """Image of all of ``O(T)`` in ``O(D_T)`` for definite ``T``."""
    disc = discriminant_form(T)
    images = {disc.induced_automorphism(g) for g in isometry_group_definite(T)}
    return tuple(sorted(images, key=lambda f: f.images))


@dataclass(frozen=True, eq=False)
class FmCountInput:
    candidates: tuple[FmCandidate, ...]
    hodge_images: tuple[FqfAutomorphism, ...] | None = None
    transcendental_form: FiniteQuadraticForm | None = None
    target: FiniteQuadraticForm | None = None


@dataclass(frozen=True)
class FmCount:
    total: int
    breakdown: tuple[tuple[str, int], ...]
    mode: str


def gluing_subgroups(qT: FiniteQuadraticForm, qS: FiniteQuadraticForm, target: FiniteQuadraticForm):
    """kq(T, S, target) computed from the forms alone."""
    q = direct_sum(qT, qS)
    out = []
    for H in isotropic_subgroups(q):
        if H.order ** 2 * target.order != q.order:
            continue
        info = split_projections(H, qT.rank)
        if info.p_t_injective and info.p_k_injective:
            pres = quotient_presentation(q, H)
            if fqf_isomorphic(pres.form, target) is not None:
                out.append((H, pres))
    return q, out


def _product_action(q, n_t, gT: FqfAutomorphism, gS: FqfAutomorphism):
    def act(x):
        return gT(x[:n_t]) + gS(x[n_t:])
    return act


def fm_count_general(inp: FmCountInput, mode: str = "hloy") -> FmCount:
    """Fourier-Mukai partner counts summed over the candidate complements.

    ``hloy``: double orbits ``O_hodge × O(S) \\ O(D_S)`` (hodge images live in
    ``O(D_S)``).  ``sigma`` and ``tau``: orbits of ``O_hodge(T) × O(S)`` on
    kq(T, S, target); ``tau`` keeps track of the identification of
    ``H^perp/H`` with the target form, so only stable isometries of the
    overlattice are divided out.
    """
    breakdown = []
    for cand in inp.candidates:
        for f in cand.o_s_images:
            check_automorphism(cand.form, f)
        if mode == "hloy":
            hodge = inp.hodge_images or plus_minus(cand.form)
            for f in hodge:
                check_automorphism(cand.form, f)
            n = double_orbit_count(orthogonal_group(cand.form), hodge, cand.o_s_images)
        elif mode in ("sigma", "tau"):
            n = _polarised_count(inp, cand, mode)
        else:
            raise ValueError(f"unknown mode {mode!r}")
        breakdown.append((cand.label, n))
    return FmCount(sum(n for _, n in breakdown), tuple(breakdown), mode)


def _polarised_count(inp: FmCountInput, cand: FmCandidate, mode: str) -> int:
    qT, target = inp.transcendental_form, inp.target
    if qT is None or target is None:
        raise ValueError("polarised counts need transcendental_form and target")
    hodge = inp.hodge_images or plus_minus(qT)
    for f in hodge:
        check_automorphism(qT, f)
    q, gluings = gluing_subgroups(qT, cand.form, target)
    n_t = qT.rank
    idT = FqfAutomorphism.identity(qT)
    idS = FqfAutomorphism.identity(cand.form)
    gens = [_product_action(q, n_t, g, idS) for g in hodge]
    gens += [_product_action(q, n_t, idT, g) for g in cand.o_s_images]
    if mode == "sigma":
        items = [H.elements for H, _ in gluings]
        maps = [lambda E, a=a: frozenset(a(x) for x in E) for a in gens]
        return orbit_count(items, maps)
    items = []
    for H, pres in gluings:
        perp = [x for x in q.elements() if all(q.bilinear(x, h) == 0 for h in H.generators)]
        for iso in all_isometries(pres.form, target):
            items.append((H.elements, frozenset((x, iso(pres.coords(x))) for x in perp)))
    maps = [lambda item, a=a: (frozenset(a(x) for x in item[0]),
                               frozenset((a(x), y) for x, y in item[1])) for a in gens]
    return orbit_count(items, maps)


def rank_one_input(d: int) -> FmCountInput:
    """Picard rank one: ``S = <2d>`` with ``{±id}`` on both sides."""
    S = make_lattice([[2 * d]], label=f"<{2 * d}>")
    form = discriminant_form(S).form
    return FmCountInput((FmCandidate(form, tuple(plus_minus(form)), S.label, "manual"),))


# --- polarisation examples ---------------------------------------------------

@dataclass(frozen=True)
class Claim:
    name: str
    passed: bool
    detail: str


def _witness_is(res, vec=None, primitive=True) -> bool:
    if not isinstance(res, Witness):
        return False
    if vec is not None and tuple(res.vector) != tuple(vec):
        return False
    return res.primitive or not primitive


def _primitive_vector(L: Lattice, n: int, v) -> bool:
    return L.norm(v) == n and la.content(v) == 1


def verify_polarisation_examples(d: int = 7, bound: int = 100, extended: bool = True) -> list[Claim]:
    """Re-check the polarisation examples; one :class:`Claim` per statement."""
    N1 = make_lattice([[0, -7], [-7, -2]], label="N1")
    N2 = make_lattice([[0, -7], [-7, 10]], label="N2")
    claims = []

    r = represents(N1, -2, bound)
    claims.append(Claim("N1 represents -2", _witness_is(r, (0, 1)), repr(r)))

    r = represents(N1, 10, bound)
    ok = isinstance(r, NotFoundUpToBound) and r.complete and r.bound >= 100
    claims.append(Claim("N1 does not represent 10", ok, repr(r)))

    ok = _primitive_vector(N2, 10, (0, 1))
    claims.append(Claim("N2 primitively represents 10 via (0,1)", ok, f"norm {N2.norm((0, 1))}"))

    ok = _primitive_vector(N2, 6, (2, 3))
    claims.append(Claim("N2 primitively represents 6 via (2,3)", ok, f"norm {N2.norm((2, 3))}"))

    A2m = standard_lattice("A2(-1)")
    D = make_lattice([[-6 * d, 0], [0, -2 * d]], label=f"<{-6 * d}>+<{-2 * d}>")
    roots_a = short_vectors(A2m, -2)
    roots_d = short_vectors(D, -2)
    ok = bool(roots_a) and not roots_d
    claims.append(Claim(f"A2(-1) has (-2)-vectors, <{-6 * d}>+<{-2 * d}> has none", ok,
                        f"{len(roots_a)} vs {len(roots_d)}"))
    if not extended:
        return claims

    r = represents(N2, -2, bound)
    ok = isinstance(r, NotFoundUpToBound) and r.complete
    claims.append(Claim("N2 does not represent -2", ok, repr(r)))

    r = represents(N1, 6, bound)
    ok = isinstance(r, NotFoundUpToBound) and r.complete
    claims.append(Claim("N1 does not represent 6", ok, repr(r)))

    ok = same_genus(N1, N2)
    claims.append(Claim("N1 and N2 lie in the same genus", ok, ""))

    # a complement T of N in the K3 lattice has rank 20, sign (2,18), l(T) = l(N)
    l_n = discriminant_form(N1).form.min_generators()
    ok = 20 >= 2 + l_n
    claims.append(Claim("complements of N1, N2 in the K3 lattice are unique in their genus",
                        ok, f"rank 20, l = {l_n}"))

    NS = parse_lattice_expression(f"A2(-1) + <{2 * d}>")
    ok = d % 3 != 0 and nikulin_unique_in_genus(NS) is Uniqueness.YES
    claims.append(Claim(f"A2(-1)+<{2 * d}> is unique in its genus", ok,
                        f"rank {NS.rank}, l = {discriminant_form(NS).form.min_generators()}"))
    return claims
