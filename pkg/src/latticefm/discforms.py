"""Finite quadratic forms and discriminant forms of even lattices.

A :class:`FiniteQuadraticForm` is presented as a product of cyclic groups
``Z/d_1 x ... x Z/d_k`` with one generator per factor.  Discriminant forms
come out in invariant-factor form (``d_1 | d_2 | ...``); direct sums keep
the block structure so that projections to the summands stay coordinate
projections.  ``q`` takes values in ``[0, 2)`` and ``b`` in ``[0, 1)``.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm, prod
from typing import Iterable, Sequence

from . import intlinalg as la
from .lattice import GroupTooLarge, Lattice, group_size_limit

Element = tuple[int, ...]


class InvalidForm(ValueError):
    pass


class NotIsotropic(ValueError):
    pass


def _mod2(x) -> Fraction:
    return Fraction(x) % 2


def _mod1(x) -> Fraction:
    return Fraction(x) % 1


@dataclass(frozen=True, eq=False)
class FiniteQuadraticForm:
    orders: tuple[int, ...]
    q_values: tuple[Fraction, ...]
    bilinear_matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        orders = tuple(int(d) for d in self.orders)
        k = len(orders)
        if any(d < 2 for d in orders):
            raise InvalidForm("generator orders must exceed 1")
        q = tuple(_mod2(x) for x in self.q_values)
        b = tuple(tuple(_mod1(x) for x in row) for row in self.bilinear_matrix)
        if len(q) != k or len(b) != k or any(len(row) != k for row in b):
            raise InvalidForm("shape mismatch")
        for i in range(k):
            if (orders[i] ** 2 * q[i]) % 2:
                raise InvalidForm(f"q not well defined on generator {i}")
            if (b[i][i] - q[i]) % 1:
                raise InvalidForm(f"b(g,g) != q(g) mod 1 on generator {i}")
            for j in range(k):
                if b[i][j] != b[j][i]:
                    raise InvalidForm("bilinear form not symmetric")
                if (orders[i] * b[i][j]) % 1:
                    raise InvalidForm("b not well defined")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "q_values", q)
        object.__setattr__(self, "bilinear_matrix", b)

    @classmethod
    def trivial(cls):
        return cls((), (), ())

    @classmethod
    def from_gram(cls, orders, gram):
        """Form whose generators have pairings ``gram`` (rational, q on diagonal)."""
        k = len(orders)
        return cls(orders, [gram[i][i] for i in range(k)], gram)

    # -- basic structure --------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    @cached_property
    def invariant_factors(self) -> tuple[int, ...]:
        if not self.orders:
            return ()
        _, D, _ = la.smith_normal_form([[d if i == j else 0 for j, d in enumerate(self.orders)]
                                        for i in range(self.rank)])
        return tuple(D[i][i] for i in range(self.rank) if D[i][i] > 1)

    def key(self):
        return (self.orders, self.q_values, self.bilinear_matrix)

    def __eq__(self, other):
        return isinstance(other, FiniteQuadraticForm) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FiniteQuadraticForm(orders={self.orders}, q={[str(x) for x in self.q_values]})"

    def describe(self) -> str:
        if not self.orders:
            return "trivial"
        group = " x ".join(f"Z/{d}" for d in self.orders)
        return f"{group}; q = [{', '.join(str(x) for x in self.q_values)}]"

    # -- arithmetic on elements --------------------------------------------

    def reduce(self, x: Iterable[int]) -> Element:
        return tuple(int(a) % d for a, d in zip(x, self.orders))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x: Element) -> Element:
        return tuple(-a % d for a, d in zip(x, self.orders))

    def scale(self, n: int, x: Element) -> Element:
        return tuple(n * a % d for a, d in zip(x, self.orders))

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def value(self, x: Element) -> Fraction:
        q, b = self.q_values, self.bilinear_matrix
        s = sum(a * a * q[i] for i, a in enumerate(x) if a)
        s += 2 * sum(x[i] * x[j] * b[i][j] for i in range(len(x)) for j in range(i + 1, len(x))
                     if x[i] and x[j])
        return _mod2(s)

    def bilinear(self, x: Element, y: Element) -> Fraction:
        b = self.bilinear_matrix
        return _mod1(sum(a * c * b[i][j] for i, a in enumerate(x) if a for j, c in enumerate(y) if c))

    def element_order(self, x: Element) -> int:
        return lcm(1, *(d // gcd(a, d) for a, d in zip(x, self.orders)))

    def elements(self, limit: int | None = None) -> list[Element]:
        """All elements in lexicographic coordinate order."""
        limit = group_size_limit() if limit is None else limit
        if self.order > limit:
            raise GroupTooLarge(f"|D| = {self.order} exceeds limit {limit}")
        return list(itertools.product(*(range(d) for d in self.orders)))

    def element_table(self, limit: int | None = None):
        """``(element, q-value, order)`` triples."""
        return [(x, self.value(x), self.element_order(x)) for x in self.elements(limit)]

    def is_nondegenerate(self) -> bool:
        gens = [self.generator(i) for i in range(self.rank)]
        return all(any(self.bilinear(x, g) for g in gens)
                   for x in self.elements() if x != self.zero)

    def generator(self, i: int) -> Element:
        return tuple(int(i == j) for j in range(self.rank))

    def min_generators(self) -> int:
        return len(self.invariant_factors)

    def negate(self) -> FiniteQuadraticForm:
        return negate(self)


def negate(q: FiniteQuadraticForm) -> FiniteQuadraticForm:
    return FiniteQuadraticForm(q.orders, [-x for x in q.q_values],
                               [[-x for x in row] for row in q.bilinear_matrix])


def direct_sum(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm) -> FiniteQuadraticForm:
    k1, k2 = q1.rank, q2.rank
    b = [[Fraction(0)] * (k1 + k2) for _ in range(k1 + k2)]
    for i in range(k1):
        for j in range(k1):
            b[i][j] = q1.bilinear_matrix[i][j]
    for i in range(k2):
        for j in range(k2):
            b[k1 + i][k1 + j] = q2.bilinear_matrix[i][j]
    return FiniteQuadraticForm(q1.orders + q2.orders, q1.q_values + q2.q_values, b)


def min_generators(q: FiniteQuadraticForm) -> int:
    """``l(D)``: the number of invariant factors."""
    return q.min_generators()


def elements(q: FiniteQuadraticForm, limit: int | None = None):
    return q.element_table(limit)


# --- discriminant forms of lattices ----------------------------------------

@dataclass(frozen=True, eq=False)
class DiscriminantForm:
    """The form ``q_L`` on ``L^dual / L`` together with coordinates.

    ``lifts[i]`` is a vector of ``L ⊗ Q`` (basis coordinates) lifting the
    i-th generator.  A dual vector ``w`` has class ``P (G w) mod orders``
    where ``P = projection``.
    """

    lattice: Lattice
    form: FiniteQuadraticForm
    lifts: tuple[tuple[Fraction, ...], ...]
    projection: tuple[tuple[int, ...], ...]

    def reduce(self, w: Sequence) -> Element:
        """Class in ``D_L`` of a vector ``w`` of the dual lattice."""
        phi = la.matvec(self.lattice.gram, [Fraction(x) for x in w])
        if any(Fraction(x).denominator != 1 for x in phi):
            raise ValueError(f"{list(w)} is not in the dual lattice")
        phi = [int(x) for x in phi]
        return self.form.reduce(la.matvec(self.projection, phi))

    def lift(self, x: Element) -> list[Fraction]:
        r = self.lattice.rank
        v = [Fraction(0)] * r
        for a, w in zip(x, self.lifts):
            if a:
                v = [s + a * t for s, t in zip(v, w)]
        return v

    def induced_automorphism(self, S) -> FqfAutomorphism:
        """Image in ``O(D_L)`` of an isometry ``S`` of ``L`` (columns = images)."""
        G = self.lattice.gram
        if la.matmul(la.matmul(la.transpose(S), G), S) != [list(r) for r in G]:
            raise ValueError("matrix is not an isometry of the lattice")
        images = tuple(self.reduce(la.matvec(S, w)) for w in self.lifts)
        return FqfAutomorphism(self.form, images)

    def __add__(self, other: DiscriminantForm) -> DiscriminantForm:
        return direct_sum_discriminant(self, other)


def discriminant_form(L: Lattice) -> DiscriminantForm:
    """Discriminant group and form of ``L`` read off from the SNF of ``G``."""
    G = [list(r) for r in L.gram]
    r = L.rank
    if r == 0:
        return DiscriminantForm(L, FiniteQuadraticForm.trivial(), (), ())
    U, D, V = la.smith_normal_form(G)
    idx = [i for i in range(r) if D[i][i] > 1]
    orders = [D[i][i] for i in idx]
    # G^{-1} U^{-1} e_i = V D^{-1} e_i
    lifts = [tuple(Fraction(V[k][i], D[i][i]) for k in range(r)) for i in idx]
    gram = [[la.bilinear(G, u, w) for w in lifts] for u in lifts]
    form = FiniteQuadraticForm.from_gram(orders, gram)
    projection = tuple(tuple(U[i]) for i in idx)
    return DiscriminantForm(L, form, tuple(lifts), projection)


def direct_sum_discriminant(d1: DiscriminantForm, d2: DiscriminantForm) -> DiscriminantForm:
    from .lattice import direct_sum as lattice_sum

    L = lattice_sum(d1.lattice, d2.lattice)
    r1, r2 = d1.lattice.rank, d2.lattice.rank
    lifts = [tuple(w) + (Fraction(0),) * r2 for w in d1.lifts]
    lifts += [(Fraction(0),) * r1 + tuple(w) for w in d2.lifts]
    proj = [tuple(row) + (0,) * r2 for row in d1.projection]
    proj += [(0,) * r1 + tuple(row) for row in d2.projection]
    return DiscriminantForm(L, direct_sum(d1.form, d2.form), tuple(lifts), tuple(proj))


# --- automorphisms -----------------------------------------------------------

@dataclass(frozen=True)
class FqfAutomorphism:
    """Group automorphism given by the images of the generators."""

    form: FiniteQuadraticForm
    images: tuple[Element, ...]

    def __call__(self, x: Element) -> Element:
        out = [0] * self.form.rank
        for a, img in zip(x, self.images):
            if a:
                out = [s + a * t for s, t in zip(out, img)]
        return self.form.reduce(out)

    def __mul__(self, other: FqfAutomorphism) -> FqfAutomorphism:
        """Composition ``self ∘ other``."""
        return FqfAutomorphism(self.form, tuple(self(y) for y in other.images))

    def inverse(self) -> FqfAutomorphism:
        q = self.form
        table = {self(x): x for x in q.elements()}
        return FqfAutomorphism(q, tuple(table[q.generator(i)] for i in range(q.rank)))

    def is_identity(self) -> bool:
        return all(img == self.form.generator(i) for i, img in enumerate(self.images))

    @classmethod
    def identity(cls, q: FiniteQuadraticForm):
        return cls(q, tuple(q.generator(i) for i in range(q.rank)))

    @classmethod
    def scalar(cls, q: FiniteQuadraticForm, n: int):
        return cls(q, tuple(q.scale(n, q.generator(i)) for i in range(q.rank)))


def _morphisms(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm, first_only=False,
               limit=None):
    """Image tuples of all isometric isomorphisms ``q1 -> q2``."""
    if q1.order != q2.order:
        return []
    table = q2.element_table(limit)
    candidates = defaultdict(list)
    for x, val, o in table:
        candidates[(o, val)].append(x)
    k = q1.rank
    want = [(q1.orders[i], q1.q_values[i]) for i in range(k)]
    found = []
    chosen = []
    size = q2.order
    max_count = group_size_limit() if limit is None else limit

    def bijective(images):
        seen = set()
        for x in itertools.product(*(range(d) for d in q1.orders)):
            out = [0] * q2.rank
            for a, img in zip(x, images):
                if a:
                    out = [s + a * t for s, t in zip(out, img)]
            seen.add(q2.reduce(out))
        return len(seen) == size

    nondeg = q1.rank == 0 or _cached_nondegenerate(q1)

    def rec(i):
        if i == k:
            if nondeg or bijective(chosen):
                found.append(tuple(chosen))
                if len(found) > max_count:
                    raise GroupTooLarge("too many isometries")
                return first_only
            return False
        for x in candidates.get(want[i], ()):
            if all(q2.bilinear(chosen[j], x) == q1.bilinear_matrix[j][i] for j in range(i)):
                chosen.append(x)
                stop = rec(i + 1)
                chosen.pop()
                if stop:
                    return True
        return False

    rec(0)
    return found


_NONDEG_CACHE: dict = {}


def _cached_nondegenerate(q: FiniteQuadraticForm) -> bool:
    key = q.key()
    if key not in _NONDEG_CACHE:
        _NONDEG_CACHE[key] = q.is_nondegenerate()
    return _NONDEG_CACHE[key]


def _fingerprint(q: FiniteQuadraticForm):
    return sorted((o, v) for _, v, o in q.element_table())


def fqf_isomorphic(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm) -> FqfIsomorphism | None:
    """An isometry ``q1 -> q2`` or ``None``.

    Rejects quickly on invariant factors and on the multiset of
    ``(order, q-value)`` pairs; otherwise backtracks over generator images.
    The returned map is checked on every element.
    """
    if q1.invariant_factors != q2.invariant_factors:
        return None
    if _fingerprint(q1) != _fingerprint(q2):
        return None
    sols = _morphisms(q1, q2, first_only=True)
    if not sols:
        return None
    iso = FqfIsomorphism(q1, q2, sols[0])
    for x in q1.elements():
        if q2.value(iso(x)) != q1.value(x):
            raise AssertionError("isomorphism check failed")
    return iso


@dataclass(frozen=True)
class FqfIsomorphism:
    source: FiniteQuadraticForm
    target: FiniteQuadraticForm
    images: tuple[Element, ...]

    def __call__(self, x: Element) -> Element:
        out = [0] * self.target.rank
        for a, img in zip(x, self.images):
            if a:
                out = [s + a * t for s, t in zip(out, img)]
        return self.target.reduce(out)


def all_isometries(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm) -> list[FqfIsomorphism]:
    return [FqfIsomorphism(q1, q2, imgs) for imgs in _morphisms(q1, q2)]


def orthogonal_group(q: FiniteQuadraticForm) -> list[FqfAutomorphism]:
    """All automorphisms of the group preserving ``q`` (identity first)."""
    group = [FqfAutomorphism(q, imgs) for imgs in _morphisms(q, q)]
    group.sort(key=lambda f: (not f.is_identity(), f.images))
    members = set(group)
    if len(group) <= 500:
        for f in group:
            for g in group:
                if f * g not in members:
                    raise AssertionError("orthogonal group is not closed")
    return group


# --- subgroups ---------------------------------------------------------------

class FqfSubgroup:
    """Subgroup of a finite quadratic form, stored with its element set."""

    def __init__(self, form: FiniteQuadraticForm, generators: Iterable[Element] = (),
                 elements: Iterable[Element] | None = None):
        self.form = form
        gens = [form.reduce(g) for g in generators]
        self.generators = tuple(g for g in gens if any(g))
        if elements is None:
            elements = _closure(form, self.generators)
        self.elements = frozenset(elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x):
        return tuple(x) in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, FqfSubgroup) and self.form == other.form
                and self.elements == other.elements)

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"FqfSubgroup(order={self.order}, generators={list(self.generators)})"

    def sort_key(self):
        return (self.order, sorted(self.elements))

    def is_isotropic(self) -> bool:
        return all(self.form.value(x) == 0 for x in self.elements)

    def join(self, other: FqfSubgroup) -> FqfSubgroup:
        gens = self.generators + other.generators
        return FqfSubgroup(self.form, gens, _closure(self.form, other.generators, self.elements))

    def image(self, f) -> FqfSubgroup:
        form = getattr(f, "target", None) or f.form
        return FqfSubgroup(form, [f(g) for g in self.generators], {f(x) for x in self.elements})


def _closure(form: FiniteQuadraticForm, gens, start=None) -> set[Element]:
    elems = set(start) if start else {form.zero}
    frontier = deque(elems)
    gens = [g for g in gens if any(g)]
    while frontier:
        x = frontier.popleft()
        for g in gens:
            y = form.add(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return elems


def subgroup(form: FiniteQuadraticForm, generators) -> FqfSubgroup:
    return FqfSubgroup(form, generators)


def _cyclic_subgroups(form: FiniteQuadraticForm, pool) -> list[FqfSubgroup]:
    seen = {}
    for x in pool:
        if x == form.zero:
            continue
        H = FqfSubgroup(form, [x])
        seen.setdefault(H.elements, H)
    return list(seen.values())


def _join_closure(form, cyclics, accept=lambda H: True) -> list[FqfSubgroup]:
    trivial = FqfSubgroup(form)
    found = {trivial.elements: trivial}
    frontier = [trivial]
    while frontier:
        new = []
        for H in frontier:
            for C in cyclics:
                if C.elements <= H.elements:
                    continue
                J = H.join(C)
                if J.elements in found or not accept(J):
                    continue
                found[J.elements] = J
                new.append(J)
        frontier = new
    return sorted(found.values(), key=FqfSubgroup.sort_key)


def all_subgroups(q: FiniteQuadraticForm) -> list[FqfSubgroup]:
    """Every subgroup exactly once, sorted by order then elements."""
    return _join_closure(q, _cyclic_subgroups(q, q.elements()))


def isotropic_subgroups(q: FiniteQuadraticForm) -> list[FqfSubgroup]:
    """Subgroups on which ``q`` vanishes identically.

    Such subgroups are generated by isotropic elements, so only cyclic
    subgroups of isotropic elements are joined.
    """
    pool = [x for x in q.elements() if q.value(x) == 0]
    cyclics = [C for C in _cyclic_subgroups(q, pool) if C.is_isotropic()]
    return _join_closure(q, cyclics, FqfSubgroup.is_isotropic)


def orthogonal_subgroup(q: FiniteQuadraticForm, H: FqfSubgroup) -> FqfSubgroup:
    gens = H.generators
    elems = {x for x in q.elements() if all(q.bilinear(x, h) == 0 for h in gens)}
    return FqfSubgroup(q, _small_generating_set(q, elems), elems)


def _small_generating_set(q, elems) -> list[Element]:
    gens = []
    span = {q.zero}
    for x in sorted(elems, key=lambda x: (-q.element_order(x), x)):
        if x not in span:
            gens.append(x)
            span = _closure(q, [x], span)
    return gens


@dataclass(frozen=True, eq=False)
class Subquotient:
    """``A / B`` for subgroups ``B <= A`` presented as a product of cyclics.

    ``basis`` are vectors of ``Z^k`` (k = rank of the ambient form) whose
    classes generate ``A/B``; ``coords`` maps an element of ``A`` to its
    coordinates in that presentation.
    """

    form: FiniteQuadraticForm
    basis: tuple[Element, ...]
    inverse: tuple[tuple[Fraction, ...], ...]
    ambient: FiniteQuadraticForm

    def coords(self, x: Element) -> Element:
        c = la.matvec(self.inverse, list(x))
        return self.form.reduce(int(t) for t in c)


def _subgroup_lattice(q: FiniteQuadraticForm, gens) -> list[list[int]]:
    k = q.rank
    rows = [list(g) for g in gens]
    rows += [[q.orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
    return la.row_span_basis(rows)


def subquotient(q: FiniteQuadraticForm, A: FqfSubgroup, B: FqfSubgroup) -> Subquotient:
    k = q.rank
    if k == 0:
        return Subquotient(FiniteQuadraticForm.trivial(), (), (), q)
    BA = la.transpose(_subgroup_lattice(q, A.generators))  # columns
    BB = la.transpose(_subgroup_lattice(q, B.generators))
    X = la.as_int_matrix(la.matmul(la.inverse_rational(BA), BB))
    U, D, _ = la.smith_normal_form(X)
    Uinv = la.inverse_unimodular(U)
    C = la.matmul(BA, Uinv)
    idx = [i for i in range(k) if D[i][i] != 1]
    orders = [D[i][i] for i in idx]
    basis = [tuple(C[r][i] for r in range(k)) for i in idx]
    gram = [[_pair_lift(q, u, w) for w in basis] for u in basis]
    form = FiniteQuadraticForm(orders, [_value_lift(q, u) for u in basis], gram)
    Cinv = la.inverse_rational(C)
    inverse = tuple(tuple(Cinv[i]) for i in idx)
    return Subquotient(form, tuple(basis), inverse, q)


def _value_lift(q, u):
    return q.value(q.reduce(u))


def _pair_lift(q, u, w):
    return q.bilinear(q.reduce(u), q.reduce(w))


def quotient_form(q: FiniteQuadraticForm, H: FqfSubgroup) -> FiniteQuadraticForm:
    """The induced form on ``H^perp / H`` for isotropic ``H``."""
    return quotient_presentation(q, H).form


def quotient_presentation(q: FiniteQuadraticForm, H: FqfSubgroup) -> Subquotient:
    if not H.is_isotropic():
        raise NotIsotropic("quotient_form needs an isotropic subgroup")
    return subquotient(q, orthogonal_subgroup(q, H), H)


def cyclic_form(n: int, value: Fraction) -> FiniteQuadraticForm:
    """``Z/n`` with ``q(1) = value``."""
    if n == 1:
        return FiniteQuadraticForm.trivial()
    return FiniteQuadraticForm((n,), (value,), ((value,),))
