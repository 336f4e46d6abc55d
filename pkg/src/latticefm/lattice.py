"""Even lattices given by Gram matrices, embeddings and definite enumeration.

A lattice is ``Z^r`` with the pairing ``(v, w) = v^t G w``.  Vectors are
always integer coordinate tuples with respect to the lattice basis.

Standard lattices have frozen basis orderings:

* ``U``: ``(e, f)`` with ``e^2 = f^2 = 0`` and ``(e, f) = 1``.
* ``E8``, ``E6``, ``A2``: simple roots in Bourbaki order (Cartan matrices).
* ``D16plus``: the HNF basis of ``D16 + Z s`` inside ``Z^16`` with
  ``s = (1/2, ..., 1/2)``.
* ``K3``: ``U(1), U(2), U(3), E8(-1), E8(-1)``, so ``e_i, f_i`` sit at
  coordinates ``2i-2, 2i-1``.
* ``L2d(d)``: ``U(1), U(2), <-2d>, E8(-1), E8(-1)``; the generator ``l`` of
  ``<-2d>`` is coordinate 4.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Sequence

from . import intlinalg as la

DEFAULT_LIMIT = 100_000


def group_size_limit() -> int:
    """Cap on enumerated group sizes (``LATTICE_FM_LIMIT`` overrides it)."""
    value = os.environ.get("LATTICE_FM_LIMIT")
    return int(value) if value else DEFAULT_LIMIT


class LatticeError(ValueError):
    pass


class NotSymmetric(LatticeError):
    pass


class Degenerate(LatticeError):
    pass


class NotEven(LatticeError):
    pass


class UnknownName(LatticeError):
    pass


class BadParameter(LatticeError):
    pass


class IndefiniteInput(LatticeError):
    pass


class RankLimitExceeded(LatticeError):
    pass


class GroupTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class Signature:
    plus: int
    minus: int

    def __iter__(self):
        return iter((self.plus, self.minus))

    def __add__(self, other):
        return Signature(self.plus + other.plus, self.minus + other.minus)

    def __str__(self):
        return f"({self.plus},{self.minus})"


def _freeze(M) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in M)


@dataclass(frozen=True)
class Lattice:
    """An even nondegenerate lattice.

    ``hyperbolic_planes`` marks index pairs ``(i, j)`` spanning orthogonal
    direct summands isometric to ``U`` with ``e = b_i`` and ``f = b_j``.
    """

    gram: tuple[tuple[int, ...], ...]
    label: str | None = field(default=None, compare=False)
    hyperbolic_planes: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        return la.det_exact(self.gram)

    @property
    def discriminant(self) -> int:
        return abs(self.det)

    def pair(self, u, v):
        return la.bilinear(self.gram, u, v)

    def norm(self, v):
        return la.bilinear(self.gram, v, v)

    def gram_list(self) -> list[list[int]]:
        return [list(row) for row in self.gram]

    def __str__(self):
        return self.label or f"Lattice({self.gram_list()})"


def make_lattice(gram, label=None, hyperbolic_planes=()) -> Lattice:
    """Validate ``gram`` and wrap it as a :class:`Lattice`."""
    G = _freeze(gram)
    n = len(G)
    if any(len(row) != n for row in G):
        raise NotSymmetric("Gram matrix must be square")
    if not la.is_symmetric(G):
        raise NotSymmetric("Gram matrix is not symmetric")
    if any(G[i][i] % 2 for i in range(n)):
        raise NotEven("odd diagonal entry")
    if la.det_exact(G) == 0:
        raise Degenerate("Gram matrix is singular")
    planes = tuple((int(i), int(j)) for i, j in hyperbolic_planes)
    for i, j in planes:
        ok = G[i][i] == 0 and G[j][j] == 0 and G[i][j] == 1
        ok = ok and all(G[i][k] == 0 and G[j][k] == 0 for k in range(n) if k not in (i, j))
        if not ok:
            raise LatticeError(f"marked plane {(i, j)} is not an orthogonal U summand")
    return Lattice(G, label, planes)


def direct_sum(*lattices: Lattice) -> Lattice:
    planes = []
    offset = 0
    for L in lattices:
        planes += [(i + offset, j + offset) for i, j in L.hyperbolic_planes]
        offset += L.rank
    label = " + ".join(str(L) for L in lattices)
    gram = la.block_diagonal(*(L.gram for L in lattices))
    return Lattice(_freeze(gram), label, tuple(planes))


def twist(L: Lattice, n: int) -> Lattice:
    """Scale the form by ``n`` (``L(n)`` in the usual notation)."""
    if n == 0:
        raise BadParameter("twist by zero")
    label = f"{L}({n})" if L.label else None
    planes = L.hyperbolic_planes if n == 1 else ()
    return make_lattice([[n * x for x in row] for row in L.gram], label, planes)


# --- standard lattices ---------------------------------------------------

_U = ((0, 1), (1, 0))
_A2 = ((2, -1), (-1, 2))


def _cartan_e(n: int) -> list[list[int]]:
    # Bourbaki: chain 1-3-4-5-..-n with node 2 attached to node 4.
    C = [[2 * int(i == j) for j in range(n)] for i in range(n)]
    edges = [(0, 2), (1, 3)] + [(k, k + 1) for k in range(2, n - 1)]
    for i, j in edges:
        C[i][j] = C[j][i] = -1
    return C


def _d16plus_gram() -> list[list[int]]:
    n = 16
    gens = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 2, -2
        gens.append(v)
    v = [0] * n
    v[n - 2] = v[n - 1] = 2
    gens.append(v)
    gens.append([1] * n)
    B = la.row_span_basis(gens)  # rows, coordinates doubled
    return [[la.dot(u, w) // 4 for w in B] for u in B]


def _named(name: str) -> Lattice:
    if name == "U":
        return make_lattice(_U, "U", [(0, 1)])
    if name == "E8":
        return make_lattice(_cartan_e(8), "E8")
    if name == "E6":
        return make_lattice(_cartan_e(6), "E6")
    if name == "A2":
        return make_lattice(_A2, "A2")
    if name == "D16plus":
        return make_lattice(_d16plus_gram(), "D16plus")
    raise UnknownName(name)


def standard_lattice(name: str, param: int | None = None) -> Lattice:
    """Named lattice: ``U``, ``E8``, ``E6``, ``A2``, ``D16plus`` (each
    optionally with ``(-1)``), ``<n>``, ``K3`` and ``L2d`` (needs ``param=d``,
    or write ``L2d(7)``)."""
    s = name.replace(" ", "").replace("−", "-").replace("⟨", "<").replace("⟩", ">")
    m = re.fullmatch(r"<(-?\d+)>", s)
    if m:
        n = int(m.group(1))
        if n == 0 or n % 2:
            raise BadParameter(f"<n> needs n even and nonzero, got {n}")
        return make_lattice([[n]], f"<{n}>")
    m = re.fullmatch(r"L2d\((\d+)\)", s)
    if m:
        s, param = "L2d", int(m.group(1))
    if s == "K3":
        U, E = standard_lattice("U"), standard_lattice("E8(-1)")
        L = direct_sum(U, U, U, E, E)
        return Lattice(L.gram, "K3", L.hyperbolic_planes)
    if s == "L2d":
        if param is None or param < 1:
            raise BadParameter("L2d needs d >= 1")
        U, E = standard_lattice("U"), standard_lattice("E8(-1)")
        L = direct_sum(U, U, standard_lattice(f"<{-2 * param}>"), E, E)
        return Lattice(L.gram, f"L2d({param})", L.hyperbolic_planes)
    m = re.fullmatch(r"([A-Za-z0-9]+)\((-?\d+)\)", s)
    if m:
        return twist(_named(m.group(1)), int(m.group(2)))
    return _named(s)


def parse_lattice_expression(expr: str) -> Lattice:
    """Parse sums like ``2U + <-14> + 2E8(-1)`` into a lattice."""
    terms = [t.strip() for t in re.split(r"\+|⊕", expr) if t.strip()]
    if not terms:
        raise UnknownName(expr)
    parts = []
    for t in terms:
        m = re.fullmatch(r"(\d+)\s*([A-Za-z<].*)", t)
        mult, body = (int(m.group(1)), m.group(2)) if m else (1, t)
        parts += [standard_lattice(body)] * mult
    if len(parts) == 1:
        return parts[0]
    L = direct_sum(*parts)
    return Lattice(L.gram, expr.strip(), L.hyperbolic_planes)


# --- signature -----------------------------------------------------------

def signature(L: Lattice | Sequence[Sequence[int]]) -> Signature:
    """Signature by exact congruence diagonalisation over Q."""
    G = L.gram if isinstance(L, Lattice) else L
    A = la.to_fractions(G)
    plus = minus = 0
    while A:
        n = len(A)
        i = next((k for k in range(n) if A[k][k] != 0), None)
        if i is not None:
            p = A[i][i]
            if p > 0:
                plus += 1
            else:
                minus += 1
            rest = [k for k in range(n) if k != i]
            A = [[A[r][c] - A[r][i] * A[i][c] / p for c in rest] for r in rest]
            continue
        pair = next(((r, c) for r in range(n) for c in range(r + 1, n) if A[r][c] != 0), None)
        if pair is None:
            break  # zero block: degenerate
        r0, c0 = pair
        # zero diagonal with a nonzero off-diagonal entry: a hyperbolic block
        plus += 1
        minus += 1
        a = A[r0][c0]
        rest = [k for k in range(n) if k not in pair]
        # block [[0, a], [a, 0]] has inverse [[0, 1/a], [1/a, 0]]
        A = [
            [A[r][c] - (A[r][r0] * A[c0][c] + A[r][c0] * A[r0][c]) / a for c in rest]
            for r in rest
        ]
    return Signature(plus, minus)


def is_definite(L: Lattice) -> bool:
    s = signature(L)
    return s.plus == 0 or s.minus == 0


# --- embeddings ----------------------------------------------------------

@dataclass(frozen=True)
class Embedding:
    """Isometric embedding; ``matrix`` columns are images of the domain basis."""

    domain: Lattice
    ambient: Lattice
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        M = self.matrix
        if len(M) != self.ambient.rank:
            raise LatticeError("embedding matrix has wrong number of rows")
        if any(len(row) != self.domain.rank for row in M):
            raise LatticeError("embedding matrix has wrong number of columns")
        if self.domain.rank and la.rank(M) != self.domain.rank:
            raise LatticeError("embedding matrix does not have full column rank")
        pulled = la.matmul(la.matmul(la.transpose(M), self.ambient.gram), M)
        if self.domain.rank and _freeze(pulled) != self.domain.gram:
            raise LatticeError("embedding is not isometric onto its image")

    @property
    def columns(self) -> list[list[int]]:
        return la.transpose(self.matrix) if self.domain.rank else []


def span_embedding(ambient: Lattice, vectors, label=None) -> Embedding:
    """Embedding of the sublattice spanned by ``vectors`` (a basis)."""
    vectors = [list(v) for v in vectors]
    gram = [[ambient.pair(u, w) for w in vectors] for u in vectors]
    domain = make_lattice(gram, label) if vectors else Lattice((), label)
    matrix = la.transpose(vectors) if vectors else [[] for _ in range(ambient.rank)]
    return Embedding(domain, ambient, _freeze(matrix))


def _embedding_from_rows(ambient: Lattice, rows, label=None) -> Embedding:
    rows = la.row_span_basis(rows) if rows else []
    return span_embedding(ambient, rows, label)


def orthogonal_complement(e: Embedding) -> Embedding:
    """Embedding of ``image^perp``; the basis is HNF-canonical and primitive."""
    pairing = la.matmul(la.transpose(e.matrix), e.ambient.gram) if e.domain.rank else []
    K = la.integer_kernel_saturated(pairing, ncols=e.ambient.rank)
    rows = la.transpose(K) if K and K[0] else []
    return _embedding_from_rows(e.ambient, rows, "complement")


def is_primitive(e: Embedding) -> bool:
    """True iff ``ambient / image`` is torsion free."""
    if not e.domain.rank:
        return True
    _, D, _ = la.smith_normal_form(e.matrix)
    return all(D[i][i] == 1 for i in range(e.domain.rank))


def primitive_hull(e: Embedding) -> Embedding:
    """Saturation ``(image ⊗ Q) ∩ ambient`` with HNF-canonical basis."""
    n = e.ambient.rank
    if not e.domain.rank:
        return e
    perp = la.integer_kernel_saturated(la.transpose(e.matrix))  # standard dot product
    rows = la.transpose(perp) if perp and perp[0] else []
    hull = la.integer_kernel_saturated(rows, ncols=n)
    return _embedding_from_rows(e.ambient, la.transpose(hull), "hull")


def same_image(e1: Embedding, e2: Embedding) -> bool:
    r1 = la.row_span_basis(e1.columns) if e1.domain.rank else []
    r2 = la.row_span_basis(e2.columns) if e2.domain.rank else []
    return r1 == r2


def divisor(L: Lattice, v: Sequence[int]) -> int:
    """Positive generator of the ideal ``(v, L)``."""
    if not any(v):
        raise BadParameter("divisor of the zero vector")
    return la.content(la.matvec(L.gram, v))


# --- definite enumeration --------------------------------------------------

def _definite_sign(L: Lattice) -> int:
    s = signature(L)
    if s.minus == 0:
        return 1
    if s.plus == 0:
        return -1
    raise IndefiniteInput(f"{L} has signature {s}")


def _fincke_pohst_form(G):
    """Coefficients ``q`` with ``x^t G x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2``."""
    n = len(G)
    q = la.to_fractions(G)
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _floor_sqrt_bound(t: Fraction) -> int:
    # integer s with s >= sqrt(t)
    return isqrt(t.numerator // t.denominator) + 1


def vectors_up_to(L: Lattice, bound: int) -> Iterator[tuple[int, ...]]:
    """All nonzero ``v`` with ``|v^2| <= bound`` in a definite lattice.

    Candidate boxes come from the rational Fincke-Pohst decomposition; every
    candidate is accepted only after an exact integer check.
    """
    sign = _definite_sign(L)
    G = [[sign * x for x in row] for row in L.gram]
    n = len(G)
    if n == 0 or bound <= 0:
        return
    q = _fincke_pohst_form(G)
    x = [0] * n

    def rec(i, remaining):
        if i < 0:
            yield tuple(x)
            return
        c = -sum(q[i][j] * x[j] for j in range(i + 1, n))
        s = _floor_sqrt_bound(remaining / q[i][i])
        lo = (c - s).__floor__()
        hi = (c + s).__ceil__()
        for xi in range(lo, hi + 1):
            used = q[i][i] * (xi - c) ** 2
            if used <= remaining:
                x[i] = xi
                yield from rec(i - 1, remaining - used)
        x[i] = 0

    for v in rec(n - 1, Fraction(bound)):
        if any(v):
            norm = la.bilinear(G, v, v)
            if norm <= bound:
                yield v


def short_vectors(L: Lattice, n: int) -> list[tuple[int, ...]]:
    """All ``v`` with ``v^t G v = n`` (both signs), sorted lexicographically."""
    sign = _definite_sign(L)
    if n * sign <= 0:
        return []
    found = [v for v in vectors_up_to(L, abs(n)) if L.norm(v) == n]
    return sorted(found)


def isometry_group_definite(L: Lattice, max_rank: int = 8) -> list[list[list[int]]]:
    """All ``S`` with ``S^t G S = G`` for a definite lattice of rank <= 8.

    Backtracks over images of the basis vectors among vectors of matching
    norm; raises :class:`GroupTooLarge` past the group size limit.
    """
    if L.rank > max_rank:
        raise RankLimitExceeded(f"rank {L.rank} > {max_rank}")
    sols = _isometries(L, L, limit=group_size_limit())
    group = [la.transpose(cols) for cols in sols]
    _check_group(L, group)
    return group


def _isometries(source: Lattice, target: Lattice, limit=None, first_only=False):
    """Column lists ``[c_1..c_r]`` of vectors of ``source`` with Gram ``target.gram``."""
    r = target.rank
    T = target.gram
    if r == 0:
        return [[]]
    by_norm = {}
    for i in range(r):
        n = T[i][i]
        if n not in by_norm:
            by_norm[n] = short_vectors(source, n)
    out = []
    chosen = []

    def rec(i):
        if i == r:
            out.append([list(c) for c in chosen])
            if limit is not None and len(out) > limit:
                raise GroupTooLarge(f"more than {limit} isometries")
            return first_only
        for v in by_norm[T[i][i]]:
            if all(source.pair(chosen[j], v) == T[j][i] for j in range(i)):
                chosen.append(v)
                stop = rec(i + 1)
                chosen.pop()
                if stop:
                    return True
        return False

    rec(0)
    return out


def _check_group(L: Lattice, group) -> None:
    keys = {_freeze(S) for S in group}
    if len(group) > 2000:
        return
    for S in group:
        for T in group:
            if _freeze(la.matmul(S, T)) not in keys:
                raise AssertionError("isometry list is not closed under products")


def find_isometry_definite(L1: Lattice, L2: Lattice, max_rank: int = 8):
    """``S`` with ``S^t G1 S = G2`` (columns are vectors of ``L1``) or ``None``."""
    if L1.rank != L2.rank:
        return None
    if L1.rank > max_rank:
        raise RankLimitExceeded(f"rank {L1.rank} > {max_rank}")
    if _definite_sign(L1) != _definite_sign(L2):
        raise LatticeError("MixedDefiniteness: one lattice is positive, the other negative")
    if L1.det != L2.det:
        return None
    sols = _isometries(L1, L2, first_only=True)
    return la.transpose(sols[0]) if sols else None


# --- representation ------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    vector: tuple[int, ...]
    primitive: bool


@dataclass(frozen=True)
class NotFoundUpToBound:
    """No vector found.  ``complete`` means non-representation is proved;
    ``method`` says how (definite enumeration or isotropic divisor scan)."""

    bound: int
    complete: bool
    method: str
    moduli_checked: tuple[int, ...] = ()


@dataclass(frozen=True)
class ObstructedMod:
    modulus: int


MODULAR_SCAN_CAP = 200_000


def _canonical_sign(v):
    for x in v:
        if x:
            return x > 0
    return True


def _box(r: int, radius: int):
    """Vectors with max-norm exactly ``radius`` and positive leading entry."""
    inner = range(-radius + 1, radius)
    full = range(-radius, radius + 1)
    for k in range(r):
        # k is the first coordinate of absolute value ``radius``
        for head in itertools.product(inner, repeat=k):
            for tail in itertools.product(full, repeat=r - k - 1):
                for s in (radius, -radius):
                    v = head + (s,) + tail
                    if _canonical_sign(v):
                        yield v


def _quadratic(G):
    """Fast evaluator of ``v -> v^t G v``."""
    r = len(G)
    terms = [(i, i, G[i][i]) for i in range(r) if G[i][i]]
    terms += [(i, j, 2 * G[i][j]) for i in range(r) for j in range(i + 1, r) if G[i][j]]

    def q(v):
        return sum(c * v[i] * v[j] for i, j, c in terms)
    return q


def _values_mod(G, m: int) -> set[int]:
    q = _quadratic(G)
    return {q(v) % m for v in itertools.product(range(m), repeat=len(G))}


def modular_obstruction(L: Lattice, n: int, moduli) -> int | None:
    """Smallest modulus in ``moduli`` with ``n`` not a value of ``v^2`` mod m."""
    for m in moduli:
        if m < 2 or m ** L.rank > MODULAR_SCAN_CAP:
            continue
        if n % m not in _values_mod(L.gram, m):
            return m
    return None


def _isotropic_binary_decision(L: Lattice, n: int):
    """Decide representability of ``n != 0`` by an isotropic binary lattice.

    After moving a primitive isotropic vector to the first basis slot the
    form is ``y (2 b x + c y)``, so ``y`` must divide ``n``.
    Returns a vector or ``None``; raises ValueError if not applicable.
    """
    if L.rank != 2 or n == 0:
        raise ValueError("not applicable")
    (a, b), (_, c) = L.gram
    disc = b * b - a * c  # = -det
    if disc <= 0 or isqrt(disc) ** 2 != disc:
        raise ValueError("not isotropic")
    s = isqrt(disc)
    # isotropic direction: a x^2 + 2 b x y + c y^2 = 0
    if a == 0:
        e = (1, 0)
    else:
        x, y = -b + s, a
        g = gcd(x, y)
        e = (x // g, y // g)
    # complete e to a basis
    _, u, v = _xgcd(e[0], e[1])
    f = (-v, u)
    B = [[e[0], f[0]], [e[1], f[1]]]
    assert la.det_exact(B) in (1, -1)
    G2 = la.matmul(la.matmul(la.transpose(B), L.gram), B)
    assert G2[0][0] == 0
    bb, cc = G2[0][1], G2[1][1]
    for y in sorted({d for k in _divisors(abs(n)) for d in (k, -k)}, key=lambda t: (abs(t), t < 0)):
        rest = n // y - cc * y  # 2 bb x = n/y - cc y
        if rest % (2 * bb) == 0:
            xx = rest // (2 * bb)
            w = la.matvec(B, [xx, y])
            if not _canonical_sign(w):
                w = [-t for t in w]
            return tuple(w)
    return None


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def represents(L: Lattice, n: int, bound: int = 20):
    """Search for ``v`` with ``v^2 = n``.

    Definite lattices are searched completely.  For indefinite lattices the
    box ``|v_i| <= bound`` is scanned, then the moduli ``2..bound`` and
    ``8 |det G|`` are checked for a congruence obstruction (moduli with
    ``m^rank`` above ``MODULAR_SCAN_CAP`` are skipped), and finally
    isotropic binary lattices get a complete divisor-based decision.
    """
    if n == 0:
        return Witness(tuple([0] * L.rank), False)
    if is_definite(L):
        vs = short_vectors(L, n)
        vs = [v for v in vs if _canonical_sign(v)]
        if vs:
            v = min(vs, key=lambda v: (max(map(abs, v)), [-t for t in v]))
            return Witness(v, la.content(v) == 1)
        return NotFoundUpToBound(bound, True, "definite-enumeration")
    q = _quadratic(L.gram)
    for radius in range(1, bound + 1):
        for v in _box(L.rank, radius):
            if q(v) == n:
                return Witness(tuple(v), la.content(v) == 1)
    moduli = list(range(2, bound + 1)) + [8 * L.discriminant]
    m = modular_obstruction(L, n, moduli)
    if m is not None:
        return ObstructedMod(m)
    checked = tuple(k for k in moduli if k >= 2 and k ** L.rank <= MODULAR_SCAN_CAP)
    try:
        w = _isotropic_binary_decision(L, n)
    except ValueError:
        return NotFoundUpToBound(bound, False, "box-search", checked)
    if w is not None:
        return Witness(w, la.content(w) == 1)
    return NotFoundUpToBound(bound, True, "isotropic-divisor-scan", checked)


def hyperbolic_basis(L: Lattice) -> list[list[int]]:
    """Matrix ``S`` (columns ``e, f``) with ``S^t G S = [[0,1],[1,0]]``.

    ``L`` must be even, unimodular and indefinite of rank 2, i.e. a
    hyperbolic plane in some basis.
    """
    if L.rank != 2 or abs(L.det) != 1 or is_definite(L):
        raise BadParameter("hyperbolic_basis needs an indefinite unimodular binary lattice")
    (a, b), (_, c) = L.gram
    s = isqrt(b * b - a * c)
    if a == 0:
        e = [1, 0]
    else:
        x, y = -b + s, a
        g = gcd(x, y)
        e = [x // g, y // g]
    phi = la.matvec(L.gram, e)  # content 1 since L is unimodular and e primitive
    _, u, v = _xgcd(phi[0], phi[1])
    w = [u, v]
    half = L.norm(w) // 2
    f = [w[0] - half * e[0], w[1] - half * e[1]]
    S = la.transpose([e, f])
    if la.matmul(la.matmul(la.transpose(S), L.gram), S) != [[0, 1], [1, 0]]:
        raise AssertionError("hyperbolic basis check failed")
    return S
