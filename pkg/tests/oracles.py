"""Slow, independent reference computations used to check the library.

Nothing here calls Smith or Hermite normal forms; the oracles work from
first principles (minors, explicit enumeration, closure in (Q/Z)^r).
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from math import gcd, isqrt


def minors_gcds(M):
    """Determinantal divisors: gcd of all k x k minors, k = 1..min(m, n)."""
    m, n = len(M), len(M[0])
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = gcd(g, _det([[M[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


def _det(M):
    # Laplace expansion; fine for the tiny matrices used here
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(n) if M[0][j])


def invariant_factors_by_minors(M):
    """Smith diagonal from ratios of determinantal divisors."""
    ds = minors_gcds(M)
    out, prev = [], 1
    for d in ds:
        if d == 0:
            out.append(0)
            continue
        out.append(d // prev)
        prev = d
    return out


def adjugate(G):
    n = len(G)
    return [[(-1) ** (i + j) * _det([[G[a][b] for b in range(n) if b != i] for a in range(n) if a != j])
             for j in range(n)] for i in range(n)]


def dual_quotient(G):
    """Elements of L^dual / L as tuples of Fractions in [0,1), by closure.

    The group is generated by the columns of ``G^{-1}``.
    """
    n = len(G)
    det = _det(G)
    adj = adjugate(G)
    gens = [tuple(Fraction(adj[i][j], det) % 1 for i in range(n)) for j in range(n)]
    zero = tuple(Fraction(0) for _ in range(n))
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple((a + b) % 1 for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def element_order_fraction(x):
    o = 1
    for a in x:
        o = o * a.denominator // gcd(o, a.denominator)
    return o


def dual_quotient_profile(G):
    """Counter of (order, q-value) over L^dual / L."""
    prof = Counter()
    for y in dual_quotient(G):
        q = sum(y[i] * G[i][j] * y[j] for i in range(len(G)) for j in range(len(G))) % 2
        prof[(element_order_fraction(y), q)] += 1
    return prof


def form_profile(q):
    """Counter of (order, q-value) for a FiniteQuadraticForm."""
    return Counter((o, v) for _, v, o in q.element_table())


def cyclic_product_elements(orders):
    return list(itertools.product(*(range(d) for d in orders)))


def brute_subgroups(orders):
    """All subgroups of prod Z/d_i, as frozensets, via closures of pairs."""
    elems = cyclic_product_elements(orders)

    def add(x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, orders))

    def closure(gens):
        s = {tuple(0 for _ in orders)}
        changed = True
        while changed:
            changed = False
            for x in list(s):
                for g in gens:
                    y = add(x, g)
                    if y not in s:
                        s.add(y)
                        changed = True
        return frozenset(s)

    k = len(orders)
    subs = set()
    for gens in itertools.combinations_with_replacement(elems, max(k, 1)):
        subs.add(closure(gens))
    return subs


def brute_orthogonal_group_order(q):
    """Count generator-image tuples giving bijective q-preserving homomorphisms."""
    elems = q.elements()
    count = 0
    for imgs in itertools.product(elems, repeat=q.rank):
        if any(q.scale(d, x) != q.zero for d, x in zip(q.orders, imgs)):
            continue

        def f(x):
            out = [0] * q.rank
            for a, img in zip(x, imgs):
                out = [s + a * t for s, t in zip(out, img)]
            return q.reduce(out)
        if len({f(x) for x in elems}) != len(elems):
            continue
        if all(q.value(f(x)) == q.value(x) for x in elems):
            count += 1
    return count


def brute_vectors_of_norm(G, n):
    """All v with v^t G v = n for definite G, searching the exact box
    ``x_i^2 <= n (G^{-1})_{ii}``."""
    r = len(G)
    det = _det(G)
    adj = adjugate(G)
    sign = 1 if n > 0 else -1
    radii = []
    for i in range(r):
        bound = Fraction(n * adj[i][i], det)  # n * (G^{-1})_ii >= 0 for definite G
        radii.append(isqrt(int(bound)) if bound > 0 else 0)
    out = []
    for v in itertools.product(*(range(-R, R + 1) for R in radii)):
        if sum(v[i] * G[i][j] * v[j] for i in range(r) for j in range(r)) == n:
            out.append(v)
    return sorted(out)


def brute_isometry_count(G):
    """|O(L)| for small definite G by searching the exact box for each column."""
    r = len(G)
    cols = [brute_vectors_of_norm(G, G[i][i]) for i in range(r)]
    count = 0
    for choice in itertools.product(*cols):
        if all(sum(choice[a][i] * G[i][j] * choice[b][j] for i in range(r) for j in range(r)) == G[a][b]
               for a in range(r) for b in range(r)):
            # must be invertible over Z
            if abs(_det([[choice[b][a] for b in range(r)] for a in range(r)])) == 1:
                count += 1
    return count


def represents_in_box(G, n, R):
    r = len(G)
    for v in itertools.product(range(-R, R + 1), repeat=r):
        if sum(v[i] * G[i][j] * v[j] for i in range(r) for j in range(r)) == n:
            return v
    return None


def units_squaring_to_one(m):
    """Automorphisms of Z/m given by units k with k^2 = 1 mod 2m (cyclic q)."""
    return [k for k in range(m) if gcd(k, m) == 1 and (k * k - 1) % (2 * m) == 0]


def distinct_prime_factors(n):
    ps, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            ps.add(p)
            n //= p
        p += 1
    if n > 1:
        ps.add(n)
    return len(ps)


def _cosets_profile(q, perp, H):
    # (order in perp/H, q-value) for each coset of H in perp
    seen, prof = set(), Counter()
    for x in perp:
        c = frozenset(q.add(x, h) for h in H)
        if c in seen:
            continue
        seen.add(c)
        o = 1
        while not q.scale(o, x) in H:
            o += 1
        prof[(o, q.value(x))] += 1
    return prof


def brute_kq(qT, qS, target):
    """kq(T, S, target) by scanning subgroups of D_T x D_S.

    A gluing subgroup is isomorphic to a subgroup of D_T, so it is generated
    by at most ``len(qT.orders)`` isotropic elements; all such tuples are
    closed up.  The quotient check compares (order, q) profiles, which is
    enough for the small cyclic targets used in the tests.
    """
    from latticefm.discforms import direct_sum
    q = direct_sum(qT, qS)
    n_t = qT.rank
    want = form_profile(target)
    iso = [x for x in q.elements() if q.value(x) == 0]
    subs = set()
    for gens in itertools.combinations_with_replacement(iso, max(n_t, 1)):
        H = {q.zero}
        frontier = [q.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = q.add(x, g)
                    if y not in H:
                        H.add(y)
                        nxt.append(y)
            frontier = nxt
        subs.add(frozenset(H))
    out = []
    for H in subs:
        if any(q.value(x) != 0 for x in H):
            continue
        if len({x[:n_t] for x in H}) != len(H) or len({x[n_t:] for x in H}) != len(H):
            continue
        if len(H) ** 2 * target.order != q.order:
            continue
        perp = [x for x in q.elements() if all(q.bilinear(x, h) == 0 for h in H)]
        if _cosets_profile(q, perp, H) == want:
            out.append(H)
    return q, out


def _hom_images(q, perp, H, target):
    """All maps perp -> target that kill H, are additive and preserve q, onto."""
    t_elems = target.elements()
    gens = []
    span = {q.zero}
    for x in perp:
        if x not in span:
            gens.append(x)
            frontier = list(span)
            while frontier:
                nxt = []
                for y in frontier:
                    for g in gens:
                        z = q.add(y, g)
                        if z not in span:
                            span.add(z)
                            nxt.append(z)
                frontier = nxt
    out = []
    for imgs in itertools.product(t_elems, repeat=len(gens)):
        f = {q.zero: target.zero}
        frontier = [q.zero]
        ok = True
        while frontier and ok:
            nxt = []
            for y in frontier:
                for g, t in zip(gens, imgs):
                    z, w = q.add(y, g), target.add(f[y], t)
                    if z in f:
                        if f[z] != w:
                            ok = False
                            break
                    else:
                        f[z] = w
                        nxt.append(z)
                if not ok:
                    break
            frontier = nxt
        if not ok or any(f[h] != target.zero for h in H):
            continue
        if len(set(f.values())) != target.order:
            continue
        if all(target.value(f[x]) == q.value(x) for x in perp):
            out.append(frozenset(f.items()))
    return out


def brute_polarised_orbits(qT, qS, target, t_maps, s_maps, marked=False):
    """Orbits of the generated group acting by ``(a, b)(x, y) = (a x, b y)``.

    Without ``marked`` the items are the subgroups of kq; with it, pairs of a
    subgroup and an identification of ``H^perp/H`` with the target.
    """
    q, subs = brute_kq(qT, qS, target)
    n_t = qT.rank
    acts = [lambda x, a=a: tuple(a(x[:n_t])) + tuple(x[n_t:]) for a in t_maps]
    acts += [lambda x, b=b: tuple(x[:n_t]) + tuple(b(x[n_t:])) for b in s_maps]
    if marked:
        items = []
        for H in subs:
            perp = [x for x in q.elements() if all(q.bilinear(x, h) == 0 for h in H)]
            items += [(H, f) for f in _hom_images(q, perp, H, target)]

        def move(item, a):
            H, f = item
            return frozenset(a(x) for x in H), frozenset((a(x), y) for x, y in f)
    else:
        items = subs

        def move(H, a):
            return frozenset(a(x) for x in H)
    remaining, orbits = set(items), 0
    while remaining:
        orbits += 1
        frontier = [remaining.pop()]
        while frontier:
            it = frontier.pop()
            for a in acts:
                nxt = move(it, a)
                if nxt in remaining:
                    remaining.remove(nxt)
                    frontier.append(nxt)
    return orbits
