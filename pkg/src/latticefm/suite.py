"""Reference checks for the worked examples, grouped by topic tag.

Each check recomputes a published number from scratch.  ``corrupt=True``
swaps in altered input data so that checks must fail; it exists to test the
harness itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as F

from . import intlinalg as la
from .discforms import (
    FiniteQuadraticForm,
    discriminant_form,
    fqf_isomorphic,
    negate,
    orthogonal_group,
)
from .genus import Uniqueness, genus_symbol, is_isomorphic_definite, nikulin_unique_in_genus, same_genus
from .k3 import (
    count_vc_orbits,
    fm_count_rank_one,
    l2d,
    oguiso_count,
    prime_count,
    stable_covering_degree,
    verify_polarisation_examples,
)
from .lattice import (
    NotFoundUpToBound,
    Witness,
    isometry_group_definite,
    is_primitive,
    make_lattice,
    orthogonal_complement,
    parse_lattice_expression,
    represents,
    short_vectors,
    signature,
    span_embedding,
    standard_lattice,
)
from .overlattice import classifying_subgroup, enumerate_gluings, split_projections, transfer_gluings

REFERENCE = {
    "A": [[2, 4], [4, 0]],
    "B": [[0, 4], [4, 0]],
    "C": [[-2, 4], [4, 0]],
    "D": [[2, 1], [1, 12]],
    "E": [[4, 1], [1, 6]],
    "diag22": [[2, 0], [0, 2]],
    "U+<2>": [[0, 1, 0], [1, 0, 0], [0, 0, 2]],
    "vc_primes": {5: (10, 5), 13: (26, 13), 3: (0, 0)},
}

CORRUPTED = dict(REFERENCE, A=[[2, 4], [4, 2]], D=[[2, 1], [1, 10]],
                 vc_primes={5: (11, 5), 13: (26, 13), 3: (0, 0)})


@dataclass(frozen=True)
class CheckResult:
    tag: str
    name: str
    passed: bool
    detail: str = ""


def _lift_values(gram, lifts):
    d = discriminant_form(make_lattice(gram))
    return [d.form.value(d.reduce(w)) for w in lifts]


def _order2_values(gram):
    q = discriminant_form(make_lattice(gram)).form
    return sorted(str(v) for x, v, o in q.element_table() if o <= 2)


def root_index(L) -> int:
    """Index of the sublattice spanned by the roots (norm -2 or 2) of a definite lattice."""
    n = 2 if signature(L).plus else -2
    rows = la.row_span_basis([list(v) for v in short_vectors(L, n)])
    if len(rows) < L.rank:
        return 0
    return abs(la.det_exact(rows))


def _polarisation_checks():
    try:
        claims = verify_polarisation_examples()
    except Exception as exc:  # reported as a single failed check
        yield "polarisation", "polarisation examples", lambda: (_ for _ in ()).throw(exc)
        return
    for c in claims:
        yield "polarisation", c.name, lambda c=c: c.passed


def _checks(data):
    A, B, C = (make_lattice(data[k]) for k in "ABC")
    D, E = make_lattice(data["D"]), make_lattice(data["E"])
    qA, qB, qC = (discriminant_form(X).form for X in (A, B, C))

    yield "binary-forms", "D_A = Z/2 x Z/8", lambda: qA.invariant_factors == (2, 8)
    yield "binary-forms", "D_B = Z/4 x Z/4", lambda: qB.invariant_factors == (4, 4)
    yield "binary-forms", "A, B, C have discriminant 16", lambda: [abs(X.det) for X in (A, B, C)] == [16] * 3
    yield ("binary-forms", "q_A(t1) = 1/2, q_A(t2) = 3/8",
           lambda: _lift_values(data["A"], [[F(1, 2), 0], [F(1, 4), F(1, 8)]]) == [F(1, 2), F(3, 8)])
    yield ("binary-forms", "q_C(s1) = -1/2, q_C(s2) = -3/8",
           lambda: _lift_values(data["C"], [[F(1, 2), 0], [F(-1, 4), F(1, 8)]]) == [F(3, 2), F(13, 8)])
    yield ("binary-forms", "q_A on elements of order <= 2 is 0, 1/2, 0, 1/2",
           lambda: _order2_values(data["A"]) == ["0", "0", "1/2", "1/2"])
    yield ("binary-forms", "q_C on elements of order <= 2 takes only 0 and -1/2",
           lambda: set(_order2_values(data["C"])) == {"0", "3/2"})
    yield "binary-forms", "(D_A, q_A) and (D_C, q_C) are not isomorphic", lambda: fqf_isomorphic(qA, qC) is None
    yield "binary-forms", "A and B are not in the same genus", lambda: not same_genus(A, B)
    yield "binary-forms", "A and C are not in the same genus", lambda: not same_genus(A, C)

    yield "genus-vs-class", "D and E are in the same genus", lambda: same_genus(D, E)
    yield "genus-vs-class", "D and E are not isometric", lambda: is_isomorphic_definite(D, E) is None
    yield ("genus-vs-class", "D represents 2 via (1,0)",
           lambda: represents(D, 2) == Witness((1, 0), True))
    yield ("genus-vs-class", "E does not represent 2",
           lambda: isinstance(represents(E, 2), NotFoundUpToBound) and represents(E, 2).complete)

    yield ("lattices", "E8 is even unimodular positive definite",
           lambda: standard_lattice("E8").det == 1 and tuple(signature(standard_lattice("E8"))) == (8, 0))
    yield "lattices", "K3 lattice has signature (3,19)", lambda: tuple(signature(standard_lattice("K3"))) == (3, 19)
    yield ("lattices", "L_2d has signature (2,19) and cyclic D of order 2d (d = 7)",
           lambda: tuple(signature(l2d(7))) == (2, 19)
           and discriminant_form(l2d(7)).form.invariant_factors == (14,))

    def h_complement(d):
        K3 = standard_lattice("K3")
        h = [0] * 22
        h[2], h[3] = 1, d
        e = span_embedding(K3, [h])
        comp = orthogonal_complement(e).domain
        return is_primitive(e) and same_genus(comp, l2d(d)) and nikulin_unique_in_genus(comp) is Uniqueness.YES
    yield "lattices", "complement of h = e3 + d f3 in K3 is L_2d (d = 1..3)", lambda: all(h_complement(d) for d in (1, 2, 3))

    def u_plus_2():
        M = make_lattice(data["U+<2>"])
        i1 = span_embedding(M, [[1, 1, 0]])
        i2 = span_embedding(M, [[0, 0, 1]])
        c1, c2 = orthogonal_complement(i1).domain, orthogonal_complement(i2).domain
        return abs(c1.det) == 4 and abs(c2.det) == 1 and is_primitive(i2)
    yield "overlattice", "in U + <2>: disc of iota1(T)-perp is 4, of iota2(T)-perp is 1", u_plus_2

    def diag22():
        L = make_lattice(data["diag22"])
        jT = span_embedding(L, [[2, 0]])
        jK = orthogonal_complement(jT)
        T, K = jT.domain, jK.domain
        M = make_lattice([[T.gram[0][0], 0], [0, K.gram[0][0]]])
        from .lattice import Embedding
        i = Embedding(M, L, tuple(tuple(r) for r in la.transpose(jT.columns + jK.columns)))
        disc = discriminant_form(T) + discriminant_form(K)
        H = classifying_subgroup(i, disc)
        info = split_projections(H, 1)
        return (H.order == 2 and info.p_t_injective and not info.p_k_injective
                and is_primitive(jK) and not is_primitive(jT))
    yield "overlattice", "T = <8> in diag(2,2): H -> D_T injective, H -> D_K not", diag22

    yield ("overlattice", "kq(<4>, <-4>, 0) has |O(D_<4>)| = 2 elements",
           lambda: len(enumerate_gluings(make_lattice([[4]]), make_lattice([[-4]]),
                                         FiniteQuadraticForm.trivial()))
           == len(orthogonal_group(discriminant_form(make_lattice([[4]])).form)) == 2)

    yield ("l2d-discriminant", "q_{L_2d}(generator) = -1/2d for d = 1..12",
           lambda: all(discriminant_form(l2d(d)).form.q_values == (F(-1, 2 * d) % 2,) for d in range(1, 13)))
    yield ("l2d-discriminant", "q_<2d> is isomorphic to -q_{L_2d} (d = 1..12)",
           lambda: all(fqf_isomorphic(discriminant_form(make_lattice([[2 * d]])).form,
                                      negate(discriminant_form(l2d(d)).form)) for d in range(1, 13)))
    yield ("l2d-discriminant", "|O(D_{L_2d})| = 2^p(d) for d = 2..12",
           lambda: all(len(orthogonal_group(discriminant_form(l2d(d)).form)) == 2 ** prime_count(d)
                       for d in range(2, 13)))
    yield ("l2d-discriminant", "covering degree is 2^(p(d)-1) for d = 1..12",
           lambda: all(stable_covering_degree(d) == 2 ** (prime_count(d) - 1) for d in range(1, 13)))

    yield "oguiso", "p(1) = 1", lambda: prime_count(1) == 1
    yield ("oguiso", "rank-one FM count equals 2^(p(d)-1) for d = 1..12",
           lambda: all(fm_count_rank_one(d) == oguiso_count(d) for d in range(1, 13)))

    for p, expected in sorted(data["vc_primes"].items()):
        yield ("eichler-family", f"v_c orbit count for p = {p} is {expected}",
               lambda p=p, expected=expected: tuple(count_vc_orbits(p)) == expected)
    yield ("eichler-family", "isometries of diag(2a,2b), a > b, are +-u, +-v",
           lambda: len(isometry_group_definite(make_lattice([[4, 0], [0, 2]]))) == 4)

    def unimodular(d, E16, D16):
        T = parse_lattice_expression(f"2U + <{-2 * d}>")
        N1 = parse_lattice_expression(f"2E8(-1) + 2U + <{-2 * d}>")
        N2 = parse_lattice_expression(f"D16plus(-1) + 2U + <{-2 * d}>")
        g = genus_symbol(l2d(d))
        same = genus_symbol(N1) == g and genus_symbol(N2) == g
        return same and len(transfer_gluings(T, E16, D16, l2d(d))) == 1

    def complements():
        E16, D16 = parse_lattice_expression("2E8(-1)"), standard_lattice("D16plus(-1)")
        distinct = root_index(E16) == 1 and root_index(D16) == 2
        return distinct and all(unimodular(d, E16, D16) for d in (1, 2, 3))
    yield ("unimodular-complements", "2E8(-1) + T and D16+(-1) + T lie in the genus of L_2d (d = 1..3); the two complements differ",
           complements)


TAGS = ("binary-forms", "genus-vs-class", "lattices", "overlattice", "l2d-discriminant",
        "oguiso", "eichler-family", "unimodular-complements", "polarisation")


def run_suite(filter: str | None = None, corrupt: bool = False) -> list[CheckResult]:
    """Run the checks whose tag contains ``filter`` (all when ``None``)."""
    data = CORRUPTED if corrupt else REFERENCE
    checks = _checks(data)
    if filter is None or filter in "polarisation":
        checks = itertools.chain(checks, _polarisation_checks())
    out = []
    for tag, name, fn in checks:
        if filter and filter not in tag:
            continue
        try:
            ok = bool(fn())
            detail = ""
        except Exception as exc:  # a crashing check is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(tag, name, ok, detail))
    return out
