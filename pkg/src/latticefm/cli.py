"""Command line front end: ``latticefm <command> ...``.

Lattice arguments are a JSON lattice file, an inline Gram matrix such as
``[[2,4],[4,0]]``, or a named sum such as ``"2U + <-14>"``.

Exit codes: 0 success or true, 1 false or failed check, 2 parse error,
3 validation error, 4 unmet precondition.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import intlinalg as la
from .discforms import (
    FiniteQuadraticForm,
    FqfAutomorphism,
    FqfSubgroup,
    NotIsotropic,
    discriminant_form,
    orthogonal_group,
)
from .genus import genus_difference
from .k3 import (
    FmCountInput,
    NoMarkedHyperbolicPlanes,
    NotPrimitive,
    candidate_from_lattice,
    count_vc_orbits,
    eichler_invariant,
    fm_count_general,
    fm_count_rank_one,
    oguiso_count,
    plus_minus,
)
from .lattice import (
    Embedding,
    GroupTooLarge,
    Lattice,
    LatticeError,
    ObstructedMod,
    UnknownName,
    Witness,
    divisor,
    is_primitive,
    orthogonal_complement,
    parse_lattice_expression,
    represents,
    signature,
    span_embedding,
)
from .lattice_files import LatticeFileError, lattice_from_dict, lattice_to_dict
from .overlattice import (
    NotClosed,
    classifying_subgroup,
    double_orbit_count,
    enumerate_gluings,
    glue,
)
from .suite import run_suite

EXIT_OK, EXIT_FALSE, EXIT_PARSE, EXIT_INVALID, EXIT_PRECONDITION = 0, 1, 2, 3, 4


class ParseError(Exception):
    pass


class Precondition(Exception):
    pass


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"cannot parse {what}: {exc}") from exc


def read_lattice(arg: str) -> Lattice:
    path = Path(arg)
    if path.is_file():
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"{arg}: {exc}") from exc
        try:
            return lattice_from_dict(data)[0]
        except LatticeFileError as exc:
            raise ParseError(str(exc)) from exc
    s = arg.strip()
    if s.startswith("[["):
        gram = _json_arg(s, "Gram matrix")
        try:
            return lattice_from_dict({"gram": gram, "name": None})[0]
        except LatticeFileError as exc:
            raise ParseError(str(exc)) from exc
    try:
        return parse_lattice_expression(s)
    except UnknownName as exc:
        raise ParseError(f"unknown lattice {arg!r}") from exc


def _int_vectors(text: str, what="vectors"):
    data = _json_arg(text, what)
    if data and isinstance(data[0], int):
        data = [data]
    if not all(isinstance(v, list) and all(isinstance(x, int) for x in v) for v in data):
        raise ParseError(f"{what} must be integer lists")
    return data


def _rational(x):
    try:
        return Fraction(x)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"not a rational number: {x!r}") from exc


def _fmt(x) -> str:
    return str(x)


def form_report(q: FiniteQuadraticForm) -> dict:
    return {
        "generator_orders": list(q.orders),
        "invariant_factors": list(q.invariant_factors),
        "order": q.order,
        "length": q.min_generators(),
        "q_values": [_fmt(v) for v in q.q_values],
        "bilinear": [[_fmt(v) for v in row] for row in q.bilinear_matrix],
    }


def _signed(x: Fraction) -> str:
    neg = x - 2
    return f"{x} (= {neg})" if x > 1 and neg != 0 else str(x)


def form_text(q: FiniteQuadraticForm) -> str:
    if not q.orders:
        return "trivial"
    group = " x ".join(f"Z/{d}" for d in q.orders)
    if q.rank == 1:
        return f"{group}; q(g) = {_signed(q.q_values[0])}"
    return f"{group}; q = [{', '.join(str(v) for v in q.q_values)}]"


# --- commands --------------------------------------------------------------

def cmd_disc_form(args):
    L = read_lattice(args.lattice)
    d = discriminant_form(L)
    rep = {"command": "disc-form", "lattice": lattice_to_dict(L), "form": form_report(d.form),
           "generator_lifts": [[_fmt(x) for x in w] for w in d.lifts]}
    return EXIT_OK, rep, form_text(d.form) + f"\n|D| = {d.form.order}, l(D) = {d.form.min_generators()}"


def cmd_same_genus(args):
    L1, L2 = read_lattice(args.lattice1), read_lattice(args.lattice2)
    reason = genus_difference(L1, L2)
    rep = {"command": "same-genus", "same_genus": reason is None, "reason": reason}
    text = "same genus" if reason is None else f"different genus: {reason}"
    return (EXIT_OK if reason is None else EXIT_FALSE), rep, text


def cmd_signature(args):
    L = read_lattice(args.lattice)
    s = signature(L)
    return EXIT_OK, {"command": "signature", "plus": s.plus, "minus": s.minus}, f"({s.plus},{s.minus})"


def _embedding(args) -> Embedding:
    L = read_lattice(args.lattice)
    vecs = _int_vectors(args.vectors)
    if any(len(v) != L.rank for v in vecs):
        raise ParseError("vector length does not match the lattice rank")
    if la.rank(vecs) != len(vecs):
        raise Precondition("vectors are linearly dependent")
    return span_embedding(L, vecs)


def cmd_complement(args):
    e = _embedding(args)
    c = orthogonal_complement(e)
    basis = c.columns
    rep = {"command": "complement", "basis": basis, "gram": [list(r) for r in c.domain.gram],
           "det": c.domain.det if c.domain.rank else 1, "primitive": is_primitive(c)}
    text = f"basis {basis}\nGram {rep['gram']}\ndet {rep['det']}"
    return EXIT_OK, rep, text


def cmd_primitive_check(args):
    e = _embedding(args)
    ok = is_primitive(e)
    return (EXIT_OK if ok else EXIT_FALSE), {"command": "primitive-check", "primitive": ok}, \
        "primitive" if ok else "not primitive"


def cmd_divisor(args):
    L = read_lattice(args.lattice)
    v = _int_vectors(args.vector, "vector")[0]
    if len(v) != L.rank:
        raise ParseError("vector length does not match the lattice rank")
    if not any(v):
        raise Precondition("divisor of the zero vector")
    n = divisor(L, v)
    return EXIT_OK, {"command": "divisor", "divisor": n}, str(n)


def cmd_represents(args):
    L = read_lattice(args.lattice)
    res = represents(L, args.n, args.bound)
    if isinstance(res, Witness):
        rep = {"result": "witness", "vector": list(res.vector), "primitive": res.primitive}
        text = f"represented by {list(res.vector)}" + (" (primitive)" if res.primitive else "")
        code = EXIT_OK
    elif isinstance(res, ObstructedMod):
        rep = {"result": "obstructed", "modulus": res.modulus}
        text = f"not represented: obstruction mod {res.modulus}"
        code = EXIT_FALSE
    else:
        rep = {"result": "not-found", "bound": res.bound, "complete": res.complete,
               "method": res.method, "moduli_checked": list(res.moduli_checked)}
        kind = "proved not represented" if res.complete else "not found (search incomplete)"
        text = f"{kind}; method {res.method}, bound {res.bound}"
        code = EXIT_FALSE
    rep["command"] = "represents"
    return code, rep, text


def _subgroup_from_args(args, disc):
    if args.classes is not None and args.lifts is not None:
        raise ParseError("give either --classes or --lifts")
    if args.lifts is not None:
        data = _json_arg(args.lifts, "--lifts")
        try:
            gens = [disc.reduce([_rational(x) for x in v]) for v in data]
        except ValueError as exc:
            raise Precondition(str(exc)) from exc
    else:
        data = _json_arg(args.classes or "[]", "--classes")
        if any(len(v) != disc.form.rank for v in data):
            raise ParseError(f"classes need {disc.form.rank} coordinates (orders {list(disc.form.orders)})")
        gens = [disc.form.reduce(v) for v in data]
    return FqfSubgroup(disc.form, gens)


def cmd_glue(args):
    M = read_lattice(args.lattice)
    disc = discriminant_form(M)
    H = _subgroup_from_args(args, disc)
    try:
        res = glue(M, H, disc)
    except NotIsotropic as exc:
        raise Precondition(str(exc)) from exc
    out = lattice_to_dict(res.lattice, args.name)
    rep = {"command": "glue", "index": res.index, "lattice": out,
           "embedding": [list(r) for r in res.embedding.matrix]}
    if args.output:
        from .lattice_files import save_lattice
        save_lattice(res.lattice, args.output, args.name)
    return EXIT_OK, rep, f"index {res.index}\nGram {out['gram']}"


def cmd_classify(args):
    L = read_lattice(args.ambient)
    vecs = _int_vectors(args.vectors)
    if len(vecs) != L.rank or la.rank(vecs) != L.rank:
        raise Precondition("classify needs a basis of a finite-index sublattice")
    e = span_embedding(L, vecs)
    disc = discriminant_form(e.domain)
    H = classifying_subgroup(e, disc)
    rep = {"command": "classify", "sublattice_gram": [list(r) for r in e.domain.gram],
           "form": form_report(disc.form), "order": H.order,
           "generators": [list(g) for g in H.generators],
           "elements": [list(x) for x in sorted(H.elements)]}
    return EXIT_OK, rep, f"|H| = {H.order}, generators {rep['generators']} in {form_text(disc.form)}"


def cmd_gluings(args):
    T, K = read_lattice(args.T), read_lattice(args.K)
    target = discriminant_form(read_lattice(args.target)).form if args.target else FiniteQuadraticForm.trivial()
    data = enumerate_gluings(T, K, target)
    items = []
    for g in data:
        res = g.glue()
        items.append({"order": g.subgroup.order,
                      "gamma": [[list(a), list(b)] for a, b in sorted(g.gamma.items())],
                      "gram": [list(r) for r in res.lattice.gram]})
    rep = {"command": "gluings", "count": len(data), "gluings": items}
    lines = [f"{len(data)} gluing(s)"] + [f"  |H| = {i['order']}, gamma {i['gamma']}" for i in items]
    return EXIT_OK, rep, "\n".join(lines)


def _subgroup_choice(name, q, group):
    if name == "id":
        return [FqfAutomorphism.identity(q)]
    if name == "pm":
        return plus_minus(q)
    if name == "full":
        return group
    raise ParseError(f"unknown subgroup {name!r} (use id, pm or full)")


def cmd_orbit_count(args):
    L = read_lattice(args.lattice)
    q = discriminant_form(L).form
    group = orthogonal_group(q)
    left = _subgroup_choice(args.left, q, group)
    right = _subgroup_choice(args.right, q, group)
    n = double_orbit_count(group, left, right)
    rep = {"command": "orbit-count", "group_order": len(group), "orbits": n}
    return EXIT_OK, rep, f"|O(D)| = {len(group)}, orbits {n}"


def _images(q, data):
    out = []
    for imgs in data:
        if len(imgs) != q.rank:
            raise ParseError("each automorphism needs one image per generator")
        out.append(FqfAutomorphism(q, tuple(q.reduce(x) for x in imgs)))
    return out


def _fm_input(cfg) -> tuple[FmCountInput, str]:
    mode = cfg.get("mode", "hloy")
    cands = []
    for c in cfg.get("candidates", []):
        L = read_lattice(c["lattice"]) if isinstance(c["lattice"], str) else \
            lattice_from_dict({"gram": c["lattice"], "name": c.get("label")})[0]
        q = discriminant_form(L).form
        imgs = _images(q, c["o_s_images"]) if "o_s_images" in c else None
        try:
            cands.append(candidate_from_lattice(L, imgs, c.get("label")))
        except ValueError as exc:
            raise Precondition(str(exc)) from exc
    qT = target = hodge = None
    if "transcendental" in cfg:
        qT = discriminant_form(read_lattice(cfg["transcendental"])).form
    if "target" in cfg:
        target = discriminant_form(read_lattice(cfg["target"])).form
    if "hodge_images" in cfg:
        base = qT if mode != "hloy" else (cands[0].form if cands else None)
        hodge = tuple(_images(base, cfg["hodge_images"]))
    return FmCountInput(tuple(cands), hodge, qT, target), mode


def cmd_fm_count(args):
    if args.rank_one is not None:
        d = args.rank_one
        if d < 1:
            raise Precondition("d must be positive")
        n = fm_count_rank_one(d)
        rep = {"command": "fm-count", "rank_one": d, "count": n, "formula": oguiso_count(d)}
        return EXIT_OK, rep, str(n)
    if not args.input:
        raise ParseError("give --rank-one d or --input FILE")
    try:
        cfg = json.loads(Path(args.input).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(str(exc)) from exc
    try:
        inp, mode = _fm_input(cfg)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed count file: {exc}") from exc
    res = fm_count_general(inp, mode)
    rep = {"command": "fm-count", "mode": mode, "count": res.total,
           "breakdown": [{"label": k, "count": n} for k, n in res.breakdown]}
    lines = [str(res.total)] + [f"  {k}: {n}" for k, n in res.breakdown]
    return EXIT_OK, rep, "\n".join(lines)


def cmd_eichler(args):
    if args.vc is not None:
        res = count_vc_orbits(args.vc)
        rep = {"command": "eichler", "p": args.vc, "stable_orbit_count": res.stable_orbit_count,
               "lower_bound_full_orbits": res.lower_bound_full_orbits}
        return EXIT_OK, rep, f"stable orbits {res.stable_orbit_count}, full orbits >= {res.lower_bound_full_orbits}"
    if not args.lattice or not args.vector:
        raise ParseError("give --vc p or a lattice with --vector")
    L = read_lattice(args.lattice)
    v = _int_vectors(args.vector, "vector")[0]
    try:
        inv = eichler_invariant(L, v)
    except (NotPrimitive, NoMarkedHyperbolicPlanes) as exc:
        raise Precondition(str(exc)) from exc
    rep = {"command": "eichler", "length": inv.length, "divisor": inv.divisor, "class": list(inv.cls)}
    return EXIT_OK, rep, f"v^2 = {inv.length}, div = {inv.divisor}, class {list(inv.cls)}"


def cmd_paper_suite(args):
    results = run_suite(args.filter, corrupt=args.corrupt)
    failed = [r for r in results if not r.passed]
    rep = {"command": "paper-suite", "total": len(results), "failed": len(failed),
           "checks": [{"tag": r.tag, "name": r.name, "passed": r.passed, "detail": r.detail}
                      for r in results]}
    lines = [f"{'PASS' if r.passed else 'FAIL'}  [{r.tag}] {r.name}" + (f"  ({r.detail})" if r.detail else "")
             for r in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} passed")
    return (EXIT_FALSE if failed else EXIT_OK), rep, "\n".join(lines)


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latticefm", description="Even lattices, discriminant forms and FM counts.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--limit", type=int, help="group-size cap (overrides LATTICE_FM_LIMIT)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=fn)
        return sp

    sp = add("disc-form", cmd_disc_form, "discriminant group and form")
    sp.add_argument("lattice")
    sp = add("same-genus", cmd_same_genus, "compare genus symbols")
    sp.add_argument("lattice1")
    sp.add_argument("lattice2")
    sp = add("signature", cmd_signature, "signature")
    sp.add_argument("lattice")
    for name, fn, help in (("complement", cmd_complement, "orthogonal complement of a span"),
                           ("primitive-check", cmd_primitive_check, "is a span primitive")):
        sp = add(name, fn, help)
        sp.add_argument("lattice")
        sp.add_argument("--vectors", required=True, help="JSON list of basis vectors")
    sp = add("divisor", cmd_divisor, "divisor of a vector")
    sp.add_argument("lattice")
    sp.add_argument("--vector", required=True)
    sp = add("represents", cmd_represents, "does the lattice represent n")
    sp.add_argument("lattice")
    sp.add_argument("n", type=int)
    sp.add_argument("--bound", type=int, default=20)
    sp = add("glue", cmd_glue, "overlattice from an isotropic subgroup")
    sp.add_argument("lattice")
    sp.add_argument("--classes", help="JSON list of generators in discriminant coordinates")
    sp.add_argument("--lifts", help="JSON list of generators as rational vectors of L (x) Q")
    sp.add_argument("--output", help="write the glued lattice file here")
    sp.add_argument("--name", help="name for the glued lattice")
    sp = add("classify", cmd_classify, "classifying subgroup of a finite-index sublattice")
    sp.add_argument("ambient")
    sp.add_argument("--vectors", required=True, help="JSON basis of the sublattice")
    sp = add("gluings", cmd_gluings, "enumerate kq(T, K, q)")
    sp.add_argument("T")
    sp.add_argument("K")
    sp.add_argument("--target", help="lattice whose discriminant form is the target (default trivial)")
    sp = add("orbit-count", cmd_orbit_count, "double orbits on O(D_L)")
    sp.add_argument("lattice")
    sp.add_argument("--left", default="pm", help="id, pm or full")
    sp.add_argument("--right", default="pm", help="id, pm or full")
    sp = add("fm-count", cmd_fm_count, "Fourier-Mukai partner counts")
    sp.add_argument("--rank-one", type=int, metavar="D")
    sp.add_argument("--input", help="JSON count file")
    sp = add("eichler", cmd_eichler, "Eichler invariant or v_c family count")
    sp.add_argument("lattice", nargs="?")
    sp.add_argument("--vector")
    sp.add_argument("--vc", type=int, metavar="P")
    sp = add("paper-suite", cmd_paper_suite, "re-run all reference checks")
    sp.add_argument("--filter", help="only checks whose tag contains this text")
    sp.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    if args.limit is not None:
        os.environ["LATTICE_FM_LIMIT"] = str(args.limit)
    try:
        code, report, text = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (Precondition, NotIsotropic, NotClosed, GroupTooLarge) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except LatticeError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
