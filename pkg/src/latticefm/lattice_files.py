"""JSON lattice files.

A lattice file is a JSON object::

    {"name": "A", "gram": [[2, 4], [4, 0]], "basis_labels": ["e1", "e2"]}

``basis_labels`` and ``hyperbolic_planes`` (pairs of basis indices) are
optional.  :func:`dump_lattice` writes keys in a fixed order so that
``dump(load(text))`` reproduces ``text`` up to whitespace.
"""

from __future__ import annotations

import json
from pathlib import Path

from .lattice import Lattice, make_lattice


class LatticeFileError(ValueError):
    """Malformed file contents (as opposed to an invalid Gram matrix)."""


def lattice_from_dict(data) -> tuple[Lattice, dict]:
    if not isinstance(data, dict) or "gram" not in data:
        raise LatticeFileError("lattice file needs a 'gram' field")
    gram = data["gram"]
    if (not isinstance(gram, list) or any(not isinstance(r, list) for r in gram)
            or any(not isinstance(x, int) or isinstance(x, bool) for r in gram for x in r)):
        raise LatticeFileError("'gram' must be a nested list of integers")
    n = len(gram)
    if any(len(r) != n for r in gram):
        raise LatticeFileError("'gram' must be square")
    labels = data.get("basis_labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise LatticeFileError("'basis_labels' must list one label per basis vector")
    planes = [tuple(p) for p in data.get("hyperbolic_planes", [])]
    L = make_lattice(gram, data.get("name"), planes)
    meta = {"name": data.get("name"), "basis_labels": labels}
    return L, meta


def load_lattice(path) -> tuple[Lattice, dict]:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise LatticeFileError(f"{path}: {exc}") from exc
    return lattice_from_dict(data)


def lattice_to_dict(L: Lattice, name=None, basis_labels=None) -> dict:
    out = {"name": name or L.label or "L", "gram": [list(r) for r in L.gram]}
    if basis_labels is not None:
        out["basis_labels"] = list(basis_labels)
    if L.hyperbolic_planes:
        out["hyperbolic_planes"] = [list(p) for p in L.hyperbolic_planes]
    return out


def dump_lattice(L: Lattice, name=None, basis_labels=None) -> str:
    d = lattice_to_dict(L, name, basis_labels)
    lines = ["{", f'  "name": {json.dumps(d["name"])},', '  "gram": [']
    rows = [json.dumps(r) for r in d["gram"]]
    lines += [f"    {r}," for r in rows[:-1]] + ([f"    {rows[-1]}"] if rows else [])
    tail = ["  ]"]
    if "basis_labels" in d:
        tail[-1] += ","
        tail.append(f'  "basis_labels": {json.dumps(d["basis_labels"])}')
    if "hyperbolic_planes" in d:
        tail[-1] += ","
        tail.append(f'  "hyperbolic_planes": {json.dumps(d["hyperbolic_planes"])}')
    return "\n".join(lines + tail + ["}"]) + "\n"


def save_lattice(L: Lattice, path, name=None, basis_labels=None) -> None:
    Path(path).write_text(dump_lattice(L, name, basis_labels))
