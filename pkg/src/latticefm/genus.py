"""Genus symbols: signature plus discriminant form.

Two even lattices are in the same genus iff their signatures agree and their
discriminant forms are isomorphic.  Only this invariant pair is used here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .discforms import FiniteQuadraticForm, discriminant_form, fqf_isomorphic
from .lattice import Lattice, LatticeError, Signature, find_isometry_definite, is_definite, signature


class Uniqueness(enum.Enum):
    YES = "yes"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class GenusSymbol:
    signature: Signature
    form: FiniteQuadraticForm

    @property
    def disc_form(self):
        return self.form

    def __eq__(self, other):
        if not isinstance(other, GenusSymbol):
            return NotImplemented
        return self.signature == other.signature and fqf_isomorphic(self.form, other.form) is not None

    def __hash__(self):
        return hash((self.signature, self.form.invariant_factors))


def genus_symbol(L: Lattice) -> GenusSymbol:
    return GenusSymbol(signature(L), discriminant_form(L).form)


def genus_difference(L1: Lattice, L2: Lattice) -> str | None:
    """``None`` when the genera agree, else which invariant differs."""
    s1, s2 = signature(L1), signature(L2)
    if s1 != s2:
        return f"signatures differ: {s1} vs {s2}"
    q1, q2 = discriminant_form(L1).form, discriminant_form(L2).form
    if q1.invariant_factors != q2.invariant_factors:
        return (f"discriminant groups differ: {list(q1.invariant_factors)} "
                f"vs {list(q2.invariant_factors)}")
    if fqf_isomorphic(q1, q2) is None:
        return "discriminant forms differ"
    return None


def same_genus(L1: Lattice, L2: Lattice) -> bool:
    return genus_difference(L1, L2) is None


def nikulin_unique_in_genus(L: Lattice) -> Uniqueness:
    """YES when L is indefinite with rank >= 2 + l(D_L); never claims non-uniqueness."""
    sig = signature(L)
    if sig.plus and sig.minus and L.rank >= 2 + discriminant_form(L).form.min_generators():
        return Uniqueness.YES
    return Uniqueness.UNKNOWN


def is_isomorphic_definite(L1: Lattice, L2: Lattice):
    """An integer matrix S with ``S^T G1 S = G2``, or ``None``."""
    if not (is_definite(L1) and is_definite(L2)):
        raise LatticeError("is_isomorphic_definite needs definite lattices")
    return find_isometry_definite(L1, L2)
