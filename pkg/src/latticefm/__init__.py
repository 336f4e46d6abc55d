"""Exact arithmetic for even lattices, discriminant forms, overlattice gluing,
genus tests and Fourier-Mukai partner counts of K3 surfaces."""

from .discforms import (
    DiscriminantForm,
    FiniteQuadraticForm,
    FqfAutomorphism,
    FqfSubgroup,
    all_subgroups,
    discriminant_form,
    fqf_isomorphic,
    isotropic_subgroups,
    min_generators,
    negate,
    orthogonal_group,
    orthogonal_subgroup,
    quotient_form,
)
from .genus import GenusSymbol, Uniqueness, genus_symbol, is_isomorphic_definite, nikulin_unique_in_genus, same_genus
from .intlinalg import det_exact, hermite_normal_form, integer_kernel_saturated, smith_normal_form, solve_rational
from .k3 import (
    count_vc_orbits,
    eichler_invariant,
    fm_count_general,
    fm_count_rank_one,
    l2d,
    oguiso_count,
    prime_count,
    stable_covering_degree,
    vc_vector,
    verify_polarisation_examples,
)
from .lattice import (
    Embedding,
    Lattice,
    Signature,
    direct_sum,
    divisor,
    hyperbolic_basis,
    is_primitive,
    isometry_group_definite,
    make_lattice,
    orthogonal_complement,
    parse_lattice_expression,
    primitive_hull,
    represents,
    short_vectors,
    signature,
    span_embedding,
    standard_lattice,
    twist,
)
from .overlattice import (
    classifying_subgroup,
    double_orbit_count,
    enumerate_gluings,
    glue,
    split_projections,
    transfer_gluings,
)

__version__ = "0.1.0"
