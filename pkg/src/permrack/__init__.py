"""Finite racks and quandles represented as sequences of permutations."""

from .perm import (
    CycleDecomposition,
    Permutation,
    compose,
    conjugate,
    cycle_decompose,
    element_order,
    inverse,
    pattern,
    power,
)
from .rack import (
    NotARackError,
    Rack,
    RackKind,
    TableReport,
    ValidationReport,
    alexander_quotient,
    check_table,
    cyclic,
    dihedral,
    dual,
    from_perms,
    from_table,
    is_quandle,
    is_quasigroup,
    is_symmetric,
    kind,
    linear_alexander,
    octahedron,
    opposite,
    trivial,
    validate_perms,
)
from .invariants import (
    Connectivity,
    ProfileSpec,
    absolute_detail,
    connectivity,
    delta_orbits,
    detail,
    is_indecomposable,
    is_stable_subrack,
    is_subrack,
    orbits,
    profile,
)
from .iso import IsoResult, are_isomorphic, canonical_form, relabel
from .enumeration import EnumerationBoundExceeded, EnumerationReport, count_with_profile, enumerate_racks
from .classify import (
    ClassificationResult,
    binom,
    classify_full_cycle,
    classify_prack_1_nm1,
    classify_prack_m_nm,
    classify_prack_ones_block,
    classify_prack_three_blocks,
    euler_phi,
    partitions_exact,
    quandle_search_1_nm1,
)
from .coloring import ColoringCount, Crossing, KnotDiagram, count_colorings, parse_pd

__version__ = "0.1.0"
