"""Left Leibniz rings over the integers: exact invariants and small censuses."""

from .census import (
    IsoClass,
    IsoClassCensus,
    are_isomorphic,
    automorphisms,
    canonical_form,
    classify,
    congruence_equivalence_check,
    enumerate_left_leibniz,
    transport,
)
from .errors import LeibnizError
from .families import FamilySpec, make_family, verify_family
from .fg_abelian import FgAbelianGroup, Subgroup, make_group, subgroup_from_generators
from .ring import (
    InvariantReport,
    LeibnizRing,
    ValidationReport,
    anticenter,
    center,
    derived_ideal,
    invariant_report,
    is_left_leibniz,
    is_lie,
    is_right_leibniz,
    is_symmetric,
    leibniz_kernel,
    left_center,
    lower_central_series,
    make_ring,
    opposite,
    quotient_ring,
    right_center,
    validate,
)
from .ringfile import dump_ring, load_ring

__version__ = "0.1.0"
