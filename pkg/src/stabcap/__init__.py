"""Exact combinatorics behind stabilized ellipsoid-into-ball embedding obstructions.

Ellipsoid parameters are :class:`~stabcap.exactnum.PerturbedRat` values such
as ``PerturbedRat.parse("76/11+")``, meaning ``76/11 + eps`` for all small
``eps > 0``.
"""

from .building import (
    BlowupClass,
    BuildingCertificate,
    construct_theorem_curve,
    expected_count,
    intersection_pairing,
    verify_certificate,
)
from .capacity import c0, c0_staircase, ck_known
from .ech import (
    cylinder_ech_verdict,
    delta,
    ech_partition_neg,
    ech_partition_pos,
    gluing_coeff_two_parts,
    half_grading,
    neck_condition,
    trivial_glue_admissible,
)
from .errors import (
    DomainError,
    MalformedCertificate,
    RationalParam,
    StabcapError,
    UnsupportedPartition,
    UnsupportedRegion,
)
from .exactnum import PerturbedRat, ceil_p, cmp_tau4, div_int, fib, floor_p, mul_int
from .index import CurveSpec, OrbitSpec, action_obstruction, half_index_curve, half_index_orbit_cyl, index_condition
from .stabilize import find_decomposition, stab_check

__version__ = "0.1.0"
