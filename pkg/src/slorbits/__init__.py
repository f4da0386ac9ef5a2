"""Orbits of Z_n^m under SL(m, Z_n), with exhaustive verification."""
from .arith import Divisor, Modulus, divisors, factorize, gcd_with_modulus, jordan_divisor_sum, jordan_totient
from .errors import (
    BudgetExceeded,
    ConsistencyError,
    DomainError,
    NotInSLError,
    SLOrbitsError,
    StructureError,
)
from .linalg_mod import (
    MatrixModN,
    VectorModN,
    act,
    act_unchecked,
    adjugate,
    det_mod,
    identity,
    mat_mul,
    matrix,
    parse_matrix,
    parse_vector,
    scale_map,
    sl_inverse,
    vector,
)
from .orbits import (
    CensusReport,
    OrbitDescriptor,
    census,
    crt_join,
    crt_matrix_split,
    crt_split,
    orbit_label,
    orbit_members,
    orbit_product_check,
    same_orbit,
)
from .oracle import (
    VerificationReport,
    bfs_orbit,
    find_transform,
    verify_generators,
    verify_group_counts,
    verify_partition,
)
from .sl_group import (
    GroupSpec,
    complete_row_prime,
    enumerate_group,
    generators,
    group_order,
    orbit_size_by_lagrange,
    stabilizer_order,
)

__version__ = "0.1.0"
