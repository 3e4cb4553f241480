"""Schemmel's totient, the Deaconescu condition ``M S2(n) = phi(n) - 1`` and
search/verification tools around it."""
from .arith import (
    ExceptionalUnitSet,
    Factorization,
    count_exceptional,
    euler_phi,
    exceptional_units,
    factorize,
    is_prime,
    is_squarefree,
    omega,
    schemmel_s2,
    sieve_primes,
)
from .bounds import (
    deaconescu_upper_bound,
    mod3_obstruction_check,
    nielsen_bound,
    nielsen_precondition,
    omega2_scan,
    q_product,
    ratio_phi_over_s2,
    skip3_product,
    theorem13_residue,
    verify_nielsen_instance,
)
from .errors import CheckpointMismatchError, DeaconescuError, ResourceLimitError
from .props import (
    ClassificationRecord,
    FilterVerdict,
    check_d1_is_primes,
    classify,
    deaconescu_multiplier,
    divides,
    is_deaconescu_number,
    is_lehmer_number,
    structural_filter,
)
from .search import SearchConfig, SearchReport, classify_range, dfs_search, resume, sieve_scan

__version__ = "0.1.0"
