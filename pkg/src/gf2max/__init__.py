"""Generate, count and verify n x n matrices of maximal order 2^n - 1 over GF(2)."""

from .errors import CapExceededError, NotPrimitiveError, SingularMatrixError
from .gf2mat import (
    Gf2Mat,
    MatCode,
    char_poly,
    companion,
    decode,
    encode,
    find_cyclic_vector,
    is_cyclic,
    is_invertible,
    mat_add,
    mat_inverse,
    mat_mul,
    mat_order,
    mat_pow,
    mat_rank,
    min_poly,
    poly_eval_at_matrix,
)
from .gf2poly import (
    Gf2Poly,
    MersenneFactorization,
    count_primitive,
    enumerate_primitive,
    factor_mersenne,
    is_irreducible,
    is_primitive,
    poly_add,
    poly_gcd,
    poly_mulmod,
    poly_powmod,
    totient,
)
from .group import (
    Centralizer,
    ConjClassReport,
    CosetDecomposition,
    brute_force_census,
    centralizer_of_cyclic,
    class_size,
    conjugacy_class,
    coset_decomposition,
    enumerate_gl,
    gl_order,
    sample_conjugates,
    total_max_order_count,
    verify_centralizer,
)
from .streamgen import StateStream, full_period_check, next_state, orbit_length

__version__ = "0.1.0"
