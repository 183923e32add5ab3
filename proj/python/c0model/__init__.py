"""Model operators, similarity synthesis and unitary equivalence for
finite Blaschke products. Thin wrapper over the compiled ``_c0model``."""

from ._c0model import (
    BlaschkeProduct,
    C0Error,
    apply,
    apply_rational,
    beta_floor,
    bezout_solve,
    cluster_split,
    commutant_basis,
    enumerate_divisors,
    find_cyclic_vector,
    hankel_distance,
    hypothesis_value,
    irreducibility_check,
    is_cyclic,
    jordan_block,
    jordan_model,
    jordan_operator,
    kernel_of_divisor,
    maximality_report,
    minimal_function,
    model_kernel,
    sarason_norm,
    separation_lower_bound,
    similarity_synthesize,
    unitary_from_maximality,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
