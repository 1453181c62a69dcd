"""twosig: two-parameter sums signatures, warping invariants, and the Hopf
algebra of matrix compositions, with exact arithmetic throughout."""

from .scalars import BOOL, FLOAT, INT, RATIONAL, ScalarKind, kind_by_name
from .monoid import element, epsilon, evaluate, is_epsilon, letter, star, weight
from .composition import (
    ChainedComposition,
    InvalidComposition,
    MatrixComposition,
    chain,
    connected_factorization,
    diag,
    ec,
    enumerate_compositions,
    compositions_up_to_weight,
    from_int_matrix,
    is_connected,
    parse_chained,
)
from .algebra import (
    LinComb,
    antipode,
    concat_product,
    coproduct,
    counit,
    one_param_qshuffle,
    qshuffle,
    qshuffle_direct,
)
from .grid import (
    EvConstGrid,
    EvZeroGrid,
    box_concat,
    cumsum,
    delta,
    diag_concat,
    evc_to_evz,
    evz_to_evc,
    nf_const,
    nf_sim,
    nf_warp,
    nf_zero,
    shift_zero,
    varsigma,
    warp,
    zero_insert,
)
from .signature import (
    GuardExceeded,
    SignatureWindow,
    TruncatedSignature,
    equivalent,
    psi,
    ss_2x2,
    ss_bool_allones_2x2,
    ss_coeff,
    ss_coeff_naive,
    ss_matrix_chained,
    ss_truncated,
    ss_via_chen,
    witness_composition,
)
from .qsym import (
    TruncatedPolynomial,
    formal_zero_insert,
    monomial_eval,
    monomial_expand,
    qsym_coproduct_check,
    qsym_product_check,
)

__version__ = "0.1.0"
