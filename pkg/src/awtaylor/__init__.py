"""awtaylor: Taylor expansion along Askey-Wilson node sequences.

A numerical library and CLI harness for

1. node sequences of quadratic symmetric polynomials (five canonical
   families: trigonometric, geometric, quadratic, arithmetic, continuous),
2. the divided-difference operator attached to such a polynomial, its
   iterates, and normalized k-th order divided differences by contour
   quadrature and by residue sums,
3. Taylor polynomials with finite contour remainders and, for node
   sequences escaping along a real half axis, the imaginary-axis integral
   remainder of the partial-sum limit,
4. machine-precision verification of q-series summation identities
   (q-Gauss, the two-term non-terminating q-Saalschuetz sum, its
   non-symmetrized one-term-plus-integral form, a non-symmetrized
   q-Vandermonde sum) and of binomial-type identities on every canonical
   family, including an exact rational mode.

The CLI entry point is `awtaylor` (see `awtaylor.cli`).
"""

from .qcore import (
    ConvergenceError,
    DomainError,
    EnclosureError,
    PochhammerDecomposition,
    Tolerances,
    pochhammer_decompose,
    pochhammer_lower_ratio,
    pochhammer_upper_bound,
    q_binomial,
    q_pochhammer,
    q_pochhammer_inf,
    rising_factorial,
    set_A_membership,
)
from .psequence import (
    CanonicalForm,
    PSequence,
    QuadraticSymmetricPolynomial,
    lambda_bracket,
    phi,
    psequence_step,
    psequence_value,
)
from .awop import (
    AnalyticFunction,
    Contour,
    Domain,
    aw_apply,
    aw_iterate,
    circle_contour,
    divided_difference,
    dk_coefficient,
    exp_fn,
    partial_k_contour,
    partial_k_residues,
    polynomial_fn,
    rational_fn,
)
from .taylor import (
    InfiniteRemainder,
    TaylorExpansion,
    TaylorLimit,
    h_product,
    remainder_bound,
    remainder_contour,
    remainder_infinite,
    taylor_coefficients,
    taylor_eval,
    taylor_limit,
)
from .qseries import (
    BasicHypergeometricSpec,
    VerificationReport,
    f_alpha_beta,
    geometric_partial_k,
    joukowski_inverse,
    phi_series,
    s_infinity_trig,
    sym_qpoch,
    trig_partial_k,
    verify_new_formula,
    verify_nonterminating_q_saalschutz,
    verify_q_gauss,
    verify_q_vandermonde_nonsym,
)
from .binom import (
    BinomialInstance,
    general_binomial_check,
    generalized_binomial,
    phi_partial_identity_check,
    table2_check,
)

__version__ = "0.1.0"

__all__ = [
    # errors and knobs
    "ConvergenceError", "DomainError", "EnclosureError", "Tolerances",
    # q-shifted factorials and estimates
    "PochhammerDecomposition", "pochhammer_decompose", "pochhammer_lower_ratio",
    "pochhammer_upper_bound", "q_binomial", "q_pochhammer", "q_pochhammer_inf",
    "rising_factorial", "set_A_membership",
    # node sequences
    "CanonicalForm", "PSequence", "QuadraticSymmetricPolynomial",
    "lambda_bracket", "phi", "psequence_step", "psequence_value",
    # the operator
    "AnalyticFunction", "Contour", "Domain", "aw_apply", "aw_iterate",
    "circle_contour", "divided_difference", "dk_coefficient", "exp_fn",
    "partial_k_contour", "partial_k_residues", "polynomial_fn", "rational_fn",
    # expansions and remainders
    "InfiniteRemainder", "TaylorExpansion", "TaylorLimit", "h_product",
    "remainder_bound", "remainder_contour", "remainder_infinite",
    "taylor_coefficients", "taylor_eval", "taylor_limit",
    # series and identity verification
    "BasicHypergeometricSpec", "VerificationReport", "f_alpha_beta",
    "geometric_partial_k", "joukowski_inverse", "phi_series",
    "s_infinity_trig", "sym_qpoch", "trig_partial_k", "verify_new_formula",
    "verify_nonterminating_q_saalschutz", "verify_q_gauss",
    "verify_q_vandermonde_nonsym",
    # binomial identities
    "BinomialInstance", "general_binomial_check", "generalized_binomial",
    "phi_partial_identity_check", "table2_check",
    "__version__",
]
