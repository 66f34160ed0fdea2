"""Basic hypergeometric series and machine-precision identity verification.

The verifiers compare two independent evaluations of each summation formula
and wrap the outcome in a VerificationReport:

  q-Gauss           2phi1[xi/x, a/b; a xi; q, b x] = (a x, b xi;q)_inf /
                    (b x, a xi;q)_inf
  two-term sum      the non-terminating q-Saalschuetz identity, a pure
                    series/product computation
  one-term + integral  its non-symmetrized form: a single 3phi2 plus an
                    imaginary-axis integral (the limit remainder of the
                    expansion of a symmetric q-shifted-factorial quotient
                    along trigonometric nodes)
  q-Vandermonde     the analogous non-symmetrized identity for the plain
                    quotient (a x;q)_inf / (b x;q)_inf on geometric nodes
                    escaping along a real half axis

Series are summed through their term-ratio recurrence (one multiply per
term, no re-built factorials); integrals go through the axis machinery of
the taylor module.  Points on the axis are mapped to the multiplicative
variable by the inverse of x = (v + 1/v)/2 with the |v| >= 1 branch; the
factor quotients only see {v, 1/v} symmetric combinations, so the branch
choice never leaks into values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .awop import AnalyticFunction, Domain
from .psequence import CanonicalForm, PSequence
from .qcore import (
    ConvergenceError,
    DEFAULT_TOL,
    DomainError,
    Tolerances,
    q_pochhammer,
    q_pochhammer_inf,
)
from .taylor import InfiniteRemainder, remainder_infinite

SERIES_PASS_TOL = 1e-9
INTEGRAL_PASS_TOL = 1e-5


@dataclass(frozen=True)
class BasicHypergeometricSpec:
    """Numerator/denominator parameters, base and argument of a series."""

    upper: tuple[complex, ...]
    lower: tuple[complex, ...]
    q: complex
    z: complex


@dataclass
class VerificationReport:
    """Two-sided evaluation of one identity at one parameter point."""

    formula_id: str
    parameters: dict
    lhs: complex
    rhs: complex
    abs_error: float
    rel_error: float
    passed: bool
    diagnostics: dict = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        formula_id: str,
        parameters: dict,
        lhs: complex,
        rhs: complex,
        identity_tol: float,
        diagnostics: Optional[dict] = None,
    ) -> "VerificationReport":
        abs_error = abs(lhs - rhs)
        rel_error = abs_error / max(abs(lhs), 1e-30)
        # small left sides are judged absolutely, everything else relatively
        passed = abs_error < identity_tol if abs(lhs) < 1.0 else rel_error < identity_tol
        return cls(
            formula_id,
            dict(parameters),
            complex(lhs),
            complex(rhs),
            abs_error,
            rel_error,
            passed,
            dict(diagnostics or {}),
        )

    def as_record(self) -> dict:
        return {
            "formula_id": self.formula_id,
            "params": self.parameters,
            "lhs_re": self.lhs.real,
            "lhs_im": self.lhs.imag,
            "rhs_re": self.rhs.real,
            "rhs_im": self.rhs.imag,
            "abs_error": self.abs_error,
            "rel_error": self.rel_error,
            "pass": self.passed,
            "diagnostics": self.diagnostics,
        }


def _phi_series_counted(
    spec: BasicHypergeometricSpec, tol: Tolerances
) -> tuple[complex, int]:
    if abs(spec.q) >= 1.0:
        raise DomainError("series base must satisfy |q| < 1")
    d = 1 + len(spec.lower) - len(spec.upper)
    total = 1.0 + 0j
    term = 1.0 + 0j
    qk = 1.0 + 0j
    small = 0
    for k in range(tol.max_terms):
        ratio = 1.0 + 0j
        for a in spec.upper:
            ratio *= 1.0 - qk * a
        for b in spec.lower:
            den = 1.0 - qk * b
            if den == 0.0:
                if term == 0.0:
                    return total, k
                raise DomainError(
                    "a denominator parameter hit the pole lattice before termination"
                )
            ratio /= den
        if d != 0:
            ratio *= (-qk) ** d
        qk *= spec.q
        term *= ratio * spec.z / (1.0 - qk)
        if term == 0.0:
            return total, k + 1
        total += term
        if abs(term) <= tol.series_tol * max(1.0, abs(total)):
            small += 1
            if small >= 5:
                return total, k + 1
        else:
            small = 0
    raise ConvergenceError("hypergeometric series did not stabilize")


def phi_series(spec: BasicHypergeometricSpec, tol: Tolerances | None = None) -> complex:
    """Sum the series by its term-ratio recurrence.

    term_{k+1} = term_k * prod(1 - q^k a_i) / prod(1 - q^k b_j) * z/(1 - q^{k+1}),
    with the extra ((-1) q^k)^(1 + s - r) factor when the parameter counts
    are unbalanced.  Stops at exact termination (a numerator factor hits
    zero) or after five consecutive negligible terms.
    """
    value, _ = _phi_series_counted(spec, tol or DEFAULT_TOL)
    return value


def verify_q_gauss(
    alpha: complex,
    beta: complex,
    xi: complex,
    x: complex,
    q: complex,
    tol: Tolerances | None = None,
    identity_tol: float = SERIES_PASS_TOL,
) -> VerificationReport:
    """q-Gauss sum: the 2phi1 at argument beta*x against the product quotient."""
    tol = tol or DEFAULT_TOL
    if abs(q) >= 1.0:
        raise DomainError("q-Gauss needs |q| < 1")
    if x == 0:
        raise DomainError("q-Gauss needs x != 0")
    if abs(beta * x) >= 1.0:
        raise DomainError("q-Gauss needs |beta x| < 1 for series convergence")
    series, terms = _phi_series_counted(
        BasicHypergeometricSpec((xi / x, alpha / beta), (alpha * xi,), q, beta * x), tol
    )
    den = q_pochhammer_inf(beta * x, q, tol) * q_pochhammer_inf(alpha * xi, q, tol)
    if den == 0.0:
        raise DomainError("product side has a vanishing denominator")
    rhs = q_pochhammer_inf(alpha * x, q, tol) * q_pochhammer_inf(beta * xi, q, tol) / den
    return VerificationReport.build(
        "q-gauss",
        {"alpha": alpha, "beta": beta, "xi": xi, "x": x, "q": q},
        series,
        rhs,
        identity_tol,
        {"terms": terms},
    )


def geometric_partial_k(
    alpha: complex,
    beta: complex,
    z: complex,
    q: complex,
    k: int,
    tol: Tolerances | None = None,
) -> complex:
    """Closed form of the k-th normalized divided difference of
    (alpha x;q)_inf / (beta x;q)_inf on geometric nodes, based at z:

        prod_{j<k} (beta - q^j alpha)/(1 - q^{j+1})
            * (alpha z q^{k/2};q)_inf / (beta z q^{-k/2};q)_inf,

    with q^{k/2} built from the principal square root of q.
    """
    tol = tol or DEFAULT_TOL
    if abs(q) >= 1.0:
        raise DomainError("needs |q| < 1")
    pref = 1.0 + 0j
    for j in range(k):
        pref *= (beta - q**j * alpha) / (1.0 - q ** (j + 1))
    half = cmath.sqrt(q) ** k
    den = q_pochhammer_inf(beta * z / half, q, tol)
    if den == 0.0:
        raise DomainError("denominator product vanishes at this base point")
    return pref * q_pochhammer_inf(alpha * z * half, q, tol) / den


def sym_qpoch(gamma: complex, v: complex, q: float, tol: Tolerances | None = None) -> complex:
    """(gamma v;q)_inf (gamma/v;q)_inf, invariant under v -> 1/v."""
    if v == 0:
        raise DomainError("needs v != 0")
    tol = tol or DEFAULT_TOL
    return q_pochhammer_inf(gamma * v, q, tol) * q_pochhammer_inf(gamma / v, q, tol)


def f_alpha_beta(
    u: complex,
    alpha: float,
    beta: float,
    q: float,
    tol: Tolerances | None = None,
) -> complex:
    """Symmetric quotient (alpha u, alpha/u;q)_inf / (beta u, beta/u;q)_inf.

    As a function of x = (u + 1/u)/2 this is well defined (both factor pairs
    are u -> 1/u symmetric) and analytic off the right real axis where the
    denominator lattice lives, provided beta > 0.
    """
    tol = tol or DEFAULT_TOL
    if u == 0:
        raise DomainError("needs u != 0")
    if not (isinstance(alpha, (int, float)) and isinstance(beta, (int, float))):
        raise DomainError("alpha must be real and beta positive real")
    if not beta > 0:
        raise DomainError("needs beta > 0")
    if not 0.0 < q < 1.0:
        raise DomainError("needs real q in (0,1)")
    den = sym_qpoch(beta, u, q, tol)
    if den == 0.0:
        raise DomainError("evaluation point hits a pole of the quotient")
    return sym_qpoch(alpha, u, q, tol) / den


def joukowski_inverse(x: complex) -> complex:
    """The root v of v^2 - 2 x v + 1 = 0 with |v| >= 1.

    Ties (|v| = 1, i.e. x in [-1, 1]) resolve to the principal branch
    x + sqrt(x^2 - 1).  Symmetric factor quotients are insensitive to the
    choice because the two roots are v and 1/v.
    """
    s = cmath.sqrt(x - 1.0) * cmath.sqrt(x + 1.0)
    v = x + s
    if abs(v) >= 1.0:
        return v
    return x - s


def trig_partial_k(
    alpha: float,
    beta: float,
    xi: float,
    q: float,
    k: int,
    tol: Tolerances | None = None,
) -> complex:
    """Closed form of the k-th normalized divided difference of the symmetric
    quotient on trigonometric nodes (q^t xi + q^-t/xi)/2, based at the k/2
    node:

        (2 beta)^k (alpha/beta;q)_k
        / ((q;q)_k (alpha xi;q)_k (beta q^-k / xi;q)_k)
        * f_alpha_beta at the base node.
    """
    tol = tol or DEFAULT_TOL
    if not xi < 0:
        raise DomainError("needs xi < 0")
    num = (2.0 * beta) ** k * q_pochhammer(alpha / beta, q, k)
    den = (
        q_pochhammer(q, q, k)
        * q_pochhammer(alpha * xi, q, k)
        * q_pochhammer(beta / (q**k * xi), q, k)
    )
    if den == 0.0:
        raise DomainError("denominator factor vanishes")
    return num / den * f_alpha_beta(xi, alpha, beta, q, tol)


def s_infinity_trig(
    alpha: float,
    beta: float,
    xi: float,
    u: complex,
    q: float,
    tol: Tolerances | None = None,
) -> complex:
    """Limit of the partial sums on trigonometric nodes:

        (alpha xi, alpha/xi;q)_inf / (beta xi, beta/xi;q)_inf
        * 3phi2[alpha/beta, xi u, xi/u; alpha xi, q xi / beta; q, q].
    """
    tol = tol or DEFAULT_TOL
    if not (0.0 < q < 1.0 and xi < 0):
        raise DomainError("needs real q in (0,1) and xi < 0")
    pref = f_alpha_beta(xi, alpha, beta, q, tol)
    series = phi_series(
        BasicHypergeometricSpec(
            (alpha / beta, xi * u, xi / u), (alpha * xi, q * xi / beta), q, q
        ),
        tol,
    )
    return pref * series


def _trig_sequence(xi: float, q: float) -> PSequence:
    return PSequence.from_canonical(CanonicalForm("T", xi, math.sqrt(q)))


def _f_alpha_beta_of_x(alpha: float, beta: float, q: float, tol: Tolerances):
    def f(x: complex) -> complex:
        v = joukowski_inverse(x)
        den = sym_qpoch(beta, v, q, tol)
        if den == 0.0:
            raise DomainError("axis integrand hit a pole")
        return sym_qpoch(alpha, v, q, tol) / den

    return f


def verify_new_formula(
    alpha: float,
    beta: float,
    xi: float,
    u: complex,
    q: float,
    tol: Tolerances | None = None,
    identity_tol: float = INTEGRAL_PASS_TOL,
    quad_tol: float = 1e-7,
) -> VerificationReport:
    """One-term-plus-integral form of the non-terminating q-Saalschuetz sum.

    Compares the symmetric quotient at u against the 3phi2 term plus the
    imaginary-axis integral of f_alpha(y) f_xi(x) / (f_beta(y) f_xi(y) (y-x)),
    inside the proven parameter region: alpha real, beta > 0, xi < 0,
    Re u < 0 with |u| >= 1.
    """
    tol = tol or DEFAULT_TOL
    if not (isinstance(alpha, (int, float)) and isinstance(beta, (int, float))):
        raise DomainError("alpha must be real, beta positive real")
    if not (0.0 < q < 1.0):
        raise DomainError("needs real q in (0,1)")
    if not beta > 0:
        raise DomainError("needs beta > 0")
    if not xi < 0:
        raise DomainError("needs xi < 0")
    if not (u.real < 0 and abs(u) >= 1.0):
        raise DomainError("needs Re u < 0 and |u| >= 1")
    if alpha == 0:
        raise DomainError("needs alpha != 0 for a finite growth exponent")

    x = (u + 1.0 / u) / 2.0
    lhs = f_alpha_beta(u, alpha, beta, q, tol)
    sterm = s_infinity_trig(alpha, beta, xi, u, q, tol)
    growth_m = max(0.0, math.log(abs(alpha) / beta) / math.log(1.0 / q))
    f = AnalyticFunction(
        _f_alpha_beta_of_x(alpha, beta, q, tol),
        Domain.left_half_plane(),
        growth=(10.0 * (1.0 + abs(lhs)), growth_m),
    )
    seq = _trig_sequence(xi, q)
    integral = remainder_infinite(f, seq, x, "left", quad_tol=quad_tol, tol=tol)
    rhs = sterm + integral.value
    return VerificationReport.build(
        "new-saalschutz",
        {"alpha": alpha, "beta": beta, "xi": xi, "u": u, "q": q},
        lhs,
        rhs,
        identity_tol,
        {
            "series_term": sterm,
            "integral_term": integral.value,
            "truncation": integral.truncation,
            "tail_error": integral.tail_error,
            "axis_evaluations": integral.evaluations,
        },
    )


def saalschutz_rhs_terms(
    alpha: complex,
    beta: complex,
    xi: complex,
    u: complex,
    q: complex,
    tol: Tolerances | None = None,
) -> tuple[complex, complex]:
    """The two prefactored 3phi2 terms of the non-terminating q-Saalschuetz
    right-hand side; the second is the first with beta and xi transposed."""
    tol = tol or DEFAULT_TOL

    def term(b: complex, c: complex) -> complex:
        # prefactor (a c, a/c;q)_inf / (b c, b/c, c u, c/u;q)_inf
        den = (
            q_pochhammer_inf(b * c, q, tol)
            * q_pochhammer_inf(b / c, q, tol)
            * q_pochhammer_inf(c * u, q, tol)
            * q_pochhammer_inf(c / u, q, tol)
        )
        if den == 0.0:
            raise DomainError("vanishing denominator product")
        pref = (
            q_pochhammer_inf(alpha * c, q, tol)
            * q_pochhammer_inf(alpha / c, q, tol)
            / den
        )
        series = phi_series(
            BasicHypergeometricSpec(
                (alpha / b, c * u, c / u), (alpha * c, q * c / b), q, q
            ),
            tol,
        )
        return pref * series

    return term(beta, xi), term(xi, beta)


def verify_nonterminating_q_saalschutz(
    alpha: complex,
    beta: complex,
    xi: complex,
    u: complex,
    q: complex,
    tol: Tolerances | None = None,
    identity_tol: float = SERIES_PASS_TOL,
) -> VerificationReport:
    """Two-term non-terminating q-Saalschuetz sum, pure series and products:

        (a u, a/u;q)_inf / (b u, b/u, c u, c/u;q)_inf  =  T(b, c) + T(c, b),

    where T(b, c) = (a c, a/c;q)_inf / (b c, c/b ... ;q)_inf prefactor times
    3phi2[a/b, c u, c/u; a c, q c/b; q, q], with (b, c) = (beta, xi).
    """
    tol = tol or DEFAULT_TOL
    if not (isinstance(q, (int, float)) and 0.0 < q < 1.0):
        raise DomainError("needs real q in (0,1)")
    den = 1.0 + 0j
    for g in (beta, xi):
        den *= q_pochhammer_inf(g * u, q, tol) * q_pochhammer_inf(g / u, q, tol)
    if den == 0.0:
        raise DomainError("left side has a vanishing denominator")
    lhs = (
        q_pochhammer_inf(alpha * u, q, tol)
        * q_pochhammer_inf(alpha / u, q, tol)
        / den
    )
    t1, t2 = saalschutz_rhs_terms(alpha, beta, xi, u, q, tol)
    return VerificationReport.build(
        "nonterminating-q-saalschutz",
        {"alpha": alpha, "beta": beta, "xi": xi, "u": u, "q": q},
        lhs,
        t1 + t2,
        identity_tol,
        {"term_beta_xi": t1, "term_xi_beta": t2},
    )


def verify_q_vandermonde_nonsym(
    alpha: float,
    beta: float,
    xi: float,
    x: complex,
    q: float,
    tol: Tolerances | None = None,
    identity_tol: float = INTEGRAL_PASS_TOL,
    quad_tol: float = 1e-7,
) -> VerificationReport:
    """Non-symmetrized non-terminating q-Vandermonde sum:

        (a x;q)_inf/(b x;q)_inf = (a xi;q)_inf/(b xi;q)_inf
            * 2phi1[a/b, x/xi; q/(b xi); q, q]
            + (1/2 pi i) int (a y, x/xi;q)_inf / ((b y, y/xi;q)_inf) dy/(y-x)

    on nodes q^{-t} xi escaping along the real half axis that carries xi,
    with x strictly inside the matching half plane.
    """
    tol = tol or DEFAULT_TOL
    if not (0.0 < q < 1.0):
        raise DomainError("needs real q in (0,1)")
    if xi == 0 or not isinstance(xi, (int, float)):
        raise DomainError("needs real xi != 0")
    half = "left" if xi < 0 else "right"
    if half == "left" and not x.real < 0:
        raise DomainError("needs Re x < 0 when xi < 0")
    if half == "right" and not x.real > 0:
        raise DomainError("needs Re x > 0 when xi > 0")
    # the pole lattice q^-m / beta must stay on the far side of the axis
    if half == "left" and not beta > 0:
        raise DomainError("needs beta > 0 when expanding on the left")
    if half == "right" and not beta < 0:
        raise DomainError("needs beta < 0 when expanding on the right")

    lhs_den = q_pochhammer_inf(beta * x, q, tol)
    if lhs_den == 0.0:
        raise DomainError("left side has a vanishing denominator")
    lhs = q_pochhammer_inf(alpha * x, q, tol) / lhs_den

    pref = q_pochhammer_inf(alpha * xi, q, tol) / q_pochhammer_inf(beta * xi, q, tol)
    series = phi_series(
        BasicHypergeometricSpec((alpha / beta, x / xi), (q / (beta * xi),), q, q), tol
    )

    def f(y: complex) -> complex:
        den = q_pochhammer_inf(beta * y, q, tol)
        if den == 0.0:
            raise DomainError("axis integrand hit a pole")
        return q_pochhammer_inf(alpha * y, q, tol) / den

    growth_m = max(0.0, math.log(max(abs(alpha), 1e-6) / abs(beta)) / math.log(1.0 / q))
    fn = AnalyticFunction(
        f,
        Domain.left_half_plane() if half == "left" else Domain.right_half_plane(),
        growth=(10.0 * (1.0 + abs(lhs)), growth_m),
    )
    seq = PSequence.from_canonical(CanonicalForm("G", xi, 1.0 / math.sqrt(q)))
    integral = remainder_infinite(fn, seq, x, half, quad_tol=quad_tol, tol=tol)
    rhs = pref * series + integral.value
    return VerificationReport.build(
        "q-vandermonde",
        {"alpha": alpha, "beta": beta, "xi": xi, "x": x, "q": q},
        lhs,
        rhs,
        identity_tol,
        {
            "series_term": pref * series,
            "integral_term": integral.value,
            "truncation": integral.truncation,
            "tail_error": integral.tail_error,
            "axis_evaluations": integral.evaluations,
        },
    )
