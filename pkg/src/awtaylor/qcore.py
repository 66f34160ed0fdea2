"""q-shifted factorials and two-sided growth estimates for (x;q)_inf.

Everything here is scalar, double-precision complex arithmetic.  The finite
product (x;q)_n and the classical rising factorial are duck typed on purpose:
they work with floats, complex numbers, fractions.Fraction and sympy numbers
alike, which is what the exact verification mode of the binomial module
relies on.

The infinite product h(x) = (x;q)_inf is the delicate one.  For |x| <= 1 a
truncated product is accurate, but for |x| > 1 the head factors grow while
the value oscillates through a zero lattice, so evaluation is routed through
the scaling decomposition

    h(x) = (-1)^m x^m q^(m(m-1)/2) h(a) h_m(b),   a = q^m x,  b = q^(1-m)/x,

with m the unique integer satisfying q^m |x| <= 1 < q^(m-1) |x|.  All factors
on the right are bounded, which is also what makes the magnitude envelope

    |h(x)| <= C_q |x|^(1/2 + log|x| / (2 log(1/q))),   C_q = q^(-1/8) h(-1)^2

checkable without overflow: the ratio |h(x)| / envelope equals
q^(rho(rho-1)/2) |h(a) h_m(b)| where rho is the fractional part of
log|x|/log(1/q) rounded up to m.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass


class DomainError(ValueError):
    """Input lies outside the supported parameter domain."""


class ConvergenceError(RuntimeError):
    """An iterative computation failed to reach its tolerance."""


class EnclosureError(ConvergenceError):
    """A quadrature contour cannot enclose the required points."""


@dataclass(frozen=True)
class Tolerances:
    """Numerical knobs shared across the library.

    series_tol   term/factor cutoff for infinite sums and products
    max_terms    hard cap on iterations before giving up
    identity_tol pass/fail residual threshold for identity checks
    """

    series_tol: float = 1e-15
    max_terms: int = 10_000
    identity_tol: float = 1e-9

    def __post_init__(self):
        if self.series_tol <= 0 or self.identity_tol <= 0:
            raise DomainError("tolerances must be strictly positive")
        if self.max_terms <= 0:
            raise DomainError("max_terms must be a positive integer")
        if self.series_tol >= self.identity_tol:
            warnings.warn(
                "series_tol >= identity_tol; identity checks may be dominated "
                "by truncation error",
                stacklevel=2,
            )


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class PochhammerDecomposition:
    """Scaling decomposition of (x;q)_inf for |x| > 1.

    m            scaling index, q^m |x| <= 1 < q^(m-1) |x|
    head_factor  x^m q^(m(m-1)/2), the unbounded part (sign (-1)^m excluded)
    a            q^m x, satisfies |a| <= 1
    b            q^(1-m) / x, satisfies q <= |b| < 1
    rho          fractional defect, m = log|x|/log(1/q) + rho, 0 <= rho < 1
    """

    m: int
    head_factor: complex
    a: complex
    b: complex
    rho: float


def q_pochhammer(x, q, n: int):
    """Finite q-shifted factorial (x;q)_n = prod_{k=0}^{n-1} (1 - q^k x).

    Duck typed: exact for Fraction/sympy inputs, complex otherwise.
    """
    if n < 0:
        raise DomainError("order n must be nonnegative")
    prod = 1
    qk = 1
    for _ in range(n):
        prod = prod * (1 - qk * x)
        qk = qk * q
    return prod


def rising_factorial(u, n: int):
    """Classical rising factorial (u)_n = u (u+1) ... (u+n-1)."""
    if n < 0:
        raise DomainError("order n must be nonnegative")
    prod = 1
    for k in range(n):
        prod = prod * (u + k)
    return prod


def q_binomial(r: int, k: int, q):
    """Gaussian binomial coefficient [r k]_q.

    Evaluated in product form prod_{j=1}^{k} (1 - q^(r-k+j)) / (1 - q^j),
    which avoids the (q;q)_r quotient.  q = 1 returns the ordinary binomial
    coefficient (the limit value).  Roots of unity of order <= r are
    rejected because a denominator factor vanishes.
    """
    if k < 0 or r < 0:
        raise DomainError("q-binomial indices must be nonnegative")
    if k > r:
        raise DomainError("q-binomial requires k <= r")
    if q == 1:
        return math.comb(r, k)
    if k == 0:
        return 1
    num = 1
    den = 1
    for j in range(1, k + 1):
        num = num * (1 - q ** (r - k + j))
        fac = 1 - q**j
        if fac == 0:
            raise DomainError("q is a root of unity of order <= r")
        den = den * fac
    return num / den


def _qpoch_inf_small(x: complex, q: complex, tol: Tolerances) -> complex:
    """Truncated (x;q)_inf for |q| < 1 and moderate |x| (no rescaling).

    Stops once the current factor is within series_tol of 1 and the
    geometric tail bound |q^j x| / (1 - |q|) is also below series_tol.
    """
    prod = complex(1.0)
    term = complex(x)
    aq = abs(q)
    tail_scale = 1.0 / (1.0 - aq)
    for _ in range(tol.max_terms):
        prod *= 1.0 - term
        if prod == 0.0:
            return prod
        term *= q
        if abs(term) < tol.series_tol and abs(term) * tail_scale < tol.series_tol:
            return prod
    raise ConvergenceError("(x;q)_inf did not converge within max_terms factors")


def pochhammer_decompose(x: complex, q: float) -> PochhammerDecomposition:
    """Split (x;q)_inf at |x| > 1 into bounded factors times x^m q^C(m,2).

    Requires real q in (0,1) and |x| > 1.  The index m is fixed by
    q^m |x| <= 1 < q^(m-1) |x| and corrected against floating point fuzz by
    direct inequality checks.
    """
    q = float(q)
    if not 0.0 < q < 1.0:
        raise DomainError("decomposition requires real q in (0,1)")
    ax = abs(x)
    if ax <= 1.0:
        raise DomainError("decomposition requires |x| > 1")
    logx = math.log(ax) / math.log(1.0 / q)
    m = math.ceil(logx)
    while q**m * ax > 1.0:
        m += 1
    while m >= 1 and q ** (m - 1) * ax <= 1.0:
        m -= 1
    rho = m - logx
    rho = min(max(rho, 0.0), math.nextafter(1.0, 0.0))
    xz = complex(x)
    head = cmath.exp(m * cmath.log(xz) + (m * (m - 1) // 2) * math.log(q))
    return PochhammerDecomposition(
        m=m,
        head_factor=head,
        a=(q**m) * xz,
        b=(q ** (1 - m)) / xz,
        rho=rho,
    )


def q_pochhammer_inf(x, q, tol: Tolerances | None = None) -> complex:
    """Infinite q-shifted factorial (x;q)_inf = prod_{j>=0} (1 - q^j x).

    Requires |q| < 1.  Arguments with |x| > 1 are rescaled first: for real
    q in (0,1) through pochhammer_decompose, otherwise by peeling head
    factors until the argument enters the unit disk.
    """
    tol = tol or DEFAULT_TOL
    if abs(q) >= 1.0:
        raise DomainError("(x;q)_inf requires |q| < 1")
    xz = complex(x)
    if xz == 0.0:
        return complex(1.0)
    if abs(xz) <= 1.0:
        return _qpoch_inf_small(xz, complex(q), tol)
    if isinstance(q, (int, float)) and 0.0 < float(q) < 1.0:
        d = pochhammer_decompose(xz, float(q))
        sign = -1.0 if d.m % 2 else 1.0
        tail = _qpoch_inf_small(d.a, complex(q), tol)
        return sign * d.head_factor * tail * q_pochhammer(d.b, complex(q), d.m)
    # complex base: plain head peeling, adequate for moderate arguments
    head = complex(1.0)
    term = xz
    for _ in range(tol.max_terms):
        if abs(term) <= 1.0:
            return head * _qpoch_inf_small(term, complex(q), tol)
        head *= 1.0 - term
        term *= q
    raise ConvergenceError("head peeling for (x;q)_inf exceeded max_terms")


def _envelope_exponent(abs_x: float, q: float) -> float:
    return 0.5 + math.log(abs_x) / (2.0 * math.log(1.0 / q))


def pochhammer_upper_bound(x, q: float) -> float:
    """Magnitude envelope C_q |x|^(1/2 + log|x|/(2 log(1/q))) for |(x;q)_inf|.

    C_q = q^(-1/8) h(-1)^2 with h(-1) = (-1;q)_inf.
    """
    q = float(q)
    if not 0.0 < q < 1.0:
        raise DomainError("bound requires real q in (0,1)")
    ax = abs(complex(x))
    if ax == 0.0:
        raise DomainError("bound is undefined at x = 0")
    h_minus1 = abs(q_pochhammer_inf(-1.0, q))
    c_q = q ** (-0.125) * h_minus1 * h_minus1
    return c_q * math.exp(_envelope_exponent(ax, q) * math.log(ax))


def pochhammer_lower_ratio(x, q: float) -> float:
    """|(x;q)_inf| divided by the magnitude envelope |x|^(1/2 + ...).

    Computed through the scaling decomposition for |x| > 1, so the result
    never overflows even when |(x;q)_inf| itself would.  The infimum of this
    ratio over admissible sets is the empirical counterpart of the lower
    magnitude estimate; no closed form for the constant is known.
    """
    q = float(q)
    if not 0.0 < q < 1.0:
        raise DomainError("ratio requires real q in (0,1)")
    xz = complex(x)
    ax = abs(xz)
    if ax == 0.0:
        raise DomainError("ratio is undefined at x = 0")
    if ax <= 1.0:
        h = abs(q_pochhammer_inf(xz, q))
        return h * math.exp(-_envelope_exponent(ax, q) * math.log(ax))
    d = pochhammer_decompose(xz, q)
    bounded = abs(q_pochhammer_inf(d.a, q)) * abs(q_pochhammer(d.b, q, d.m))
    return q ** (d.rho * (d.rho - 1.0) / 2.0) * bounded


def set_A_membership(x, q: float, rho: float) -> bool:
    """Membership in the closed set that keeps |x - q^(-j)| >= rho q^(-j).

    The set is generated by removing the open disk of relative radius rho
    around every lattice point q^(-j), j >= 0.  It is closed, invariant
    under multiplication by q, and excludes each q^(-j).  Only indices with
    q^(-j) (1 - rho) <= |x| <= q^(-j) (1 + rho) can violate the condition,
    a window of O(1) indices around log|x| / log(1/q).
    """
    q = float(q)
    if not 0.0 < q < 1.0:
        raise DomainError("membership requires real q in (0,1)")
    if not 0.0 < rho < 1.0:
        raise DomainError("membership requires rho in (0,1)")
    xz = complex(x)
    ax = abs(xz)
    if ax < (1.0 - rho):
        return True
    logq_inv = math.log(1.0 / q)
    j_lo = max(0, math.ceil(math.log(ax / (1.0 + rho)) / logq_inv) - 1)
    j_hi = math.floor(math.log(ax / (1.0 - rho)) / logq_inv) + 1
    for j in range(j_lo, j_hi + 1):
        lattice = q ** (-j)
        if abs(xz - lattice) < rho * lattice:
            return False
    return True
