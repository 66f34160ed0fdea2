"""Binomial-type summation identities for pairs of node sequences.

The general statement: for two sequences (y_t), (z_t) of the same quadratic
symmetric polynomial with base q = lam^2,

    prod_{k=0}^{n-1} (x - z_k)
        = sum_{k=0}^{n} [n k]_q  q^{-k(n-k)/2}
          prod_{j=0}^{k-1} (x - y_j)  prod_{j=0}^{n-k-1} (y_{k/2} - z_{j+k/2}),

where the half power is evaluated as lam^{-k(n-k)} so no branch choice ever
enters.  Specialized to the five canonical families it reproduces the
classical summation formulas: Newton's binomial (C), the Vandermonde
convolution (A), a Pfaff-type sum (Q), a terminating q-Vandermonde (G) and
a terminating q-Saalschuetz (T).

Row evaluators are duck typed; handing them Fraction (or sympy) inputs runs
the whole identity in exact arithmetic, which is how the exact mode pins
residuals to literal zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .awop import AnalyticFunction, partial_k_contour
from .psequence import CanonicalForm, PSequence, lambda_bracket, phi
from .qcore import DEFAULT_TOL, DomainError, Tolerances, q_binomial, q_pochhammer, rising_factorial
from .qseries import VerificationReport

BINOMIAL_PASS_TOL = 1e-11
EXACT_N_CAP = 12


def generalized_binomial(x, k: int):
    """Binomial coefficient C(x, k) = x (x-1) ... (x-k+1) / k! for complex x."""
    if k < 0:
        raise DomainError("binomial order must be nonnegative")
    if k == 0:
        return 1
    prod = 1
    for j in range(k):
        prod = prod * (x - j)
    return prod / math.factorial(k)


@dataclass(frozen=True)
class BinomialInstance:
    """One evaluation point of the general binomial identity.

    y_params / z_params carry the base parameter of each canonical sequence
    under the key "u".  Forms T and G require q; the others live at q = 1.
    """

    form: str
    n: int
    x: complex
    y_params: dict
    z_params: dict
    q: Optional[complex] = None
    exact: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("n must be nonnegative")
        if self.exact and self.n > EXACT_N_CAP:
            raise DomainError(f"exact mode caps n at {EXACT_N_CAP}")


def _exact_value(tag: str, u, lam, halfsteps: int):
    """Closed-form node value with caller-supplied (sympy) arithmetic."""
    if tag == "T":
        g = lam**halfsteps * u
        return (g + 1 / g) / 2
    if tag == "G":
        return lam**halfsteps * u
    if tag == "Q":
        import sympy

        return (sympy.Rational(halfsteps, 2) + u) ** 2
    if tag == "A":
        import sympy

        return sympy.Rational(halfsteps, 2) + u
    return u


def _general_binomial_sides(values_y, values_z, x, lam, qbase, n):
    """Both sides of the identity from node-value callables (duck typed)."""
    lhs = 1
    for k in range(n):
        lhs = lhs * (x - values_z(2 * k))
    rhs = 0
    for k in range(n + 1):
        term = q_binomial(n, k, qbase) * lam ** (-k * (n - k))
        for j in range(k):
            term = term * (x - values_y(2 * j))
        yk = values_y(k)
        for j in range(n - k):
            term = term * (yk - values_z(2 * j + k))
        rhs = rhs + term
    return lhs, rhs


def general_binomial_check(
    inst: BinomialInstance,
    tol: Tolerances | None = None,
    identity_tol: float = BINOMIAL_PASS_TOL,
) -> VerificationReport:
    """Verify the general identity on a pair of same-polynomial sequences."""
    tag = inst.form
    if tag not in ("T", "G", "Q", "A", "C"):
        raise DomainError(f"unknown canonical tag {tag!r}")
    if tag in ("T", "G"):
        if inst.q is None:
            raise DomainError("forms T and G need q")
    elif inst.q not in (None, 1, 1.0):
        raise DomainError("forms Q, A, C live at q = 1")

    yu = inst.y_params["u"]
    zu = inst.z_params["u"]
    diagnostics: dict = {"exact": inst.exact}

    if inst.exact:
        import sympy

        q = sympy.nsimplify(sympy.Rational(inst.q) if inst.q is not None else 1)
        lam = sympy.sqrt(q)
        u_y, u_z, x = map(sympy.nsimplify, (yu, zu, inst.x))
        lhs, rhs = _general_binomial_sides(
            lambda h: _exact_value(tag, u_y, lam, h),
            lambda h: _exact_value(tag, u_z, lam, h),
            x,
            lam,
            q,
            inst.n,
        )
        residual = sympy.expand(sympy.radsimp(lhs - rhs))
        diagnostics["residual_zero"] = residual == 0
        lhs_f = complex(lhs)
        rhs_f = complex(rhs)
        report = VerificationReport.build(
            f"general-binomial-{tag.lower()}",
            {"form": tag, "n": inst.n, "x": inst.x, "y_u": yu, "z_u": zu, "q": inst.q},
            lhs_f,
            rhs_f,
            identity_tol,
            diagnostics,
        )
        report.passed = bool(residual == 0)
        return report

    if tag in ("T", "G"):
        y_form = CanonicalForm.from_q(tag, yu, inst.q)
        z_form = CanonicalForm.from_q(tag, zu, inst.q)
        lam = y_form.lam
        qbase = inst.q
    else:
        y_form = CanonicalForm(tag, yu)
        z_form = CanonicalForm(tag, zu)
        lam = 1.0
        qbase = 1.0
    lhs, rhs = _general_binomial_sides(
        y_form.value, z_form.value, inst.x, lam, qbase, inst.n
    )
    return VerificationReport.build(
        f"general-binomial-{tag.lower()}",
        {"form": tag, "n": inst.n, "x": inst.x, "y_u": yu, "z_u": zu, "q": inst.q},
        lhs,
        rhs,
        identity_tol,
        diagnostics,
    )


def _row_c(params, n):
    x, y, z = params["x"], params["y"], params["z"]
    lhs = (x - z) ** n
    rhs = 0
    for k in range(n + 1):
        rhs = rhs + math.comb(n, k) * (x - y) ** k * (y - z) ** (n - k)
    return lhs, rhs


def _row_a(params, n):
    x, y, z = params["x"], params["y"], params["z"]
    lhs = generalized_binomial(x - z, n)
    rhs = 0
    for k in range(n + 1):
        rhs = rhs + generalized_binomial(x - y, k) * generalized_binomial(y - z, n - k)
    return lhs, rhs


def _row_q(params, n):
    u, v, w = params["u"], params["v"], params["w"]
    lhs = rising_factorial(u + w, n) * generalized_binomial(u - w, n)
    rhs = 0
    for k in range(n + 1):
        rhs = rhs + (
            generalized_binomial(u - v, k)
            * rising_factorial(u + v, k)
            * generalized_binomial(v - w, n - k)
            * rising_factorial(v + w + k, n - k)
        )
    return lhs, rhs


def _row_g(params, n):
    x, y, z, q = params["x"], params["y"], params["z"], params["q"]
    lhs = 1
    for k in range(n):
        lhs = lhs * (x - q**k * z)
    rhs = 0
    for k in range(n + 1):
        term = q_binomial(n, k, q)
        for j in range(k):
            term = term * (x - q**j * y)
        for j in range(n - k):
            term = term * (y - q**j * z)
        rhs = rhs + term
    return lhs, rhs


def _div(a, b):
    # keeps exact ring types: int / int would decay to float
    return a if b == 1 else a / b


def _row_t(params, n):
    u, v, w, q = params["u"], params["v"], params["w"], params["q"]
    lhs = _div(q_pochhammer(w * u, q, n) * q_pochhammer(w / u, q, n),
               q_pochhammer(q, q, n))
    rhs = 0
    for k in range(n + 1):
        term = _div(
            q_pochhammer(v * u, q, k) * q_pochhammer(v / u, q, k),
            q_pochhammer(q, q, k),
        )
        term = term * _div(
            q_pochhammer(w * v * q**k, q, n - k) * q_pochhammer(w / v, q, n - k),
            q_pochhammer(q, q, n - k),
        )
        rhs = rhs + term * (w / v) ** k
    return lhs, rhs


_ROWS = {"C": _row_c, "A": _row_a, "Q": _row_q, "G": _row_g, "T": _row_t}


def table2_check(
    row: str,
    params: dict,
    n: int,
    tol: Tolerances | None = None,
    identity_tol: float = BINOMIAL_PASS_TOL,
    exact: bool = False,
) -> VerificationReport:
    """Verify one row of the binomial-identity table.

    C: Newton's binomial; A: Vandermonde convolution of generalized
    binomials; Q: Pfaff-type sum mixing rising factorials and binomials;
    G: terminating q-Vandermonde; T: terminating q-Saalschuetz.  With
    exact=True all parameters must be Fraction-convertible and the residual
    is required to be literally zero.
    """
    row = row.upper()
    if row not in _ROWS:
        raise DomainError(f"unknown row {row!r}")
    if n < 0:
        raise DomainError("n must be nonnegative")
    work = dict(params)
    diagnostics: dict = {"exact": exact}
    if exact:
        if n > EXACT_N_CAP:
            raise DomainError(f"exact mode caps n at {EXACT_N_CAP}")
        try:
            work = {k: Fraction(v) for k, v in work.items()}
        except (TypeError, ValueError) as e:
            raise DomainError("exact mode needs rational parameters") from e
    lhs, rhs = _ROWS[row](work, n)
    if exact:
        residual = lhs - rhs
        diagnostics["residual_zero"] = residual == 0
        report = VerificationReport.build(
            f"table2-{row.lower()}",
            {**{k: str(v) for k, v in work.items()}, "n": n},
            complex(lhs),
            complex(rhs),
            identity_tol,
            diagnostics,
        )
        report.passed = residual == 0
        return report
    return VerificationReport.build(
        f"table2-{row.lower()}",
        {**params, "n": n},
        complex(lhs),
        complex(rhs),
        identity_tol,
        diagnostics,
    )


def phi_partial_identity_check(
    n: int,
    k: int,
    lam: complex,
    seq: PSequence,
    y: complex,
    quad_tol: float = 1e-12,
    identity_tol: float = 1e-9,
) -> VerificationReport:
    """Order-lowering identity for the interpolation polynomials.

    Applying the normalized k-th divided difference (based at the probe
    point y, over a sequence of the same polynomial) to y' -> phi_n(x, y')
    multiplies phi_{n-k}(x, y) by
    prod_{j<k} [n-j]_lam / [k-j]_lam.
    """
    if not 0 <= k <= n:
        raise DomainError("needs 0 <= k <= n")
    if lam == 0:
        raise DomainError("needs lam != 0")
    f = AnalyticFunction(lambda w: phi(seq, n, w))
    probe = PSequence.from_polynomial(seq.polynomial, y, 1)
    lhs = partial_k_contour(f, probe, k, None, quad_tol)
    coeff = 1.0 + 0j
    for j in range(k):
        coeff *= lambda_bracket(n - j, lam) / lambda_bracket(k - j, lam)
    rhs = coeff * phi(seq, n - k, y)
    return VerificationReport.build(
        "phi-partial",
        {"n": n, "k": k, "lam": lam, "x": seq.base_point, "y": y},
        lhs,
        rhs,
        identity_tol,
        {},
    )
