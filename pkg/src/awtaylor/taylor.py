"""Taylor polynomials on a node sequence, with finite and infinite remainders.

For an analytic f and a node sequence (z_t) the expansion reads

    f(x) = sum_{k=0}^n c_k prod_{j=0}^{k-1} (x - z_j) + R_n f(x),
    c_k  = d_k f(z_{k/2}),

where d_k is the normalized k-th divided difference whose node set, after
re-basing the sequence at z_{k/2}, is exactly {z_0, ..., z_k}.  The finite
remainder is the contour integral

    R_n f(x) = (1/2 pi i) oint f(y)/(y - x) prod_{j=0}^{n} (x-z_j)/(y-z_j) dy.

Two convergence regimes are implemented.  With bounded nodes (geometric with
|q| < 1, continuous) the partial sums converge on a disk, with the explicit
rate bound r M_r/(r - x) ((x + z)/(r - z))^{n+1}.  With nodes escaping to
infinity along a real half axis and sum 1/|z_k| finite, the limit of the
partial sums exists off that half plane boundary and the infinite remainder
is an integral over the imaginary axis against the ratio H(x)/H(y) of the
entire function H(x) = prod (1 - x/z_j).  The two divergent node products
are never formed individually; only their convergent ratio is.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .awop import (
    QUAD_TOL,
    AnalyticFunction,
    Contour,
    default_contour,
    partial_k_contour,
    partial_k_residues,
    residue_sum_scaled,
    trapezoid_circle,
    _check_enclosure,
    _ldexp_c,
    _renorm,
    _require_circle,
)
from .psequence import PSequence
from .qcore import ConvergenceError, DomainError, DEFAULT_TOL, Tolerances

MERGE_REL = 1e-8
AXIS_T_START = 64.0
AXIS_T_CAP = float(1 << 20)
SIMPSON_MAX_DEPTH = 48


@dataclass
class TaylorExpansion:
    """Node sequence plus coefficients c_k = d_k f(z_{k/2}), k = 0..order."""

    sequence: PSequence
    order: int
    coefficients: list[complex]

    def __post_init__(self):
        if len(self.coefficients) != self.order + 1:
            raise DomainError("need exactly order + 1 coefficients")

    def nodes(self) -> list[complex]:
        return [self.sequence.value(2 * j) for j in range(self.order + 1)]


def taylor_coefficients(
    f: AnalyticFunction,
    seq: PSequence,
    n: int,
    contour: Optional[Contour] = None,
    quad_tol: float = QUAD_TOL,
) -> TaylorExpansion:
    """Expansion coefficients c_k = d_k f(z_{k/2}) for k = 0..n.

    Each coefficient is a contour integral over the first k + 1 nodes,
    realized by re-basing the stored sequence k half steps along.  A single
    circle enclosing z_0..z_n serves every order; enclosing later nodes of
    the sequence is harmless since they are not poles of the integrand.
    """
    if n < 0:
        raise DomainError("expansion order must be nonnegative")
    nodes = [seq.value(2 * j) for j in range(n + 1)]
    if contour is None:
        contour = default_contour(nodes, f.domain)
    coeffs = [
        partial_k_contour(f, seq.shift(k), k, contour, quad_tol)
        for k in range(n + 1)
    ]
    return TaylorExpansion(seq, n, coeffs)


def taylor_eval(exp: TaylorExpansion, x: complex) -> complex:
    """Evaluate the partial sum sum_k c_k prod_{j<k} (x - z_j), nested form."""
    nodes = exp.nodes()
    acc = exp.coefficients[exp.order]
    for k in range(exp.order - 1, -1, -1):
        acc = exp.coefficients[k] + (x - nodes[k]) * acc
    return acc


def remainder_contour(
    f: AnalyticFunction,
    seq: PSequence,
    n: int,
    x: complex,
    contour: Optional[Contour] = None,
    quad_tol: float = QUAD_TOL,
) -> complex:
    """Finite remainder R_n f(x) as a contour integral enclosing x and the nodes."""
    nodes = [seq.value(2 * j) for j in range(n + 1)]
    if contour is None:
        contour = default_contour(nodes + [x], f.domain)
    _require_circle(contour)
    _check_enclosure(contour, nodes + [x])

    def g(y: complex) -> complex:
        acc = f(y) / (y - x)
        for z in nodes:
            acc *= (x - z) / (y - z)
        return acc

    value, _ = trapezoid_circle(g, contour.center, contour.radius, contour.nodes, quad_tol)
    return value


def remainder_bound(r: float, M_r: float, x_abs: float, z_sup: float, n: int) -> float:
    """Explicit decay bound r M_r/(r - x) ((x + z)/(r - z))^(n+1).

    Valid under the contour geometry r > x + 2 z, which makes the ratio
    strictly less than one.  With z = 0 this is the classical disk bound.
    """
    if not r > x_abs + 2.0 * z_sup:
        raise DomainError("bound needs contour radius r > x + 2 z")
    ratio = (x_abs + z_sup) / (r - z_sup)
    return r * M_r / (r - x_abs) * ratio ** (n + 1)


def _check_summable(seq: PSequence, samples: int = 48) -> list[complex]:
    """Require sum 1/|z_k| < infinity, judged on sampled node growth.

    The log-log slope of |z_k| over a doubling window must exceed one, which
    admits geometric and quadratic node growth and rejects constant and
    arithmetic sequences.
    """
    zs = [seq.value(2 * j) for j in range(samples)]
    k0, k1 = samples // 4, samples - 1
    a0, a1 = abs(zs[k0]), abs(zs[k1])
    if a0 == 0 or a1 == 0:
        raise DomainError("node sequence hits zero; sum 1/|z_k| diverges")
    slope = math.log(a1 / a0) / math.log(k1 / k0)
    if slope < 1.05:
        raise DomainError(
            "sum 1/|z_k| looks divergent: sampled nodes grow too slowly "
            f"(log-log slope {slope:.3f})"
        )
    return zs


def h_product(seq: PSequence, x: complex, tol: Tolerances | None = None) -> complex:
    """Entire function H(x) = prod_{j>=0} (1 - x/z_j) with zeros at the nodes.

    Truncated once |x/z_j| stays below series_tol with a geometric tail
    margin; requires summable reciprocal node moduli.
    """
    tol = tol or DEFAULT_TOL
    _check_summable(seq)
    prod = 1.0 + 0j
    small = 0
    for j in range(tol.max_terms):
        zj = seq.value(2 * j)
        ratio = x / zj
        prod *= 1.0 - ratio
        if prod == 0.0:
            return prod
        if abs(ratio) < tol.series_tol:
            small += 1
            if small >= 3:
                return prod
        else:
            small = 0
    raise ConvergenceError("H(x) truncation did not reach the tolerance")


def _h_ratio(seq: PSequence, x: complex, y: complex, tol: Tolerances) -> complex:
    """Convergent ratio H(x)/H(y) formed factor pair by factor pair."""
    prod = 1.0 + 0j
    small = 0
    for j in range(tol.max_terms):
        zj = seq.value(2 * j)
        rx = x / zj
        ry = y / zj
        den = 1.0 - ry
        if den == 0.0:
            raise DomainError("H(y) vanishes at a node of the sequence")
        prod *= (1.0 - rx) / den
        if prod == 0.0:
            return prod
        if abs(rx) + abs(ry) < tol.series_tol:
            small += 1
            if small >= 3:
                return prod
        else:
            small = 0
    raise ConvergenceError("H(x)/H(y) truncation did not reach the tolerance")


def _adaptive_simpson(
    g: Callable[[float], complex],
    a: float,
    b: float,
    tol: float,
) -> tuple[complex, int]:
    """Adaptive Simpson over a real interval for a complex integrand."""
    evals = 0

    def ev(t: float) -> complex:
        nonlocal evals
        evals += 1
        return g(t)

    def recurse(a, fa, m, fm, b, fb, whole, tol, depth) -> complex:
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm, frm = ev(lm), ev(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if depth <= 0:
            raise ConvergenceError("axis quadrature exceeded the depth cap")
        if abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        half = 0.5 * tol
        return recurse(a, fa, lm, flm, m, fm, left, half, depth - 1) + recurse(
            m, fm, rm, frm, b, fb, right, half, depth - 1
        )

    m = 0.5 * (a + b)
    fa, fm, fb = ev(a), ev(m), ev(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    value = recurse(a, fa, m, fm, b, fb, whole, tol, SIMPSON_MAX_DEPTH)
    return value, evals


@dataclass(frozen=True)
class InfiniteRemainder:
    """Value of the axis integral with its truncation diagnostics."""

    value: complex
    tail_error: float
    truncation: float
    evaluations: int


def remainder_infinite(
    f: AnalyticFunction,
    seq: PSequence,
    x: complex,
    half_plane: str = "left",
    quad_tol: float = 1e-8,
    tol: Tolerances | None = None,
) -> InfiniteRemainder:
    """Limit remainder (+-1)(1/2 pi i) int_{-iT}^{iT} f(y)/(y-x) H(x)/H(y) dy.

    Nodes must lie on the negative real axis with Re x < 0 (half_plane
    "left"), or mirrored on the positive axis with Re x > 0 and an overall
    minus sign ("right").  The truncation T doubles until the sampled
    integrand, which decays at least like (1 + |y|)^-2 once the node
    products take over, leaves a tail estimate 2 T |g(+-iT)| below the
    requested tolerance.  The integration grid is refined adaptively, with
    an initial split near t = Im x where the Cauchy factor peaks.
    """
    tol = tol or DEFAULT_TOL
    if half_plane not in ("left", "right"):
        raise DomainError("half_plane must be 'left' or 'right'")
    sign = 1.0 if half_plane == "left" else -1.0
    zs = _check_summable(seq)
    for z in zs[:24]:
        if abs(z.imag) > 1e-9 * (1.0 + abs(z)) or sign * z.real >= 0.0:
            raise DomainError(
                f"nodes must lie on the {'negative' if sign > 0 else 'positive'} real axis"
            )
    if sign * x.real >= 0.0:
        raise DomainError("x must lie strictly inside the matching half plane")

    def g(t: float) -> complex:
        y = 1j * t
        return f(y) / (y - x) * _h_ratio(seq, x, y, tol)

    if f.growth is not None:
        f.spot_check_growth([1j * t for t in (0.0, 7.0, -31.0)])

    t_cap = AXIS_T_CAP
    T = AXIS_T_START
    while True:
        tail = 2.0 * T * max(abs(g(T)), abs(g(-T))) / (2.0 * math.pi)
        if tail <= quad_tol:
            break
        if T >= t_cap:
            raise ConvergenceError(
                f"axis tail estimate {tail:.3g} still above tolerance at T = {T:.3g}"
            )
        T *= 2.0

    breaks = sorted({-T, T, max(-T, min(T, x.imag - 1.0)), max(-T, min(T, x.imag + 1.0))})
    total = 0j
    evals = 0
    for a, b in zip(breaks[:-1], breaks[1:]):
        if b - a <= 0:
            continue
        part, n = _adaptive_simpson(g, a, b, quad_tol * 2.0 * math.pi / 3.0)
        total += part
        evals += n
    value = sign * total / (2.0 * math.pi)
    return InfiniteRemainder(value, tail, T, evals)


@dataclass(frozen=True)
class TaylorLimit:
    """Stabilized partial-sum value and the number of terms that reached it."""

    value: complex
    terms: int


def _nodes_escape(seq: PSequence, horizon: int = 30) -> bool:
    """Whether sampled node moduli run off to infinity (the axis regime)."""
    z0 = abs(seq.value(0))
    zh = abs(seq.value(2 * horizon))
    return zh > 50.0 * (1.0 + z0)


def taylor_limit(
    f: AnalyticFunction,
    seq: PSequence,
    x: complex,
    tol: Tolerances | None = None,
    quad_tol: float = QUAD_TOL,
) -> TaylorLimit:
    """Partial sums of the expansion until five consecutive terms are negligible.

    Escaping node sequences (the integral-remainder regime) keep their nodes
    pairwise separated, where the residue form of the coefficients is both
    cheap and well conditioned.  Bounded sequences cluster, which ruins the
    residue denominators, so they use contour quadrature on one circle
    enclosing the whole sampled node set instead.
    """
    tol = tol or DEFAULT_TOL
    escaping = _nodes_escape(seq)
    contour = None
    if not escaping:
        sampled = [seq.value(2 * j) for j in range(64)]
        contour = default_contour(sampled, f.domain)
    total = 0j
    prod_m, prod_e = 1.0 + 0j, 0  # scaled running product of (x - z_j)
    small = 0
    growing = 0
    last_mag = math.inf
    nodes: list[complex] = []
    for k in range(tol.max_terms):
        nodes.append(seq.value(2 * k))
        if escaping and k > 0:
            # scaled arithmetic: the raw residue denominators overflow once
            # a few dozen geometrically growing nodes are in play
            ck_m, ck_e = residue_sum_scaled(f, nodes)
            term = _ldexp_c(ck_m * prod_m, ck_e + prod_e)
        else:
            ck = partial_k_contour(f, seq.shift(k), k, contour, quad_tol)
            term = _ldexp_c(ck * prod_m, prod_e)
        total += term
        mag = abs(term)
        if mag <= tol.series_tol * max(1.0, abs(total)):
            small += 1
            if small >= 5:
                return TaylorLimit(total, k + 1)
        else:
            small = 0
        # persistent term growth past a warm-up means x lies outside the
        # region of convergence; bail out before max_terms grinds away
        growing = growing + 1 if mag > last_mag else 0
        if k > 30 and growing >= 25:
            raise ConvergenceError("partial sums diverge at this point")
        last_mag = mag
        prod_m, prod_e = _renorm(prod_m * (x - nodes[k]), prod_e)
    raise ConvergenceError("partial sums did not stabilize within max_terms")
