"""Divided differences, the Askey-Wilson operator, and its normalized iterates.

The operator sends f to the divided difference of f at the two roots
A(x) +- sqrt(delta(x)) of P(x, .).  Its k-th iterate factors as

    D^k f(x) = ( prod_{j=0}^{k-1} [k-j]_lam ) * d_k f(x),

where [m]_lam is the base-lam integer and d_k is the normalized k-th order
divided difference

    d_k f(x) = (1 / 2 pi i) oint f(y) / phi_{k+1}(x, y) dy

over any cycle of index one around the k+1 nodes x_{j - k/2}.  Contour
integrals are evaluated with the periodic trapezoid rule on circles, which
is spectrally accurate for analytic integrands, with node doubling until two
successive estimates agree.  When nodes are pairwise distinct the same
quantity is a plain residue sum; both routes are exposed so each can serve
as the oracle for the other.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .psequence import PSequence, QuadraticSymmetricPolynomial, lambda_bracket
from .qcore import ConvergenceError, DomainError, EnclosureError

QUAD_TOL = 1e-12
MAX_CIRCLE_NODES = 1 << 16
MERGE_REL = 1e-8
ITERATE_CAP = 12


@dataclass(frozen=True)
class Domain:
    """Analyticity descriptor: a disk about 0, a closed half plane, or all of C."""

    kind: str = "entire"  # entire | disk | left | right
    radius: float = math.inf

    def __post_init__(self):
        if self.kind not in ("entire", "disk", "left", "right"):
            raise DomainError(f"unknown domain kind {self.kind!r}")
        if self.kind == "disk" and not self.radius > 0:
            raise DomainError("disk domain needs a positive radius")

    @classmethod
    def entire(cls) -> "Domain":
        return cls("entire")

    @classmethod
    def disk(cls, radius: float) -> "Domain":
        return cls("disk", radius)

    @classmethod
    def left_half_plane(cls) -> "Domain":
        return cls("left")

    @classmethod
    def right_half_plane(cls) -> "Domain":
        return cls("right")

    def contains(self, z: complex) -> bool:
        if self.kind == "entire":
            return True
        if self.kind == "disk":
            return abs(z) < self.radius
        if self.kind == "left":
            return z.real <= 0.0
        return z.real >= 0.0

    def max_circle_radius(self, center: complex) -> float:
        """Largest circle radius about center that stays inside the domain."""
        if self.kind == "entire":
            return math.inf
        if self.kind == "disk":
            return self.radius - abs(center)
        if self.kind == "left":
            return -center.real
        return center.real


@dataclass
class AnalyticFunction:
    """An evaluatable analytic function with a domain and optional growth tag.

    growth = (C, M) asserts |f(z)| <= C (1 + |z|)^M on the domain; it is only
    spot checked (softly, with a warning) where a computation relies on it.
    """

    fn: Callable[[complex], complex]
    domain: Domain = field(default_factory=Domain.entire)
    growth: Optional[tuple[float, float]] = None

    def __call__(self, z: complex) -> complex:
        return self.fn(z)

    def spot_check_growth(self, points: Sequence[complex]) -> None:
        if self.growth is None:
            return
        c, m = self.growth
        for z in points:
            bound = c * (1.0 + abs(z)) ** m
            if abs(self.fn(z)) > 3.0 * bound:
                warnings.warn(
                    f"declared growth bound violated near z={z:.3g}: "
                    f"|f| = {abs(self.fn(z)):.3g} vs C(1+|z|)^M = {bound:.3g}",
                    stacklevel=2,
                )
                return


def polynomial_fn(coeffs: Sequence[complex]) -> AnalyticFunction:
    """Entire polynomial sum_k coeffs[k] z^k."""
    cs = [complex(c) for c in coeffs]

    def f(z: complex) -> complex:
        acc = 0j
        for c in reversed(cs):
            acc = acc * z + c
        return acc

    return AnalyticFunction(f, Domain.entire())


def rational_fn(
    poles: Sequence[complex],
    weights: Optional[Sequence[complex]] = None,
    const: complex = 0.0,
) -> AnalyticFunction:
    """Sum of simple poles const + sum_j w_j / (z - p_j), entire elsewhere.

    The domain is declared entire; keeping contours away from the poles is
    the caller's responsibility.
    """
    ps = [complex(p) for p in poles]
    ws = [complex(w) for w in weights] if weights is not None else [1.0 + 0j] * len(ps)
    if len(ws) != len(ps):
        raise DomainError("one weight per pole")

    def f(z: complex) -> complex:
        return const + sum(w / (z - p) for w, p in zip(ws, ps))

    return AnalyticFunction(f, Domain.entire())


def exp_fn() -> AnalyticFunction:
    return AnalyticFunction(cmath.exp, Domain.entire())


@dataclass(frozen=True)
class Contour:
    """A circle (center, radius) or a truncated imaginary axis segment."""

    kind: str = "circle"  # circle | imaginary_axis
    center: complex = 0.0
    radius: float = 1.0
    truncation: float = 0.0
    nodes: int = 64

    def __post_init__(self):
        if self.kind not in ("circle", "imaginary_axis"):
            raise DomainError(f"unknown contour kind {self.kind!r}")
        if self.kind == "circle" and not self.radius > 0:
            raise DomainError("circle contour needs a positive radius")
        if self.kind == "imaginary_axis" and not self.truncation > 0:
            raise DomainError("axis contour needs a positive truncation")
        if self.nodes < 16:
            raise DomainError("contour needs at least 16 nodes")


def circle_contour(center: complex, radius: float, nodes: int = 64) -> Contour:
    return Contour("circle", complex(center), float(radius), nodes=nodes)


def trapezoid_circle(
    g: Callable[[complex], complex],
    center: complex,
    radius: float,
    start_nodes: int = 64,
    quad_tol: float = QUAD_TOL,
    max_nodes: Optional[int] = None,
    pass_offset: bool = False,
) -> tuple[complex, int]:
    """(1/2 pi i) oint g(y) dy over the circle, by node-doubling trapezoid.

    Returns (value, nodes_used).  Summation order is ascending node index so
    results are reproducible.  With pass_offset the integrand receives the
    offset radius * w instead of center + radius * w, which matters on tiny
    circles where adding the center would wash out the offset.  max_nodes
    falls back to the module-level cap, which callers may lower.
    """
    if max_nodes is None:
        max_nodes = MAX_CIRCLE_NODES

    def estimate(n: int) -> tuple[complex, float]:
        acc = 0j
        gmax = 0.0
        for j in range(n):
            w = cmath.exp(2j * math.pi * j / n)
            arg = radius * w if pass_offset else center + radius * w
            val = g(arg)
            a = abs(val)
            if a > gmax:
                gmax = a
            acc += val * w
        return acc * (radius / n), gmax

    n = max(16, start_nodes)
    prev, _ = estimate(n)
    while n < max_nodes:
        n *= 2
        cur, gmax = estimate(n)
        # the summation cannot resolve below roundoff of its largest terms
        floor = 32.0 * 2.2e-16 * radius * gmax
        if abs(cur - prev) <= quad_tol * max(1.0, abs(cur)) + floor:
            return cur, n
        prev = cur
    raise ConvergenceError(
        f"circle quadrature did not settle within {max_nodes} nodes"
    )


def default_contour(
    points: Sequence[complex],
    domain: Domain,
    nodes: int = 64,
) -> Contour:
    """Index-one circle around the given points, clipped to the domain.

    The radius rule is 1.5 x the largest distance from the centroid of the
    bounding box plus 1; if the domain clips it below what is needed to
    enclose every point, the enclosure fails.
    """
    pts = [complex(p) for p in points]
    if not pts:
        raise DomainError("need at least one point to enclose")
    re = [p.real for p in pts]
    im = [p.imag for p in pts]
    center = complex((min(re) + max(re)) / 2.0, (min(im) + max(im)) / 2.0)
    spread = max(abs(p - center) for p in pts)
    radius = 1.5 * spread + 1.0
    cap = domain.max_circle_radius(center)
    if radius > cap:
        radius = cap * (1.0 - 1e-12)
    if radius <= spread * (1.0 + 1e-12) or radius <= 0:
        raise EnclosureError(
            "cannot enclose the nodes with a circle inside the declared domain"
        )
    return circle_contour(center, radius, nodes)


def _require_circle(contour: Contour) -> None:
    if contour.kind != "circle":
        raise DomainError("this operation requires a circle contour")


def _check_enclosure(contour: Contour, points: Sequence[complex]) -> None:
    guard = 1e-9 * (1.0 + contour.radius)
    for p in points:
        d = abs(p - contour.center)
        if abs(d - contour.radius) <= guard:
            raise ConvergenceError("node lies on the quadrature contour")
        if d > contour.radius:
            raise EnclosureError("contour does not enclose all required points")


def divided_difference(
    f: AnalyticFunction,
    u: complex,
    v: complex,
    quad_tol: float = QUAD_TOL,
) -> complex:
    """First order divided difference (f(u) - f(v)) / (u - v).

    Coincident or nearly coincident points switch to the contour form
    (1/2 pi i) oint f(y) / ((y-u)(y-v)) dy over a small circle around both,
    avoiding the cancellation of the raw quotient near the diagonal.
    """
    if not (f.domain.contains(u) and f.domain.contains(v)):
        raise DomainError("divided difference points lie outside the domain")
    sep = abs(u - v)
    if sep >= MERGE_REL * (1.0 + abs(u) + abs(v)):
        return (f(u) - f(v)) / (u - v)
    center = (u + v) / 2.0
    radius = 10.0 * sep + 1e-6
    if f.domain.max_circle_radius(center) <= radius:
        raise DomainError("merge contour leaves the declared domain")
    # work in offsets from the midpoint: du, dv are exact halves of u - v,
    # so the near-diagonal pole factors carry no subtraction noise
    du = (u - v) / 2.0
    dv = -du

    def g(d: complex) -> complex:
        return f(center + d) / ((d - du) * (d - dv))

    value, _ = trapezoid_circle(g, center, radius, 64, quad_tol, pass_offset=True)
    return value


def aw_apply(
    P: QuadraticSymmetricPolynomial,
    f: AnalyticFunction,
    x: complex,
    quad_tol: float = QUAD_TOL,
) -> complex:
    """Askey-Wilson operator: divided difference of f at the roots of P(x, .)."""
    root = cmath.sqrt(P.discriminant(x))
    a = P.A(x)
    return divided_difference(f, a + root, a - root, quad_tol)


def aw_iterate(
    P: QuadraticSymmetricPolynomial,
    f: AnalyticFunction,
    x: complex,
    k: int,
    quad_tol: float = QUAD_TOL,
) -> complex:
    """k-th operator iterate by full binary recursion (2^k leaf evaluations).

    Every evaluation point of the recursion tree is checked against the
    declared domain, which realizes the nested domain sets operationally.
    When the two child points of a level coincide (vanishing discriminant,
    e.g. the continuous form) the remaining depth collapses to a single
    contour around the node set there; nesting tiny merge circles would
    amplify evaluation noise by the inverse square of their radius.
    """
    if k < 0:
        raise DomainError("iterate order must be nonnegative")
    if k > ITERATE_CAP:
        raise DomainError(f"iterate order above {ITERATE_CAP} rejected (2^k cost)")
    if k == 0:
        if not f.domain.contains(x):
            raise DomainError("evaluation point outside the domain")
        return f(x)
    root = cmath.sqrt(P.discriminant(x))
    a = P.A(x)
    up, dn = a + root, a - root
    if abs(up - dn) < MERGE_REL * (1.0 + abs(up) + abs(dn)):
        seq = PSequence.from_polynomial(P, x, 1)
        return dk_coefficient(k, P.lam) * partial_k_contour(f, seq, k, None, quad_tol)
    inner = AnalyticFunction(
        lambda w: aw_iterate(P, f, w, k - 1, quad_tol), f.domain
    )
    return divided_difference(inner, up, dn, quad_tol)


def partial_k_contour(
    f: AnalyticFunction,
    seq: PSequence,
    k: int,
    contour: Optional[Contour] = None,
    quad_tol: float = QUAD_TOL,
) -> complex:
    """Normalized k-th divided difference by contour quadrature.

    Integrates f(y) / phi_{k+1}(x, y) over a circle of index one around the
    nodes x_{j - k/2}, j = 0..k, of the sequence based at x.
    """
    if k < 0:
        raise DomainError("order must be nonnegative")
    nodes = [seq.value(2 * j - k) for j in range(k + 1)]
    if contour is None:
        contour = default_contour(nodes, f.domain)
    _require_circle(contour)
    _check_enclosure(contour, nodes)

    def g(y: complex) -> complex:
        den = 1.0 + 0j
        for z in nodes:
            den *= y - z
        return f(y) / den

    value, _ = trapezoid_circle(
        g, contour.center, contour.radius, contour.nodes, quad_tol
    )
    return value


def partial_k_residues(
    f: AnalyticFunction,
    nodes: Sequence[complex],
    k: Optional[int] = None,
) -> complex:
    """Normalized k-th divided difference as a residue sum over distinct nodes.

    sum_j f(z_j) / prod_{i != j} (z_j - z_i); the Newton coefficient form.
    """
    zs = [complex(z) for z in nodes]
    if k is not None and len(zs) != k + 1:
        raise DomainError("need exactly k + 1 nodes")
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            pair_scale = 1.0 + abs(zs[i]) + abs(zs[j])
            if abs(zs[i] - zs[j]) <= MERGE_REL * pair_scale:
                raise DomainError("residue form needs pairwise distinct nodes")
    total = 0j
    for j, zj in enumerate(zs):
        den = 1.0 + 0j
        for i, zi in enumerate(zs):
            if i != j:
                den *= zj - zi
        total += f(zj) / den
    return total


def _renorm(m: complex, e: int) -> tuple[complex, int]:
    """Pull the binary exponent of m into e, keeping the mantissa moderate."""
    am = abs(m)
    if am == 0.0 or not math.isfinite(am):
        return m, e
    shift = math.frexp(am)[1]
    if abs(shift) > 256:
        m = complex(math.ldexp(m.real, -shift), math.ldexp(m.imag, -shift))
        e += shift
    return m, e


def _ldexp_c(m: complex, e: int) -> complex:
    if m == 0.0:
        return 0j
    if e > 4000:
        return complex(math.inf, math.inf)
    if e < -4000:
        return 0j
    return complex(math.ldexp(m.real, e), math.ldexp(m.imag, e))


def residue_sum_scaled(
    f: AnalyticFunction, nodes: Sequence[complex]
) -> tuple[complex, int]:
    """Residue-form divided difference as (mantissa, base-2 exponent).

    Keeps working for node sets whose pairwise-difference products overflow
    doubles, e.g. forty geometrically growing nodes.
    """
    zs = [complex(z) for z in nodes]
    summands: list[tuple[complex, int]] = []
    for j, zj in enumerate(zs):
        den = 1.0 + 0j
        e_den = 0
        for i, zi in enumerate(zs):
            if i != j:
                den *= zj - zi
                den, e_den = _renorm(den, e_den)
        if den == 0.0:
            raise DomainError("residue form needs pairwise distinct nodes")
        sm, se = _renorm(f(zj) / den, -e_den)
        summands.append((sm, se))
    top = max(se for sm, se in summands if sm != 0.0) if any(
        sm != 0.0 for sm, _ in summands
    ) else 0
    total = 0j
    for sm, se in summands:
        total += _ldexp_c(sm, se - top)
    return _renorm(total, top)


def dk_coefficient(k: int, lam: complex) -> complex:
    """prod_{j=0}^{k-1} [k - j]_lam, the factor linking D^k to the normalized
    divided difference.  Degenerates to k! at lam = +-1 up to sign."""
    if lam == 0:
        raise DomainError("coefficient requires lam != 0")
    prod = 1.0 + 0j
    for m in range(1, k + 1):
        prod *= lambda_bracket(m, lam)
    return prod
