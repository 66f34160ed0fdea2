"""Quadratic symmetric polynomials and the node sequences they generate.

A normalized quadratic symmetric polynomial

    P(x, y) = x^2 + y^2 - 2 a x y - 2 b (x + y) + c

factors in its second argument as P(x, y) = y^2 - 2 A(x) y + B(x) with
A(x) = a x + b and B(x) = x^2 - 2 b x + c.  A node sequence for P is a
bi-infinite family (x_t), t in half-integers, with

    P(x_t, y) = (y - x_{t+1/2}) (y - x_{t-1/2})   for every t,

generated by x_{t +- 1/2} = A(x_t) +- sqrt(delta(x_t)) where delta = A^2 - B.
Five canonical families cover all affine orbits:

    T (trigonometric)  x_t = (lam^{2t} u + lam^{-2t} u^{-1}) / 2
    G (geometric)      x_t = lam^{2t} u
    Q (quadratic)      x_t = (t + u)^2
    A (arithmetic)     x_t = t + u
    C (continuous)     x_t = u

with a = (lam + 1/lam)/2 and base q = lam^2 for the first two.  Half-integer
indices are stored as integer counts of half steps throughout, so lam^{2t}
is always an integer power of lam and no fractional powers appear.
"""

from __future__ import annotations

import cmath
import threading
from dataclasses import dataclass, field
from typing import Optional, Union

from .qcore import DomainError

_STEP_CAP = 2_000_000  # half steps; |t| <= 10^6 by recurrence


@dataclass(frozen=True)
class QuadraticSymmetricPolynomial:
    """Coefficients (a, b, c) of P(x,y) = x^2 + y^2 - 2axy - 2b(x+y) + c."""

    a: complex
    b: complex
    c: complex

    def A(self, x: complex) -> complex:
        return self.a * x + self.b

    def B(self, x: complex) -> complex:
        return x * x - 2.0 * self.b * x + self.c

    def discriminant(self, x: complex) -> complex:
        """delta(x) = A(x)^2 - B(x), the discriminant of P(x, .) / 4."""
        ax = self.A(x)
        return ax * ax - self.B(x)

    def __call__(self, x: complex, y: complex) -> complex:
        return y * y - 2.0 * self.A(x) * y + self.B(x)

    @property
    def lam(self) -> complex:
        """A root lam of a = (lam + 1/lam)/2; the other root is 1/lam."""
        return self.a + cmath.sqrt(self.a * self.a - 1.0)

    @property
    def q(self) -> complex:
        lam = self.lam
        return lam * lam


_CANONICAL_TAGS = ("T", "G", "Q", "A", "C")


@dataclass(frozen=True)
class CanonicalForm:
    """One of the five canonical families, with its base parameter u.

    Forms T and G carry lam (nonzero, not +-1 so that a != +-1); the base is
    q = lam^2.  Forms Q, A, C have a = 1 and lam = 1.
    """

    tag: str
    u: complex
    lam: complex = 1.0

    def __post_init__(self):
        if self.tag not in _CANONICAL_TAGS:
            raise DomainError(f"unknown canonical tag {self.tag!r}")
        if self.tag in ("T", "G"):
            if self.lam == 0:
                raise DomainError("forms T and G require lam != 0")
            if self.lam in (1, -1, 1.0, -1.0):
                raise DomainError("forms T and G require a != +-1, i.e. lam != +-1")
        if self.tag in ("T", "G") and self.u == 0:
            raise DomainError("forms T and G require u != 0")

    @classmethod
    def from_q(cls, tag: str, u: complex, q: complex) -> "CanonicalForm":
        """Build a form taking lam as the principal square root of q."""
        if tag in ("T", "G"):
            return cls(tag, u, cmath.sqrt(q))
        return cls(tag, u)

    @property
    def q(self) -> complex:
        return self.lam * self.lam

    def polynomial(self) -> QuadraticSymmetricPolynomial:
        if self.tag in ("T", "G"):
            a = (self.lam + 1.0 / self.lam) / 2.0
            c = a * a - 1.0 if self.tag == "T" else 0.0
            return QuadraticSymmetricPolynomial(a, 0.0, c)
        if self.tag == "Q":
            return QuadraticSymmetricPolynomial(1.0, 0.25, 0.0625)
        if self.tag == "A":
            return QuadraticSymmetricPolynomial(1.0, 0.0, -0.25)
        return QuadraticSymmetricPolynomial(1.0, 0.0, 0.0)

    def value(self, halfsteps: int) -> complex:
        """Node at t = halfsteps / 2 by the closed form."""
        u = self.u
        if self.tag == "T":
            lh = self.lam**halfsteps
            return (lh * u + 1.0 / (lh * u)) / 2.0
        if self.tag == "G":
            return (self.lam**halfsteps) * u
        if self.tag == "Q":
            s = halfsteps / 2.0 + u
            return s * s
        if self.tag == "A":
            return halfsteps / 2.0 + u
        return complex(u)


def psequence_step(
    P: QuadraticSymmetricPolynomial, x: complex, sign: int
) -> complex:
    """One half step A(x) + sign * sqrt(delta(x)) with the principal root.

    A vanishing discriminant yields a double point; both signs coincide.
    """
    return P.A(x) + sign * cmath.sqrt(P.discriminant(x))


class PSequence:
    """A node sequence, canonical closed form or recurrence driven.

    For a raw polynomial source the first half step fixes the branch; every
    later point follows from the two-term recurrence x[h+1] = 2 A(x[h]) -
    x[h-1], which is the sum relation of the two roots of P(x_h, .) and
    removes any further square-root tracking.  Values are cached; the cache
    is extended under a lock so concurrent readers are safe.

    shift(h) re-bases the sequence h half steps along, sharing the cache.
    """

    def __init__(
        self,
        polynomial: QuadraticSymmetricPolynomial,
        base_point: complex,
        branch: int = 1,
        canonical: Optional[CanonicalForm] = None,
        offset: int = 0,
        _shared_state: Optional[dict] = None,
    ):
        if branch not in (1, -1):
            raise DomainError("branch must be +1 or -1")
        self.polynomial = polynomial
        self.branch = branch
        self.canonical = canonical
        self.offset = offset
        if canonical is None:
            if _shared_state is None:
                _shared_state = {
                    "values": {0: complex(base_point)},
                    "lo": 0,
                    "hi": 0,
                    "lock": threading.Lock(),
                }
            self._state = _shared_state
        else:
            self._state = None

    @classmethod
    def from_canonical(cls, form: CanonicalForm, offset: int = 0) -> "PSequence":
        return cls(form.polynomial(), form.value(offset), canonical=form, offset=offset)

    @classmethod
    def from_polynomial(
        cls,
        P: QuadraticSymmetricPolynomial,
        base_point: complex,
        branch: int = 1,
    ) -> "PSequence":
        return cls(P, base_point, branch=branch)

    @property
    def base_point(self) -> complex:
        return self.value(0)

    @property
    def lam(self) -> complex:
        if self.canonical is not None:
            return self.canonical.lam
        return self.polynomial.lam

    def shift(self, halfsteps: int) -> "PSequence":
        return PSequence(
            self.polynomial,
            0.0,
            branch=self.branch,
            canonical=self.canonical,
            offset=self.offset + halfsteps,
            _shared_state=self._state,
        )

    def value(self, halfsteps: int) -> complex:
        h = halfsteps + self.offset
        if self.canonical is not None:
            return self.canonical.value(h)
        if abs(h) > _STEP_CAP:
            raise DomainError(f"recurrence index {h} exceeds the step cap")
        state = self._state
        vals = state["values"]
        if h in vals:
            return vals[h]
        with state["lock"]:
            self._extend(h)
            return vals[h]

    def _extend(self, h: int) -> None:
        state = self._state
        vals = state["values"]
        P = self.polynomial
        if state["hi"] == 0 and state["lo"] == 0 and h != 0:
            vals[1] = psequence_step(P, vals[0], self.branch)
            state["hi"] = 1
        while state["hi"] < h:
            k = state["hi"]
            vals[k + 1] = 2.0 * P.A(vals[k]) - vals[k - 1]
            state["hi"] = k + 1
        while state["lo"] > h:
            k = state["lo"]
            vals[k - 1] = 2.0 * P.A(vals[k]) - vals[k + 1]
            state["lo"] = k - 1


def psequence_value(seq: PSequence, halfsteps: int) -> complex:
    """Node at t = halfsteps / 2."""
    return seq.value(halfsteps)


def phi(seq: PSequence, k: int, y: complex) -> complex:
    """Monic interpolation polynomial of degree k centred on the base point.

    phi_0 = 1 and phi_k(x, y) = prod_{j=0}^{k-1} (y - x_{j - (k-1)/2}), i.e.
    the node indices run symmetrically through -(k-1)/2, ..., (k-1)/2.  The
    value does not depend on the branch used to build the sequence.
    """
    if k < 0:
        raise DomainError("phi order must be nonnegative")
    prod = complex(1.0)
    for j in range(k):
        prod *= y - seq.value(2 * j - (k - 1))
    return prod


def lambda_bracket(k: int, lam: complex) -> complex:
    """Base-lam integer (lam^k - lam^-k) / (lam - 1/lam).

    Near lam = +-1 the quotient degenerates and the limit k * sigma^(k-1)
    is returned instead.
    """
    if lam == 0:
        raise DomainError("lambda_bracket requires lam != 0")
    lam = complex(lam)
    if abs(lam - 1.0) < 1e-8:
        return complex(k)
    if abs(lam + 1.0) < 1e-8:
        return complex(k * (-1) ** (k - 1))
    return (lam**k - lam**-k) / (lam - 1.0 / lam)
