from __future__ import annotations

import cmath
import math
import random

import pytest

from awtaylor.psequence import (
    CanonicalForm,
    PSequence,
    QuadraticSymmetricPolynomial,
    lambda_bracket,
    phi,
    psequence_step,
    psequence_value,
)
from awtaylor.qcore import DomainError


def randc(rng: random.Random, rmax: float = 1.0, rmin: float = 0.0) -> complex:
    r = rng.uniform(rmin, rmax)
    return r * cmath.exp(2j * math.pi * rng.random())


def random_form(rng: random.Random, tag: str) -> CanonicalForm:
    if tag in ("T", "G"):
        lam = randc(rng, 0.9, 0.35)
        return CanonicalForm(tag, randc(rng, 1.5, 0.4), lam)
    return CanonicalForm(tag, randc(rng, 1.5, 0.2))


def test_polynomial_symmetry_and_factoring():
    rng = random.Random(3)
    for _ in range(20):
        P = QuadraticSymmetricPolynomial(randc(rng, 2), randc(rng, 2), randc(rng, 2))
        x, y = randc(rng, 3), randc(rng, 3)
        direct = x * x + y * y - 2 * P.a * x * y - 2 * P.b * (x + y) + P.c
        assert abs(P(x, y) - direct) < 1e-12 * max(1.0, abs(direct))
        assert abs(P(x, y) - P(y, x)) < 1e-12 * max(1.0, abs(direct))
        delta = (P.a**2 - 1) * x**2 + 2 * P.b * (P.a + 1) * x + P.b**2 - P.c
        assert abs(P.discriminant(x) - delta) < 1e-11 * max(1.0, abs(delta))


def test_step_continuous_is_identity():
    P = CanonicalForm("C", 0.7).polynomial()
    for x in (0.3, 1.5 - 2j, -4.0):
        assert psequence_step(P, x, 1) == pytest.approx(x)
        assert psequence_step(P, x, -1) == pytest.approx(x)


def test_step_arithmetic_is_half():
    P = CanonicalForm("A", 0.0).polynomial()
    x = 1.25 - 0.5j
    assert psequence_step(P, x, 1) == pytest.approx(x + 0.5)
    assert psequence_step(P, x, -1) == pytest.approx(x - 0.5)


def test_step_geometric_scales():
    # one half step multiplies the node by lam or 1/lam, branch dependent
    form = CanonicalForm("G", 0.8, 0.6)
    P = form.polynomial()
    lam = form.lam
    stepped = psequence_step(P, form.u, 1)
    assert min(abs(stepped - lam * form.u), abs(stepped - form.u / lam)) < 1e-12


def test_closed_forms():
    q = 0.49
    g = CanonicalForm.from_q("G", 1.0, q)
    assert abs(g.value(6) - q**3) < 1e-14  # t = 3
    c = CanonicalForm("C", 2.5 + 1j)
    assert c.value(9) == 2.5 + 1j
    qd = CanonicalForm("Q", 2.0)
    assert qd.value(2) == pytest.approx(9.0)  # (1 + 2)^2


def test_sequence_defining_property_all_forms():
    rng = random.Random(11)
    for tag in ("T", "G", "Q", "A", "C"):
        form = random_form(rng, tag)
        seq = PSequence.from_canonical(form)
        P = form.polynomial()
        for h in (-5, -2, 0, 1, 6):
            xt = seq.value(h)
            up = seq.value(h + 1)
            dn = seq.value(h - 1)
            y = randc(rng, 2.0)
            lhs = P(xt, y)
            rhs = (y - up) * (y - dn)
            assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(lhs))


def test_closed_form_matches_recurrence():
    rng = random.Random(17)
    for tag in ("T", "G", "Q", "A", "C"):
        form = random_form(rng, tag)
        seq = PSequence.from_canonical(form)
        P = form.polynomial()
        # recover the branch of the closed form at the first half step
        first = seq.value(1)
        plus = psequence_step(P, form.value(0), 1)
        branch = 1 if abs(first - plus) < abs(first - psequence_step(P, form.value(0), -1)) else -1
        raw = PSequence.from_polynomial(P, form.value(0), branch)
        for h in range(-40, 41):
            a, b = seq.value(h), raw.value(h)
            assert abs(a - b) < 1e-8 * max(1.0, abs(a)), (tag, h)


def test_phi_trivials():
    rng = random.Random(19)
    form = random_form(rng, "G")
    seq = PSequence.from_canonical(form)
    y = randc(rng, 2.0)
    assert phi(seq, 0, y) == 1.0
    assert abs(phi(seq, 1, y) - (y - seq.base_point)) < 1e-14


def test_phi_degree_two_is_polynomial():
    rng = random.Random(23)
    for _ in range(15):
        P = QuadraticSymmetricPolynomial(randc(rng, 1.5), randc(rng, 1.0), randc(rng, 1.0))
        x0 = randc(rng, 2.0)
        seq = PSequence.from_polynomial(P, x0, 1)
        y = randc(rng, 2.0)
        assert abs(phi(seq, 2, y) - P(x0, y)) < 1e-9 * max(1.0, abs(P(x0, y)))


def test_phi_branch_independence():
    rng = random.Random(29)
    for _ in range(15):
        P = QuadraticSymmetricPolynomial(randc(rng, 1.5), randc(rng, 1.0), randc(rng, 1.0))
        x0 = randc(rng, 2.0)
        if abs(P.discriminant(x0)) < 1e-6:
            continue
        sp = PSequence.from_polynomial(P, x0, 1)
        sm = PSequence.from_polynomial(P, x0, -1)
        y = randc(rng, 2.0)
        for k in range(13):
            a, b = phi(sp, k, y), phi(sm, k, y)
            assert abs(a - b) < 1e-8 * max(1.0, abs(a)), k


def test_node_spread_ratio_identity():
    # (x_{k/2} - x_{-k/2}) / (x_{1/2} - x_{-1/2}) equals the base-lam integer
    rng = random.Random(31)
    for tag in ("T", "G"):
        for _ in range(10):
            form = random_form(rng, tag)
            seq = PSequence.from_canonical(form)
            denom = seq.value(1) - seq.value(-1)
            if abs(denom) < 1e-9:
                continue
            for k in range(1, 16):
                lhs = (seq.value(k) - seq.value(-k)) / denom
                # closed form runs through lam^k; either root convention works
                br = lambda_bracket(k, form.lam)
                assert abs(lhs - br) < 1e-9 * max(1.0, abs(br)), (tag, k)


def test_trig_difference_factorization():
    # squares of both sides agree; the roots themselves are sign-ambiguous
    rng = random.Random(37)
    for _ in range(20):
        zeta = randc(rng, 2.0, 0.2)
        eta = randc(rng, 2.0, 0.2)
        lhs = (zeta + 1 / zeta) / 2 - (eta + 1 / eta) / 2
        prod = zeta * eta
        quot = zeta / eta
        rhs_sq = (
            (prod + 1 / prod - 2.0) * (quot + 1 / quot - 2.0) / 4.0
        )  # ((s - 1/s)(t - 1/t)/2)^2 expanded through s^2 = prod, t^2 = quot
        assert abs(lhs * lhs - rhs_sq) < 1e-10 * max(1.0, abs(rhs_sq))


def test_lambda_bracket_values():
    assert lambda_bracket(7, 1.0) == 7
    assert lambda_bracket(1, 0.3 + 0.1j) == pytest.approx(1.0)
    assert lambda_bracket(3, 2.0) == pytest.approx(5.25)  # (8 - 1/8) / (2 - 1/2)
    assert lambda_bracket(4, -1.0) == pytest.approx(-4.0)
    with pytest.raises(DomainError):
        lambda_bracket(2, 0.0)


def test_lambda_bracket_near_one_continuity():
    for k in range(1, 9):
        close = lambda_bracket(k, 1.0 + 1e-9)
        assert abs(close - k) < 1e-6


def test_canonical_validation():
    with pytest.raises(DomainError):
        CanonicalForm("T", 1.0, 1.0)
    with pytest.raises(DomainError):
        CanonicalForm("G", 1.0, 0.0)
    with pytest.raises(DomainError):
        CanonicalForm("X", 1.0)


def test_shift_rebases():
    form = CanonicalForm.from_q("G", 2.0, 0.25)
    seq = PSequence.from_canonical(form)
    shifted = seq.shift(3)
    for h in range(-4, 5):
        assert shifted.value(h) == pytest.approx(seq.value(h + 3))


def test_step_cap():
    P = CanonicalForm("A", 0.0).polynomial()
    seq = PSequence.from_polynomial(P, 0.0, 1)
    with pytest.raises(DomainError):
        psequence_value(seq, 2_000_001)
