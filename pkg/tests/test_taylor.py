from __future__ import annotations

import cmath
import math
import random

import pytest

from awtaylor.awop import (
    AnalyticFunction,
    Domain,
    circle_contour,
    exp_fn,
    partial_k_residues,
    polynomial_fn,
    rational_fn,
)
from awtaylor.psequence import CanonicalForm, PSequence
from awtaylor.qcore import ConvergenceError, DomainError, Tolerances, q_pochhammer_inf
from awtaylor.taylor import (
    TaylorExpansion,
    h_product,
    remainder_bound,
    remainder_contour,
    remainder_infinite,
    taylor_coefficients,
    taylor_eval,
    taylor_limit,
)


def randc(rng: random.Random, rmax: float = 1.0, rmin: float = 0.0) -> complex:
    return rng.uniform(rmin, rmax) * cmath.exp(2j * math.pi * rng.random())


def growing_negative_seq(q: float = 0.5, xi: float = -1.0) -> PSequence:
    # geometric nodes xi, xi/q, xi/q^2, ... marching down the negative axis
    return PSequence.from_canonical(CanonicalForm("G", xi, 1.0 / math.sqrt(q)))


def test_taylor_eval_trivials():
    form = CanonicalForm.from_q("G", 0.4, 0.25)
    seq = PSequence.from_canonical(form)
    exp0 = TaylorExpansion(seq, 0, [2.5 + 1j])
    assert taylor_eval(exp0, 123.0) == 2.5 + 1j
    exp2 = TaylorExpansion(seq, 2, [1.0, 2.0, 3.0])
    assert taylor_eval(exp2, seq.value(0)) == pytest.approx(1.0)


def test_constant_function_coefficients():
    form = CanonicalForm.from_q("G", 0.7, 0.49)
    seq = PSequence.from_canonical(form)
    f = AnalyticFunction(lambda z: 4.2 + 0j)
    exp = taylor_coefficients(f, seq, 5)
    assert exp.coefficients[0] == pytest.approx(4.2)
    for c in exp.coefficients[1:]:
        assert abs(c) < 1e-11


def test_continuous_form_recovers_power_series():
    # constant node sequence at 0: coefficients of exp are 1/k!; radius near
    # the saddle k + 1 keeps the quadrature noise floor below the value
    from awtaylor.awop import partial_k_contour

    seq = PSequence.from_canonical(CanonicalForm("C", 0.0))
    for k in range(16):
        ctr = circle_contour(0.0, max(2.0, float(k + 1)))
        c = partial_k_contour(exp_fn(), seq.shift(k), k, ctr)
        assert abs(c * math.factorial(k) - 1.0) < 1e-12, k


def test_geometric_coefficients_closed_form():
    # f(x) = (a x;q)_inf / (b x;q)_inf on nodes q^t xi has coefficients
    # prod_{j<k} (b - q^j a)/(1 - q^{j+1}) * (a xi q^k;q)_inf / (b xi;q)_inf
    q, alpha, beta, xi = 0.5, 0.3, 0.7, 0.4
    form = CanonicalForm.from_q("G", xi, q)
    seq = PSequence.from_canonical(form)
    f = AnalyticFunction(
        lambda z: q_pochhammer_inf(alpha * z, q) / q_pochhammer_inf(beta * z, q),
        Domain.disk(0.9 / beta),
    )
    exp = taylor_coefficients(f, seq, 8)
    for k in range(9):
        pref = 1.0 + 0j
        for j in range(k):
            pref *= (beta - q**j * alpha) / (1.0 - q ** (j + 1))
        expect = pref * q_pochhammer_inf(alpha * xi * q**k, q) / q_pochhammer_inf(beta * xi, q)
        assert abs(exp.coefficients[k] - expect) <= 1e-10 * max(1.0, abs(expect)), k


def test_interpolation_property():
    # the partial sum interpolates f at the nodes it consumed
    rng = random.Random(71)
    form = CanonicalForm("A", 0.3 + 0.2j)
    seq = PSequence.from_canonical(form)
    f = rational_fn([30.0 + 4j])
    exp = taylor_coefficients(f, seq, 6)
    for m in range(7):
        zm = seq.value(2 * m)
        assert abs(taylor_eval(exp, zm) - f(zm)) < 1e-9


def test_exactness_all_forms_rational():
    rng = random.Random(73)
    for tag in ("T", "G", "Q", "A", "C"):
        if tag in ("T", "G"):
            form = CanonicalForm(tag, 1.2 + 0.5j, 0.75)
        else:
            form = CanonicalForm(tag, 0.4 + 0.3j)
        seq = PSequence.from_canonical(form)
        spread = max(abs(seq.value(2 * j)) for j in range(9))
        f = rational_fn([(6.0 * spread + 40.0) * cmath.exp(0.4j)])
        for n in (3, 8):
            x = randc(rng, 0.8 * spread + 0.5)
            s = taylor_eval(taylor_coefficients(f, seq, n), x)
            r = remainder_contour(f, seq, n, x)
            lhs = f(x)
            assert abs(lhs - (s + r)) <= 1e-10 * max(1.0, abs(lhs)), (tag, n)


def test_remainder_trivials():
    form = CanonicalForm.from_q("G", 0.5, 0.25)
    seq = PSequence.from_canonical(form)
    poly = polynomial_fn([1.0, -2.0, 0.7])  # degree 2
    assert abs(remainder_contour(poly, seq, 4, 0.9)) < 1e-11
    f = rational_fn([25.0])
    assert abs(remainder_contour(f, seq, 3, seq.value(0))) < 1e-12


def test_remainder_matches_difference_for_pole():
    form = CanonicalForm.from_q("G", 0.5, 0.25)
    seq = PSequence.from_canonical(form)
    f = rational_fn([7.0 - 3.0j])
    for n in (2, 5, 9):
        x = 0.3 - 0.6j
        s = taylor_eval(taylor_coefficients(f, seq, n), x)
        r = remainder_contour(f, seq, n, x)
        assert abs((f(x) - s) - r) < 1e-11


def test_remainder_bound_geometry():
    with pytest.raises(DomainError):
        remainder_bound(1.0, 1.0, 0.9, 0.2, 3)
    # classical disk specialization at z = 0
    b = remainder_bound(2.0, 5.0, 1.0, 0.0, 4)
    assert b == pytest.approx(2.0 * 5.0 / 1.0 * 0.5**5)
    # the decay ratio is below one whenever the geometry holds
    assert (1.0 + 0.1) / (6.0 - 0.1) < 1.0


def test_measured_remainder_below_bound_exp():
    q, xi, r = 0.5, 0.1, 6.0
    form = CanonicalForm.from_q("G", xi, q)
    seq = PSequence.from_canonical(form)
    f = exp_fn()
    ctr = circle_contour(0.0, r)
    m_r = math.exp(r)
    x = 1.0
    for n in (5, 12, 20, 30):
        measured = abs(remainder_contour(f, seq, n, x, ctr))
        assert measured <= remainder_bound(r, m_r, abs(x), xi, n), n


def test_h_product_basics():
    seq = growing_negative_seq()
    z0 = seq.value(0)
    assert abs(h_product(seq, z0)) < 1e-12
    assert h_product(seq, 0.0) == pytest.approx(1.0)


def test_h_product_rejects_bounded_nodes():
    flat = PSequence.from_canonical(CanonicalForm("C", 1.0))
    with pytest.raises(DomainError):
        h_product(flat, 0.5)
    arith = PSequence.from_canonical(CanonicalForm("A", -1.0))
    with pytest.raises(DomainError):
        h_product(arith, 0.5)


def test_h_product_trig_closed_form():
    # nodes (q^t xi + q^-t / xi)/2 give H(x) = (xi u, xi/u;q)_inf / (-xi^2;q^2)_inf
    q, xi = 0.4, -1.3
    lam = math.sqrt(q)
    seq = PSequence.from_canonical(CanonicalForm("T", xi, lam))
    for u in (-1.7 + 0.4j, -1.1 - 0.9j):
        x = (u + 1.0 / u) / 2.0
        got = h_product(seq, x)
        expect = (
            q_pochhammer_inf(xi * u, q)
            * q_pochhammer_inf(xi / u, q)
            / q_pochhammer_inf(-(xi**2), q * q)
        )
        assert abs(got - expect) <= 1e-10 * max(1.0, abs(expect))


def test_infinite_remainder_three_way_split():
    # pole in the right half plane, nodes escaping along the negative axis
    seq = growing_negative_seq(0.5, -1.0)
    f = AnalyticFunction(lambda z: 1.0 / (z - 3.0), Domain.left_half_plane(), growth=(1.0, 0.0))
    tol = Tolerances(series_tol=1e-12, identity_tol=1e-8)
    for x in (-0.7 + 0.3j, -1.4 - 0.8j):
        s = taylor_limit(f, seq, x, tol)
        r = remainder_infinite(f, seq, x, "left", quad_tol=1e-9, tol=tol)
        lhs = f(x)
        assert abs(lhs - (s.value + r.value)) < 1e-7
        # the remainder is genuinely nonzero here: the partial sums converge
        # to a different function than f
        assert abs(r.value) > 1e-4


def test_infinite_remainder_zero_for_polynomials():
    seq = growing_negative_seq(0.5, -1.0)
    poly = AnalyticFunction(lambda z: 1.0 + 0.5 * z, Domain.left_half_plane(), growth=(2.0, 1.0))
    r = remainder_infinite(poly, seq, -0.8 + 0.2j, "left", quad_tol=1e-9)
    assert abs(r.value) < 1e-7
    s = taylor_limit(poly, seq, -0.8 + 0.2j)
    assert abs(s.value - poly(-0.8 + 0.2j)) < 1e-10


def test_infinite_remainder_vanishes_at_first_node():
    seq = growing_negative_seq(0.5, -1.0)
    f = AnalyticFunction(lambda z: 1.0 / (z - 3.0), Domain.left_half_plane())
    z0 = seq.value(0)
    r = remainder_infinite(f, seq, z0, "left", quad_tol=1e-9)
    assert abs(r.value) < 1e-9
    s = taylor_limit(f, seq, z0)
    assert abs(s.value - f(z0)) < 1e-10


def test_infinite_remainder_right_half_plane():
    # mirrored setup: nodes on the positive axis, x on the right, sign flip
    seq = PSequence.from_canonical(CanonicalForm("G", 1.0, 1.0 / math.sqrt(0.5)))
    f = AnalyticFunction(lambda z: 1.0 / (z + 3.0), Domain.right_half_plane(), growth=(1.0, 0.0))
    x = 0.9 - 0.4j
    s = taylor_limit(f, seq, x)
    r = remainder_infinite(f, seq, x, "right", quad_tol=1e-9)
    assert abs(f(x) - (s.value + r.value)) < 1e-7


def test_infinite_remainder_domain_checks():
    seq = growing_negative_seq()
    f = AnalyticFunction(lambda z: 1.0, Domain.left_half_plane())
    with pytest.raises(DomainError):
        remainder_infinite(f, seq, 0.5, "left")  # x in the wrong half plane
    pos = PSequence.from_canonical(CanonicalForm("G", 1.0, 1.0 / math.sqrt(0.5)))
    with pytest.raises(DomainError):
        remainder_infinite(f, pos, -0.5, "left")  # nodes on the wrong axis


def test_h_ratio_matches_truncated_products():
    from awtaylor.taylor import _h_ratio

    seq = growing_negative_seq(0.5, -1.0)
    tol = Tolerances()
    x, y = -0.7 + 0.3j, 5.0j
    lit = 1.0 + 0j
    for j in range(120):
        zj = seq.value(2 * j)
        lit *= (x - zj) / (y - zj)
    got = _h_ratio(seq, x, y, tol)
    assert abs(got - lit) <= 1e-11 * abs(lit)


def test_taylor_limit_bounded_nodes_regime():
    # shrinking geometric nodes, f analytic on a big disk: the series
    # converges to f itself
    form = CanonicalForm.from_q("G", 0.1, 0.5)
    seq = PSequence.from_canonical(form)
    f = rational_fn([9.0 + 2j])
    for x in (0.8, -0.4 + 0.6j):
        s = taylor_limit(f, seq, x)
        assert abs(s.value - f(x)) < 1e-10


def test_taylor_limit_polynomial_terminates():
    # inside the convergence disk the noise terms shrink with the node
    # products and the expansion stops right after the degree
    form = CanonicalForm.from_q("G", 0.3, 0.25)
    seq = PSequence.from_canonical(form)
    poly = polynomial_fn([0.5, 1.5, -2.0, 1.0])
    s = taylor_limit(poly, seq, 0.8)
    assert abs(s.value - poly(0.8)) < 1e-12
    assert s.terms <= 12


def test_newton_residue_coefficients_match_quadrature():
    form = CanonicalForm("A", 0.15 + 0.1j)
    seq = PSequence.from_canonical(form)
    f = rational_fn([40.0])
    exp = taylor_coefficients(f, seq, 6)
    for k in range(7):
        nodes = [seq.value(2 * j) for j in range(k + 1)]
        res = partial_k_residues(f, nodes)
        assert abs(res - exp.coefficients[k]) <= 1e-10 * max(1.0, abs(res)), k


def test_convergence_rate_envelope():
    # measured root rates stay below (x + z)/(r - z) plus a small cushion
    q, xi, r = 0.5, 0.1, 6.0
    seq = PSequence.from_canonical(CanonicalForm.from_q("G", xi, q))
    f = exp_fn()
    ctr = circle_contour(0.0, r)
    cap = (1.0 + xi) / (r - xi) + 0.05
    for x in (1.0, 0.5 + 0.5j):
        for n in (20, 28, 36):
            rn = abs(remainder_contour(f, seq, n, x, ctr))
            assert rn ** (1.0 / (n + 1)) <= cap, (x, n)
