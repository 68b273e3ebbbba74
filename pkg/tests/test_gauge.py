from fractions import Fraction
import random

import pytest

from qcalc.algebra import Poly, X
from qcalc.calculus import Prolongation, act_left, act_right, differential
from qcalc.errors import DomainError, NotFlatError, NotPolynomialError, UnsupportedSpecError
from qcalc.exterior import QuadSpec, TwoForm, d_one, left_act_two, wedge
from qcalc.gauge import (
    Connection,
    GaugeParam,
    covariant_derivative,
    curvature,
    curvature_closed_form_q1,
    falsify_nonconstant_flat,
    flat_constants,
    gauge_finite_exact,
    gauge_inf,
    jet_curvature,
    jet_flat_solve,
    jet_gauge_exact,
    jet_normalize,
    random_nonconstant_connection,
)

from helpers import rand_poly, rand_rational, rng
from oracles import Dual

MAX1 = QuadSpec(1)
SKEW1 = QuadSpec(1, Prolongation.SKEW)
JET = QuadSpec(0)
JET_SKEW = QuadSpec(0, Prolongation.SKEW)


def conn(a, b, spec=MAX1):
    a = a if isinstance(a, Poly) else Poly.const(a)
    b = b if isinstance(b, Poly) else Poly.const(b)
    return Connection.from_coeffs(a, b, spec)


def test_curvature_examples():
    assert curvature(conn(0, 0)) == (0, 0)
    s, t = Fraction(2, 3), Fraction(-1, 5)
    assert curvature(conn(s, t)) == (t * t + 2 * t + s * s, 0)
    assert curvature(conn(X, 0)) == (X**2 - 1, X)


def test_closed_form_examples():
    assert curvature_closed_form_q1(conn(0, 0)) == (0, 0)
    assert curvature_closed_form_q1(conn(0, -2)) == (0, 0)
    assert curvature_closed_form_q1(conn(X, 0)) == (X**2 - 1, X)
    with pytest.raises(UnsupportedSpecError):
        curvature_closed_form_q1(conn(0, 0, SKEW1))
    with pytest.raises(UnsupportedSpecError):
        curvature_closed_form_q1(conn(0, 0, QuadSpec(2)))


def test_closed_form_agrees_with_curvature():
    r = rng(30)
    for _ in range(50):
        c = conn(rand_poly(r, 6), rand_poly(r, 6))
        assert curvature(c) == curvature_closed_form_q1(c)


def test_gauge_inf_examples():
    s, t = Fraction(3), Fraction(-2)
    c = conn(s, t)
    assert gauge_inf(c, Poly()) == c
    assert gauge_inf(c, GaugeParam(X)) == conn(s + t + 1, t - s)


def test_covariant_derivative_examples():
    r = rng(31)
    c = conn(rand_poly(r, 3), rand_poly(r, 3))
    assert covariant_derivative(c, Poly.const(1)) == c.alpha
    assert covariant_derivative(conn(0, 0), X) == MAX1.basis()[0]
    assert covariant_derivative(conn(0, 1), X) == MAX1.one_form(Poly.const(1), X)


def _dual_curvature(alpha, spec):
    d = alpha.linear(lambda P: d_one(P, spec))
    return d + alpha.bilinear(lambda P, Q: wedge(P, Q, spec), alpha)


@pytest.mark.parametrize("spec", [MAX1, SKEW1, JET, JET_SKEW], ids=str)
def test_first_order_covariance(spec):
    r = rng(32)
    for _ in range(25):
        c = conn(rand_poly(r, 4), rand_poly(r, 4), spec)
        theta = rand_poly(r, 4)
        delta = gauge_inf(c, theta).alpha - c.alpha
        F = curvature(c)
        lin = _dual_curvature(Dual(c.alpha, delta), spec)
        assert lin.value == F
        assert lin.tangent == F * theta - left_act_two(theta, F)


def test_covariant_derivative_covariance():
    r = rng(33)
    for _ in range(25):
        c = conn(rand_poly(r, 4), rand_poly(r, 4))
        theta, psi = rand_poly(r, 4), rand_poly(r, 4)
        delta = gauge_inf(c, theta).alpha - c.alpha
        s = MAX1.calculus
        # tangent of d(psi') + alpha' psi' with alpha' = alpha + eps delta, psi' = psi - eps theta psi
        tangent = differential(-(theta * psi), s) + act_right(delta, psi) - act_right(c.alpha, theta * psi)
        assert tangent == -act_left(theta, covariant_derivative(c, psi))


def test_flat_constants_q1_maximal():
    locus = flat_constants(MAX1)
    assert locus.contains(0, 0) and locus.contains(0, -2)
    assert locus.contains(Fraction(3, 5), Fraction(-1, 5))
    assert not locus.contains(1, 1)
    assert str(locus) == "s^2+t^2+2*t = 0"


def test_flat_constants_q1_skew():
    locus = flat_constants(SKEW1)
    assert locus.is_everything()
    r = rng(34)
    assert all(locus.contains(rand_rational(r), rand_rational(r)) for _ in range(50))
    with pytest.raises(UnsupportedSpecError):
        flat_constants(JET)


def test_flat_constants_match_curvature_for_general_q():
    r = rng(35)
    for spec in (QuadSpec(2), QuadSpec(Fraction(1, 2)), QuadSpec(2, Prolongation.SKEW)):
        locus = flat_constants(spec)
        for _ in range(20):
            s, t = rand_rational(r), rand_rational(r)
            assert locus.contains(s, t) == (not curvature(conn(s, t, spec)))


def test_falsify_reports():
    for spec in (MAX1, SKEW1):
        report = falsify_nonconstant_flat(spec, 4, 50, seed=7)
        assert report.passed and not report.flat_found
        assert len(report.samples) == 51
        first, flat, _ = report.samples[0]
        assert not flat and curvature(first) == TwoForm(X**2 - 1, X, spec)
    assert "PROVED" in falsify_nonconstant_flat(MAX1, 2, 5).summary()
    assert "none found" in falsify_nonconstant_flat(SKEW1, 2, 5).summary()
    with pytest.raises(DomainError):
        falsify_nonconstant_flat(MAX1, 0, 5)


def test_falsify_is_seeded():
    a = falsify_nonconstant_flat(QuadSpec(2), 3, 10, seed=3)
    b = falsify_nonconstant_flat(QuadSpec(2), 3, 10, seed=3)
    assert [c for c, _, _ in a.samples] == [c for c, _, _ in b.samples]


def test_random_connections_are_nonconstant():
    r = random.Random(0)
    for _ in range(30):
        c = random_nonconstant_connection(r, MAX1, 3)
        assert max(c.a.degree, c.b.degree) >= 1


def test_jet_curvature_examples():
    assert jet_curvature(Poly(), Poly()) == TwoForm(0, 0, JET)
    assert jet_curvature(2 * X, 1 - 2 * X**2) == (0, 0)
    mu = Fraction(7, 2)
    assert not jet_curvature(Poly(), Poly.const(mu), Prolongation.SKEW)


@pytest.mark.parametrize("spec", [JET, JET_SKEW], ids=str)
def test_jet_curvature_matches_generic(spec):
    r = rng(36)
    for _ in range(40):
        a, b = rand_poly(r, 6), rand_poly(r, 6)
        assert jet_curvature(a, b, spec.prolongation) == curvature(conn(a, b, spec))


def test_jet_gauge_examples():
    a, b = 2 * X, 1 - 2 * X**2
    assert jet_gauge_exact(a, b, Poly()) == (a, b)
    assert jet_gauge_exact(a, b, GaugeParam(-(X**2))) == (Poly(), Poly())


def test_jet_gauge_invariance_and_composition():
    r = rng(37)
    for _ in range(40):
        a, b, t1, t2 = (rand_poly(r, 6) for _ in range(4))
        assert jet_curvature(*jet_gauge_exact(a, b, t1)) == jet_curvature(a, b)
        assert jet_gauge_exact(*jet_gauge_exact(a, b, t1), t2) == jet_gauge_exact(a, b, t1 + t2)


def test_jet_flat_solve_examples():
    assert jet_flat_solve(2 * X).at() == 1 - 2 * X**2
    family = jet_flat_solve(Poly(), Prolongation.SKEW)
    assert family.free_constant and family.at(4) == Poly.const(4)
    assert jet_flat_solve(Poly()).at() == Poly()
    with pytest.raises(DomainError):
        jet_flat_solve(Poly()).at(1)


def test_jet_normalize_examples():
    assert jet_normalize(2 * X, 1 - 2 * X**2) == (-(X**2), 0)
    assert jet_normalize(2 * X, 4 - 2 * X**2, Prolongation.SKEW) == (-(X**2), 3)
    assert jet_normalize(Poly(), Poly()) == (Poly(), 0)
    with pytest.raises(NotFlatError):
        jet_normalize(X, Poly())


def test_jet_normal_form_moduli():
    r = rng(38)
    for prolongation in Prolongation:
        for _ in range(30):
            a = rand_poly(r, 6)
            mu = rand_rational(r) if prolongation is Prolongation.SKEW else 0
            b = jet_flat_solve(a, prolongation).at(mu)
            assert not jet_curvature(a, b, prolongation)
            theta, mu2 = jet_normalize(a, b, prolongation)
            assert mu2 == mu
            assert jet_gauge_exact(a, b, theta) == (Poly(), Poly.const(mu))
            # theta' = 0 leaves the normal form alone
            assert jet_gauge_exact(Poly(), Poly.const(mu), Poly.const(5)) == (Poly(), Poly.const(mu))


def test_gauge_finite_exact():
    r = rng(39)
    c = conn(rand_poly(r, 3), rand_poly(r, 3))
    assert gauge_finite_exact(c, Poly.const(5)) == c
    assert gauge_finite_exact(conn(0, -1), X) == conn(0, -1)
    with pytest.raises(NotPolynomialError):
        gauge_finite_exact(conn(0, 0), X)
    with pytest.raises(DomainError):
        gauge_finite_exact(c, Poly())
