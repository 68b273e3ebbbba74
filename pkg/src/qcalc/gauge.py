"""Gauge theory over the quadratic family.

A connection is any 1-form ``alpha = dx a + w b``; its curvature is
``d alpha + alpha ^ alpha``.  Polynomial gauge parameters only act
infinitesimally in general, except in the 2-jet calculus (``q = 0``)
where the exponentiated transform stays polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ExtElem, ExtPoly, Poly
from .calculus import OneForm, Prolongation, act_left, act_right, differential
from .errors import DomainError, NotFlatError, NotPolynomialError, SpecError, UnsupportedSpecError
from .exterior import QuadSpec, TwoForm, d_one, wedge


@dataclass(frozen=True)
class Connection:
    alpha: OneForm
    spec: QuadSpec

    def __post_init__(self):
        if self.alpha.spec.m != self.spec.m:
            raise SpecError("connection form and spec disagree")

    @classmethod
    def from_coeffs(cls, a, b, spec):
        return cls(spec.one_form(a, b), spec)

    @property
    def a(self):
        return self.alpha.coeffs[0]

    @property
    def b(self):
        return self.alpha.coeffs[1]


@dataclass(frozen=True)
class GaugeParam:
    theta: Poly


def _theta(theta):
    return theta.theta if isinstance(theta, GaugeParam) else theta


def curvature(conn):
    return d_one(conn.alpha, conn.spec) + wedge(conn.alpha, conn.alpha, conn.spec)


def curvature_closed_form_q1(conn):
    """Curvature at ``q = 1`` (maximal) from complex arithmetic alone.

    With ``i = l`` and ``u = a + i(b + 1)``, ``F0 + i F1 = u(x) * conj(u)(x + i) - 1``
    where ``conj(u)(x + i) = a(x + i) - i(b(x + i) + 1)``.
    """
    spec = conn.spec
    if spec.q != 1 or spec.skew:
        raise UnsupportedSpecError("the complex closed form needs q = 1 and the maximal prolongation")
    m = spec.m
    i = ExtElem.gen(m)
    a = ExtPoly.from_poly(conn.a, m)
    b1 = ExtPoly.from_poly(conn.b + 1, m)
    u = a + b1 * i
    v = a.shifted(i) - b1.shifted(i) * i
    F0, F1 = (u * v - 1).rows()
    return TwoForm(F0, F1, spec)


def gauge_inf(conn, theta):
    """``alpha + d theta + alpha theta - theta alpha``."""
    th = _theta(theta)
    alpha = conn.alpha
    out = alpha + differential(th, alpha.spec) + act_right(alpha, th) - act_left(th, alpha)
    return Connection(out, conn.spec)


def covariant_derivative(conn, psi):
    return differential(psi, conn.alpha.spec) + act_right(conn.alpha, psi)


@dataclass(frozen=True)
class ConstantFlatLocus:
    """Zero set of the curvature on constant connections ``dx s + w t``.

    ``equations`` holds the ``dx^dx`` and ``dx^w`` components as
    quadratic polynomials in ``(s, t)``: dicts ``{(i, j): coeff}`` for the
    monomial ``s^i t^j``.  Empty dicts mean the component vanishes
    identically.
    """

    spec: QuadSpec
    equations: tuple

    def contains(self, s, t):
        s, t = Fraction(s), Fraction(t)
        return all(
            sum(c * s**i * t**j for (i, j), c in eq.items()) == 0 for eq in self.equations
        )

    def is_everything(self):
        return not any(self.equations)

    def __str__(self):
        eqs = [_format_st(eq) for eq in self.equations if eq]
        if not eqs:
            return "all (s, t)"
        return ", ".join(f"{e} = 0" for e in eqs)


def _format_st(eq):
    terms = []
    for (i, j), c in sorted(eq.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in (("s", i), ("t", j)) if e
        )
        a = abs(c)
        body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
        if c < 0:
            terms.append("-" + body)
        else:
            terms.append("+" + body if terms else body)
    return "".join(terms)


def flat_constants(spec):
    """Curvature of ``dx s + w t`` expanded symbolically in ``s, t``.

    Scalars are central, so bilinearity gives
    ``F = s dd(dx) + t dd(w) + s^2 dx^dx + st (dx^w + w^dx) + t^2 w^w``.
    """
    if spec.q == 0:
        raise UnsupportedSpecError("use jet_flat_solve for the 2-jet calculus")
    dx, w = spec.basis()
    pieces = {
        (1, 0): d_one(dx, spec),
        (0, 1): d_one(w, spec),
        (2, 0): wedge(dx, dx, spec),
        (1, 1): wedge(dx, w, spec) + wedge(w, dx, spec),
        (0, 2): wedge(w, w, spec),
    }
    equations = []
    for comp in range(2):
        eq = {}
        for mono, F in pieces.items():
            poly = F.as_pair()[comp]
            if poly.degree > 0:
                raise AssertionError("constant connections must have constant curvature")
            c = poly.coeff(0)
            if c:
                eq[mono] = c
        equations.append(eq)
    return ConstantFlatLocus(spec, tuple(equations))


def random_poly(rng, deg):
    """Coefficients uniform on -9..9 over random denominators <= 9."""
    return Poly(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(deg + 1))


def random_nonconstant_connection(rng, spec, deg_bound):
    while True:
        a = random_poly(rng, rng.randint(0, deg_bound))
        b = random_poly(rng, rng.randint(0, deg_bound))
        if max(a.degree, b.degree) >= 1:
            return Connection.from_coeffs(a, b, spec)


@dataclass
class FlatSearchReport:
    spec: QuadSpec
    deg_bound: int
    seed: int
    samples: list = field(default_factory=list)
    verdict: str = ""

    @property
    def flat_found(self):
        return [c for c, flat, _ in self.samples if flat]

    @property
    def passed(self):
        return not self.flat_found

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}: {len(self.samples)} nonconstant connections (deg <= {self.deg_bound}, "
            f"seed {self.seed}), {len(self.flat_found)} flat; {self.verdict}"
        )


def _complex_degree_certificate(conn):
    """``F = 0`` iff ``u v = 1``; in C[x] deg(uv) = 2 deg(u) > 0 when alpha is nonconstant."""
    m = conn.spec.m
    i = ExtElem.gen(m)
    u = ExtPoly.from_poly(conn.a, m) + ExtPoly.from_poly(conn.b + 1, m) * i
    return 2 * u.degree


def falsify_nonconstant_flat(spec, deg_bound, trials, seed=0):
    """Search for flat polynomial connections of positive degree.

    For ``q = 1`` maximal each sample is also decided by degree counting
    in ``C[x]``: flatness means ``u * v = 1`` with ``deg v = deg u``.
    """
    if deg_bound < 1:
        raise DomainError("deg_bound must be at least 1")
    rng = random.Random(seed)
    report = FlatSearchReport(spec, deg_bound, seed)
    decided = spec.q == 1 and not spec.skew
    forced = Connection.from_coeffs(Poly((0, 1)), Poly(), spec)
    conns = [forced] + [random_nonconstant_connection(rng, spec, deg_bound) for _ in range(trials)]
    for conn in conns:
        flat = not curvature(conn)
        note = ""
        if decided:
            deg_uv = _complex_degree_certificate(conn)
            note = f"deg(uv) = {deg_uv}"
            if flat or deg_uv <= 0:
                raise AssertionError("degree argument contradicts the curvature computation")
        report.samples.append((conn, flat, note))
    if not report.passed:
        report.verdict = "COUNTEREXAMPLE"
    elif decided:
        report.verdict = "PROVED (u*v = 1 forces deg u = 0)"
    else:
        report.verdict = "none found"
    return report


def _jet_spec(prolongation):
    return QuadSpec(0, prolongation)


def jet_curvature(a, b, prolongation=Prolongation.MAXIMAL):
    """2-jet curvature ``(2b - a' + a^2, b' - a''/2 + a'a)``."""
    da = a.derive()
    F0 = 2 * b - da + a * a
    F1 = b.derive() - da.derive() * Fraction(1, 2) + da * a
    return TwoForm(F0, F1, _jet_spec(prolongation))


def jet_gauge_exact(a, b, theta):
    """Exact 2-jet gauge transform ``(a + t', b - a t' + (t'' - t'^2)/2)``."""
    dt = _theta(theta).derive()
    return a + dt, b - a * dt + (dt.derive() - dt * dt) * Fraction(1, 2)


@dataclass(frozen=True)
class JetFlatFamily:
    """Flat ``b`` for a given ``a``: ``base`` plus a free constant when skew."""

    a: Poly
    base: Poly
    free_constant: bool

    def at(self, mu=0):
        if mu and not self.free_constant:
            raise DomainError("the maximal prolongation has no free constant")
        return self.base + Fraction(mu)


def jet_flat_solve(a, prolongation=Prolongation.MAXIMAL):
    base = (a.derive() - a * a) * Fraction(1, 2)
    return JetFlatFamily(a, base, prolongation is Prolongation.SKEW)


def jet_normalize(a, b, prolongation=Prolongation.MAXIMAL):
    """Gauge a flat 2-jet connection to ``(0, mu)``; returns ``(theta, mu)``."""
    if jet_curvature(a, b, prolongation):
        raise NotFlatError("the connection is not flat")
    theta = -a.antiderivative()
    a2, b2 = jet_gauge_exact(a, b, theta)
    if a2 or not b2.is_constant():
        raise AssertionError("normal form is not (0, mu)")
    return theta, b2.coeff(0)


def gauge_finite_exact(conn, gamma):
    """``gamma^-1 alpha gamma + gamma^-1 d gamma`` when it stays polynomial.

    In ``k_l[x]`` left multiplication by ``gamma^-1`` is division by
    ``gamma(x + l)``, so the result is ``(alpha gamma + d gamma) / gamma(x + l)``.
    """
    if not gamma:
        raise DomainError("gauge transform by zero")
    spec1 = conn.alpha.spec
    m = spec1.m
    num = act_right(conn.alpha, gamma) + differential(gamma, spec1)
    den = ExtPoly.from_poly(gamma, m).shifted(ExtElem.gen(m))
    quo, rem = divmod(num.to_ext_poly(), den)
    if rem:
        raise NotPolynomialError("gamma^-1 is not polynomial here; the transform leaves k_l[x]")
    return Connection(OneForm.from_ext_poly(quo, spec1), conn.spec)
