"""Degree-2 forms for the quadratic family ``m = l^2 + q^2``.

Two-forms are right-coefficient pairs on ``(dx^dx, dx^w)``.  The
relations are ``w^w = q^2 dx^dx``, ``dx^w = -w^dx`` and ``dw = 2 dx^dx``;
the skew prolongation adds ``dx^dx = 0`` (hence ``w^w = 0``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt

from .algebra import Poly, solve_linear
from .calculus import (
    CalculusSpec,
    OneForm,
    Prolongation,
    act_left,
    differential,
)
from .errors import NotClosedError, SpecError, UnsupportedSpecError


@dataclass(frozen=True)
class QuadSpec:
    q: Fraction
    prolongation: Prolongation = Prolongation.MAXIMAL

    def __post_init__(self):
        q = Fraction(self.q)
        if q < 0:
            raise SpecError("q must be non-negative")
        object.__setattr__(self, "q", q)

    @property
    def q2(self):
        return self.q * self.q

    @property
    def m(self):
        return Poly((self.q2, 0, 1))

    @property
    def skew(self):
        return self.prolongation is Prolongation.SKEW

    @cached_property
    def calculus(self):
        return CalculusSpec(self.m, self.prolongation)

    @classmethod
    def from_calculus(cls, spec):
        m = spec.m
        if m.degree != 2 or m.coeff(1) != 0 or m.coeff(0) < 0:
            raise UnsupportedSpecError(
                f"degree-2 forms are only implemented for l^2+q^2, got {m.format('l')}"
            )
        c = m.coeff(0)
        num, den = _isqrt(c.numerator), _isqrt(c.denominator)
        if num is None or den is None:
            raise UnsupportedSpecError(f"{c} is not the square of a rational q")
        return cls(Fraction(num, den), spec.prolongation)

    def basis(self):
        """``(dx, w)`` as 1-forms."""
        return OneForm.basis(self.calculus, 0), OneForm.basis(self.calculus, 1)

    def one_form(self, a, b):
        return OneForm((a, b), self.calculus)

    def __str__(self):
        return f"q = {self.q} ({self.prolongation.value})"


def _isqrt(n):
    r = isqrt(n)
    return r if r * r == n else None


class TwoForm:
    """``(dx^dx) F0 + (dx^w) F1``; ``F0`` is forced to zero when skew."""

    __slots__ = ("F0", "F1", "spec")

    def __init__(self, F0, F1, spec):
        F0 = F0 if isinstance(F0, Poly) else Poly.const(F0)
        F1 = F1 if isinstance(F1, Poly) else Poly.const(F1)
        self.F0 = Poly() if spec.skew else F0
        self.F1 = F1
        self.spec = spec

    @classmethod
    def zero(cls, spec):
        return cls(Poly(), Poly(), spec)

    def __bool__(self):
        return bool(self.F0) or bool(self.F1)

    def __eq__(self, other):
        if isinstance(other, tuple):
            return (self.F0, self.F1) == tuple(
                p if isinstance(p, Poly) else Poly.const(p) for p in other
            )
        if not isinstance(other, TwoForm):
            return NotImplemented
        return self.spec == other.spec and self.F0 == other.F0 and self.F1 == other.F1

    def __hash__(self):
        return hash((self.F0, self.F1, self.spec))

    def __repr__(self):
        return f"TwoForm({self.F0}, {self.F1}, {self.spec})"

    def _check(self, other):
        if self.spec != other.spec:
            raise SpecError("two-forms from different exterior algebras")

    def __add__(self, other):
        self._check(other)
        return TwoForm(self.F0 + other.F0, self.F1 + other.F1, self.spec)

    def __sub__(self, other):
        self._check(other)
        return TwoForm(self.F0 - other.F0, self.F1 - other.F1, self.spec)

    def __neg__(self):
        return TwoForm(-self.F0, -self.F1, self.spec)

    def __mul__(self, f):
        """Right multiplication by a function (or scalar)."""
        return TwoForm(self.F0 * f, self.F1 * f, self.spec)

    def as_pair(self):
        return self.F0, self.F1


def _check_form(P, spec):
    if P.spec.m != spec.m:
        raise SpecError(f"1-form over {P.spec.m.format('l')} used with {spec}")


def wedge(P, Q, spec):
    """Product of two 1-forms, normalised onto ``(dx^dx, dx^w)``."""
    _check_form(P, spec)
    _check_form(Q, spec)
    a, b = P.coeffs
    # dx^(a.Q) + w^(b.Q) with a.Q, b.Q pushed to right coefficients
    c1, d1 = act_left(a, Q).coeffs
    c2, d2 = act_left(b, Q).coeffs
    return TwoForm(c1 + d2 * spec.q2, d1 - c2, spec)


def left_act_two(f, F):
    """``f . F`` using ``F = dx ^ (dx F0 + w F1)``."""
    dx, _ = F.spec.basis()
    return wedge(act_left(f, dx), F.spec.one_form(F.F0, F.F1), F.spec)


def d_one(P, spec):
    """``d(dx f + w g) = -dx^df + (dw) g - w^dg``."""
    _check_form(P, spec)
    f, g = P.coeffs
    dx, w = spec.basis()
    out = -wedge(dx, differential(f, spec.calculus), spec)
    out = out - wedge(w, differential(g, spec.calculus), spec)
    return out + TwoForm(2 * g, Poly(), spec)


def is_closed(P, spec):
    return not d_one(P, spec)


def find_primitive(P, spec):
    """Split a closed 1-form as ``d h + c w``.

    ``h`` has zero constant term; ``c`` is always 0 for the maximal
    prolongation.  Solved as an exact linear system in the coefficients
    of ``h`` (and ``c`` when skew).
    """
    if not is_closed(P, spec):
        raise NotClosedError("the 1-form is not closed")
    a, b = P.coeffs
    top = max(a.degree + 1, b.degree + 2, 1)
    columns = [differential(Poly.monomial(k), spec.calculus) for k in range(1, int(top) + 1)]
    if spec.skew:
        columns.append(spec.basis()[1])
    width = int(top) + 1
    rows, rhs = [], []
    for comp in range(2):
        for k in range(width):
            rows.append([col.coeffs[comp].coeff(k) for col in columns])
            rhs.append(P.coeffs[comp].coeff(k))
    sol = solve_linear(rows, rhs)
    if sol is None:
        raise AssertionError("closed 1-form without a primitive")
    c = sol[-1] if spec.skew else Fraction(0)
    h = Poly([0] + sol[: int(top)])
    return h, c
