"""First-order bicovariant calculi on Q[x].

A calculus is fixed by a monic ``m(l)``.  One-forms are elements of
``k_l[x]`` with ``k_l = Q[l]/<m>``, stored as right coefficients on the
invariant basis ``dx = 1, l, ..., l**(deg m - 1)``.  Right multiplication
by a function is plain multiplication; left multiplication by ``f``
multiplies by ``f(x + l)``; ``d f = (f(x + l) - f(x)) / l``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .algebra import (
    BiPoly,
    ExtElem,
    ExtPoly,
    Irreducibility,
    Poly,
    X,
    irreducibility_status,
    reduce_mod,
    shift_lambda,
    solve_linear,
)
from .errors import SpecError


class Prolongation(enum.Enum):
    MAXIMAL = "maximal"
    SKEW = "skew"


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class CalculusSpec:
    m: Poly
    prolongation: Prolongation = Prolongation.MAXIMAL
    irreducibility: Irreducibility = field(init=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.m, Poly):
            object.__setattr__(self, "m", Poly(self.m))
        object.__setattr__(self, "irreducibility", irreducibility_status(self.m))

    @property
    def degree(self):
        return self.m.degree

    @property
    def warning(self):
        """Set when ``m`` is reducible or undecided: not certified coirreducible."""
        return self.irreducibility is not Irreducibility.IRREDUCIBLE

    def __str__(self):
        return f"m = {self.m.format('l')} ({self.prolongation.value})"


def _same_calculus(a, b):
    if a.m != b.m:
        raise SpecError(f"forms over {a.m.format('l')} and {b.m.format('l')} cannot be mixed")


class OneForm:
    """``sum_i l**i * coeffs[i](x)`` in ``k_l[x]``."""

    __slots__ = ("coeffs", "spec")

    def __init__(self, coeffs, spec):
        cs = tuple(c if isinstance(c, Poly) else Poly.const(c) for c in coeffs)
        if len(cs) != spec.degree:
            raise SpecError(f"a 1-form over {spec.m.format('l')} needs {spec.degree} coefficients")
        self.coeffs = cs
        self.spec = spec

    @classmethod
    def zero(cls, spec):
        return cls([Poly()] * spec.degree, spec)

    @classmethod
    def basis(cls, spec, i):
        cs = [Poly()] * spec.degree
        cs[i] = Poly.const(1)
        return cls(cs, spec)

    @classmethod
    def from_ext_poly(cls, p, spec):
        return cls(p.rows(), spec)

    def to_ext_poly(self):
        return ExtPoly.from_rows(self.coeffs, self.spec.m)

    @property
    def degree(self):
        return max(c.degree for c in self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, OneForm):
            return NotImplemented
        return self.spec.m == other.spec.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.spec.m))

    def __repr__(self):
        return f"OneForm({[str(c) for c in self.coeffs]}, m={self.spec.m.format('l')})"

    def __add__(self, other):
        _same_calculus(self.spec, other.spec)
        return OneForm([a + b for a, b in zip(self.coeffs, other.coeffs)], self.spec)

    def __sub__(self, other):
        _same_calculus(self.spec, other.spec)
        return OneForm([a - b for a, b in zip(self.coeffs, other.coeffs)], self.spec)

    def __neg__(self):
        return OneForm([-a for a in self.coeffs], self.spec)

    def scale(self, c):
        """Multiply by a scalar; scalars are central, so sides do not matter."""
        return OneForm([a * c for a in self.coeffs], self.spec)


def lambda_product(rows_a, rows_b, m):
    """Product in the commutative ring ``k_l[x]`` of two ``l``-row lists."""
    out = [Poly()] * (len(rows_a) + len(rows_b) - 1)
    for i, a in enumerate(rows_a):
        if a:
            for j, b in enumerate(rows_b):
                out[i + j] = out[i + j] + a * b
    return reduce_mod(out, m, Poly())


def differential(f, spec):
    rows = shift_lambda(f).rows[1:]
    if not rows:
        return OneForm.zero(spec)
    return OneForm(reduce_mod(rows, spec.m, Poly()), spec)


def act_left(f, P):
    """``f . P = f(x + l) P``."""
    rows = shift_lambda(f).rows
    if not rows:
        return OneForm.zero(P.spec)
    return OneForm(lambda_product(rows, P.coeffs, P.spec.m), P.spec)


def act_right(P, f):
    """``P . f``: multiply every coefficient by ``f``."""
    return OneForm([c * f for c in P.coeffs], P.spec)


def lambda_times(P):
    """Multiply by the invariant form ``l`` using only the bimodule structure.

    ``x . P - P . x = (x + l) P - P x = l P``.
    """
    return act_left(X, P) - act_right(P, X)


@dataclass(frozen=True)
class BiForm:
    """Image of a coaction: coefficients are polynomials in ``(y, x)``.

    For ``side=RIGHT`` the form lives in ``k_l[x] (x) k[y]``; for ``LEFT``
    in ``k[y] (x) k_l[x]``.  The coefficient polynomials are the same
    either way because both coactions substitute ``x -> x + y``.
    """

    side: Side
    coeffs: tuple
    spec: CalculusSpec

    def is_invariant(self):
        """True iff the coaction is ``P (x) 1`` (or ``1 (x) P``)."""
        return all(c.is_outer_free() for c in self.coeffs)

    def times(self, g):
        """Multiply every coefficient by a (y, x)-polynomial."""
        return BiForm(self.side, tuple(c * g for c in self.coeffs), self.spec)

    def __eq__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        return (
            self.side is other.side
            and self.spec.m == other.spec.m
            and self.coeffs == other.coeffs
        )


def coact(side, P):
    return BiForm(side, tuple(shift_lambda(c) for c in P.coeffs), P.spec)


def is_right_invariant(P):
    return coact(Side.RIGHT, P).is_invariant()


def is_left_invariant(P):
    return coact(Side.LEFT, P).is_invariant()


def differential_in_x(F, spec):
    """Apply ``d`` in x to a ``(y, x)``-polynomial, keeping y as a parameter."""
    rows = [differential(r, spec) for r in F.rows]
    return BiForm(
        Side.RIGHT,
        tuple(BiPoly(r.coeffs[i] for r in rows) for i in range(spec.degree)),
        spec,
    )


def invariant_basis(spec):
    return [OneForm.basis(spec, i) for i in range(spec.degree)]


def _constant_vector(P):
    if any(c.degree > 0 for c in P.coeffs):
        raise AssertionError(f"{P!r} is not an invariant form")
    return [c.coeff(0) for c in P.coeffs]


def recover_min_poly(spec):
    """Reconstruct ``m`` from calculus operations alone.

    ``w = d(x^2) - dx.(2x)`` is the invariant form ``l``; its powers are
    produced by :func:`lambda_times` and the first linear dependence among
    ``1, w, w^2, ...`` gives the monic minimal polynomial.
    """
    dx = differential(X, spec)
    w = differential(X * X, spec) - act_right(dx, 2 * X)
    vectors = [_constant_vector(dx)]
    power = w
    while True:
        target = _constant_vector(power)
        sol = solve_linear([list(r) for r in zip(*vectors)], target)
        if sol is not None:
            return Poly([-c for c in sol] + [1])
        vectors.append(target)
        power = lambda_times(power)


def calculi_isomorphic(m1, m2):
    """Distinct monic ``m`` give non-isomorphic calculi."""
    for m in (m1, m2):
        if not m.is_monic():
            raise SpecError(f"{m.format('l')} is not monic")
    return m1 == m2


def ext_elem_of(P):
    """Read an invariant 1-form as an element of ``k_l``."""
    return ExtElem(_constant_vector(P), P.spec.m)

