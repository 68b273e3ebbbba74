"""Exact arithmetic substrate.

Rationals are :class:`fractions.Fraction`.  On top of them this module
provides dense univariate polynomials (:class:`Poly`), polynomials in an
outer variable with :class:`Poly` rows (:class:`BiPoly`, used both for
``f(x + l)`` and for coactions in ``(x, y)``), the quotient ring
``Q[l]/<m>`` (:class:`ExtElem`) and polynomials in ``x`` over that ring
(:class:`ExtPoly`).
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from itertools import zip_longest

from .errors import DomainError, ExactDivisionError, NotInvertibleError, SpecError

Rational = Fraction

#: degree of the zero polynomial
NEG_INF = float("-inf")


def _q(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"expected a rational scalar, got {type(c).__name__}")


def reduce_mod(coeffs, m, zero):
    """Reduce ``sum coeffs[i] * l**i`` modulo the monic polynomial *m*.

    Entries may be rationals or :class:`Poly`; anything that supports
    ``-`` and multiplication by a rational works.  Returns a list of
    exactly ``deg m`` entries.
    """
    n = m.degree
    cs = list(coeffs)
    for i in range(len(cs) - 1, n - 1, -1):
        c = cs[i]
        if c:
            for j in range(n):
                if m.coeffs[j]:
                    cs[i - n + j] = cs[i - n + j] - c * m.coeffs[j]
    cs = cs[:n]
    cs.extend([zero] * (n - len(cs)))
    return cs


class Poly:
    """Polynomial over Q with dense ascending coefficients.

    Instances are immutable and canonical (no trailing zeros), so
    structural equality is mathematical equality.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, n, c=1):
        return cls([0] * n + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def is_constant(self):
        return len(self.coeffs) <= 1

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return self.format("x")

    def format(self, var="x"):
        """Descending-degree text such as ``3/2*x^2-x+1``."""
        if not self.coeffs:
            return "0"
        out = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not out:
                out.append(body if sign == "+" else "-" + body)
            else:
                out.append(sign + body)
        return "".join(out)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly(a + b for a, b in zip_longest(self.coeffs, o.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Poly(a - b for a, b in zip_longest(self.coeffs, o.coeffs, fillvalue=0))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        # convolve integer numerators over a common denominator
        da = math.lcm(*(c.denominator for c in a))
        db = math.lcm(*(c.denominator for c in b))
        ia = [c.numerator * (da // c.denominator) for c in a]
        ib = [c.numerator * (db // c.denominator) for c in b]
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(ia):
            if ai:
                for j, bj in enumerate(ib):
                    out[i + j] += ai * bj
        den = da * db
        return Poly(Fraction(c, den) for c in out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise DomainError("polynomial powers need a non-negative integer exponent")
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, value):
        """Horner evaluation at a scalar, a Poly, or any ring element."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c + 0 * value if acc is None else acc * value + c
        if acc is None:
            return 0 * value
        return acc

    def compose(self, g):
        """``self(g(x))``."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def derive(self):
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def antiderivative(self):
        """Antiderivative with zero constant term."""
        return Poly([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def shift(self, a):
        """``self(x + a)`` for a rational ``a``."""
        return self.compose(Poly((a, 1)))

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DomainError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Poly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = o.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(o.coeffs) - 1] / lead
            quot[k] = c
            if c:
                for j, oj in enumerate(o.coeffs):
                    rem[k + j] -= c * oj
        return Poly(quot), Poly(rem[: len(o.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divexact(self, other):
        q, r = divmod(self, other)
        if r:
            raise ExactDivisionError(f"{other} does not divide {self}")
        return q


X = Poly((0, 1))


def poly_arith(op, f, g=None):
    """Dispatch helper mirroring the CLI-level arithmetic vocabulary."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "compose":
        return f.compose(g)
    if op == "derive":
        return f.derive()
    if op == "divexact":
        return f.divexact(g)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_gcdex(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = Poly.const(1), Poly()
    t0, t1 = Poly(), Poly.const(1)
    while r1:
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0:
        inv = 1 / r0.lc
        r0, s0, t0 = r0 * inv, s0 * inv, t0 * inv
    return r0, s0, t0


class BiPoly:
    """Polynomial in an outer variable whose coefficients are :class:`Poly` in x.

    ``rows[i]`` is the coefficient of ``outer**i``.  The outer variable is
    ``l`` for shifted polynomials and ``y`` for coactions.
    """

    __slots__ = ("rows",)

    def __init__(self, rows=()):
        rs = [r if isinstance(r, Poly) else (Poly.const(r) if isinstance(r, (int, Fraction)) else Poly(r)) for r in rows]
        while rs and not rs[-1]:
            rs.pop()
        self.rows = tuple(rs)

    def coefficient(self, i, j):
        """Coefficient of ``outer**i * x**j``."""
        return self.rows[i].coeff(j) if i < len(self.rows) else Fraction(0)

    def at_outer_zero(self):
        return self.rows[0] if self.rows else Poly()

    def is_outer_free(self):
        return len(self.rows) <= 1

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"BiPoly({list(self.rows)!r})"

    def __add__(self, other):
        return BiPoly(a + b for a, b in zip_longest(self.rows, other.rows, fillvalue=Poly()))

    def __sub__(self, other):
        return BiPoly(a - b for a, b in zip_longest(self.rows, other.rows, fillvalue=Poly()))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return BiPoly(r * other for r in self.rows)
        if not self.rows or not other.rows:
            return BiPoly()
        out = [Poly()] * (len(self.rows) + len(other.rows) - 1)
        for i, a in enumerate(self.rows):
            for j, b in enumerate(other.rows):
                out[i + j] = out[i + j] + a * b
        return BiPoly(out)


def shift_lambda(f):
    """``f(x + l)`` as a :class:`BiPoly` (full binomial expansion)."""
    cs = f.coeffs
    return BiPoly(
        Poly(math.comb(k + j, j) * cs[k + j] for k in range(len(cs) - j))
        for j in range(len(cs))
    )


def ext_reduce(p, spec):
    """Reduce the ``l``-rows of *p* modulo ``m``; returns ``deg m`` polynomials."""
    m = getattr(spec, "m", spec)
    return reduce_mod(p.rows, m, Poly())


class Irreducibility(enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    UNKNOWN = "unknown"


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p):
    """All rational roots of a nonzero polynomial, by the rational-root test."""
    if not p:
        raise DomainError("the zero polynomial has no finite root set")
    cs = p.coeffs
    k = 0
    while cs[k] == 0:
        k += 1
    roots = [Fraction(0)] if k else []
    cs = cs[k:]
    if len(cs) == 1:
        return roots
    den = math.lcm(*(c.denominator for c in cs))
    ints = [int(c * den) for c in cs]
    found = set()
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            for r in (Fraction(a, b), Fraction(-a, b)):
                if r not in found and Poly(cs)(r) == 0:
                    found.add(r)
    return roots + sorted(found)


def irreducibility_status(m):
    """Decide irreducibility of a monic ``m`` over Q for degree <= 3."""
    if not m.is_monic():
        raise SpecError(f"minimal polynomial must be monic, got {m.format('l')}")
    if m.degree < 1:
        raise SpecError("minimal polynomial must have degree >= 1")
    if m.degree == 1:
        return Irreducibility.IRREDUCIBLE
    if m.degree <= 3:
        return Irreducibility.REDUCIBLE if rational_roots(m) else Irreducibility.IRREDUCIBLE
    return Irreducibility.UNKNOWN


class ExtElem:
    """Element of ``Q[l]/<m>`` stored as ``deg m`` coordinates on ``1, l, ...``."""

    __slots__ = ("rep", "modulus")

    def __init__(self, rep, modulus):
        if not modulus.is_monic() or modulus.degree < 1:
            raise SpecError("modulus must be monic of degree >= 1")
        self.modulus = modulus
        self.rep = tuple(reduce_mod([_q(c) for c in rep], modulus, Fraction(0)))

    @classmethod
    def from_rational(cls, c, modulus):
        return cls((c,), modulus)

    @classmethod
    def gen(cls, modulus):
        return cls((0, 1), modulus)

    @classmethod
    def from_poly(cls, p, modulus):
        return cls(p.coeffs, modulus)

    def lift(self):
        return Poly(self.rep)

    def is_rational(self):
        return all(c == 0 for c in self.rep[1:])

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return ExtElem.from_rational(other, self.modulus)
        if not isinstance(other, ExtElem):
            return None
        if other.modulus != self.modulus:
            raise SpecError("elements of different extensions")
        return other

    def __bool__(self):
        return any(self.rep)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rep[0] == other
        if not isinstance(other, ExtElem):
            return NotImplemented
        return self.modulus == other.modulus and self.rep == other.rep

    def __hash__(self):
        return hash((self.rep, self.modulus))

    def __repr__(self):
        return f"ExtElem({self.lift().format('l')} mod {self.modulus.format('l')})"

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return ExtElem([a + b for a, b in zip(self.rep, o.rep)], self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return ExtElem([-a for a in self.rep], self.modulus)

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return ExtElem([a - b for a, b in zip(self.rep, o.rep)], self.modulus)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        out = [Fraction(0)] * (2 * len(self.rep) - 1)
        for i, a in enumerate(self.rep):
            if a:
                for j, b in enumerate(o.rep):
                    out[i + j] += a * b
        return ExtElem(out, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result, base = ExtElem.from_rational(1, self.modulus), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self):
        if not self:
            raise DomainError("inverse of zero")
        g, s, _ = poly_gcdex(self.lift(), self.modulus)
        if g.degree > 0:
            raise NotInvertibleError(
                f"{self.lift().format('l')} is a zero divisor modulo {self.modulus.format('l')}"
            )
        return ExtElem.from_poly(s, self.modulus)

    def __truediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self * o.inv()


def ext_arith(op, u, v=None):
    if op == "add":
        return u + v
    if op == "mul":
        return u * v
    if op == "inv":
        return u.inv()
    raise ValueError(f"unknown extension operation {op!r}")


class ExtPoly:
    """Polynomial in x with coefficients in ``Q[l]/<m>``: the ring ``k_l[x]``.

    This is the commutative ring underlying the 1-forms; the
    noncommutative bimodule structure lives in :mod:`qcalc.calculus`.
    """

    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs, modulus):
        cs = [c if isinstance(c, ExtElem) else ExtElem.from_rational(c, modulus) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.modulus = modulus

    @classmethod
    def from_poly(cls, p, modulus):
        return cls([ExtElem.from_rational(c, modulus) for c in p.coeffs], modulus)

    @classmethod
    def from_rows(cls, rows, modulus):
        """Build from ``l``-rows: ``sum l**i * rows[i](x)``."""
        rows = reduce_mod(list(rows), modulus, Poly())
        width = max((len(r.coeffs) for r in rows), default=0)
        return cls([ExtElem([r.coeff(k) for r in rows], modulus) for k in range(width)], modulus)

    def rows(self):
        """Inverse of :meth:`from_rows`: ``deg m`` polynomials in x."""
        n = self.modulus.degree
        return [Poly(c.rep[i] for c in self.coeffs) for i in range(n)]

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExtPoly([other], self.modulus)
        if not isinstance(other, ExtPoly):
            return NotImplemented
        return self.modulus == other.modulus and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.modulus))

    def __repr__(self):
        return f"ExtPoly({list(self.coeffs)!r})"

    def _coerce(self, other):
        if isinstance(other, ExtPoly):
            if other.modulus != self.modulus:
                raise SpecError("polynomials over different extensions")
            return other
        if isinstance(other, (int, Fraction, ExtElem)):
            return ExtPoly([other], self.modulus)
        if isinstance(other, Poly):
            return ExtPoly.from_poly(other, self.modulus)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        zero = ExtElem.from_rational(0, self.modulus)
        return ExtPoly(
            [a + b for a, b in zip_longest(self.coeffs, o.coeffs, fillvalue=zero)], self.modulus
        )

    __radd__ = __add__

    def __neg__(self):
        return ExtPoly([-c for c in self.coeffs], self.modulus)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return ExtPoly([], self.modulus)
        zero = ExtElem.from_rational(0, self.modulus)
        out = [zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] = out[i + j] + a * b
        return ExtPoly(out, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = ExtPoly([1], self.modulus)
        for _ in range(n):
            result = result * self
        return result

    def shifted(self, e):
        """``self(x + e)`` for a ring element ``e``."""
        step = ExtPoly([e, 1], self.modulus)
        acc = ExtPoly([], self.modulus)
        for c in reversed(self.coeffs):
            acc = acc * step + c
        return acc

    def __divmod__(self, other):
        """Long division; needs an invertible leading coefficient in *other*."""
        o = self._coerce(other)
        if not o:
            raise DomainError("division by the zero polynomial")
        lead_inv = o.coeffs[-1].inv()
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        zero = ExtElem.from_rational(0, self.modulus)
        if dq < 0:
            return ExtPoly([], self.modulus), self
        quot = [zero] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(o.coeffs) - 1] * lead_inv
            quot[k] = c
            if c:
                for j, oj in enumerate(o.coeffs):
                    rem[k + j] = rem[k + j] - c * oj
        return ExtPoly(quot, self.modulus), ExtPoly(rem[: len(o.coeffs) - 1], self.modulus)


def solve_linear(rows, rhs):
    """Exact Gaussian elimination over Q.

    Returns one solution of ``rows @ z = rhs`` (free variables set to 0) or
    ``None`` when the system is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == len(aug):
            break
    if any(row[-1] != 0 for row in aug[r:]):
        return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = aug[i][-1]
    return sol
