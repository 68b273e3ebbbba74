"""Differentiable algebra maps between calculi and the graded coproduct check."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Poly, X, reduce_mod, shift_lambda
from .calculus import CalculusSpec, OneForm, act_left, act_right, differential, lambda_product
from .errors import NotDifferentiableError, SpecError, UnsupportedSpecError
from .exterior import QuadSpec, TwoForm, left_act_two, wedge


@dataclass(frozen=True)
class PolyMap:
    """The algebra map ``x -> phi`` from the source calculus to the target one."""

    phi: Poly
    source: CalculusSpec
    target: CalculusSpec

    def then(self, other):
        """Composite algebra map: first ``self``, then ``other``."""
        if self.target.m != other.source.m:
            raise SpecError("maps are not composable")
        return PolyMap(self.phi.compose(other.phi), self.source, other.target)


@dataclass(frozen=True)
class Differentiability:
    """Verdict of :func:`is_differentiable`.

    ``certificate`` is the nonzero value ``m1(u)`` in ``k_l2[x]``, written
    in the same ``l``-row coordinates as a target 1-form.
    """

    differentiable: bool
    reason: str
    certificate: OneForm | None = None

    def __bool__(self):
        return self.differentiable


def _step(pmap):
    """``u = phi(x + l2) - phi(x)`` as reduced ``l``-rows."""
    rows = list(shift_lambda(pmap.phi).rows)
    if rows:
        rows[0] = Poly()
    return reduce_mod(rows, pmap.target.m, Poly())


def _evaluate(p, u, m):
    """``p(u)`` in the commutative ring ``k_l[x]``."""
    acc = [Poly()] * m.degree
    for c in reversed(p.coeffs):
        acc = lambda_product(acc, u, m)
        acc[0] = acc[0] + c
    return acc


def is_differentiable(pmap):
    if not differential(pmap.phi, pmap.target):
        return Differentiability(True, "d(phi) = 0")
    value = _evaluate(pmap.source.m, _step(pmap), pmap.target.m)
    if not any(value):
        return Differentiability(True, "m1(phi(x+l2)-phi(x)) = 0")
    return Differentiability(False, "m1(phi(x+l2)-phi(x)) != 0", OneForm(value, pmap.target))


def pushforward(pmap, P):
    """``phi_*(P(l1, x)) = (d phi) P(phi(x + l2) - phi(x), phi(x))``."""
    if P.spec.m != pmap.source.m:
        raise SpecError("1-form is not over the source calculus")
    dphi = differential(pmap.phi, pmap.target)
    if not dphi:
        return OneForm.zero(pmap.target)
    if not is_differentiable(pmap):
        raise NotDifferentiableError(
            f"x -> {pmap.phi} is not differentiable from {pmap.source.m.format('l')} "
            f"to {pmap.target.m.format('l')}"
        )
    m2 = pmap.target.m
    u = _step(pmap)
    acc = [Poly()] * m2.degree
    for row in reversed(P.coeffs):
        acc = lambda_product(acc, u, m2)
        acc[0] = acc[0] + row.compose(pmap.phi)
    return OneForm(lambda_product(dphi.coeffs, acc, m2), pmap.target)


def check_chain_rule(pmap, f):
    """``d(f o phi) == phi_*(d f)``."""
    lhs = differential(f.compose(pmap.phi), pmap.target)
    rhs = pushforward(pmap, differential(f, pmap.source))
    return lhs == rhs


# Graded coproduct on the degree <= 2 truncation of the exterior algebra.
#
# Homogeneous elements are Poly (degree 0), OneForm (1) or TwoForm (2), all
# with right coefficients; anything of degree > 2 is dropped.  Tensors are
# dicts {(left_key, right_key): coeff} on the basis x^n, dx x^n, w x^n,
# dxdx x^n, dxw x^n with keys (label, n).

_LABELS = {0: ("1",), 1: ("dx", "w"), 2: ("dxdx", "dxw")}
_DEG = {"1": 0, "dx": 1, "w": 1, "dxdx": 2, "dxw": 2}


def _degree(e):
    if isinstance(e, Poly):
        return 0
    if isinstance(e, OneForm):
        return 1
    return 2


def _components(e):
    if isinstance(e, Poly):
        return (e,)
    if isinstance(e, OneForm):
        return e.coeffs
    return e.as_pair()


def _expand(e):
    out = {}
    for label, poly in zip(_LABELS[_degree(e)], _components(e)):
        for n, c in enumerate(poly.coeffs):
            if c:
                out[(label, n)] = c
    return out


class _Truncated:
    """Multiplication in the degree <= 2 truncation for one exterior algebra."""

    def __init__(self, spec):
        self.spec = spec
        self.dx, self.w = spec.basis()

    def basis_element(self, key):
        label, n = key
        xn = Poly.monomial(n)
        if label == "1":
            return xn
        if label == "dx":
            return act_right(self.dx, xn)
        if label == "w":
            return act_right(self.w, xn)
        if label == "dxdx":
            return TwoForm(xn, Poly(), self.spec)
        return TwoForm(Poly(), xn, self.spec)

    def mul(self, a, b):
        da, db = _degree(a), _degree(b)
        if da + db > 2:
            return None
        if da == 0 and db == 0:
            return a * b
        if da == 0:
            return act_left(a, b) if db == 1 else left_act_two(a, b)
        if db == 0:
            return act_right(a, b) if da == 1 else a * b
        return wedge(a, b, self.spec)


class TensorElement:
    """Element of the Koszul-signed tensor square of the truncation."""

    def __init__(self, alg, terms=None):
        self.alg = alg
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def pure(cls, alg, left, right):
        terms = {}
        for kl, cl in _expand(left).items():
            for kr, cr in _expand(right).items():
                terms[(kl, kr)] = terms.get((kl, kr), 0) + cl * cr
        return cls(alg, terms)

    def __add__(self, other):
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return TensorElement(self.alg, terms)

    def __neg__(self):
        return TensorElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """``(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd``."""
        alg = self.alg
        out = TensorElement(alg)
        for (ka, kb), c1 in self.terms.items():
            for (kc, kd), c2 in other.terms.items():
                if _DEG[ka[0]] + _DEG[kb[0]] + _DEG[kc[0]] + _DEG[kd[0]] > 2:
                    continue
                sign = -1 if _DEG[kb[0]] * _DEG[kc[0]] % 2 else 1
                ac = alg.mul(alg.basis_element(ka), alg.basis_element(kc))
                bd = alg.mul(alg.basis_element(kb), alg.basis_element(kd))
                out = out + TensorElement.pure(alg, ac, bd).scale(sign * c1 * c2)
        return out

    def scale(self, c):
        return TensorElement(self.alg, {k: v * c for k, v in self.terms.items()})

    def __bool__(self):
        return bool(self.terms)


@dataclass
class HopfReport:
    spec: QuadSpec
    results: list

    @property
    def passed(self):
        return all(ok for _, ok in self.results)

    def lines(self):
        return [f"{'PASS' if ok else 'FAIL'}: {name}" for name, ok in self.results]


def super_hopf_check(spec):
    """Check that the primitive coproduct respects every defining relation."""
    if spec.q != 1:
        raise UnsupportedSpecError("the super-Hopf presentation is stated for q = 1")
    alg = _Truncated(spec)
    one = Poly.const(1)
    x, th, w = X, alg.dx, alg.w

    def gen(e):
        return TensorElement.pure(alg, e, one) + TensorElement.pure(alg, one, e)

    Dx, Dth, Dw = gen(x), gen(th), gen(w)
    relations = [
        ("D(x th - th x - w) = 0", Dx * Dth - Dth * Dx - Dw),
        ("D(x w - w x + th) = 0", Dx * Dw - Dw * Dx + Dth),
        ("D(w th + th w) = 0", Dw * Dth + Dth * Dw),
        ("D(th^2 - w^2) = 0", Dth * Dth - Dw * Dw),
    ]
    if spec.skew:
        relations.append(("D(th^2) = 0", Dth * Dth))
    results = [(name, not value) for name, value in relations]
    unit = TensorElement.pure(alg, one, one)
    unit_ok = all(not (unit * D - D) and not (D * unit - D) for D in (Dx, Dth, Dw))
    results.append(("D(1) = 1 (x) 1 is the unit", unit_ok))
    return HopfReport(spec, results)
