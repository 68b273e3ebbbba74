from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qcalc.algebra import (
    BiPoly,
    ExtElem,
    ExtPoly,
    Irreducibility,
    NEG_INF,
    Poly,
    X,
    ext_arith,
    ext_reduce,
    irreducibility_status,
    poly_arith,
    shift_lambda,
    solve_linear,
)
from qcalc.errors import DomainError, ExactDivisionError, NotInvertibleError, SpecError

from helpers import rand_poly, rng

I_MOD = Poly((1, 0, 1))

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
polys = st.lists(rationals, max_size=6).map(Poly)


def test_canonical_form_strips_trailing_zeros():
    assert Poly((1, 2, 0, 0)).coeffs == (1, 2)
    assert Poly((0, 0)) == Poly()
    assert Poly().degree == NEG_INF
    assert Poly.const(Fraction(4, 6)).coeff(0) == Fraction(2, 3)


def test_format():
    assert Poly((1, -1, Fraction(3, 2))).format() == "3/2*x^2-x+1"
    assert Poly().format() == "0"
    assert Poly((0, 0, 1)).format("l") == "l^2"


def test_poly_arith_examples():
    assert poly_arith("compose", X**2 + 1, X + 1) == X**2 + 2 * X + 2
    assert poly_arith("derive", X**3) == 3 * X**2
    assert poly_arith("divexact", X**2 - 1, X - 1) == X + 1


def test_divexact_errors():
    with pytest.raises(ExactDivisionError):
        (X**2 + 1).divexact(X - 1)
    with pytest.raises(DomainError):
        divmod(X, Poly())


@settings(max_examples=200, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == Poly()


@settings(max_examples=200, deadline=None)
@given(polys, polys)
def test_divmod_identity(f, g):
    if not g:
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


def test_divexact_of_product_recovers_factor():
    r = rng(1)
    for _ in range(100):
        f, g = rand_poly(r, 12), rand_poly(r, 12)
        if g:
            assert (f * g).divexact(g) == f


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def test_derive_is_a_derivation(f, g):
    assert (f * g).derive() == f.derive() * g + f * g.derive()
    assert f.compose(g).derive() == f.derive().compose(g) * g.derive()


def test_antiderivative_inverts_derive():
    f = Poly((5, 1, 3))
    assert f.antiderivative().derive() == f
    assert f.antiderivative().coeff(0) == 0


def test_shift_lambda_examples():
    assert shift_lambda(X**2) == BiPoly([X**2, 2 * X, Poly.const(1)])
    assert shift_lambda(Poly.const(1)) == BiPoly([Poly.const(1)])
    assert shift_lambda(X**3) == BiPoly([X**3, 3 * X**2, 3 * X, Poly.const(1)])


@settings(max_examples=100, deadline=None)
@given(polys)
def test_shift_lambda_at_zero_recovers_f(f):
    assert shift_lambda(f).at_outer_zero() == f


@settings(max_examples=100, deadline=None)
@given(polys, rationals)
def test_shift_lambda_at_rational_is_shift(f, a):
    rows = shift_lambda(f).rows
    assert sum((r * a**j for j, r in enumerate(rows)), Poly()) == f.shift(a)


def test_ext_reduce_examples():
    q = Fraction(3, 2)
    assert ext_reduce(BiPoly([X**2, 2 * X, Poly.const(1)]), I_MOD) == [X**2 - 1, 2 * X]
    assert ext_reduce(BiPoly([0, 0, 0, 1]), Poly((q * q, 0, 1))) == [Poly(), Poly.const(-q * q)]
    m3 = Poly((1, 1, 0, 1))
    assert ext_reduce(BiPoly([X + 4]), m3) == [X + 4, Poly(), Poly()]


def test_reduced_shift_is_multiplicative():
    r = rng(2)
    for m in (I_MOD, Poly((0, 0, 1)), Poly((1, 1, 0, 1))):
        for _ in range(30):
            f, g = rand_poly(r, 5), rand_poly(r, 5)
            sf = ExtPoly.from_rows(ext_reduce(shift_lambda(f), m), m)
            sg = ExtPoly.from_rows(ext_reduce(shift_lambda(g), m), m)
            sfg = ExtPoly.from_rows(ext_reduce(shift_lambda(f * g), m), m)
            assert sf * sg == sfg


def test_ext_arith_examples():
    lam = ExtElem.gen(I_MOD)
    assert ext_arith("inv", lam) == -lam
    assert ext_arith("mul", 1 + lam, 1 - lam) == 2
    with pytest.raises(NotInvertibleError):
        ext_arith("inv", ExtElem.gen(Poly((0, 0, 1))))
    with pytest.raises(DomainError):
        ExtElem.from_rational(0, I_MOD).inv()


def test_inverse_on_random_elements():
    r = rng(3)
    count = 0
    while count < 200:
        u = ExtElem([Fraction(r.randint(-20, 20), r.randint(1, 7)) for _ in range(2)], I_MOD)
        if not u:
            continue
        assert u * u.inv() == 1
        assert u / u == 1
        count += 1


def test_ext_elem_length_and_reduction():
    lam = ExtElem.gen(I_MOD)
    assert len((lam**5).rep) == 2
    assert lam**2 == -1
    assert lam**-1 == -lam


def test_irreducibility_status_examples():
    assert irreducibility_status(Poly((1, 0, 1))) is Irreducibility.IRREDUCIBLE
    assert irreducibility_status(Poly((-1, 0, 1))) is Irreducibility.REDUCIBLE
    assert irreducibility_status(Poly((1, 0, 0, 0, 1))) is Irreducibility.UNKNOWN
    assert irreducibility_status(Poly((-3, 1))) is Irreducibility.IRREDUCIBLE
    assert irreducibility_status(Poly((1, 1, 0, 1))) is Irreducibility.IRREDUCIBLE
    assert irreducibility_status(Poly((0, 0, 1))) is Irreducibility.REDUCIBLE
    with pytest.raises(SpecError):
        irreducibility_status(Poly((1, 0, 2)))


def test_ext_poly_divmod_and_shift():
    lam = ExtElem.gen(I_MOD)
    f = ExtPoly.from_poly(X**2 + 1, I_MOD)
    q, r = divmod(f, ExtPoly([lam, 1], I_MOD))
    assert not r
    assert q == ExtPoly([-lam, 1], I_MOD)
    assert ExtPoly.from_poly(X**2, I_MOD).shifted(lam).rows() == [X**2 - 1, 2 * X]


def test_solve_linear():
    assert solve_linear([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve_linear([[1, 1], [2, 2]], [1, 3]) is None
    assert solve_linear([[1, 1], [2, 2]], [1, 2]) == [1, 0]
