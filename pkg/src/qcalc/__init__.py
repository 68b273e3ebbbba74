"""Exact noncommutative differential calculi on Q[x] built from field extensions."""

from .algebra import BiPoly, ExtElem, ExtPoly, Irreducibility, Poly, Rational, X
from .calculus import (
    BiForm,
    CalculusSpec,
    OneForm,
    Prolongation,
    Side,
    act_left,
    act_right,
    calculi_isomorphic,
    coact,
    differential,
    invariant_basis,
    recover_min_poly,
)
from .exterior import QuadSpec, TwoForm, d_one, find_primitive, is_closed, wedge

__version__ = "0.1.0"
