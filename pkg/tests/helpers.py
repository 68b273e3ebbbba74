"""Seeded random generators shared by the test modules."""

import random
from fractions import Fraction

from qcalc.algebra import Poly
from qcalc.calculus import CalculusSpec, Prolongation
from qcalc.exterior import QuadSpec

SEED = 20240611

CORE_MODULI = {
    "l^2+1": Poly((1, 0, 1)),
    "l^2+4": Poly((4, 0, 1)),
    "l^2": Poly((0, 0, 1)),
    "l-3": Poly((-3, 1)),
    "l^3+l+1": Poly((1, 1, 0, 1)),
}

QUAD_QS = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))


def rng(offset=0):
    return random.Random(SEED + offset)


def rand_rational(r):
    return Fraction(r.randint(-9, 9), r.randint(1, 9))


def rand_poly(r, max_deg):
    return Poly(rand_rational(r) for _ in range(r.randint(0, max_deg) + 1))


def core_specs():
    return {name: CalculusSpec(m) for name, m in CORE_MODULI.items()}


def quad_specs():
    return [QuadSpec(q, p) for q in QUAD_QS for p in Prolongation]


def spec_id(spec):
    return str(spec)

#: acceptance results, criterion number -> PASS/FAIL line
RESULTS = {}
