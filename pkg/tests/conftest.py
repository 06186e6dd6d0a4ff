import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from bstar.algebra import MPoly
from bstar.star import FactoredPoly
from bstar.weyl import WeylOp

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else ""))


@pytest.fixture
def record():
    """Context-manager factory that records one acceptance line per criterion."""

    class _Criterion:
        def __init__(self, name):
            self.name = name
            self.detail = ""

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            ACCEPTANCE.append((self.name, exc_type is None, self.detail))
            return False

    return _Criterion


# --- strategies ----------------------------------------------------------------

small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def mpolys(draw, variables=("x", "y", "z"), max_terms=4, max_deg=3):
    n = len(variables)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        terms[exps] = draw(small_fractions)
    return MPoly(terms, variables)


@st.composite
def factored(draw, max_roots=3, max_mult=3, allow_one=True):
    k = draw(st.integers(0 if allow_one else 1, max_roots))
    roots = draw(st.lists(small_fractions, min_size=k, max_size=k, unique=True))
    return FactoredPoly((r, draw(st.integers(1, max_mult))) for r in roots)


@st.composite
def weylops(draw, variables=("x", "y", "z"), max_terms=3, max_deg=3, with_param=False):
    n = len(variables)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        budget = max_deg
        xe, de = [], []
        for _ in range(n):
            a = draw(st.integers(0, budget))
            budget -= a
            xe.append(a)
        for _ in range(n):
            b = draw(st.integers(0, budget))
            budget -= b
            de.append(b)
        j = draw(st.integers(0, min(budget, 2))) if with_param else 0
        terms[(tuple(xe), tuple(de), j)] = draw(small_fractions)
    return WeylOp(terms, variables)


# --- seeded generators for fixed-count sweeps -------------------------------------


def random_fraction(rng):
    return Fraction(rng.randint(-6, 6), rng.randint(1, 4))


def random_factored(rng, max_roots=3, max_mult=3, min_roots=1):
    k = rng.randint(min_roots, max_roots)
    roots = set()
    while len(roots) < k:
        roots.add(random_fraction(rng))
    return FactoredPoly((r, rng.randint(1, max_mult)) for r in roots)


def random_weylop(rng, variables=("x", "y", "z"), max_terms=3, max_deg=3, with_param=False):
    n = len(variables)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        budget = max_deg
        xe, de = [], []
        for _ in range(n):
            a = rng.randint(0, budget)
            budget -= a
            xe.append(a)
        for _ in range(n):
            b = rng.randint(0, budget)
            budget -= b
            de.append(b)
        # spread the degree budget randomly over positions
        order = list(range(2 * n))
        rng.shuffle(order)
        flat = xe + de
        flat = [flat[i] for i in order]
        xe, de = flat[:n], flat[n:]
        j = rng.randint(0, min(budget, 1)) if with_param else 0
        terms[(tuple(xe), tuple(de), j)] = random_fraction(rng)
    return WeylOp(terms, variables)


def random_mpoly(rng, variables=("x", "y", "z"), max_terms=3, max_deg=2, nonzero=False):
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            terms[tuple(rng.randint(0, max_deg) for _ in variables)] = random_fraction(rng)
        p = MPoly(terms, variables)
        if p or not nonzero:
            return p


@pytest.fixture
def rng():
    return random.Random(20261016)


# --- shared certificates ---------------------------------------------------------


def square_certificate(var="x", btilde=None):
    """``f = var^2`` with ``P = (1/4) d_var * (2 var)``, so ``P f^s = (s+1/2) f^s``."""
    from bstar.certify import Certificate

    btilde = btilde if btilde is not None else FactoredPoly({Fraction(1, 2): 1})
    return Certificate(MPoly.var(var) ** 2, (var,), btilde, [(WeylOp.d(var).scale(Fraction(1, 4)), 1)])


CUSP_R = {
    # (x exps, d exps, s power) over (x, y) -> coefficient
    ((1, 0), (1, 0), 1): Fraction(1, 2),
    ((0, 0), (0, 0), 1): Fraction(1, 2),
    ((1, 1), (1, 1), 0): Fraction(1, 6),
    ((0, 2), (0, 2), 0): Fraction(1, 9),
    ((1, 0), (1, 0), 0): Fraction(3, 4),
    ((0, 1), (0, 1), 0): Fraction(11, 18),
    ((0, 0), (0, 0), 0): Fraction(35, 36),
}
