import random
from fractions import Fraction as F

import pytest
from conftest import random_mpoly, random_weylop

from bstar.algebra import MPoly
from bstar.errors import BaseMismatch, ParameterMismatch, ZeroBase
from bstar.pfs import (
    PowerElement,
    apply,
    apply_to_polynomial,
    equal,
    mk_power,
    specialize,
)
from bstar.weyl import WeylOp, op_mul

X, Y = MPoly.var("x"), MPoly.var("y")
x, dx = WeylOp.x("x"), WeylOp.d("x")
y, dy = WeylOp.x("y"), WeylOp.d("y")


def sigma(name="s"):
    return MPoly.var(name)


def test_mk_power():
    e = mk_power(X**2)
    assert e.levels == {0: MPoly.const(1, ("x", "s"))}
    assert mk_power(X**2 + Y**3, "u").param == "u"
    with pytest.raises(ZeroBase):
        mk_power(MPoly.const(0))


def test_apply_examples():
    f = mk_power(X**2)
    assert equal(apply(dx, f), PowerElement(X**2, "s", {-1: 2 * X * sigma()}))
    assert equal(apply(op_mul(dx, x).scale(F(1, 2)), f), f.times_poly(sigma() + F(1, 2)))
    g = mk_power(Y**3, "t")
    Q = op_mul(dy**2, y**2).scale(F(1, 9))
    t = sigma("t")
    assert equal(apply(Q, g), g.times_poly((t + F(1, 3)) * (t + F(2, 3))))


def test_apply_parameter_mismatch():
    with pytest.raises(ParameterMismatch):
        apply(WeylOp.s(), mk_power(Y**3, "t"))


def test_equal_examples():
    F2 = X**2
    s = sigma()
    a = PowerElement(F2, "s", {0: s})
    assert equal(a, PowerElement(F2, "s", {0: s}))
    assert equal(PowerElement(F2, "s", {-1: 2 * s * X}), PowerElement(F2, "s", {-1: s * (2 * X)}))
    assert equal(PowerElement(F2, "s", {-1: X**2}), PowerElement(F2, "s", {0: 1}))
    assert not equal(PowerElement(F2, "s", {-1: X}), PowerElement(F2, "s", {0: 1}))
    with pytest.raises(BaseMismatch):
        equal(mk_power(X**2), mk_power(X**3))


def test_apply_to_polynomial_examples():
    assert apply_to_polynomial(dx, X**3) == 3 * X**2
    half_dx_x = op_mul(dx, x).scale(F(1, 2))
    assert apply_to_polynomial(half_dx_x, X**4, 2) == F(5, 2) * X**4
    h = X**2 + Y**3
    R = (
        op_mul(op_mul(x, dx), WeylOp.s()).scale(F(1, 2))
        + WeylOp.s().scale(F(1, 2))
        + op_mul(op_mul(x, y), op_mul(dx, dy)).scale(F(1, 6))
        + op_mul(y**2, dy**2).scale(F(1, 9))
        + op_mul(x, dx).scale(F(3, 4))
        + op_mul(y, dy).scale(F(11, 18))
        + F(35, 36)
    )
    assert apply_to_polynomial(R, h**2, 2) == (2 + F(5, 6)) * (2 + F(7, 6)) * h**2


def _random_element(rng):
    base = random_mpoly(rng, ("x", "y"), max_terms=2, max_deg=2, nonzero=True)
    while base.is_constant():
        base = random_mpoly(rng, ("x", "y"), max_terms=2, max_deg=2, nonzero=True)
    coeff = random_mpoly(rng, ("x", "y", "s"), max_terms=2, max_deg=2)
    return PowerElement(base, "s", {rng.randint(-1, 1): coeff}, ("x", "y"))


def test_module_action_and_linearity():
    rng = random.Random(11)
    for _ in range(40):
        P = random_weylop(rng, ("x", "y"), max_deg=2, with_param=True)
        Q = random_weylop(rng, ("x", "y"), max_deg=2, with_param=True)
        e = _random_element(rng)
        assert equal(apply(op_mul(P, Q), e), apply(P, apply(Q, e)))
        assert equal(apply(P + Q, e), apply(P, e) + apply(Q, e))


def test_specialization_consistency():
    rng = random.Random(5)
    for _ in range(30):
        P = random_weylop(rng, ("x", "y"), max_deg=3, with_param=True)
        base = random_mpoly(rng, ("x", "y"), max_terms=2, max_deg=2, nonzero=True)
        k = rng.randint(1, 4)
        image = apply(P, mk_power(base))
        shifted = PowerElement(base, "s", image.levels, ("x", "y"))
        # lift so specialization never meets a negative power
        lowest = min(shifted.levels, default=0)
        if k + lowest < 0:
            continue
        assert specialize(shifted, k) == apply_to_polynomial(P, base**k, k)


def test_multiplying_by_base_raises_level():
    rng = random.Random(3)
    for _ in range(20):
        e = _random_element(rng)
        if not e.levels:
            continue
        k = next(iter(e.levels))
        raised = PowerElement(e.base, "s", {k + 1: e.levels[k]}, ("x", "y"))
        assert equal(e.times_poly(e.base), raised)
