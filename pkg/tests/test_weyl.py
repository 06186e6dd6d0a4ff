import random
from fractions import Fraction as F

import pytest
import sympy
from conftest import random_weylop, weylops
from hypothesis import given

from bstar.algebra import MPoly
from bstar.errors import VariableClash
from bstar.weyl import (
    WeylOp,
    commutator,
    eval_bipoly_at_operator,
    op_mul,
    substitute_parameter,
)

x, dx = WeylOp.x("x"), WeylOp.d("x")
y, dy = WeylOp.x("y"), WeylOp.d("y")
S = WeylOp.s()
SYM = {v: sympy.Symbol(v) for v in "xyz"}


def sympy_action(op, expr, k=0):
    """Independent oracle: act term by term with sympy differentiation, parameter set to k."""
    out = 0
    for (xe, de, j), c in op.terms.items():
        term = expr
        for v, b in zip(op.variables, de):
            if b:
                term = sympy.diff(term, SYM[v], b)
        mono = sympy.Rational(c.numerator, c.denominator) * sympy.Integer(k) ** j
        for v, a in zip(op.variables, xe):
            mono *= SYM[v] ** a
        out += mono * term
    return sympy.expand(out)


def test_canonical_commutation():
    assert op_mul(dx, x) == op_mul(x, dx) + 1
    assert op_mul(dx, x).scale(F(1, 2)) == (op_mul(x, dx) + 1).scale(F(1, 2))
    Q = op_mul(dy**2, y**2).scale(F(1, 9))
    assert Q == (op_mul(y**2, dy**2) + op_mul(y, dy).scale(4) + 2).scale(F(1, 9))


def test_commutators_as_identities():
    dz = WeylOp.d("z")
    assert commutator(dx, x) == 1
    assert commutator(dx, y) == 0
    assert commutator(dz, x) == 0
    assert commutator(dy, y) == 1
    assert commutator(S, x) == 0 and commutator(S, dx) == 0


def test_substitute_parameter_examples():
    chi = op_mul(y, dy).scale(F(1, 3))
    assert substitute_parameter(S, chi) == S - chi
    P = (op_mul(x, dx) + 1).scale(F(1, 2))
    assert substitute_parameter(op_mul(P, S), chi) == op_mul(P, S - chi)
    assert substitute_parameter(P, chi) == P


def test_substitute_parameter_clash():
    with pytest.raises(VariableClash):
        substitute_parameter(op_mul(x, S), op_mul(x, dx))


def test_eval_bipoly_examples():
    chi = op_mul(y, dy).scale(F(1, 3))
    A = MPoly({(1, 0): 1, (0, 1): 1, (0, 0): F(3, 2)}, ("s", "t"))
    assert eval_bipoly_at_operator(A, chi) == S + chi + F(3, 2)
    assert eval_bipoly_at_operator(MPoly.const(1, ("s", "t")), chi) == 1
    t2 = MPoly({(0, 2): 1}, ("s", "t"))
    euler = op_mul(y, dy)
    result = eval_bipoly_at_operator(t2, euler)
    assert result == op_mul(y**2, dy**2) + euler
    # oracle: (y d_y)^2 y^k = k^2 y^k
    for k in range(6):
        assert sympy_action(result, SYM["y"] ** k) == k**2 * SYM["y"] ** k


def test_param_coefficients_examples():
    P = op_mul((op_mul(x, dx) + 1).scale(F(1, 2)), S)
    assert P.param_coefficients() == [WeylOp.const(0), (op_mul(x, dx) + 1).scale(F(1, 2))]
    assert op_mul(x, dx).param_coefficients() == [op_mul(x, dx)]
    assert (S * S + op_mul(x, S)).param_coefficients() == [0, x, 1]


@given(weylops(), weylops(), weylops())
def test_associative_and_distributive(u, v, w):
    assert op_mul(op_mul(u, v), w) == op_mul(u, op_mul(v, w))
    assert op_mul(u, v + w) == op_mul(u, v) + op_mul(u, w)
    assert op_mul(u + v, w) == op_mul(u, w) + op_mul(v, w)


def test_product_matches_composed_action():
    rng = random.Random(7)
    p = sympy.expand((SYM["x"] + 2 * SYM["y"] - SYM["z"] + 1) ** 4 * SYM["x"] ** 2)
    for _ in range(40):
        u, v = random_weylop(rng), random_weylop(rng)
        assert sympy_action(op_mul(u, v), p) == sympy_action(u, sympy_action(v, p))


@given(weylops(variables=("x",)), weylops(variables=("y", "z")))
def test_disjoint_variables_commute(u, v):
    assert op_mul(u, v) == op_mul(v, u)


@given(weylops(with_param=True))
def test_substitute_zero_is_identity(p):
    assert substitute_parameter(p, WeylOp.const(0)) == p


@given(weylops(variables=("x",), with_param=True), weylops(variables=("y",)))
def test_left_and_right_placement_agree(p, chi):
    shift = S - chi
    right = WeylOp.const(0)
    power = WeylOp.const(1)
    for Pj in p.param_coefficients():
        right = right + op_mul(power, Pj)
        power = op_mul(power, shift)
    assert substitute_parameter(p, chi) == right


def test_printing_order():
    R = op_mul(y, dy).scale(F(11, 18)) + op_mul(op_mul(x, dx), S).scale(F(1, 2)) + F(35, 36)
    assert str(R) == "1/2*x*d_x*s + 11/18*y*d_y + 35/36"
