import random
from fractions import Fraction as F

import pytest
from conftest import CUSP_R, random_factored, square_certificate

from bstar.algebra import MPoly
from bstar.certify import (
    Certificate,
    EulerCertificate,
    brieskorn_pham,
    compose,
    euler_field,
    integer_check,
    order_independent,
    simple_root_shortcut,
    suspension_certificate,
    theorem_operator,
    verify_certificate,
    verify_euler,
)
from bstar.errors import BadExponent, NotApplicable, NotWeightedHomogeneous, VariableClash
from bstar.pfs import equal, mk_power
from bstar.star import FactoredPoly, star, star_oracle
from bstar.weyl import WeylOp, op_mul

X, Y = MPoly.var("x"), MPoly.var("y")


def names(report):
    return [name for name, _ in report.failures()]


def suspension_ctilde(r):
    return FactoredPoly({F(i, r): 1 for i in range(1, r)})


def test_square_certificate_verifies():
    assert verify_certificate(square_certificate())
    assert integer_check(square_certificate(), 3)


def test_perturbed_certificate_reports_residual():
    bad = square_certificate(btilde=FactoredPoly({F(1, 3): 1}))
    report = verify_certificate(bad)
    assert not report
    assert names(report) == ["functional_equation"]
    assert equal(report.residual, mk_power(X**2).times_poly(MPoly.const(F(1, 6))))


@pytest.mark.parametrize("r", [2, 3, 4, 5, 6])
def test_suspension_certificates(r):
    e = suspension_certificate(r)
    assert e.ctilde == suspension_ctilde(r)
    assert e.chi == op_mul(WeylOp.x("z"), WeylOp.d("z")).scale(F(1, r))
    Q = op_mul(WeylOp.d("z") ** (r - 1), WeylOp.x("z") ** (r - 1)).scale(F(1, r ** (r - 1)))
    assert e.Q == Q
    assert verify_euler(e)
    assert verify_certificate(e.to_certificate())


def test_suspension_small_cases():
    z, dz = WeylOp.x("z"), WeylOp.d("z")
    assert suspension_certificate(2).Q == op_mul(dz, z).scale(F(1, 2))
    assert suspension_certificate(3).Q == op_mul(dz**2, z**2).scale(F(1, 9))


@pytest.mark.parametrize("r", [1, 0, -3, 2.0])
def test_suspension_bad_exponent(r):
    with pytest.raises(BadExponent):
        suspension_certificate(r)


def test_verify_euler_wrong_field():
    good = suspension_certificate(3, "y")
    bad = EulerCertificate(
        good.g, good.variables, op_mul(WeylOp.x("y"), WeylOp.d("y")).scale(F(1, 2)), good.Q, good.ctilde, good.q_decomposition
    )
    report = verify_euler(bad)
    assert not report
    assert names(report) == ["euler"]


def test_euler_field_examples():
    assert euler_field(Y**3, [F(1, 3)]) == op_mul(WeylOp.x("y"), WeylOp.d("y")).scale(F(1, 3))
    chi = euler_field(X**2 * Y, [F(1, 4), F(1, 2)])
    expected = op_mul(WeylOp.x("x"), WeylOp.d("x")).scale(F(1, 4)) + op_mul(WeylOp.x("y"), WeylOp.d("y")).scale(F(1, 2))
    assert chi == expected
    with pytest.raises(NotWeightedHomogeneous):
        euler_field(Y**3 + Y**2, [F(1, 3)])
    with pytest.raises(ValueError):
        euler_field(Y**3, [F(1, 3), 1])


def test_compose_cusp():
    h = compose(square_certificate(), suspension_certificate(3, "y"))
    assert h.btilde == FactoredPoly({F(5, 6): 1, F(7, 6): 1})
    assert h.operator == WeylOp(CUSP_R, ("x", "y"))
    assert h.f == X**2 + Y**3
    assert verify_certificate(h)
    assert integer_check(h, 5)


def test_compose_membership_reassembles_theorem_operator():
    cf, eg = square_certificate(), suspension_certificate(3, "y")
    h = compose(cf, eg)
    gens = h.generators
    assert [g for g in gens] == [X**2 + Y**3, 2 * X, 3 * Y**2]
    assert h.operator == theorem_operator(cf, eg)
    assert all(0 <= i < len(gens) for _, i in h.decomposition)


def test_compose_two_squares():
    h = compose(square_certificate(), suspension_certificate(2, "y"))
    assert h.btilde == FactoredPoly({1: 1})
    assert verify_certificate(h)


def test_brieskorn_pham_three_terms():
    cert, stages = brieskorn_pham([("x", 2), ("y", 3), ("z", 5)])
    expected = star_oracle(star_oracle(FactoredPoly({F(1, 2): 1}), suspension_ctilde(3)), suspension_ctilde(5))
    assert cert.btilde == expected
    roots = {F(5, 6) + F(i, 5) for i in range(1, 5)} | {F(7, 6) + F(i, 5) for i in range(1, 5)}
    assert cert.btilde == FactoredPoly({a: 1 for a in roots})
    assert [(v, r) for v, r, _ in stages] == [("y", 3), ("z", 5)]
    assert verify_certificate(cert)
    assert integer_check(cert, 3)


def test_compose_variable_clash():
    with pytest.raises(VariableClash):
        compose(square_certificate("x"), suspension_certificate(3, "x"))


def test_compose_rejects_unverified_input():
    with pytest.raises(ValueError):
        compose(square_certificate(btilde=FactoredPoly({F(1, 3): 1})), suspension_certificate(3, "y"))


def test_smooth_factor():
    smooth = Certificate(X, ("x",), FactoredPoly.one(), [(WeylOp.const(1), 1)])
    assert verify_certificate(smooth)
    h = compose(smooth, suspension_certificate(3, "y"))
    assert h.btilde.is_one()
    assert h.operator == 1


def test_order_independence_on_examples():
    cf = square_certificate()
    for r in range(2, 6):
        assert order_independent(cf, suspension_certificate(r, "y"))
    cusp = compose(cf, suspension_certificate(3, "y"))
    assert order_independent(cusp, suspension_certificate(5, "z"))


def test_integer_check_detects_perturbation():
    h = compose(square_certificate(), suspension_certificate(3, "y"))
    bent = Certificate(h.f, h.variables, h.btilde, h.decomposition + ((WeylOp.const(F(1, 7)), 0),))
    report = integer_check(bent, 1)
    assert not report and names(report) == ["k=1"]
    with pytest.raises(ValueError):
        integer_check(h, 0)


def test_certificate_validation():
    with pytest.raises(ValueError):
        Certificate(X**2, ("s",), FactoredPoly.one(), [])
    with pytest.raises(ValueError):
        Certificate(X**2 + Y, ("x",), FactoredPoly.one(), [])
    with pytest.raises(ValueError):
        Certificate(X**2, ("x",), FactoredPoly.one(), [(WeylOp.const(1), 2)])


def test_simple_root_shortcut_examples():
    half = FactoredPoly({F(1, 2): 1})
    assert simple_root_shortcut(half, 3) == FactoredPoly({F(5, 6): 1, F(7, 6): 1})
    assert simple_root_shortcut(half, 2) == FactoredPoly({1: 1})
    with pytest.raises(NotApplicable):
        simple_root_shortcut(FactoredPoly({F(1, 3): 1, F(2, 3): 1}), 3)
    with pytest.raises(BadExponent):
        simple_root_shortcut(half, 1)


def test_simple_root_shortcut_agrees_with_star():
    rng = random.Random(41)
    checked = 0
    for _ in range(200):
        bf = random_factored(rng, max_mult=1)
        r = rng.randint(2, 5)
        try:
            short = simple_root_shortcut(bf, r)
        except NotApplicable:
            continue
        assert short == star(bf, suspension_ctilde(r))
        checked += 1
    assert checked > 50
