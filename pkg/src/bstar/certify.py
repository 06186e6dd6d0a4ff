"""Functional-equation certificates and their Thom-Sebastiani composition.

A :class:`Certificate` records ``P(s) * f^s == b(s) * f^s`` together with a
decomposition of ``P`` over the Jacobian generators ``[f, df/dx_1, ...]``.
An :class:`EulerCertificate` records the data for an Euler-homogeneous
``g``: a vector field ``chi`` with ``chi(g) == g`` and a parameter-free
``Q`` with ``Q * g^t == c(t) * g^t``.

:func:`compose` builds the equation for ``h = f + g`` as

    R(s) = sum_j A(s, chi) (s - chi)^j P_j + B(s, chi) Q

where ``(b*c)(s) == A(s,t) b(s-t) + B(s,t) c(t)``, and rewrites the
``f``-generator terms over ``J_h`` using ``f = h - sum_j eta_j dg/dy_j``.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import MPoly, as_fraction
from .errors import (
    BadExponent,
    ComposeVerificationFailure,
    InternalInconsistency,
    NotApplicable,
    NotWeightedHomogeneous,
    VariableClash,
)
from .pfs import apply, apply_to_polynomial, mk_power, reduce_levels
from .star import FactoredPoly, cofactors_theorem_form, star
from .weyl import WeylOp, eval_bipoly_at_operator, op_mul, substitute_parameter

log = logging.getLogger(__name__)

RESERVED = ("s", "t")


def _check_variables(variables):
    for v in variables:
        if v in RESERVED or v.startswith("d_"):
            raise ValueError(f"{v!r} is reserved and cannot be a geometric variable")
    if len(set(variables)) != len(variables):
        raise ValueError(f"repeated variable in {variables}")


def _assemble(decomposition, generators):
    total = WeylOp.const(0)
    for op, index in decomposition:
        total = total + op_mul(op, WeylOp.from_poly(generators[index]))
    return total


@dataclass(frozen=True)
class Certificate:
    """``P(s) f^s = b(s) f^s`` with ``P = sum(C_i * generators[i])``.

    ``generators`` is ``[f, df/dx_1, ..., df/dx_n]`` over ``variables``.
    """

    f: MPoly
    variables: tuple
    btilde: FactoredPoly
    decomposition: tuple

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "decomposition", tuple((op, int(i)) for op, i in self.decomposition))
        _check_variables(self.variables)
        stray = set(self.f.used_variables()) - set(self.variables)
        if stray:
            raise ValueError(f"f uses undeclared variables {sorted(stray)}")
        n = len(self.variables)
        for _, i in self.decomposition:
            if not 0 <= i <= n:
                raise ValueError(f"generator index {i} out of range 0..{n}")

    @property
    def generators(self):
        f = self.f.with_variables(self.variables)
        return [f] + [f.partial(v) for v in self.variables]

    @property
    def operator(self):
        return _assemble(self.decomposition, self.generators)


@dataclass(frozen=True)
class EulerCertificate:
    """Euler-homogeneous ``g`` with ``chi(g) = g`` and ``Q g^t = c(t) g^t``.

    ``q_decomposition`` indexes ``[dg/dy_1, ..., dg/dy_m]``;
    ``euler_coefficients`` are the ``eta_j`` with ``chi = sum eta_j d_{y_j}``.
    """

    g: MPoly
    variables: tuple
    chi: WeylOp
    Q: WeylOp
    ctilde: FactoredPoly
    q_decomposition: tuple
    euler_coefficients: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "q_decomposition", tuple((op, int(i)) for op, i in self.q_decomposition))
        _check_variables(self.variables)
        if self.euler_coefficients is None:
            try:
                eta = tuple(vector_field_coefficients(self.chi, self.variables))
            except ValueError:
                eta = ()  # reported by verify_euler
            object.__setattr__(self, "euler_coefficients", eta)
        else:
            object.__setattr__(self, "euler_coefficients", tuple(self.euler_coefficients))
        m = len(self.variables)
        for _, i in self.q_decomposition:
            if not 0 <= i < m:
                raise ValueError(f"generator index {i} out of range 0..{m - 1}")

    @property
    def partials(self):
        g = self.g.with_variables(self.variables)
        return [g.partial(v) for v in self.variables]

    def to_certificate(self):
        """The same functional equation viewed as an ordinary certificate (``t`` renamed ``s``)."""
        return Certificate(
            self.g,
            self.variables,
            self.ctilde,
            [(op, i + 1) for op, i in self.q_decomposition],
        )


@dataclass
class Report:
    """Outcome of a verification.  Truthy iff every check passed."""

    checks: list = field(default_factory=list)
    residual: object = None

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))
        return ok

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)

    def __bool__(self):
        return self.passed

    def failures(self):
        return [(n, d) for n, ok, d in self.checks if not ok]

    def as_dict(self):
        out = {
            "passed": self.passed,
            "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in self.checks],
        }
        if self.residual is not None:
            out["residual"] = str(self.residual)
        return out


def vector_field_coefficients(chi, variables):
    """``[eta_j]`` with ``chi = sum eta_j d_{y_j}``; raises if ``chi`` is not a vector field."""
    if chi.has_param():
        raise ValueError("a vector field cannot contain the parameter")
    variables = tuple(variables)
    chi = chi.with_variables(variables + tuple(v for v in chi.variables if v not in variables))
    if chi.variables != variables:
        raise ValueError(f"vector field uses variables outside {variables}")
    coeffs = [dict() for _ in variables]
    for (xe, de, _), c in chi.terms.items():
        if sum(de) != 1:
            raise ValueError(f"{chi} is not a vector field")
        coeffs[de.index(1)][xe] = c
    return [MPoly(t, variables) for t in coeffs]


def verify_certificate(c):
    report = Report()
    P = c.operator
    f = c.f.with_variables(c.variables)
    base = mk_power(f, "s")
    lhs = apply(P, base)
    rhs = base.times_poly(c.btilde.to_mpoly("s"))
    residual = lhs - rhs
    if not report.add("functional_equation", residual.is_zero(), f"P(s) f^s = {c.btilde} f^s"):
        report.residual = reduce_levels(residual)
    return report


def verify_euler(e):
    report = Report()
    g = e.g.with_variables(e.variables)
    report.add("g_vanishes_at_origin", g.constant_term() == 0)
    try:
        vector_field_coefficients(e.chi, e.variables)
        is_field = True
    except ValueError as exc:
        is_field = False
        report.add("chi_is_vector_field", False, str(exc))
    if is_field:
        report.add("chi_is_vector_field", True)
        assembled = sum(
            (op_mul(WeylOp.from_poly(h), WeylOp.d(v, e.variables)) for h, v in zip(e.euler_coefficients, e.variables)),
            WeylOp.const(0),
        )
        report.add("chi_matches_coefficients", assembled == e.chi)
        chi_g = apply_to_polynomial(e.chi, g)
        report.add("euler", chi_g == g, f"chi(g) = {chi_g}")
    report.add("q_parameter_free", not e.Q.has_param())
    report.add("q_decomposition", _assemble(e.q_decomposition, e.partials) == e.Q)
    if not e.Q.has_param():
        base = mk_power(g, "t")
        residual = apply(e.Q, base) - base.times_poly(e.ctilde.to_mpoly("t"))
        if not report.add("functional_equation", residual.is_zero(), f"Q g^t = {e.ctilde.format('t')} g^t"):
            report.residual = reduce_levels(residual)
    return report


def integer_check(c, K):
    """Check ``P(k)(f^k) == b(k) f^k`` as plain polynomials for ``k = 1..K``."""
    if K < 1:
        raise ValueError("K must be at least 1")
    report = Report()
    P = c.operator
    f = c.f.with_variables(c.variables)
    power = MPoly.const(1, c.variables)
    for k in range(1, K + 1):
        power = power * f
        lhs = apply_to_polynomial(P, power, k)
        report.add(f"k={k}", lhs == power * c.btilde(k))
    return report


def suspension_certificate(r, var="z"):
    """Euler certificate for ``g = var^r``.

    ``chi = (1/r) z d_z``, ``Q = r^(1-r) d_z^(r-1) z^(r-1)`` and
    ``c(t) = prod_{i=1}^{r-1} (t + i/r)``; ``Q`` is stored decomposed as
    ``(r^-r d_z^(r-1)) * (r z^(r-1))``.
    """
    if not isinstance(r, int) or r < 2:
        raise BadExponent(f"suspension exponent must be an integer >= 2, got {r!r}")
    _check_variables((var,))
    z = MPoly.var(var)
    g = z**r
    chi = op_mul(WeylOp.x(var), WeylOp.d(var)).scale(Fraction(1, r))
    coeff = (WeylOp.d(var) ** (r - 1)).scale(Fraction(1, r**r))
    Q = op_mul(WeylOp.d(var) ** (r - 1), WeylOp.x(var) ** (r - 1)).scale(Fraction(1, r ** (r - 1)))
    ctilde = FactoredPoly((Fraction(i, r), 1) for i in range(1, r))
    cert = EulerCertificate(g, (var,), chi, Q, ctilde, [(coeff, 0)], [MPoly.var(var) * Fraction(1, r)])
    report = verify_euler(cert)
    if not report:
        raise InternalInconsistency(f"suspension certificate for {var}^{r} failed: {report.failures()}")
    return cert


def euler_field(g, weights, variables=None):
    """``chi = sum w_j y_j d_{y_j}``, provided every monomial of ``g`` has weighted degree 1."""
    variables = tuple(variables) if variables is not None else g.used_variables()
    weights = [as_fraction(w) for w in weights]
    if len(weights) != len(variables):
        raise ValueError(f"{len(weights)} weights for {len(variables)} variables")
    g = g.with_variables(variables)
    for exps, _ in g.terms.items():
        wdeg = sum(w * a for w, a in zip(weights, exps))
        if wdeg != 1:
            mono = MPoly({exps: 1}, variables)
            raise NotWeightedHomogeneous(f"monomial {mono} has weighted degree {wdeg}, not 1")
    chi = WeylOp.const(0, variables)
    for w, v in zip(weights, variables):
        if w:
            chi = chi + op_mul(WeylOp.x(v, variables), WeylOp.d(v, variables)).scale(w)
    return chi


def lift_parameter(P, chi):
    """``P(s - chi)`` with the ``P_j`` on the left."""
    return substitute_parameter(P, chi, -1)


def order_independent(cf, eg):
    """Whether ``A(s,chi) P(s-chi) == P(s-chi) A(s,chi)`` for this pair."""
    pair = cofactors_theorem_form(cf.btilde, eg.ctilde)
    A_chi = eval_bipoly_at_operator(pair.A, eg.chi)
    shifted = lift_parameter(cf.operator, eg.chi)
    return op_mul(A_chi, shifted) == op_mul(shifted, A_chi)


def theorem_operator(cf, eg, pair=None):
    """``R(s) = A(s,chi) P(s-chi) + B(s,chi) Q`` assembled directly, without the decomposition."""
    pair = pair or cofactors_theorem_form(cf.btilde, eg.ctilde)
    A_chi = eval_bipoly_at_operator(pair.A, eg.chi)
    B_chi = eval_bipoly_at_operator(pair.B, eg.chi)
    return op_mul(A_chi, lift_parameter(cf.operator, eg.chi)) + op_mul(B_chi, eg.Q)


def compose(cf, eg, check_inputs=True):
    """Certificate for ``h = f + g`` from a certificate for ``f`` and an Euler certificate for ``g``."""
    clash = set(cf.variables) & set(eg.variables)
    if clash:
        raise VariableClash(f"f and g share variables {sorted(clash)}")
    if check_inputs:
        for name, rep in (("f", verify_certificate(cf)), ("g", verify_euler(eg))):
            if not rep:
                raise ValueError(f"input certificate for {name} does not verify: {rep.failures()}")
    variables = cf.variables + eg.variables
    n = len(cf.variables)
    pair = cofactors_theorem_form(cf.btilde, eg.ctilde)
    A_chi = eval_bipoly_at_operator(pair.A, eg.chi)
    B_chi = eval_bipoly_at_operator(pair.B, eg.chi)
    shift = WeylOp.s() - eg.chi
    shift_powers = [WeylOp.const(1)]

    def shift_power(j):
        while len(shift_powers) <= j:
            shift_powers.append(op_mul(shift_powers[-1], shift))
        return shift_powers[j]

    entries = {}

    def put(index, op):
        entries[index] = entries[index] + op if index in entries else op

    for C, index in cf.decomposition:
        lifted = WeylOp.const(0)
        for j, Cj in enumerate(C.param_coefficients()):
            if Cj:
                lifted = lifted + op_mul(shift_power(j), Cj)
        K = op_mul(A_chi, lifted)
        if index == 0:
            # K f = K h - sum_j (K eta_j) dg/dy_j
            put(0, K)
            for j, eta in enumerate(eg.euler_coefficients):
                if eta:
                    put(n + 1 + j, -op_mul(K, WeylOp.from_poly(eta)))
        else:
            put(index, K)
    for Qt, index in eg.q_decomposition:
        put(n + 1 + index, op_mul(B_chi, Qt))

    decomposition = [
        (op.with_variables(variables + tuple(v for v in op.variables if v not in variables)), i)
        for i, op in sorted(entries.items())
        if op
    ]
    h = (cf.f + eg.g).with_variables(variables)
    result = Certificate(h, variables, star(cf.btilde, eg.ctilde), decomposition)

    R = theorem_operator(cf, eg, pair)
    if result.operator != R:
        raise ComposeVerificationFailure("J_h decomposition does not reassemble R(s)")
    report = verify_certificate(result)
    if not report:
        raise ComposeVerificationFailure(f"composed certificate fails: residual {report.residual}")
    log.debug("composed %s with %s: b = %s", cf.f, eg.g, result.btilde)
    return result


def brieskorn_pham(terms):
    """Iterated composition for ``sum v_i^{a_i}``; ``terms`` is ``[(var, exponent), ...]``.

    Returns ``(certificate, stages)`` where each stage is ``(var, exponent, CofactorPair)``.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("need at least one term")
    var, r = terms[0]
    cert = suspension_certificate(r, var).to_certificate()
    stages = []
    for var, r in terms[1:]:
        eg = suspension_certificate(r, var)
        stages.append((var, r, cofactors_theorem_form(cert.btilde, eg.ctilde)))
        cert = compose(cert, eg, check_inputs=False)
    return cert, stages


def simple_root_shortcut(bf, r):
    """``prod_{i=1}^{r-1} bf(s + i/r)``, valid when no two roots of ``bf`` differ by ``j/r``, ``j = 1..r``."""
    if not isinstance(r, int) or r < 2:
        raise BadExponent(f"r must be an integer >= 2, got {r!r}")
    roots = bf.root_opposites
    gaps = {Fraction(j, r) for j in range(1, r + 1)}
    for i, a in enumerate(roots):
        for b in roots[i + 1:]:
            if abs(a - b) in gaps:
                raise NotApplicable(f"roots {-a} and {-b} differ by {abs(a - b)}")
    if bf.is_one():
        return FactoredPoly.one()
    result = FactoredPoly.one()
    for i in range(1, r):
        result = result * bf.shifted(Fraction(i, r))
    return result
