"""Elements of ``O[s, F^-1] * F^s`` and the action of differential operators on them.

An element is stored as ``{k: p_k}`` meaning ``sum_k p_k * F^(s+k)`` with
``p_k`` polynomial in the geometric variables and the parameter.  Negative
powers never become rational functions: derivatives only lower the level.
Two elements are compared by multiplying through to the lowest level.
"""

from fractions import Fraction

from .algebra import MPoly, as_fraction
from .errors import BaseMismatch, ParameterMismatch, ZeroBase


def _merge(a, b):
    return a + tuple(v for v in b if v not in a)


class PowerElement:
    __slots__ = ("base", "param", "levels", "variables")

    def __init__(self, base, param="s", levels=None, variables=None):
        if base.is_zero():
            raise ZeroBase("the base of a power must be nonzero")
        if param in base.variables and base.degree(param) > 0:
            raise ValueError(f"base uses the parameter name {param!r}")
        geo = tuple(variables) if variables is not None else base.used_variables()
        geo = tuple(v for v in geo if v != param)
        self.base = base
        self.param = param
        self.variables = geo + (param,)
        out = {}
        for k, p in (levels or {}).items():
            if not isinstance(p, MPoly):
                p = MPoly.const(as_fraction(p), self.variables)
            if p:
                out[int(k)] = p.with_variables(self.variables)
        self.levels = out

    def _extend(self, variables):
        geo = _merge(self.variables[:-1], tuple(v for v in variables if v != self.param))
        if geo == self.variables[:-1]:
            return self
        return PowerElement(self.base, self.param, self.levels, geo)

    def is_zero(self):
        return clear(self)[1].is_zero()

    def __add__(self, other):
        _check_compatible(self, other)
        a = self._extend(other.variables)
        b = other._extend(a.variables)
        levels = dict(a.levels)
        for k, p in b.levels.items():
            levels[k] = levels[k] + p if k in levels else p
        return PowerElement(a.base, a.param, levels, a.variables[:-1])

    def __neg__(self):
        return PowerElement(self.base, self.param, {k: -p for k, p in self.levels.items()}, self.variables[:-1])

    def __sub__(self, other):
        return self + (-other)

    def times_poly(self, q):
        """Multiply every level by the polynomial ``q`` (which may involve the parameter)."""
        if not isinstance(q, MPoly):
            q = MPoly.const(as_fraction(q))
        e = self._extend(q.variables)
        q = q.with_variables(e.variables)
        return PowerElement(e.base, e.param, {k: p * q for k, p in e.levels.items()}, e.variables[:-1])

    def __eq__(self, other):
        if not isinstance(other, PowerElement):
            return NotImplemented
        return equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"PowerElement({self})"

    def __str__(self):
        if not self.levels:
            return "0"
        parts = []
        base = str(self.base)
        for k in sorted(self.levels, reverse=True):
            exp = self.param if k == 0 else f"{self.param}{k:+d}"
            parts.append(f"({self.levels[k]})*({base})^({exp})")
        return " + ".join(parts)


def mk_power(F, param="s"):
    """``1 * F^param``."""
    if F.is_zero():
        raise ZeroBase("the base of a power must be nonzero")
    return PowerElement(F, param, {0: MPoly.const(1)})


def _check_compatible(e1, e2):
    if e1.param != e2.param:
        raise BaseMismatch(f"parameters {e1.param!r} and {e2.param!r} differ")
    if e1.base != e2.base:
        raise BaseMismatch(f"bases {e1.base} and {e2.base} differ")


def derivative(e, var):
    """``d_var`` applied to ``e`` by the chain rule, level by level."""
    e = e._extend((var,))
    vs = e.variables
    dF = e.base.with_variables(_merge(vs, e.base.variables)).with_variables(vs).partial(var)
    sigma = MPoly.var(e.param, vs)
    out = {}
    for k, p in e.levels.items():
        dp = p.partial(var)
        if dp:
            out[k] = out[k] + dp if k in out else dp
        if dF:
            lowered = p * (sigma + k) * dF
            out[k - 1] = out[k - 1] + lowered if (k - 1) in out else lowered
    return PowerElement(e.base, e.param, out, vs[:-1])


def _shift_monomial(p, exps, c):
    """``c * monomial * p`` where ``exps`` is aligned with ``p.variables``."""
    return MPoly._raw(
        {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in p.terms.items()}, p.variables
    )


def apply(op, e):
    """Act with a differential operator on a twisted-power element."""
    if op.has_param() and op.param != e.param:
        raise ParameterMismatch(f"operator parameter {op.param!r} vs element parameter {e.param!r}")
    e = e._extend(op.variables)
    op = op.with_variables(_merge(op.variables, e.variables[:-1]))
    e = e._extend(op.variables)
    vs = e.variables
    n = len(op.variables)
    pos = [vs.index(v) for v in op.variables]
    memo = {(0,) * n: e}

    def deriv(beta):
        if beta not in memo:
            i = next(i for i, b in enumerate(beta) if b)
            lower = beta[:i] + (beta[i] - 1,) + beta[i + 1:]
            memo[beta] = derivative(deriv(lower), op.variables[i])
        return memo[beta]

    out = {}
    for (xe, de, j), c in op.terms.items():
        d = deriv(de)
        shift = [0] * len(vs)
        for p_, a in zip(pos, xe):
            shift[p_] = a
        shift[-1] = j
        shift = tuple(shift)
        for k, p in d.levels.items():
            term = _shift_monomial(p, shift, c)
            out[k] = out[k] + term if k in out else term
    return PowerElement(e.base, e.param, out, vs[:-1])


def clear(e):
    """Return ``(k_min, sum_k p_k * F^(k - k_min))``."""
    if not e.levels:
        return 0, MPoly.const(0, e.variables)
    kmin = min(e.levels)
    F = e.base.with_variables(_merge(e.variables, e.base.variables)).with_variables(e.variables)
    total = MPoly.const(0, e.variables)
    power = MPoly.const(1, e.variables)
    for k in range(kmin, max(e.levels) + 1):
        if k in e.levels:
            total = total + e.levels[k] * power
        power = power * F
    return kmin, total


def equal(e1, e2):
    """Exact equality of two elements sharing base and parameter."""
    _check_compatible(e1, e2)
    return (e1 - e2).is_zero()


def specialize(e, value):
    """Substitute an integer for the parameter, giving an ordinary polynomial.

    Requires ``value + k >= 0`` for every stored level ``k``.
    """
    value = int(value)
    if e.levels and value + min(e.levels) < 0:
        raise ValueError("specialization would leave a negative power")
    geo = e.variables[:-1]
    F = e.base.with_variables(_merge(geo, e.base.variables)).with_variables(geo)
    total = MPoly.const(0, geo)
    for k, p in e.levels.items():
        total = total + p.subs({e.param: Fraction(value)}).with_variables(geo) * F ** (value + k)
    return total


def apply_to_polynomial(op, p, k=None):
    """Plain action of ``op`` on the polynomial ``p``, with the parameter set to ``k`` first."""
    if k is not None:
        op = op.specialize(k)
    elif op.has_param():
        raise ValueError("operator has a parameter; give an integer to specialize it")
    vs = _merge(p.variables, op.variables)
    p = p.with_variables(vs)
    opv = op.with_variables(vs)
    memo = {(0,) * len(vs): p}

    def deriv(beta):
        if beta not in memo:
            i = next(i for i, b in enumerate(beta) if b)
            lower = beta[:i] + (beta[i] - 1,) + beta[i + 1:]
            memo[beta] = deriv(lower).partial(vs[i])
        return memo[beta]

    total = MPoly.const(0, vs)
    for (xe, de, _), c in opv.terms.items():
        total = total + _shift_monomial(deriv(de), xe, c)
    return total


def reduce_levels(e):
    """Collapse to a single level, dividing out powers of the base where exact.

    Only for display: equality never needs it.
    """
    from .algebra import exact_div
    from .errors import NonExact

    kmin, total = clear(e)
    if total.is_zero():
        return PowerElement(e.base, e.param, {}, e.variables[:-1])
    F = e.base.with_variables(_merge(e.variables, e.base.variables)).with_variables(e.variables)
    while kmin < 0:
        try:
            total = exact_div(total, F)
        except NonExact:
            break
        kmin += 1
    return PowerElement(e.base, e.param, {kmin: total}, e.variables[:-1])
