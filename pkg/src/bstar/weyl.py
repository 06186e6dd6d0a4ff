"""Normal-ordered differential operators with one central parameter.

A :class:`WeylOp` is a finite sum of ``c * x^a * d^b * s^j`` where every
multiplication operator sits left of every derivation and ``s`` commutes
with everything.  Products are normal-ordered with

    d^b x^a = sum_k C(b, k) a!/(a-k)! x^(a-k) d^(b-k)

applied variable by variable.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, perm

from .algebra import MPoly, as_fraction
from .errors import ParameterMismatch, VariableClash

PARAM = "s"


@lru_cache(maxsize=None)
def _reorder(b, a):
    """``d^b x^a`` as [(coeff, x-exponent, d-exponent)]."""
    return tuple((comb(b, k) * perm(a, k), a - k, b - k) for k in range(min(a, b) + 1))


def _merge_vars(a, b):
    if a == b:
        return a
    return a + tuple(v for v in b if v not in a)


class WeylOp:
    """Element of ``Q[s] ⊗ A_n`` in normal order.

    ``terms`` maps ``(x_exponents, d_exponents, s_exponent)`` to a nonzero
    Fraction; both exponent tuples follow ``variables``.
    """

    __slots__ = ("variables", "terms", "param", "_hash")

    def __init__(self, terms=None, variables=(), param=PARAM):
        variables = tuple(variables)
        n = len(variables)
        clean = {}
        for (xe, de, j), c in (terms or {}).items():
            xe, de = tuple(xe), tuple(de)
            if len(xe) != n or len(de) != n:
                raise ValueError("exponent length does not match variables")
            c = as_fraction(c)
            if c:
                key = (xe, de, int(j))
                v = clean.get(key, 0) + c
                if v:
                    clean[key] = v
                else:
                    clean.pop(key, None)
        self.variables = variables
        self.terms = clean
        self.param = param
        self._hash = None

    @classmethod
    def _raw(cls, terms, variables, param=PARAM):
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj.param = param
        obj._hash = None
        return obj

    # --- constructors ----------------------------------------------------

    @classmethod
    def const(cls, c, variables=(), param=PARAM):
        variables = tuple(variables)
        z = (0,) * len(variables)
        c = as_fraction(c)
        return cls._raw({(z, z, 0): c} if c else {}, variables, param)

    @classmethod
    def x(cls, name, variables=None):
        variables = (name,) if variables is None else tuple(variables)
        e = tuple(int(v == name) for v in variables)
        return cls._raw({(e, (0,) * len(variables), 0): Fraction(1)}, variables)

    @classmethod
    def d(cls, name, variables=None):
        variables = (name,) if variables is None else tuple(variables)
        e = tuple(int(v == name) for v in variables)
        return cls._raw({((0,) * len(variables), e, 0): Fraction(1)}, variables)

    @classmethod
    def s(cls, variables=(), param=PARAM):
        variables = tuple(variables)
        z = (0,) * len(variables)
        return cls._raw({(z, z, 1): Fraction(1)}, variables, param)

    @classmethod
    def from_poly(cls, p, param=PARAM):
        """Multiplication by ``p``; a variable named ``param`` in ``p`` becomes the parameter."""
        variables = tuple(v for v in p.variables if v != param)
        idx = [p.variables.index(v) for v in variables]
        pi = p.variables.index(param) if param in p.variables else None
        z = (0,) * len(variables)
        terms = {}
        for e, c in p.terms.items():
            terms[(tuple(e[i] for i in idx), z, e[pi] if pi is not None else 0)] = c
        return cls._raw(terms, variables, param)

    # --- structure -------------------------------------------------------

    def with_variables(self, variables):
        variables = tuple(variables)
        if variables == self.variables:
            return self
        index = {v: i for i, v in enumerate(variables)}
        pos = []
        for i, v in enumerate(self.variables):
            if v in index:
                pos.append(index[v])
            elif any(xe[i] or de[i] for xe, de, _ in self.terms):
                raise ValueError(f"variable {v} is used but absent from {variables}")
            else:
                pos.append(None)
        n = len(variables)
        out = {}
        for (xe, de, j), c in self.terms.items():
            nx, nd = [0] * n, [0] * n
            for a, b, p in zip(xe, de, pos):
                if p is not None:
                    nx[p], nd[p] = a, b
            out[(tuple(nx), tuple(nd), j)] = c
        return WeylOp._raw(out, variables, self.param)

    def used_variables(self):
        return tuple(
            v for i, v in enumerate(self.variables) if any(xe[i] or de[i] for xe, de, _ in self.terms)
        )

    def param_degree(self):
        return max((j for _, _, j in self.terms), default=-1)

    def has_param(self):
        return any(j for _, _, j in self.terms)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        def key(kv):
            xe, de, j = kv[0]
            return (sum(xe) + sum(de) + j, j, de, xe)

        return sorted(self.terms.items(), key=key, reverse=True)

    # --- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, WeylOp):
            return other
        if isinstance(other, MPoly):
            return WeylOp.from_poly(other, self.param)
        return WeylOp.const(as_fraction(other), self.variables, self.param)

    def _pair(self, other):
        other = self._coerce(other)
        param = self.param
        if other.param != param:
            if not other.has_param():
                pass
            elif not self.has_param():
                param = other.param
            else:
                raise ParameterMismatch(f"parameters {self.param!r} and {other.param!r}")
        vs = _merge_vars(self.variables, other.variables)
        a, b = self.with_variables(vs), other.with_variables(vs)
        return a, b, param

    def __add__(self, other):
        try:
            a, b, param = self._pair(other)
        except TypeError:
            return NotImplemented
        out = dict(a.terms)
        for k, c in b.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return WeylOp._raw(out, a.variables, param)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp._raw({k: -c for k, c in self.terms.items()}, self.variables, self.param)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_fraction(c)
        if not c:
            return WeylOp._raw({}, self.variables, self.param)
        return WeylOp._raw({k: v * c for k, v in self.terms.items()}, self.variables, self.param)

    def __mul__(self, other):
        if not isinstance(other, (WeylOp, MPoly)):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        return op_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, MPoly):
            return op_mul(WeylOp.from_poly(other, self.param), self)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = WeylOp.const(1, self.variables, self.param)
        for _ in range(n):
            result = op_mul(result, self)
        return result

    # --- parameter handling ----------------------------------------------

    def param_coefficients(self):
        """``[P_0, ..., P_d]`` parameter-free with ``self == sum(P_j * s**j)``."""
        out = [{} for _ in range(max(self.param_degree(), 0) + 1)]
        for (xe, de, j), c in self.terms.items():
            out[j][(xe, de, 0)] = c
        return [WeylOp._raw(t, self.variables, self.param) for t in out]

    def specialize(self, value):
        """Set the parameter to a rational number."""
        value = as_fraction(value)
        out = {}
        for (xe, de, j), c in self.terms.items():
            key = (xe, de, 0)
            v = out.get(key, 0) + c * value**j
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return WeylOp._raw(out, self.variables, self.param)

    def renamed_param(self, name):
        return WeylOp._raw(dict(self.terms), self.variables, name)

    # --- comparison ------------------------------------------------------

    def _canonical(self):
        vs = self.variables
        order = sorted(range(len(vs)), key=lambda i: vs[i])
        param = self.param if self.has_param() else None
        items = frozenset(
            (
                tuple((vs[i], xe[i], de[i]) for i in order if xe[i] or de[i]),
                j,
                c,
            )
            for (xe, de, j), c in self.terms.items()
        )
        return param, items

    def __eq__(self, other):
        if not isinstance(other, WeylOp):
            if isinstance(other, MPoly):
                other = WeylOp.from_poly(other, self.param)
            else:
                try:
                    other = WeylOp.const(as_fraction(other), self.variables, self.param)
                except TypeError:
                    return NotImplemented
        if self.variables == other.variables and (self.param == other.param or not (self.has_param() or other.has_param())):
            return self.terms == other.terms
        return self._canonical() == other._canonical()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._canonical())
        return self._hash

    def __repr__(self):
        return f"WeylOp({str(self)!r})"

    def __str__(self):
        from .printing import format_operator

        return format_operator(self)


def op_add(u, v):
    return u + v


def op_mul(u, v):
    """Normal-ordered product ``u * v``."""
    if isinstance(v, MPoly):
        v = WeylOp.from_poly(v, u.param)
    if isinstance(u, MPoly):
        u = WeylOp.from_poly(u, v.param)
    u, v, param = u._pair(v)
    n = len(u.variables)
    out = {}
    for (xa, da, ja), ca in u.terms.items():
        for (xb, db, jb), cb in v.terms.items():
            c0 = ca * cb
            j = ja + jb
            choices = [_reorder(da[i], xb[i]) for i in range(n)]
            for combo in product(*choices):
                c = c0
                nx, nd = [], []
                for i, (k, xe, de) in enumerate(combo):
                    c *= k
                    nx.append(xa[i] + xe)
                    nd.append(de + db[i])
                key = (tuple(nx), tuple(nd), j)
                val = out.get(key, 0) + c
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    return WeylOp._raw(out, u.variables, param)


def commutator(u, v):
    return op_mul(u, v) - op_mul(v, u)


def substitute_parameter(p, chi, sign=-1):
    """``sum_j P_j * (s + sign*chi)**j`` with ``P_j`` on the left.

    The coefficients ``P_j`` and ``chi`` must act on disjoint variables.
    """
    if chi.has_param():
        raise ValueError("chi must not contain the parameter")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    coeffs = p.param_coefficients()
    clash = set(chi.used_variables()) & {v for P in coeffs for v in P.used_variables()}
    if clash:
        raise VariableClash(f"operator and chi share variables {sorted(clash)}")
    shift = WeylOp.s(param=p.param) + chi.renamed_param(p.param).scale(sign)
    result = WeylOp.const(0, p.variables, p.param)
    power = WeylOp.const(1, param=p.param)
    for P in coeffs:
        if P:
            result = result + op_mul(P, power)
        power = op_mul(power, shift)
    return result


def eval_bipoly_at_operator(A, chi, param=PARAM):
    """``A(s, chi)``: ``s`` becomes the parameter, ``t`` becomes ``chi``."""
    if chi.has_param():
        raise ValueError("chi must not contain the parameter")
    chi = chi.renamed_param(param)
    powers = [WeylOp.const(1, chi.variables, param)]
    result = WeylOp.const(0, chi.variables, param)
    for t_exp, coeff in sorted(A.coefficients_in("t").items()):
        while len(powers) <= t_exp:
            powers.append(op_mul(powers[-1], chi))
        s_part = WeylOp.from_poly(coeff.trim(), "s").renamed_param(param)
        result = result + op_mul(s_part, powers[t_exp])
    return result
