"""Exact multivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction`; nothing here ever touches a
float.  An :class:`MPoly` carries an ordered tuple of variable names and a
map from exponent vectors to nonzero coefficients.  Binary operations on
polynomials with different variable tuples work over the union (left
operand's order first), and equality ignores variables that do not occur.
"""

from fractions import Fraction
from numbers import Rational

from .errors import NonExact

__all__ = [
    "Fraction",
    "MPoly",
    "BIVARS",
    "as_fraction",
    "add",
    "mul",
    "partial",
    "shift_expand",
    "divide_in_var",
    "exact_div",
]

BIVARS = ("s", "t")


def as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot use {value!r} as an exact rational")


def _merge_vars(a, b):
    if a == b:
        return a
    extra = tuple(v for v in b if v not in a)
    return a + extra


class MPoly:
    """An immutable polynomial with rational coefficients.

    >>> x, y = MPoly.var("x"), MPoly.var("y")
    >>> print(x**2 + y**3)
    y^3 + x^2
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, terms=None, variables=()):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable in {variables}")
        clean = {}
        n = len(variables)
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"exponent {exps} does not match variables {variables}")
            c = as_fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.variables = variables
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms, variables):
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c, variables=()):
        variables = tuple(variables)
        c = as_fraction(c)
        if not c:
            return cls._raw({}, variables)
        return cls._raw({(0,) * len(variables): c}, variables)

    @classmethod
    def var(cls, name, variables=None):
        variables = (name,) if variables is None else tuple(variables)
        exps = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"{name} not in {variables}")
        return cls._raw({exps: Fraction(1)}, variables)

    @classmethod
    def univariate(cls, coeffs, var):
        """Build ``sum(coeffs[i] * var**i)``."""
        return cls({(i,): c for i, c in enumerate(coeffs)}, (var,))

    # --- structure -------------------------------------------------------

    def with_variables(self, variables):
        """Re-express over ``variables``, which must contain every used variable."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        index = {v: i for i, v in enumerate(variables)}
        pos = []
        for i, v in enumerate(self.variables):
            if v in index:
                pos.append(index[v])
            elif any(e[i] for e in self.terms):
                raise ValueError(f"variable {v} is used but absent from {variables}")
            else:
                pos.append(None)
        n = len(variables)
        out = {}
        for exps, c in self.terms.items():
            new = [0] * n
            for e, p in zip(exps, pos):
                if p is not None:
                    new[p] = e
            out[tuple(new)] = c
        return MPoly._raw(out, variables)

    def used_variables(self):
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self.terms))

    def trim(self):
        """Drop variables that do not occur."""
        return self.with_variables(self.used_variables())

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def degree(self, var=None):
        """Total degree, or degree in ``var``.  The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def sorted_terms(self):
        """Terms in graded lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def leading_term(self):
        exps, c = max(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        return exps, c

    def coefficients_in(self, var):
        """Split as ``sum(p_k * var**k)``; returns ``{k: p_k}`` with ``p_k`` free of ``var``."""
        if var not in self.variables:
            return {0: self} if self.terms else {}
        i = self.variables.index(var)
        out = {}
        for exps, c in self.terms.items():
            k = exps[i]
            rest = exps[:i] + (0,) + exps[i + 1:]
            out.setdefault(k, {})[rest] = c
        return {k: MPoly._raw(t, self.variables) for k, t in out.items()}

    # --- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        return MPoly.const(as_fraction(other), self.variables)

    def _pair(self, other):
        other = self._coerce(other)
        if other.variables == self.variables:
            return self, other
        vs = _merge_vars(self.variables, other.variables)
        return self.with_variables(vs), other.with_variables(vs)

    def __add__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MPoly._raw(out, a.variables)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({e: -c for e, c in self.terms.items()}, self.variables)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            try:
                c = as_fraction(other)
            except TypeError:
                return NotImplemented
            if not c:
                return MPoly._raw({}, self.variables)
            return MPoly._raw({e: v * c for e, v in self.terms.items()}, self.variables)
        a, b = self._pair(other)
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly._raw({e: c for e, c in out.items() if c}, a.variables)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            return exact_div(self, other)
        return self * (1 / as_fraction(other))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = MPoly.const(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def partial(self, var):
        if var not in self.variables:
            return MPoly._raw({}, self.variables)
        i = self.variables.index(var)
        out = {}
        for exps, c in self.terms.items():
            k = exps[i]
            if k:
                out[exps[:i] + (k - 1,) + exps[i + 1:]] = c * k
        return MPoly._raw(out, self.variables)

    def subs(self, values):
        """Substitute rationals or polynomials for variables, ``values`` keyed by name."""
        result = MPoly.const(0, tuple(v for v in self.variables if v not in values))
        keep = [i for i, v in enumerate(self.variables) if v not in values]
        rest_vars = result.variables
        cache = {}

        def power(v, k):
            key = (v, k)
            if key not in cache:
                val = values[v]
                if isinstance(val, MPoly):
                    cache[key] = val ** k
                else:
                    cache[key] = as_fraction(val) ** k
            return cache[key]

        for exps, c in self.terms.items():
            term = MPoly._raw({tuple(exps[i] for i in keep): c}, rest_vars)
            for i, v in enumerate(self.variables):
                if v in values and exps[i]:
                    term = term * power(v, exps[i])
            result = result + term
        return result

    def __call__(self, *args):
        if len(args) != len(self.variables):
            raise TypeError("wrong number of arguments")
        val = self.subs(dict(zip(self.variables, args)))
        return val.constant_term() if val.is_constant() else val

    # --- comparison ------------------------------------------------------

    def _canonical(self):
        vs = self.variables
        return frozenset(
            (tuple((vs[i], k) for i, k in sorted(enumerate(e), key=lambda p: vs[p[0]]) if k), c)
            for e, c in self.terms.items()
        )

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            try:
                other = MPoly.const(as_fraction(other), self.variables)
            except TypeError:
                return NotImplemented
        if self.variables == other.variables:
            return self.terms == other.terms
        return self._canonical() == other._canonical()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._canonical())
        return self._hash

    # --- printing --------------------------------------------------------

    def __repr__(self):
        return f"MPoly({str(self)!r}, variables={self.variables})"

    def __str__(self):
        from .printing import format_poly

        return format_poly(self)


def add(p, q):
    return p + q


def mul(p, q):
    return p * q


def partial(p, var):
    return p.partial(var)


def _univariate_coeffs(p, var=None):
    """Dense coefficient list (constant first) of a univariate polynomial."""
    used = p.used_variables()
    if len(used) > 1 or (var is not None and used and used[0] != var):
        raise ValueError(f"{p} is not univariate in {var or used}")
    if not p.terms:
        return []
    if not used:
        return [p.constant_term()]
    i = p.variables.index(used[0])
    coeffs = [Fraction(0)] * (p.degree(used[0]) + 1)
    for e, c in p.terms.items():
        coeffs[e[i]] = c
    return coeffs


def shift_expand(p, var=None):
    """Return ``p(s + t)`` fully expanded as a polynomial in ``(s, t)``.

    ``p`` is univariate (in ``var`` if given; a constant is allowed).
    """
    coeffs = _univariate_coeffs(p, var)
    # Horner in s+t; binomial rows would be faster but this is never hot
    st = MPoly({(1, 0): 1, (0, 1): 1}, BIVARS)
    result = MPoly.const(0, BIVARS)
    for c in reversed(coeffs):
        result = result * st + c
    return result


def divide_in_var(P, a, var="s"):
    """Divide ``P`` by the monic univariate ``a(var)``, treating other variables as coefficients.

    Returns ``(quotient, remainder)`` with ``P == quotient * a + remainder`` and
    ``remainder.degree(var) < a.degree(var)``.
    """
    a_coeffs = _univariate_coeffs(a, var)
    if not a_coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    d = len(a_coeffs) - 1
    if a_coeffs[-1] != 1:
        raise ValueError("divisor must be monic")
    variables = P.variables if var in P.variables else P.variables + (var,)
    P = P.with_variables(variables)
    i = variables.index(var)
    # bucket P by var-degree: rows[k] is {other exponents: coeff}
    rows = {}
    for e, c in P.terms.items():
        rows.setdefault(e[i], {})[e] = c
    quotient = {}
    while rows:
        k = max(rows)
        if k < d:
            break
        row = rows.pop(k)
        shift = k - d
        for e, c in row.items():
            qe = e[:i] + (shift,) + e[i + 1:]
            quotient[qe] = c
            for j in range(d):
                aj = a_coeffs[j]
                if not aj:
                    continue
                target = rows.setdefault(shift + j, {})
                te = e[:i] + (shift + j,) + e[i + 1:]
                v = target.get(te, 0) - c * aj
                if v:
                    target[te] = v
                else:
                    target.pop(te, None)
    remainder = {}
    for row in rows.values():
        remainder.update(row)
    return MPoly(quotient, variables), MPoly(remainder, variables)


def exact_div(p, d):
    """Return ``q`` with ``p == q * d``; raise :class:`NonExact` if ``d`` does not divide ``p``."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p, d = p._pair(d)
    lt_e, lt_c = d.leading_term()
    quotient = {}
    rem = p
    while rem.terms:
        e, c = rem.leading_term()
        if any(i < j for i, j in zip(e, lt_e)):
            raise NonExact(f"{d} does not divide {p}")
        qe = tuple(i - j for i, j in zip(e, lt_e))
        qc = c / lt_c
        quotient[qe] = qc
        rem = rem - MPoly._raw({qe: qc}, p.variables) * d
    return MPoly(quotient, p.variables)
