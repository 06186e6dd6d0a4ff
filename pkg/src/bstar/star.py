"""Factored univariate polynomials, the star operation and its cofactors.

A :class:`FactoredPoly` is a monic polynomial split over the rationals,
stored as ``prod((s + alpha)**m)``.  We keep the *opposites* of the roots
(``alpha``) because that is what the star operation adds.

The star of ``a`` and ``b`` has root opposites ``R_a + R_b`` and, at each
sum ``gamma``, multiplicity ``max(m_alpha(a) + m_beta(b) - 1)`` over the
pairs with ``alpha + beta == gamma``.  It also generates the ideal
``<a(s), b(t)> ∩ Q[s + t]``; :func:`star_oracle` recomputes it from that
second description, and :func:`cofactors_sum_form` produces the explicit
combination witnessing membership.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra import BIVARS, MPoly, as_fraction, divide_in_var, exact_div, shift_expand
from .errors import InternalInconsistency, NonExact


class FactoredPoly:
    """Monic polynomial ``prod((s + alpha)**m)`` with rational ``alpha``.

    The empty product is the constant polynomial 1.
    """

    __slots__ = ("factors",)

    def __init__(self, factors=()):
        merged = Counter()
        for alpha, m in (factors.items() if isinstance(factors, dict) else factors):
            m = int(m)
            if m < 0:
                raise ValueError("multiplicities must be nonnegative")
            if m:
                merged[as_fraction(alpha)] += m
        self.factors = tuple(sorted(merged.items()))

    @classmethod
    def one(cls):
        return cls()

    @classmethod
    def from_roots(cls, roots):
        """Build from actual roots (not their opposites), repeated by multiplicity."""
        return cls(Counter(-as_fraction(r) for r in roots))

    @property
    def root_opposites(self):
        return tuple(alpha for alpha, _ in self.factors)

    def multiplicity(self, alpha):
        return dict(self.factors).get(as_fraction(alpha), 0)

    def as_dict(self):
        return dict(self.factors)

    def degree(self):
        return sum(m for _, m in self.factors)

    def is_one(self):
        return not self.factors

    def to_mpoly(self, var="s"):
        result = MPoly.const(1, (var,))
        for alpha, m in self.factors:
            result = result * MPoly({(1,): 1, (0,): alpha}, (var,)) ** m
        return result

    def __call__(self, value):
        value = as_fraction(value)
        out = Fraction(1)
        for alpha, m in self.factors:
            out *= (value + alpha) ** m
        return out

    def shifted(self, c):
        """``p(s + c)``."""
        c = as_fraction(c)
        return FactoredPoly((alpha + c, m) for alpha, m in self.factors)

    def __mul__(self, other):
        if not isinstance(other, FactoredPoly):
            return NotImplemented
        return FactoredPoly(list(self.factors) + list(other.factors))

    def __eq__(self, other):
        if not isinstance(other, FactoredPoly):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"FactoredPoly({str(self)!r})"

    def __str__(self):
        return self.format("s")

    def format(self, var="s"):
        from .printing import format_factored

        return format_factored(self, var)


def star(a, b):
    """The star operation; 1 absorbs everything."""
    if a.is_one() or b.is_one():
        return FactoredPoly.one()
    mult = {}
    for (alpha, ma), (beta, mb) in product(a.factors, b.factors):
        gamma = alpha + beta
        mult[gamma] = max(mult.get(gamma, 0), ma + mb - 1)
    return FactoredPoly(mult)


def lcm_factored(a, b):
    mult = dict(a.factors)
    for beta, m in b.factors:
        mult[beta] = max(mult.get(beta, 0), m)
    return FactoredPoly(mult)


def gcd_factored(a, b):
    other = dict(b.factors)
    return FactoredPoly((alpha, min(m, other[alpha])) for alpha, m in a.factors if alpha in other)


@dataclass(frozen=True)
class CofactorPair:
    """Bivariate cofactors over ``(s, t)``.

    ``form == "theorem"``: ``(b*c)(s) == A(s,t) b(s-t) + B(s,t) c(t)``.
    ``form == "sum"``: ``(a*b)(s+t) == A(s,t) a(s) + B(s,t) b(t)``.
    """

    A: MPoly
    B: MPoly
    form: str

    def residual(self, left, right):
        """Left side minus right side of the defining identity; zero when valid."""
        s = MPoly.var("s", BIVARS)
        t = MPoly.var("t", BIVARS)
        target = star(left, right).to_mpoly("u")
        if self.form == "sum":
            lhs = shift_expand(target, "u")
            first = left.to_mpoly("s").with_variables(BIVARS)
        else:
            lhs = target.subs({"u": s}).with_variables(BIVARS)
            first = left.to_mpoly("s").subs({"s": s - t}).with_variables(BIVARS)
        second = right.to_mpoly("t").with_variables(BIVARS)
        return (self.A * first + self.B * second - lhs).with_variables(BIVARS)


def cofactors_sum_form(a, b):
    """Cofactors with ``(a*b)(s+t) == A(s,t) a(s) + B(s,t) b(t)``.

    Reduce ``(a*b)(s+t)`` by ``a(s)`` in ``s``; the remainder then has each
    ``s``-coefficient divisible by ``b(t)``, since ``{a(s), b(t)}`` is a
    Gröbner basis and the target lies in the ideal.
    """
    target = shift_expand(star(a, b).to_mpoly("u"), "u")
    quotient, remainder = divide_in_var(target, a.to_mpoly("s"), "s")
    bt = b.to_mpoly("t").with_variables(BIVARS)
    B = MPoly.const(0, BIVARS)
    s = MPoly.var("s", BIVARS)
    for k, coeff in remainder.with_variables(BIVARS).coefficients_in("s").items():
        try:
            q = exact_div(coeff, bt)
        except NonExact as exc:
            raise InternalInconsistency(
                f"remainder coefficient {coeff} of s^{k} not divisible by b(t) = {bt}"
            ) from exc
        B = B + q * s**k
    return CofactorPair(quotient.with_variables(BIVARS), B, "sum")


def cofactors_theorem_form(b, c):
    """Cofactors with ``(b*c)(s) == A(s,t) b(s-t) + B(s,t) c(t)``."""
    pair = cofactors_sum_form(b, c)
    s_minus_t = MPoly({(1, 0): 1, (0, 1): -1}, BIVARS)

    def change(p):
        return p.subs({"s": s_minus_t}).with_variables(BIVARS)

    return CofactorPair(change(pair.A), change(pair.B), "theorem")


# --- brute-force characterisation -------------------------------------------


def _dense(fp):
    return [Fraction(c) for c in _coeff_list(fp.to_mpoly("u"))]


def _coeff_list(p):
    coeffs = [Fraction(0)] * (p.degree() + 1)
    for (k,), c in p.terms.items():
        coeffs[k] = c
    return coeffs


def _in_shift_ideal(p_coeffs, a_coeffs, b_coeffs):
    """Is ``p(s+t)`` in ``<a(s), b(t)>``?  Normal form via Horner in ``s + t``.

    The state is the reduced form ``sum N[i][j] s^i t^j`` with ``i < deg a`` and
    ``j < deg b``; multiplying by ``s + t`` then rewriting ``s^d`` and ``t^e``
    through the monic divisors keeps it reduced.
    """
    d, e = len(a_coeffs) - 1, len(b_coeffs) - 1
    if d == 0 or e == 0:
        return True
    zero = Fraction(0)
    N = [[zero] * e for _ in range(d)]
    for c in reversed(p_coeffs):
        new = [[zero] * e for _ in range(d)]
        for i in range(d):
            row = N[i]
            for j in range(e):
                v = row[j]
                if not v:
                    continue
                # times s
                if i + 1 < d:
                    new[i + 1][j] += v
                else:
                    for k in range(d):
                        if a_coeffs[k]:
                            new[k][j] -= v * a_coeffs[k]
                # times t
                if j + 1 < e:
                    new[i][j + 1] += v
                else:
                    for k in range(e):
                        if b_coeffs[k]:
                            new[i][k] -= v * b_coeffs[k]
        new[0][0] += c
        N = new
    return not any(v for row in N for v in row)


def star_oracle(a, b):
    """Minimal monic generator of ``<a(s), b(t)> ∩ Q[s+t]``, found by search.

    Starts from ``prod over root pairs of (u + alpha + beta)**(m_alpha + m_beta - 1)``,
    a member because it lies in the product of the primary components,
    then lowers each root's multiplicity while membership persists.
    """
    if a.is_one() or b.is_one():
        return FactoredPoly.one()
    a_coeffs, b_coeffs = _dense(a), _dense(b)
    mult = Counter()
    for (alpha, ma), (beta, mb) in product(a.factors, b.factors):
        mult[alpha + beta] += ma + mb - 1

    def member(m):
        return _in_shift_ideal(_dense(FactoredPoly(m)), a_coeffs, b_coeffs)

    if not member(mult):
        raise InternalInconsistency("starting candidate is not an ideal member")
    for gamma in sorted(mult):
        while mult[gamma]:
            mult[gamma] -= 1
            if not member(mult):
                mult[gamma] += 1
                break
    for gamma in mult:
        if mult[gamma]:
            trial = Counter(mult)
            trial[gamma] -= 1
            if member(trial):
                raise InternalInconsistency("search did not reach a minimal member")
    return FactoredPoly(mult)
