"""Expression grammar for polynomials, factored polynomials and operators.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*          # '*' optional in factored input
    factor := '-' factor | atom ['^' INT]
    atom   := INT ['/' INT] | NAME | 'd_'NAME | '(' expr ')'

Names are lowercase identifiers; ``d_v`` is the derivation in ``v``.  In
operator input the parameter name (``s`` unless told otherwise) is the
central parameter; ``t`` is accepted as an alias and renamed.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import MPoly
from .errors import ExprSyntaxError, NonRationalRoot, UndeclaredVariable
from .star import FactoredPoly
from .weyl import WeylOp

# --- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class Var:
    name: str
    pos: int


@dataclass(frozen=True)
class Partial:
    var: str
    pos: int


@dataclass(frozen=True)
class Param:
    name: str
    pos: int


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node)
    pos: int


@dataclass(frozen=True)
class Prod:
    factors: tuple
    pos: int


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: int


# --- tokens ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[a-z][a-z0-9_]*)|(?P<op>[-+*/^()]))")


def tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, implicit_mul=False, param=None):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.implicit_mul = implicit_mul
        self.param = param

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ExprSyntaxError(msg, tok[2], self.text)

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self):
        pos = self.peek()[2]
        terms = []
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        terms.append((sign, self.term()))
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms), pos)

    def _starts_atom(self, tok):
        return tok[0] in ("num", "name") or tok[1] == "("

    def term(self):
        pos = self.peek()[2]
        factors = [self.factor()]
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                factors.append(self.factor())
            elif self._starts_atom(tok):
                if not self.implicit_mul:
                    raise self.error("missing '*' between factors")
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Prod(tuple(factors), pos)

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return Neg(self.factor(), tok[2])
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            exp = self.take()
            if exp[0] != "num":
                raise self.error("exponent must be a nonnegative integer", exp)
            return Pow(base, int(exp[1]), tok[2])
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            if self.peek()[1] == "/" and self.peek()[0] == "op":
                self.take()
                den = self.take()
                if den[0] != "num":
                    raise self.error("expected an integer denominator", den)
                if int(den[1]) == 0:
                    raise self.error("zero denominator", den)
                return Num(Fraction(int(value), int(den[1])), pos)
            return Num(Fraction(int(value)), pos)
        if kind == "name":
            if value.startswith("d_"):
                if len(value) < 3:
                    raise self.error("derivation needs a variable name", tok)
                return Partial(value[2:], pos)
            if self.param is not None and value in self.param:
                return Param(value, pos)
            return Var(value, pos)
        if value == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise self.error(f"unexpected {value or 'end of input'!r}", tok)


def parse_ast(text, implicit_mul=False, param=None):
    """Parse ``text`` into an AST; ``param`` is a collection of names treated as the parameter."""
    return _Parser(text, implicit_mul, param).parse()


def _walk(node):
    yield node
    if isinstance(node, Sum):
        for _, t in node.terms:
            yield from _walk(t)
    elif isinstance(node, Prod):
        for f in node.factors:
            yield from _walk(f)
    elif isinstance(node, (Pow, Neg)):
        yield from _walk(node.base if isinstance(node, Pow) else node.operand)


def _names_in_order(node):
    seen = []
    for n in _walk(node):
        name = n.name if isinstance(n, Var) else n.var if isinstance(n, Partial) else None
        if name is not None and name not in seen:
            seen.append(name)
    return tuple(seen)


def _evaluate(node, leaf):
    if isinstance(node, Sum):
        total = None
        for sign, t in node.terms:
            v = _evaluate(t, leaf)
            v = v if sign > 0 else -v
            total = v if total is None else total + v
        return total
    if isinstance(node, Prod):
        result = None
        for f in node.factors:
            v = _evaluate(f, leaf)
            result = v if result is None else result * v
        return result
    if isinstance(node, Pow):
        return _evaluate(node.base, leaf) ** node.exponent
    if isinstance(node, Neg):
        return -_evaluate(node.operand, leaf)
    return leaf(node)


def parse_poly(text, variables=None, implicit_mul=False):
    """Parse a commutative polynomial.  Undeclared names raise if ``variables`` is given."""
    ast = parse_ast(text, implicit_mul)
    names = _names_in_order(ast)
    if variables is None:
        variables = names
    variables = tuple(variables)
    for n in _walk(ast):
        if isinstance(n, Partial):
            raise ExprSyntaxError("derivations are not allowed in a polynomial", n.pos, text)
        if isinstance(n, Var) and n.name not in variables:
            raise UndeclaredVariable(f"undeclared variable {n.name!r}", n.pos, text)

    def leaf(n):
        if isinstance(n, Num):
            return MPoly.const(n.value, variables)
        return MPoly.var(n.name, variables)

    return _evaluate(ast, leaf).with_variables(variables)


def parse_operator(text, variables=None, param="s"):
    """Parse a differential operator; products keep their written order.

    ``t`` is accepted as the parameter too and renamed to ``param``.
    """
    aliases = {param, "t"}
    ast = parse_ast(text, False, aliases)
    names = _names_in_order(ast)
    if variables is None:
        variables = names
    variables = tuple(variables)
    used_params = {n.name for n in _walk(ast) if isinstance(n, Param)}
    if len(used_params) > 1:
        raise ExprSyntaxError(f"more than one parameter name used: {sorted(used_params)}", 0, text)
    for n in _walk(ast):
        if isinstance(n, Var) and n.name not in variables:
            raise UndeclaredVariable(f"undeclared variable {n.name!r}", n.pos, text)
        if isinstance(n, Partial) and n.var not in variables:
            raise UndeclaredVariable(f"derivation in undeclared variable {n.var!r}", n.pos, text)

    def leaf(n):
        if isinstance(n, Num):
            return WeylOp.const(n.value, variables, param)
        if isinstance(n, Param):
            return WeylOp.s(variables, param)
        if isinstance(n, Partial):
            return WeylOp.d(n.var, variables)
        return WeylOp.x(n.name, variables)

    return _evaluate(ast, leaf).with_variables(variables)


def _flatten_product(node):
    if isinstance(node, Prod):
        out = []
        for f in node.factors:
            out.extend(_flatten_product(f))
        return out
    return [node]


def parse_factored(text, return_var=False):
    """Parse a product of monic linear factors such as ``(s+1/2)(s+7/6)`` or ``(s+1)^2``.

    Factors of degree above one are rejected: factorisation over Q is not attempted.
    """
    ast = parse_ast(text, implicit_mul=True)
    var = None
    mult = {}
    lead = Fraction(1)
    for factor in _flatten_product(ast):
        exponent = 1
        base = factor
        if isinstance(factor, Pow):
            base, exponent = factor.base, factor.exponent
        names = _names_in_order(base)
        if any(isinstance(n, Partial) for n in _walk(base)):
            raise ExprSyntaxError("derivations are not allowed here", factor.pos, text)
        if len(names) > 1 or (var is not None and names and names[0] != var):
            raise ExprSyntaxError("factored input must use a single variable", factor.pos, text)
        p = parse_poly_ast(base, names)
        if names:
            var = var or names[0]
        deg = p.degree()
        if deg > 1:
            raise NonRationalRoot(
                f"factor {p} has degree {deg}; supply linear factors with rational roots",
                factor.pos,
                text,
            )
        if deg <= 0:
            c = p.constant_term()
            if c == 0:
                raise ExprSyntaxError("the zero polynomial has no factorisation", factor.pos, text)
            lead *= c**exponent
            continue
        (a,) = [c for e, c in p.terms.items() if e[0] == 1]
        b = p.constant_term()
        lead *= a**exponent
        alpha = b / a
        mult[alpha] = mult.get(alpha, 0) + exponent
    if lead != 1:
        raise ExprSyntaxError(f"factored polynomial must be monic (leading coefficient {lead})", 0, text)
    result = FactoredPoly(mult)
    return (result, var or "s") if return_var else result


def parse_poly_ast(node, variables):
    variables = tuple(variables)

    def leaf(n):
        if isinstance(n, Num):
            return MPoly.const(n.value, variables)
        return MPoly.var(n.name, variables)

    return _evaluate(node, leaf).with_variables(variables)
