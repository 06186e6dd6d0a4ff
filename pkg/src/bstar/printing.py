"""Text rendering in the same grammar the parser reads back."""

from fractions import Fraction


def format_fraction(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _power(name, k):
    return name if k == 1 else f"{name}^{k}"


def _join_terms(pieces):
    """``pieces`` is a list of (coefficient, [factor strings]) in print order."""
    if not pieces:
        return "0"
    out = []
    for n, (c, factors) in enumerate(pieces):
        neg = c < 0
        mag = -c if neg else c
        if factors:
            body = "*".join(factors) if mag == 1 else "*".join([format_fraction(mag)] + factors)
        else:
            body = format_fraction(mag)
        if n == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def format_poly(p):
    pieces = []
    for exps, c in p.sorted_terms():
        factors = [_power(v, k) for v, k in zip(p.variables, exps) if k]
        pieces.append((c, factors))
    return _join_terms(pieces)


def format_factored(fp, var="s"):
    if not fp.factors:
        return "1"
    parts = []
    for alpha, m in fp.factors:
        if alpha == 0:
            base = var
        elif alpha > 0:
            base = f"({var}+{format_fraction(alpha)})"
        else:
            base = f"({var}-{format_fraction(-alpha)})"
        parts.append(base if m == 1 else f"{base}^{m}")
    # a bare variable next to a parenthesised factor needs an explicit '*'
    if any(not p.startswith("(") for p in parts):
        return "*".join(parts)
    return "".join(parts)


def format_operator(op):
    pieces = []
    for (xe, de, j), c in op.sorted_terms():
        factors = [_power(v, k) for v, k in zip(op.variables, xe) if k]
        factors += [_power(f"d_{v}", k) for v, k in zip(op.variables, de) if k]
        if j:
            factors.append(_power(op.param, j))
        pieces.append((c, factors))
    return _join_terms(pieces)
