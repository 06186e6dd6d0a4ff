"""JSON persistence for certificates.  Every polynomial and operator is stored as grammar text."""

import json
from fractions import Fraction

import jsonschema

from .certify import Certificate, EulerCertificate
from .errors import ExprSyntaxError
from .parsing import parse_operator, parse_poly
from .printing import format_fraction
from .star import FactoredPoly

SCHEMA_VERSION = 1

SCHEMA = {
    "type": "object",
    "required": ["kind", "function", "variables", "btilde", "decomposition", "schema_version"],
    "properties": {
        "kind": {"enum": ["bs-certificate", "euler-certificate"]},
        "schema_version": {"const": SCHEMA_VERSION},
        "function": {"type": "string"},
        "variables": {"type": "array", "items": {"type": "string"}},
        "btilde": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["root", "mult"],
                "properties": {
                    "root": {"type": ["string", "integer"]},
                    "mult": {"type": "integer", "minimum": 1},
                },
            },
        },
        "decomposition": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["operator", "generator"],
                "properties": {
                    "operator": {"type": "string"},
                    "generator": {"type": "integer", "minimum": 0},
                },
            },
        },
        "euler_field": {"type": ["string", "null"]},
        "q_operator": {"type": ["string", "null"]},
    },
    "if": {"properties": {"kind": {"const": "euler-certificate"}}},
    "then": {"required": ["euler_field", "q_operator"], "properties": {"euler_field": {"type": "string"}, "q_operator": {"type": "string"}}},
}


class CertificateFormatError(ExprSyntaxError):
    pass


def btilde_to_json(fp):
    # roots, not their opposites: (s + 1/2) is stored as root -1/2
    return [{"root": format_fraction(-alpha), "mult": m} for alpha, m in fp.factors]


def _btilde_from_json(items):
    try:
        return FactoredPoly((-Fraction(str(item["root"])), item["mult"]) for item in items)
    except (ValueError, ZeroDivisionError) as exc:
        raise CertificateFormatError(f"bad root in btilde: {exc}") from exc


def to_json(cert):
    if isinstance(cert, EulerCertificate):
        return {
            "kind": "euler-certificate",
            "schema_version": SCHEMA_VERSION,
            "function": str(cert.g),
            "variables": list(cert.variables),
            "btilde": btilde_to_json(cert.ctilde),
            "decomposition": [{"operator": str(op), "generator": i} for op, i in cert.q_decomposition],
            "euler_field": str(cert.chi),
            "q_operator": str(cert.Q),
        }
    return {
        "kind": "bs-certificate",
        "schema_version": SCHEMA_VERSION,
        "function": str(cert.f),
        "variables": list(cert.variables),
        "btilde": btilde_to_json(cert.btilde),
        "decomposition": [{"operator": str(op), "generator": i} for op, i in cert.decomposition],
        "euler_field": None,
        "q_operator": None,
    }


def from_json(data):
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise CertificateFormatError(f"certificate does not match the schema: {exc.message}") from exc
    variables = tuple(data["variables"])
    f = parse_poly(data["function"], variables)
    btilde = _btilde_from_json(data["btilde"])
    decomposition = [(parse_operator(d["operator"], variables), d["generator"]) for d in data["decomposition"]]
    try:
        if data["kind"] == "bs-certificate":
            return Certificate(f, variables, btilde, decomposition)
        chi = parse_operator(data["euler_field"], variables)
        Q = parse_operator(data["q_operator"], variables)
        return EulerCertificate(f, variables, chi, Q, btilde, decomposition)
    except ValueError as exc:
        if isinstance(exc, ExprSyntaxError):
            raise
        raise CertificateFormatError(str(exc)) from exc


def dumps(cert):
    return json.dumps(to_json(cert), indent=2, ensure_ascii=False) + "\n"


def loads(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"invalid JSON: {exc.msg}", exc.pos) from exc
    return from_json(data)


def save(cert, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(cert))


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
