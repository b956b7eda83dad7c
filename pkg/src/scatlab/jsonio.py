"""Parsing and emitting the JSON forms used on the command line and in reports.

Field descriptors look like {"p": 3, "h": 2, "n": 6, "modulus": [...]};
polynomials are coefficient lists [a_0, ..., a_{n-1}] of element encodings
or strings such as "x^q - x^q^2 + x^q^4 + [7]x^q^5".
"""

from __future__ import annotations

import json
import re
from typing import Any

from .field import FieldCtx, FieldError, make_field, prime_factors
from .geometry import ProjSubspace
from .linpoly import LinPoly
from .rmcode import RMCode


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.message = message
        self.position = position
        self.text = text
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")

    def to_json(self) -> dict:
        return {"message": self.message, "position": self.position}


# -- fields -----------------------------------------------------------------------------


def field_to_json(ctx: FieldCtx) -> dict:
    return ctx.descriptor()


def field_from_json(obj: dict) -> FieldCtx:
    try:
        p, h, n = int(obj["p"]), int(obj.get("h", 1)), int(obj["n"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad field descriptor: {exc}") from None
    try:
        return make_field(p, h, n, obj.get("modulus"))
    except FieldError as exc:
        raise ParseError(str(exc)) from None


def parse_field(text: str) -> FieldCtx:
    """Accept a JSON descriptor or the short form "q,n" (q a prime power)."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return field_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    m = re.fullmatch(r"\s*(?:q\s*=\s*)?(\d+)\s*,\s*(?:n\s*=\s*)?(\d+)\s*", text)
    if not m:
        raise ParseError("expected 'q,n' or a JSON field descriptor", 0)
    q, n = int(m.group(1)), int(m.group(2))
    facs = prime_factors(q) if q > 1 else []
    if len(facs) != 1:
        raise ParseError(f"q={q} is not a prime power", m.start(1))
    p = facs[0]
    h = 0
    while p**h < q:
        h += 1
    return make_field(p, h, n)


# -- polynomials --------------------------------------------------------------------------


_TERM = re.compile(r"\s*([+-])?\s*(?:\[(\d+)\]|(\d+)\s*\*?)?\s*x(\^q(?:\^(\d+))?)?\s*")


def parse_poly(ctx: FieldCtx, text: str | list) -> LinPoly:
    if isinstance(text, list):
        return poly_from_json(ctx, text)
    s = text.strip()
    if s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError:
            data = None
        if isinstance(data, list):
            return poly_from_json(ctx, data)
    if s in ("0", ""):
        return LinPoly.zero(ctx)
    terms: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("cannot parse term", pos, text)
        sign, bracket, plain, qpart, exp = m.groups()
        if pos > 0 and sign is None:
            raise ParseError("expected '+' or '-' between terms", pos, text)
        coef = int(bracket or plain or 1)
        if coef >= ctx.order:
            raise ParseError(f"element encoding {coef} out of range [0, {ctx.order})", m.start(), text)
        if sign == "-":
            coef = ctx.neg(coef)
        e = 0 if qpart is None else int(exp or 1)
        if e >= ctx.n:
            raise ParseError(f"q-exponent {e} must be below n={ctx.n}", m.start(), text)
        terms[e] = ctx.add(terms.get(e, 0), coef)
        pos = m.end()
    return LinPoly.from_terms(ctx, terms)


def poly_from_json(ctx: FieldCtx, data: list) -> LinPoly:
    if not isinstance(data, list):
        raise ParseError("polynomial must be a list of coefficients")
    if len(data) != ctx.n:
        raise ParseError(f"expected {ctx.n} coefficients, got {len(data)}")
    for i, v in enumerate(data):
        if not isinstance(v, int) or not 0 <= v < ctx.order:
            raise ParseError(f"element encoding {v!r} out of range [0, {ctx.order})", i)
    return LinPoly(ctx, tuple(data))


def poly_to_json(f: LinPoly) -> list[int]:
    return list(f.coeffs)


def parse_poly_list(ctx: FieldCtx, text: str) -> list[LinPoly]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(data, list):
        raise ParseError("expected a JSON list of polynomials")
    return [parse_poly(ctx, item) for item in data]


# -- subspaces and codes ---------------------------------------------------------------------


def _vectors(ctx: FieldCtx, data: Any, what: str) -> list[list[int]]:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError(f"{what} must be a list of vectors")
    for i, row in enumerate(data):
        if len(row) != ctx.n:
            raise ParseError(f"{what} vector {i} has length {len(row)}, expected {ctx.n}", i)
        for v in row:
            if not isinstance(v, int) or not 0 <= v < ctx.order:
                raise ParseError(f"element encoding {v!r} out of range in {what} vector {i}", i)
    return data


def subspace_from_json(ctx: FieldCtx, obj: dict) -> ProjSubspace:
    if "basis" in obj:
        return ProjSubspace.span(ctx, _vectors(ctx, obj["basis"], "basis"))
    if "equations" in obj:
        return ProjSubspace.from_equations(ctx, _vectors(ctx, obj["equations"], "equation"))
    raise ParseError("subspace needs 'basis' or 'equations'")


def subspace_to_json(S: ProjSubspace) -> dict:
    return S.to_json()


def code_from_json(ctx: FieldCtx, obj: dict) -> RMCode:
    gens = [poly_from_json(ctx, g) for g in obj.get("generators", [])]
    if obj.get("left_linear"):
        return RMCode.fqn_span(ctx, gens)
    return RMCode.fq_span(ctx, gens)


def code_to_json(C: RMCode) -> dict:
    return C.to_json()


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, default=_default)


def _default(o):
    import numpy as np

    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, LinPoly):
        return list(o.coeffs)
    raise TypeError(f"not serialisable: {type(o).__name__}")
