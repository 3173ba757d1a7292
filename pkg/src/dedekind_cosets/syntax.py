"""Text syntax for rings, elements, matrices and ideals.

    ring      Z | Q(sqrt,d)
    element   x | x+y*w | x-y*w | (x+y*w)/den   (rational coefficients allowed)
    matrix    [[a, b], [c, d]]
    ideal     ideal(g1, g2, ...)  or  {"basis": [[a, b], [0, c]], "den": n}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .ideals import FractionalIdeal, ideal_from_generators
from .matrices import Mat2
from .ring import Element, Ring, Z


class ParseError(ValueError):
    pass


_RING_RE = re.compile(r"^Q\(sqrt,(-?\d+)\)$")
_MATRIX_RE = re.compile(r"^\[\[([^\[\],]+),([^\[\],]+)\],\[([^\[\],]+),([^\[\],]+)\]\]$")
_TERM_RE = re.compile(r"([+-]?)([^+-]+)")


def parse_ring(text: str) -> Ring:
    s = re.sub(r"\s+", "", text)
    if s in ("Z", "ZZ"):
        return Z
    m = _RING_RE.match(s)
    if not m:
        raise ParseError(f"cannot parse ring {text!r}; expected 'Z' or 'Q(sqrt,d)'")
    try:
        return Ring(int(m.group(1)))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _coefficient(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coefficient {text!r}") from None


def _term(ring: Ring, text: str) -> tuple[Fraction, Fraction]:
    if "w" not in text:
        return _coefficient(text), Fraction(0)
    if ring.is_integers:
        raise ParseError("Z elements have no w coordinate")
    if text == "w":
        return Fraction(0), Fraction(1)
    if text.endswith("*w"):
        return Fraction(0), _coefficient(text[:-2])
    if text.startswith("w*"):
        return Fraction(0), _coefficient(text[2:])
    raise ParseError(f"bad term {text!r}")


def parse_element(ring: Ring, text) -> Element:
    if isinstance(text, int):
        return ring(text)
    s = re.sub(r"\s+", "", str(text).strip().strip('"'))
    if not s:
        raise ParseError("empty element")
    m = re.match(r"^\((.*)\)/(\d+)$", s)
    if m:
        inner = parse_element(ring, m.group(1))
        den = int(m.group(2))
        if den == 0:
            raise ParseError("zero denominator")
        return inner / den
    pos, x, y = 0, Fraction(0), Fraction(0)
    for tm in _TERM_RE.finditer(s):
        if tm.start() != pos:
            raise ParseError(f"cannot parse element {text!r}")
        pos = tm.end()
        sign = -1 if tm.group(1) == "-" else 1
        dx, dy = _term(ring, tm.group(2))
        x += sign * dx
        y += sign * dy
    if pos != len(s):
        raise ParseError(f"cannot parse element {text!r}")
    return Element(ring, x, y)


def parse_matrix(ring: Ring, text) -> Mat2:
    if isinstance(text, list):
        try:
            (a, b), (c, d) = text
        except (TypeError, ValueError):
            raise ParseError(f"matrix must be 2x2, got {text!r}") from None
        entries = [a, b, c, d]
    else:
        s = re.sub(r"\s+", "", text).replace('"', "")
        m = _MATRIX_RE.match(s)
        if not m:
            raise ParseError(f"cannot parse matrix {text!r}; expected [[a, b], [c, d]]")
        entries = list(m.groups())
    return Mat2(ring, *(parse_element(ring, e) for e in entries))


def parse_ideal(ring: Ring, text) -> FractionalIdeal:
    if isinstance(text, dict):
        return FractionalIdeal.from_json(ring, text)
    s = text.strip()
    if s.startswith("{"):
        try:
            return FractionalIdeal.from_json(ring, json.loads(s))
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"bad ideal JSON {text!r}: {exc}") from None
    m = re.match(r"^ideal\((.*)\)$", re.sub(r"\s+", "", s))
    if not m:
        raise ParseError(f"cannot parse ideal {text!r}; expected ideal(g1, ...)")
    gens = [parse_element(ring, g) for g in m.group(1).split(",") if g]
    try:
        return ideal_from_generators(ring, gens)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
