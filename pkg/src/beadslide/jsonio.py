"""Canonical JSON encoding for configurations, gap vectors, moves and plans.

Rationals travel as ``"p/q"`` strings in lowest terms with the sign on the
numerator, integers included (``"3/1"``). Anything else is rejected, and
``"2/4"``-style strings get their own error type.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .core import BeadConfig, GapVector, SlideMove, SlidePlan
from .errors import MalformedInput, MalformedRational, NonCanonicalRational

_RATIONAL_RE = re.compile(r"^(-?)(\d+)/(\d+)$")


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text) -> Fraction:
    if not isinstance(text, str):
        raise MalformedRational(f"rational must be a 'p/q' string, got {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise MalformedRational(f"not of the form p/q: {text!r}")
    den = int(m.group(3))
    if den == 0:
        raise MalformedRational(f"zero denominator: {text!r}")
    q = Fraction(int(m.group(1) + m.group(2)), den)
    if format_rational(q) != text:
        raise NonCanonicalRational(
            f"{text!r} is not canonical; expected {format_rational(q)!r}"
        )
    return q


def _field(obj, name):
    if not isinstance(obj, dict) or name not in obj:
        raise MalformedInput(f"missing field {name!r}")
    return obj[name]


def _rational_list(obj, name):
    items = _field(obj, name)
    if not isinstance(items, list):
        raise MalformedInput(f"field {name!r} must be an array")
    return [parse_rational(s) for s in items]


def config_to_obj(x: BeadConfig) -> dict:
    return {"mu": format_rational(x.mu),
            "positions": [format_rational(p) for p in x.positions]}


def config_from_obj(obj) -> BeadConfig:
    mu = parse_rational(_field(obj, "mu"))
    return BeadConfig(mu, tuple(_rational_list(obj, "positions")))


def gaps_to_obj(g: GapVector) -> dict:
    return {"mu": format_rational(g.mu),
            "gaps": [format_rational(a) for a in g.gaps]}


def gaps_from_obj(obj) -> GapVector:
    mu = parse_rational(_field(obj, "mu"))
    return GapVector(mu, tuple(_rational_list(obj, "gaps")))


def move_to_obj(m: SlideMove) -> dict:
    return {"bead": m.bead, "delta": format_rational(m.delta)}


def move_from_obj(obj) -> SlideMove:
    bead = _field(obj, "bead")
    if isinstance(bead, bool) or not isinstance(bead, int):
        raise MalformedInput(f"bead index must be an integer, got {bead!r}")
    return SlideMove(bead, parse_rational(_field(obj, "delta")))


def plan_to_obj(p: SlidePlan) -> list:
    return [move_to_obj(m) for m in p.moves]


def plan_from_obj(obj) -> SlidePlan:
    """Accepts a bare move array or any object with a ``"moves"`` array."""
    if isinstance(obj, dict):
        obj = _field(obj, "moves")
    if not isinstance(obj, list):
        raise MalformedInput("plan must be an array of moves")
    return SlidePlan(tuple(move_from_obj(m) for m in obj))


def dumps(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc
