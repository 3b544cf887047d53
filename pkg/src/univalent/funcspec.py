"""Parser for the textual function specs used on the command line.

Grammar (whitespace is ignored everywhere)::

    spec     := "poly:" clist | "linear:" cplx ["," cplx] | "builtin:" name
    clist    := cplx ("," cplx)*
    cplx     := real | real sign ureal "i" | [sign] [ureal] "i"
    name     := "halfplane" | "halfplane2"

Errors carry the byte offset of the offending character in the original
string.
"""

from __future__ import annotations

import re

from .analytic_fn import AnalyticFn, Kind, half_plane, half_plane_sq, linear, power_series
from .errors import SpecParseError

_UREAL = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_LITERAL = re.compile(
    rf"""
    (?P<pim>[+-]?(?:{_UREAL})?)i
    | (?P<re>[+-]?{_UREAL})(?:(?P<isign>[+-])(?P<im>{_UREAL})?i)?
    """,
    re.VERBOSE,
)

BUILTINS = {"halfplane": half_plane, "halfplane2": half_plane_sq}


def _strip(text: str) -> tuple[str, list[int]]:
    """Remove whitespace, keeping a map from stripped index to byte offset."""
    chars: list[str] = []
    offsets: list[int] = []
    pos = 0
    for ch in text:
        if not ch.isspace():
            chars.append(ch)
            offsets.append(pos)
        pos += len(ch.encode("utf-8"))
    offsets.append(pos)
    return "".join(chars), offsets


def _literal(match: re.Match) -> complex:
    if match.group("pim") is None:
        re_part = float(match.group("re"))
        if match.group("isign") is None:
            return complex(re_part, 0.0)
        im = float(match.group("im")) if match.group("im") else 1.0
        return complex(re_part, im if match.group("isign") == "+" else -im)
    pim = match.group("pim")
    if pim in ("", "+"):
        return 1j
    if pim == "-":
        return -1j
    return complex(0.0, float(pim))


def _parse_list(body: str, offsets: list[int], start: int, text: str) -> list[complex]:
    values: list[complex] = []
    pos = start
    while True:
        m = _LITERAL.match(body, pos)
        if m is None or m.end() == pos:
            raise SpecParseError("expected a complex literal", offsets[pos], text)
        values.append(_literal(m))
        pos = m.end()
        if pos == len(body):
            return values
        if body[pos] != ",":
            raise SpecParseError(f"unexpected character {body[pos]!r}", offsets[pos], text)
        pos += 1
        if pos == len(body):
            raise SpecParseError("trailing comma", offsets[pos], text)


def parse_complex_list(text: str) -> list[complex]:
    """Parse ``"1, 0.5-2i, i"`` style comma-separated complex literals."""
    body, offsets = _strip(text)
    if not body:
        raise SpecParseError("empty coefficient list", 0, text)
    return _parse_list(body, offsets, 0, text)


def parse_complex(text: str) -> complex:
    values = parse_complex_list(text)
    if len(values) != 1:
        raise SpecParseError("expected a single complex literal", 0, text)
    return values[0]


def parse_function(text: str) -> AnalyticFn:
    """Build an :class:`AnalyticFn` from a spec such as ``poly:0,1,0.5``."""
    body, offsets = _strip(text)
    head, sep, _ = body.partition(":")
    if not sep:
        raise SpecParseError("missing ':' after the function kind", offsets[len(body)], text)
    start = len(head) + 1
    if head == "poly":
        return power_series(_parse_list(body, offsets, start, text))
    if head == "linear":
        vals = _parse_list(body, offsets, start, text)
        if len(vals) > 2:
            raise SpecParseError("linear takes at most two coefficients", offsets[start], text)
        return linear(vals[0], vals[1] if len(vals) == 2 else 0.0)
    if head == "builtin":
        name = body[start:]
        if name not in BUILTINS:
            raise SpecParseError(f"unknown builtin {name!r}", offsets[start], text)
        return BUILTINS[name]()
    raise SpecParseError(f"unknown function kind {head!r}", offsets[0], text)


def _fmt(v: complex) -> str:
    if v.imag == 0:
        return repr(v.real)
    sign = "+" if v.imag >= 0 else "-"
    return f"{v.real!r}{sign}{abs(v.imag)!r}i"


def format_function(f: AnalyticFn) -> str:
    """Inverse of :func:`parse_function` for the kinds it can express."""
    if f.kind is Kind.HALF_PLANE:
        return "builtin:halfplane"
    if f.kind is Kind.HALF_PLANE_SQ:
        return "builtin:halfplane2"
    if f.kind is Kind.LINEAR:
        return f"linear:{_fmt(f.c)},{_fmt(f.d)}"
    if f.kind is Kind.POWER_SERIES:
        return "poly:" + ",".join(_fmt(v) for v in f.poly)
    poly = ",".join(_fmt(v) for v in f.poly)
    poles = ",".join(_fmt(v) for v in f.poles)
    return f"rational:[{poly}]+poles[{poles}]"
