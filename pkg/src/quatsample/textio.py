"""Text formats: quaternion literals, polynomial lines, matrix files and BVP spec files.

Quaternion literals are whitespace-free sums of signed terms such as
``1+2i-3j+0.5k``, ``-k`` or ``2.5e-3j``. Each unit may appear at most once and
the coefficient ``1`` may be omitted.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .quaternion import Quaternion

_NUMBER = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(rf"([+-]?)({_NUMBER})?([ijk]?)")
_UNIT_INDEX = {"": 0, "i": 1, "j": 2, "k": 3}


def parse_quaternion(text: str) -> Quaternion:
    if not text:
        raise ParseError("empty quaternion literal", column=1, text=text)
    comps = [0.0, 0.0, 0.0, 0.0]
    seen = set()
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        sign, number, unit = m.groups()
        if m.end() == pos or (number is None and not unit):
            raise ParseError(f"unexpected character {text[pos]!r}", column=pos + 1, text=text)
        if pos > 0 and not sign:
            raise ParseError(f"expected '+' or '-' before {text[pos]!r}", column=pos + 1, text=text)
        end = m.end()
        if end < len(text) and text[end] not in "+-":
            raise ParseError(f"unexpected character {text[end]!r}", column=end + 1, text=text)
        if unit in seen:
            raise ParseError(f"repeated {'real' if not unit else unit!r} term", column=pos + 1, text=text)
        seen.add(unit)
        value = float(number) if number is not None else 1.0
        comps[_UNIT_INDEX[unit]] = -value if sign == "-" else value
        pos = m.end()
    return Quaternion(*comps)


def format_real(value: float, digits: int = 6) -> str:
    text = f"{value:.{digits}g}"
    # normalise negative zero, including values that round to it
    if float(text) == 0.0:
        return "0"
    return text


def format_quaternion(q, digits: int = 6) -> str:
    q = Quaternion.coerce(q)
    out = []
    for unit, value in zip(("", "i", "j", "k"), q.as_tuple()):
        body = format_real(value, digits)
        if body == "0":
            continue
        if unit and body in ("1", "-1"):
            body = body[:-1]
        if out and not body.startswith("-"):
            body = "+" + body
        out.append(body + unit)
    return "".join(out) or "0"


def parse_quaternion_list(line: str, offset: int = 0) -> list[Quaternion]:
    values = []
    for m in re.finditer(r"\S+", line):
        try:
            values.append(parse_quaternion(m.group()))
        except ParseError as exc:
            col = offset + m.start() + (exc.column or 1)
            raise ParseError(f"bad quaternion literal {m.group()!r}", column=col, text=line) from None
    return values


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def read_polynomial(path) -> list[Quaternion]:
    """Coefficients in ascending powers, on the first non-blank line."""
    lines = list(_content_lines(Path(path).read_text()))
    if len(lines) != 1:
        raise ParseError(f"{path}: expected exactly one coefficient line, found {len(lines)}")
    coeffs = parse_quaternion_list(lines[0][1])
    if not coeffs:
        raise ParseError(f"{path}: no coefficients")
    return coeffs


def read_matrix(path) -> list[list[Quaternion]]:
    lines = list(_content_lines(Path(path).read_text()))
    if not lines:
        raise ParseError(f"{path}: empty matrix file")
    header = lines[0][1].split()
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise ParseError(f"{path}:{lines[0][0]}: header must be 'rows cols'")
    n, m = int(header[0]), int(header[1])
    if len(lines) - 1 != n:
        raise ParseError(f"{path}: expected {n} rows, found {len(lines) - 1}")
    rows = []
    for lineno, line in lines[1:]:
        try:
            row = parse_quaternion_list(line)
        except ParseError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from None
        if len(row) != m:
            raise ParseError(f"{path}:{lineno}: expected {m} entries, found {len(row)}")
        rows.append(row)
    return rows


def write_matrix(rows, digits: int = 17) -> str:
    lines = [f"{len(rows)} {len(rows[0]) if rows else 0}"]
    lines += [" ".join(format_quaternion(q, digits) for q in row) for row in rows]
    return "\n".join(lines) + "\n"


@dataclass
class SpecFile:
    N: int
    a: list[Quaternion]
    b: list[Quaternion]
    h1: Quaternion
    h2: Quaternion
    s: Quaternion | None


_SPEC_KEYS = {"N", "a", "b", "h1", "h2", "s"}


def _key_values(text: str, allowed: set[str], where: str) -> dict[str, tuple[int, str]]:
    found: dict[str, tuple[int, str]] = {}
    for lineno, line in _content_lines(text):
        if "=" not in line:
            raise ParseError(f"{where}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in allowed:
            raise ParseError(f"{where}:{lineno}: unknown key {key!r}")
        if key in found:
            raise ParseError(f"{where}:{lineno}: duplicate key {key!r}")
        found[key] = (lineno, value)
    return found


def parse_spec(text: str, where: str = "<spec>") -> SpecFile:
    kv = _key_values(text, _SPEC_KEYS, where)
    for key in ("N", "a", "b"):
        if key not in kv:
            raise ParseError(f"{where}: missing key {key!r}")

    def quats(key):
        lineno, value = kv[key]
        try:
            return parse_quaternion_list(value)
        except ParseError as exc:
            raise ParseError(f"{where}:{lineno}: {exc}") from None

    def single(key, default):
        if key not in kv:
            return default
        values = quats(key)
        if len(values) != 1:
            raise ParseError(f"{where}:{kv[key][0]}: {key} takes one quaternion")
        return values[0]

    lineno, n_text = kv["N"]
    if not n_text.isdigit() or int(n_text) < 1:
        raise ParseError(f"{where}:{lineno}: N must be a positive integer")
    n = int(n_text)
    a, b = quats("a"), quats("b")
    if len(a) != n:
        raise ParseError(f"{where}:{kv['a'][0]}: a needs {n} entries, found {len(a)}")
    if len(b) != n + 1:
        raise ParseError(f"{where}:{kv['b'][0]}: b needs {n + 1} entries, found {len(b)}")
    return SpecFile(n, a, b, single("h1", Quaternion()), single("h2", Quaternion()), single("s", None))


def read_spec(path) -> SpecFile:
    return parse_spec(Path(path).read_text(), where=str(path))


def read_transform_data(path) -> tuple[list[Quaternion], list[Quaternion]]:
    """Data file for ``reconstruct``: keys ``F`` (N coefficients) and ``points``."""
    kv = _key_values(Path(path).read_text(), {"F", "points"}, str(path))
    for key in ("F", "points"):
        if key not in kv:
            raise ParseError(f"{path}: missing key {key!r}")
    return parse_quaternion_list(kv["F"][1]), parse_quaternion_list(kv["points"][1])
