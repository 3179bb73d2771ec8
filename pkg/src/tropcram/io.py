"""Plain-text matrix and vector files.

Matrix file::

    # comment
    semiring smax
    3 3
    p(0) n(2) z
    ...

Vector file: the same header, then a single length ``n`` (``n 1`` and
``1 n`` are accepted too), then ``n`` tokens.  Tokens may span lines; ``#``
starts a comment anywhere on a line.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .extension import semiring_by_name
from .linalg import TropMatrix
from .semirings import ParseError, Semiring


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int


def _tokens(text: str) -> list:
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        col = 0
        for piece in body.split():
            col = body.index(piece, col)
            out.append(_Tok(piece, ln, col + 1))
            col += len(piece)
    return out


def _fail(source: str, tok: Optional[_Tok], msg: str):
    where = f"{source}:{tok.line}:{tok.col}" if tok else f"{source}: end of input"
    raise ParseError(f"{where}: {msg}")


def _header(toks: list, source: str, semiring: Optional[Semiring]):
    if len(toks) < 2 or toks[0].text != "semiring":
        _fail(source, toks[0] if toks else None, "expected header 'semiring <name>'")
    try:
        S = semiring_by_name(toks[1].text)
    except ParseError as exc:
        _fail(source, toks[1], str(exc))
    return (semiring or S), toks[2:]


def _int(tok: Optional[_Tok], source: str, what: str) -> int:
    if tok is None:
        _fail(source, None, f"missing {what}")
    try:
        v = int(tok.text)
    except ValueError:
        _fail(source, tok, f"{what} must be a non-negative integer, got {tok.text!r}")
    if v < 0:
        _fail(source, tok, f"{what} must be non-negative")
    return v


def _elements(S: Semiring, toks: list, count: int, source: str) -> list:
    if len(toks) < count:
        _fail(source, None, f"expected {count} elements, found {len(toks)}")
    if len(toks) > count:
        _fail(source, toks[count], f"unexpected extra token {toks[count].text!r}")
    out = []
    for t in toks:
        try:
            out.append(S.parse(t.text))
        except (ParseError, ValueError) as exc:
            _fail(source, t, f"bad {S.name} element: {exc}")
    return out


def parse_matrix(text: str, source: str = "<string>", semiring: Optional[Semiring] = None) -> TropMatrix:
    S, toks = _header(_tokens(text), source, semiring)
    r = _int(toks[0] if toks else None, source, "row count")
    c = _int(toks[1] if len(toks) > 1 else None, source, "column count")
    vals = _elements(S, toks[2:], r * c, source)
    return TropMatrix.from_rows(S, [vals[i * c:(i + 1) * c] for i in range(r)])


def parse_vector(text: str, source: str = "<string>", semiring: Optional[Semiring] = None):
    """Returns ``(semiring, tuple_of_elements)``."""
    S, toks = _header(_tokens(text), source, semiring)
    n = _int(toks[0] if toks else None, source, "length")
    rest = toks[1:]
    if len(rest) > 1 and rest[0].text.isdigit():
        second = int(rest[0].text)
        if second * n == len(rest) - 1 and (second == 1 or n == 1):
            n, rest = n * second, rest[1:]
    return S, tuple(_elements(S, rest, n, source))


def read_matrix(path, semiring: Optional[Semiring] = None) -> TropMatrix:
    p = Path(path)
    return parse_matrix(p.read_text(), str(p), semiring)


def read_vector(path, semiring: Optional[Semiring] = None):
    p = Path(path)
    return parse_vector(p.read_text(), str(p), semiring)


def format_matrix(A: TropMatrix) -> str:
    head = f"semiring {A.S.name}\n{A.nrows} {A.ncols}\n"
    return head + A.format() + "\n"


def format_vector(S: Semiring, x: Sequence) -> str:
    return f"semiring {S.name}\n{len(x)}\n" + " ".join(S.fmt(v) for v in x) + "\n"


def format_row(S: Semiring, x: Sequence) -> str:
    return " ".join(S.fmt(v) for v in x)
