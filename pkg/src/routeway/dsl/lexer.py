from __future__ import annotations

import bisect
import re
from dataclasses import dataclass

from ..diagnostics import Span
from ..templates import IDENT_PATTERN

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t", "r": "\r"}

_TOKEN_RE = re.compile(
    r"""
    (?P<SKIP>[ \t\r\f\v\n]+|\#[^\n]*)
  | (?P<STRING>"(?:[^"\\\n]|\\.)*")
  | (?P<UNTERMINATED>"(?:[^"\\\n]|\\.)*)
  | (?P<TWOWAY><=\[)
  | (?P<CLOSE>\]=>)
  | (?P<OPEN>=\[)
  | (?P<IMPLIES>=>)
  | (?P<SPECIALIZE>=:)
  | (?P<NUMBER>-?\d+(?:\.\d+)?)
  | (?P<IDENT>"""
    + IDENT_PATTERN
    + r""")
  | (?P<PUNCT>[{}(),:])
  | (?P<BAD>.)
    """,
    re.VERBOSE | re.DOTALL,
)


class LexError(Exception):
    def __init__(self, message: str, span: Span) -> None:
        super().__init__(message)
        self.message = message
        self.span = span


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    span: Span


class _Positions:
    def __init__(self, source: str) -> None:
        self.starts = [0] + [m.end() for m in re.finditer("\n", source)]

    def at(self, offset: int) -> tuple[int, int]:
        line = bisect.bisect_right(self.starts, offset) - 1
        return line + 1, offset - self.starts[line] + 1

    def span(self, start: int, end: int) -> Span:
        return Span(*self.at(start), *self.at(end))


def _unescape(body: str, span: Span) -> str:
    if "\\" not in body:
        return body
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            nxt = body[i + 1]
            if nxt not in _ESCAPES:
                raise LexError(f"unknown escape sequence \\{nxt}", span)
            out.append(_ESCAPES[nxt])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def tokenize(source: str) -> list[Token]:
    positions = _Positions(source)
    tokens: list[Token] = []
    for m in _TOKEN_RE.finditer(source):
        kind = m.lastgroup
        if kind == "SKIP":
            continue
        span = positions.span(m.start(), m.end())
        text = m.group()
        if kind == "UNTERMINATED":
            raise LexError("unterminated string", span)
        if kind == "BAD":
            raise LexError(f"unexpected character {text!r}", span)
        if kind == "STRING":
            text = _unescape(text[1:-1], span)
        elif kind in ("TWOWAY", "CLOSE", "OPEN", "IMPLIES", "SPECIALIZE"):
            kind = text
        elif kind == "PUNCT":
            kind = text
        tokens.append(Token(kind, text, span))
    end = positions.span(len(source), len(source))
    tokens.append(Token("EOF", "", end))
    return tokens
