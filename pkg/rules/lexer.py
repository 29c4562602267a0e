"""
Tokenizer for rule files.

Token kinds: ident, decimal, string, keyword, the punctuation kinds below and eof.
``#`` starts a comment that runs to the end of the line. Positions are 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from core.errors import IllegalCharacter, UnterminatedString

KEYWORDS = frozenset({"implies", "evidence", "and", "or", "not", "weight", "action", "threshold"})

PUNCTUATION = {
    ":": "colon",
    ";": "semi",
    ",": "comma",
    "[": "lbrack",
    "]": "rbrack",
    "(": "lparen",
    ")": "rparen",
}
ARROW = "<-"

_DIGITS = frozenset("0123456789")
_IDENT_START = frozenset("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz_")
_IDENT_CHARS = _IDENT_START | _DIGITS
_ESCAPES = {'"': '"', "\\": "\\"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int
    value: Optional[object] = None

    def describe(self) -> str:
        if self.kind == "eof":
            return "end of input"
        if self.kind == "string":
            return f'string "{self.value}"'
        return repr(self.text)


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    while i < n:
        ch = source[i]

        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue

        start_col = col

        if ch in _IDENT_START:
            j = i + 1
            while j < n and source[j] in _IDENT_CHARS:
                j += 1
            text = source[i:j]
            kind = "keyword" if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, line, start_col))
            col += j - i
            i = j
            continue

        if ch in _DIGITS or (ch == "." and i + 1 < n and source[i + 1] in _DIGITS):
            j = i
            while j < n and source[j] in _DIGITS:
                j += 1
            if j < n and source[j] == "." and j + 1 < n and source[j + 1] in _DIGITS:
                j += 1
                while j < n and source[j] in _DIGITS:
                    j += 1
            text = source[i:j]
            tokens.append(Token("decimal", text, line, start_col, float(text)))
            col += j - i
            i = j
            continue

        if ch == '"':
            j = i + 1
            chars: list[str] = []
            while True:
                if j >= n or source[j] == "\n":
                    raise UnterminatedString("unterminated string", line, start_col)
                c = source[j]
                if c == '"':
                    break
                if c == "\\" and j + 1 < n and source[j + 1] in _ESCAPES:
                    chars.append(_ESCAPES[source[j + 1]])
                    j += 2
                    continue
                chars.append(c)
                j += 1
            text = source[i:j + 1]
            tokens.append(Token("string", text, line, start_col, "".join(chars)))
            col += j + 1 - i
            i = j + 1
            continue

        if source.startswith(ARROW, i):
            tokens.append(Token("arrow", ARROW, line, start_col))
            i, col = i + 2, col + 2
            continue

        if ch in PUNCTUATION:
            tokens.append(Token(PUNCTUATION[ch], ch, line, start_col))
            i, col = i + 1, col + 1
            continue

        raise IllegalCharacter(f"illegal character {ch!r}", line, start_col)

    tokens.append(Token("eof", "", line, col))
    return tokens
