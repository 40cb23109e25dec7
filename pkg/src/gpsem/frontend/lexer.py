from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, List

from ..errors import ParseError

KEYWORDS = frozenset({
    'main', 'if', 'then', 'else', 'skip', 'fail', 'interface', 'where',
    'edge', 'not', 'and', 'or', 'int', 'string',
})

# longest first
PUNCT = ('=>', '->', '>=', '<=', '\\=', '(', ')', '[', ']', '{', '}', ',', ';', ':',
         '|', '=', '>', '<', '+', '-', '*', '/', '_', '!')

_STRING = re.compile(r'"((?:[^"\\\n]|\\.)*)"')
_NUMBER = re.compile(r'[0-9]+')
_IDENT = re.compile(r'[A-Za-z][A-Za-z0-9]*')
_ESCAPES = {'"': '"', '\\': '\\'}


@dataclass(frozen=True)
class Token:
    kind: str  # NUM STR ID KW P EOF
    value: object
    line: int
    col: int

    @property
    def pos(self):
        return (self.line, self.col)

    def is_(self, kind: str, value=None) -> bool:
        return self.kind == kind and (value is None or self.value == value)

    def describe(self) -> str:
        if self.kind == 'EOF':
            return 'end of input'
        if self.kind == 'STR':
            return f'string "{self.value}"'
        return repr(str(self.value))


def unescape(body: str, line: int, col: int) -> str:
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == '\\':
            nxt = body[i + 1]
            if nxt not in _ESCAPES:
                raise ParseError(f'invalid escape \\{nxt} in string literal', line, col + i + 1)
            out.append(_ESCAPES[nxt])
            i += 2
            continue
        if not (32 <= ord(ch) <= 126):
            raise ParseError(f'character {ch!r} not allowed in string literal', line, col + i + 1)
        out.append(ch)
        i += 1
    return ''.join(out)


def tokenize(text: str, line_comment: str = '//') -> List[Token]:
    return list(_tokens(text, line_comment))


def _tokens(text: str, line_comment: str) -> Iterator[Token]:
    i, line, line_start = 0, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        col = i - line_start + 1
        if ch == '\n':
            i += 1
            line += 1
            line_start = i
            continue
        if ch in ' \t\r':
            i += 1
            continue
        if text.startswith(line_comment, i):
            end = text.find('\n', i)
            i = n if end < 0 else end
            continue
        if text.startswith('/*', i):
            end = text.find('*/', i + 2)
            if end < 0:
                raise ParseError('unterminated comment', line, col)
            chunk = text[i:end + 2]
            newlines = chunk.count('\n')
            if newlines:
                line += newlines
                line_start = i + chunk.rfind('\n') + 1
            i = end + 2
            continue
        if ch == '"':
            m = _STRING.match(text, i)
            if not m:
                raise ParseError('unterminated string literal', line, col)
            yield Token('STR', unescape(m.group(1), line, col), line, col)
            i = m.end()
            continue
        m = _NUMBER.match(text, i)
        if m:
            if _IDENT.match(text, m.end()):
                raise ParseError(f'malformed numeral {text[i:m.end() + 1]!r}...', line, col)
            yield Token('NUM', int(m.group()), line, col)
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            word = m.group()
            yield Token('KW' if word in KEYWORDS else 'ID', word, line, col)
            i = m.end()
            continue
        for p in PUNCT:
            if text.startswith(p, i):
                yield Token('P', p, line, col)
                i += len(p)
                break
        else:
            raise ParseError(f'unexpected character {ch!r}', line, col)
    yield Token('EOF', None, line, i - line_start + 1)
