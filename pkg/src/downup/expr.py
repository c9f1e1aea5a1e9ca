"""Text input and output for algebra elements.

Grammar (whitespace ignored)::

    element := ['+'|'-'] term (('+'|'-') term)*
    term    := factor (['*'] factor)*
    factor  := atom ['^' nat]
    atom    := nat ['/' nat] | 'sqrt(' ['-'] nat ')' | 'd' | 'u' | '(' element ')'

Juxtaposition and ``*`` both mean concatenation, so ``"d^2*u"``,
``"ddu"`` and ``"d d u"`` are the same free word.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .field import ONE, QuadScalar
from .pbw import Element, Monomial, WordCombination

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<sqrt>sqrt)|(?P<sym>[du()+\-*/^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError("unexpected character", text, bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _concat(x: WordCombination, y: WordCombination) -> WordCombination:
    out: WordCombination = {}
    for w1, c1 in x.items():
        for w2, c2 in y.items():
            w = w1 + w2
            c = out.get(w, QuadScalar(0)) + c1 * c2
            if c:
                out[w] = c
            else:
                out.pop(w, None)
    return out


def _add(x: WordCombination, y: WordCombination, sign: int = 1) -> WordCombination:
    out = dict(x)
    for w, c in y.items():
        v = out.get(w, QuadScalar(0)) + (c if sign > 0 else -c)
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, val, pos = self.take()
        if val != value or kind == "end":
            raise ParseError(f"expected {value!r}", self.text, pos)

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.peek()[2])

    def nat(self) -> int:
        kind, val, pos = self.take()
        if kind != "num":
            raise ParseError("expected a natural number", self.text, pos)
        return int(val)

    def element(self) -> WordCombination:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "sym":
            sign = -1 if self.take()[1] == "-" else 1
        out = _add({}, self.term(), sign)
        while self.peek()[0] == "sym" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            out = _add(out, self.term(), sign)
        return out

    def _starts_atom(self) -> bool:
        kind, val, _ = self.peek()
        return kind in ("num", "sqrt") or (kind == "sym" and val in "du(")

    def term(self) -> WordCombination:
        if not self._starts_atom():
            raise self.error("expected a term")
        out = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                if not self._starts_atom():
                    raise self.error("expected a factor after '*'")
            elif not self._starts_atom():
                return out
            out = _concat(out, self.factor())

    def factor(self) -> WordCombination:
        base = self.atom()
        if self.peek()[0] == "sym" and self.peek()[1] == "^":
            self.take()
            n = self.nat()
            out: WordCombination = {"": ONE}
            for _ in range(n):
                out = _concat(out, base)
            return out
        return base

    def atom(self) -> WordCombination:
        kind, val, pos = self.take()
        if kind == "num":
            value = Fraction(int(val))
            if self.peek()[0] == "sym" and self.peek()[1] == "/":
                self.take()
                den_pos = self.peek()[2]
                den = self.nat()
                if den == 0:
                    raise ParseError("zero denominator", self.text, den_pos)
                value /= den
            return {"": QuadScalar(value)} if value else {}
        if kind == "sqrt":
            self.expect("(")
            neg = False
            if self.peek()[1] == "-" and self.peek()[0] == "sym":
                self.take()
                neg = True
            rad_pos = self.peek()[2]
            rad = self.nat()
            if rad == 0:
                raise ParseError("sqrt(0) is not a valid discriminant", self.text, rad_pos)
            self.expect(")")
            return {"": QuadScalar(0, 1, -rad if neg else rad)}
        if kind == "sym" and val in "du":
            return {val: ONE}
        if kind == "sym" and val == "(":
            inner = self.element()
            self.expect(")")
            return inner
        raise ParseError("unexpected token" if kind != "end" else "unexpected end of input", self.text, pos)


def parse_element(text: str) -> WordCombination:
    """Parse ``text`` into a combination of free words ``{word: coefficient}``."""
    parser = _Parser(text)
    if parser.peek()[0] == "end":
        raise ParseError("empty expression", text, 0)
    out = parser.element()
    if parser.peek()[0] != "end":
        raise parser.error("unexpected trailing input")
    return out


def parse_scalar(text: str) -> QuadScalar:
    """Parse a scalar literal such as ``"-3/2"`` or ``"1/2+1/2*sqrt(5)"``."""
    return QuadScalar.parse(text)


def format_monomial(m: Monomial) -> str:
    i, j, k = m
    parts = []
    for base, e in (("u", i), ("(du)", j), ("d", k)):
        if e == 1:
            parts.append(base)
        elif e > 1:
            parts.append(f"{base}^{e}")
    return "*".join(parts)


def _sort_key(m: Monomial) -> tuple[int, int, int, int]:
    i, j, k = m
    return (-(i + 2 * j + k), i, j, k)


def format_element(x: Element) -> str:
    """Canonical text: higher total degree first, then ``(i, j, k)`` ascending.

    Every term carries its coefficient (``1*u*d``); irrational coefficients
    are parenthesised so the output re-parses to the same element.
    """
    pieces: list[str] = []
    for mono, c in sorted(x.items(), key=lambda mc: _sort_key(mc[0])):
        if c.is_rational():
            neg = c.a < 0
            coeff = str(abs(c))
        else:
            neg = False
            coeff = f"({c})"
        body = format_monomial(mono)
        text = f"{coeff}*{body}" if body else coeff
        if not pieces:
            pieces.append(f"-{text}" if neg else text)
        else:
            pieces.append(f" - {text}" if neg else f" + {text}")
    return "".join(pieces) if pieces else "0"

