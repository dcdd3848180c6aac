"""
Lie Expression Parser

Recursive descent over the grammar

    expr   := term (("+" | "-") term)*
    term   := [coef "*"] factor
    factor := IDENT | "[" expr "," expr "]" | "(" expr ")"
    coef   := ["-"] INT ["/" POSINT]

Whitespace is insignificant. IDENT is [A-Za-z_][A-Za-z0-9_@]*; canonical
product generator ids s{a@1,b@2} (possibly nested) are accepted as single
identifiers. A bare leading "-" before a factor is read as the coefficient -1.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping

from ..errors import LieSyntaxError, UnknownGeneratorError
from .expr import Bracket, GenLeaf, LieExpr, Scaled, Sum
from .tensor import Generator

IDENT_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_@]*")
_IDENT_TAIL = re.compile(r"[A-Za-z0-9_@]*")
_INT = re.compile(r"[0-9]+")
_PUNCTUATION = set("+-*/[],()")


@dataclass(frozen=True)
class Token:
    kind: str      # "ident", "int", "end" or the punctuation character
    text: str
    position: int


def _scan_suspension(text: str, start: int) -> int:
    """End offset of an s{...} identifier starting at `start`"""
    depth = 0
    i = start + 1
    while i < len(text):
        if text[i] == "{":
            depth += 1
        elif text[i] == "}":
            depth -= 1
            if depth == 0:
                tail = _IDENT_TAIL.match(text, i + 1)
                return tail.end()
        elif text[i].isspace():
            break
        i += 1
    raise LieSyntaxError("Unterminated '{' in identifier", start)


def tokenize(text: str) -> List[Token]:
    tokens = []
    i = 0
    while i < len(text):
        char = text[i]
        if char.isspace():
            i += 1
            continue
        if char in _PUNCTUATION:
            tokens.append(Token(char, char, i))
            i += 1
            continue
        if text.startswith("s{", i):
            end = _scan_suspension(text, i)
            tokens.append(Token("ident", text[i:end], i))
            i = end
            continue
        match = IDENT_PATTERN.match(text, i)
        if match:
            tokens.append(Token("ident", match.group(), i))
            i = match.end()
            continue
        match = _INT.match(text, i)
        if match:
            tokens.append(Token("int", match.group(), i))
            i = match.end()
            continue
        raise LieSyntaxError(f"Unexpected character '{char}'", i)
    tokens.append(Token("end", "", len(text)))
    return tokens


def is_identifier(text: str) -> bool:
    """True iff text tokenizes as exactly one identifier"""
    try:
        tokens = tokenize(text)
    except LieSyntaxError:
        return False
    return len(tokens) == 2 and tokens[0].kind == "ident" and tokens[0].text == text


class _Parser:
    def __init__(self, text: str, generators: Mapping[str, Generator]):
        self.tokens = tokenize(text)
        self.index = 0
        self.generators = generators

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "end":
            self.index += 1
        return token

    def expect(self, kind: str) -> Token:
        token = self.current
        if token.kind != kind:
            self.fail(f"Expected '{kind}'")
        return self.advance()

    def fail(self, message: str):
        token = self.current
        if token.kind == "end":
            raise LieSyntaxError(f"{message}, found end of input", token.position)
        raise LieSyntaxError(f"{message}, found '{token.text}'", token.position)

    # expr := term (("+" | "-") term)*
    def expr(self) -> LieExpr:
        terms = [self.term()]
        while self.current.kind in ("+", "-"):
            negate = self.advance().kind == "-"
            term = self.term()
            terms.append(_negate(term) if negate else term)
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    # term := [coef "*"] factor
    def term(self) -> LieExpr:
        negative = False
        if self.current.kind == "-":
            self.advance()
            negative = True
        if self.current.kind == "int":
            coefficient = Fraction(int(self.advance().text))
            if self.current.kind == "/":
                self.advance()
                denominator = self.expect("int")
                if int(denominator.text) == 0:
                    raise LieSyntaxError("Zero denominator", denominator.position)
                coefficient /= int(denominator.text)
            self.expect("*")
            factor = self.factor()
            return Scaled(-coefficient if negative else coefficient, factor)
        factor = self.factor()
        return Scaled(Fraction(-1), factor) if negative else factor

    # factor := IDENT | "[" expr "," expr "]" | "(" expr ")"
    def factor(self) -> LieExpr:
        token = self.current
        if token.kind == "ident":
            self.advance()
            generator = self.generators.get(token.text)
            if generator is None:
                raise UnknownGeneratorError(token.text)
            return GenLeaf(generator)
        if token.kind == "[":
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Bracket(left, right)
        if token.kind == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        self.fail("Expected a generator, '[' or '('")


def _negate(e: LieExpr) -> LieExpr:
    if isinstance(e, Scaled):
        return Scaled(-e.coefficient, e.expr)
    return Scaled(Fraction(-1), e)


def parse(text: str, generators: Mapping[str, Generator]) -> LieExpr:
    """
    Parse a Lie expression over a generator table

    Args:
        text: expression text
        generators: id -> Generator for the model the expression lives in

    Raises:
        LieSyntaxError: text does not match the grammar (message carries the offset)
        UnknownGeneratorError: identifier outside the table
        MixedDegreeError: summands of different degrees
    """
    parser = _Parser(text, generators)
    if parser.current.kind == "end":
        raise LieSyntaxError("Empty expression", 0)
    expression = parser.expr()
    if parser.current.kind != "end":
        parser.fail("Unexpected trailing input")
    return expression
