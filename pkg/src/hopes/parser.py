"""Concrete syntax.

    program    := item*
    item       := directive | clause
    directive  := '#pred' IDENT ':' type '.' | '#func' IDENT ':' type '.'
    type       := atype ('->' type)?          right-associative
    atype      := 'i' | 'o' | '(' type ')'
    clause     := term (':-' body)? '.'
    body       := literal (',' literal)*
    literal    := '~' aterm | term ('=' term)?
    term       := aterm aterm*                 application by juxtaposition
    aterm      := primary ('(' term (',' term)* ')')*
    primary    := IDENT | VARIDENT | '(' term ')'

Lowercase identifiers name constants and declared symbols, uppercase
identifiers name variables.  ``p(a, b)``, ``p(a)(b)`` and ``p a b`` all
denote the same curried application.  Negation takes a single aterm, so
a multi-word negated atom needs parentheses: ``~(subset S1 S2)``.
Comments run from ``%`` to end of line.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ast import App, Eq, Expression, Name, Neg, Program, RawClause, Var
from .types import IOTA, O, TypeExpr, arrow


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected
        where = f"line {line}, column {col}"
        hint = f" (expected {' or '.join(expected)})" if expected else ""
        super().__init__(f"{where}: {message}{hint}")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    col: int


_PUNCT = [
    (":-", "COLONDASH"),
    ("->", "ARROW"),
    ("(", "LP"),
    (")", "RP"),
    (",", "COMMA"),
    (".", "DOT"),
    (":", "COLON"),
    ("~", "TILDE"),
    ("=", "EQUALS"),
]


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "#":
            j = i + 1
            while j < n and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word == "#pred":
                tokens.append(Token("HASHPRED", word, line, col))
            elif word == "#func":
                tokens.append(Token("HASHFUNC", word, line, col))
            else:
                raise ParseError(f"unknown directive {word!r}", line, col)
            col += j - i
            i = j
            continue
        for text_p, kind in _PUNCT:
            if text.startswith(text_p, i):
                tokens.append(Token(kind, text_p, line, col))
                i += len(text_p)
                col += len(text_p)
                break
        else:
            if ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                word = text[i:j]
                kind = "VARIDENT" if word[0].isupper() else "IDENT"
                tokens.append(Token(kind, word, line, col))
                col += j - i
                i = j
            else:
                raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"found {tok.value!r}" if tok.kind != "EOF" else "unexpected end of input",
                tok.line,
                tok.col,
                expected=(what,),
            )
        return self.advance()

    # types -----------------------------------------------------------

    def parse_type(self) -> TypeExpr:
        left = self.parse_atomic_type()
        if self.peek().kind == "ARROW":
            self.advance()
            return arrow(left, self.parse_type())
        return left

    def parse_atomic_type(self) -> TypeExpr:
        tok = self.peek()
        if tok.kind == "IDENT" and tok.value == "i":
            self.advance()
            return IOTA
        if tok.kind == "IDENT" and tok.value == "o":
            self.advance()
            return O
        if tok.kind == "LP":
            self.advance()
            t = self.parse_type()
            self.expect("RP", "')'")
            return t
        raise ParseError(
            f"found {tok.value!r}" if tok.kind != "EOF" else "unexpected end of input",
            tok.line,
            tok.col,
            expected=("'i'", "'o'", "'('"),
        )

    # terms ------------------------------------------------------------

    def at_term_start(self) -> bool:
        return self.peek().kind in ("IDENT", "VARIDENT", "LP")

    def parse_term(self) -> Expression:
        e = self.parse_aterm()
        while self.at_term_start():
            e = App(e, self.parse_aterm())
        return e

    def parse_aterm(self) -> Expression:
        tok = self.peek()
        if tok.kind == "IDENT":
            self.advance()
            e: Expression = Name(tok.value)
        elif tok.kind == "VARIDENT":
            self.advance()
            e = Var(tok.value)
        elif tok.kind == "LP":
            self.advance()
            e = self.parse_term()
            self.expect("RP", "')'")
        else:
            raise ParseError(
                f"found {tok.value!r}" if tok.kind != "EOF" else "unexpected end of input",
                tok.line,
                tok.col,
                expected=("identifier", "variable", "'('"),
            )
        # call suffixes: p(a, b) sugars to p(a)(b)
        while self.peek().kind == "LP":
            self.advance()
            e = App(e, self.parse_term())
            while self.peek().kind == "COMMA":
                self.advance()
                e = App(e, self.parse_term())
            self.expect("RP", "',' or ')'")
        return e

    # clauses ------------------------------------------------------------

    def parse_literal(self) -> Expression:
        if self.peek().kind == "TILDE":
            self.advance()
            return Neg(self.parse_aterm())
        lhs = self.parse_term()
        if self.peek().kind == "EQUALS":
            self.advance()
            return Eq(lhs, self.parse_term())
        return lhs

    def parse_clause(self) -> RawClause:
        start = self.peek()
        head = self.parse_term()
        body: list[Expression] = []
        if self.peek().kind == "COLONDASH":
            self.advance()
            body.append(self.parse_literal())
            while self.peek().kind == "COMMA":
                self.advance()
                body.append(self.parse_literal())
        self.expect("DOT", "'.'")
        return RawClause(head, tuple(body), start.line, start.col)

    def parse_program(self) -> Program:
        prog = Program()
        while self.peek().kind != "EOF":
            tok = self.peek()
            if tok.kind in ("HASHPRED", "HASHFUNC"):
                self.advance()
                name = self.expect("IDENT", "symbol name")
                self.expect("COLON", "':'")
                t = self.parse_type()
                self.expect("DOT", "'.'")
                decls = prog.predicate_decls if tok.kind == "HASHPRED" else prog.function_decls
                if name.value in prog.predicate_decls or name.value in prog.function_decls:
                    raise ParseError(f"duplicate declaration of {name.value!r}", name.line, name.col)
                decls[name.value] = t
            else:
                prog.clauses.append(self.parse_clause())
        return prog


def parse_program(text: str) -> Program:
    """Parse a whole program; raises ParseError with line and column."""
    return _Parser(tokenize(text)).parse_program()


def parse_term(text: str) -> Expression:
    """Parse a single term (used for queries and tests)."""
    p = _Parser(tokenize(text))
    e = p.parse_term()
    p.expect("EOF", "end of input")
    return e
