"""
Recursive-descent parser for rule files.

    rulebase  := (directive | rule)*
    directive := 'threshold' DECIMAL ';'
    rule      := IDENT ':' IDENT '<-' ('implies' | 'evidence') 'weight' weight expr ('action' STRING)? ';'
    weight    := DECIMAL | '[' DECIMAL ',' DECIMAL ']' | STRING
    expr      := and ('or' and)*
    and       := unary ('and' unary)*
    unary     := 'not' unary | atom
    atom      := IDENT | STRING | '(' expr ')'

A chain like ``a or b or c`` becomes one Or node with three children; a parenthesized
sub-expression always stays its own node.
"""
from __future__ import annotations

from typing import Optional

from core.errors import RuleSyntaxError
from models.document import word_tokens
from models.rule import (
    EVIDENCE,
    IMPLIES,
    And,
    ConceptRef,
    Expr,
    Not,
    Or,
    Pos,
    Rule,
    Rulebase,
    Terminal,
)
from models.truth import Interval, LinguisticWeight, Scalar, WeightLiteral
from rules.lexer import Token, tokenize

_ATOM_START = frozenset({"identifier", "string", "'('", "'not'"})


class Parser:
    def __init__(self, tokens: list[Token]):
        if not tokens or tokens[-1].kind != "eof":
            tokens = list(tokens) + [Token("eof", "", 1, 1)]
        self.tokens = tokens
        self.i = 0

    # ----- token helpers -----

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def _is_kw(self, word: str) -> bool:
        return self.tok.kind == "keyword" and self.tok.text == word

    def _fail(self, what: str, expected: frozenset[str]) -> RuleSyntaxError:
        t = self.tok
        return RuleSyntaxError(f"expected {what}, found {t.describe()}", t.line, t.col, expected)

    def _expect(self, kind: str, label: str) -> Token:
        if self.tok.kind != kind:
            raise self._fail(label, frozenset({label}))
        return self._advance()

    def _expect_kw(self, word: str) -> Token:
        if not self._is_kw(word):
            raise self._fail(f"'{word}'", frozenset({f"'{word}'"}))
        return self._advance()

    # ----- grammar -----

    def parse_rulebase(self) -> Rulebase:
        rules: list[Rule] = []
        threshold: Optional[float] = None
        while self.tok.kind != "eof":
            if self._is_kw("threshold"):
                threshold = self._directive()
            elif self.tok.kind == "ident":
                rules.append(self._rule())
            else:
                raise self._fail("rule or 'threshold'", frozenset({"identifier", "'threshold'"}))
        return Rulebase(tuple(rules), threshold)

    def _directive(self) -> float:
        self._advance()
        t = self._expect("decimal", "decimal")
        if not 0.0 <= t.value <= 1.0:
            raise RuleSyntaxError(f"threshold {t.text} outside [0, 1]", t.line, t.col)
        self._expect("semi", "';'")
        return float(t.value)

    def _rule(self) -> Rule:
        name = self._advance()
        self._expect("colon", "':'")
        head = self._expect("ident", "concept name")
        self._expect("arrow", "'<-'")
        if self._is_kw(IMPLIES) or self._is_kw(EVIDENCE):
            kind = self._advance().text
        else:
            raise self._fail("'implies' or 'evidence'", frozenset({"'implies'", "'evidence'"}))
        self._expect_kw("weight")
        weight = self._weight()
        body = self._expr()
        action = None
        if self._is_kw("action"):
            self._advance()
            action = self._expect("string", "string").value
        self._expect("semi", "';'")
        return Rule(
            name=name.text,
            head=head.text,
            kind=kind,
            weight=weight,
            body=body,
            action=action,
            pos=Pos(name.line, name.col),
        )

    def _weight(self) -> WeightLiteral:
        t = self.tok
        if t.kind == "decimal":
            self._advance()
            return Scalar(float(t.value))
        if t.kind == "string":
            self._advance()
            return LinguisticWeight(t.value)
        if t.kind == "lbrack":
            self._advance()
            lo = self._expect("decimal", "decimal")
            self._expect("comma", "','")
            hi = self._expect("decimal", "decimal")
            self._expect("rbrack", "']'")
            return Interval(float(lo.value), float(hi.value))
        raise self._fail("weight", frozenset({"decimal", "'['", "string"}))

    def _expr(self) -> Expr:
        children = [self._and()]
        while self._is_kw("or"):
            self._advance()
            children.append(self._and())
        return children[0] if len(children) == 1 else Or(tuple(children))

    def _and(self) -> Expr:
        children = [self._unary()]
        while self._is_kw("and"):
            self._advance()
            children.append(self._unary())
        return children[0] if len(children) == 1 else And(tuple(children))

    def _unary(self) -> Expr:
        if self._is_kw("not"):
            self._advance()
            return Not(self._unary())
        return self._atom()

    def _atom(self) -> Expr:
        t = self.tok
        if t.kind == "ident":
            self._advance()
            return ConceptRef(t.text, Pos(t.line, t.col))
        if t.kind == "string":
            if not word_tokens(t.value):
                raise RuleSyntaxError("search string has no words to match", t.line, t.col)
            self._advance()
            return Terminal(t.value, Pos(t.line, t.col))
        if t.kind == "lparen":
            self._advance()
            inner = self._expr()
            self._expect("rparen", "')'")
            return inner
        raise self._fail("atom", _ATOM_START)


def parse(tokens: list[Token]) -> Rulebase:
    """Parse a token stream into an unvalidated Rulebase."""
    return Parser(tokens).parse_rulebase()


def parse_rules(source: str) -> Rulebase:
    return parse(tokenize(source))
