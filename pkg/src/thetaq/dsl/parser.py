"""Recursive-descent parser for ``.qid`` identity files.

Grammar::

    file     = decl*
    decl     = "identity" STRING "{" "vars" ":" [idlist] ";"
               ["where" ":" (IDENT "=" expr ";")*]
               "lhs" ":" expr ";" "rhs" ":" expr ";"
               ["tags" ":" idlist ";"] "}"
    expr     = term (("+" | "-") term)*
    term     = unary (("*" | "/") unary)*
    unary    = ["-"] postfix
    postfix  = atom ["^" ["-"] INT]
    atom     = call | IDENT | "pi" | "tau" | RATIONAL | INT | "(" expr ")"
    call     = FUNC ["[" INT "]"] "(" [args] ")"
    tauexpr  = "tau" | "2" "*" "tau" | "tau" "/" "2" | "-" "1" "/" "tau"

``I`` is the imaginary unit.  theta calls take ``(expr [, tauexpr])``,
thetanull calls take ``([tauexpr])``, ``piq`` takes no argument and
``poch`` takes two.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Set, Tuple

from ..errors import ParseError
from . import ast as A
from .lexer import SourceSpan, Tok, Token, tokenize

_ONE_ARG = A.Q_FUNCS + A.CLASSICAL_FUNCS + ("qpow",)
_RESERVED = set(A.FUNC_NAMES) | {A.IMAG_UNIT}


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    # token helpers ----------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k=1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind is not Tok.EOF:
            self.pos += 1
        return t

    def at(self, *kinds) -> bool:
        return self.tok.kind in kinds

    def expect(self, *kinds) -> Token:
        if self.tok.kind not in kinds:
            raise ParseError(self.tok.span, {k.value for k in kinds})
        return self.advance()

    # declarations -----------------------------------------------------------
    def parse_file(self) -> List[A.IdentityDecl]:
        decls = []
        seen = set()
        while not self.at(Tok.EOF):
            d = self.parse_decl()
            if d.name in seen:
                raise ParseError(d.span, set(), f"duplicate identity name {d.name!r}")
            seen.add(d.name)
            decls.append(d)
        return decls

    def _idlist(self, allow_empty: bool) -> Tuple[Tuple[str, SourceSpan], ...]:
        names = []
        if allow_empty and self.at(Tok.SEMI):
            return ()
        names.append(self.expect(Tok.IDENT))
        while self.at(Tok.COMMA):
            self.advance()
            names.append(self.expect(Tok.IDENT))
        return tuple((t.value, t.span) for t in names)

    def parse_decl(self) -> A.IdentityDecl:
        start = self.expect(Tok.IDENTITY)
        name = self.expect(Tok.STRING).value
        self.expect(Tok.LBRACE)
        self.expect(Tok.VARS)
        self.expect(Tok.COLON)
        vars_ = self._idlist(allow_empty=True)
        self.expect(Tok.SEMI)
        defined: Set[str] = set()
        for v, span in vars_:
            self._define(v, span, defined)
        where = []
        if self.at(Tok.WHERE):
            self.advance()
            self.expect(Tok.COLON)
            while self.at(Tok.IDENT):
                t = self.advance()
                self.expect(Tok.EQUALS)
                e = self.parse_expr()
                self.expect(Tok.SEMI)
                self._check_names(e, defined)
                self._define(t.value, t.span, defined)
                where.append((t.value, e))
        self.expect(Tok.LHS)
        self.expect(Tok.COLON)
        lhs = self.parse_expr()
        self.expect(Tok.SEMI)
        self.expect(Tok.RHS)
        self.expect(Tok.COLON)
        rhs = self.parse_expr()
        self.expect(Tok.SEMI)
        tags: Tuple = ()
        if self.at(Tok.TAGS):
            self.advance()
            self.expect(Tok.COLON)
            tags = self._idlist(allow_empty=False)
            self.expect(Tok.SEMI)
        self.expect(Tok.RBRACE)
        self._check_names(lhs, defined)
        self._check_names(rhs, defined)
        return A.IdentityDecl(
            name,
            tuple(v for v, _ in vars_),
            tuple(where),
            lhs,
            rhs,
            tuple(t for t, _ in tags),
            start.span,
        )

    @staticmethod
    def _define(name, span, defined):
        if name in _RESERVED:
            raise ParseError(span, set(), f"{name!r} is reserved and cannot name a variable")
        if name in defined:
            raise ParseError(span, set(), f"variable {name!r} defined twice")
        defined.add(name)

    @staticmethod
    def _check_names(e: A.Expr, defined):
        for node in A.walk(e):
            if isinstance(node, A.Var) and node.name not in defined:
                raise ParseError(node.span, set(), f"undeclared variable {node.name!r}")

    # expressions ------------------------------------------------------------
    def parse_expr(self) -> A.Expr:
        left = self.parse_term()
        while self.at(Tok.PLUS, Tok.MINUS):
            op = self.advance()
            right = self.parse_term()
            left = (A.Add if op.kind is Tok.PLUS else A.Sub)(left, right, op.span)
        return left

    def parse_term(self) -> A.Expr:
        left = self.parse_unary()
        while self.at(Tok.STAR, Tok.SLASH):
            op = self.advance()
            right = self.parse_unary()
            left = (A.Mul if op.kind is Tok.STAR else A.Div)(left, right, op.span)
        return left

    def parse_unary(self) -> A.Expr:
        if self.at(Tok.MINUS):
            op = self.advance()
            return A.Neg(self.parse_postfix(), op.span)
        return self.parse_postfix()

    def parse_postfix(self) -> A.Expr:
        base = self.parse_atom()
        if self.at(Tok.CARET):
            op = self.advance()
            negative = False
            if self.at(Tok.MINUS):
                self.advance()
                negative = True
            t = self.expect(Tok.INT)
            k = -t.value if negative else t.value
            if k == 0:
                raise ParseError(t.span, set(), "exponent must be a nonzero integer")
            return A.Pow(base, k, op.span)
        return base

    def parse_atom(self) -> A.Expr:
        t = self.tok
        if t.kind is Tok.IDENT:
            if t.value in A.FUNC_NAMES:
                return self.parse_call()
            self.advance()
            if t.value == A.IMAG_UNIT:
                return A.ImagUnit(t.span)
            return A.Var(t.value, t.span)
        if t.kind is Tok.PI:
            self.advance()
            return A.PiConst(t.span)
        if t.kind is Tok.TAU:
            self.advance()
            return A.TauConst(t.span)
        if t.kind in (Tok.INT, Tok.RATIONAL):
            self.advance()
            return A.Num(Fraction(t.value), t.span)
        if t.kind is Tok.LPAREN:
            self.advance()
            e = self.parse_expr()
            self.expect(Tok.RPAREN)
            return e
        raise ParseError(
            t.span,
            {Tok.IDENT.value, Tok.PI.value, Tok.TAU.value, Tok.INT.value, Tok.RATIONAL.value, Tok.LPAREN.value},
        )

    def parse_call(self) -> A.Call:
        name_tok = self.advance()
        func = name_tok.value
        base = 1
        if self.at(Tok.LBRACKET):
            if func not in A.BASE_FUNCS:
                raise ParseError(self.tok.span, {Tok.LPAREN.value}, f"{func} takes no [base] exponent")
            self.advance()
            bt = self.expect(Tok.INT)
            if bt.value < 1:
                raise ParseError(bt.span, set(), "base exponent must be >= 1")
            base = bt.value
            self.expect(Tok.RBRACKET)
        self.expect(Tok.LPAREN)
        args: Tuple[A.Expr, ...] = ()
        tau_scale: Optional[str] = None
        if func in _ONE_ARG:
            args = (self.parse_expr(),)
        elif func in A.THETA_FUNCS:
            args = (self.parse_expr(),)
            if self.at(Tok.COMMA):
                self.advance()
                tau_scale = self.parse_tauexpr()
        elif func in A.NULL_FUNCS:
            if not self.at(Tok.RPAREN):
                tau_scale = self.parse_tauexpr()
        elif func == "poch":
            a = self.parse_expr()
            self.expect(Tok.COMMA)
            args = (a, self.parse_expr())
        self.expect(Tok.RPAREN)
        return A.Call(func, args, base, tau_scale, name_tok.span)

    def parse_tauexpr(self) -> str:
        t = self.tok
        expected = {"'tau'", "'2*tau'", "'tau/2'", "'-1/tau'"}
        if t.kind is Tok.TAU:
            self.advance()
            if self.at(Tok.SLASH):
                self.advance()
                two = self.expect(Tok.INT)
                if two.value != 2:
                    raise ParseError(two.span, {"2"})
                return "1/2"
            return "1"
        if t.kind is Tok.INT and t.value == 2:
            self.advance()
            self.expect(Tok.STAR)
            self.expect(Tok.TAU)
            return "2"
        if t.kind is Tok.MINUS:
            self.advance()
            one = self.expect(Tok.INT)
            if one.value != 1:
                raise ParseError(one.span, {"1"})
            self.expect(Tok.SLASH)
            self.expect(Tok.TAU)
            return "S"
        raise ParseError(t.span, expected)


def parse(text: str) -> List[A.IdentityDecl]:
    return Parser(text).parse_file()


def parse_expr(text: str) -> A.Expr:
    p = Parser(text)
    e = p.parse_expr()
    p.expect(Tok.EOF)
    return e
