"""Concrete syntax: lexer, parser and name resolution for ``.hott`` files.

The grammar is ASCII-only.  Line comments run from ``--`` to end of line.
Eliminators are keywords taking the motive first as an ordinary function
expression; resolution wraps that function into the kernel's positional
binder form.  Numerals desugar to iterated ``succ zero``; a bare ``succ``
in argument position desugars to ``\\(n : Nat). succ n``.

``_`` is accepted by the parser only so that printed terms with
unreconstructible binders stay readable; resolving it is an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .terms import (
    EMPTY,
    NAT,
    REFL,
    STAR,
    UNIT,
    ZERO,
    App,
    Const,
    Coprod,
    Id,
    IndCoprod,
    IndEmpty,
    IndEq,
    IndNat,
    IndSigma,
    IndTrunc,
    IndUnit,
    IndW,
    Inl,
    Inr,
    Lambda,
    Pair,
    Pi,
    Sigma,
    Succ,
    Term,
    Tree,
    Trunc,
    TruncIn,
    Universe,
    Var,
    W,
    numeral,
    shift,
)

Span = tuple[int, int]


class LexError(Exception):
    def __init__(self, message: str, span: Span):
        super().__init__(f"{span[0]}:{span[1]}: {message}")
        self.span = span


class ParseError(Exception):
    def __init__(self, message: str, span: Span, expected: Optional[set[str]] = None):
        detail = f" (expected one of: {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{span[0]}:{span[1]}: {message}{detail}")
        self.span = span
        self.expected = expected or set()


class ResolveError(Exception):
    def __init__(self, message: str, span: Span):
        super().__init__(f"{span[0]}:{span[1]}: {message}")
        self.span = span


KEYWORDS = {
    "def", "postulate", "in",
    "Sig", "Type", "Nat", "Unit", "Empty", "Id", "W", "Trunc",
    "pair", "inl", "inr", "refl", "zero", "succ", "star", "tree", "eta",
    "ind-nat", "ind-sigma", "ind-sum", "ind-unit", "ind-empty",
    "ind-eq", "ind-w", "ind-trunc",
}

DIRECTIVES = {"#check", "#eval", "#assert-eq", "#assert-neq", "#fail"}

PUNCT = [":=", "==", "->", "(", ")", ":", ".", ",", "\\", "+", "="]


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "nat", or the literal keyword/punctuation
    text: str
    span: Span


def _ident_char(c: str) -> bool:
    return c.isalnum() or c in "_'"


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        span = (line, col)
        if c == "#":
            j = i + 1
            while j < n and (_ident_char(text[j]) or (text[j] == "-" and j + 1 < n and _ident_char(text[j + 1]))):
                j += 1
            word = text[i:j]
            if word not in DIRECTIVES:
                raise LexError(f"unknown directive {word!r}", span)
            tokens.append(Token(word, word, span))
            col += j - i
            i = j
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("nat", text[i:j], span))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (_ident_char(text[j]) or (text[j] == "-" and j + 1 < n and _ident_char(text[j + 1]))):
                j += 1
            word = text[i:j]
            kind = word if word in KEYWORDS else ("hole" if word == "_" else "ident")
            tokens.append(Token(kind, word, span))
            col += j - i
            i = j
            continue
        for p in PUNCT:
            if text.startswith(p, i):
                tokens.append(Token(p, p, span))
                i += len(p)
                col += len(p)
                break
        else:
            raise LexError(f"unexpected character {c!r}", span)
    tokens.append(Token("eof", "", (line, col)))
    return tokens


# ---------------------------------------------------------------------------
# Surface syntax trees


@dataclass(frozen=True)
class SExpr:
    pass


@dataclass(frozen=True)
class SName(SExpr):
    name: str
    span: Span = (0, 0)


@dataclass(frozen=True)
class SNum(SExpr):
    value: int
    span: Span = (0, 0)


@dataclass(frozen=True)
class SType(SExpr):
    level: int
    span: Span = (0, 0)


@dataclass(frozen=True)
class SConstant(SExpr):
    which: str  # Nat | Unit | Empty | zero | star | refl
    span: Span = (0, 0)


@dataclass(frozen=True)
class SHole(SExpr):
    span: Span = (0, 0)


@dataclass(frozen=True)
class SLam(SExpr):
    var: str
    domain: SExpr
    body: SExpr
    span: Span = (0, 0)


@dataclass(frozen=True)
class SPi(SExpr):
    var: Optional[str]  # None for the arrow sugar
    domain: SExpr
    codomain: SExpr
    span: Span = (0, 0)


@dataclass(frozen=True)
class SSig(SExpr):
    var: str
    first: SExpr
    second: SExpr
    span: Span = (0, 0)


@dataclass(frozen=True)
class SApp(SExpr):
    fn: SExpr
    arg: SExpr
    span: Span = (0, 0)


@dataclass(frozen=True)
class SForm(SExpr):
    """A fully applied keyword former: succ, pair, inl, inr, tree, eta,
    Trunc, W, Id, coproduct ``+`` (as "sum"), or an eliminator."""

    head: str
    args: tuple[SExpr, ...]
    span: Span = (0, 0)


@dataclass(frozen=True)
class SurfaceItem:
    span: Span


@dataclass(frozen=True)
class DefItem(SurfaceItem):
    name: str
    type: SExpr
    body: SExpr


@dataclass(frozen=True)
class PostulateItem(SurfaceItem):
    name: str
    type: SExpr


@dataclass(frozen=True)
class PragmaCheck(SurfaceItem):
    expr: SExpr
    type: SExpr


@dataclass(frozen=True)
class PragmaEval(SurfaceItem):
    expr: SExpr


@dataclass(frozen=True)
class PragmaAssertEq(SurfaceItem):
    lhs: SExpr
    rhs: SExpr
    type: SExpr


@dataclass(frozen=True)
class PragmaAssertNeq(SurfaceItem):
    lhs: SExpr
    rhs: SExpr
    type: SExpr


@dataclass(frozen=True)
class PragmaFail(SurfaceItem):
    item: SurfaceItem


@dataclass(frozen=True)
class SurfaceModule:
    items: tuple[SurfaceItem, ...]
    path: str = "<input>"


ELIM_ARITY = {
    "ind-nat": 4,
    "ind-sigma": 3,
    "ind-unit": 3,
    "ind-empty": 2,
    "ind-sum": 4,
    "ind-eq": 5,
    "ind-w": 3,
    "ind-trunc": 4,
}

_FORM_ARITY = {
    "succ": 1, "inl": 1, "inr": 1, "eta": 1, "Trunc": 1,
    "pair": 2, "tree": 2, "W": 2, "Id": 3,
    **ELIM_ARITY,
}


class Parser:
    def __init__(self, tokens: Sequence[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"unexpected {tok.text!r}", tok.span, {kind})
        return self.next()

    # -- items --------------------------------------------------------------

    def parse_module(self, path: str = "<input>") -> SurfaceModule:
        items = []
        while self.peek().kind != "eof":
            items.append(self.parse_item())
        return SurfaceModule(tuple(items), path)

    def parse_item(self) -> SurfaceItem:
        tok = self.peek()
        if tok.kind == "def":
            self.next()
            name = self.expect("ident")
            self.expect(":")
            ty = self.parse_expr()
            self.expect(":=")
            body = self.parse_expr()
            return DefItem(tok.span, name.text, ty, body)
        if tok.kind == "postulate":
            self.next()
            name = self.expect("ident")
            self.expect(":")
            ty = self.parse_expr()
            return PostulateItem(tok.span, name.text, ty)
        if tok.kind == "#check":
            self.next()
            e = self.parse_expr()
            self.expect(":")
            ty = self.parse_expr()
            return PragmaCheck(tok.span, e, ty)
        if tok.kind == "#eval":
            self.next()
            return PragmaEval(tok.span, self.parse_expr())
        if tok.kind in ("#assert-eq", "#assert-neq"):
            self.next()
            lhs = self.parse_expr()
            self.expect("==")
            rhs = self.parse_expr()
            self.expect(":")
            ty = self.parse_expr()
            cls = PragmaAssertEq if tok.kind == "#assert-eq" else PragmaAssertNeq
            return cls(tok.span, lhs, rhs, ty)
        if tok.kind == "#fail":
            self.next()
            return PragmaFail(tok.span, self.parse_item())
        raise ParseError(
            f"unexpected {tok.text!r}", tok.span,
            {"def", "postulate", "#check", "#eval", "#assert-eq", "#assert-neq", "#fail"},
        )

    # -- expressions ----------------------------------------------------------

    def parse_expr(self) -> SExpr:
        tok = self.peek()
        if tok.kind == "\\":
            self.next()
            self.expect("(")
            var = self.expect("ident")
            self.expect(":")
            dom = self.parse_expr()
            self.expect(")")
            self.expect(".")
            body = self.parse_expr()
            return SLam(var.text, dom, body, tok.span)
        if tok.kind == "Sig":
            self.next()
            self.expect("(")
            var = self.expect("ident")
            self.expect(":")
            first = self.parse_expr()
            self.expect(")")
            self.expect(",")
            second = self.parse_expr()
            return SSig(var.text, first, second, tok.span)
        if tok.kind == "(" and self.peek(1).kind == "ident" and self.peek(2).kind == ":":
            self.next()
            var = self.expect("ident")
            self.expect(":")
            dom = self.parse_expr()
            self.expect(")")
            self.expect("->")
            cod = self.parse_expr()
            return SPi(var.text, dom, cod, tok.span)
        return self.parse_arrow()

    def parse_arrow(self) -> SExpr:
        left = self.parse_plus()
        if self.peek().kind == "->":
            span = self.next().span
            right = self.parse_expr()
            return SPi(None, left, right, span)
        return left

    def parse_plus(self) -> SExpr:
        left = self.parse_eq()
        if self.peek().kind == "+":
            span = self.next().span
            right = self.parse_plus()
            return SForm("sum", (left, right), span)
        return left

    def parse_eq(self) -> SExpr:
        left = self.parse_app()
        if self.peek().kind == "=":
            span = self.next().span
            right = self.parse_app()
            self.expect("in")
            ty = self.parse_app()
            return SForm("Id", (ty, left, right), span)
        return left

    _ATOM_STARTERS = {
        "ident", "nat", "hole", "(", "zero", "star", "refl", "succ",
        "Nat", "Unit", "Empty", "Type",
    }

    def parse_app(self) -> SExpr:
        head = self.parse_unit()
        while self.peek().kind in self._ATOM_STARTERS:
            arg = self.parse_atom()
            head = SApp(head, arg, self.peek().span)
        return head

    def parse_unit(self) -> SExpr:
        tok = self.peek()
        if tok.kind in _FORM_ARITY and not (tok.kind == "succ" and self.peek(1).kind not in self._ATOM_STARTERS):
            self.next()
            arity = _FORM_ARITY[tok.kind]
            args = tuple(self.parse_atom() for _ in range(arity))
            return SForm(tok.kind, args, tok.span)
        return self.parse_atom()

    def parse_atom(self) -> SExpr:
        tok = self.peek()
        if tok.kind == "ident":
            self.next()
            return SName(tok.text, tok.span)
        if tok.kind == "nat":
            self.next()
            return SNum(int(tok.text), tok.span)
        if tok.kind == "hole":
            self.next()
            return SHole(tok.span)
        if tok.kind in ("Nat", "Unit", "Empty", "zero", "star", "refl"):
            self.next()
            return SConstant(tok.kind, tok.span)
        if tok.kind == "succ":
            self.next()
            return SConstant("succ", tok.span)  # bare successor function
        if tok.kind == "Type":
            self.next()
            lvl = self.expect("nat")
            return SType(int(lvl.text), tok.span)
        if tok.kind == "(":
            self.next()
            e = self.parse_expr()
            self.expect(")")
            return e
        raise ParseError(f"unexpected {tok.text!r}", tok.span, self._ATOM_STARTERS)


def parse(text: str, path: str = "<input>") -> SurfaceModule:
    return Parser(tokenize(text)).parse_module(path)


def parse_expression(text: str) -> SExpr:
    parser = Parser(tokenize(text))
    e = parser.parse_expr()
    parser.expect("eof")
    return e


# ---------------------------------------------------------------------------
# Name resolution


def _motive1(fn: Term) -> Term:
    return App(shift(fn, 0, 1), Var(0))


def _motive2(fn: Term) -> Term:
    return App(App(shift(fn, 0, 2), Var(1)), Var(0))


def resolve_expr(e: SExpr, env: list[str], names) -> Term:
    """Turn a surface expression into a core term.

    ``env`` lists binder names outermost-first; ``names`` answers whether a
    global constant exists (callable or container).  Binders shadow
    globals, innermost wins.
    """
    lookup = names if callable(names) else (lambda n: n in names)

    def go(e: SExpr, env: list[str]) -> Term:
        if isinstance(e, SName):
            for i, name in enumerate(reversed(env)):
                if name == e.name:
                    return Var(i)
            if lookup(e.name):
                return Const(e.name)
            raise ResolveError(f"unbound identifier {e.name!r}", e.span)
        if isinstance(e, SNum):
            return numeral(e.value)
        if isinstance(e, SType):
            return Universe(e.level)
        if isinstance(e, SHole):
            raise ResolveError("'_' is a printing placeholder, not an expression", e.span)
        if isinstance(e, SConstant):
            simple = {"Nat": NAT, "Unit": UNIT, "Empty": EMPTY,
                      "zero": ZERO, "star": STAR, "refl": REFL}
            if e.which in simple:
                return simple[e.which]
            if e.which == "succ":
                return Lambda(NAT, Succ(Var(0)))
            raise ResolveError(f"unknown constant {e.which!r}", e.span)
        if isinstance(e, SLam):
            dom = go(e.domain, env)
            return Lambda(dom, go(e.body, env + [e.var]))
        if isinstance(e, SPi):
            dom = go(e.domain, env)
            if e.var is None:
                return Pi(dom, shift(go(e.codomain, env), 0, 1))
            return Pi(dom, go(e.codomain, env + [e.var]))
        if isinstance(e, SSig):
            first = go(e.first, env)
            return Sigma(first, go(e.second, env + [e.var]))
        if isinstance(e, SApp):
            return App(go(e.fn, env), go(e.arg, env))
        if isinstance(e, SForm):
            args = [go(a, env) for a in e.args]
            head = e.head
            if head == "succ":
                return Succ(args[0])
            if head == "pair":
                return Pair(args[0], args[1])
            if head == "inl":
                return Inl(args[0])
            if head == "inr":
                return Inr(args[0])
            if head == "eta":
                return TruncIn(args[0])
            if head == "tree":
                return Tree(args[0], args[1])
            if head == "Trunc":
                return Trunc(args[0])
            if head == "sum":
                return Coprod(args[0], args[1])
            if head == "W":
                return W(args[0], _motive1(args[1]))
            if head == "Id":
                return Id(args[0], args[1], args[2])
            if head == "ind-nat":
                return IndNat(_motive1(args[0]), args[1], args[2], args[3])
            if head == "ind-sigma":
                return IndSigma(_motive1(args[0]), args[1], args[2])
            if head == "ind-unit":
                return IndUnit(_motive1(args[0]), args[1], args[2])
            if head == "ind-empty":
                return IndEmpty(_motive1(args[0]), args[1])
            if head == "ind-sum":
                return IndCoprod(_motive1(args[0]), args[1], args[2], args[3])
            if head == "ind-eq":
                return IndEq(args[1], _motive2(args[0]), args[2], args[3], args[4])
            if head == "ind-w":
                return IndW(_motive1(args[0]), args[1], args[2])
            if head == "ind-trunc":
                return IndTrunc(_motive1(args[0]), args[1], args[2], args[3])
            raise ResolveError(f"unknown form {head!r}", e.span)
        raise ResolveError(f"unresolvable expression {e!r}", (0, 0))

    return go(e, env)


# ---------------------------------------------------------------------------
# Module resolution: surface items become declarations and directives


@dataclass(frozen=True)
class RDef:
    name: str
    type: Term
    body: Term
    span: Span


@dataclass(frozen=True)
class RPostulate:
    name: str
    type: Term
    span: Span


@dataclass(frozen=True)
class RCheck:
    term: Term
    type: Term
    span: Span


@dataclass(frozen=True)
class REval:
    term: Term
    span: Span


@dataclass(frozen=True)
class RAssert:
    equal: bool  # assert-eq when true, assert-neq when false
    lhs: Term
    rhs: Term
    type: Term
    span: Span


@dataclass(frozen=True)
class RFail:
    item: "SurfaceItem"
    span: Span


def resolve(module: SurfaceModule, sig) -> "Iterator":
    """Lower a module against a signature, yielding one record per item.

    Identifiers resolve to indices (innermost binder first) or constants
    from ``sig`` and from the module's earlier items.  Items wrapped in
    ``#fail`` stay unresolved: their rejection, which may be a resolution
    error, is observed by whoever executes them.
    """
    names = {d.name for d in sig.declarations}

    def expr(e: SExpr) -> Term:
        return resolve_expr(e, [], names)

    for item in module.items:
        if isinstance(item, DefItem):
            yield RDef(item.name, expr(item.type), expr(item.body), item.span)
            names.add(item.name)
        elif isinstance(item, PostulateItem):
            yield RPostulate(item.name, expr(item.type), item.span)
            names.add(item.name)
        elif isinstance(item, PragmaCheck):
            yield RCheck(expr(item.expr), expr(item.type), item.span)
        elif isinstance(item, PragmaEval):
            yield REval(expr(item.expr), item.span)
        elif isinstance(item, PragmaAssertEq):
            yield RAssert(True, expr(item.lhs), expr(item.rhs), expr(item.type), item.span)
        elif isinstance(item, PragmaAssertNeq):
            yield RAssert(False, expr(item.lhs), expr(item.rhs), expr(item.type), item.span)
        elif isinstance(item, PragmaFail):
            yield RFail(item.item, item.span)
        else:
            raise ResolveError(f"unknown item {item!r}", item.span)
