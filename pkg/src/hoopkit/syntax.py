"""Formulas of the logical language and terms of the algebra signature.

Two little ASTs live here.  Formulas are built from variables, the
constant ``1``, conjunction ``*`` and implication ``->``; negation
``A^`` and the constant ``0`` are sugar for ``A -> 1`` and ``1 -> 1``
and never appear as nodes of their own.  Algebra terms are built from
variables, the constants ``0`` and ``1``, addition ``+`` and
implication ``->``; here ``0`` is a genuine constant while ``t^`` is
sugar for ``t -> 1``.

Values are immutable and compared structurally, so they can be shared
freely and used as dictionary keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class ParseError(ValueError):
    """Syntax error with a character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# Formula AST


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Tensor:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Limp:
    lhs: "Formula"
    rhs: "Formula"


Formula = Var | One | Tensor | Limp

ONE = One()
#: The constant 0, i.e. 1 -> 1.
ZERO = Limp(ONE, ONE)


def neg(a: Formula) -> Formula:
    """Negation sugar: ``a^`` is ``a -> 1``."""
    return Limp(a, ONE)


def formula_vars(f: Formula) -> list[str]:
    """Variable names in order of first appearance."""
    out: list[str] = []
    seen: set[str] = set()

    def walk(g: Formula) -> None:
        match g:
            case Var(name):
                if name not in seen:
                    seen.add(name)
                    out.append(name)
            case Tensor(a, b) | Limp(a, b):
                walk(a)
                walk(b)
            case One():
                pass

    walk(f)
    return out


def substitute(f: Formula, mapping: dict[str, Formula]) -> Formula:
    """Simultaneous replacement of variables (there are no binders)."""
    match f:
        case Var(name):
            return mapping.get(name, f)
        case One():
            return f
        case Tensor(a, b):
            return Tensor(substitute(a, mapping), substitute(b, mapping))
        case Limp(a, b):
            return Limp(substitute(a, mapping), substitute(b, mapping))
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Algebra term AST


@dataclass(frozen=True)
class TVar:
    name: str


@dataclass(frozen=True)
class TZero:
    pass


@dataclass(frozen=True)
class TOne:
    pass


@dataclass(frozen=True)
class TPlus:
    lhs: "AlgTerm"
    rhs: "AlgTerm"


@dataclass(frozen=True)
class TImp:
    lhs: "AlgTerm"
    rhs: "AlgTerm"


AlgTerm = TVar | TZero | TOne | TPlus | TImp

T_ZERO = TZero()
T_ONE = TOne()


def tnot(t: AlgTerm) -> AlgTerm:
    """Negation sugar: ``t^`` is ``t -> 1``.  Bounded signature only."""
    return TImp(t, T_ONE)


def tdelta(t: AlgTerm) -> AlgTerm:
    """Double negation ``t^^``."""
    return tnot(tnot(t))


def term_vars(t: AlgTerm) -> list[str]:
    """Variable names in order of first appearance."""
    out: list[str] = []
    seen: set[str] = set()

    def walk(s: AlgTerm) -> None:
        match s:
            case TVar(name):
                if name not in seen:
                    seen.add(name)
                    out.append(name)
            case TPlus(a, b) | TImp(a, b):
                walk(a)
                walk(b)
            case _:
                pass

    walk(t)
    return out


def term_has_one(t: AlgTerm) -> bool:
    match t:
        case TOne():
            return True
        case TPlus(a, b) | TImp(a, b):
            return term_has_one(a) or term_has_one(b)
        case _:
            return False


def subst_term(t: AlgTerm, mapping: dict[str, AlgTerm]) -> AlgTerm:
    match t:
        case TVar(name):
            return mapping.get(name, t)
        case TPlus(a, b):
            return TPlus(subst_term(a, mapping), subst_term(b, mapping))
        case TImp(a, b):
            return TImp(subst_term(a, mapping), subst_term(b, mapping))
        case _:
            return t


def replace_term(t: AlgTerm, old: AlgTerm, new: AlgTerm) -> AlgTerm:
    """Replace every occurrence of the subterm ``old`` by ``new``."""
    if t == old:
        return new
    match t:
        case TPlus(a, b):
            return TPlus(replace_term(a, old, new), replace_term(b, old, new))
        case TImp(a, b):
            return TImp(replace_term(a, old, new), replace_term(b, old, new))
        case _:
            return t


Position = tuple[int, ...]


def subterm_at(t: AlgTerm, pos: Position) -> AlgTerm:
    """Subterm at a root-to-leaf child-index path."""
    for i in pos:
        match t:
            case TPlus(a, b) | TImp(a, b):
                if i == 0:
                    t = a
                elif i == 1:
                    t = b
                else:
                    raise IndexError(f"bad child index {i} at {t!r}")
            case _:
                raise IndexError(f"no child {i} below a leaf: {t!r}")
    return t


def replace_at(t: AlgTerm, pos: Position, new: AlgTerm) -> AlgTerm:
    if not pos:
        return new
    head, rest = pos[0], pos[1:]
    match t:
        case TPlus(a, b):
            if head == 0:
                return TPlus(replace_at(a, rest, new), b)
            if head == 1:
                return TPlus(a, replace_at(b, rest, new))
        case TImp(a, b):
            if head == 0:
                return TImp(replace_at(a, rest, new), b)
            if head == 1:
                return TImp(a, replace_at(b, rest, new))
    raise IndexError(f"bad position {pos} in {t!r}")


@dataclass(frozen=True)
class Identity:
    """An ordered pair of algebra terms, read as the equation lhs = rhs.

    ``bounded`` selects the signature: the constant 1 may only occur in
    bounded-signature identities.  The convenience form ``t = 0`` is the
    identity ``(t, TZero())``.
    """

    lhs: AlgTerm
    rhs: AlgTerm
    bounded: bool = True

    def __post_init__(self):
        if not self.bounded and (term_has_one(self.lhs) or term_has_one(self.rhs)):
            raise ValueError("constant 1 is not part of the unbounded signature")

    @property
    def vars(self) -> list[str]:
        out = term_vars(self.lhs)
        seen = set(out)
        for v in term_vars(self.rhs):
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out


def formula_to_term(f: Formula) -> AlgTerm:
    """Structure-preserving translation of a formula into a bounded term.

    Conjunction becomes addition and implication stays implication; the
    constant 1 maps to the constant 1 (so the formula 0 becomes the term
    ``1 -> 1``).  Variables are renamed to x1, x2, ... in order of first
    appearance.
    """
    names = {v: TVar(f"x{i + 1}") for i, v in enumerate(formula_vars(f))}

    def walk(g: Formula) -> AlgTerm:
        match g:
            case Var(name):
                return names[name]
            case One():
                return T_ONE
            case Tensor(a, b):
                return TPlus(walk(a), walk(b))
            case Limp(a, b):
                return TImp(walk(a), walk(b))
        raise TypeError(f"not a formula: {g!r}")

    return walk(f)


# ---------------------------------------------------------------------------
# Tokenizer shared by the formula and term grammars

_PUNCT = {"->": "ARROW", "*": "STAR", "+": "PLUS", "^": "CARET",
          "(": "LPAREN", ")": "RPAREN", "=": "EQUALS", "0": "ZERO", "1": "ONE"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if text.startswith("->", i):
            toks.append(("ARROW", "->", i))
            i += 2
            continue
        if c in "*+^()=":
            toks.append((_PUNCT[c], c, i))
            i += 1
            continue
        if c in "01":
            toks.append((_PUNCT[c], c, i))
            i += 1
            continue
        if c.isalpha() or c == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("IDENT", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unknown token {c!r}", i)
    toks.append(("EOF", "", n))
    return toks


class _Parser:
    """Recursive descent over the shared grammar.

    imp     := plus ("->" imp)?
    plus    := postfix (OP postfix)*        OP is "*" for formulas, "+" for terms
    postfix := atom "^"*
    atom    := ident | "1" | "0" | "(" imp ")"
    """

    def __init__(self, text: str, mode: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.mode = mode  # "formula" or "term"

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str):
        tok = self.toks[self.i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def imp(self):
        left = self.plus()
        if self.peek()[0] == "ARROW":
            self.take("ARROW")
            right = self.imp()
            return Limp(left, right) if self.mode == "formula" else TImp(left, right)
        return left

    def plus(self):
        op = "STAR" if self.mode == "formula" else "PLUS"
        node = self.postfix()
        while self.peek()[0] == op:
            self.take(op)
            rhs = self.postfix()
            node = Tensor(node, rhs) if self.mode == "formula" else TPlus(node, rhs)
        return node

    def postfix(self):
        node = self.atom()
        while self.peek()[0] == "CARET":
            self.take("CARET")
            node = neg(node) if self.mode == "formula" else tnot(node)
        return node

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "IDENT":
            self.take("IDENT")
            return Var(value) if self.mode == "formula" else TVar(value)
        if kind == "ONE":
            self.take("ONE")
            return ONE if self.mode == "formula" else T_ONE
        if kind == "ZERO":
            self.take("ZERO")
            return ZERO if self.mode == "formula" else T_ZERO
        if kind == "LPAREN":
            self.take("LPAREN")
            node = self.imp()
            self.take("RPAREN")
            return node
        raise ParseError(f"expected a formula, found {value or 'end of input'!r}", pos)


def parse_formula(text: str) -> Formula:
    p = _Parser(text, "formula")
    node = p.imp()
    p.take("EOF")
    return node


def parse_term(text: str, bounded: bool = True) -> AlgTerm:
    p = _Parser(text, "term")
    node = p.imp()
    p.take("EOF")
    if not bounded and term_has_one(node):
        raise ParseError("constant 1 is not part of the unbounded signature", 0)
    return node


def parse_identity(text: str, bounded: bool = True) -> Identity:
    """Parse ``lhs = rhs``; a bare term ``t`` is read as ``t = 0``."""
    p = _Parser(text, "term")
    lhs = p.imp()
    if p.peek()[0] == "EQUALS":
        p.take("EQUALS")
        rhs = p.imp()
    else:
        rhs = T_ZERO
    p.take("EOF")
    return Identity(lhs, rhs, bounded)


# ---------------------------------------------------------------------------
# Printing (minimal parentheses; parse . print is the identity)

# Natural grammar levels, tightest last.
_IMP, _CHAIN, _POSTFIX, _ATOM = 0, 1, 2, 3


def _print(node, op: str, need: int) -> str:
    sugar_one = ONE if op == "*" else T_ONE

    def level_and_text(f) -> tuple[int, str]:
        match f:
            case Var(name) | TVar(name):
                return _ATOM, name
            case One() | TOne():
                return _ATOM, "1"
            case TZero():
                return _ATOM, "0"
            case Limp(One(), One()):
                return _ATOM, "0"
            case (Limp(a, b) | TImp(a, b)) if b == sugar_one:
                return _POSTFIX, _print(a, op, _POSTFIX) + "^"
            case Tensor(a, b) | TPlus(a, b):
                return _CHAIN, f"{_print(a, op, _CHAIN)} {op} {_print(b, op, _POSTFIX)}"
            case Limp(a, b) | TImp(a, b):
                return _IMP, f"{_print(a, op, _CHAIN)} -> {_print(b, op, _IMP)}"
        raise TypeError(f"not printable: {f!r}")

    level, text = level_and_text(node)
    return f"({text})" if level < need else text


def print_formula(f: Formula) -> str:
    return _print(f, "*", _IMP)


def print_term(t: AlgTerm) -> str:
    return _print(t, "+", _IMP)


def print_identity(ident: Identity) -> str:
    return f"{print_term(ident.lhs)} = {print_term(ident.rhs)}"
