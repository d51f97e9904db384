"""Formula syntax for poison modal logic.

The ASCII grammar, loosest to tightest binding::

    iff     := implies ('<->' implies)*          left associative
    implies := or ('->' implies)?                right associative
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := ('~' | MODALITY) unary | primary
    primary := ATOM | POISON | 'true' | 'false' | '(' iff ')'

Atoms match ``[a-z][a-zA-Z0-9_]*``. Poison atoms are ``#p`` (first index)
or ``#p_k`` with k counted from 1. Modalities: ``<>`` ``[]`` ``<k>`` ``[k]``
for the plain pair, ``<#>`` ``[#]`` ``<#k>`` ``[#k]`` for the poison pair,
``<U>`` ``[U]`` for the universal pair. Indices in the surface syntax are
1-based; internally they are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError


class Pml:
    """Base class for formula nodes."""

    __slots__ = ()

    def __str__(self):
        return print_pml(self)


@dataclass(frozen=True, slots=True)
class Atom(Pml):
    name: str


@dataclass(frozen=True, slots=True)
class PoisonAtom(Pml):
    index: int = 0


@dataclass(frozen=True, slots=True)
class Top(Pml):
    pass


@dataclass(frozen=True, slots=True)
class Bot(Pml):
    pass


@dataclass(frozen=True, slots=True)
class Not(Pml):
    body: Pml


@dataclass(frozen=True, slots=True)
class And(Pml):
    left: Pml
    right: Pml


@dataclass(frozen=True, slots=True)
class Or(Pml):
    left: Pml
    right: Pml


@dataclass(frozen=True, slots=True)
class Implies(Pml):
    left: Pml
    right: Pml


@dataclass(frozen=True, slots=True)
class Iff(Pml):
    left: Pml
    right: Pml


@dataclass(frozen=True, slots=True)
class Diamond(Pml):
    body: Pml
    index: int = 0


@dataclass(frozen=True, slots=True)
class Box(Pml):
    body: Pml
    index: int = 0


@dataclass(frozen=True, slots=True)
class PoisonDiamond(Pml):
    body: Pml
    index: int = 0


@dataclass(frozen=True, slots=True)
class PoisonBox(Pml):
    body: Pml
    index: int = 0


@dataclass(frozen=True, slots=True)
class UDiamond(Pml):
    body: Pml


@dataclass(frozen=True, slots=True)
class UBox(Pml):
    body: Pml


TOP = Top()
BOT = Bot()

BINARY = (And, Or, Implies, Iff)
MODAL = (Diamond, Box, PoisonDiamond, PoisonBox, UDiamond, UBox)


def and_all(parts) -> Pml:
    """Left-folded conjunction; empty input gives truth."""
    parts = list(parts)
    if not parts:
        return TOP
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def or_all(parts) -> Pml:
    """Left-folded disjunction; empty input gives falsity."""
    parts = list(parts)
    if not parts:
        return BOT
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def flatten_and(phi: Pml) -> list[Pml]:
    if isinstance(phi, And):
        return flatten_and(phi.left) + flatten_and(phi.right)
    return [phi]


def modal_depth(phi: Pml) -> int:
    t = type(phi)
    if t in (Atom, PoisonAtom, Top, Bot):
        return 0
    if t is Not:
        return modal_depth(phi.body)
    if t in BINARY:
        return max(modal_depth(phi.left), modal_depth(phi.right))
    return 1 + modal_depth(phi.body)


def formula_size(phi: Pml) -> int:
    t = type(phi)
    if t in (Atom, PoisonAtom, Top, Bot):
        return 1
    if t in BINARY:
        return 1 + formula_size(phi.left) + formula_size(phi.right)
    return 1 + formula_size(phi.body)


def atoms_of(phi: Pml) -> set[str]:
    t = type(phi)
    if t is Atom:
        return {phi.name}
    if t in (PoisonAtom, Top, Bot):
        return set()
    if t in BINARY:
        return atoms_of(phi.left) | atoms_of(phi.right)
    return atoms_of(phi.body)


def max_relation_index(phi: Pml) -> int:
    """Largest relation index used by a modality or poison atom, -1 if none."""
    t = type(phi)
    if t is PoisonAtom:
        return phi.index
    if t in (Atom, Top, Bot):
        return -1
    if t in BINARY:
        return max(max_relation_index(phi.left), max_relation_index(phi.right))
    inner = max_relation_index(phi.body)
    if t in (Diamond, Box, PoisonDiamond, PoisonBox):
        return max(phi.index, inner)
    return inner


def has_universal(phi: Pml) -> bool:
    t = type(phi)
    if t in (UDiamond, UBox):
        return True
    if t in (Atom, PoisonAtom, Top, Bot):
        return False
    if t in BINARY:
        return has_universal(phi.left) or has_universal(phi.right)
    return has_universal(phi.body)


def has_poison_modality(phi: Pml) -> bool:
    t = type(phi)
    if t in (PoisonDiamond, PoisonBox):
        return True
    if t in (Atom, PoisonAtom, Top, Bot):
        return False
    if t in BINARY:
        return has_poison_modality(phi.left) or has_poison_modality(phi.right)
    return has_poison_modality(phi.body)


# ---------------------------------------------------------------------------
# Lexer

_KEYWORDS = {"true", "false"}


@dataclass(frozen=True)
class _Token:
    kind: str  # atom poison diamond box pdiamond pbox udiamond ubox op lparen rparen true false end
    value: object
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)

    def err(msg, l=None, c=None):
        raise ParseError(msg, l if l is not None else line, c if c is not None else col)

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
        start_line, start_col = line, col
        if ch.islower():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in _KEYWORDS:
                tokens.append(_Token(word, word, start_line, start_col))
            else:
                tokens.append(_Token("atom", word, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch == "#":
            if i + 1 >= n or text[i + 1] != "p":
                err("expected 'p' after '#'")
            j = i + 2
            index = 0
            if j < n and text[j] == "_":
                j += 1
                k = j
                while k < n and text[k].isdigit():
                    k += 1
                if k == j:
                    err("expected digits after '#p_'")
                index = int(text[j:k]) - 1
                if index < 0:
                    err("poison atom indices start at 1")
                j = k
            if j < n and (text[j].isalnum() or text[j] == "_"):
                err(f"malformed poison atom near {text[i:j + 1]!r}")
            tokens.append(_Token("poison", index, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch == "<":
            if text.startswith("<->", i):
                tokens.append(_Token("op", "<->", start_line, start_col))
                i += 3
                col += 3
                continue
            j = i + 1
            body = ""
            while j < n and text[j] != ">":
                body += text[j]
                j += 1
            if j >= n:
                err("unterminated '<'")
            tok = _modal_token("diamond", body, start_line, start_col, err)
            tokens.append(tok)
            col += j + 1 - i
            i = j + 1
            continue
        if ch == "[":
            j = i + 1
            body = ""
            while j < n and text[j] != "]":
                body += text[j]
                j += 1
            if j >= n:
                err("unterminated '['")
            tok = _modal_token("box", body, start_line, start_col, err)
            tokens.append(tok)
            col += j + 1 - i
            i = j + 1
            continue
        if text.startswith("->", i):
            tokens.append(_Token("op", "->", start_line, start_col))
            i += 2
            col += 2
            continue
        if ch in "~&|()":
            kind = {"(": "lparen", ")": "rparen"}.get(ch, "op")
            tokens.append(_Token(kind, ch, start_line, start_col))
            i += 1
            col += 1
            continue
        err(f"unexpected character {ch!r}")
    tokens.append(_Token("end", None, line, col))
    return tokens


def _modal_token(shape, body, line, col, err):
    """Classify the text between angle or square brackets."""
    if body == "":
        return _Token(shape, 0, line, col)
    if body == "U":
        return _Token("u" + shape, None, line, col)
    if body == "#":
        return _Token("p" + shape, 0, line, col)
    if body.startswith("#") and body[1:].isdigit():
        index = int(body[1:]) - 1
        if index < 0:
            err("modality indices start at 1", line, col)
        return _Token("p" + shape, index, line, col)
    if body.isdigit():
        index = int(body) - 1
        if index < 0:
            err("modality indices start at 1", line, col)
        return _Token(shape, index, line, col)
    err(f"malformed modality {('<' if shape == 'diamond' else '[') + body!r}", line, col)


# ---------------------------------------------------------------------------
# Parser

_MODAL_NODES = {
    "diamond": Diamond,
    "box": Box,
    "pdiamond": PoisonDiamond,
    "pbox": PoisonBox,
}


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def err(self, msg):
        tok = self.peek()
        raise ParseError(msg, tok.line, tok.column)

    def parse(self) -> Pml:
        phi = self.iff()
        if self.peek().kind != "end":
            self.err(f"unexpected trailing input {self.peek().value!r}")
        return phi

    def iff(self) -> Pml:
        left = self.implies()
        while self.peek().kind == "op" and self.peek().value == "<->":
            self.advance()
            left = Iff(left, self.implies())
        return left

    def implies(self) -> Pml:
        left = self.or_()
        if self.peek().kind == "op" and self.peek().value == "->":
            self.advance()
            return Implies(left, self.implies())
        return left

    def or_(self) -> Pml:
        left = self.and_()
        while self.peek().kind == "op" and self.peek().value == "|":
            self.advance()
            left = Or(left, self.and_())
        return left

    def and_(self) -> Pml:
        left = self.unary()
        while self.peek().kind == "op" and self.peek().value == "&":
            self.advance()
            left = And(left, self.unary())
        return left

    def unary(self) -> Pml:
        tok = self.peek()
        if tok.kind == "op" and tok.value == "~":
            self.advance()
            return Not(self.unary())
        if tok.kind in _MODAL_NODES:
            self.advance()
            return _MODAL_NODES[tok.kind](self.unary(), tok.value)
        if tok.kind == "udiamond":
            self.advance()
            return UDiamond(self.unary())
        if tok.kind == "ubox":
            self.advance()
            return UBox(self.unary())
        return self.primary()

    def primary(self) -> Pml:
        tok = self.peek()
        if tok.kind == "atom":
            self.advance()
            return Atom(tok.value)
        if tok.kind == "poison":
            self.advance()
            return PoisonAtom(tok.value)
        if tok.kind == "true":
            self.advance()
            return TOP
        if tok.kind == "false":
            self.advance()
            return BOT
        if tok.kind == "lparen":
            self.advance()
            phi = self.iff()
            if self.peek().kind != "rparen":
                self.err("expected ')'")
            self.advance()
            return phi
        if tok.kind == "end":
            self.err("unexpected end of input")
        self.err(f"unexpected token {tok.value!r}")


def parse_pml(text: str) -> Pml:
    return _Parser(_tokenize(text)).parse()


# ---------------------------------------------------------------------------
# Printer

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_BIN_OP = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def _modality_text(node) -> str:
    t = type(node)
    if t is UDiamond:
        return "<U>"
    if t is UBox:
        return "[U]"
    if t is Diamond:
        return "<>" if node.index == 0 else f"<{node.index + 1}>"
    if t is Box:
        return "[]" if node.index == 0 else f"[{node.index + 1}]"
    if t is PoisonDiamond:
        return "<#>" if node.index == 0 else f"<#{node.index + 1}>"
    if t is PoisonBox:
        return "[#]" if node.index == 0 else f"[#{node.index + 1}]"
    raise TypeError(node)


def print_pml(phi: Pml) -> str:
    """Minimal-parenthesis rendering; parse_pml inverts it."""

    def go(node: Pml, parent_prec: int) -> str:
        t = type(node)
        if t is Atom:
            return node.name
        if t is PoisonAtom:
            return "#p" if node.index == 0 else f"#p_{node.index + 1}"
        if t is Top:
            return "true"
        if t is Bot:
            return "false"
        if t is Not:
            return "~" + go(node.body, 5)
        if t in MODAL:
            return _modality_text(node) + go(node.body, 5)
        prec = _PREC[t]
        op = _BIN_OP[t]
        if t is Implies:
            # right associative
            text = f"{go(node.left, prec + 1)} {op} {go(node.right, prec)}"
        else:
            # left associative: the right child needs parens at equal precedence
            text = f"{go(node.left, prec)} {op} {go(node.right, prec + 1)}"
        if prec < parent_prec:
            return f"({text})"
        return text

    return go(phi, 0)
