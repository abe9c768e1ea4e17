"""Parser for object expressions such as ``L(s0;1,1) ⊗ Delta(s0s2) * T(2,0)``.

Grammar (whitespace-insensitive)::

    expr   := atom (('⊗' | '*') atom)*
    atom   := ('L' | 'Delta' | 'T' | IDENT) '(' body ')'
    body   := word (';' weight)?      for L and Delta
            | weight                  for T and custom names
    word   := 'e' | ('s' DIGIT)+ ('w' DIGIT+)?
    weight := INT (',' INT)*
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .rootsys import Weight

KIND_NAMES = {"L": "Simple", "Delta": "Weyl", "T": "Tilting"}

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<tensor>⊗|\*)|(?P<lp>\()|(?P<rp>\))|(?P<semi>;)|(?P<comma>,)"
    r"|(?P<int>-?\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
)
_WORD = re.compile(r"^(?:e|(?:s\d)+(?:w\d+)?|w\d+)$")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        pointer = f"\n  {text}\n  {' ' * pos}^" if text else ""
        super().__init__(f"at position {pos}: {message}{pointer}")


@dataclass(frozen=True)
class Atom:
    kind: str  # "Simple", "Weyl", "Tilting" or "Custom"
    word: str
    weight: Optional[Weight]
    name: Optional[str] = None
    pos: int = 0


@dataclass(frozen=True)
class ObjExpr:
    atoms: Tuple[Atom, ...]


def _tokens(text: str) -> List[Tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, rank: Optional[int]):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0
        self.rank = rank

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str, what: str):
        tok = self.toks[self.i]
        if tok[0] != kind:
            found = tok[1] or "end of input"
            raise ParseError(f"expected {what}, found {found!r}", tok[2], self.text)
        self.i += 1
        return tok

    def expr(self) -> ObjExpr:
        atoms = [self.atom()]
        while self.peek()[0] == "tensor":
            self.i += 1
            atoms.append(self.atom())
        self.take("end", "'⊗', '*' or end of input")
        return ObjExpr(tuple(atoms))

    def atom(self) -> Atom:
        _, head, pos = self.take("ident", "an object name (L, Delta, T or a custom name)")
        self.take("lp", "'('")
        kind = KIND_NAMES.get(head, "Custom")
        if kind in ("Simple", "Weyl"):
            word_tok = self.take("ident", "a word such as e or s0s2")
            word = self.check_word(word_tok)
            weight = None
            if self.peek()[0] == "semi":
                self.i += 1
                weight = self.weight()
        else:
            tok = self.peek()
            if tok[0] != "int":
                raise ParseError(f"{head}(...) takes a weight, not {tok[1] or 'nothing'!r}", tok[2], self.text)
            word, weight = "e", self.weight()
        self.take("rp", "')'")
        return Atom(kind, word, weight, head if kind == "Custom" else None, pos)

    def check_word(self, tok) -> str:
        _, word, pos = tok
        if not _WORD.match(word):
            raise ParseError(f"malformed word {word!r}", pos, self.text)
        if self.rank is not None:
            for m in re.finditer(r"s(\d)", word):
                if int(m.group(1)) > self.rank:
                    raise ParseError(f"unknown generator s{m.group(1)} for rank {self.rank}",
                                     pos + m.start(), self.text)
        return word

    def weight(self) -> Weight:
        start = self.peek()[2]
        values = [int(self.take("int", "an integer")[1])]
        while self.peek()[0] == "comma":
            self.i += 1
            values.append(int(self.take("int", "an integer")[1]))
        if self.rank is not None and len(values) != self.rank:
            raise ParseError(f"weight has {len(values)} entries, rank is {self.rank}", start, self.text)
        return tuple(values)


def parse(text: str, rank: Optional[int] = None) -> ObjExpr:
    """Parse an object expression; ``rank`` enables weight-length and generator checks."""
    return _Parser(text, rank).expr()


__all__ = ["Atom", "ObjExpr", "ParseError", "parse"]
