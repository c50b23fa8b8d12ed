"""Text format for shift definitions.

::

    sft {
      dim 2;
      alphabet 0 1;
      # hard squares
      forbid { (0,0)=1 (1,0)=1 }
      forbid { (0,0)=1 (0,1)=1 }
    }

Whitespace is insignificant, ``;`` separators are optional and ``#`` starts a
comment that runs to the end of the line.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import SftError
from .patterns import Alphabet, FinitePattern, SftSpec

KEYWORDS = {"sft", "dim", "alphabet", "forbid"}
_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<punct>[{}(),=;])|(?P<word>[+-]?[A-Za-z0-9_]+)")
_SYMBOL = re.compile(r"[A-Za-z0-9_]+\Z")
_INT = re.compile(r"[+-]?\d+\Z")


class SpecError(SftError):
    def __init__(self, message, line, column, span):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
        self.span = span


class SpecSyntaxError(SpecError):
    pass


class SpecSemanticError(SpecError):
    pass


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int
    line: int
    column: int


@dataclass
class SpecDocument:
    source: str
    spec: SftSpec
    spans: dict = field(default_factory=dict)


def tokenize(text):
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SpecSyntaxError(f"unexpected character {text[pos]!r}",
                                  line, pos - line_start + 1, (pos, pos + 1))
        if m.lastgroup:
            tokens.append(Token(m.group(), pos, m.end(), line, pos - line_start + 1))
        chunk = m.group()
        if "\n" in chunk:
            line += chunk.count("\n")
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("", len(text), len(text), line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.spans = {}

    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, message, tok=None, kind=SpecSyntaxError):
        tok = tok or self.tok
        raise kind(message, tok.line, tok.column, (tok.start, tok.end))

    def next(self):
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, text):
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            self.fail(f"expected {text!r}, found {found!r}")
        return self.next()

    def optional(self, text):
        if self.tok.text == text:
            self.next()

    def integer(self, what):
        tok = self.tok
        if not _INT.match(tok.text):
            self.fail(f"expected {what}, found {tok.text or 'end of input'!r}")
        self.next()
        return int(tok.text), tok

    def symbol(self):
        tok = self.tok
        if not _SYMBOL.match(tok.text) or tok.text in KEYWORDS:
            self.fail(f"expected a symbol, found {tok.text or 'end of input'!r}")
        return self.next()

    def parse(self):
        start = self.expect("sft")
        self.expect("{")
        self.expect("dim")
        dim, dim_tok = self.integer("a dimension")
        if dim < 1:
            self.fail("dimension must be positive", dim_tok, SpecSemanticError)
        self.optional(";")
        self.expect("alphabet")
        symbols = []
        while self.tok.text not in ("forbid", "}", ";", ""):
            tok = self.symbol()
            if tok.text in symbols:
                self.fail(f"duplicate alphabet symbol {tok.text!r}", tok, SpecSemanticError)
            self.spans[("symbol", len(symbols))] = (tok.start, tok.end)
            symbols.append(tok.text)
        if not symbols:
            self.fail("alphabet needs at least one symbol")
        self.optional(";")
        patterns = []
        while self.tok.text == "forbid":
            patterns.append(self.forbid(dim, symbols, len(patterns)))
            self.optional(";")
        end = self.expect("}")
        if self.tok.text:
            self.fail(f"unexpected {self.tok.text!r} after the closing brace")
        self.spans["sft"] = (start.start, end.end)
        return SftSpec(Alphabet(tuple(symbols)), dim, tuple(patterns))

    def forbid(self, dim, symbols, number):
        first = self.expect("forbid")
        self.expect("{")
        cells = {}
        while self.tok.text == "(":
            open_tok = self.next()
            coord = [self.integer("a coordinate")[0]]
            while self.tok.text == ",":
                self.next()
                coord.append(self.integer("a coordinate")[0])
            self.expect(")")
            if len(coord) != dim:
                self.fail(f"coordinate has {len(coord)} components, expected {dim}",
                          open_tok, SpecSemanticError)
            self.expect("=")
            sym = self.symbol()
            if sym.text not in symbols:
                self.fail(f"unknown symbol {sym.text!r}", sym, SpecSemanticError)
            if tuple(coord) in cells:
                self.fail(f"cell {tuple(coord)} assigned twice", open_tok, SpecSemanticError)
            cells[tuple(coord)] = symbols.index(sym.text)
        if not cells:
            self.fail("a forbid block needs at least one cell")
        last = self.expect("}")
        self.spans[("forbid", number)] = (first.start, last.end)
        return FinitePattern(dim, tuple(cells.items()))


def parse_spec(text) -> SpecDocument:
    parser = _Parser(text)
    spec = parser.parse()
    return SpecDocument(text, spec, parser.spans)


def load_spec(path) -> SftSpec:
    with open(path) as fh:
        return parse_spec(fh.read()).spec


def format_spec(spec: SftSpec) -> str:
    lines = ["sft {", f"  dim {spec.dim};", "  alphabet " + " ".join(spec.alphabet.symbols) + ";"]
    for p in spec.forbidden:
        cells = " ".join("(" + ",".join(str(c) for c in coord) + ")=" + spec.alphabet[s]
                         for coord, s in p.cells)
        lines.append(f"  forbid {{ {cells} }}")
    lines.append("}")
    return "\n".join(lines) + "\n"
