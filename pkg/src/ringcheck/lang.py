"""Declaration language: tokenizer, recursive-descent parser and printer.

    ring  A = QQ[x,y] / (x^2 - x) [local] ;
    ideal P in A = (x) ;
    module M over A = coker [[x, y], [0, x]] ;   # rows = generators
    check torsion_free M at P ;
    split A at P ;  decompose A ;  classify A ;  frobenius A ;

Polynomials use integer literals, variables, ``+ - * ^``, parentheses and
division by a nonzero constant (so that rational coefficients print and parse
back unchanged).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .errors import ParseError, PreconditionError, RingcheckError
from .poly import QQ, Field, Poly, PolyRing, format_poly
from .presentation import RingPresentation

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<int>\d+) | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>[()\[\],;+\-*^/=])
""", re.VERBOSE)

COMMANDS = ("check", "split", "decompose", "classify", "frobenius")
PROPERTIES = ("reduced", "vnr", "domain", "prime", "dedekind", "torsion_free", "flat",
              "regular_units", "units_at_origin", "dim", "dimq", "minprimes", "assprimes")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out, line, start, pos = [], 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, m.start() - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# ---------- declarations ----------

@dataclass
class RingDecl:
    name: str
    ring: RingPresentation


@dataclass
class IdealDecl:
    name: str
    ring_name: str
    ideal: object  # IdealHandle


@dataclass
class ModuleDecl:
    name: str
    ring_name: str
    module: object  # FPModule


@dataclass
class CommandDecl:
    command: str
    target: str
    prop: str | None = None
    at: str | None = None
    line: int = 0


Declaration = Union[RingDecl, IdealDecl, ModuleDecl, CommandDecl]


@dataclass
class Program:
    declarations: list[Declaration] = field(default_factory=list)
    rings: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)

    @property
    def commands(self) -> list[CommandDecl]:
        return [d for d in self.declarations if isinstance(d, CommandDecl)]

    def ring_of(self, name: str) -> RingPresentation:
        if name in self.rings:
            return self.rings[name]
        if name in self.ideals:
            return self.ideals[name].ring
        if name in self.modules:
            return self.modules[name].ring
        raise RingcheckError(f"unknown name {name!r}")


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind in ("sym", "ident"):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.tok
        if not self.accept(text):
            self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}")
        return tok

    def ident(self) -> str:
        tok = self.tok
        if tok.kind != "ident":
            self.error(f"expected a name, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok.text

    def integer(self) -> int:
        tok = self.tok
        if tok.kind != "int":
            self.error(f"expected an integer, found {tok.text or 'end of input'!r}")
        self.i += 1
        return int(tok.text)

    # polynomials
    def poly(self, ring: PolyRing) -> Poly:
        neg = False
        if self.accept("-"):
            neg = True
        elif self.accept("+"):
            pass
        out = self.term(ring)
        if neg:
            out = -out
        while True:
            if self.accept("+"):
                out = out + self.term(ring)
            elif self.accept("-"):
                out = out - self.term(ring)
            else:
                return out

    def term(self, ring: PolyRing) -> Poly:
        out = self.power(ring)
        while True:
            if self.accept("*"):
                out = out * self.power(ring)
            elif self.tok.text == "/" and self.tok.kind == "sym":
                tok = self.tok
                self.i += 1
                d = self.power(ring)
                if not d.is_constant or not d:
                    self.error("division only by a nonzero constant", tok)
                out = out.scale(ring.field.inv(d.constant_coeff()))
            else:
                return out

    def power(self, ring: PolyRing) -> Poly:
        base = self.atom(ring)
        if self.accept("^"):
            return base ** self.integer()
        return base

    def atom(self, ring: PolyRing) -> Poly:
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return ring.const(int(tok.text))
        if tok.kind == "ident":
            if tok.text not in ring.variables:
                self.error(f"unknown variable {tok.text!r}")
            self.i += 1
            return ring.var(tok.text)
        if self.accept("("):
            out = self.poly(ring)
            self.expect(")")
            return out
        if self.accept("-"):
            return -self.atom(ring)
        self.error(f"expected a polynomial, found {tok.text or 'end of input'!r}")

    def poly_list(self, ring: PolyRing, open_: str = "(", close: str = ")") -> list[Poly]:
        self.expect(open_)
        out = []
        if self.accept(close):
            return out
        while True:
            out.append(self.poly(ring))
            if self.accept(close):
                return out
            self.expect(",")

    # statements
    def field(self) -> Field:
        tok = self.tok
        if self.accept("QQ"):
            return QQ
        if self.accept("GF"):
            self.expect("(")
            p = self.integer()
            self.expect(")")
            try:
                return Field(p)
            except PreconditionError as exc:
                self.error(str(exc), tok)
        self.error("expected QQ or GF(p)")

    def ring_decl(self, prog: Program) -> RingDecl:
        name = self.ident()
        self.expect("=")
        fld = self.field()
        self.expect("[")
        names: list[str] = []
        if not self.accept("]"):
            while True:
                tok = self.tok
                v = self.ident()
                if v in names:
                    self.error(f"duplicate variable {v!r}", tok)
                names.append(v)
                if self.accept("]"):
                    break
                self.expect(",")
        ring = PolyRing(names, fld)
        rels: list[Poly] = []
        tok = self.tok
        if self.accept("/"):
            rels = self.poly_list(ring)
        local = self.accept("local")
        try:
            pres = RingPresentation(ring, rels, local=local, name=name)
        except PreconditionError as exc:
            self.error(str(exc), tok)
        return RingDecl(name, pres)

    def lookup_ring(self, prog: Program) -> tuple[str, RingPresentation]:
        tok = self.tok
        name = self.ident()
        if name not in prog.rings:
            self.error(f"unknown ring {name!r}", tok)
        return name, prog.rings[name]

    def ideal_decl(self, prog: Program) -> IdealDecl:
        from .idealcalc import IdealHandle
        name = self.ident()
        self.expect("in")
        rname, ring = self.lookup_ring(prog)
        self.expect("=")
        gens = self.poly_list(ring.ring)
        return IdealDecl(name, rname, IdealHandle(ring, gens, name=name))

    def module_decl(self, prog: Program) -> ModuleDecl:
        from .fpmodule import FPModule
        name = self.ident()
        self.expect("over")
        rname, ring = self.lookup_ring(prog)
        self.expect("=")
        self.expect("coker")
        self.expect("[")
        rows: list[list[Poly]] = []
        if not self.accept("]"):
            while True:
                tok = self.tok
                rows.append(self.poly_list(ring.ring, "[", "]"))
                if len(rows[-1]) != len(rows[0]):
                    self.error("relation matrix rows have different lengths", tok)
                if self.accept("]"):
                    break
                self.expect(",")
        ncols = len(rows[0]) if rows else 0
        return ModuleDecl(name, rname, FPModule(ring, len(rows), ncols, rows, name=name))

    def command(self, prog: Program, cmd: str, line: int) -> CommandDecl:
        prop = None
        if cmd == "check":
            tok = self.tok
            prop = self.ident()
            if prop not in PROPERTIES:
                self.error(f"unknown property {prop!r}", tok)
        tok = self.tok
        target = self.ident()
        if not (target in prog.rings or target in prog.ideals or target in prog.modules):
            self.error(f"unknown name {target!r}", tok)
        if cmd in ("split", "decompose", "classify", "frobenius") and target not in prog.rings:
            self.error(f"{cmd} expects a ring, got {target!r}", tok)
        at = None
        if cmd in ("check", "split") and self.accept("at"):
            tok = self.tok
            at = self.ident()
            if at not in prog.ideals:
                self.error(f"unknown ideal {at!r}", tok)
            if not prog.ring_of(at).same_as(prog.ring_of(target)):
                self.error(f"{at!r} does not live in the ring of {target!r}", tok)
        elif cmd == "split":
            self.error("split needs 'at IDEAL'")
        return CommandDecl(cmd, target, prop, at, line)

    def program(self) -> Program:
        prog = Program()
        while self.tok.kind != "eof":
            tok = self.tok
            kw = self.ident()
            if kw in prog.rings or kw in prog.ideals or kw in prog.modules:
                self.error(f"{kw!r} is a declared name, not a statement keyword", tok)
            if kw == "ring":
                decl = self.ring_decl(prog)
            elif kw == "ideal":
                decl = self.ideal_decl(prog)
            elif kw == "module":
                decl = self.module_decl(prog)
            elif kw in COMMANDS:
                decl = self.command(prog, kw, tok.line)
            else:
                self.error(f"unknown statement {kw!r}", tok)
            if not isinstance(decl, CommandDecl):
                if decl.name in prog.rings or decl.name in prog.ideals or decl.name in prog.modules:
                    self.error(f"name {decl.name!r} declared twice", tok)
                if isinstance(decl, RingDecl):
                    prog.rings[decl.name] = decl.ring
                elif isinstance(decl, IdealDecl):
                    prog.ideals[decl.name] = decl.ideal
                else:
                    prog.modules[decl.name] = decl.module
            prog.declarations.append(decl)
            self.expect(";")
        return prog


def parse_program(text: str) -> Program:
    return _Parser(text).program()


def parse_declarations(text: str) -> list[Declaration]:
    return parse_program(text).declarations


def parse_poly(text: str, ring: PolyRing) -> Poly:
    p = _Parser(text)
    out = p.poly(ring)
    if p.tok.kind != "eof":
        p.error(f"trailing input {p.tok.text!r}")
    return out


# ---------- printing ----------

def _polys(polys) -> str:
    return ", ".join(format_poly(f) for f in polys)


def format_ring(A: RingPresentation, name: str | None = None) -> str:
    name = name or A.name or "A"
    rels = f" / ({_polys(A.relations)})" if A.relations else ""
    local = " local" if A.local else ""
    return f"ring {name} = {A.field.name}[{', '.join(A.variables)}]{rels}{local};"


def format_ideal(I, ring_name: str, name: str | None = None) -> str:
    return f"ideal {name or I.name or 'I'} in {ring_name} = ({_polys(I.gens)});"


def format_module(M, ring_name: str, name: str | None = None) -> str:
    rows = ", ".join(f"[{_polys(r)}]" for r in M.rows)
    return f"module {name or M.name or 'M'} over {ring_name} = coker [{rows}];"


def format_command(c: CommandDecl) -> str:
    parts = [c.command] + ([c.prop] if c.prop else []) + [c.target]
    if c.at:
        parts += ["at", c.at]
    return " ".join(parts) + ";"


def format_declarations(decls: list[Declaration]) -> str:
    lines = []
    for d in decls:
        if isinstance(d, RingDecl):
            lines.append(format_ring(d.ring, d.name))
        elif isinstance(d, IdealDecl):
            lines.append(format_ideal(d.ideal, d.ring_name, d.name))
        elif isinstance(d, ModuleDecl):
            lines.append(format_module(d.module, d.ring_name, d.name))
        else:
            lines.append(format_command(d))
    return "\n".join(lines) + "\n"

