"""Session-script language: lexer, parser, AST, and canonical printer.

Grammar (statements separated by ';' or newline, '#' comments):

    char <prime>
    vars <ident>+
    quotient <poly>                  (repeatable, before any bindings)
    ideal <name> = <poly> (, <poly>)*
    gb <name>
    length <name>
    colon <name> <name>
    ehk <name> [e_max=N] [method=fit|last|exact]
    spread <name> [a=<name>] [q0=N] [e_max=N]
    spread_hk <name> [a=<name>] [q0=N] [e_max=N]
    identity product <I> <J> ell=N q=N[,N...] [e_max=N]
    identity self <J> q=N[,N...] [q0=N] [e_max=N]
    identity lemma33 <I> z=<poly> [a=<name>] [q0=N] [e_max=N]
    identity basechange <a> s=N q=N[,N...] [e_max=N]
    identity corollary <I> [q0=N] [e_max=N]
    independent <name> [q0=N] [e_max=N]

Polynomials are infix with '^' and '*'; implicit multiplication is not
allowed.  q and q0 take power-of-p values (not exponents).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import HomogeneityError, NotPrimeError, ScriptError
from .poly import FrobeniusExponent, Polynomial, RingSpec


class Token(NamedTuple):
    kind: str
    value: str
    line: int
    col: int


_SYMBOLS = set(";,=+-*^()")


def tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            tokens.append(Token("NEWLINE", "\n", line, col))
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch.isdigit():
            start = i
            startcol = col
            while i < n and text[i].isdigit():
                i += 1
                col += 1
            tokens.append(Token("INT", text[start:i], line, startcol))
        elif ch.isalpha() or ch == "_":
            start = i
            startcol = col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            tokens.append(Token("IDENT", text[start:i], line, startcol))
        elif ch in _SYMBOLS:
            tokens.append(Token("SYM", ch, line, col))
            i += 1
            col += 1
        else:
            raise ScriptError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


# -- command AST --------------------------------------------------------------


@dataclass(frozen=True)
class GbCommand:
    name: str


@dataclass(frozen=True)
class LengthCommand:
    name: str


@dataclass(frozen=True)
class ColonCommand:
    left: str
    right: str


@dataclass(frozen=True)
class EhkCommand:
    name: str
    e_max: int | None = None
    method: str | None = None


@dataclass(frozen=True)
class SpreadCommand:
    name: str
    a: str | None = None
    q0: int | None = None
    e_max: int | None = None


@dataclass(frozen=True)
class SpreadHkCommand:
    name: str
    a: str | None = None
    q0: int | None = None
    e_max: int | None = None


@dataclass(frozen=True)
class IdentityProductCommand:
    left: str
    right: str
    ell: int
    q: tuple
    e_max: int | None = None


@dataclass(frozen=True)
class IdentitySelfCommand:
    name: str
    q: tuple
    q0: int | None = None
    e_max: int | None = None


@dataclass(frozen=True)
class IdentityLemma33Command:
    name: str
    z: Polynomial
    a: str | None = None
    q0: int | None = None
    e_max: int | None = None


@dataclass(frozen=True)
class IdentityBasechangeCommand:
    name: str
    s: int
    q: tuple
    e_max: int | None = None


@dataclass(frozen=True)
class IdentityCorollaryCommand:
    name: str
    q0: int | None = None
    e_max: int | None = None


@dataclass(frozen=True)
class IndependentCommand:
    name: str
    q0: int | None = None
    e_max: int | None = None


@dataclass(frozen=True)
class SessionScript:
    ring: RingSpec
    bindings: tuple  # ((name, (Polynomial, ...)), ...) in declaration order
    commands: tuple

    def ideals(self):
        from .ideals import Ideal
        return {name: Ideal(self.ring, tuple(g for g in gens if not g.is_zero()))
                for name, gens in self.bindings}


# -- parser -------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ScriptError(message, tok.line, tok.col)

    def at_statement_end(self) -> bool:
        tok = self.peek()
        return tok.kind in ("NEWLINE", "EOF") or (
            tok.kind == "SYM" and tok.value == ";")

    def skip_separators(self):
        while True:
            tok = self.peek()
            if tok.kind == "NEWLINE" or (tok.kind == "SYM" and tok.value == ";"):
                self.advance()
            else:
                return

    def end_statement(self):
        if not self.at_statement_end():
            self.fail(f"unexpected token {self.peek().value!r}")

    def expect_ident(self, what="identifier") -> Token:
        tok = self.peek()
        if tok.kind != "IDENT":
            self.fail(f"expected {what}")
        return self.advance()

    def expect_int(self, what="integer") -> Token:
        tok = self.peek()
        if tok.kind != "INT":
            self.fail(f"expected {what}")
        return self.advance()

    def expect_sym(self, sym):
        tok = self.peek()
        if tok.kind != "SYM" or tok.value != sym:
            self.fail(f"expected {sym!r}")
        return self.advance()

    # polynomial expressions --------------------------------------------

    def parse_poly(self, ring: RingSpec) -> Polynomial:
        result = self.parse_poly_term(ring)
        while True:
            tok = self.peek()
            if tok.kind == "SYM" and tok.value in "+-":
                self.advance()
                rhs = self.parse_poly_term(ring)
                result = result + rhs if tok.value == "+" else result - rhs
            else:
                return result

    def parse_poly_term(self, ring) -> Polynomial:
        result = self.parse_poly_factor(ring)
        while True:
            tok = self.peek()
            if tok.kind == "SYM" and tok.value == "*":
                self.advance()
                result = result * self.parse_poly_factor(ring)
            else:
                return result

    def parse_poly_factor(self, ring) -> Polynomial:
        tok = self.peek()
        if tok.kind == "SYM" and tok.value == "-":
            self.advance()
            return -self.parse_poly_factor(ring)
        base = self.parse_poly_atom(ring)
        tok = self.peek()
        if tok.kind == "SYM" and tok.value == "^":
            self.advance()
            exp = self.expect_int("exponent")
            return base ** int(exp.value)
        return base

    def parse_poly_atom(self, ring) -> Polynomial:
        tok = self.peek()
        if tok.kind == "INT":
            self.advance()
            return ring.constant(int(tok.value))
        if tok.kind == "IDENT":
            if tok.value not in ring.variables:
                self.fail(f"unknown variable {tok.value!r}", tok)
            self.advance()
            return ring.gen(ring.variables.index(tok.value))
        if tok.kind == "SYM" and tok.value == "(":
            self.advance()
            inner = self.parse_poly(ring)
            self.expect_sym(")")
            return inner
        self.fail("expected a polynomial")

    # options -----------------------------------------------------------

    def looks_like_option(self) -> bool:
        tok = self.peek()
        return (tok.kind == "IDENT"
                and self.tokens[self.pos + 1].kind == "SYM"
                and self.tokens[self.pos + 1].value == "=")

    def parse_options(self, ring, option_types: dict) -> dict:
        """option_types maps option name -> one of int|ident|qvalue|qlist|poly."""
        seen = {}
        while self.looks_like_option():
            key_tok = self.advance()
            key = key_tok.value
            if key not in option_types:
                self.fail(f"unknown option {key!r}", key_tok)
            if key in seen:
                self.fail(f"duplicate option {key!r}", key_tok)
            self.expect_sym("=")
            kind = option_types[key]
            if kind == "int":
                seen[key] = int(self.expect_int().value)
            elif kind == "ident":
                seen[key] = self.expect_ident().value
            elif kind == "qvalue":
                seen[key] = self.parse_q_value(ring)
            elif kind == "qlist":
                values = [self.parse_q_value(ring)]
                while (self.peek().kind == "SYM"
                       and self.peek().value == ","):
                    self.advance()
                    values.append(self.parse_q_value(ring))
                seen[key] = tuple(values)
            elif kind == "poly":
                seen[key] = self.parse_poly(ring)
            else:  # pragma: no cover
                raise AssertionError(kind)
        return seen

    def parse_q_value(self, ring) -> int:
        tok = self.expect_int("power of the characteristic")
        value = int(tok.value)
        try:
            FrobeniusExponent.from_q(ring.characteristic, value)
        except Exception:
            self.fail(
                f"{value} is not a power of the characteristic "
                f"{ring.characteristic}", tok)
        return value


def parse_script(text: str) -> SessionScript:
    """Parse a full session; errors carry (line, column) positions."""
    p = _Parser(text)
    p.skip_separators()

    tok = p.peek()
    if not (tok.kind == "IDENT" and tok.value == "char"):
        p.fail("script must start with a 'char' declaration")
    p.advance()
    char_tok = p.expect_int("characteristic")
    characteristic = int(char_tok.value)
    p.end_statement()
    p.skip_separators()

    tok = p.peek()
    if not (tok.kind == "IDENT" and tok.value == "vars"):
        p.fail("expected a 'vars' declaration")
    p.advance()
    names = []
    name_tok = p.expect_ident("variable name")
    names.append(name_tok.value)
    while p.peek().kind == "IDENT":
        names.append(p.advance().value)
    p.end_statement()
    if len(set(names)) != len(names):
        raise ScriptError("duplicate variable name", name_tok.line, name_tok.col)

    try:
        ring = RingSpec(characteristic, tuple(names))
    except NotPrimeError:
        raise ScriptError("characteristic must be prime",
                          char_tok.line, char_tok.col)

    p.skip_separators()
    while p.peek().kind == "IDENT" and p.peek().value == "quotient":
        kw = p.advance()
        rel_start = p.peek()
        rel = p.parse_poly(ring)
        p.end_statement()
        try:
            ring = ring.quotient(rel)
        except HomogeneityError:
            raise ScriptError("quotient relation must be homogeneous",
                              rel_start.line, rel_start.col)
        p.skip_separators()

    bindings = []
    bound = set()
    commands = []

    def require_bound(tok):
        if tok.value not in bound:
            raise ScriptError(f"unknown ideal {tok.value!r}", tok.line, tok.col)
        return tok.value

    while p.peek().kind != "EOF":
        tok = p.peek()
        if tok.kind != "IDENT":
            p.fail("expected a statement")
        word = tok.value
        if word == "quotient":
            p.fail("'quotient' must appear before ideal bindings")
        elif word == "char" or word == "vars":
            p.fail(f"duplicate {word!r} declaration")
        elif word == "ideal":
            p.advance()
            name_tok = p.expect_ident("ideal name")
            if name_tok.value in bound:
                raise ScriptError(f"duplicate binding {name_tok.value!r}",
                                  name_tok.line, name_tok.col)
            p.expect_sym("=")
            gens = [p.parse_poly(ring)]
            while p.peek().kind == "SYM" and p.peek().value == ",":
                p.advance()
                gens.append(p.parse_poly(ring))
            p.end_statement()
            bindings.append((name_tok.value, tuple(gens)))
            bound.add(name_tok.value)
        elif word == "gb":
            p.advance()
            commands.append(GbCommand(require_bound(p.expect_ident("ideal name"))))
            p.end_statement()
        elif word == "length":
            p.advance()
            commands.append(
                LengthCommand(require_bound(p.expect_ident("ideal name"))))
            p.end_statement()
        elif word == "colon":
            p.advance()
            left = require_bound(p.expect_ident("ideal name"))
            right = require_bound(p.expect_ident("ideal name"))
            commands.append(ColonCommand(left, right))
            p.end_statement()
        elif word == "ehk":
            p.advance()
            name = require_bound(p.expect_ident("ideal name"))
            opts = p.parse_options(ring, {"e_max": "int", "method": "ident"})
            method = opts.get("method")
            if method is not None and method not in ("fit", "last", "exact"):
                p.fail(f"method must be fit, last, or exact, got {method!r}")
            commands.append(EhkCommand(name, opts.get("e_max"), method))
            p.end_statement()
        elif word in ("spread", "spread_hk"):
            p.advance()
            name = require_bound(p.expect_ident("ideal name"))
            opts = p.parse_options(
                ring, {"a": "ident", "q0": "qvalue", "e_max": "int"})
            if "a" in opts and opts["a"] not in bound:
                p.fail(f"unknown ideal {opts['a']!r}")
            cls = SpreadCommand if word == "spread" else SpreadHkCommand
            commands.append(cls(name, opts.get("a"), opts.get("q0"),
                                opts.get("e_max")))
            p.end_statement()
        elif word == "identity":
            p.advance()
            sub_tok = p.expect_ident("identity kind")
            sub = sub_tok.value
            if sub == "product":
                left = require_bound(p.expect_ident("ideal name"))
                right = require_bound(p.expect_ident("ideal name"))
                opts = p.parse_options(
                    ring, {"ell": "int", "q": "qlist", "e_max": "int"})
                for req in ("ell", "q"):
                    if req not in opts:
                        p.fail(f"missing required option {req!r}", sub_tok)
                commands.append(IdentityProductCommand(
                    left, right, opts["ell"], opts["q"], opts.get("e_max")))
            elif sub == "self":
                name = require_bound(p.expect_ident("ideal name"))
                opts = p.parse_options(
                    ring, {"q": "qlist", "q0": "qvalue", "e_max": "int"})
                if "q" not in opts:
                    p.fail("missing required option 'q'", sub_tok)
                commands.append(IdentitySelfCommand(
                    name, opts["q"], opts.get("q0"), opts.get("e_max")))
            elif sub == "lemma33":
                name = require_bound(p.expect_ident("ideal name"))
                opts = p.parse_options(
                    ring, {"z": "poly", "a": "ident", "q0": "qvalue",
                           "e_max": "int"})
                if "z" not in opts:
                    p.fail("missing required option 'z'", sub_tok)
                if "a" in opts and opts["a"] not in bound:
                    p.fail(f"unknown ideal {opts['a']!r}")
                commands.append(IdentityLemma33Command(
                    name, opts["z"], opts.get("a"), opts.get("q0"),
                    opts.get("e_max")))
            elif sub == "basechange":
                name = require_bound(p.expect_ident("ideal name"))
                opts = p.parse_options(
                    ring, {"s": "int", "q": "qlist", "e_max": "int"})
                for req in ("s", "q"):
                    if req not in opts:
                        p.fail(f"missing required option {req!r}", sub_tok)
                commands.append(IdentityBasechangeCommand(
                    name, opts["s"], opts["q"], opts.get("e_max")))
            elif sub == "corollary":
                name = require_bound(p.expect_ident("ideal name"))
                opts = p.parse_options(ring, {"q0": "qvalue", "e_max": "int"})
                commands.append(IdentityCorollaryCommand(
                    name, opts.get("q0"), opts.get("e_max")))
            else:
                p.fail(f"unknown identity kind {sub!r}", sub_tok)
            p.end_statement()
        elif word == "independent":
            p.advance()
            name = require_bound(p.expect_ident("ideal name"))
            opts = p.parse_options(ring, {"q0": "qvalue", "e_max": "int"})
            commands.append(IndependentCommand(name, opts.get("q0"),
                                               opts.get("e_max")))
            p.end_statement()
        else:
            p.fail(f"unknown command {word!r}")
        p.skip_separators()

    return SessionScript(ring=ring, bindings=tuple(bindings),
                         commands=tuple(commands))


def parse_polynomial(text: str, ring: RingSpec) -> Polynomial:
    """Parse a single infix polynomial in the given ring."""
    p = _Parser(text)
    p.skip_separators()
    poly = p.parse_poly(ring)
    p.skip_separators()
    if p.peek().kind != "EOF":
        p.fail("unexpected trailing input")
    return poly


# -- canonical printer --------------------------------------------------------


def _opt(parts, key, value):
    if value is not None:
        parts.append(f"{key}={value}")


def format_command(cmd) -> str:
    parts = []
    if isinstance(cmd, GbCommand):
        parts = ["gb", cmd.name]
    elif isinstance(cmd, LengthCommand):
        parts = ["length", cmd.name]
    elif isinstance(cmd, ColonCommand):
        parts = ["colon", cmd.left, cmd.right]
    elif isinstance(cmd, EhkCommand):
        parts = ["ehk", cmd.name]
        _opt(parts, "e_max", cmd.e_max)
        _opt(parts, "method", cmd.method)
    elif isinstance(cmd, (SpreadCommand, SpreadHkCommand)):
        parts = ["spread" if isinstance(cmd, SpreadCommand) else "spread_hk",
                 cmd.name]
        _opt(parts, "a", cmd.a)
        _opt(parts, "q0", cmd.q0)
        _opt(parts, "e_max", cmd.e_max)
    elif isinstance(cmd, IdentityProductCommand):
        parts = ["identity", "product", cmd.left, cmd.right,
                 f"ell={cmd.ell}", "q=" + ",".join(str(q) for q in cmd.q)]
        _opt(parts, "e_max", cmd.e_max)
    elif isinstance(cmd, IdentitySelfCommand):
        parts = ["identity", "self", cmd.name,
                 "q=" + ",".join(str(q) for q in cmd.q)]
        _opt(parts, "q0", cmd.q0)
        _opt(parts, "e_max", cmd.e_max)
    elif isinstance(cmd, IdentityLemma33Command):
        parts = ["identity", "lemma33", cmd.name, f"z={cmd.z}"]
        _opt(parts, "a", cmd.a)
        _opt(parts, "q0", cmd.q0)
        _opt(parts, "e_max", cmd.e_max)
    elif isinstance(cmd, IdentityBasechangeCommand):
        parts = ["identity", "basechange", cmd.name, f"s={cmd.s}",
                 "q=" + ",".join(str(q) for q in cmd.q)]
        _opt(parts, "e_max", cmd.e_max)
    elif isinstance(cmd, IdentityCorollaryCommand):
        parts = ["identity", "corollary", cmd.name]
        _opt(parts, "q0", cmd.q0)
        _opt(parts, "e_max", cmd.e_max)
    elif isinstance(cmd, IndependentCommand):
        parts = ["independent", cmd.name]
        _opt(parts, "q0", cmd.q0)
        _opt(parts, "e_max", cmd.e_max)
    else:  # pragma: no cover
        raise AssertionError(f"unprintable command {cmd!r}")
    return " ".join(parts)


def print_script(script: SessionScript) -> str:
    """Canonical text whose parse equals the script."""
    lines = [f"char {script.ring.characteristic}",
             "vars " + " ".join(script.ring.variables)]
    for rel in script.ring.relations:
        lines.append(f"quotient {rel}")
    for name, gens in script.bindings:
        lines.append(f"ideal {name} = " + ", ".join(str(g) for g in gens))
    for cmd in script.commands:
        lines.append(format_command(cmd))
    return "\n".join(lines) + "\n"
