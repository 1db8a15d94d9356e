"""A small expression language for group words.

    expr    := term ('*' term)*
    term    := atom postfix*
    postfix := '^' ['-'] INT | '^' NAME | '^' '(' expr ')'
    atom    := NAME | '(' expr ')'

``aN`` is the N-th standard generator, ``eps`` the identity, any other
identifier a named binding.  ``x^g`` is the conjugate g^-1 x g.
Scripts are sequences of ``let name = expr;`` with ``#`` line comments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import CyclicBinding, DuplicateName, ExponentTooLarge, UnboundName, WordSyntaxError
from .garside_engine import GeneratorWord

MAX_EXPONENT = 10**6


@dataclass(frozen=True)
class Generator:
    index: int


@dataclass(frozen=True)
class Named:
    symbol: str


@dataclass(frozen=True)
class Product:
    items: tuple = ()


@dataclass(frozen=True)
class Power:
    base: "WordExpr"
    exponent: int


@dataclass(frozen=True)
class Conjugate:
    base: "WordExpr"
    by: "WordExpr"


WordExpr = Union[Generator, Named, Product, Power, Conjugate]

EPS = Product(())

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>\#[^\n]*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>\d+)
  | (?P<op>[\^*()\-=;])
    """,
    re.VERBOSE,
)
_GEN_RE = re.compile(r"^a(\d+)$")
_RESERVED = {"eps", "let"}


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind if kind != "op" else m.group(), m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str | None = None) -> _Tok:
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok.kind == "end" else repr(tok.text)
            raise WordSyntaxError(f"expected {want}, found {got}", tok.pos, self.text)
        self.i += 1
        return tok

    def expr(self) -> WordExpr:
        terms = [self.term()]
        while self.peek.kind == "*":
            self.take()
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Product(tuple(terms))

    def term(self) -> WordExpr:
        node = self.atom()
        while self.peek.kind == "^":
            self.take()
            tok = self.peek
            if tok.kind in ("int", "-"):
                neg = False
                if tok.kind == "-":
                    self.take()
                    neg = True
                num = self.take("int")
                k = -int(num.text) if neg else int(num.text)
                if abs(k) > MAX_EXPONENT:
                    raise ExponentTooLarge(f"exponent {k} exceeds {MAX_EXPONENT} at position {num.pos}")
                node = Power(node, k)
            else:
                node = Conjugate(node, self.atom())
        return node

    def atom(self) -> WordExpr:
        tok = self.peek
        if tok.kind == "name":
            self.take()
            return _name_node(tok)
        if tok.kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        got = "end of input" if tok.kind == "end" else repr(tok.text)
        raise WordSyntaxError(f"expected a generator, name or '(', found {got}", tok.pos, self.text)


def _name_node(tok: _Tok) -> WordExpr:
    m = _GEN_RE.match(tok.text)
    if m:
        idx = int(m.group(1))
        if idx < 1:
            raise WordSyntaxError("generator indices start at a1", tok.pos)
        return Generator(idx)
    if tok.text == "eps":
        return EPS
    if tok.text == "let":
        raise WordSyntaxError("'let' is reserved", tok.pos)
    return Named(tok.text)


def parse(text: str) -> WordExpr:
    p = _Parser(text)
    node = p.expr()
    p.take("end")
    return node


def to_text(expr: WordExpr) -> str:
    """Print an expression so that ``parse(to_text(e)) == e``."""
    if isinstance(expr, Generator):
        return f"a{expr.index}"
    if isinstance(expr, Named):
        return expr.symbol
    if isinstance(expr, Product):
        if not expr.items:
            return "eps"
        return " * ".join(_wrap_product(x) for x in expr.items)
    if isinstance(expr, Power):
        return f"{_wrap_product(expr.base)}^{expr.exponent}"
    if isinstance(expr, Conjugate):
        by = expr.by
        arg = to_text(by) if isinstance(by, (Generator, Named)) or by == EPS else f"({to_text(by)})"
        return f"{_wrap_product(expr.base)}^{arg}"
    raise TypeError(f"not a word expression: {expr!r}")


def _wrap_product(x: WordExpr) -> str:
    if isinstance(x, Product) and x.items:
        return f"({to_text(x)})"
    return to_text(x)


def names_in(expr: WordExpr) -> Iterator[str]:
    if isinstance(expr, Named):
        yield expr.symbol
    elif isinstance(expr, Product):
        for x in expr.items:
            yield from names_in(x)
    elif isinstance(expr, Power):
        yield from names_in(expr.base)
    elif isinstance(expr, Conjugate):
        yield from names_in(expr.base)
        yield from names_in(expr.by)


class Environment:
    """Insertion-ordered, acyclic name -> expression bindings."""

    def __init__(self, bindings=None):
        self._b: dict[str, WordExpr] = {}
        for name, expr in (bindings or {}).items():
            self.bind(name, expr)

    def bind(self, name: str, expr: WordExpr | str):
        if isinstance(expr, str):
            expr = parse(expr)
        if _GEN_RE.match(name) or name in _RESERVED or not re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", name):
            raise ValueError(f"{name!r} cannot be bound")
        if name in self._b:
            raise DuplicateName(f"name {name!r} is already bound")
        self._b[name] = expr
        self._check_acyclic()

    def merged(self, other: "Environment") -> "Environment":
        """New environment; bindings in ``other`` override ours."""
        env = Environment()
        env._b = {**self._b, **other._b}
        env._check_acyclic()
        return env

    def _check_acyclic(self):
        state: dict[str, int] = {}

        def visit(name, path):
            s = state.get(name)
            if s == 2:
                return
            if s == 1:
                cyc = path[path.index(name):] + [name]
                raise CyclicBinding("cyclic binding: " + " -> ".join(cyc))
            state[name] = 1
            for dep in names_in(self._b[name]):
                if dep in self._b:
                    visit(dep, path + [dep])
            state[name] = 2

        for name in self._b:
            visit(name, [name])

    def __contains__(self, name):
        return name in self._b

    def __getitem__(self, name) -> WordExpr:
        return self._b[name]

    def __iter__(self):
        return iter(self._b)

    def __len__(self):
        return len(self._b)

    def items(self):
        return self._b.items()


def load_script(text: str) -> Environment:
    """Process ``let name = expr;`` statements in order."""
    p = _Parser(text)
    env = Environment()
    while p.peek.kind != "end":
        kw = p.take("name")
        if kw.text != "let":
            raise WordSyntaxError(f"expected 'let', found {kw.text!r}", kw.pos, text)
        name = p.take("name")
        p.take("=")
        expr = p.expr()
        p.take(";")
        if name.text in env:
            raise DuplicateName(f"name {name.text!r} bound twice (position {name.pos})")
        if _GEN_RE.match(name.text) or name.text in _RESERVED:
            raise WordSyntaxError(f"{name.text!r} cannot be bound", name.pos, text)
        env.bind(name.text, expr)
    return env


def expand(expr: WordExpr | str, env: Environment | None = None) -> GeneratorWord:
    """Flatten to a letter sequence; no free reduction is performed."""
    if isinstance(expr, str):
        expr = parse(expr)
    env = env if env is not None else Environment()
    cache: dict[str, tuple] = {}

    def go(node, stack) -> tuple:
        if isinstance(node, Generator):
            return ((node.index, 1),)
        if isinstance(node, Named):
            s = node.symbol
            if s in cache:
                return cache[s]
            if s not in env:
                raise UnboundName(s)
            if s in stack:
                raise CyclicBinding(f"cyclic binding through {s!r}")
            out = cache[s] = go(env[s], stack | {s})
            return out
        if isinstance(node, Product):
            out = ()
            for x in node.items:
                out += go(x, stack)
            return out
        if isinstance(node, Power):
            k = node.exponent
            if abs(k) > MAX_EXPONENT:
                raise ExponentTooLarge(f"exponent {k} exceeds {MAX_EXPONENT}")
            base = go(node.base, stack)
            if k < 0:
                base = _inv(base)
            return base * abs(k)
        if isinstance(node, Conjugate):
            x = go(node.base, stack)
            g = go(node.by, stack)
            return _inv(g) + x + g
        raise TypeError(f"not a word expression: {node!r}")

    return GeneratorWord(go(expr, frozenset()))


def _inv(letters: tuple) -> tuple:
    return tuple((i, -e) for i, e in reversed(letters))
