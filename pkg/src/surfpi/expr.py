"""Templated word expressions used by the data files.

Integer templates ``{i+1}`` are evaluated with a restricted ``ast`` walker.
On top of that sits a small expression language for words::

    expr  := term*                      juxtaposition is multiplication
    term  := atom ("^" int)?
    atom  := SYMBOL | "1" | "(" expr ")" | "[" expr "," expr "]"
           | ("S" | "phi" | "psi") "(" expr ")"
           | ("base" | "plus" | "rs") "(" expr ")"   evaluate in another domain
           | ("act" | "prod" | "rprod") "[" head "]" "(" expr ")"
           | "loop" "[" head "]"

Symbols are resolved by an :class:`EvalContext` in one of three domains:
``base`` (the surface generators), ``plus`` (the two-sided subgroup
generators) and ``rs`` (the Schreier generators).  Words from different
domains meet only after expansion into the base alphabet.
"""

from __future__ import annotations

import ast
import operator
import re
from dataclasses import dataclass
from typing import Callable

from .errors import IndexOutOfRange, SurfPiError, UnknownSymbol, WordParseError
from .surface import (
    SurfaceKind,
    base_alphabet,
    canonical_loop,
    gamma_loop,
    plus_alphabet,
    relator_word,
    y_loop,
    z_loop,
)
from .words import Word, inv, mul, sym


class ExprError(SurfPiError, ValueError):
    pass


# -- integer templates -------------------------------------------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
}
_CMPOPS = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}


def int_eval(text: str, env: dict[str, int]):
    """Evaluate integer arithmetic and comparisons over the names in ``env``."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as e:
        raise ExprError(f"bad arithmetic {text!r}") from e

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ExprError(f"unbound name {node.id!r} in {text!r}")
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return -ev(node.operand)
            if isinstance(node.op, ast.UAdd):
                return ev(node.operand)
            if isinstance(node.op, ast.Not):
                return not ev(node.operand)
        if isinstance(node, ast.BoolOp):
            vals = (ev(v) for v in node.values)
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, right in zip(node.ops, node.comparators):
                right = ev(right)
                if not _CMPOPS[type(op)](left, right):
                    return False
                left = right
            return True
        raise ExprError(f"unsupported syntax in {text!r}")

    return ev(tree)


_TEMPLATE = re.compile(r"\{([^{}]*)\}")


def fill(text: str, env: dict[str, int]) -> str:
    """Replace every ``{expr}`` in ``text`` by its integer value."""
    return _TEMPLATE.sub(lambda m: str(int_eval(m.group(1), env)), text)


# -- parsing -------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<name>[A-Za-z][A-Za-z_]*(?:\{[^{}]*\}|\d+)*(?:_(?:\{[^{}]*\}|\d+))*)
      | (?P<one>1)(?![\d{])
      | (?P<pow>\^\s*(?:-?\d+|\{[^{}]*\}))
      | (?P<punct>[()\[\],])
    )""",
    re.VERBOSE,
)

_FUNCS = {"S", "phi", "psi", "base", "plus", "rs"}
_SPEC_FUNCS = {"act", "prod", "rprod"}


@dataclass
class Node:
    kind: str
    value: object = None
    children: tuple = ()
    power: str | None = None


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ExprError(f"{msg} at offset {self.pos} in {self.text!r}")

    def peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m or m.end() == m.start():
            return None
        return m

    def next(self):
        m = self.peek()
        if m is None:
            self.error("unexpected text")
        self.pos = m.end()
        return m

    def raw_bracket(self) -> str:
        # the head inside [...] is taken verbatim, with nested brackets allowed
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text) or self.text[self.pos] != "[":
            self.error("expected '['")
        depth = 0
        start = self.pos + 1
        for k in range(self.pos, len(self.text)):
            ch = self.text[k]
            if ch in "[(":
                depth += 1
            elif ch in "])":
                depth -= 1
                if depth == 0:
                    self.pos = k + 1
                    return self.text[start:k]
        self.error("unbalanced '['")

    def expect(self, ch: str):
        m = self.next()
        if m.group("punct") != ch:
            self.error(f"expected {ch!r}")

    def parse(self) -> Node:
        node = self.expr()
        if self.text[self.pos :].strip():
            self.error("trailing text")
        return node

    def expr(self) -> Node:
        terms = []
        while True:
            m = self.peek()
            if m is None or m.group("punct") in (")", "]", ","):
                break
            terms.append(self.term())
        return Node("seq", children=tuple(terms))

    def term(self) -> Node:
        node = self.atom()
        m = self.peek()
        if m is not None and m.group("pow"):
            self.next()
            node.power = m.group("pow")[1:].strip()
        return node

    def atom(self) -> Node:
        m = self.next()
        if m.group("one"):
            return Node("seq")
        p = m.group("punct")
        if p == "(":
            inner = self.expr()
            self.expect(")")
            return Node("group", children=(inner,))
        if p == "[":
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect("]")
            return Node("comm", children=(left, right))
        name = m.group("name")
        if name is None:
            self.error("unexpected token")
        if name in _SPEC_FUNCS:
            spec = self.raw_bracket()
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Node(name, spec, (inner,))
        if name == "loop":
            return Node("loop", self.raw_bracket())
        nxt = self.peek()
        if name in _FUNCS and nxt is not None and nxt.group("punct") == "(":
            self.next()
            inner = self.expr()
            self.expect(")")
            return Node(name, children=(inner,))
        return Node("sym", name)


_PARSE_CACHE: dict[str, Node] = {}


def parse_expr(text: str) -> Node:
    node = _PARSE_CACHE.get(text)
    if node is None:
        node = _Parser(text).parse()
        _PARSE_CACHE[text] = node
    return node


# -- evaluation ----------------------------------------------------------------------

DOMAINS = ("base", "plus", "rs")
_SYMBOL = re.compile(r"([A-Za-z]+?)(\d+)(?:_(\d+))?")


@dataclass
class Value:
    domain: str
    word: Word


class EvalContext:
    """Resolves symbols and functions for one surface."""

    def __init__(self, kind: SurfaceKind, tables: Callable | None = None):
        self.kind = kind
        self.tables = tables  # (name, level, direction) -> callable(Word) -> Word
        self._cache: dict = {}

    # domain plumbing
    def alphabet(self, domain: str):
        if domain == "base":
            return base_alphabet(self.kind)
        if domain == "plus":
            return plus_alphabet(self.kind)
        if domain == "rs":
            from .plus import rs_generators

            return rs_generators(self.kind).alphabet
        raise ExprError(f"unknown domain {domain!r}")

    def to_base(self, v: Value) -> Word:
        from .plus import expand_plus, rs_generators

        if v.domain == "base":
            return v.word
        if v.domain == "plus":
            return expand_plus(v.word, self.kind)
        return rs_generators(self.kind).expand(v.word)

    def combine(self, a: Value, b: Value) -> Value:
        if a.domain == b.domain:
            return Value(a.domain, mul(a.word, b.word))
        return Value("base", mul(self.to_base(a), self.to_base(b)))

    # symbols
    def symbol(self, domain: str, name: str) -> Word:
        key = (domain, name)
        w = self._cache.get(key)
        if w is None:
            w = self._resolve(domain, name)
            self._cache[key] = w
        return w

    def _resolve(self, domain: str, name: str) -> Word:
        from .plus import pair_word, plus_y, plus_z

        kind = self.kind
        if name == "R":
            if domain != "base" or relator_word(kind) is None:
                raise ExprError("R is only defined for closed surfaces in the base domain")
            return relator_word(kind)
        m = _SYMBOL.fullmatch(name)
        if not m:
            raise UnknownSymbol(f"cannot read symbol {name!r}")
        fam, i = m.group(1), int(m.group(2))
        j = int(m.group(3)) if m.group(3) else None
        A = self.alphabet(domain)
        try:
            if domain == "base" and kind.orientable:
                if fam in ("a", "b") and j is None:
                    return A.generator(sym(fam, i))
                if fam in ("c", "gamma") and j is None:
                    return gamma_loop(kind, i)
                if fam == "delta":
                    return canonical_loop(kind, f"delta({i})")
                if fam == "eps":
                    return canonical_loop(kind, f"epsilon({i})")
            elif domain == "base":
                if fam == "x" and j is None:
                    return A.generator(sym("x", i))
                if fam == "y" and j is None:
                    return y_loop(kind, i)
                if fam == "z" and j is None:
                    return z_loop(kind, i)
                if fam == "X" and j is not None:
                    return canonical_loop(kind, f"xpair({i},{j})")
            elif domain == "plus":
                if fam == "X" and j is not None:
                    return pair_word(kind, i, j)
                if fam == "y" and j is None:
                    return plus_y(kind, i)
                if fam == "z" and j is None:
                    return plus_z(kind, i)
            else:
                if fam in ("u", "v", "y", "z") and j is None:
                    return A.generator(sym(fam, i))
        except (KeyError, ValueError) as e:
            if isinstance(e, IndexOutOfRange):
                raise
            raise IndexOutOfRange(f"{name} is out of range for {kind} ({domain})") from None
        raise UnknownSymbol(f"{name!r} is not a {domain} symbol for {kind}")

    # evaluation
    def evaluate(self, text: str, env: dict[str, int], domain: str) -> Value:
        full = {"g": self.kind.g, "n": self.kind.n}
        full.update(env)
        return self._eval(parse_expr(text), full, domain)

    def _eval(self, node: Node, env: dict, domain: str) -> Value:
        v = self._eval_atom(node, env, domain)
        if node.power is not None:
            k = int(fill(node.power, env)) if "{" in node.power else int(node.power)
            w = v.word if k >= 0 else inv(v.word)
            out = w.alphabet.identity()
            for _ in range(abs(k)):
                out = mul(out, w)
            v = Value(v.domain, out)
        return v

    def _eval_atom(self, node: Node, env: dict, domain: str) -> Value:
        kind = node.kind
        if kind == "seq":
            return self._product((self._eval(c, env, domain) for c in node.children), domain)
        if kind in ("group", "S"):
            return self._eval(node.children[0], env, domain)
        if kind in DOMAINS:
            return self._eval(node.children[0], env, kind)
        if kind == "comm":
            a = self._eval(node.children[0], env, domain)
            b = self._eval(node.children[1], env, domain)
            ia = Value(a.domain, inv(a.word))
            ib = Value(b.domain, inv(b.word))
            return self.combine(self.combine(a, b), self.combine(ia, ib))
        if kind == "sym":
            return Value(domain, self.symbol(domain, fill(node.value, env)))
        if kind == "loop":
            return Value("base", canonical_loop(self.kind, fill(node.value, env)))
        if kind in ("phi", "psi"):
            from .plus import iso_pair

            pair = iso_pair(self.kind)
            if kind == "phi":
                arg = self._eval(node.children[0], env, "plus")
                return Value("rs", pair.apply_phi(self._require(arg, "plus")))
            arg = self._eval(node.children[0], env, "rs")
            return Value("plus", pair.apply_psi(self._require(arg, "rs")))
        if kind == "act":
            spec = fill(node.value, env)
            name, _, direction = spec.partition(":")
            level = "pi" if domain == "base" else "pi_plus"
            if self.tables is None:
                raise ExprError("no action tables available in this context")
            arg = self._eval(node.children[0], env, domain)
            fn = self.tables(name.strip(), level, direction.strip() or "fwd")
            return Value(domain, fn(self._require(arg, domain)))
        if kind in ("prod", "rprod"):
            m = re.fullmatch(r"\s*([a-z]\w*)\s*=\s*(.+?)\s*\.\.\s*(.+?)\s*", node.value)
            if not m:
                raise ExprError(f"bad product range {node.value!r}")
            var = m.group(1)
            lo, hi = int_eval(m.group(2), env), int_eval(m.group(3), env)
            rng = range(lo, hi + 1) if kind == "prod" else range(hi, lo - 1, -1)
            return self._product((self._eval(node.children[0], {**env, var: t}, domain) for t in rng), domain)
        raise ExprError(f"unknown node {kind}")

    def _product(self, values, domain: str) -> Value:
        # start from the first factor so a lone factor keeps its own domain
        acc = None
        for v in values:
            acc = v if acc is None else self.combine(acc, v)
        return acc if acc is not None else Value(domain, self.alphabet(domain).identity())

    def _require(self, v: Value, domain: str) -> Word:
        if v.domain != domain:
            raise ExprError(f"expected a {domain} word, got a {v.domain} word")
        return v.word


def parse_word_expr(text: str, kind: SurfaceKind, domain: str = "base", env: dict | None = None) -> Word:
    """Convenience: evaluate an expression and return its word in ``domain``."""
    ctx = EvalContext(kind)
    v = ctx.evaluate(text, env or {}, domain)
    if v.domain != domain:
        return ctx.to_base(v)
    return v.word


__all__ = [
    "EvalContext",
    "ExprError",
    "Node",
    "Value",
    "fill",
    "int_eval",
    "parse_expr",
    "parse_word_expr",
    "WordParseError",
]
