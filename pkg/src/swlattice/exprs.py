"""Textual expression grammar for streams and functionals.

Stream expressions:

    S ::= const0 | const1 | ec("PREFIX", BIT)
        | interleave(S, S) | tag0(S) | tag1(S) | project0(S) | project1(S)
        | untag(S) | e(S) | approx(F, S) | apply(F, S)

Functional expressions:

    F ::= id | eval | tag0 | tag1 | project0 | project1 | factor
        | const(S) | compose(F, F) | pair(F, F) | dispatch(F, F)
        | approx(F) | table("KEY":"OUT", ..., use=N)

Functional.expr() emits exactly this grammar, so witnesses print and parse
back to themselves.
"""

from __future__ import annotations

import re

from .bits import BitStream, EventuallyConstant, ZEROS, ONES, interleave, project, tag
from .functionals import (
    Compose,
    Constant,
    Dispatch,
    DispatchNode,
    Factor,
    Functional,
    IDENTITY,
    PairOf,
    ProjectSide,
    TagWith,
    apply,
    from_prefix_table,
)
from .approx import EVAL, ApproxOf, approx_of, eval_stream


class ParseError(Exception):
    pass


_TOKEN = re.compile(r'\s*(?:(\d+)|("(?:[01]*)")|([A-Za-z_][A-Za-z0-9_]*)|([(),:=]))')


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
            break
        number, string, name, punct = m.groups()
        if number is not None:
            out.append(("num", int(number)))
        elif string is not None:
            out.append(("str", string[1:-1]))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("punct", punct))
        pos = m.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1]!r}")
        return tok

    def done(self):
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input at {self.peek()[1]!r}")

    # Streams -------------------------------------------------------------

    def stream(self) -> BitStream:
        kind, val = self.next()
        if kind != "name":
            raise ParseError(f"expected a stream expression, got {val!r}")
        if val == "const0":
            return ZEROS
        if val == "const1":
            return ONES
        if val == "ec":
            self.expect("punct", "(")
            bits = self.expect("str")[1]
            self.expect("punct", ",")
            tail = self.expect("num")[1]
            self.expect("punct", ")")
            return EventuallyConstant(bits, tail)
        if val == "interleave":
            a, b = self._two(self.stream)
            return interleave(a, b)
        if val in ("tag0", "tag1"):
            return tag(int(val[-1]), self._one(self.stream))
        if val in ("project0", "project1"):
            return project(self._one(self.stream), int(val[-1]))
        if val == "untag":
            # verify the tag, then pass the body through
            return DispatchNode(IDENTITY, IDENTITY, self._one(self.stream))
        if val == "e":
            return eval_stream(self._one(self.stream))
        if val == "approx":
            self.expect("punct", "(")
            fn = self.functional()
            self.expect("punct", ",")
            s = self.stream()
            self.expect("punct", ")")
            return approx_of(fn, s)
        if val == "apply":
            self.expect("punct", "(")
            fn = self.functional()
            self.expect("punct", ",")
            s = self.stream()
            self.expect("punct", ")")
            return apply(fn, s)
        raise ParseError(f"unknown stream operator {val!r}")

    # Functionals ----------------------------------------------------------

    def functional(self) -> Functional:
        kind, val = self.next()
        if kind != "name":
            raise ParseError(f"expected a functional expression, got {val!r}")
        if val == "id":
            return IDENTITY
        if val == "eval":
            return EVAL
        if val in ("tag0", "tag1"):
            return TagWith(int(val[-1]))
        if val in ("project0", "project1"):
            return ProjectSide(int(val[-1]))
        if val == "factor":
            return Factor()
        if val == "const":
            return Constant(self._one(self.stream))
        if val == "compose":
            a, b = self._two(self.functional)
            return Compose(a, b)
        if val in ("pair", "interleave"):
            a, b = self._two(self.functional)
            return PairOf(a, b)
        if val == "dispatch":
            a, b = self._two(self.functional)
            return Dispatch(a, b)
        if val in ("approx", "approx_of"):
            return ApproxOf(self._one(self.functional))
        if val == "table":
            return self._table()
        raise ParseError(f"unknown functional operator {val!r}")

    def _table(self) -> Functional:
        self.expect("punct", "(")
        entries = {}
        use = None
        while True:
            kind, val = self.next()
            if kind == "str":
                self.expect("punct", ":")
                out = self.expect("str")[1]
                entries[val] = out
            elif kind == "name" and val == "use":
                self.expect("punct", "=")
                use = self.expect("num")[1]
            else:
                raise ParseError(f"bad table item {val!r}")
            kind, val = self.next()
            if val == ")":
                break
            if val != ",":
                raise ParseError(f"expected , or ) in table, got {val!r}")
        if use is None:
            raise ParseError("table needs use=N")
        return from_prefix_table(entries, use)

    def _one(self, sub):
        self.expect("punct", "(")
        item = sub()
        self.expect("punct", ")")
        return item

    def _two(self, sub):
        self.expect("punct", "(")
        a = sub()
        self.expect("punct", ",")
        b = sub()
        self.expect("punct", ")")
        return a, b


def parse_stream(text: str) -> BitStream:
    p = _Parser(text)
    node = p.stream()
    p.done()
    return node


def parse_functional(text: str) -> Functional:
    p = _Parser(text)
    fn = p.functional()
    p.done()
    return fn
