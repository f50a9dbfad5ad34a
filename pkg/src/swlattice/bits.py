"""Lazy binary sequences over Cantor space, with fuel-bounded evaluation.

A stream is an immutable descriptor; bits are computed on demand.  Every
query runs under a step budget ("fuel").  Each (stream, index) pair has a
fixed canonical cost, and a query converges exactly when that cost fits in
the budget, so outcomes are deterministic and monotone in fuel.  Memo
caches record (bit, cost) pairs; they speed up repeated queries without
changing any outcome.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import isqrt


# ---------------------------------------------------------------------------
# Pairing codecs


def pair_nat(x: int, y: int) -> int:
    """Cantor pairing: (x+y)(x+y+1)/2 + y."""
    if x < 0 or y < 0:
        raise ValueError("pair_nat requires naturals")
    s = x + y
    return s * (s + 1) // 2 + y


def unpair_nat(z: int) -> tuple[int, int]:
    """Exact inverse of pair_nat."""
    if z < 0:
        raise ValueError("unpair_nat requires a natural")
    w = (isqrt(8 * z + 1) - 1) // 2
    t = w * (w + 1) // 2
    y = z - t
    return w - y, y


def triple_nat(n: int, s: int, i: int) -> int:
    """Right-nested triple code <n, <s, i>> with i < 2."""
    if i not in (0, 1):
        raise ValueError("triple_nat: third component must be a bit")
    return pair_nat(n, pair_nat(s, i))


def decode_triple(m: int):
    """Decode m as (n, s, i) with i < 2, or None if m is not such a code."""
    n, r = unpair_nat(m)
    s, i = unpair_nat(r)
    if i > 1:
        return None
    return n, s, i


# ---------------------------------------------------------------------------
# Fuel


class OutOfFuel(Exception):
    """Internal signal: the running evaluation exceeded its budget."""


@dataclass(frozen=True)
class Diverged:
    """Query outcome: no convergence within the step budget."""

    spent: int


class EvalContext:
    """Mutable step counter for one evaluation."""

    __slots__ = ("budget", "spent")

    def __init__(self, budget: int):
        self.budget = budget
        self.spent = 0

    def charge(self, amount: int = 1) -> None:
        self.spent += amount
        if self.spent > self.budget:
            raise OutOfFuel(self.spent)

    def exhaust(self) -> None:
        """Deliberate divergence (e.g. a detected malformed input)."""
        self.spent = self.budget + 1
        raise OutOfFuel(self.spent)


# ---------------------------------------------------------------------------
# Streams

_serial = itertools.count()


class BitStream:
    """Base class for stream descriptors.

    Subclasses implement _compute(n, ctx), which must charge the bit's
    canonical cost to ctx and return 0 or 1.  Concurrent queries are safe:
    descriptors never mutate, and the memo only caches pure results.
    """

    __slots__ = ("uid", "_memo")

    def __init__(self):
        self.uid = next(_serial)
        self._memo: dict[int, tuple[int, int]] = {}

    def bit(self, n: int, ctx: EvalContext) -> int:
        hit = self._memo.get(n)
        if hit is not None:
            ctx.charge(hit[1])
            return hit[0]
        mark = ctx.spent
        b = self._compute(n, ctx)
        self._memo[n] = (b, ctx.spent - mark)
        return b

    def _compute(self, n: int, ctx: EvalContext) -> int:
        raise NotImplementedError

    # Conservative descriptor-level reasoning, used by the completion layer.

    def provably_total(self) -> bool:
        """True only if every bit of this stream certainly converges."""
        return False

    def provably_partial(self) -> bool:
        """True only if some bit of this stream certainly diverges."""
        return False

    def resolve_structure(self, ctx: EvalContext) -> "BitStream":
        """Chase cheap indirections (dispatch resolution etc.) for diagnostics."""
        return self

    def describe(self) -> str:
        return f"<stream #{self.uid}>"


class EventuallyConstant(BitStream):
    """A finite prefix followed by a constant tail bit."""

    __slots__ = ("prefix", "tail")

    def __init__(self, prefix: str, tail: int):
        if any(c not in "01" for c in prefix) or tail not in (0, 1):
            raise ValueError("prefix must be a 0/1 string and tail a bit")
        super().__init__()
        self.prefix = prefix
        self.tail = tail

    def _compute(self, n, ctx):
        ctx.charge(1)
        if n < len(self.prefix):
            return int(self.prefix[n])
        return self.tail

    def provably_total(self):
        return True

    def describe(self):
        return f'ec("{self.prefix}",{self.tail})'


class Interleave(BitStream):
    """r(2n) = left(n), r(2n+1) = right(n)."""

    __slots__ = ("left", "right")

    def __init__(self, left: BitStream, right: BitStream):
        super().__init__()
        self.left = left
        self.right = right

    def _compute(self, n, ctx):
        ctx.charge(1)
        child = self.left if n % 2 == 0 else self.right
        return child.bit(n // 2, ctx)

    def provably_total(self):
        return self.left.provably_total() and self.right.provably_total()

    def provably_partial(self):
        return self.left.provably_partial() or self.right.provably_partial()

    def describe(self):
        return f"interleave({self.left.describe()},{self.right.describe()})"


class Tagged(BitStream):
    """interleave(chi, body) where chi is the characteristic function of {tag}."""

    __slots__ = ("tag", "body")

    def __init__(self, tag: int, body: BitStream):
        if tag not in (0, 1):
            raise ValueError("tag must be a bit")
        super().__init__()
        self.tag = tag
        self.body = body

    def _compute(self, n, ctx):
        ctx.charge(1)
        if n % 2 == 0:
            return 1 if n // 2 == self.tag else 0
        return self.body.bit(n // 2, ctx)

    def provably_total(self):
        return self.body.provably_total()

    def provably_partial(self):
        return self.body.provably_partial()

    def describe(self):
        return f"tag{self.tag}({self.body.describe()})"


class Projected(BitStream):
    """One parity track of a stream: bit(n) = base(2n + side)."""

    __slots__ = ("base", "side")

    def __init__(self, base: BitStream, side: int):
        super().__init__()
        self.base = base
        self.side = side

    def _compute(self, n, ctx):
        ctx.charge(1)
        return self.base.bit(2 * n + self.side, ctx)

    def provably_total(self):
        return self.base.provably_total()

    def resolve_structure(self, ctx):
        base = self.base.resolve_structure(ctx)
        node = project(base, self.side)
        if node is self:
            return self
        return node.resolve_structure(ctx)

    def describe(self):
        return f"project{self.side}({self.base.describe()})"


class FiniteTable(BitStream):
    """Explicit finite set of one-bits; everything else is zero."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict[int, int]):
        super().__init__()
        self.entries = {k: v for k, v in entries.items() if v == 1}

    def _compute(self, n, ctx):
        ctx.charge(1)
        return self.entries.get(n, 0)

    def provably_total(self):
        return True

    def describe(self):
        keys = ",".join(str(k) for k in sorted(self.entries))
        return f"table[{keys}]"


# Shared constants.
ZEROS = EventuallyConstant("", 0)
ONES = EventuallyConstant("", 1)


# ---------------------------------------------------------------------------
# Constructors with structural simplification

_interleave_cache: dict[tuple[int, int], Interleave] = {}
_tag_cache: dict[tuple[int, int], Tagged] = {}
_project_cache: dict[tuple[int, int], BitStream] = {}


def interleave(p: BitStream, q: BitStream) -> BitStream:
    key = (p.uid, q.uid)
    node = _interleave_cache.get(key)
    if node is None:
        node = _interleave_cache[key] = Interleave(p, q)
    return node


def tag(i: int, p: BitStream) -> BitStream:
    key = (i, p.uid)
    node = _tag_cache.get(key)
    if node is None:
        node = _tag_cache[key] = Tagged(i, p)
    return node


def chi(i: int) -> BitStream:
    """Characteristic function of {i} as a stream."""
    return EventuallyConstant("1" if i == 0 else "01", 0)


def project(r: BitStream, side: int) -> BitStream:
    if side not in (0, 1):
        raise ValueError("side must be a bit")
    if isinstance(r, Interleave):
        return r.left if side == 0 else r.right
    if isinstance(r, Tagged):
        return chi(r.tag) if side == 0 else r.body
    key = (r.uid, side)
    node = _project_cache.get(key)
    if node is None:
        node = _project_cache[key] = Projected(r, side)
    return node


class MalformedTag(Exception):
    """The even track of a stream matches neither tag pattern."""


TAG_WINDOW = 8  # even bits inspected when recovering a tag


def untag(r: BitStream, fuel: int = 10**4, window: int = TAG_WINDOW):
    """Recover (tag, body) from a tagged stream.

    Returns Diverged if the inspected bits cannot be computed in fuel;
    raises MalformedTag on a definite pattern mismatch.
    """
    ctx = EvalContext(fuel)
    try:
        first = r.bit(0, ctx)
        if first == 1:
            t = 0
            rest = range(1, window)
        else:
            if r.bit(2, ctx) != 1:
                raise MalformedTag("even track starts 00")
            t = 1
            rest = range(2, window)
        for k in rest:
            if k == t:
                continue
            if r.bit(2 * k, ctx) != 0:
                raise MalformedTag(f"unexpected one at even position {2 * k}")
    except OutOfFuel:
        return Diverged(fuel)
    return t, project(r, 1)


# ---------------------------------------------------------------------------
# Queries


def query(p: BitStream, n: int, fuel: int):
    """The n-th bit of p, or Diverged(fuel) if it cannot be computed."""
    ctx = EvalContext(fuel)
    try:
        return p.bit(n, ctx)
    except OutOfFuel:
        return Diverged(fuel)


def prefix(p: BitStream, length: int, fuel: int = 10**6):
    """The first `length` bits as a 0/1 string (index order), or Diverged."""
    out = []
    for n in range(length):
        b = query(p, n, fuel)
        if isinstance(b, Diverged):
            return b
        out.append("01"[b])
    return "".join(out)


def agree(p: BitStream, q: BitStream, length: int, fuel: int = 10**6) -> bool:
    """True when p and q converge and coincide on the first `length` bits."""
    a = prefix(p, length, fuel)
    b = prefix(q, length, fuel)
    return not isinstance(a, Diverged) and a == b
