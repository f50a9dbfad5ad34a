"""Monotone approximations and the evaluation functional.

A stream is read as a set of members: the indices holding a one-bit.  It
is a well-formed approximation when every member decodes as <n, s, i> with
i < 2, no n carries two members, and stages grow strictly with n.  The
encoder turns any oracle computation into such a stream by listing first
convergences; the evaluation functional inverts the encoding by probing
candidate members stage by stage while validating a growing window of the
literal prefix, and diverges when the input is malformed or non-total.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .bits import (
    BitStream,
    Diverged,
    EvalContext,
    EventuallyConstant,
    FiniteTable,
    OutOfFuel,
    decode_triple,
    query,
    triple_nat,
)
from .functionals import (
    Functional,
    MachineFunctional,
    apply,
    ladder_budget,
    prefix_cost,
)

VALID = "valid"

# The validator window of the evaluation search grows affinely with the
# probed stage; a violation anywhere in the window forces divergence.
EVAL_WINDOW_BASE = 64
EVAL_WINDOW_SLOPE = 4


@dataclass(frozen=True)
class Violation:
    index: int
    clause: int


def check_prefix_valid(p: BitStream, k: int, fuel: int = 10**6):
    """VALID, or the first Violation among member indices below k.

    Returns Diverged when some bit below k cannot be computed in fuel.
    """
    members: dict[int, tuple[int, int, int]] = {}
    for m in range(k):
        b = query(p, m, fuel)
        if isinstance(b, Diverged):
            return b
        if b == 0:
            continue
        d = decode_triple(m)
        if d is None:
            return Violation(m, 1)
        n, s, i = d
        for n2, s2, i2 in members.values():
            if n2 == n:
                return Violation(m, 2)
            if (n2 < n and s2 >= s) or (n2 > n and s2 <= s):
                return Violation(m, 3)
        members[m] = (n, s, i)
    return VALID


# ---------------------------------------------------------------------------
# Encoded approximations


class EncodedApprox(BitStream):
    """First-convergence record of a functional on an oracle.

    Index <n, s, i> is a member exactly when output n first converges at
    stage s with bit i.  Bits at non-code indices are zero.
    """

    __slots__ = ("functional", "oracle", "_probe_notes")

    def __init__(self, functional: Functional, oracle: BitStream):
        super().__init__()
        self.functional = functional
        self.oracle = oracle
        # n -> ("ok", cost, bit) or ("fail", highest cap that still failed);
        # bounded probes are monotone in the cap, so notes never lie.
        self._probe_notes: dict[int, tuple] = {}

    def _compute(self, m, ctx):
        ctx.charge(2)
        d = decode_triple(m)
        if d is None:
            return 0
        n, s, i = d
        f = self.functional
        if isinstance(f, MachineFunctional):
            machine = apply(f, self.oracle).machine
            while n >= len(machine.released) and machine.stage <= s:
                if machine.poisoned or machine.cum > ctx.budget:
                    ctx.exhaust()
                machine.advance(ctx.budget)
            if n < len(machine.released):
                rec = machine.released[n]
                if rec.stage <= s:
                    ctx.charge(rec.cum)
                    return 1 if (rec.stage == s and rec.bit == i) else 0
            # stages 0..s complete without releasing n
            ctx.charge(machine.cum)
            return 0
        if f.presumed_total:
            # Canonical schedule: output n first converges at stage n.
            if s != n:
                return 0
            out = apply(f, self.oracle)
            bit = 0
            for j in range(n + 1):
                ctx.charge(1)
                bit = out.bit(j, ctx)
            return 1 if bit == i else 0
        # Fuel-ladder schedule: membership stays decidable even when the
        # underlying computation diverges, because every probe is a bounded
        # run.  Output n sits at stage n + L for the least sufficient rung L.
        if s < n:
            return 0
        level = s - n
        cap = ladder_budget(level)
        if cap > ctx.budget + 1:
            cap = ctx.budget + 1
            capped = True
        else:
            capped = False
        note = self._probe_notes.get(n)
        if note is not None and note[0] == "ok":
            got = (note[1], note[2])
        elif note is not None and note[0] == "fail" and cap <= note[1]:
            got = None
        else:
            got = prefix_cost(apply(f, self.oracle), n, cap)
            if got is None:
                if note is None or note[1] < cap:
                    self._probe_notes[n] = ("fail", cap)
            else:
                self._probe_notes[n] = ("ok", got[0], got[1])
        if got is None:
            if capped:
                ctx.exhaust()  # cannot classify within this query's budget
            ctx.charge(cap)
            return 0
        cost, bit = got
        if cost > cap:
            if capped:
                ctx.exhaust()
            ctx.charge(cap)
            return 0
        ctx.charge(cost)
        if level > 0 and cost <= ladder_budget(level - 1):
            return 0  # already converged at an earlier rung
        return 1 if bit == i else 0

    def provably_total(self):
        # Reads converge on a total oracle, and fuel-ladder probes are
        # bounded runs, so the record stream itself is then total.
        return self.oracle.provably_total()

    def describe(self):
        return f"approx({self.functional.expr()},{self.oracle.describe()})"


_approx_cache: dict[tuple[int, int], EncodedApprox] = {}


def approx_of(functional: Functional, oracle: BitStream) -> EncodedApprox:
    """The canonical approximation stream of a computation.

    Interned per (functional, oracle): equal arguments give the same node,
    hence bitwise-equal results.
    """
    key = (functional.uid, oracle.uid)
    node = _approx_cache.get(key)
    if node is None:
        node = _approx_cache[key] = EncodedApprox(functional, oracle)
    return node


class ApproxOf(Functional):
    """q -> the approximation stream of F on q."""

    def __init__(self, inner: Functional):
        super().__init__()
        self.inner = inner

    def expr(self):
        return f"approx({self.inner.expr()})"

    def output_node(self, oracle):
        return approx_of(self.inner, oracle)

    @property
    def presumed_total(self):
        # Encoding any computation yields a total record on total oracles.
        return True


# ---------------------------------------------------------------------------
# Scheduled approximations


class ScheduledApprox(BitStream):
    """Members <n, start+n, q(n)> for every n: a total approximation of q."""

    __slots__ = ("target", "start")

    def __init__(self, target: BitStream, start: int):
        super().__init__()
        self.target = target
        self.start = start

    def _compute(self, m, ctx):
        ctx.charge(2)
        d = decode_triple(m)
        if d is None:
            return 0
        n, s, i = d
        if s != self.start + n:
            return 0
        return 1 if self.target.bit(n, ctx) == i else 0

    def provably_total(self):
        return self.target.provably_total()

    def describe(self):
        return f"sched({self.target.describe()},{self.start})"


_sched_cache: dict[tuple[int, int], ScheduledApprox] = {}


def make_total_approx(q: BitStream, min_member: int, fuel: int = 10**5) -> ScheduledApprox:
    """A total approximation of q all of whose members exceed min_member."""
    q0 = query(q, 0, fuel)
    if isinstance(q0, Diverged):
        raise ValueError("make_total_approx requires q(0) to converge")
    start = 0
    while triple_nat(0, start, q0) <= min_member:
        start += 1
    key = (q.uid, start)
    node = _sched_cache.get(key)
    if node is None:
        node = _sched_cache[key] = ScheduledApprox(q, start)
    return node


# ---------------------------------------------------------------------------
# The evaluation functional


class EvalSearch(BitStream):
    """Decode of an approximation stream.

    Bit n probes candidate members <n, s, i> for s = 0, 1, ... while a
    validation window over the literal prefix grows with s; any detected
    clause violation, or the absence of a member, means divergence.
    """

    __slots__ = ("source",)

    def __init__(self, source: BitStream):
        super().__init__()
        self.source = source

    def _compute(self, n, ctx):
        a = self.source
        members: dict[int, tuple[int, int]] = {}

        def admit(t, s, i):
            prev = members.get(t)
            if prev is not None:
                if prev != (s, i):
                    ctx.exhaust()  # two records for one output
                return
            for t2, (s2, _) in members.items():
                if (t2 < t and s2 >= s) or (t2 > t and s2 <= s):
                    ctx.exhaust()  # stages must grow with the index
            members[t] = (s, i)

        validated = 0
        s = 0
        while True:
            hit = None
            for i in (0, 1):
                ctx.charge(1)
                if a.bit(triple_nat(n, s, i), ctx) == 1:
                    if hit is not None:
                        ctx.exhaust()
                    hit = (s, i)
            bound = EVAL_WINDOW_BASE + EVAL_WINDOW_SLOPE * s
            while validated < bound:
                m = validated
                ctx.charge(1)
                if a.bit(m, ctx) == 1:
                    d = decode_triple(m)
                    if d is None:
                        ctx.exhaust()  # member outside the code set
                    admit(*d)
                validated += 1
            if hit is not None:
                admit(n, hit[0], hit[1])
                return hit[1]
            s += 1

    def provably_partial(self):
        return totality_by_descriptor(self.source) is Totality.NOT_TOTAL

    def describe(self):
        return f"e({self.source.describe()})"


class PrefixClosed(BitStream):
    """bit n converges only when bits 0..n of the carrier all converge.

    This is the decode of an encoded record: the search finds output n only
    after every earlier output has been recorded.
    """

    __slots__ = ("carrier",)

    def __init__(self, carrier: BitStream):
        super().__init__()
        self.carrier = carrier

    def _compute(self, n, ctx):
        if self.carrier.provably_total():
            ctx.charge(1)
            return self.carrier.bit(n, ctx)
        bit = 0
        for j in range(n + 1):
            ctx.charge(1)
            bit = self.carrier.bit(j, ctx)
        return bit

    def provably_total(self):
        return self.carrier.provably_total()

    def describe(self):
        return f"eclosure({self.carrier.describe()})"


_search_cache: dict[int, EvalSearch] = {}
_closure_cache: dict[int, BitStream] = {}


def eval_search(a: BitStream) -> EvalSearch:
    """The evaluation functional as its literal search algorithm."""
    node = _search_cache.get(a.uid)
    if node is None:
        node = _search_cache[a.uid] = EvalSearch(a)
    return node


def prefix_closed(u: BitStream) -> BitStream:
    if u.provably_total():
        return u
    node = _closure_cache.get(u.uid)
    if node is None:
        node = _closure_cache[u.uid] = PrefixClosed(u)
    return node


def _chase(a: BitStream) -> BitStream:
    """Resolve cheap indirections (dispatch, realizer lookup, projections)."""
    from .bits import EvalContext, OutOfFuel

    ctx = EvalContext(512)
    try:
        return a.resolve_structure(ctx)
    except OutOfFuel:
        return a


def eval_stream(a: BitStream) -> BitStream:
    """Decode a claimed approximation.

    Encoded and scheduled records are valid by construction, so their
    decode reduces structurally to the prefix-closure of the recorded
    stream; the search engine handles everything else.  The two routes are
    extensionally equal on the structured sources and are cross-checked in
    the test suite.
    """
    node = _chase(a)
    if isinstance(node, EncodedApprox):
        return prefix_closed(apply(node.functional, node.oracle))
    if isinstance(node, ScheduledApprox):
        return prefix_closed(node.target)
    return eval_search(node)


class EvalFunctional(Functional):
    def expr(self):
        return "eval"

    def output_node(self, oracle):
        return eval_stream(oracle)


EVAL = EvalFunctional()


# ---------------------------------------------------------------------------
# Descriptor-level totality


class Totality(Enum):
    TOTAL = "total"
    NOT_TOTAL = "not_total"
    UNKNOWN = "unknown"


def totality_by_descriptor(a: BitStream) -> Totality:
    """Decide totality as an approximation from the descriptor alone.

    TOTAL / NOT_TOTAL only when the structure proves it; anything built
    from opaque parts stays UNKNOWN.
    """
    if isinstance(a, EventuallyConstant):
        # A constant-zero tail leaves only finitely many members.
        return Totality.NOT_TOTAL if a.tail == 0 else Totality.UNKNOWN
    if isinstance(a, FiniteTable):
        return Totality.NOT_TOTAL
    if isinstance(a, ScheduledApprox):
        return Totality.TOTAL if a.target.provably_total() else Totality.UNKNOWN
    if isinstance(a, EncodedApprox):
        if a.functional.presumed_total and a.oracle.provably_total():
            return Totality.TOTAL
        if a.functional.output_provably_partial(a.oracle):
            return Totality.NOT_TOTAL
        return Totality.UNKNOWN
    return Totality.UNKNOWN


def provenance(a: BitStream) -> str:
    if isinstance(a, EncodedApprox):
        return "encoded"
    if isinstance(a, ScheduledApprox):
        return "scheduled"
    return "raw"


def dump_members(a: BitStream, count: int, fuel: int = 10**6, stage_limit: int = 2048):
    """Members (n, s, i) for n < count, probing stages up to stage_limit.

    Stops at the first n whose member cannot be located; the CLI renders
    each entry as a line "n s i".
    """
    out = []
    for n in range(count):
        found = None
        ctx = EvalContext(fuel)
        try:
            for s in range(stage_limit):
                for i in (0, 1):
                    if a.bit(triple_nat(n, s, i), ctx) == 1:
                        found = (n, s, i)
                        break
                if found:
                    break
        except OutOfFuel:
            break
        if not found:
            break
        out.append(found)
    return out
