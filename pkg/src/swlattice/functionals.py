"""Stage-indexed oracle functionals with use tracking.

Two families share one interface.  Machine functionals run a raw step rule
under a release queue that enforces the normalization discipline: outputs
converge in index order, at most one per stage, and every release records
the oracle prefix length actually inspected (the use).  Combinator
functionals (identity, constants, pairing, dispatch, composition, ...)
apply structurally; their canonical trace converges output n at stage n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bits import (
    BitStream,
    EvalContext,
    OutOfFuel,
    chi,
    interleave,
    project,
    tag,
)

_fserial = itertools.count()


class Functional:
    """An oracle-to-stream computation, identified by its expression tree."""

    name = "functional"

    def __init__(self):
        self.uid = next(_fserial)

    def expr(self) -> str:
        """Serializable functional-expression text."""
        raise NotImplementedError

    def output_node(self, oracle: BitStream) -> BitStream:
        raise NotImplementedError

    @property
    def presumed_total(self) -> bool:
        """True only if the output is certainly total on total oracles."""
        return False

    def output_provably_partial(self, oracle: BitStream) -> bool:
        """True only if the output stream certainly has a divergent bit."""
        return False

    def __repr__(self):
        return f"<{type(self).__name__} {self.expr()}>"


_apply_cache: dict[tuple[int, int], BitStream] = {}


def apply(functional: Functional, oracle: BitStream) -> BitStream:
    """The output stream of a functional on an oracle.

    Results are interned per (functional, oracle), so equal applications
    share one node and one memo.
    """
    key = (functional.uid, oracle.uid)
    node = _apply_cache.get(key)
    if node is None:
        node = _apply_cache[key] = functional.output_node(oracle)
    return node


# ---------------------------------------------------------------------------
# Combinators


class Identity(Functional):
    def expr(self):
        return "id"

    def output_node(self, oracle):
        return oracle

    @property
    def presumed_total(self):
        return True

    def output_provably_partial(self, oracle):
        return oracle.provably_partial()


class Constant(Functional):
    """Ignores the oracle and emits a fixed stream (use 0)."""

    def __init__(self, stream: BitStream):
        super().__init__()
        self.stream = stream

    def expr(self):
        return f"const({self.stream.describe()})"

    def output_node(self, oracle):
        return self.stream

    @property
    def presumed_total(self):
        return self.stream.provably_total()

    def output_provably_partial(self, oracle):
        return self.stream.provably_partial()


class TagWith(Functional):
    def __init__(self, i: int):
        super().__init__()
        self.i = i

    def expr(self):
        return f"tag{self.i}"

    def output_node(self, oracle):
        return tag(self.i, oracle)

    @property
    def presumed_total(self):
        return True

    def output_provably_partial(self, oracle):
        return oracle.provably_partial()


class ProjectSide(Functional):
    def __init__(self, side: int):
        super().__init__()
        self.side = side

    def expr(self):
        return f"project{self.side}"

    def output_node(self, oracle):
        return project(oracle, self.side)

    @property
    def presumed_total(self):
        return True


class PairOf(Functional):
    """q -> <F(q), G(q)>."""

    def __init__(self, left: Functional, right: Functional):
        super().__init__()
        self.left = left
        self.right = right

    def expr(self):
        return f"pair({self.left.expr()},{self.right.expr()})"

    def output_node(self, oracle):
        return interleave(apply(self.left, oracle), apply(self.right, oracle))

    @property
    def presumed_total(self):
        return self.left.presumed_total and self.right.presumed_total

    def output_provably_partial(self, oracle):
        return self.left.output_provably_partial(oracle) or self.right.output_provably_partial(oracle)


class Compose(Functional):
    """outer after inner."""

    def __init__(self, outer: Functional, inner: Functional):
        super().__init__()
        self.outer = outer
        self.inner = inner

    def expr(self):
        return f"compose({self.outer.expr()},{self.inner.expr()})"

    def output_node(self, oracle):
        return apply(self.outer, apply(self.inner, oracle))

    @property
    def presumed_total(self):
        return self.outer.presumed_total and self.inner.presumed_total


class DispatchNode(BitStream):
    """Output of a tag-case split: behaves as F_i(body) once the tag is read."""

    __slots__ = ("zero", "one", "oracle")

    def __init__(self, zero: Functional, one: Functional, oracle: BitStream):
        super().__init__()
        self.zero = zero
        self.one = one
        self.oracle = oracle

    def _branch(self, ctx):
        if self.oracle.bit(0, ctx) == 1:
            branch = self.zero
        elif self.oracle.bit(2, ctx) == 1:
            branch = self.one
        else:
            ctx.exhaust()  # neither tag pattern: hang
        return apply(branch, project(self.oracle, 1))

    def _compute(self, n, ctx):
        ctx.charge(1)
        return self._branch(ctx).bit(n, ctx)

    def resolve_structure(self, ctx):
        return self._branch(ctx).resolve_structure(ctx)

    def provably_total(self):
        return _resolves_total(self)

    def describe(self):
        return f"dispatch#{self.uid}"


def _resolves_total(node) -> bool:
    """Totality of a node whose cheap prelude picks a concrete delegate."""
    if not node.oracle.provably_total():
        return False
    ctx = EvalContext(512)
    try:
        return node.resolve_structure(ctx).provably_total()
    except OutOfFuel:
        return False


class Dispatch(Functional):
    """<i, p> -> F_i(p)."""

    def __init__(self, zero: Functional, one: Functional):
        super().__init__()
        self.zero = zero
        self.one = one

    def expr(self):
        return f"dispatch({self.zero.expr()},{self.one.expr()})"

    def output_node(self, oracle):
        return DispatchNode(self.zero, self.one, oracle)


class FactorNode(BitStream):
    """<<i,x>,q> rewired to <i,<x,q>>."""

    __slots__ = ("oracle",)

    def __init__(self, oracle: BitStream):
        super().__init__()
        self.oracle = oracle

    def _tag(self, ctx):
        if self.oracle.bit(0, ctx) == 1:
            return 0
        if self.oracle.bit(4, ctx) == 1:
            return 1
        ctx.exhaust()

    def _compute(self, n, ctx):
        ctx.charge(1)
        if n % 2 == 0:
            return 1 if n // 2 == self._tag(ctx) else 0
        k = n // 2
        if k % 2 == 0:  # x component lives at oracle positions 4j+2
            return self.oracle.bit(2 * k + 2, ctx)
        return self.oracle.bit(k, ctx)  # q component at positions 2j+1

    def provably_total(self):
        if not self.oracle.provably_total():
            return False
        ctx = EvalContext(512)
        try:
            self._tag(ctx)
        except OutOfFuel:
            return False
        return True

    def describe(self):
        return f"factor#{self.uid}"


class Factor(Functional):
    def expr(self):
        return "factor"

    def output_node(self, oracle):
        return FactorNode(oracle)


# ---------------------------------------------------------------------------
# Machine functionals


class Tape:
    """Oracle access with memoized reads and a high-water use mark."""

    def __init__(self, oracle: BitStream):
        self.oracle = oracle
        self.read_bits: dict[int, int] = {}
        self._attempt: list[int] = []

    def begin(self):
        self._attempt = []

    def read(self, k: int, ctx: EvalContext) -> int:
        if k in self.read_bits:
            return self.read_bits[k]
        b = self.oracle.bit(k, ctx)
        self.read_bits[k] = b
        self._attempt.append(k)
        return b

    def rollback(self):
        # Aborted stage: drop its reads so a retry re-charges them in full.
        for k in self._attempt:
            del self.read_bits[k]
        self._attempt = []

    @property
    def high_water(self) -> int:
        return max(self.read_bits) + 1 if self.read_bits else 0


class TapeReader:
    """What a step rule sees: positional oracle reads, nothing else."""

    __slots__ = ("_tape", "_ctx")

    def __init__(self, tape: Tape, ctx: EvalContext):
        self._tape = tape
        self._ctx = ctx

    def __call__(self, k: int) -> int:
        return self._tape.read(k, self._ctx)


@dataclass(frozen=True)
class Release:
    bit: int
    stage: int
    use: int
    cum: int  # canonical cost through the releasing stage


class StageMachine:
    """Runs a raw rule stage by stage under the normalization discipline.

    A rule claims tentative convergences (index, bit).  Claims wait in a
    pending pool; at each stage the least index whose predecessors are all
    released may be released, one per stage.  Conflicting re-claims poison
    the machine, which then never converges again.
    """

    def __init__(self, rule, oracle: BitStream):
        self.rule = rule
        self.tape = Tape(oracle)
        self.stage = 0
        self.pending: dict[int, int] = {}
        self.released: list[Release] = []
        self.cum = 0
        self.poisoned = False

    def advance(self, limit: int):
        """Run one stage; its cost is measured against `limit` in isolation."""
        ctx = EvalContext(limit)
        self.tape.begin()
        try:
            ctx.charge(1)
            claims = list(self.rule(TapeReader(self.tape, ctx), self.stage))
        except OutOfFuel:
            self.tape.rollback()
            raise
        self.cum += ctx.spent
        for n, b in claims:
            if n < len(self.released):
                if self.released[n].bit != b:
                    self.poisoned = True
            elif n in self.pending:
                if self.pending[n] != b:
                    self.poisoned = True
            else:
                self.pending[n] = b
        nxt = len(self.released)
        if not self.poisoned and nxt in self.pending:
            b = self.pending.pop(nxt)
            self.released.append(Release(b, self.stage, self.tape.high_water, self.cum))
        self.stage += 1

    def run_until_released(self, n: int, ctx: EvalContext) -> Release:
        while True:
            if n < len(self.released):
                rec = self.released[n]
                ctx.charge(rec.cum)
                return rec
            if self.poisoned or self.cum > ctx.budget:
                ctx.exhaust()
            self.advance(ctx.budget)

    def run_until_stage(self, s: int, ctx: EvalContext):
        """Complete stages 0..s (inclusive); charge the cumulative cost."""
        while self.stage <= s:
            if self.poisoned or self.cum > ctx.budget:
                ctx.exhaust()
            self.advance(ctx.budget)


class MachineOutput(BitStream):
    """Output stream of a machine functional on a fixed oracle."""

    __slots__ = ("functional", "oracle", "machine")

    def __init__(self, functional: "MachineFunctional", oracle: BitStream):
        super().__init__()
        self.functional = functional
        self.oracle = oracle
        self.machine = StageMachine(functional.rule, oracle)

    def _compute(self, n, ctx):
        return self.machine.run_until_released(n, ctx).bit

    def describe(self):
        return f"apply({self.functional.expr()},{self.oracle.describe()})"


class MachineFunctional(Functional):
    def __init__(self, rule, name: str = "raw", expr_text: str | None = None):
        super().__init__()
        self.rule = rule
        self.name = name
        self._expr = expr_text or f"raw({name})"

    def expr(self):
        return self._expr

    def output_node(self, oracle):
        return MachineOutput(self, oracle)


def normalize(rule, name: str = "raw") -> Functional:
    """Wrap a raw step rule as a functional obeying the stage discipline."""
    return MachineFunctional(rule, name=name)


def scripted_rule(script: dict[int, list[tuple[int, int]]]):
    """A raw rule that claims fixed (index, bit) pairs at given stages."""

    def rule(read, stage):
        return script.get(stage, [])

    return rule


class InconsistentTable(Exception):
    """Two table entries overlap with conflicting outputs."""


def _merge_outputs(a: str, b: str) -> str:
    if len(a) < len(b):
        a, b = b, a
    if a[: len(b)] != b:
        raise InconsistentTable(f"outputs {a!r} and {b!r} disagree")
    return a


def from_prefix_table(entries: dict[str, str], use_bound: int, stage_schedule=None) -> Functional:
    """Finite truth-table functional: match an oracle prefix, emit its output.

    Output bits beyond the matched entry are zero, so the functional is
    total on matching oracles.  Non-matching oracles get no outputs at all.
    Keys longer than use_bound or conflicting entries are rejected.
    """
    table = dict(entries)
    for key in table:
        if len(key) > use_bound or any(c not in "01" for c in key):
            raise InconsistentTable(f"bad key {key!r} for use bound {use_bound}")
    keys = sorted(table)
    for i, a in enumerate(keys):
        for b in keys[i + 1 :]:
            if b.startswith(a):
                try:
                    _merge_outputs(table[a], table[b])
                except InconsistentTable:
                    raise InconsistentTable(f"keys {a!r} and {b!r} conflict")

    def rule(read, stage):
        matched: list[str] = []
        alive = list(table)
        depth = 0
        while alive:
            exact = [k for k in alive if len(k) == depth]
            matched.extend(exact)
            alive = [k for k in alive if len(k) > depth]
            if not alive:
                break
            b = str(read(depth))
            alive = [k for k in alive if k[depth] == b]
            depth += 1
        if not matched:
            return []
        out = ""
        for k in matched:
            out = _merge_outputs(out, table[k])
        if stage_schedule is None:
            bit = int(out[stage]) if stage < len(out) else 0
            return [(stage, bit)]
        claims = []
        for n in range(stage + 1):
            if stage_schedule(n) == stage:
                bit = int(out[n]) if n < len(out) else 0
                claims.append((n, bit))
        return claims

    items = ",".join(f'"{k}":"{v}"' for k, v in sorted(table.items()))
    return MachineFunctional(rule, name="table", expr_text=f"table({items},use={use_bound})")


# ---------------------------------------------------------------------------
# Realizer functionals


class RealizerNode(BitStream):
    __slots__ = ("branches", "d_id", "oracle")

    def __init__(self, branches: dict[str, BitStream], d_id: int, oracle: BitStream):
        super().__init__()
        self.branches = branches
        self.d_id = d_id
        self.oracle = oracle

    def _emission(self, ctx):
        key = "".join(str(self.oracle.bit(k, ctx)) for k in range(self.d_id))
        emission = self.branches.get(key)
        if emission is None:
            ctx.exhaust()  # not a recognized instance: hang
        return emission

    def _compute(self, n, ctx):
        ctx.charge(1)
        return self._emission(ctx).bit(n, ctx)

    def resolve_structure(self, ctx):
        return self._emission(ctx).resolve_structure(ctx)

    def provably_total(self):
        return _resolves_total(self)

    def describe(self):
        return f"realizer#{self.uid}"


class PrefixDispatch(Functional):
    """Identify the instance by its first d_id bits, then emit a fixed stream."""

    def __init__(self, branches: dict[str, BitStream], d_id: int, label: str = ""):
        super().__init__()
        self.branches = branches
        self.d_id = d_id
        self.label = label

    def expr(self):
        return f"realizer({self.label})"

    def output_node(self, oracle):
        return RealizerNode(self.branches, self.d_id, oracle)


# ---------------------------------------------------------------------------
# Traces


class TrackingStream(BitStream):
    """Pass-through wrapper that records the highest index read."""

    __slots__ = ("base", "high")

    def __init__(self, base: BitStream):
        super().__init__()
        self.base = base
        self.high = 0

    def bit(self, n, ctx):
        b = self.base.bit(n, ctx)
        if n + 1 > self.high:
            self.high = n + 1
        return b

    def _compute(self, n, ctx):  # pragma: no cover - bit() is overridden
        raise AssertionError

    def describe(self):
        return self.base.describe()


# Stage schedule for combinator functionals that are not presumed total:
# output n first converges at stage n + L, where L is the least rung of a
# doubling fuel ladder whose budget completes bits 0..n.  Stages then grow
# strictly with n and membership in the encoded record stays decidable.
FUEL_LADDER_BASE = 32


def ladder_budget(level: int) -> int:
    return FUEL_LADDER_BASE << level


def prefix_cost(out: BitStream, n: int, cap: int):
    """(canonical cost, bit n) of computing bits 0..n, or None beyond cap."""
    ictx = EvalContext(cap)
    bit = 0
    try:
        for j in range(n + 1):
            ictx.charge(1)
            bit = out.bit(j, ictx)
    except OutOfFuel:
        return None
    return ictx.spent, bit


def ladder_level(out: BitStream, n: int, fuel: int):
    """(level, bit) for the fuel-ladder stage of output n, or None."""
    level = 0
    while ladder_budget(level) <= fuel:
        got = prefix_cost(out, n, ladder_budget(level))
        if got is not None:
            return level, got[1]
        level += 1
    return None


def converged_at(functional: Functional, oracle: BitStream, n: int, fuel: int = 10**6):
    """(stage, bit, use) for output n, or None if it does not converge in fuel."""
    ctx = EvalContext(fuel)
    try:
        if isinstance(functional, MachineFunctional):
            machine = apply(functional, oracle).machine
            rec = machine.run_until_released(n, ctx)
            return rec.stage, rec.bit, rec.use
        tracked = TrackingStream(oracle)
        out = functional.output_node(tracked)
        if functional.presumed_total:
            bit = 0
            for j in range(n + 1):
                ctx.charge(1)
                bit = out.bit(j, ctx)
            return n, bit, tracked.high
        got = ladder_level(out, n, fuel)
        if got is None:
            return None
        level, bit = got
        return n + level, bit, tracked.high
    except OutOfFuel:
        return None


def stage_trace(functional: Functional, oracle: BitStream, upto: int, fuel: int = 10**6):
    """Entries (n, stage, bit, use) for outputs 0..upto-1 that converge."""
    entries = []
    for n in range(upto):
        rec = converged_at(functional, oracle, n, fuel)
        if rec is None:
            break
        stage, bit, use = rec
        entries.append((n, stage, bit, use))
    return entries


def serialize_trace(entries) -> str:
    return "\n".join(f"{n} {s} {i} {u}" for n, s, i, u in entries)


def trace_respects_discipline(entries) -> bool:
    """Check ordered convergence and single release on a trace."""
    stages = [s for _, s, _, _ in entries]
    if [n for n, _, _, _ in entries] != list(range(len(entries))):
        return False
    return all(a < b for a, b in zip(stages, stages[1:]))


# Shared instances and convenience constructors.

IDENTITY = Identity()


def identity_functional() -> Functional:
    return IDENTITY


def constant_functional(stream: BitStream) -> Functional:
    return Constant(stream)


def compose(outer: Functional, inner: Functional) -> Functional:
    return Compose(outer, inner)
