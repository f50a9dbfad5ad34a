"""Problem transformers: coproduct, meet, and the strong join.

Instances of the composites are tagged or interleaved instance streams of
the operands, and checkers delegate to operand checkers after peeling the
encoding.  The strong join is realized in its pair form: a solution for a
tag-i instance is any pair whose i-th component is a valid total record
decoding to an operand solution; the other component is unconstrained.
"""

from __future__ import annotations

from .bits import BitStream, Diverged, TAG_WINDOW, ZEROS, interleave, project, query, tag
from .approx import (
    Totality,
    Violation,
    check_prefix_valid,
    eval_stream,
    make_total_approx,
    totality_by_descriptor,
)
from .problems import CheckResult, Problem, no, unknown


def _read_tag(candidate: BitStream, fuel: int, window: int = TAG_WINDOW):
    """Classify the even track of a stream as tag 0, tag 1, or neither.

    Returns ("tag", i) | ("no", CheckResult) | ("unknown", CheckResult).
    """
    mismatch = []
    for want in (0, 1):
        found = None
        for k in range(window):
            b = query(candidate, 2 * k, fuel)
            if isinstance(b, Diverged):
                return "unknown", unknown(f"even bit {2 * k} diverged")
            expected = 1 if k == want else 0
            if b != expected:
                found = 2 * k
                break
        if found is None:
            return "tag", want
        mismatch.append(found)
    return "no", no(min(mismatch), "matches neither tag pattern")


class CoproductProblem(Problem):
    """Tagged disjoint union: solve whichever operand the tag names."""

    operator = "coproduct"

    def __init__(self, f: Problem, g: Problem, name: str | None = None):
        super().__init__(name or f"coproduct({f.name},{g.name})", max(2 * f.d_id, 2 * g.d_id))
        self.left = f
        self.right = g
        self.origin: list[tuple[int, int]] = []
        for idx, inst in enumerate(f.instances):
            self.instances.append(tag(0, inst))
            self.origin.append((0, idx))
        for idx, inst in enumerate(g.instances):
            self.instances.append(tag(1, inst))
            self.origin.append((1, idx))

    def _operand(self, side):
        return self.left if side == 0 else self.right

    def check(self, idx, candidate, depth, fuel):
        side, j = self.origin[idx]
        kind, payload = _read_tag(candidate, fuel)
        if kind != "tag":
            return payload
        if payload != side:
            return no(0 if side == 0 else 2, "wrong tag for this instance")
        return self._operand(side).check(j, project(candidate, 1), depth // 2, fuel)

    def solutions(self, idx):
        side, j = self.origin[idx]
        return [tag(side, s) for s in self._operand(side).solutions(j)]

    def emissions(self, idx, junk_tails):
        side, j = self.origin[idx]
        return [tag(side, e) for e in self._operand(side).emissions(j, junk_tails)]


class MeetProblem(Problem):
    """Product of instances; a solution solves either side and says which."""

    operator = "meet"

    def __init__(self, f: Problem, g: Problem, name: str | None = None):
        super().__init__(name or f"meet({f.name},{g.name})", max(2 * f.d_id, 2 * g.d_id))
        self.left = f
        self.right = g
        self.origin: list[tuple[int, int]] = []
        for i, p in enumerate(f.instances):
            for j, q in enumerate(g.instances):
                self.instances.append(interleave(p, q))
                self.origin.append((i, j))

    def check(self, idx, candidate, depth, fuel):
        i, j = self.origin[idx]
        kind, payload = _read_tag(candidate, fuel)
        if kind != "tag":
            return payload
        body = project(candidate, 1)
        if payload == 0:
            return self.left.check(i, body, depth // 2, fuel)
        return self.right.check(j, body, depth // 2, fuel)

    def solutions(self, idx):
        i, j = self.origin[idx]
        out = [tag(0, s) for s in self.left.solutions(i)]
        out += [tag(1, s) for s in self.right.solutions(j)]
        return out

    def emissions(self, idx, junk_tails):
        i, j = self.origin[idx]
        out = [tag(0, e) for e in self.left.emissions(i, junk_tails)]
        out += [tag(1, e) for e in self.right.emissions(j, junk_tails)]
        return out


class StrongJoinProblem(Problem):
    """Tagged union of instances, paired completed records as solutions."""

    operator = "strong_join"

    def __init__(self, f: Problem, g: Problem, name: str | None = None):
        super().__init__(name or f"strong_join({f.name},{g.name})", max(2 * f.d_id, 2 * g.d_id))
        self.left = f
        self.right = g
        self.origin: list[tuple[int, int]] = []
        for idx, inst in enumerate(f.instances):
            self.instances.append(tag(0, inst))
            self.origin.append((0, idx))
        for idx, inst in enumerate(g.instances):
            self.instances.append(tag(1, inst))
            self.origin.append((1, idx))

    def _operand(self, side):
        return self.left if side == 0 else self.right

    def check(self, idx, candidate, depth, fuel):
        side, j = self.origin[idx]
        record = project(candidate, side)
        verdict = check_prefix_valid(record, depth, fuel)
        if isinstance(verdict, Diverged):
            return unknown("record validity scan diverged")
        if isinstance(verdict, Violation):
            return no(verdict.index, f"record violates clause {verdict.clause}")
        if totality_by_descriptor(record) is Totality.NOT_TOTAL:
            return no(None, "record provably not total")
        return self._operand(side).check(j, eval_stream(record), depth, fuel)

    def solutions(self, idx):
        side, j = self.origin[idx]
        out = []
        for s in self._operand(side).solutions(j):
            record = make_total_approx(s, 0)
            out.append(interleave(record, ZEROS) if side == 0 else interleave(ZEROS, record))
        return out

    def emissions(self, idx, junk_tails):
        side, j = self.origin[idx]
        out = []
        for s in self._operand(side).emissions(j, junk_tails):
            record = make_total_approx(s, 0)
            for junk in junk_tails:
                out.append(interleave(record, junk) if side == 0 else interleave(junk, record))
        return out


def coproduct(f: Problem, g: Problem, name: str | None = None) -> CoproductProblem:
    return CoproductProblem(f, g, name)


def meet(f: Problem, g: Problem, name: str | None = None) -> MeetProblem:
    return MeetProblem(f, g, name)


def strong_join(f: Problem, g: Problem, name: str | None = None) -> StrongJoinProblem:
    return StrongJoinProblem(f, g, name)


def decode_candidate_pair(candidate: BitStream, fuel: int = 10**6, scan_bound: int = 512):
    """Diagnostic decode of a strong-join candidate as a completed pair.

    Resolves structural indirections first so the two components expose
    their descriptors, then decodes each under the completion.
    """
    from .bits import EvalContext, OutOfFuel
    from .problems import COMPLETED_CANTOR, Decoded, decode_completed

    ctx = EvalContext(fuel)
    try:
        resolved = candidate.resolve_structure(ctx)
    except OutOfFuel:
        return Decoded("unknown"), Decoded("unknown")
    return (
        decode_completed(COMPLETED_CANTOR, project(resolved, 0), fuel, scan_bound),
        decode_completed(COMPLETED_CANTOR, project(resolved, 1), fuel, scan_bound),
    )
