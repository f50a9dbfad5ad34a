"""Multivalued problems on Cantor space, realizers, and the completion layer.

A problem is a finite list of instance streams together with a per-instance
three-valued solution checker and a nonempty list of canonical solution
streams.  Checkers answer yes/no/unknown at a given depth and fuel; unknown
never overrides a determined answer and always means "could not decide",
never "accept".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bits import BitStream, Diverged, ZEROS, query
from .functionals import Functional, PrefixDispatch, apply
from .approx import (
    Totality,
    Violation,
    check_prefix_valid,
    eval_stream,
    make_total_approx,
    totality_by_descriptor,
)


class DuplicateInstance(Exception):
    pass


class EmptySolutionSet(Exception):
    pass


class EmptyMassProblem(Exception):
    pass


class NotEnumerable(Exception):
    pass


@dataclass(frozen=True)
class CheckResult:
    verdict: str  # "yes" | "no" | "unknown"
    bit: int | None = None
    detail: str = ""

    @property
    def yes(self):
        return self.verdict == "yes"


YES = CheckResult("yes")


def no(bit=None, detail=""):
    return CheckResult("no", bit, detail)


def unknown(detail=""):
    return CheckResult("unknown", None, detail)


def match_against(candidate: BitStream, solutions, depth: int, fuel: int) -> CheckResult:
    """Prefix-compare a candidate against a list of solution streams."""
    first_no = None
    any_unknown = False
    for sol in solutions:
        outcome = None
        for k in range(depth):
            cb = query(candidate, k, fuel)
            if isinstance(cb, Diverged):
                outcome = unknown(f"candidate bit {k} diverged")
                break
            sb = query(sol, k, fuel)
            if isinstance(sb, Diverged):
                outcome = unknown(f"solution bit {k} diverged")
                break
            if cb != sb:
                outcome = no(k, "disagreement")
                break
        if outcome is None:
            return YES
        if outcome.verdict == "unknown":
            any_unknown = True
        elif first_no is None:
            first_no = outcome
    if any_unknown:
        return unknown("agreement undecided within fuel")
    return first_no if first_no is not None else no(None, "no solutions listed")


class Problem:
    """Base for all problems; subclasses fill instances and checking."""

    def __init__(self, name: str, d_id: int):
        self.name = name
        self.d_id = d_id
        self.instances: list[BitStream] = []

    def check(self, idx: int, candidate: BitStream, depth: int, fuel: int) -> CheckResult:
        raise NotImplementedError

    def solutions(self, idx: int) -> list[BitStream]:
        """Canonical solution streams for instance idx (nonempty)."""
        raise NotImplementedError

    def emissions(self, idx: int, junk_tails) -> list[BitStream]:
        """All canonical realizer emissions for instance idx."""
        return self.solutions(idx)

    def instance_keys(self, fuel: int = 10**5) -> list[str]:
        keys = []
        for inst in self.instances:
            bits = []
            for k in range(self.d_id):
                b = query(inst, k, fuel)
                if isinstance(b, Diverged):
                    raise ValueError(f"instance of {self.name} diverges below d_id")
                bits.append("01"[b])
            keys.append("".join(bits))
        return keys

    def __repr__(self):
        return f"<Problem {self.name}: {len(self.instances)} instances, d_id={self.d_id}>"


class AtomicProblem(Problem):
    def __init__(self, name, pairs, d_id):
        super().__init__(name, d_id)
        self._solutions = []
        for inst, sols in pairs:
            if not sols:
                raise EmptySolutionSet(f"{name}: instance without solutions")
            self.instances.append(inst)
            self._solutions.append(list(sols))
        keys = self.instance_keys()
        if len(set(keys)) != len(keys):
            raise DuplicateInstance(f"{name}: instances collide within d_id={d_id}")

    def check(self, idx, candidate, depth, fuel):
        return match_against(candidate, self._solutions[idx], depth, fuel)

    def solutions(self, idx):
        return list(self._solutions[idx])


def finite_problem(name, pairs, d_id) -> AtomicProblem:
    """A problem given by an explicit instance -> solution-list table."""
    return AtomicProblem(name, pairs, d_id)


def _distinguishing_depth(streams, bound=256, fuel=10**5):
    depth = 1
    for i, a in enumerate(streams):
        for b in streams[i + 1 :]:
            d = None
            for k in range(bound):
                if query(a, k, fuel) != query(b, k, fuel):
                    d = k + 1
                    break
            if d is None:
                raise DuplicateInstance("streams indistinguishable within bound")
            depth = max(depth, d)
    return depth


def medvedev_problem(name, elements) -> AtomicProblem:
    """The image of a mass problem: every element maps to the zero stream."""
    elements = list(elements)
    if not elements:
        raise EmptyMassProblem(name)
    d_id = _distinguishing_depth(elements)
    prob = AtomicProblem(name, [(e, [ZEROS]) for e in elements], d_id)
    prob.mass_elements = elements
    return prob


# ---------------------------------------------------------------------------
# Realizers


@dataclass
class Realizer:
    functional: Functional
    problem: str
    choice: tuple[int, ...]

    def describe(self):
        return f"{self.problem}:{','.join(map(str, self.choice))}"


DEFAULT_JUNK_TAILS = None


def default_junk_tails():
    """Junk covering a non-total record, a constant, and a decodable record."""
    global DEFAULT_JUNK_TAILS
    if DEFAULT_JUNK_TAILS is None:
        from .bits import ONES

        DEFAULT_JUNK_TAILS = (ZEROS, ONES, make_total_approx(ONES, 0))
    return DEFAULT_JUNK_TAILS


def enumerate_realizers(problem: Problem, junk_tails=None, cap: int = 512) -> list[Realizer]:
    """Every prefix-dispatch realizer over canonical emission choices.

    One realizer per total selection of an emission for each instance;
    unconstrained composite components range over the junk tails.
    """
    if junk_tails is None:
        junk_tails = default_junk_tails()
    menus = []
    for idx in range(len(problem.instances)):
        menu = problem.emissions(idx, junk_tails)
        if not menu:
            raise NotEnumerable(f"{problem.name}: instance {idx} has no emissions")
        menus.append(menu)
    total = 1
    for menu in menus:
        total *= len(menu)
    if total > cap:
        raise NotEnumerable(f"{problem.name}: {total} realizers exceed cap {cap}")
    keys = problem.instance_keys()
    realizers = []
    choices = [()]
    for menu in menus:
        choices = [c + (j,) for c in choices for j in range(len(menu))]
    for choice in choices:
        branches = {keys[i]: menus[i][j] for i, j in enumerate(choice)}
        fn = PrefixDispatch(branches, problem.d_id, label=problem.name)
        realizers.append(Realizer(fn, problem.name, choice))
    return realizers


@dataclass
class RealizerReport:
    problem: str
    rows: list = field(default_factory=list)  # (instance idx, CheckResult)

    @property
    def passed(self):
        return all(r.yes for _, r in self.rows)


def check_realizer(functional: Functional, problem: Problem, depth: int = 48, fuel: int = 10**6) -> RealizerReport:
    """Run a claimed realizer against every instance of a problem."""
    report = RealizerReport(problem.name)
    for idx, inst in enumerate(problem.instances):
        out = apply(functional, inst)
        report.rows.append((idx, problem.check(idx, out, depth, fuel)))
    return report


# ---------------------------------------------------------------------------
# Represented spaces and the completion


@dataclass(frozen=True)
class RepresentedSpace:
    name: str

    def decode(self, stream: BitStream, fuel: int):
        """Cantor space carries the identity representation."""
        return stream

    def points_equal(self, a, b, depth: int, fuel: int) -> bool:
        for k in range(depth):
            if query(a, k, fuel) != query(b, k, fuel):
                return False
        return True


@dataclass(frozen=True)
class CompletedSpace:
    base: RepresentedSpace

    @property
    def name(self):
        return self.base.name + "^"


CANTOR = RepresentedSpace("cantor")
COMPLETED_CANTOR = CompletedSpace(CANTOR)


@dataclass(frozen=True)
class Decoded:
    kind: str  # "point" | "infinity" | "unknown"
    point: object = None

    @property
    def is_infinity(self):
        return self.kind == "infinity"

    @property
    def is_point(self):
        return self.kind == "point"


INFINITY = Decoded("infinity")


def decode_completed(space: CompletedSpace, p: BitStream, fuel: int = 10**6, scan_bound: int = 512) -> Decoded:
    """Decode under the completion: a base point, the added infinity, or unknown.

    A stream decodes to a point when it is a provably total record whose
    decode lies in the base domain; to infinity when the descriptor proves
    non-totality or the validity scan finds a violation; and to unknown
    otherwise (fuel-bounded evaluation cannot decide the rest).
    """
    tot = totality_by_descriptor(p)
    if tot is Totality.NOT_TOTAL:
        return INFINITY
    if tot is Totality.TOTAL:
        point = space.base.decode(eval_stream(p), fuel)
        if point is None:
            return INFINITY
        return Decoded("point", point)
    verdict = check_prefix_valid(p, scan_bound, fuel)
    if isinstance(verdict, Violation):
        return INFINITY
    return Decoded("unknown")
