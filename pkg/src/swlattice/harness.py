"""End-to-end witness verification, bounded search, corpus, and the suite.

verify_witness quantifies over every enumerated realizer of the target:
for each (instance, realizer) cell it translates the instance forward,
checks it identifies as a target instance, runs the realizer, maps the
answer back, and asks the source checker.  A witness passes only when
every cell passes.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .bits import (
    BitStream,
    Diverged,
    EventuallyConstant,
    ZEROS,
    ONES,
    interleave,
    prefix,
    query,
    tag,
)
from .functionals import (
    Functional,
    IDENTITY,
    PairOf,
    TagWith,
    apply,
    compose,
    constant_functional,
    from_prefix_table,
    identity_functional,
)
from .approx import VALID, approx_of, check_prefix_valid, eval_search
from .problems import (
    NotEnumerable,
    Problem,
    Realizer,
    default_junk_tails,
    enumerate_realizers,
    finite_problem,
    medvedev_problem,
)
from .operations import coproduct, meet, strong_join
from .witnesses import (
    ReductionWitness,
    SW,
    W,
    compose_witnesses,
    extract_mass_map,
    medvedev_embed,
    medvedev_join_iso,
    medvedev_meet_iso,
    sw_commute,
    sw_assoc,
    sw_assoc_reverse,
    sw_distrib_coproduct_meet,
    sw_distrib_meet_join,
    sw_join_injections,
    sw_join_le_coproduct,
    sw_join_presentation_iso,
    sw_join_universal,
    sw_meet_lower,
    sw_meet_universal,
    w_coproduct_injections,
    w_coproduct_universal,
)


class ConfigError(Exception):
    pass


class BoundsTooLarge(Exception):
    pass


@dataclass
class VerifyConfig:
    depth: int = 48
    fuel: int = 10**6
    junk_tails: tuple = None
    realizer_cap: int = 512
    search_ceiling: int = 10**6

    def tails(self):
        return self.junk_tails if self.junk_tails is not None else default_junk_tails()


@dataclass
class Cell:
    instance: int
    realizer: str
    outcome: str  # "pass" | "fail" | "unknown"
    detail: str = ""


@dataclass
class Report:
    source: str
    target: str
    kind: str
    cells: list[Cell] = field(default_factory=list)
    config_error: str = ""

    @property
    def verdict(self) -> str:
        if self.config_error:
            return "unknown"
        if any(c.outcome == "fail" for c in self.cells):
            return "fail"
        if any(c.outcome == "unknown" for c in self.cells):
            return "unknown"
        return "pass"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_text(self) -> str:
        lines = [f"witness {self.source} <={self.kind} {self.target}: {self.verdict}"]
        if self.config_error:
            lines.append(f"  config error: {self.config_error}")
        for c in self.cells:
            lines.append(f"  instance {c.instance} vs realizer [{c.realizer}]: {c.outcome}"
                         + (f" ({c.detail})" if c.detail else ""))
        return "\n".join(lines)

    def to_json(self) -> str:
        data = {
            "source": self.source,
            "target": self.target,
            "kind": self.kind,
            "verdict": self.verdict,
            "config_error": self.config_error,
            "cells": [
                {"instance": c.instance, "realizer": c.realizer, "outcome": c.outcome, "detail": c.detail}
                for c in self.cells
            ],
        }
        return json.dumps(data, sort_keys=True, indent=2)


def _identify(stream: BitStream, problem: Problem, fuel: int):
    """Match a stream against the problem's instances within d_id bits."""
    bits = []
    for k in range(problem.d_id):
        b = query(stream, k, fuel)
        if isinstance(b, Diverged):
            return "unknown", k
        bits.append("01"[b])
    key = "".join(bits)
    keys = problem.instance_keys()
    if key in keys:
        return "ok", keys.index(key)
    return "fail", key


def verify_witness(w: ReductionWitness, source: Problem, target: Problem, cfg: VerifyConfig | None = None) -> Report:
    """Check a witness against every instance and every enumerated realizer."""
    cfg = cfg or VerifyConfig()
    if w.source != source.name or w.target != target.name:
        raise ValueError(f"witness names {w.source}->{w.target}, got problems {source.name}->{target.name}")
    report = Report(w.source, w.target, w.kind)
    needed = max(source.d_id, target.d_id)
    if cfg.depth < needed:
        report.config_error = f"depth {cfg.depth} below identification depth {needed}"
        return report
    try:
        realizers = enumerate_realizers(target, cfg.tails(), cfg.realizer_cap)
    except NotEnumerable as exc:
        report.config_error = str(exc)
        return report
    for idx, inst in enumerate(source.instances):
        translated = apply(w.forward, inst)
        status, info = _identify(translated, target, cfg.fuel)
        if status != "ok":
            for g in realizers:
                detail = (f"translated instance diverges at bit {info}" if status == "unknown"
                          else f"translated instance key {info} matches no target instance")
                outcome = "unknown" if status == "unknown" else "fail"
                report.cells.append(Cell(idx, g.describe(), outcome, detail))
            continue
        for g in realizers:
            answer = apply(g.functional, translated)
            if w.kind == SW:
                candidate = apply(w.backward, answer)
            else:
                candidate = apply(w.backward, interleave(inst, answer))
            res = source.check(idx, candidate, cfg.depth, cfg.fuel)
            outcome = {"yes": "pass", "no": "fail", "unknown": "unknown"}[res.verdict]
            detail = res.detail if res.verdict != "yes" else ""
            if res.bit is not None and res.verdict == "no":
                detail = f"bit {res.bit}: {detail}"
            report.cells.append(Cell(idx, g.describe(), outcome, detail))
    return report


@dataclass
class EquivalenceReport:
    forward: Report
    backward: Report

    @property
    def passed(self):
        return self.forward.passed and self.backward.passed

    @property
    def verdict(self):
        order = ("fail", "unknown", "pass")
        return min((self.forward.verdict, self.backward.verdict), key=order.index)


def verify_equivalence(f: Problem, g: Problem, w_fg: ReductionWitness, w_gf: ReductionWitness,
                       cfg: VerifyConfig | None = None) -> EquivalenceReport:
    """Pass only when both directions verify."""
    return EquivalenceReport(
        verify_witness(w_fg, f, g, cfg),
        verify_witness(w_gf, g, f, cfg),
    )


# ---------------------------------------------------------------------------
# Bounded brute-force search


@dataclass(frozen=True)
class SearchBounds:
    use_bound: int
    stage_bound: int
    output_depth: int

    def __post_init__(self):
        if min(self.use_bound, self.stage_bound, self.output_depth) <= 0:
            raise ValueError("search bounds must be positive")


@dataclass
class SearchOutcome:
    found: bool
    witness: ReductionWitness | None = None
    tried: int = 0

    def __bool__(self):
        return self.found


def _bit_strings(length: int):
    return ["".join("01"[(v >> k) & 1] for k in range(length)) for v in range(2 ** length)]


def _assignments(keys, outputs):
    if not keys:
        yield {}
        return
    head, *rest = keys
    for sub in _assignments(rest, outputs):
        for out in outputs:
            yield {head: out, **sub}


def brute_force_search(source: Problem, target: Problem, kind: str, bounds: SearchBounds,
                       cfg: VerifyConfig | None = None) -> SearchOutcome:
    """Exhaust table functionals within the bounds, returning the first witness.

    Tables are enumerated extensionally over the oracle prefixes the
    verification can actually present (source instances for the forward;
    realizer answers for the backward), which spans the same behaviors as
    enumerating all consistent tables within the bounds.  A negative answer
    speaks only about these bounds.
    """
    cfg = cfg or VerifyConfig()
    u = bounds.use_bound
    od = min(bounds.output_depth, bounds.stage_bound)
    realizers = enumerate_realizers(target, cfg.tails(), cfg.realizer_cap)
    fuel = cfg.fuel

    fwd_keys = sorted({prefix(inst, u, fuel) for inst in source.instances})
    outputs = _bit_strings(od)
    est_answers = max(1, min(2 ** u, len(realizers) * len(source.instances)))
    estimate = (len(outputs) ** len(fwd_keys)) * (len(outputs) ** est_answers)
    if estimate > cfg.search_ceiling:
        raise BoundsTooLarge(f"estimated {estimate} table pairs exceeds ceiling {cfg.search_ceiling}")

    tried = 0
    for fwd_map in _assignments(fwd_keys, outputs):
        forward = from_prefix_table(fwd_map, u)
        translated = [apply(forward, inst) for inst in source.instances]
        keys = []
        ok = True
        for t in translated:
            status, _ = _identify(t, target, fuel)
            if status != "ok":
                ok = False
                break
        if not ok:
            tried += 1
            continue
        answer_keys = set()
        for t in translated:
            for g in realizers:
                ans = prefix(apply(g.functional, t), u, fuel)
                if isinstance(ans, Diverged):
                    ok = False
                    break
                answer_keys.add(ans)
            if not ok:
                break
        if not ok:
            tried += 1
            continue
        for bwd_map in _assignments(sorted(answer_keys), outputs):
            tried += 1
            backward = from_prefix_table(bwd_map, u)
            witness = ReductionWitness(kind, forward, backward, source.name, target.name)
            if verify_witness(witness, source, target, cfg).passed:
                return SearchOutcome(True, witness, tried)
    return SearchOutcome(False, None, tried)


# ---------------------------------------------------------------------------
# The standard corpus


@dataclass
class Corpus:
    problems: dict[str, Problem]
    atoms: list[str]
    triple: tuple[str, str, str]
    triples: list[tuple[str, str, str]]
    fn_oracle_pairs: list[tuple[str, Functional, BitStream]]
    mass_a: list[BitStream]
    mass_b: list[BitStream]

    def __getitem__(self, name: str) -> Problem:
        return self.problems[name]


def ec(prefix_bits: str, tail: int = 0) -> EventuallyConstant:
    return EventuallyConstant(prefix_bits, tail)


def corpus() -> Corpus:
    """The named problem suite every acceptance criterion runs against."""
    problems: dict[str, Problem] = {}

    def add(p):
        problems[p.name] = p
        return p

    add(finite_problem("id2", [(ZEROS, [ZEROS]), (ONES, [ONES])], d_id=1))
    add(finite_problem("atomA", [(ec("10"), [ec("110")])], d_id=2))
    add(finite_problem("atomB", [(ec("01"), [ec("1010")])], d_id=2))
    add(finite_problem("atomC", [(ec("11"), [ZEROS])], d_id=2))
    add(finite_problem("atomD", [(ec("0110"), [ZEROS, ec("10")])], d_id=2))

    mass_a = [ec("10"), ec("010")]
    mass_b = [ec("10")]
    add(medvedev_problem("medA", mass_a))
    add(medvedev_problem("medB", mass_b))
    add(medvedev_problem("medUnion", [tag(0, a) for a in mass_a] + [tag(1, b) for b in mass_b]))
    add(medvedev_problem("medProd", [interleave(a, b) for a in mass_a for b in mass_b]))

    atoms = ["id2", "atomA", "atomB", "atomC", "atomD", "medB"]

    # Oracle computations for the encode/decode criteria: identity, constants,
    # tagging, pairing, composition, and a finite table, over closed streams.
    idf = identity_functional()
    instances = [ZEROS, ONES, ec("10"), ec("01"), ec("1101"), ec("0011")]
    pairs: list[tuple[str, Functional, BitStream]] = []
    for i, p in enumerate(instances):
        pairs.append((f"id/{i}", idf, p))
    pairs.append(("const0", constant_functional(ZEROS), ec("10")))
    pairs.append(("const-pattern", constant_functional(ec("1001")), ONES))
    pairs.append(("tag1", TagWith(1), ec("110")))
    pairs.append(("pair-id-id", PairOf(idf, idf), ec("01")))
    pairs.append(("compose-tag0-id", compose(TagWith(0), idf), ec("10")))
    pairs.append(("table", from_prefix_table({"1": "110"}, 1), ec("10")))

    return Corpus(
        problems=problems,
        atoms=atoms,
        triple=("atomA", "atomB", "atomC"),
        triples=[("atomA", "atomB", "atomC"), ("atomB", "atomC", "atomA"), ("atomA", "atomB", "atomD")],
        fn_oracle_pairs=pairs,
        mass_a=mass_a,
        mass_b=mass_b,
    )


def base_strong_witnesses(c: Corpus):
    """Passing strong witnesses among atoms: identity self-reductions plus
    constant-translation reductions from single-instance atoms."""
    singles = ["atomA", "atomB", "atomC", "atomD", "medB"]
    witnesses = []
    for name in c.atoms:
        witnesses.append(ReductionWitness(SW, IDENTITY, IDENTITY, name, name))
    for src in singles:
        for tgt in c.atoms:
            if src == tgt:
                continue
            forward = constant_functional(c[tgt].instances[0])
            backward = constant_functional(c[src].solutions(0)[0])
            witnesses.append(ReductionWitness(SW, forward, backward, src, tgt))
    return witnesses


# ---------------------------------------------------------------------------
# Acceptance criteria


@dataclass
class CriterionResult:
    number: int
    name: str
    verdict: str  # "pass" | "fail" | "unknown"
    detail: str = ""
    elapsed: float = 0.0

    @property
    def passed(self):
        return self.verdict == "pass"


def _time(fn):
    start = time.monotonic()
    result = fn()
    return result, time.monotonic() - start


def criterion_1_eval_roundtrip(cfg: VerifyConfig, c: Corpus | None = None) -> CriterionResult:
    """Decoding the encoded record of a total computation reproduces it."""
    c = c or corpus()

    def run():
        bad = []
        for label, fn, oracle in c.fn_oracle_pairs:
            direct = prefix(apply(fn, oracle), 256, cfg.fuel)
            decoded = prefix(eval_search(approx_of(fn, oracle)), 256, cfg.fuel)
            if isinstance(direct, Diverged) or direct != decoded:
                bad.append(label)
        return bad

    bad, elapsed = _time(run)
    verdict = "pass" if not bad else "fail"
    detail = f"{len(c.fn_oracle_pairs)} pairs, 256 bits" + (f"; mismatches: {bad}" if bad else "")
    return CriterionResult(1, "encode/decode round trip", verdict, detail, elapsed)


def criterion_2_approx_validity(cfg: VerifyConfig, c: Corpus | None = None) -> CriterionResult:
    """Every encoded record satisfies the approximation clauses below 512."""
    c = c or corpus()

    def run():
        bad = []
        for label, fn, oracle in c.fn_oracle_pairs:
            if check_prefix_valid(approx_of(fn, oracle), 512, cfg.fuel) != VALID:
                bad.append(label)
        return bad

    bad, elapsed = _time(run)
    return CriterionResult(2, "record validity at bound 512", "pass" if not bad else "fail",
                           f"{len(c.fn_oracle_pairs)} records" + (f"; invalid: {bad}" if bad else ""), elapsed)


def criterion_3_join_injections(cfg: VerifyConfig, c: Corpus | None = None) -> CriterionResult:
    """Both operands reduce strongly into their join, on every atom pair."""
    c = c or corpus()

    def run():
        bad = []
        for fa in c.atoms:
            for fb in c.atoms:
                f, g = c[fa], c[fb]
                join = strong_join(f, g)
                w_f, w_g = sw_join_injections(f, g, join)
                if not verify_witness(w_f, f, join, cfg).passed:
                    bad.append(f"{fa}<=join({fa},{fb})")
                if not verify_witness(w_g, g, join, cfg).passed:
                    bad.append(f"{fb}<=join({fa},{fb})")
        return bad

    bad, elapsed = _time(run)
    n = len(c.atoms) ** 2
    return CriterionResult(3, "join injections", "pass" if not bad else "fail",
                           f"{n} pairs, both injections" + (f"; failures: {bad}" if bad else ""), elapsed)


def criterion_4_join_universality(cfg: VerifyConfig, c: Corpus | None = None) -> CriterionResult:
    """Whenever both operands reduce strongly to h, so does their join."""
    c = c or corpus()

    def run():
        base = base_strong_witnesses(c)
        by_target: dict[str, list[ReductionWitness]] = {}
        for w in base:
            if verify_witness(w, c[w.source], c[w.target], cfg).passed:
                by_target.setdefault(w.target, []).append(w)
        bad = []
        combos = 0
        for h, ws in sorted(by_target.items()):
            for w_f in ws:
                for w_g in ws:
                    join = strong_join(c[w_f.source], c[w_g.source])
                    combined = sw_join_universal(w_f, w_g, join)
                    combos += 1
                    if not verify_witness(combined, join, c[h], cfg).passed:
                        bad.append(f"join({w_f.source},{w_g.source})<={h}")
        return bad, combos

    (bad, combos), elapsed = _time(run)
    return CriterionResult(4, "join universality", "pass" if not bad else "fail",
                           f"{combos} combined witnesses" + (f"; failures: {bad}" if bad else ""), elapsed)


def criterion_5_supremum_order(cfg: VerifyConfig, c: Corpus | None = None) -> CriterionResult:
    """On the corpus preorder, the join is the least constructed upper bound."""
    c = c or corpus()

    def run():
        fa, fb, _ = c.triple
        f, g = c[fa], c[fb]
        join = strong_join(f, g)
        edges = set()
        w_f, w_g = sw_join_injections(f, g, join)
        if verify_witness(w_f, f, join, cfg).passed:
            edges.add((fa, join.name))
        if verify_witness(w_g, g, join, cfg).passed:
            edges.add((fb, join.name))
        base = base_strong_witnesses(c)
        passing = [w for w in base if verify_witness(w, c[w.source], c[w.target], cfg).passed]
        for w in passing:
            edges.add((w.source, w.target))
        by_target: dict[str, dict[str, ReductionWitness]] = {}
        for w in passing:
            by_target.setdefault(w.target, {})[w.source] = w
        upper_bounds = [h for h, ws in by_target.items() if fa in ws and fb in ws]
        for h in upper_bounds:
            combined = sw_join_universal(by_target[h][fa], by_target[h][fb], join)
            if verify_witness(combined, join, c[h], cfg).passed:
                edges.add((join.name, h))
        # reachability closure
        nodes = {n for e in edges for n in e}
        reach = {n: {n} for n in nodes}
        changed = True
        while changed:
            changed = False
            for a, b in edges:
                new = reach[b] - reach[a]
                if new:
                    reach[a] |= new
                    changed = True
        problems_ = []
        if join.name not in reach.get(fa, set()) or join.name not in reach.get(fb, set()):
            problems_.append("join is not an upper bound")
        for h in upper_bounds:
            if h not in reach.get(join.name, set()):
                problems_.append(f"join not below common upper bound {h}")
        return problems_, len(upper_bounds)

    (problems_, n_ub), elapsed = _time(run)
    return CriterionResult(5, "supremum order check", "pass" if not problems_ else "fail",
                           f"{n_ub} common upper bounds checked" + (f"; {problems_}" if problems_ else ""), elapsed)


def criterion_6_join_vs_coproduct(cfg: VerifyConfig, c: Corpus | None = None) -> CriterionResult:
    """Strongly below the coproduct; plainly above it via injections+universality."""
    c = c or corpus()

    def run():
        fa, fb, _ = c.triple
        f, g = c[fa], c[fb]
        join = strong_join(f, g)
        cop = coproduct(f, g)
        bad = []
        w_down = sw_join_le_coproduct(join, cop)
        if not verify_witness(w_down, join, cop, cfg).passed:
            bad.append("join<=sW coproduct")
        wi_f, wi_g = sw_join_injections(f, g, join)
        w_up = w_coproduct_universal(wi_f.weakened(), wi_g.weakened(), cop)
        if not verify_witness(w_up, cop, join, cfg).passed:
            bad.append("coproduct<=W join")
        return bad

    bad, elapsed = _time(run)
    return CriterionResult(6, "join vs coproduct equivalence", "pass" if not bad else "fail",
                           "both directions" + (f"; failures: {bad}" if bad else ""), elapsed)


def criterion_7_distributivity(cfg: VerifyConfig, c: Corpus | None = None) -> CriterionResult:
    """Both distributive inequalities hold on every corpus triple."""
    c = c or corpus()

    def run():
        bad = []
        for fa, fb, fh in c.triples:
            f, g, h = c[fa], c[fb], c[fh]
            src1 = strong_join(meet(f, h), meet(g, h))
            tgt1 = meet(strong_join(f, g), h)
            w1 = sw_distrib_meet_join(src1, tgt1)
            if not verify_witness(w1, src1, tgt1, cfg).passed:
                bad.append(f"part1 on ({fa},{fb},{fh})")
            src2 = meet(coproduct(f, g), h)
            tgt2 = coproduct(meet(f, h), meet(g, h))
            w2 = sw_distrib_coproduct_meet(src2, tgt2)
            if not verify_witness(w2, src2, tgt2, cfg).passed:
                bad.append(f"part2 on ({fa},{fb},{fh})")
        return bad

    bad, elapsed = _time(run)
    return CriterionResult(7, "distributivity inequalities", "pass" if not bad else "fail",
                           f"{len(c.triples)} triples, both parts" + (f"; failures: {bad}" if bad else ""), elapsed)


def criterion_8_presentation_iso(cfg: VerifyConfig, c: Corpus | None = None) -> CriterionResult:
    """The pair-form presentation of the join is its own equivalent."""
    c = c or corpus()

    def run():
        fa, fb, _ = c.triple
        join = strong_join(c[fa], c[fb])
        w1, w2 = sw_join_presentation_iso(join)
        rep = verify_equivalence(join, join, w1, w2, cfg)
        return rep.passed

    ok, elapsed = _time(run)
    return CriterionResult(8, "pair-form presentation equivalence", "pass" if ok else "fail",
                           "identity witnesses, both directions", elapsed)


def criterion_9_medvedev(cfg: VerifyConfig, c: Corpus | None = None) -> CriterionResult:
    """Mass-problem order embeds: preservation, reflection, join and meet isos."""
    c = c or corpus()

    def run():
        bad = []
        d_a, d_b = c["medA"], c["medB"]
        w_embed = medvedev_embed(IDENTITY, d_a, d_b)
        if not verify_witness(w_embed, d_b, d_a, cfg).passed:
            bad.append("order preservation")
        if not extract_mass_map(w_embed, d_a, d_b):
            bad.append("order reflection")
        join_ab = strong_join(d_a, d_b)
        w1, w2 = medvedev_join_iso(d_a, d_b, c["medUnion"], join_ab)
        rep = EquivalenceReport(
            verify_witness(w1, join_ab, c["medUnion"], cfg),
            verify_witness(w2, c["medUnion"], join_ab, cfg),
        )
        if not rep.passed:
            bad.append("join iso")
        meet_ab = meet(d_a, d_b)
        w3, w4 = medvedev_meet_iso(d_a, d_b, c["medProd"], meet_ab)
        rep2 = EquivalenceReport(
            verify_witness(w3, c["medProd"], meet_ab, cfg),
            verify_witness(w4, meet_ab, c["medProd"], cfg),
        )
        if not rep2.passed:
            bad.append("meet iso")
        return bad

    bad, elapsed = _time(run)
    return CriterionResult(9, "mass-problem embedding", "pass" if not bad else "fail",
                           "preservation, reflection, join iso, meet iso" + (f"; failures: {bad}" if bad else ""),
                           elapsed)


def criterion_10_search_sanity(cfg: VerifyConfig, c: Corpus | None = None) -> CriterionResult:
    """Search finds a matching-pair witness and refutes the pigeonhole pair."""
    c = c or corpus()

    def run():
        bad = []
        found = brute_force_search(c["medB"], c["medB"], SW, SearchBounds(1, 1, 1), cfg)
        if not found:
            bad.append("no witness found for the matching single-instance pair")
        elif not verify_witness(found.witness, c["medB"], c["medB"], cfg).passed:
            bad.append("found witness does not re-verify")
        for u in (1, 2, 3):
            for od in (1, 2, 3):
                out = brute_force_search(c["id2"], c["atomA"], SW, SearchBounds(u, od, od), cfg)
                if out.found:
                    bad.append(f"pigeonhole pair unexpectedly reduced at bounds ({u},{od})")
        return bad

    bad, elapsed = _time(run)
    return CriterionResult(10, "bounded search sanity", "pass" if not bad else "fail",
                           "found case + 3x3 pigeonhole grid" + (f"; failures: {bad}" if bad else ""), elapsed)


EXCLUSION_NOTE = (
    "non-distributivity counterexample excluded: it requires oracles with "
    "incomparable Turing degrees, which no computable corpus contains; the "
    "suite covers the provable inequalities (criterion 7) and the bounded "
    "search skeleton (criterion 10) instead"
)


def criterion_11_exclusion(cfg: VerifyConfig, c: Corpus | None = None, prior=None) -> CriterionResult:
    """Declare the non-reproducible content and re-assert its stand-ins."""
    start = time.monotonic()
    if prior and 7 in prior and 10 in prior:
        ok = prior[7].passed and prior[10].passed
    else:
        c = c or corpus()
        ok = criterion_7_distributivity(cfg, c).passed and criterion_10_search_sanity(cfg, c).passed
    return CriterionResult(11, "non-reproducible content declared", "pass" if ok else "fail",
                           EXCLUSION_NOTE, time.monotonic() - start)


CRITERIA = [
    criterion_1_eval_roundtrip,
    criterion_2_approx_validity,
    criterion_3_join_injections,
    criterion_4_join_universality,
    criterion_5_supremum_order,
    criterion_6_join_vs_coproduct,
    criterion_7_distributivity,
    criterion_8_presentation_iso,
    criterion_9_medvedev,
    criterion_10_search_sanity,
]


@dataclass
class SuiteSummary:
    results: list[CriterionResult]
    exclusions: list[str]
    verdict: str

    def to_text(self, show_timing: bool = False) -> str:
        lines = []
        for r in self.results:
            mark = {"pass": "PASS", "fail": "FAIL", "unknown": "UNKNOWN"}[r.verdict]
            timing = f"  [{r.elapsed:.2f}s]" if show_timing else ""
            lines.append(f"{mark:8s} {r.number:2d} {r.name}: {r.detail}{timing}")
        for note in self.exclusions:
            lines.append(f"EXCLUDED    {note}")
        lines.append(f"overall: {self.verdict}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "verdict": self.verdict,
                "criteria": [
                    {"number": r.number, "name": r.name, "verdict": r.verdict, "detail": r.detail}
                    for r in self.results
                ],
                "exclusions": self.exclusions,
            },
            sort_keys=True,
            indent=2,
        )


def run_suite(cfg: VerifyConfig | None = None, corpus_override: Corpus | None = None,
              empty: bool = False) -> SuiteSummary:
    """Run every acceptance criterion and collect a machine-readable summary."""
    cfg = cfg or VerifyConfig()
    if empty:
        return SuiteSummary([], [], "nothing_to_check")
    c = corpus_override or corpus()
    results = []
    prior = {}
    for criterion in CRITERIA:
        res = criterion(cfg, c)
        prior[res.number] = res
        results.append(res)
    results.append(criterion_11_exclusion(cfg, c, prior))
    if any(r.verdict == "fail" for r in results):
        verdict = "fail"
    elif any(r.verdict == "unknown" for r in results):
        verdict = "unknown"
    else:
        verdict = "pass"
    return SuiteSummary(results, [EXCLUSION_NOTE], verdict)
