"""Oracle functionals: canonical schedules, normalization, tables, use tracking."""

import itertools

import pytest

from swlattice import (
    Diverged,
    EventuallyConstant,
    InconsistentTable,
    ONES,
    ZEROS,
    apply,
    compose,
    constant_functional,
    converged_at,
    from_prefix_table,
    identity_functional,
    normalize,
    prefix,
    query,
    scripted_rule,
    serialize_trace,
    stage_trace,
    trace_respects_discipline,
)

CORPUS = [ZEROS, ONES, EventuallyConstant("10", 0), EventuallyConstant("0110", 1)]


class TestCanonicalSchedules:
    def test_identity_schedule(self):
        assert converged_at(identity_functional(), ONES, 3) == (3, 1, 4)

    def test_constant_schedule(self):
        assert converged_at(constant_functional(ZEROS), EventuallyConstant("1", 0), 5) == (5, 0, 0)

    def test_identity_output(self):
        for p in CORPUS:
            assert prefix(apply(identity_functional(), p), 128) == prefix(p, 128)

    def test_constant_ignores_oracle(self):
        q = EventuallyConstant("110", 0)
        for p in CORPUS:
            assert prefix(apply(constant_functional(q), p), 64) == prefix(q, 64)


class TestNormalization:
    def test_simultaneous_claims_release_in_order(self):
        fn = normalize(scripted_rule({3: [(0, 1), (1, 1)]}))
        assert converged_at(fn, ZEROS, 0)[:2] == (3, 1)
        assert converged_at(fn, ZEROS, 1)[:2] == (4, 1)

    def test_out_of_order_claims_wait(self):
        fn = normalize(scripted_rule({2: [(1, 0)], 5: [(0, 1)]}))
        assert converged_at(fn, ZEROS, 0)[:2] == (5, 1)
        assert converged_at(fn, ZEROS, 1)[:2] == (6, 0)

    def test_conforming_rule_unchanged(self):
        script = {0: [(0, 1)], 1: [(1, 0)], 2: [(2, 1)]}
        fn = normalize(scripted_rule(script))
        trace = stage_trace(fn, ZEROS, 3)
        assert trace == [(0, 0, 1, 0), (1, 1, 0, 0), (2, 2, 1, 0)]

    def test_diverging_rule(self):
        fn = normalize(scripted_rule({}))
        assert converged_at(fn, ZEROS, 0, fuel=10**4) is None

    def test_trace_serialization(self):
        fn = normalize(scripted_rule({0: [(0, 1)], 1: [(1, 0)]}))
        assert serialize_trace(stage_trace(fn, ZEROS, 2)) == "0 0 1 0\n1 1 0 0"


class TestDiscipline:
    def test_traces_respect_convention(self):
        functionals = [
            identity_functional(),
            constant_functional(EventuallyConstant("01", 0)),
            compose(identity_functional(), identity_functional()),
            from_prefix_table({"0": "10", "1": "01"}, 1),
            normalize(scripted_rule({0: [(2, 1)], 3: [(0, 0)], 4: [(1, 1)]})),
        ]
        for fn in functionals:
            for p in CORPUS:
                trace = stage_trace(fn, p, 48, fuel=10**4)
                assert trace_respects_discipline(trace), (fn, p.describe())


class TestApply:
    def test_compose_matches_nested_apply(self):
        idf = identity_functional()
        pairs = [
            (constant_functional(ONES), idf),
            (idf, constant_functional(EventuallyConstant("10", 0))),
            (from_prefix_table({"0": "1", "1": "0"}, 1), idf),
        ]
        for outer, inner in pairs:
            for p in CORPUS[:2]:
                lhs = apply(compose(outer, inner), p)
                rhs = apply(outer, apply(inner, p))
                assert prefix(lhs, 64) == prefix(rhs, 64)

    def test_compose_identity_laws(self):
        idf = identity_functional()
        for p in CORPUS:
            assert prefix(apply(compose(idf, idf), p), 64) == prefix(p, 64)
        q = EventuallyConstant("111", 0)
        for p in CORPUS:
            out = apply(compose(constant_functional(q), identity_functional()), p)
            assert prefix(out, 64) == prefix(q, 64)

    def test_extensionality_of_equal_traces(self):
        # a raw rule that reads bit s and claims it at stage s has the same
        # trace as the identity functional
        mirrored = normalize(lambda read, s: [(s, read(s))])
        idf = identity_functional()
        for p in CORPUS:
            assert prefix(apply(mirrored, p), 64) == prefix(apply(idf, p), 64)
            assert stage_trace(mirrored, p, 16) == stage_trace(idf, p, 16)


class TestUseSoundness:
    def test_mutation_beyond_use_is_invisible(self):
        idf = identity_functional()
        p = EventuallyConstant("10110", 0)
        stage, bit, use = converged_at(idf, p, 3)
        base = prefix(apply(idf, p), 4)
        spliced = EventuallyConstant(prefix(p, use) + "1111", 1)
        assert prefix(apply(idf, spliced), 4) == base

    def test_table_use_bound(self):
        fn = from_prefix_table({"01": "11"}, 2)
        _, _, use = converged_at(fn, EventuallyConstant("01", 0), 0)
        assert use <= 2
        other = EventuallyConstant("01111", 1)  # same two bits, different beyond
        assert query(apply(fn, other), 0, 10**4) == 1


class TestPrefixTables:
    def test_lookup(self):
        fn = from_prefix_table({"1": "0", "0": "1"}, 1)
        assert query(apply(fn, EventuallyConstant("10", 0)), 0, 10**4) == 0
        assert query(apply(fn, ZEROS), 0, 10**4) == 1

    def test_empty_table_diverges(self):
        fn = from_prefix_table({}, 1)
        assert isinstance(query(apply(fn, ZEROS), 0, 10**4), Diverged)

    def test_inconsistent_entries_rejected(self):
        with pytest.raises(InconsistentTable):
            from_prefix_table({"0": "1", "01": "0"}, 2)
        with pytest.raises(InconsistentTable):
            from_prefix_table({"000": "1"}, 2)  # key longer than the use bound

    def test_compatible_overlap_allowed(self):
        fn = from_prefix_table({"0": "1", "01": "10"}, 2)
        assert prefix(apply(fn, EventuallyConstant("01", 0)), 2) == "10"

    def test_zero_padding_makes_matches_total(self):
        fn = from_prefix_table({"1": "11"}, 1)
        assert prefix(apply(fn, ONES), 8) == "11000000"

    def test_behavior_count_by_enumeration(self):
        # oracle: enumerate every consistent table with use 1 and output
        # length 1, record extensional behavior on {0^w, 1^w}
        keys = ["", "0", "1"]
        behaviors = set()
        for included in itertools.product([None, "0", "1"], repeat=3):
            entries = {k: v for k, v in zip(keys, included) if v is not None}
            try:
                fn = from_prefix_table(entries, 1)
            except InconsistentTable:
                continue
            row = []
            for oracle in (ZEROS, ONES):
                got = query(apply(fn, oracle), 0, 10**4)
                row.append("d" if isinstance(got, Diverged) else got)
            behaviors.add(tuple(row))
        assert len(behaviors) == 9

    def test_custom_stage_schedule_is_normalized(self):
        fn = from_prefix_table({"1": "10"}, 1, stage_schedule=lambda n: 5 - n)
        # claims arrive in reverse: output 1 at stage 4 waits for output 0,
        # which the schedule only surfaces at stage 5
        assert converged_at(fn, ONES, 0)[:2] == (5, 1)
        assert converged_at(fn, ONES, 1)[:2] == (6, 0)
