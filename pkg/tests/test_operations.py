"""Lattice operations as problem transformers."""

from swlattice import (
    EventuallyConstant,
    ONES,
    ZEROS,
    coproduct,
    finite_problem,
    interleave,
    make_total_approx,
    meet,
    prefix,
    strong_join,
    tag,
)
from swlattice.operations import decode_candidate_pair


def ec(bits, tail=0):
    return EventuallyConstant(bits, tail)


def sample_problems():
    f = finite_problem("f", [(ec("10"), [ec("110")])], d_id=2)
    g = finite_problem("g", [(ec("01"), [ec("1010")]), (ec("11"), [ZEROS])], d_id=2)
    return f, g


class TestInstanceCounts:
    def test_counts_follow_the_operator(self):
        f, g = sample_problems()
        assert len(coproduct(f, g).instances) == len(f.instances) + len(g.instances)
        assert len(meet(f, g).instances) == len(f.instances) * len(g.instances)
        assert len(strong_join(f, g).instances) == len(f.instances) + len(g.instances)


class TestCoproduct:
    def test_tagged_solution_accepted(self):
        f, g = sample_problems()
        cop = coproduct(f, g)
        assert cop.check(0, tag(0, ec("110")), 32, 10**5).yes
        assert cop.check(1, tag(1, ec("1010")), 32, 10**5).yes

    def test_wrong_tag_rejected(self):
        f, g = sample_problems()
        cop = coproduct(f, g)
        res = cop.check(0, tag(1, ec("1010")), 32, 10**5)
        assert res.verdict == "no"
        assert res.bit == 0  # tag mismatch shows on the even track start

    def test_wrong_body_rejected(self):
        f, g = sample_problems()
        cop = coproduct(f, g)
        assert cop.check(0, tag(0, ZEROS), 32, 10**5).verdict == "no"


class TestMeet:
    def test_either_side_accepted(self):
        f, g = sample_problems()
        m = meet(f, g)
        assert m.check(0, tag(0, ec("110")), 32, 10**5).yes
        assert m.check(0, tag(1, ec("1010")), 32, 10**5).yes

    def test_delegation_rejects_wrong_side_solution(self):
        f, g = sample_problems()
        m = meet(f, g)
        # the g-solution under tag 0 must be judged by f's checker
        assert m.check(0, tag(0, ec("1010")), 32, 10**5).verdict == "no"

    def test_delegation_is_exercised(self):
        f, g = sample_problems()
        m = meet(f, g)
        calls = []
        original = f.check

        def spy(idx, cand, depth, fuel):
            res = original(idx, cand, depth, fuel)
            calls.append((idx, res.verdict))
            return res

        f.check = spy
        try:
            assert m.check(0, tag(0, ec("110")), 32, 10**5).yes
        finally:
            f.check = original
        assert calls == [(0, "yes")]

    def test_composite_yes_requires_delegate_yes(self):
        f, g = sample_problems()
        m = meet(f, g)

        def veto(idx, cand, depth, fuel):
            from swlattice.problems import no

            return no(0, "vetoed")

        original = f.check
        f.check = veto
        try:
            assert m.check(0, tag(0, ec("110")), 32, 10**5).verdict == "no"
        finally:
            f.check = original


class TestStrongJoin:
    def test_canonical_solutions_pass(self):
        f, g = sample_problems()
        join = strong_join(f, g)
        for idx in range(len(join.instances)):
            for sol in join.solutions(idx):
                assert join.check(idx, sol, 64, 10**6).yes, idx

    def test_encoded_record_with_junk_accepted(self):
        f, g = sample_problems()
        join = strong_join(f, g)
        candidate = interleave(make_total_approx(ec("110"), 0), ONES)
        assert join.check(0, candidate, 48, 10**6).yes

    def test_non_total_record_rejected(self):
        f, g = sample_problems()
        join = strong_join(f, g)
        res = join.check(0, interleave(ZEROS, ONES), 48, 10**6)
        assert res.verdict == "no"
        assert "not total" in res.detail

    def test_wrong_decoded_solution_rejected(self):
        f, g = sample_problems()
        join = strong_join(f, g)
        candidate = interleave(make_total_approx(ZEROS, 0), ZEROS)
        assert join.check(0, candidate, 48, 10**6).verdict == "no"

    def test_nested_joins_check(self):
        f, g = sample_problems()
        h = finite_problem("h", [(ec("00"), [ec("01")])], d_id=2)
        outer = strong_join(strong_join(f, g), h)
        for idx in range(len(outer.instances)):
            for sol in outer.solutions(idx):
                assert outer.check(idx, sol, 64, 10**6).yes, idx

    def test_diagnostic_pair_decode(self):
        f, g = sample_problems()
        join = strong_join(f, g)
        candidate = join.solutions(0)[0]  # record paired with the zero stream
        first, second = decode_candidate_pair(candidate)
        assert first.is_point
        assert prefix(first.point, 24) == prefix(ec("110"), 24)
        assert second.is_infinity
