"""Stream layer: pairing codecs, combinators, fuel discipline."""

import pytest
from hypothesis import given, settings, strategies as st

from swlattice import (
    Diverged,
    EventuallyConstant,
    MalformedTag,
    ONES,
    ZEROS,
    decode_triple,
    interleave,
    pair_nat,
    prefix,
    project,
    query,
    tag,
    triple_nat,
    unpair_nat,
    untag,
)


def unpair_by_diagonal_scan(z):
    """Independent inverse: walk diagonals until the pair reproduces z."""
    s = 0
    while s * (s + 1) // 2 + s < z:
        s += 1
    for y in range(s + 1):
        if pair_nat(s - y, y) == z:
            return s - y, y
    raise AssertionError(f"no preimage for {z}")


class TestPairing:
    def test_base_case(self):
        assert pair_nat(0, 0) == 0

    def test_formula_example(self):
        assert pair_nat(1, 2) == 8

    def test_unpair_example_against_scan(self):
        assert unpair_nat(8) == unpair_by_diagonal_scan(8) == (1, 2)

    def test_exhaustive_inverse_below_1e5(self):
        for z in range(10**5):
            x, y = unpair_nat(z)
            assert pair_nat(x, y) == z
        x = y = 0
        while True:
            z = pair_nat(x, y)
            if z >= 10**5:
                if y == 0:
                    break
                x, y = x + y + 1, 0  # next diagonal
                continue
            assert unpair_nat(z) == (x, y)
            x, y = (x - 1, y + 1) if x else (x + y + 1, 0)

    @given(st.integers(0, 10**9), st.integers(0, 10**9))
    def test_bijective(self, x, y):
        assert unpair_nat(pair_nat(x, y)) == (x, y)


class TestTriples:
    def test_nested_zeros(self):
        assert triple_nat(0, 0, 0) == 0

    def test_right_nesting_via_two_pairs(self):
        # the oracle: compute through the two pairing calls and freeze
        expected = pair_nat(0, pair_nat(0, 1))
        assert expected == 5
        assert triple_nat(0, 0, 1) == expected
        assert decode_triple(expected) == (0, 0, 1)

    def test_round_trip(self):
        assert decode_triple(triple_nat(7, 9, 1)) == (7, 9, 1)

    def test_bit_precondition(self):
        with pytest.raises(ValueError):
            triple_nat(0, 0, 2)

    def test_exhaustive_below_1e5(self):
        seen = 0
        for m in range(10**5):
            d = decode_triple(m)
            if d is not None:
                n, s, i = d
                assert triple_nat(n, s, i) == m
                seen += 1
        assert seen > 0

    @given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 1))
    def test_codes_decode(self, n, s, i):
        assert decode_triple(triple_nat(n, s, i)) == (n, s, i)


class TestCombinators:
    def test_interleave_definition(self):
        assert prefix(interleave(ZEROS, ONES), 6) == "010101"

    def test_interleave_unfolded(self):
        assert prefix(interleave(EventuallyConstant("10", 0), ZEROS), 4) == "1000"

    def test_projection_retracts(self):
        streams = [ZEROS, ONES, EventuallyConstant("0110", 0), EventuallyConstant("10", 1)]
        for p in streams:
            for q in streams:
                r = interleave(p, q)
                assert prefix(project(r, 0), 64) == prefix(p, 64)
                assert prefix(project(r, 1), 64) == prefix(q, 64)

    def test_tag_zero_shape(self):
        assert prefix(tag(0, ZEROS), 6) == "100000"

    def test_tag_one_shape(self):
        # unfold the even/odd law: evens are the second indicator pattern
        assert prefix(tag(1, ZEROS), 6) == "001000"

    def test_untag_round_trip(self):
        p = EventuallyConstant("011010", 0)
        for i in (0, 1):
            t, body = untag(tag(i, p))
            assert t == i
            assert prefix(body, 64) == prefix(p, 64)

    def test_untag_malformed(self):
        with pytest.raises(MalformedTag):
            untag(interleave(ZEROS, ZEROS))  # even track all zero
        with pytest.raises(MalformedTag):
            untag(interleave(ONES, ZEROS))  # two ones on the even track

    def test_projection_of_generic_stream(self):
        r = tag(1, EventuallyConstant("1", 0))
        assert prefix(project(r, 0), 4) == "0100"


class TestQueries:
    def test_tail_bit(self):
        assert query(EventuallyConstant("01", 0), 5, 100) == 0

    def test_prefix_of_ones(self):
        assert prefix(ONES, 3, 100) == "111"

    def test_eval_of_zeros_diverges(self):
        from swlattice import eval_stream

        out = query(eval_stream(ZEROS), 0, 10**4)
        assert isinstance(out, Diverged)
        assert out.spent == 10**4

    def test_determinism_same_fuel(self):
        from swlattice import eval_stream

        cases = [
            (EventuallyConstant("01", 0), 5, 100),
            (interleave(ZEROS, ONES), 9, 3),
            (eval_stream(ZEROS), 0, 500),
            (tag(1, ONES), 3, 50),
        ]
        for stream, n, fuel in cases:
            assert query(stream, n, fuel) == query(stream, n, fuel)

    def test_memo_is_value_invisible(self):
        p = interleave(EventuallyConstant("10", 0), ONES)
        cold = query(p, 7, 100)
        hot = query(p, 7, 100)
        assert cold == hot == 1


def stream_trees(max_depth=3):
    base = st.builds(
        EventuallyConstant,
        st.text(alphabet="01", max_size=6),
        st.integers(0, 1),
    )

    def extend(children):
        return st.one_of(
            st.builds(interleave, children, children),
            st.builds(lambda i, p: tag(i, p), st.integers(0, 1), children),
            st.builds(lambda p, s: project(p, s), children, st.integers(0, 1)),
        )

    return st.recursive(base, extend, max_leaves=6)


class TestFuelDiscipline:
    @settings(max_examples=60, deadline=None)
    @given(stream_trees(), st.integers(0, 48), st.integers(1, 200))
    def test_monotone_fuel(self, p, n, fuel):
        first = query(p, n, fuel)
        if not isinstance(first, Diverged):
            for extra in (1, 7, 100):
                assert query(p, n, fuel + extra) == first

    @settings(max_examples=60, deadline=None)
    @given(
        st.text(alphabet="01", max_size=8),
        st.integers(0, 1),
        st.integers(0, 64),
    )
    def test_eventually_constant_total(self, bits, tail, n):
        p = EventuallyConstant(bits, tail)
        out = query(p, n, n + len(bits) + 1)
        assert not isinstance(out, Diverged)
