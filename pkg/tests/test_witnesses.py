"""Witness constructors: each verified end to end on corpus problems."""

import pytest

from swlattice import (
    Compose,
    EventuallyConstant,
    IDENTITY,
    KindMismatch,
    NotAMedvedevReduction,
    ONES,
    ProjectSide,
    ReductionWitness,
    SW,
    SourceTargetMismatch,
    VerifyConfig,
    W,
    ZEROS,
    apply,
    compose_witnesses,
    constant_functional,
    coproduct,
    corpus,
    extract_mass_map,
    finite_problem,
    from_prefix_table,
    interleave,
    make_total_approx,
    medvedev_embed,
    medvedev_join_iso,
    medvedev_meet_iso,
    medvedev_problem,
    meet,
    prefix,
    strong_join,
    sw_assoc,
    sw_assoc_reverse,
    sw_commute,
    sw_distrib_coproduct_meet,
    sw_distrib_meet_join,
    sw_join_injections,
    sw_join_le_coproduct,
    sw_join_presentation_iso,
    sw_join_universal,
    sw_meet_lower,
    sw_meet_universal,
    tag,
    verify_equivalence,
    verify_witness,
    w_coproduct_injections,
    w_coproduct_universal,
)
from swlattice.approx import EVAL
from swlattice.operations import decode_candidate_pair

CFG = VerifyConfig()
C = corpus()
F, G, H = C["atomA"], C["atomB"], C["atomC"]


def passes(w, src, tgt):
    return verify_witness(w, src, tgt, CFG).passed


class TestJoinInjections:
    def test_both_pass(self):
        join = strong_join(F, G)
        w_f, w_g = sw_join_injections(F, G, join)
        assert passes(w_f, F, join)
        assert passes(w_g, G, join)

    def test_backward_unfolds_decode_after_projection(self):
        q = EventuallyConstant("1100", 0)
        packed = interleave(make_total_approx(q, 0), ONES)
        backward = Compose(EVAL, ProjectSide(0))
        assert prefix(apply(backward, packed), 48) == prefix(q, 48)

    def test_forward_shape(self):
        p = EventuallyConstant("10", 0)
        # tag 1 interleaves the second indicator pattern with the body
        assert prefix(apply(sw_join_injections(F, G, strong_join(F, G))[1].forward, p), 4) == "0110"


class TestJoinUniversality:
    def test_combined_witness_passes(self):
        join = strong_join(F, G)
        w_f = ReductionWitness(SW, constant_functional(H.instances[0]), constant_functional(F.solutions(0)[0]), F.name, H.name)
        w_g = ReductionWitness(SW, constant_functional(H.instances[0]), constant_functional(G.solutions(0)[0]), G.name, H.name)
        assert passes(sw_join_universal(w_f, w_g, join), join, H)

    def test_degenerate_target_equal_to_operand(self):
        join = strong_join(F, G)
        w_f = ReductionWitness(SW, IDENTITY, IDENTITY, F.name, F.name)
        w_g = ReductionWitness(SW, constant_functional(F.instances[0]), constant_functional(G.solutions(0)[0]), G.name, F.name)
        assert passes(sw_join_universal(w_f, w_g, join), join, F)

    def test_rejects_plain_witnesses(self):
        join = strong_join(F, G)
        w = ReductionWitness(W, IDENTITY, IDENTITY, F.name, F.name)
        with pytest.raises(KindMismatch):
            sw_join_universal(w, w, join)


class TestMeet:
    def test_lower_bounds(self):
        m = meet(F, G)
        assert passes(sw_meet_lower(m, F, G, 0), m, F)
        assert passes(sw_meet_lower(m, F, G, 1), m, G)

    def test_universal(self):
        k = C["atomD"]
        m = meet(F, G)
        w0 = ReductionWitness(SW, constant_functional(F.instances[0]), constant_functional(k.solutions(0)[0]), k.name, F.name)
        w1 = ReductionWitness(SW, constant_functional(G.instances[0]), constant_functional(k.solutions(0)[0]), k.name, G.name)
        assert passes(sw_meet_universal(w0, w1, m), k, m)

    def test_universal_with_equal_witnesses(self):
        m = meet(F, F)
        w = ReductionWitness(SW, IDENTITY, IDENTITY, F.name, F.name)
        assert passes(sw_meet_universal(w, w, m), F, m)


class TestCoproduct:
    def test_injections(self):
        cop = coproduct(F, G)
        w_f, w_g = w_coproduct_injections(F, G, cop)
        assert passes(w_f, F, cop)
        assert passes(w_g, G, cop)

    def test_universal(self):
        cop = coproduct(F, G)
        w_f = ReductionWitness(W, constant_functional(H.instances[0]),
                               Compose(constant_functional(F.solutions(0)[0]), ProjectSide(1)), F.name, H.name)
        w_g = ReductionWitness(W, constant_functional(H.instances[0]),
                               Compose(constant_functional(G.solutions(0)[0]), ProjectSide(1)), G.name, H.name)
        assert passes(w_coproduct_universal(w_f, w_g, cop), cop, H)

    def test_weakening_preserves_passing(self):
        join = strong_join(F, G)
        strong_witnesses = list(sw_join_injections(F, G, join))
        m = meet(F, G)
        strong_witnesses.append(sw_meet_lower(m, F, G, 0))
        problems = {w.source: s for w, s in zip(strong_witnesses, (F, G, m))}
        targets = (join, join, F)
        for w, tgt in zip(strong_witnesses, targets):
            assert passes(w, problems[w.source], tgt)
            weak = w.weakened()
            assert weak.kind == W
            assert passes(weak, problems[w.source], tgt)


class TestJoinVersusCoproduct:
    def test_strong_direction(self):
        join, cop = strong_join(F, G), coproduct(F, G)
        assert passes(sw_join_le_coproduct(join, cop), join, cop)

    def test_second_component_decodes_to_infinity(self):
        join, cop = strong_join(F, G), coproduct(F, G)
        w = sw_join_le_coproduct(join, cop)
        answer = tag(0, F.solutions(0)[0])  # a coproduct answer on the f side
        candidate = apply(w.backward, answer)
        first, second = decode_candidate_pair(candidate)
        assert first.is_point
        assert second.is_infinity

    def test_plain_equivalence(self):
        join, cop = strong_join(F, G), coproduct(F, G)
        w_down = sw_join_le_coproduct(join, cop).weakened()
        wi_f, wi_g = sw_join_injections(F, G, join)
        w_up = w_coproduct_universal(wi_f.weakened(), wi_g.weakened(), cop)
        rep = verify_equivalence(join, cop, w_down, w_up, CFG)
        assert rep.passed


class TestDistributivity:
    def test_meet_join_inequality(self):
        src = strong_join(meet(F, H), meet(G, H))
        tgt = meet(strong_join(F, G), H)
        assert passes(sw_distrib_meet_join(src, tgt), src, tgt)

    def test_h_branch_components_decode_to_tagged_solution(self):
        src = strong_join(meet(F, H), meet(G, H))
        tgt = meet(strong_join(F, G), H)
        w = sw_distrib_meet_join(src, tgt)
        answer = tag(1, H.solutions(0)[0])  # target answered through its h side
        candidate = apply(w.backward, answer)
        first, second = decode_candidate_pair(candidate)
        expected = prefix(tag(1, H.solutions(0)[0]), 24)
        assert first.is_point and prefix(first.point, 24) == expected
        assert second.is_point and prefix(second.point, 24) == expected

    def test_f_branch_junk_second_component_accepted(self):
        src = strong_join(meet(F, H), meet(G, H))
        tgt = meet(strong_join(F, G), H)
        w = sw_distrib_meet_join(src, tgt)
        join_answer = interleave(make_total_approx(F.solutions(0)[0], 0), ZEROS)
        candidate = apply(w.backward, tag(0, join_answer))
        first, second = decode_candidate_pair(candidate)
        assert first.is_point
        assert second.is_infinity  # junk decodes to the added point
        assert src.check(0, candidate, 48, 10**6).yes

    def test_coproduct_meet_inequality(self):
        src = meet(coproduct(F, G), H)
        tgt = coproduct(meet(F, H), meet(G, H))
        assert passes(sw_distrib_coproduct_meet(src, tgt), src, tgt)

    def test_h_branch_maps_independent_of_tag(self):
        src = meet(coproduct(F, G), H)
        tgt = coproduct(meet(F, G), meet(G, H))
        w = sw_distrib_coproduct_meet(src, tgt)
        v = H.solutions(0)[0]
        for i in (0, 1):
            candidate = apply(w.backward, tag(i, tag(1, v)))
            assert prefix(candidate, 24) == prefix(tag(1, v), 24)

    def test_f_branch_renests_tags(self):
        src = meet(coproduct(F, G), H)
        tgt = coproduct(meet(F, H), meet(G, H))
        w = sw_distrib_coproduct_meet(src, tgt)
        y = F.solutions(0)[0]
        candidate = apply(w.backward, tag(0, tag(0, y)))
        assert prefix(candidate, 24) == prefix(tag(0, tag(0, y)), 24)


class TestPresentationIso:
    def test_identity_pair_passes_both_ways(self):
        join = strong_join(F, G)
        w1, w2 = sw_join_presentation_iso(join)
        assert verify_equivalence(join, join, w1, w2, CFG).passed

    def test_composition_with_injection_still_passes(self):
        join = strong_join(F, G)
        w_f, _ = sw_join_injections(F, G, join)
        w1, _ = sw_join_presentation_iso(join)
        assert passes(compose_witnesses(w_f, w1), F, join)

    def test_degenerate_equal_operands(self):
        join = strong_join(F, F)
        w1, w2 = sw_join_presentation_iso(join)
        assert verify_equivalence(join, join, w1, w2, CFG).passed


class TestCommuteAssoc:
    def test_commute_both_directions(self):
        ab, ba = strong_join(F, G), strong_join(G, F)
        assert passes(sw_commute(ab, ba), ab, ba)
        assert passes(sw_commute(ba, ab), ba, ab)

    def test_commute_on_equal_operands(self):
        aa = strong_join(F, F)
        assert passes(sw_commute(aa, aa), aa, aa)

    def test_assoc_both_directions(self):
        lhs = strong_join(strong_join(F, G), H)
        rhs = strong_join(F, strong_join(G, H))
        assert passes(sw_assoc(lhs, rhs), lhs, rhs)
        assert passes(sw_assoc_reverse(rhs, lhs), rhs, lhs)


class TestComposition:
    def test_equivalence_self_composite(self):
        join = strong_join(F, G)
        w1, w2 = sw_join_presentation_iso(join)
        assert passes(compose_witnesses(w1, w2), join, join)

    def test_identity_composition_is_extensionally_neutral(self):
        join = strong_join(F, G)
        w_f, _ = sw_join_injections(F, G, join)
        iso, _ = sw_join_presentation_iso(join)
        combined = compose_witnesses(w_f, iso)
        p = F.instances[0]
        assert prefix(apply(combined.forward, p), 32) == prefix(apply(w_f.forward, p), 32)

    def test_strong_chain(self):
        join, cop = strong_join(F, G), coproduct(F, G)
        w_f, _ = sw_join_injections(F, G, join)
        w_le = sw_join_le_coproduct(join, cop)
        chained = compose_witnesses(w_f, w_le)
        assert chained.kind == SW
        assert passes(chained, F, cop)

    def test_source_target_mismatch(self):
        join = strong_join(F, G)
        w_f, w_g = sw_join_injections(F, G, join)
        with pytest.raises(SourceTargetMismatch):
            compose_witnesses(w_f, w_g)


class TestMedvedev:
    def test_order_preservation_with_subset(self):
        d_a, d_b = C["medA"], C["medB"]
        w = medvedev_embed(IDENTITY, d_a, d_b)
        assert passes(w, d_b, d_a)

    def test_order_reflection_extracts_the_map(self):
        d_a, d_b = C["medA"], C["medB"]
        w = medvedev_embed(IDENTITY, d_a, d_b)
        assert extract_mass_map(w, d_a, d_b)

    def test_rejects_non_reductions(self):
        d_a = medvedev_problem("da", [EventuallyConstant("10", 0)])
        d_b = medvedev_problem("db", [ONES])
        with pytest.raises(NotAMedvedevReduction):
            medvedev_embed(IDENTITY, d_a, d_b)

    def test_table_functional_as_mass_map(self):
        d_a, d_b = C["medA"], C["medB"]
        fn = from_prefix_table({"1": "10"}, 1)
        w = medvedev_embed(fn, d_a, d_b)
        assert passes(w, d_b, d_a)

    def test_join_iso(self):
        d_a, d_b = C["medA"], C["medB"]
        join_ab = strong_join(d_a, d_b)
        w1, w2 = medvedev_join_iso(d_a, d_b, C["medUnion"], join_ab)
        assert passes(w1, join_ab, C["medUnion"])
        assert passes(w2, C["medUnion"], join_ab)

    def test_meet_iso(self):
        d_a, d_b = C["medA"], C["medB"]
        meet_ab = meet(d_a, d_b)
        w1, w2 = medvedev_meet_iso(d_a, d_b, C["medProd"], meet_ab)
        assert passes(w1, C["medProd"], meet_ab)
        assert passes(w2, meet_ab, C["medProd"])
