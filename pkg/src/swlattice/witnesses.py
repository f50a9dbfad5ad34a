"""Reduction witnesses between problems, and all their constructors.

A witness is a (kind, forward, backward) triple between named problems.
Strong witnesses feed the backward functional only the realizer's answer;
plain witnesses feed it the pair (instance, answer).  Soundness of every
constructor here is established by the verification harness, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import ZEROS, tag
from .functionals import (
    Compose,
    Constant,
    Dispatch,
    Factor,
    Functional,
    IDENTITY,
    PairOf,
    ProjectSide,
    TagWith,
    apply,
)
from .approx import EVAL, ApproxOf
from .bits import prefix, query
from .problems import Problem

SW = "sW"
W = "W"


class KindMismatch(Exception):
    pass


class SourceTargetMismatch(Exception):
    pass


class NotAMedvedevReduction(Exception):
    pass


@dataclass
class ReductionWitness:
    kind: str
    forward: Functional
    backward: Functional
    source: str
    target: str

    def weakened(self) -> "ReductionWitness":
        """Reinterpret a strong witness as a plain one.

        The plain backward receives (instance, answer); a strong backward
        only wants the answer, so it reads the second track.
        """
        if self.kind == W:
            return self
        return ReductionWitness(W, self.forward, Compose(self.backward, ProjectSide(1)), self.source, self.target)

    def describe(self):
        return f"{self.source} <={self.kind} {self.target}"


def _require_sw(*witnesses):
    for w in witnesses:
        if w.kind != SW:
            raise KindMismatch(f"{w.describe()} is not a strong witness")


# ---------------------------------------------------------------------------
# Strong join


def sw_join_injections(f: Problem, g: Problem, join: Problem):
    """Each operand reduces strongly into the join: tag in, decode out."""
    w_f = ReductionWitness(SW, TagWith(0), Compose(EVAL, ProjectSide(0)), f.name, join.name)
    w_g = ReductionWitness(SW, TagWith(1), Compose(EVAL, ProjectSide(1)), g.name, join.name)
    return w_f, w_g


def sw_join_universal(w_f: ReductionWitness, w_g: ReductionWitness, join: Problem) -> ReductionWitness:
    """Combine strong witnesses into a common target through the join.

    Forward dispatches on the tag; backward pairs the encoded records of
    both translated answers, so each component decodes independently.
    """
    _require_sw(w_f, w_g)
    if w_f.target != w_g.target:
        raise SourceTargetMismatch(f"{w_f.describe()} vs {w_g.describe()}")
    forward = Dispatch(w_f.forward, w_g.forward)
    backward = PairOf(ApproxOf(w_f.backward), ApproxOf(w_g.backward))
    return ReductionWitness(SW, forward, backward, join.name, w_f.target)


def sw_join_presentation_iso(join: Problem):
    """The join problem is its own pair-form presentation, identically."""
    w1 = ReductionWitness(SW, IDENTITY, IDENTITY, join.name, join.name)
    w2 = ReductionWitness(SW, IDENTITY, IDENTITY, join.name, join.name)
    return w1, w2


def sw_commute(join_fg: Problem, join_gf: Problem) -> ReductionWitness:
    """strong_join(f,g) reduces to strong_join(g,f): flip tag, swap pair."""
    forward = Dispatch(TagWith(1), TagWith(0))
    backward = PairOf(ProjectSide(1), ProjectSide(0))
    return ReductionWitness(SW, forward, backward, join_fg.name, join_gf.name)


def _enc(chain: Functional) -> Functional:
    return ApproxOf(chain)


def _e_of(side: int) -> Functional:
    return Compose(EVAL, ProjectSide(side))


def sw_assoc(lhs: Problem, rhs: Problem) -> ReductionWitness:
    """strong_join(strong_join(f,g),h) reduces to strong_join(f,strong_join(g,h)).

    Forward renests the tags.  Backward rebuilds both components: the first
    re-encodes the pair (first track, record of e.pi0.e.pi1); the second
    encodes e.pi1.e.pi1 directly.  Each piece that may diverge is wrapped
    in an encoding, which is total regardless, so the unconstrained
    component never spoils the constrained one.
    """
    forward = Dispatch(
        Dispatch(TagWith(0), Compose(TagWith(1), TagWith(0))),
        Compose(TagWith(1), TagWith(1)),
    )
    inner_junk = _enc(Compose(EVAL, Compose(ProjectSide(0), _e_of(1))))
    a_part = Compose(_enc(IDENTITY), PairOf(ProjectSide(0), inner_junk))
    b_part = _enc(Compose(EVAL, Compose(ProjectSide(1), _e_of(1))))
    backward = PairOf(a_part, b_part)
    return ReductionWitness(SW, forward, backward, lhs.name, rhs.name)


def sw_assoc_reverse(rhs: Problem, lhs: Problem) -> ReductionWitness:
    """The mirror renesting: strong_join(f,strong_join(g,h)) into the left form."""
    forward = Dispatch(
        Compose(TagWith(0), TagWith(0)),
        Dispatch(Compose(TagWith(0), TagWith(1)), TagWith(1)),
    )
    a_part = _enc(Compose(EVAL, Compose(ProjectSide(0), _e_of(0))))
    w0 = _enc(Compose(EVAL, Compose(ProjectSide(1), _e_of(0))))
    w1 = _enc(_e_of(1))
    b_part = Compose(_enc(IDENTITY), PairOf(w0, w1))
    backward = PairOf(a_part, b_part)
    return ReductionWitness(SW, forward, backward, rhs.name, lhs.name)


# ---------------------------------------------------------------------------
# Meet


def sw_meet_lower(meet_prob: Problem, f: Problem, g: Problem, side: int) -> ReductionWitness:
    """meet(f,g) reduces strongly to either operand."""
    operand = f if side == 0 else g
    return ReductionWitness(SW, ProjectSide(side), TagWith(side), meet_prob.name, operand.name)


def sw_meet_universal(w0: ReductionWitness, w1: ReductionWitness, meet_prob: Problem) -> ReductionWitness:
    """k below both operands is below the meet: pair forward, dispatch back."""
    _require_sw(w0, w1)
    if w0.source != w1.source:
        raise SourceTargetMismatch(f"{w0.describe()} vs {w1.describe()}")
    forward = PairOf(w0.forward, w1.forward)
    backward = Dispatch(w0.backward, w1.backward)
    return ReductionWitness(SW, forward, backward, w0.source, meet_prob.name)


# ---------------------------------------------------------------------------
# Coproduct (plain-kind join)


def w_coproduct_injections(f: Problem, g: Problem, cop: Problem):
    """Operands reduce plainly into the coproduct; backward strips the tag."""
    strip = Compose(ProjectSide(1), ProjectSide(1))
    w_f = ReductionWitness(W, TagWith(0), strip, f.name, cop.name)
    w_g = ReductionWitness(W, TagWith(1), strip, g.name, cop.name)
    return w_f, w_g


def w_coproduct_universal(w_f: ReductionWitness, w_g: ReductionWitness, cop: Problem) -> ReductionWitness:
    """Combine plain witnesses into a common target through the coproduct.

    The backward consumes (tagged instance, answer): it regroups to
    (tag, (instance, answer)), dispatches, and restores the tag on the
    operand's solution.
    """
    w_f = w_f.weakened()
    w_g = w_g.weakened()
    if w_f.target != w_g.target:
        raise SourceTargetMismatch(f"{w_f.describe()} vs {w_g.describe()}")
    forward = Dispatch(w_f.forward, w_g.forward)
    backward = Compose(
        Dispatch(Compose(TagWith(0), w_f.backward), Compose(TagWith(1), w_g.backward)),
        Factor(),
    )
    return ReductionWitness(W, forward, backward, cop.name, w_f.target)


def sw_join_le_coproduct(join: Problem, cop: Problem) -> ReductionWitness:
    """The strong join reduces strongly to the coproduct.

    A tagged coproduct answer becomes a pair whose matching component is
    the encoded record of the answer body and whose other component is the
    zero stream (decoding to the added infinity point).
    """
    backward = Dispatch(
        PairOf(_enc(IDENTITY), Constant(ZEROS)),
        PairOf(Constant(ZEROS), _enc(IDENTITY)),
    )
    return ReductionWitness(SW, IDENTITY, backward, join.name, cop.name)


# ---------------------------------------------------------------------------
# Distributivity inequalities


def sw_distrib_meet_join(source: Problem, target: Problem) -> ReductionWitness:
    """strong_join(meet(f,h), meet(g,h)) reduces to meet(strong_join(f,g), h).

    Forward renests <i,<p0,p1>> as <<i,p0>,p1>.  Backward: on a tag-0
    answer <q0,q1> emit the records of <0,e(q0)> and <0,e(q1)>; on a tag-1
    answer q emit the record of <1,q> twice.
    """
    forward = Dispatch(
        PairOf(Compose(TagWith(0), ProjectSide(0)), ProjectSide(1)),
        PairOf(Compose(TagWith(1), ProjectSide(0)), ProjectSide(1)),
    )

    def tagged_eval(side):
        return _enc(Compose(IDENTITY, Compose(TagWith(0), _e_of(side))))

    h_side = _enc(Compose(IDENTITY, TagWith(1)))
    backward = Dispatch(
        PairOf(tagged_eval(0), tagged_eval(1)),
        PairOf(h_side, h_side),
    )
    return ReductionWitness(SW, forward, backward, source.name, target.name)


def sw_distrib_coproduct_meet(source: Problem, target: Problem) -> ReductionWitness:
    """meet(coproduct(f,g), h) reduces to coproduct(meet(f,h), meet(g,h)).

    Forward: <(i,p), u> -> <i, (p,u)>.  Backward re-tags: <i,<0,y>> -> <0,<i,y>>
    and <i,<1,v>> -> <1,v>.  No instance access is needed, so the witness
    is strong.
    """
    forward = Factor()
    backward = Dispatch(
        Dispatch(Compose(TagWith(0), TagWith(0)), TagWith(1)),
        Dispatch(Compose(TagWith(0), TagWith(1)), TagWith(1)),
    )
    return ReductionWitness(SW, forward, backward, source.name, target.name)


# ---------------------------------------------------------------------------
# Composition


def compose_witnesses(w1: ReductionWitness, w2: ReductionWitness) -> ReductionWitness:
    """Transitivity: from w1: a <= b and w2: b <= c build a <= c."""
    if w1.target != w2.source:
        raise SourceTargetMismatch(f"{w1.describe()} then {w2.describe()}")
    if w1.kind == SW and w2.kind == SW:
        return ReductionWitness(
            SW,
            Compose(w2.forward, w1.forward),
            Compose(w1.backward, w2.backward),
            w1.source,
            w2.target,
        )
    a, b = w1.weakened(), w2.weakened()
    forward = Compose(b.forward, a.forward)
    # (p, answer) -> psi1(p, psi2(phi1(p), answer))
    inner = Compose(b.backward, PairOf(Compose(a.forward, ProjectSide(0)), ProjectSide(1)))
    backward = Compose(a.backward, PairOf(ProjectSide(0), inner))
    return ReductionWitness(W, forward, backward, w1.source, w2.target)


# ---------------------------------------------------------------------------
# Mass-problem embedding


def medvedev_embed(phi: Functional, d_a: Problem, d_b: Problem, depth: int = 64, fuel: int = 10**6) -> ReductionWitness:
    """From a mass reduction (phi maps B into A) build d_B <= d_A strongly.

    The mapping claim is checked on the finite element lists first.
    """
    targets = [prefix(a, depth, fuel) for a in d_a.mass_elements]
    for b in d_b.mass_elements:
        image = prefix(apply(phi, b), depth, fuel)
        if image not in targets:
            raise NotAMedvedevReduction(f"{phi.expr()} maps an element of {d_b.name} outside {d_a.name}")
    return ReductionWitness(SW, phi, IDENTITY, d_b.name, d_a.name)


def extract_mass_map(w: ReductionWitness, d_a: Problem, d_b: Problem, depth: int = 64, fuel: int = 10**6) -> bool:
    """Order reflection: the forward of a strong witness maps B into A."""
    targets = [prefix(a, depth, fuel) for a in d_a.mass_elements]
    return all(prefix(apply(w.forward, b), depth, fuel) in targets for b in d_b.mass_elements)


def medvedev_join_iso(d_a: Problem, d_b: Problem, d_union: Problem, join_ab: Problem):
    """The tagged union of mass problems is the strong join of their images."""
    w_a = ReductionWitness(SW, TagWith(0), Constant(ZEROS), d_a.name, d_union.name)
    w_b = ReductionWitness(SW, TagWith(1), Constant(ZEROS), d_b.name, d_union.name)
    join_le_union = sw_join_universal(w_a, w_b, join_ab)
    union_le_join = ReductionWitness(SW, IDENTITY, Constant(ZEROS), d_union.name, join_ab.name)
    return join_le_union, union_le_join


def medvedev_meet_iso(d_a: Problem, d_b: Problem, d_prod: Problem, meet_ab: Problem):
    """The product of mass problems is the meet of their images."""
    w0 = ReductionWitness(SW, ProjectSide(0), IDENTITY, d_prod.name, d_a.name)
    w1 = ReductionWitness(SW, ProjectSide(1), IDENTITY, d_prod.name, d_b.name)
    prod_le_meet = sw_meet_universal(w0, w1, meet_ab)
    meet_le_prod = ReductionWitness(SW, IDENTITY, Constant(tag(0, ZEROS)), meet_ab.name, d_prod.name)
    return prod_le_meet, meet_le_prod
