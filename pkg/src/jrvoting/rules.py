"""Named approval-based multi-winner voting rules.

Two families:

* score-optimizing rules (approval, satisfaction, weighted-satisfaction,
  minimax-distance) dispatch to the exact solver;
* sequential rules elect one candidate per round, reweighting each voter's
  contribution by how many of her approved candidates are already elected.

On top of these sit two representation-constrained rules that optimize over
the committees providing justified representation only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from . import axioms
from .core import (
    AV,
    BallotProfile,
    BudgetExhausted,
    Committee,
    MAV,
    SAV,
    ScoringObjective,
    TieBreak,
    WeightVector,
    wpav_objective,
)
from .solver import OptimizationRequest, optimize_committee

SCORE_RULES = ("av", "sav", "mav", "pav", "cc", "wpav")
SEQUENTIAL_RULES = ("rav", "gav", "geometric-rav", "wrav")
FILTERED_RULES = ("ujrav", "ejrav")
RULE_NAMES = SCORE_RULES + SEQUENTIAL_RULES + FILTERED_RULES


@dataclass(frozen=True)
class RuleSpec:
    """A rule name plus, for the weight-parameterized rules, its weight vector.

    Named families expand to explicit weight vectors of length m at
    invocation time; the geometric sequential family additionally depends on
    the profile's voter count.
    """

    name: str
    weights: Optional[WeightVector] = None
    tiebreak: TieBreak = TieBreak.LEXICOGRAPHIC

    def __post_init__(self):
        if self.name not in RULE_NAMES:
            raise ValueError(f"unknown rule {self.name!r}")
        if self.name in ("wpav", "wrav") and self.weights is None:
            raise ValueError(f"rule {self.name!r} requires an explicit weight vector")
        if self.name not in ("wpav", "wrav") and self.weights is not None:
            raise ValueError(f"rule {self.name!r} does not take a weight vector")


def rule_weights(spec: RuleSpec, profile: BallotProfile) -> Optional[WeightVector]:
    """The explicit weight vector a named family uses on this profile."""
    m = profile.num_candidates
    if spec.name in ("wpav", "wrav"):
        return spec.weights
    if spec.name in ("pav", "rav"):
        return WeightVector.harmonic(m)
    if spec.name in ("cc", "gav"):
        return WeightVector.coverage(m)
    if spec.name == "geometric-rav":
        return WeightVector.geometric(m, Fraction(1, profile.n))
    if spec.name == "av":
        return WeightVector.all_ones(m)
    return None


@dataclass(frozen=True)
class RoundRecord:
    """One round of a sequential rule.

    ``weights`` maps every candidate that was still unelected at the start of
    the round to its approval weight; ``candidate`` is the elected one and
    ``weight`` its (maximal) approval weight.
    """

    index: int
    candidate: int
    weight: Fraction
    weights: Mapping[int, Fraction]


def sequential_trace(
    profile: BallotProfile, k: int, weights: WeightVector
) -> list[RoundRecord]:
    """Run k rounds of the sequential rule, keeping each round's weight table.

    In every round each unelected candidate's approval weight is the
    multiplicity-weighted sum, over ballots approving it, of the weight-vector
    entry at one past the ballot's current number of elected approvals.  The
    maximal candidate is elected, ties broken by lowest index.  Weights are
    maintained incrementally: electing a candidate only touches candidates
    sharing a ballot with it.
    """
    m = profile.num_candidates
    if not 1 <= k <= m:
        raise ValueError(f"k={k} out of range for m={m}")
    if len(weights) != m:
        raise ValueError(f"weight vector length {len(weights)} != m={m}")

    groups = profile.masks
    counts = [0] * len(groups)
    current = [Fraction(0)] * m
    members = [sorted(ballot.approved) for ballot in profile.ballots]
    for g, ballot in enumerate(profile.ballots):
        for c in ballot.approved:
            current[c] += ballot.multiplicity  # w_1 = 1

    elected: set[int] = set()
    trace: list[RoundRecord] = []
    for round_index in range(1, k + 1):
        best = -1
        best_weight = None
        snapshot: dict[int, Fraction] = {}
        for c in range(m):
            if c in elected:
                continue
            snapshot[c] = current[c]
            if best_weight is None or current[c] > best_weight:
                best, best_weight = c, current[c]
        elected.add(best)
        for g, (mask, mult) in enumerate(groups):
            if not mask >> best & 1:
                continue
            old = counts[g]
            counts[g] = old + 1
            if old + 1 < len(weights.weights):
                delta = mult * (weights.weights[old + 1] - weights.weights[old])
            else:
                delta = None  # no unelected member of this ballot remains
            if delta:
                for c in members[g]:
                    if c not in elected:
                        current[c] += delta
        trace.append(RoundRecord(round_index, best, best_weight, snapshot))
    return trace


def compute_sequential_rule(
    profile: BallotProfile, k: int, weights: WeightVector
) -> Committee:
    """The committee accumulated over k sequential rounds."""
    return Committee.of(r.candidate for r in sequential_trace(profile, k, weights))


def compute_score_rule(
    profile: BallotProfile,
    k: int,
    objective: ScoringObjective,
    tiebreak: TieBreak = TieBreak.LEXICOGRAPHIC,
    budget: Optional[int] = None,
) -> Committee:
    """Winner of a score-optimizing rule, via the exact solver."""
    request = OptimizationRequest(
        profile=profile, k=k, objective=objective, tiebreak=tiebreak, budget=budget
    )
    return optimize_committee(request).committee


def compute_ujrav(
    profile: BallotProfile,
    k: int,
    tiebreak: TieBreak = TieBreak.LEXICOGRAPHIC,
    budget: Optional[int] = None,
) -> Committee:
    """Approval-score-maximal committee among those providing justified
    representation, lexicographically smallest on ties.

    Filtered enumeration over all C(m, k) committees (no better algorithm is
    known).  At least one committee always qualifies, so this never fails.
    The tiebreak parameter is accepted for interface symmetry; both modes
    coincide here because every candidate committee already provides
    justified representation.
    """
    scores = profile.approval_scores
    best: Optional[tuple[int, ...]] = None
    best_score = -1
    nodes = 0
    for members in itertools.combinations(range(profile.num_candidates), k):
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExhausted(
                f"node budget {budget} exhausted",
                best_committee=Committee(best) if best else None,
                best_score=Fraction(best_score) if best else None,
                nodes_explored=nodes,
            )
        if not axioms.check_jr(profile, k, Committee(members)).passed:
            continue
        score = sum(scores[c] for c in members)
        if score > best_score:
            best, best_score = members, score
    assert best is not None
    return Committee(best)


def compute_ejrav(
    profile: BallotProfile,
    k: int,
    tiebreak: TieBreak = TieBreak.LEXICOGRAPHIC,
    budget: Optional[int] = None,
) -> Committee:
    """Committee maximizing the least-represented voter's winner count, among
    committees providing justified representation; lexicographic on ties.

    A voter with an empty ballot pins the maximin at zero, in which case the
    rule reduces to the lexicographically first justified committee.
    """
    best: Optional[tuple[int, ...]] = None
    best_value = -1
    nodes = 0
    for members in itertools.combinations(range(profile.num_candidates), k):
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExhausted(
                f"node budget {budget} exhausted",
                best_committee=Committee(best) if best else None,
                best_score=Fraction(best_value) if best else None,
                nodes_explored=nodes,
            )
        committee = Committee(members)
        if not axioms.check_jr(profile, k, committee).passed:
            continue
        wmask = committee.mask
        value = min((mask & wmask).bit_count() for mask, _ in profile.masks)
        if value > best_value:
            best, best_value = members, value
    assert best is not None
    return Committee(best)


def compute_rule(
    profile: BallotProfile, k: int, spec: RuleSpec, budget: Optional[int] = None
) -> Committee:
    """Run the rule described by ``spec`` on the profile."""
    if spec.name == "av":
        return compute_score_rule(profile, k, AV, spec.tiebreak, budget)
    if spec.name == "sav":
        return compute_score_rule(profile, k, SAV, spec.tiebreak, budget)
    if spec.name == "mav":
        return compute_score_rule(profile, k, MAV, spec.tiebreak, budget)
    if spec.name in ("pav", "cc", "wpav"):
        objective = wpav_objective(rule_weights(spec, profile))
        return compute_score_rule(profile, k, objective, spec.tiebreak, budget)
    if spec.name in ("rav", "gav", "geometric-rav", "wrav"):
        return compute_sequential_rule(profile, k, rule_weights(spec, profile))
    if spec.name == "ujrav":
        return compute_ujrav(profile, k, spec.tiebreak, budget)
    return compute_ejrav(profile, k, spec.tiebreak, budget)


def report_score(
    profile: BallotProfile, k: int, spec: RuleSpec, committee: Committee
) -> Fraction:
    """The natural score to report alongside a rule's winning committee.

    Score rules report their objective value; sequential and weight-based
    rules report the committee's total satisfaction under the rule's weight
    vector; the representation-constrained rules report approval score and
    maximin winner count respectively.
    """
    from .core import score_committee

    if spec.name == "av":
        return score_committee(profile, committee, AV)
    if spec.name == "sav":
        return score_committee(profile, committee, SAV)
    if spec.name == "mav":
        return score_committee(profile, committee, MAV)
    if spec.name == "ujrav":
        return score_committee(profile, committee, AV)
    if spec.name == "ejrav":
        wmask = committee.mask
        return Fraction(min((mask & wmask).bit_count() for mask, _ in profile.masks))
    weights = rule_weights(spec, profile)
    return score_committee(profile, committee, wpav_objective(weights))
