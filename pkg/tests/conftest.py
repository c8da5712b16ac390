"""Shared test helpers: profile constructors, deterministic random streams,
and the naive full-enumeration optimizer used as the solver's oracle."""

import itertools
import random

from jrvoting.core import BallotProfile, Committee, ScoringObjective, score_committee
from jrvoting.corpus import FixedSize, UniformSubsets, UrnLike, random_profile


def profile_of(m, *groups):
    """Build a profile from (iterable, mult) pairs or bare iterables (mult 1)."""
    normalized = []
    for group in groups:
        if isinstance(group, tuple) and len(group) == 2 and isinstance(group[1], int):
            normalized.append((group[0], group[1]))
        else:
            normalized.append((group, 1))
    return BallotProfile.from_groups(m, normalized)


def naive_optimize(profile, k, objective: ScoringObjective):
    """Full enumeration with explicit tie-break: returns (score, co-optima).

    Independent of the solver: scores every committee with the reference
    rational scorer.  Co-optima come out in lexicographic order.
    """
    best_score = None
    co = []
    for members in itertools.combinations(range(profile.num_candidates), k):
        score = score_committee(profile, Committee(members), objective)
        if best_score is None:
            best_score, co = score, [members]
            continue
        better = score > best_score if objective.maximize else score < best_score
        if better:
            best_score, co = score, [members]
        elif score == best_score:
            co.append(members)
    return best_score, co


def random_instances(seed, count, max_n=10, max_m=8, min_m=2, max_k=None, cultures=None):
    """Deterministic stream of (profile, k) pairs for property tests."""
    rng = random.Random(f"tests|{seed}")
    cultures = cultures or ["uniform", "urn"]
    for trial in range(count):
        n = rng.randint(1, max_n)
        m = rng.randint(min_m, max_m)
        k = rng.randint(1, min(m, max_k) if max_k else m)
        kind = cultures[trial % len(cultures)]
        if kind == "uniform":
            culture = UniformSubsets(rng.choice([0.2, 0.35, 0.5, 0.7]))
        elif kind == "fixed":
            culture = FixedSize(rng.randint(0, m))
        else:
            culture = UrnLike(rng.randint(1, 3), rng.choice([0.5, 0.8]))
        yield random_profile(seed=seed * 7919 + trial, n=n, m=m, k=k, culture=culture), k


def random_committee(rng, m, k):
    return Committee.of(rng.sample(range(m), k))
