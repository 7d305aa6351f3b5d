"""Enumeration of graded nilpotent candidates with a target layer profile.

A weight vector w_1..w_n (positive integers) determines the skeleton of
positions (i, j, k), i < j, with w_i + w_j = w_k; any table supported on
those positions is graded, hence nilpotent with class at most max(w).  The
search assigns coefficients from a finite palette (plus zero) to the
positions, filters by the Jacobi check and by the invariants of the target,
and returns the hits.

The enumeration order is fixed: positions sorted by (w_k, i, j),
coefficient values in listed order with zero first, candidates in
lexicographic order.  When the space exceeds the budget the same budget is
spent on seeded random samples instead, so reruns are reproducible either
way; exceeding the budget is a reported status, not an error.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import LieAlgebra, derived_layer_profile, invariants, jacobi_check
from .fields import QQ

DEFAULT_COEFFICIENTS = (
    Fraction(-3), Fraction(-2), Fraction(-1), Fraction(1), Fraction(2), Fraction(3),
)


@dataclass(frozen=True)
class GradedSkeleton:
    n: int
    weights: tuple
    positions: tuple  # (i, j, k) triples, sorted by (w_k, i, j)


def skeleton(weights) -> GradedSkeleton:
    weights = tuple(int(w) for w in weights)
    if any(w < 1 for w in weights):
        raise ValueError("weights must be positive integers")
    n = len(weights)
    positions = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(1, n + 1):
                if weights[i - 1] + weights[j - 1] == weights[k - 1]:
                    positions.append((i, j, k))
    positions.sort(key=lambda t: (weights[t[2] - 1], t[0], t[1]))
    return GradedSkeleton(n, weights, tuple(positions))


@dataclass(frozen=True)
class SearchTarget:
    """Required derived-series layer profile, plus optional extra filters."""

    profile: tuple
    max_class: int | None = None
    generators: int | None = None


@dataclass
class SearchResult:
    hits: list  # (assignment tuple, LieAlgebra) in enumeration order
    examined: int
    budget_exceeded: bool
    seed: int | None


def assignment_to_algebra(skel: GradedSkeleton, values, field=QQ) -> LieAlgebra:
    """Build the algebra with coefficient values[t] on positions[t]."""
    if len(values) != len(skel.positions):
        raise ValueError("one coefficient per skeleton position required")
    table = {}
    for (i, j, k), x in zip(skel.positions, values):
        x = field.coerce(x)
        if field.is_zero(x):
            continue
        table.setdefault((i, j), {})[k] = x
    return LieAlgebra(skel.n, field, table)


def algebra_assignment(skel: GradedSkeleton, L: LieAlgebra) -> tuple:
    """Read an algebra's coefficients off the skeleton positions.

    Raises if the algebra has a nonzero bracket outside the skeleton.
    """
    allowed = set(skel.positions)
    for (i, j), terms in L.brackets.items():
        for k in terms:
            if (i, j, k) not in allowed:
                raise ValueError(f"bracket ({i},{j})->{k} is not a skeleton position")
    return tuple(
        L.brackets.get((i, j), {}).get(k, L.field.zero) for (i, j, k) in skel.positions
    )


def matches_target(L: LieAlgebra, target: SearchTarget) -> bool:
    """The search filter: Jacobi passes and the invariants hit the target."""
    if not jacobi_check(L).ok:
        return False
    profile = derived_layer_profile(L)
    if profile != tuple(target.profile):
        return False
    inv = invariants(L)
    if target.max_class is not None:
        if inv.nilpotency_class is None or inv.nilpotency_class > target.max_class:
            return False
    if target.generators is not None and inv.generator_count != target.generators:
        return False
    return True


def search_graded(
    skel: GradedSkeleton,
    target: SearchTarget,
    coefficient_set=DEFAULT_COEFFICIENTS,
    budget: int = 10**6,
    seed: int = 0,
    field=QQ,
) -> SearchResult:
    values = [field.zero]
    for c in coefficient_set:
        c = field.coerce(c)
        if c not in values:
            values.append(c)
    npos = len(skel.positions)
    space = len(values) ** npos if npos else 1

    hits = []
    examined = 0
    if space <= budget:
        for combo in itertools.product(values, repeat=npos):
            examined += 1
            L = assignment_to_algebra(skel, combo, field)
            if matches_target(L, target):
                hits.append((combo, L))
        return SearchResult(hits, examined, False, None)

    rng = random.Random(seed)
    seen_hits = set()
    for _ in range(budget):
        examined += 1
        combo = tuple(values[rng.randrange(len(values))] for _ in range(npos))
        L = assignment_to_algebra(skel, combo, field)
        if matches_target(L, target) and combo not in seen_hits:
            seen_hits.add(combo)
            hits.append((combo, L))
    hits.sort(key=lambda pair: tuple(str(x) for x in pair[0]))
    return SearchResult(hits, examined, True, seed)
