"""Worst-, best-, and average-case analysis over finite input groupings.

A grouping classifies each concrete input (a point of a finite source
domain) into a case (a point of a finite target domain); the classifier
must be surjective so every case has at least one input.  Given a cost
function on inputs, the module computes, per case:

* ``case_extremes`` -- the exact supremum (worst) or infimum (best) of the
  cost over the case's fiber, with one witness input each;
* ``average_case`` -- the weighted average of the cost over the fiber,
  for arbitrary non-negative per-input weights with positive fiber mass.

Everything is an exact finite scan; best <= average <= worst holds
pointwise by construction, and so does best <= cost-along-any-selection
<= worst for any right inverse of the classifier.

An exhaustive insertion-sort comparison counter is included as a concrete
cost oracle: permutations of a given maximum length, grouped by length,
yield the familiar worst case n(n-1)/2 and best case n-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from .functions import DomainMismatchError, FiniteSet, ResourceFunction

__all__ = [
    "Grouping",
    "ZeroMassFiber",
    "average_case",
    "case_extremes",
    "case_report",
    "insertion_sort_comparisons",
    "permutation_grouping",
]

Point = Tuple[int, ...]
Number = Union[Fraction, float]


class ZeroMassFiber(ValueError):
    """A case whose total weight is zero cannot be averaged over."""


@dataclass(frozen=True)
class Grouping:
    """A surjective classifier from a finite source to a finite target."""

    source: FiniteSet
    target: FiniteSet
    classify: Mapping[Point, Point]

    def __post_init__(self):
        cls = {tuple(x): tuple(z) for x, z in dict(self.classify).items()}
        object.__setattr__(self, "classify", cls)
        src = set(self.source.points)
        if set(cls) != src:
            raise DomainMismatchError(
                "classifier must be defined on exactly the source points")
        tgt = set(self.target.points)
        image = set(cls.values())
        if not image <= tgt:
            raise DomainMismatchError(
                f"classifier maps outside the target: {sorted(image - tgt)[:3]}")
        if image != tgt:
            raise ValueError(
                f"classifier misses target cases {sorted(tgt - image)[:3]}: "
                "every case needs a non-empty fiber")

    def fiber(self, case: Point) -> Tuple[Point, ...]:
        z = tuple(case)
        return tuple(x for x in self.source.points if self.classify[x] == z)


def _check_source(f: ResourceFunction, grouping: Grouping) -> None:
    if not isinstance(f.domain, FiniteSet) \
            or f.domain.points != grouping.source.points:
        raise DomainMismatchError(
            "cost function must live on the grouping's source domain")


def case_extremes(f: ResourceFunction, grouping: Grouping, mode: str
                  ) -> Tuple[ResourceFunction, Dict[Point, Point]]:
    """Per-case extreme of the cost: 'worst' (sup) or 'best' (inf).

    Returns the extreme as a function on the target domain together with
    one witness input per case attaining it.
    """
    if mode not in ("worst", "best"):
        raise ValueError(f"mode must be 'worst' or 'best', got {mode!r}")
    _check_source(f, grouping)
    pick = max if mode == "worst" else min
    table: Dict[Point, Number] = {}
    witnesses: Dict[Point, Point] = {}
    for z in grouping.target.points:
        fiber = grouping.fiber(z)
        witness = pick(fiber, key=f.value_at)
        table[z] = f.value_at(witness)
        witnesses[z] = witness
    out = ResourceFunction(grouping.target, table, None)
    return out, witnesses


def average_case(f: ResourceFunction, grouping: Grouping,
                 weights: Optional[Mapping[Point, Number]] = None
                 ) -> ResourceFunction:
    """Per-case weighted average of the cost (uniform when weights omitted)."""
    _check_source(f, grouping)
    if weights is None:
        weights = {x: Fraction(1) for x in grouping.source.points}
    w = {tuple(x): Fraction(v) if not isinstance(v, float) else v
         for x, v in weights.items()}
    for x in grouping.source.points:
        if x not in w:
            raise DomainMismatchError(f"weight missing for input {x}")
        if w[x] < 0:
            raise ValueError(f"weight at {x} is negative")
    table: Dict[Point, Number] = {}
    for z in grouping.target.points:
        fiber = grouping.fiber(z)
        mass = sum(w[x] for x in fiber)
        if mass == 0:
            raise ZeroMassFiber(f"case {z} has zero total weight")
        table[z] = sum(w[x] * f.value_at(x) for x in fiber) / mass
    return ResourceFunction(grouping.target, table, None)


def case_report(f: ResourceFunction, grouping: Grouping,
                weights: Optional[Mapping[Point, Number]] = None
                ) -> Dict[Point, Dict[str, object]]:
    """Per-case {worst, best, average, witnesses} summary."""
    worst, w_wit = case_extremes(f, grouping, "worst")
    best, b_wit = case_extremes(f, grouping, "best")
    avg = average_case(f, grouping, weights)
    return {
        z: {
            "worst": worst.value_at(z), "best": best.value_at(z),
            "average": avg.value_at(z),
            "worstWitness": w_wit[z], "bestWitness": b_wit[z],
        }
        for z in grouping.target.points
    }


# ---------------------------------------------------------------------------
# Insertion-sort comparison oracle


def insertion_sort_comparisons(sequence: Sequence[int]) -> int:
    """Key comparisons made by textbook insertion sort on the sequence."""
    items = list(sequence)
    count = 0
    for i in range(1, len(items)):
        key = items[i]
        j = i - 1
        while j >= 0:
            count += 1
            if items[j] > key:
                items[j + 1] = items[j]
                j -= 1
            else:
                break
        items[j + 1] = key
    return count


def permutation_grouping(max_length: int
                         ) -> Tuple[Grouping, ResourceFunction]:
    """All permutations of lengths 1..max_length, grouped by length.

    Each permutation is encoded as a fixed-arity point
    (length, entry_1, ..., entry_max_length) with one-based entries and
    zero padding.  Returns the grouping and the comparison-count cost.
    """
    if not 1 <= max_length <= 6:
        raise ValueError("permutation enumeration supports lengths 1..6")
    points = []
    cost: Dict[Point, Fraction] = {}
    classify: Dict[Point, Point] = {}
    for n in range(1, max_length + 1):
        for perm in permutations(range(1, n + 1)):
            point = (n,) + perm + (0,) * (max_length - n)
            points.append(point)
            cost[point] = Fraction(insertion_sort_comparisons(perm))
            classify[point] = (n,)
    source = FiniteSet(tuple(points))
    target = FiniteSet(tuple((n,) for n in range(1, max_length + 1)))
    grouping = Grouping(source, target, classify)
    return grouping, ResourceFunction(source, cost, None)
