"""Order-preserving transforms between function spaces, checked by sampling.

A transform T maps resource functions on a source domain X to resource
functions on a target domain Y.  Two laws are checked on sampled finite
instances, exactly:

* the mapping law -- whenever g <= c * f pointwise, the transformed pair
  satisfies T(g) <= w(c) * T(f) with a constructed constant w(c)
  (``check_o_mapping``);
* the strong equality law -- a declared right inverse That satisfies
  T(That(g)) = g pointwise, and g <= c * T(f) holds exactly when
  That(g) <= d * f with constructed constants in both directions
  (``check_o_equality``).

The standard transforms are provided: translation by a non-negative
constant, scaling by a positive constant, raising to a positive power,
composition with an arbitrary (or injective) index map, and weighted
subset sums.  Translation has no right inverse -- subtracting the constant
leaves the non-negative cone -- and declaring one is rejected with
``RightInverseViolated`` on a concrete instance.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .functions import (FiniteSet, IrrationalValueError, ResourceFunction,
                        _pow_exact)

__all__ = [
    "ComposeRight",
    "OMapGen",
    "OMapReport",
    "PowerBy",
    "RightInverseViolated",
    "ScaleBy",
    "SubsetSum",
    "Translate",
    "TransformDomainMismatch",
    "check_o_equality",
    "check_o_mapping",
    "table_function",
]

Number = Union[Fraction, float]
Point = Tuple[int, ...]


class TransformDomainMismatch(ValueError):
    """The function's domain does not match the transform's source domain."""


class RightInverseViolated(ValueError):
    """The declared right inverse broke down on a concrete instance."""

    def __init__(self, message: str, instance: Optional[str] = None):
        super().__init__(message if instance is None
                         else f"{message} [instance: {instance}]")
        self.instance = instance


def table_function(values: Mapping[Point, Number]) -> ResourceFunction:
    """A function on the finite domain given by the table's keys."""
    table = {tuple(p): v for p, v in values.items()}
    for p, v in table.items():
        if v < 0:
            raise ValueError(f"negative value {v} at {p}")
    return ResourceFunction(FiniteSet(tuple(sorted(table))), table, None)


def _pow(value: Number, exponent: Fraction) -> Number:
    if isinstance(value, Fraction):
        try:
            return _pow_exact(value, exponent)
        except IrrationalValueError:
            return float(value) ** float(exponent)
    return float(value) ** float(exponent)


def _minimal_constant(g: ResourceFunction,
                      f: ResourceFunction) -> Optional[Fraction]:
    """Smallest c with g <= c*f pointwise, or None when no c exists."""
    best = Fraction(0)
    for p in g.domain.points:
        gv, fv = g.value_at(p), f.value_at(p)
        if fv == 0:
            if gv == 0:
                continue
            return None
        ratio = Fraction(gv) / Fraction(fv) if isinstance(gv, Fraction) \
            and isinstance(fv, Fraction) else Fraction(float(gv) / float(fv)) \
            .limit_denominator(10 ** 12)
        best = max(best, ratio)
    return best


def _leq(g: ResourceFunction, f: ResourceFunction, scale: Number) -> bool:
    tol = 1e-9
    for p in g.domain.points:
        gv, fv = g.value_at(p), scale * f.value_at(p)
        if isinstance(gv, Fraction) and isinstance(fv, Fraction):
            if gv > fv:
                return False
        elif float(gv) > float(fv) + tol * (abs(float(fv)) + 1.0):
            return False
    return True


# ---------------------------------------------------------------------------
# Transforms


@dataclass(frozen=True)
class Translate:
    """T(f) = f + alpha with alpha >= 0; order-preserving, not invertible."""

    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha < 0:
            raise ValueError("translation offset must be >= 0")

    label = "translate"

    def describe(self) -> str:
        return f"translate(+{self.alpha})"

    def apply(self, f: ResourceFunction) -> ResourceFunction:
        return table_function({p: f.value_at(p) + self.alpha
                               for p in f.domain.points})

    def mapping_constant(self, c: Fraction) -> Fraction:
        return max(c, Fraction(1))

    def anti_residual(self):
        return None

    def declared_inverse(self):
        """The naive candidate g -> g - alpha; it escapes the cone."""
        alpha = self.alpha

        def sub(g: ResourceFunction) -> ResourceFunction:
            out = {}
            for p in g.domain.points:
                v = g.value_at(p) - alpha
                if v < 0:
                    raise RightInverseViolated(
                        f"g - {alpha} is negative ({v}) — subtraction leaves "
                        "the non-negative cone", instance=f"g({p}) = {v + alpha}")
                out[p] = v
            return table_function(out)
        return sub, (lambda c: c), (lambda d: d)


@dataclass(frozen=True)
class ScaleBy:
    """T(f) = alpha * f with alpha > 0; a strong equality with That = /alpha."""

    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha <= 0:
            raise ValueError("scale factor must be > 0")

    label = "scale"

    def describe(self) -> str:
        return f"scale(*{self.alpha})"

    def apply(self, f: ResourceFunction) -> ResourceFunction:
        return table_function({p: self.alpha * f.value_at(p)
                               for p in f.domain.points})

    def mapping_constant(self, c: Fraction) -> Fraction:
        return c

    def anti_residual(self):
        inverse = ScaleBy(1 / self.alpha)
        return inverse.apply, (lambda c: c), (lambda d: d)


@dataclass(frozen=True)
class PowerBy:
    """T(f) = f^alpha with alpha > 0; a strong equality with That = ^(1/alpha)."""

    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha <= 0:
            raise ValueError("power exponent must be > 0")

    label = "power"

    def describe(self) -> str:
        return f"power(^{self.alpha})"

    def apply(self, f: ResourceFunction) -> ResourceFunction:
        return table_function({p: _pow(f.value_at(p), self.alpha)
                               for p in f.domain.points})

    def mapping_constant(self, c: Fraction) -> Number:
        return _pow(c, self.alpha)

    def anti_residual(self):
        inverse = PowerBy(1 / self.alpha)
        return (inverse.apply,
                lambda c: _pow(c, 1 / self.alpha),
                lambda d: _pow(d, self.alpha))


@dataclass(frozen=True)
class ComposeRight:
    """T(f) = f o s for an index map s: Y -> X.

    When s is injective the transform is a strong equality: the right
    inverse re-indexes along s and extends by zero off the image of s.
    """

    index_map: Mapping[Point, Point]

    def __post_init__(self):
        object.__setattr__(self, "index_map",
                           {tuple(y): tuple(x)
                            for y, x in dict(self.index_map).items()})

    label = "compose"

    def describe(self) -> str:
        return f"compose(s: {len(self.index_map)} points)"

    @property
    def injective(self) -> bool:
        image = list(self.index_map.values())
        return len(set(image)) == len(image)

    def apply(self, f: ResourceFunction) -> ResourceFunction:
        out = {}
        for y, x in self.index_map.items():
            if not f.domain.contains(x):
                raise TransformDomainMismatch(
                    f"index map sends {y} to {x}, outside the source domain")
            out[y] = f.value_at(x)
        return table_function(out)

    def mapping_constant(self, c: Fraction) -> Fraction:
        return c

    def anti_residual(self):
        if not self.injective:
            return None
        source_points = tuple(sorted(set(self.index_map.values())))
        back = {x: y for y, x in self.index_map.items()}

        def extend(g: ResourceFunction) -> ResourceFunction:
            return table_function(
                {x: (g.value_at(back[x]) if x in back else Fraction(0))
                 for x in source_points})
        # Zero-extension keeps every ratio, so both constants pass through.
        return extend, (lambda c: c), (lambda d: d)


@dataclass(frozen=True)
class SubsetSum:
    """T(f)(y) = sum over i < count(y) of coeff(y, i) * f(select(y, i)).

    ``count`` assigns each target point its number of summands; ``select``
    picks the source point of each summand and ``coeff`` its non-negative
    weight.  Linear in f, hence order-preserving with the same constant.
    """

    count: Mapping[Point, int]
    select: Mapping[Tuple[Point, int], Point]
    coeff: Mapping[Tuple[Point, int], Fraction]

    label = "subset-sum"

    def describe(self) -> str:
        return f"subset-sum({len(self.count)} targets)"

    def __post_init__(self):
        for (y, i), a in self.coeff.items():
            if a < 0:
                raise ValueError(f"coefficient a({y},{i}) = {a} is negative")
        for y, n in self.count.items():
            for i in range(n):
                if (tuple(y), i) not in self.select:
                    raise ValueError(f"select undefined at ({y}, {i})")

    def apply(self, f: ResourceFunction) -> ResourceFunction:
        out = {}
        for y, n in self.count.items():
            total = Fraction(0)
            for i in range(n):
                x = self.select[(tuple(y), i)]
                if not f.domain.contains(x):
                    raise TransformDomainMismatch(
                        f"summand ({y},{i}) selects {x} outside the source")
                total = total + self.coeff.get((tuple(y), i), Fraction(1)) \
                    * f.value_at(x)
            out[y] = total
        return table_function(out)

    def mapping_constant(self, c: Fraction) -> Fraction:
        return c

    def anti_residual(self):
        return None


Transform = Union[Translate, ScaleBy, PowerBy, ComposeRight, SubsetSum]


# ---------------------------------------------------------------------------
# Sampled checks


@dataclass
class OMapGen:
    """Deterministic instance sampler for the transform checks."""

    seed: int = 0
    trials: int = 100
    size: int = 8
    max_value: int = 12

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")


@dataclass
class OMapReport:
    transform: str
    law: str
    trials: int
    status: str                      # "passed" | "failed"
    detail: str = ""
    failing_instance: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == "passed"

    def to_record(self) -> Dict[str, object]:
        return {"transform": self.transform, "law": self.law,
                "trials": self.trials, "status": self.status,
                "detail": self.detail,
                "failingInstanceRef": self.failing_instance}


def _sample_pair(rng: random.Random, size: int, max_value: int):
    """A dominated pair (g, f) with g <= c*f on a fresh finite domain."""
    points = [(i,) for i in range(size)]
    f_vals = {p: Fraction(rng.randrange(0, max_value + 1)) for p in points}
    coeff_den = rng.randrange(1, 4)
    g_vals = {p: Fraction(rng.randrange(0, 3 * max_value), coeff_den)
              * f_vals[p] / max(max_value, 1) for p in points}
    return table_function(g_vals), table_function(f_vals)


def _describe_tables(g: ResourceFunction, f: ResourceFunction) -> str:
    gs = ",".join(str(g.value_at(p)) for p in g.domain.points)
    fs = ",".join(str(f.value_at(p)) for p in f.domain.points)
    return f"g=[{gs}] f=[{fs}]"


def check_o_mapping(transform: Transform, gen: OMapGen) -> OMapReport:
    """Sample dominated pairs and check the transform preserves dominance.

    A failure of the constructed witness constant is distinguished from a
    failure of the law itself (no constant at all works on the instance).
    """
    label = transform.describe()
    for trial in range(gen.trials):
        rng = gen.rng(f"map:{label}:{trial}")
        g, f = _sample_pair(rng, gen.size, gen.max_value)
        c = _minimal_constant(g, f)
        if c is None:               # sampler guarantees g <= c*f; paranoia
            continue
        c = max(c, Fraction(1))
        tg, tf = transform.apply(g), transform.apply(f)
        witness = transform.mapping_constant(c)
        if not _leq(tg, tf, witness):
            instance = _describe_tables(g, f)
            if _minimal_constant(tg, tf) is not None:
                detail = (f"constructed witness {witness} too small "
                          f"(a larger constant exists)")
            else:
                detail = "no constant bounds T(g) by T(f): the law fails"
            return OMapReport(label, "o-mapping", trial + 1, "failed",
                              detail, instance)
    return OMapReport(label, "o-mapping", gen.trials, "passed",
                      "dominance preserved with the constructed constant")


def _sample_free(rng: random.Random, points, max_value: int,
                 squares: bool) -> ResourceFunction:
    pool = [Fraction(v * v if squares else v)
            for v in range(0, max_value + 1)]
    return table_function({p: rng.choice(pool) for p in points})


def check_o_equality(transform: Transform, gen: OMapGen,
                     declared=None) -> OMapReport:
    """Check a declared right inverse: section and two-way constant transfer.

    ``declared`` overrides the transform's own anti-residual (used to reject
    bogus declarations: the check raises RightInverseViolated with the
    offending instance).
    """
    label = transform.describe()
    anti = declared if declared is not None else transform.anti_residual()
    if anti is None:
        raise RightInverseViolated(
            f"{label} declares no right inverse", instance=None)
    that, back_const, forward_const = anti
    squares = isinstance(transform, PowerBy) and transform.alpha == 2
    for trial in range(gen.trials):
        rng = gen.rng(f"eq:{label}:{trial}")
        _, f = _sample_pair(rng, gen.size, gen.max_value)
        target_points = transform.apply(f).domain.points
        g = _sample_free(rng, target_points, gen.max_value, squares)
        inst = _describe_tables(g, f)

        gh = that(g)                # may raise RightInverseViolated
        for p in gh.domain.points:
            if gh.value_at(p) < 0:
                raise RightInverseViolated(
                    "right inverse produced a negative value", instance=inst)
        round_trip = transform.apply(gh)
        for p in g.domain.points:
            lhs, rhs = round_trip.value_at(p), g.value_at(p)
            if isinstance(lhs, Fraction) and isinstance(rhs, Fraction):
                ok = lhs == rhs
            else:
                ok = abs(float(lhs) - float(rhs)) <= 1e-9 * (float(rhs) + 1.0)
            if not ok:
                raise RightInverseViolated(
                    f"T(That(g))({p}) = {lhs} != g({p}) = {rhs}",
                    instance=inst)

        tf = transform.apply(f)
        c = _minimal_constant(g, tf)
        d = _minimal_constant(gh, f)
        if (c is None) != (d is None):
            side = "forward" if c is not None else "backward"
            return OMapReport(label, "o-equality", trial + 1, "failed",
                              f"dominance exists on one side only ({side})",
                              inst)
        if c is None:
            continue
        c, d = max(c, Fraction(1)), max(d, Fraction(1))
        if not _leq(gh, f, back_const(c)):
            return OMapReport(label, "o-equality", trial + 1, "failed",
                              f"constructed backward constant {back_const(c)} "
                              "too small", inst)
        if not _leq(g, tf, forward_const(d)):
            return OMapReport(label, "o-equality", trial + 1, "failed",
                              f"constructed forward constant {forward_const(d)} "
                              "too small", inst)
    return OMapReport(label, "o-equality", gen.trials, "passed",
                      "right inverse verified with two-way constant transfer")


def random_index_map(rng: random.Random, target_size: int, source_size: int,
                     injective: bool = False) -> ComposeRight:
    """A sampled index map for composition transforms."""
    sources = [(i,) for i in range(source_size)]
    if injective:
        if target_size > source_size:
            raise ValueError("injective map needs target <= source")
        picks = rng.sample(sources, target_size)
    else:
        picks = [rng.choice(sources) for _ in range(target_size)]
    return ComposeRight({(j,): picks[j] for j in range(target_size)})


def random_subset_sum(rng: random.Random, target_size: int,
                      source_size: int) -> SubsetSum:
    """A sampled weighted subset-sum transform."""
    count: Dict[Point, int] = {}
    select: Dict[Tuple[Point, int], Point] = {}
    coeff: Dict[Tuple[Point, int], Fraction] = {}
    for j in range(target_size):
        y = (j,)
        n = rng.randrange(0, 5)
        count[y] = n
        for i in range(n):
            select[(y, i)] = (rng.randrange(source_size),)
            coeff[(y, i)] = Fraction(rng.randrange(0, 7), rng.randrange(1, 3))
    return SubsetSum(count, select, coeff)
