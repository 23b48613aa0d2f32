"""Divide-and-conquer recurrences: exact evaluation and growth-class checks.

This module handles recurrences of the shape

    T(n) = a * T(n / b) + F(n)   for n >= b,
    T(n) = d                     for n < b,

in three flavours of domain:

* ``powers``   -- T is defined on the geometric grid B = {b^i : i in N};
* ``reals``    -- t is defined on all rationals x >= 1, with exact
                  floor-of-logarithm unrolling;
* ``integers`` -- T is defined on positive integers, recursing through
                  the ceiling division n -> ceil(n / b).

Evaluation is exact over the rationals whenever the coefficients permit it
and falls back to floats otherwise.  Alongside evaluation the module offers:

* ``ceiling_division`` -- iterate / count / fixed-point queries for the
  map n -> ceil(n / b), including the classic pitfall where iterating the
  ceiling division twice differs from a single division by b^2;
* ``verify_master_bounds`` -- numeric confirmation of the sandwich bounds
  n / b^i <= N^(i)(n) < n / b^i + 2 < 3 b^2 (n / b^i) and the bracket
  floor(log_b n) <= M(n) <= floor(log_b n) + 2;
* ``master_theta_class`` -- selects the growth class of T (n^c,
  n^c * log_b n, or n^log_b(a)) by exact comparison of a with b^c, then
  verifies it with a two-sided constant bracket over an evaluated prefix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple, Union

from .functions import IrrationalValueError, _pow_exact

__all__ = [
    "BracketSearchFailed",
    "BracketViolated",
    "MasterParams",
    "NonTerminating",
    "PointNotInDomain",
    "ceiling_division",
    "ceil_div_count",
    "ceil_div_fixed_points",
    "ceil_div_iterate",
    "eval_master",
    "master_theta_class",
    "power_driving",
    "verify_master_bounds",
]

Rational = Union[Fraction, int]
Number = Union[Fraction, float]

VARIANTS = ("powers", "reals", "integers")


class PointNotInDomain(ValueError):
    """The evaluation point lies outside the variant's domain."""


class BracketViolated(ValueError):
    """The driving function escaped its declared, scaled power bracket."""


class NonTerminating(ValueError):
    """The ceiling-division iteration is stuck at a fixed point >= b."""


class BracketSearchFailed(RuntimeError):
    """No valid two-sided constant bracket was found over the prefix."""


def _q(value: Rational, name: str) -> Fraction:
    out = Fraction(value)
    if out != value:
        raise ValueError(f"{name} must be rational, got {value!r}")
    return out


def _pow(base: Number, exponent: Fraction) -> Number:
    """base**exponent, exact when possible, float otherwise."""
    if isinstance(base, Fraction):
        try:
            return _pow_exact(base, exponent)
        except IrrationalValueError:
            return float(base) ** float(exponent)
    return float(base) ** float(exponent)


def power_driving(c: Rational, k: Rational = 1) -> Callable[[Fraction], Number]:
    """The driving function F(n) = k * n^c."""
    cq, kq = _q(c, "c"), _q(k, "k")
    return lambda n: kq * _pow(Fraction(n), cq)


@dataclass(frozen=True)
class MasterParams:
    """Coefficients of the recurrence T(n) = a T(n/b) + F(n), T = d below b.

    ``driving`` is F; ``k_lo``/``k_hi`` declare the power bracket
    k_lo * n^c <= F(n) <= k_hi * n^c, which is verified (not inferred)
    at every point the evaluators touch.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction
    driving: Optional[Callable[[Fraction], Number]] = None
    k_lo: Fraction = Fraction(1)
    k_hi: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d", "k_lo", "k_hi"):
            object.__setattr__(self, name, _q(getattr(self, name), name))
        if self.a < 1:
            raise ValueError("branching factor a must be >= 1")
        if self.b <= 1:
            raise ValueError("shrink factor b must be > 1")
        if self.c < 0:
            raise ValueError("driving exponent c must be >= 0")
        if self.d <= 0:
            raise ValueError("base cost d must be > 0")
        if not (0 < self.k_lo <= self.k_hi):
            raise ValueError("bracket requires 0 < k_lo <= k_hi")
        if self.driving is None:
            object.__setattr__(self, "driving", power_driving(self.c, self.k_hi))

    def check_integers(self) -> None:
        if self.b < 2:
            raise ValueError(
                "the integer variant needs b >= 2: a rational b in (1, 2) "
                "leaves the ceiling division with fixed points above 1"
            )

    def f(self, point: Fraction) -> Number:
        """F(point), with the declared power bracket enforced."""
        value = self.driving(point)
        ref = _pow(point, self.c)
        lo, hi = self.k_lo * ref, self.k_hi * ref
        tol = 1e-9 * (abs(float(hi)) + 1.0)
        if float(value) < float(lo) - tol or float(value) > float(hi) + tol:
            raise BracketViolated(
                f"F({point}) = {value} escapes [{lo}, {hi}] "
                f"= [k_lo, k_hi] * {point}^{self.c}"
            )
        return value


# ---------------------------------------------------------------------------
# Ceiling division


def _ceil_div(n: int, b: Fraction) -> int:
    # ceil(n / b) for b = p/q is ceil(n*q / p) = -((-n*q) // p)
    return -((-n * b.denominator) // b.numerator)


def ceil_div_iterate(b: Rational, n: int, i: int) -> int:
    """N^(i)(n): apply n -> ceil(n / b) exactly i times."""
    bq = _q(b, "b")
    if bq <= 1:
        raise ValueError("ceiling division needs b > 1")
    if n < 1 or i < 0:
        raise ValueError("iterate needs n >= 1 and i >= 0")
    for _ in range(i):
        n = _ceil_div(n, bq)
    return n


def ceil_div_fixed_points(b: Rational) -> Tuple[int, ...]:
    """All n >= 1 with ceil(n / b) = n; equals {n : 1 <= n < b/(b-1)}."""
    bq = _q(b, "b")
    if bq <= 1:
        raise ValueError("ceiling division needs b > 1")
    limit = bq / (bq - 1)
    out = []
    n = 1
    while n < limit:
        out.append(n)
        n += 1
    return tuple(out)


def ceil_div_count(b: Rational, n: int) -> int:
    """M(n) = min{i : N^(i)(n) < b}; raises NonTerminating when stuck."""
    bq = _q(b, "b")
    if bq <= 1:
        raise ValueError("ceiling division needs b > 1")
    if n < 1:
        raise ValueError("count needs n >= 1")
    count = 0
    while n >= bq:
        nxt = _ceil_div(n, bq)
        if nxt == n:
            raise NonTerminating(
                f"ceil(n / b) fixes n = {n} >= b = {bq}; "
                "the iteration never drops below b"
            )
        n = nxt
        count += 1
    return count


def ceiling_division(b: Rational, query: str, n: Optional[int] = None,
                     i: Optional[int] = None):
    """Dispatch on ``query``: 'iterate' (n, i), 'count' (n), 'fixed_points'."""
    if query == "iterate":
        if n is None or i is None:
            raise ValueError("iterate needs n and i")
        return ceil_div_iterate(b, n, i)
    if query == "count":
        if n is None:
            raise ValueError("count needs n")
        return ceil_div_count(b, n)
    if query == "fixed_points":
        return ceil_div_fixed_points(b)
    raise ValueError(f"unknown query {query!r}")


# ---------------------------------------------------------------------------
# Evaluation


def _floor_log(x: Fraction, b: Fraction) -> int:
    """floor(log_b(x)) for x >= 1, b > 1, computed exactly."""
    if x < 1:
        raise ValueError("x must be >= 1")
    m = 0
    power = Fraction(1)
    while power * b <= x:
        power *= b
        m += 1
    return m


def _power_index(point: Fraction, b: Fraction) -> int:
    """i with point = b^i, or raise PointNotInDomain."""
    if point < 1:
        raise PointNotInDomain(f"{point} < 1 cannot be a power of {b}")
    i = _floor_log(point, b)
    if b ** i != point:
        raise PointNotInDomain(f"{point} is not a power of {b}")
    return i


def _as_number(total: Number) -> Number:
    return total


def eval_master(variant: str, params: MasterParams, point: Rational,
                method: str = "closed") -> Number:
    """Evaluate the recurrence at ``point``.

    ``method='recursive'`` unrolls the recurrence exactly;
    ``method='closed'`` evaluates the explicit summed form.  The two agree
    exactly for rational-closed instances.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if method not in ("recursive", "closed"):
        raise ValueError(f"unknown method {method!r}")
    x = _q(point, "point")
    a, b, d = params.a, params.b, params.d

    if variant == "powers":
        m = _power_index(x, b)
        if method == "recursive":
            total: Number = d
            for j in range(1, m + 1):
                total = a * total + params.f(b ** j)
            return _as_number(total)
        acc: Number = d * a ** m
        for i in range(m):
            acc = acc + (a ** i) * params.f(x / b ** i)
        return _as_number(acc)

    if variant == "reals":
        if x < 1:
            raise PointNotInDomain(f"{x} < 1 is outside the real domain")
        m = _floor_log(x, b)
        if method == "recursive":
            total = d
            # unroll bottom-up along x / b^j, j = m .. 1
            for j in range(m - 1, -1, -1):
                total = a * total + params.f(x / b ** j)
            return _as_number(total)
        acc = d * a ** m
        for i in range(m):
            acc = acc + (a ** i) * params.f(x / b ** i)
        return _as_number(acc)

    # integers
    params.check_integers()
    if x < 1 or x.denominator != 1:
        raise PointNotInDomain(f"{x} is not a positive integer")
    n = int(x)
    m = ceil_div_count(b, n)
    if method == "recursive":
        chain = [n]
        while chain[-1] >= b:
            chain.append(_ceil_div(chain[-1], b))
        total = d
        for v in reversed(chain[:-1]):
            total = a * total + params.f(Fraction(v))
        return _as_number(total)
    acc = d * a ** m
    cur = n
    for i in range(m):
        acc = acc + (a ** i) * params.f(Fraction(cur))
        cur = _ceil_div(cur, b)
    return _as_number(acc)


# ---------------------------------------------------------------------------
# Bound verification


@dataclass
class BoundReport:
    b: Fraction
    n_max: int
    checked: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_master_bounds(b: Rational, n_max: int) -> BoundReport:
    """Confirm the sandwich bounds on the ceiling-division iterates.

    For every n <= n_max and every i up to floor(log_b n) + 1:
    n / b^i <= N^(i)(n) < n / b^i + 2 and N^(i)(n) < 3 b^2 (n / b^i);
    and floor(log_b n) <= M(n) <= floor(log_b n) + 2.
    """
    bq = _q(b, "b")
    if bq < 2:
        raise ValueError("the bounds are stated for b >= 2")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    report = BoundReport(b=bq, n_max=n_max)
    p, q = bq.numerator, bq.denominator
    # All comparisons below are cross-multiplied to stay in integers:
    # the reference n / b^i becomes n * q^i / p^i.
    flog = 0
    p_pow, q_pow = [1], [1]      # p^i, q^i
    for n in range(1, n_max + 1):
        while p_pow[-1] * p <= n * q_pow[-1] * q:
            p_pow.append(p_pow[-1] * p)
            q_pow.append(q_pow[-1] * q)
        while flog + 1 < len(p_pow) and p_pow[flog + 1] <= n * q_pow[flog + 1]:
            flog += 1
        value, count = n, 0
        while value * q >= p:
            value = -((-value * q) // p)
            count += 1
        if not flog <= count <= flog + 2:
            report.violations.append(
                f"M({n}) = {count} escapes [{flog}, {flog + 2}]")
        value = n
        for i in range(flog + 2):
            while i >= len(p_pow) - 1:
                p_pow.append(p_pow[-1] * p)
                q_pow.append(q_pow[-1] * q)
            pi, qi = p_pow[i], q_pow[i]
            if not (n * qi <= value * pi < n * qi + 2 * pi):
                report.violations.append(
                    f"N^({i})({n}) = {value} escapes [n/b^{i}, n/b^{i} + 2)")
            if not value * pi * q * q < 3 * p * p * n * qi:
                report.violations.append(
                    f"N^({i})({n}) = {value} >= 3 b^2 n / b^{i}")
            report.checked += 1
            value = -((-value * q) // p)
    return report


# ---------------------------------------------------------------------------
# Growth classification


def _compare_a_vs_bc(a: Fraction, b: Fraction, c: Fraction) -> int:
    """sign(log_b(a) - c) via the exact comparison a^q vs b^p for c = p/q."""
    p, q = c.numerator, c.denominator
    lhs = a ** q
    rhs = b ** p
    if lhs < rhs:
        return -1
    if lhs > rhs:
        return 1
    return 0


@dataclass
class ThetaReport:
    variant: str
    params: MasterParams
    class_label: str
    c1: float
    c2: float
    stability: float
    points: int

    def to_record(self) -> Dict[str, object]:
        return {
            "variant": self.variant,
            "a": str(self.params.a), "b": str(self.params.b),
            "c": str(self.params.c), "d": str(self.params.d),
            "class": self.class_label,
            "c1": self.c1, "c2": self.c2,
            "stability": self.stability, "points": self.points,
        }


def _theta_prefix(variant: str, params: MasterParams,
                  horizon_exp: int) -> List[Fraction]:
    if variant == "powers":
        return [params.b ** i for i in range(horizon_exp + 1)]
    if variant == "integers":
        return [Fraction(n) for n in range(1, 2 ** horizon_exp + 1)]
    # reals: quarter-integer grid up to b^horizon_exp
    top = float(params.b ** horizon_exp)
    out, k = [], 4
    while k / 4 <= top:
        out.append(Fraction(k, 4))
        k += 1
    return out


def _reference(params: MasterParams, sign: int) -> Callable[[Fraction], float]:
    a, b, c = params.a, params.b, params.c
    logb_a = math.log(float(a)) / math.log(float(b)) if a > 1 else 0.0
    if sign < 0:            # log_b(a) < c: T ~ n^c
        return lambda n: float(n) ** float(c)
    if sign == 0:           # log_b(a) = c: T ~ n^c log_b(n)
        return lambda n: (float(n) ** float(c)
                          * math.log(float(n)) / math.log(float(b)))
    return lambda n: float(n) ** logb_a


def _bracket(values: List[Tuple[Fraction, Number]],
             ref: Callable[[Fraction], float]) -> Tuple[float, float, int]:
    c1 = c2 = None
    used = 0
    for point, t in values:
        r = ref(point)
        if r <= 0:
            continue
        ratio = float(t) / r
        c1 = ratio if c1 is None else min(c1, ratio)
        c2 = ratio if c2 is None else max(c2, ratio)
        used += 1
    if c1 is None or c1 <= 0:
        raise BracketSearchFailed("no usable points for the bracket search")
    return c1, c2, used


def master_theta_class(variant: str, params: MasterParams,
                       horizon_exp: int = 8) -> ThetaReport:
    """Pick and verify the growth class of the recurrence's solution.

    The class is chosen by exact comparison of a with b^c.  The verification
    evaluates T over a prefix, finds the tight two-sided constants
    c1 = min T/ref and c2 = max T/ref, and reports stability: the relative
    change of c2/c1 when the prefix is cut back by two doublings (a stable
    bracket certifies the Theta relationship on the evaluated range).
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if horizon_exp < 3:
        raise ValueError("horizon_exp must be >= 3")
    if variant == "integers":
        params.check_integers()
    sign = _compare_a_vs_bc(params.a, params.b, params.c)
    if sign < 0:
        label = "n^c"
    elif sign == 0:
        label = "n^c*log_b(n)"
    else:
        label = "n^log_b(a)"
    ref = _reference(params, sign)

    points = _theta_prefix(variant, params, horizon_exp)
    values = [(p, eval_master(variant, params, p, "closed")) for p in points]
    c1, c2, used = _bracket(values, ref)

    shorter = _theta_prefix(variant, params, horizon_exp - 2)
    cut = len(shorter)
    c1s, c2s, _ = _bracket(values[:cut], ref)
    full, short = c2 / c1, c2s / c1s
    stability = abs(full - short) / short if short > 0 else float("inf")
    return ThetaReport(variant=variant, params=params, class_label=label,
                       c1=c1, c2=c2, stability=stability, points=used)
