"""Non-negative resource-consumption functions over integer-tuple domains.

Functions are total maps from a declared domain (a finite point set, or an
axis-aligned grid over naturals / positive naturals / integers) into the
non-negative rationals (or reals, in float mode).  Bodies are either explicit
tables or expression trees; all values are immutable after construction and
evaluation is pure.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Optional, Sequence, Union

Point = tuple  # tuple of int (or Fraction for off-lattice evaluation)
Number = Union[Fraction, float]


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------

class FunctionError(Exception):
    """Base class for construction/evaluation errors."""


class NegativeValueError(FunctionError):
    def __init__(self, point: Point, value) -> None:
        super().__init__(f"negative value {value} at point {point}")
        self.point = point
        self.value = value


class PartialFunctionError(FunctionError):
    """A log/pow guard failed: the function is undefined at a domain point."""

    def __init__(self, point: Point, detail: str = "") -> None:
        super().__init__(f"undefined at point {point}" + (f": {detail}" if detail else ""))
        self.point = point


class IrrationalValueError(FunctionError):
    """Exact mode cannot represent this value as a rational."""


class DomainMismatchError(FunctionError):
    pass


class RangeEscapeError(FunctionError):
    def __init__(self, point: Point, image: Point) -> None:
        super().__init__(f"map sends {point} to {image}, outside the target domain")
        self.point = point
        self.image = image


class ParseError(FunctionError):
    def __init__(self, message: str, position: int = -1) -> None:
        super().__init__(message if position < 0 else f"{message} (at offset {position})")
        self.position = position


# ---------------------------------------------------------------------------
# Expression AST
# ---------------------------------------------------------------------------

def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def _nth_root_int(n: int, k: int) -> Optional[int]:
    """Exact integer k-th root of n >= 0, or None if n is not a perfect power."""
    if n < 0:
        return None
    if n in (0, 1) or k == 1:
        return n
    root = round(n ** (1.0 / k))
    for cand in (root - 1, root, root + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    return None


def _pow_exact(base: Fraction, exponent: Fraction) -> Fraction:
    """base**exponent as an exact rational; raises if undefined/irrational."""
    if exponent.denominator == 1:
        e = exponent.numerator
        if e >= 0:
            return base ** e
        if base == 0:
            raise PartialFunctionError((), "0 raised to a negative power")
        return Fraction(1) / (base ** (-e))
    if base < 0:
        raise PartialFunctionError((), "fractional power of a negative value")
    p, q = exponent.numerator, exponent.denominator
    num = _nth_root_int(base.numerator, q)
    den = _nth_root_int(base.denominator, q)
    if num is None or den is None:
        raise IrrationalValueError(f"{base}**{exponent} is irrational")
    root = Fraction(num, den)
    return _pow_exact(root, Fraction(p))


_CMP = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "=": lambda a, b: a == b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}


class FuncExpr:
    """Base class for expression nodes.  Nodes are immutable."""

    def evaluate(self, point: Sequence, exact: bool) -> Number:
        raise NotImplementedError

    def children(self) -> tuple["FuncExpr", ...]:
        return ()

    def max_coord(self) -> int:
        return max((c.max_coord() for c in self.children()), default=0)

    def requires_float(self) -> bool:
        """True when exact rational evaluation is structurally impossible."""
        return any(c.requires_float() for c in self.children())

    def substitute(self, replacements: Sequence["FuncExpr"]) -> "FuncExpr":
        """Replace Coord(i) with replacements[i-1] throughout."""
        raise NotImplementedError

    def __str__(self) -> str:  # pragma: no cover - debugging aid
        return self.text()

    def text(self) -> str:
        raise NotImplementedError


def _subst_fields(node, replacements, *exprs):
    return tuple(e.substitute(replacements) for e in exprs)


@dataclass(frozen=True)
class Const(FuncExpr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", _as_fraction(self.value))
        if self.value < 0:
            raise ValueError("constants must be non-negative")

    def evaluate(self, point, exact):
        return self.value if exact else float(self.value)

    def substitute(self, replacements):
        return self

    def text(self):
        return str(self.value)


@dataclass(frozen=True)
class Coord(FuncExpr):
    index: int  # 1-based

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("coordinate index is 1-based")

    def evaluate(self, point, exact):
        v = point[self.index - 1]
        return _as_fraction(v) if exact else float(v)

    def max_coord(self):
        return self.index

    def substitute(self, replacements):
        if self.index > len(replacements):
            raise ValueError(f"no replacement for coordinate x{self.index}")
        return replacements[self.index - 1]

    def text(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class _Nary(FuncExpr):
    terms: tuple

    def __post_init__(self):
        if len(self.terms) < 1:
            raise ValueError("at least one operand required")
        object.__setattr__(self, "terms", tuple(self.terms))

    def children(self):
        return self.terms


class Add(_Nary):
    def evaluate(self, point, exact):
        return sum(t.evaluate(point, exact) for t in self.terms)

    def substitute(self, replacements):
        return Add(_subst_fields(self, replacements, *self.terms))

    def text(self):
        return " + ".join(t.text() for t in self.terms)


class Mul(_Nary):
    def evaluate(self, point, exact):
        out = self.terms[0].evaluate(point, exact)
        for t in self.terms[1:]:
            out = out * t.evaluate(point, exact)
        return out

    def substitute(self, replacements):
        return Mul(_subst_fields(self, replacements, *self.terms))

    def text(self):
        return " * ".join(f"({t.text()})" if isinstance(t, Add) else t.text()
                          for t in self.terms)


class Max(_Nary):
    def evaluate(self, point, exact):
        return max(t.evaluate(point, exact) for t in self.terms)

    def substitute(self, replacements):
        return Max(_subst_fields(self, replacements, *self.terms))

    def text(self):
        return " max ".join(f"({t.text()})" if isinstance(t, (Add, Mul)) else t.text()
                            for t in self.terms)


class Min(_Nary):
    def evaluate(self, point, exact):
        return min(t.evaluate(point, exact) for t in self.terms)

    def substitute(self, replacements):
        return Min(_subst_fields(self, replacements, *self.terms))

    def text(self):
        return " min ".join(f"({t.text()})" if isinstance(t, (Add, Mul)) else t.text()
                            for t in self.terms)


@dataclass(frozen=True)
class Scale(FuncExpr):
    """Multiplication by a fixed non-zero rational.

    Function bodies use positive factors (non-negativity is validated at
    construction); negative factors are permitted so that map coordinate
    expressions can reach negative integers.
    """

    factor: Fraction
    operand: FuncExpr

    def __post_init__(self):
        object.__setattr__(self, "factor", _as_fraction(self.factor))
        if self.factor == 0:
            raise ValueError("scale factor must be non-zero")

    def children(self):
        return (self.operand,)

    def evaluate(self, point, exact):
        f = self.factor if exact else float(self.factor)
        return f * self.operand.evaluate(point, exact)

    def substitute(self, replacements):
        return Scale(self.factor, self.operand.substitute(replacements))

    def text(self):
        inner = self.operand.text()
        if isinstance(self.operand, (Add, Mul, Max, Min)):
            inner = f"({inner})"
        return f"{self.factor} * {inner}"


@dataclass(frozen=True)
class Pow(FuncExpr):
    base: FuncExpr
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", _as_fraction(self.exponent))

    def children(self):
        return (self.base,)

    def requires_float(self):
        # Fractional powers are irrational at almost every argument.
        return self.exponent.denominator != 1 or self.base.requires_float()

    def evaluate(self, point, exact):
        v = self.base.evaluate(point, exact)
        if self.exponent < 0 and v == 0:
            raise PartialFunctionError(tuple(point), "negative power of zero")
        if exact:
            try:
                return _pow_exact(v, self.exponent)
            except PartialFunctionError:
                raise PartialFunctionError(tuple(point), f"{v}**{self.exponent} undefined")
        if v < 0 and self.exponent.denominator != 1:
            raise PartialFunctionError(tuple(point), "fractional power of a negative value")
        return float(v) ** float(self.exponent)

    def substitute(self, replacements):
        return Pow(self.base.substitute(replacements), self.exponent)

    def text(self):
        return f"pow({self.base.text()}, {self.exponent})"


@dataclass(frozen=True)
class Log(FuncExpr):
    base: Fraction
    operand: FuncExpr

    def __post_init__(self):
        object.__setattr__(self, "base", _as_fraction(self.base))
        if self.base <= 1:
            raise ValueError("logarithm base must exceed 1")

    def children(self):
        return (self.operand,)

    def requires_float(self):
        return True

    def evaluate(self, point, exact):
        v = self.operand.evaluate(point, exact)
        if v <= 0:
            raise PartialFunctionError(tuple(point), "logarithm of a non-positive value")
        if exact:
            raise IrrationalValueError("logarithms require float mode")
        return math.log(float(v)) / math.log(float(self.base))

    def substitute(self, replacements):
        return Log(self.base, self.operand.substitute(replacements))

    def text(self):
        return f"log({self.base}, {self.operand.text()})"


@dataclass(frozen=True)
class ExpBase(FuncExpr):
    base: Fraction
    exponent: FuncExpr

    def __post_init__(self):
        object.__setattr__(self, "base", _as_fraction(self.base))
        if self.base <= 0:
            raise ValueError("exponential base must be positive")

    def children(self):
        return (self.exponent,)

    def evaluate(self, point, exact):
        e = self.exponent.evaluate(point, exact)
        if exact:
            return _pow_exact(self.base, e)
        return float(self.base) ** float(e)

    def substitute(self, replacements):
        return ExpBase(self.base, self.exponent.substitute(replacements))

    def text(self):
        return f"exp({self.base}, {self.exponent.text()})"


@dataclass(frozen=True)
class _Unary(FuncExpr):
    operand: FuncExpr

    def children(self):
        return (self.operand,)


class Floor(_Unary):
    def evaluate(self, point, exact):
        v = self.operand.evaluate(point, exact)
        return Fraction(math.floor(v)) if exact else float(math.floor(v + 1e-12))

    def substitute(self, replacements):
        return Floor(self.operand.substitute(replacements))

    def text(self):
        return f"floor({self.operand.text()})"


class Ceil(_Unary):
    def evaluate(self, point, exact):
        v = self.operand.evaluate(point, exact)
        return Fraction(math.ceil(v)) if exact else float(math.ceil(v - 1e-12))

    def substitute(self, replacements):
        return Ceil(self.operand.substitute(replacements))

    def text(self):
        return f"ceil({self.operand.text()})"


class Sgn(_Unary):
    def evaluate(self, point, exact):
        v = self.operand.evaluate(point, exact)
        s = (v > 0) - (v < 0)
        return Fraction(s) if exact else float(s)

    def substitute(self, replacements):
        return Sgn(self.operand.substitute(replacements))

    def text(self):
        return f"sgn({self.operand.text()})"


@dataclass(frozen=True)
class Indicator(FuncExpr):
    left: FuncExpr
    op: str
    right: FuncExpr

    def __post_init__(self):
        if self.op not in _CMP:
            raise ValueError(f"unknown comparison {self.op!r}")

    def children(self):
        return (self.left, self.right)

    def evaluate(self, point, exact):
        a = self.left.evaluate(point, exact)
        b = self.right.evaluate(point, exact)
        r = 1 if _CMP[self.op](a, b) else 0
        return Fraction(r) if exact else float(r)

    def substitute(self, replacements):
        return Indicator(self.left.substitute(replacements), self.op,
                         self.right.substitute(replacements))

    def text(self):
        return f"ind({self.left.text()} {self.op} {self.right.text()})"


class External(FuncExpr):
    """An opaque computed function of the point.

    Used for constructions that are defined point-by-point (quotients,
    zero-extensions along a map, prefix sums) rather than by a formula.
    Not produced by the parser and not printable back into grammar text.
    """

    def __init__(self, fn: Callable, label: str, arity: int = 1) -> None:
        self.fn = fn
        self.label = label
        self.arity = arity

    def evaluate(self, point, exact):
        v = self.fn(tuple(point))
        if exact and not isinstance(v, Fraction):
            v = _as_fraction(v)
        return v if exact else float(v)

    def max_coord(self):
        return self.arity

    def substitute(self, replacements):
        coords = tuple(replacements)

        def composed(point):
            inner = tuple(e.evaluate(point, exact=True) for e in coords)
            return self.fn(inner)

        return External(composed, f"{self.label}∘map", max(
            (e.max_coord() for e in coords), default=0))

    def text(self):
        return f"<{self.label}>"


@dataclass(frozen=True)
class Piecewise(FuncExpr):
    guard: FuncExpr  # non-zero selects `then`
    then: FuncExpr
    otherwise: FuncExpr

    def children(self):
        return (self.guard, self.then, self.otherwise)

    def evaluate(self, point, exact):
        g = self.guard.evaluate(point, exact)
        branch = self.then if g != 0 else self.otherwise
        return branch.evaluate(point, exact)

    def substitute(self, replacements):
        return Piecewise(self.guard.substitute(replacements),
                         self.then.substitute(replacements),
                         self.otherwise.substitute(replacements))

    def text(self):
        return (f"({self.then.text()}) * {self.guard.text()}"
                f" + ({self.otherwise.text()}) * ind({self.guard.text()} = 0)")


# ---------------------------------------------------------------------------
# Domains
# ---------------------------------------------------------------------------

NATURALS = "naturals"
POSITIVE_NATURALS = "positive-naturals"
INTEGERS = "integers"
_BASES = (NATURALS, POSITIVE_NATURALS, INTEGERS)


@dataclass(frozen=True)
class FiniteSet:
    """An explicit finite set of integer d-tuples."""

    points: tuple
    dimension: int = 0

    def __post_init__(self):
        pts = tuple(tuple(p) for p in self.points)
        if len(set(pts)) != len(pts):
            raise ValueError("finite-set points must be distinct")
        if pts:
            d = len(pts[0])
            if d < 1 or any(len(p) != d for p in pts):
                raise ValueError("all points must share one arity >= 1")
            object.__setattr__(self, "dimension", d)
        elif self.dimension < 1:
            object.__setattr__(self, "dimension", 1)
        object.__setattr__(self, "points", tuple(sorted(pts)))

    @property
    def is_finite(self) -> bool:
        return True

    def contains(self, point: Point) -> bool:
        return tuple(point) in set(self.points)

    def box_points(self, horizon: int) -> tuple:
        return self.points

    def text(self) -> str:
        inner = ",".join("(" + ",".join(map(str, p)) + ")" for p in self.points)
        return f"finite:[{inner}]"


@dataclass(frozen=True)
class Grid:
    """A conceptually infinite integer lattice, optionally constrained."""

    dimension: int
    base: str
    constraint: Optional[FuncExpr] = None

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("grid dimension must be >= 1")
        if self.base not in _BASES:
            raise ValueError(f"unknown base {self.base!r}")
        if self.constraint is not None and self.constraint.max_coord() > self.dimension:
            raise ValueError("constraint refers to a coordinate beyond the grid dimension")

    @property
    def is_finite(self) -> bool:
        return False

    def _axis_range(self, horizon: int):
        """Axis sample: dense up to 128, geometric stride beyond.

        Values v with |v| in (128 * 2^k, 128 * 2^(k+1)] keep only multiples
        of 2^(k+2), so the samples at horizon h are a subset of the samples
        at horizon 2h and box scans stay consistent across doublings.
        """
        if self.base == NATURALS:
            lo = 0
        elif self.base == POSITIVE_NATURALS:
            lo = 1
        else:
            lo = -horizon
        if horizon <= 128:
            return range(lo, horizon + 1)
        out = []
        for v in range(lo, horizon + 1):
            mag = abs(v)
            if mag <= 128:
                out.append(v)
                continue
            stride = 4
            band = 256
            while mag > band:
                stride *= 2
                band *= 2
            if v % stride == 0:
                out.append(v)
        return out

    def contains(self, point: Point) -> bool:
        if len(point) != self.dimension:
            return False
        for v in point:
            if v != int(v):
                return False
            if self.base == NATURALS and v < 0:
                return False
            if self.base == POSITIVE_NATURALS and v < 1:
                return False
        if self.constraint is not None:
            return self.constraint.evaluate(point, exact=True) != 0
        return True

    def box_points(self, horizon: int) -> tuple:
        """Domain points inside the axis box, in lexicographic order."""
        axis = self._axis_range(horizon)
        pts = itertools.product(*([axis] * self.dimension))
        if self.constraint is None:
            return tuple(pts)
        return tuple(p for p in pts if self.constraint.evaluate(p, exact=True) != 0)

    def text(self) -> str:
        core = {NATURALS: "N", POSITIVE_NATURALS: "N+", INTEGERS: "Z"}[self.base]
        out = core if self.dimension == 1 else f"{core}^{self.dimension}"
        if self.constraint is not None:
            out += f" where {self.constraint.text()}"
        return out


DomainSpec = Union[FiniteSet, Grid]


def same_domain(a: DomainSpec, b: DomainSpec) -> bool:
    return a == b


# ---------------------------------------------------------------------------
# Numeric modes and resource functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumericMode:
    kind: str  # 'exact' | 'float'
    tolerance: float = 0.0

    def __post_init__(self):
        if self.kind not in ("exact", "float"):
            raise ValueError("mode must be 'exact' or 'float'")


EXACT = NumericMode("exact")
FLOAT = NumericMode("float", 1e-9)


@dataclass(frozen=True)
class ResourceFunction:
    """A total non-negative function on a declared domain."""

    domain: DomainSpec
    table: Optional[Mapping[Point, Fraction]]
    expr: Optional[FuncExpr]
    mode: NumericMode = EXACT

    def __post_init__(self):
        if (self.table is None) == (self.expr is None):
            raise ValueError("exactly one of table/expr must be given")

    @property
    def exact(self) -> bool:
        return self.mode.kind == "exact"

    def value_at(self, point: Point) -> Number:
        """Evaluate without a domain-membership check (hot path)."""
        if self.table is not None:
            try:
                return self.table[tuple(point)]
            except KeyError:
                raise DomainMismatchError(f"{point} is not in the table domain")
        return self.expr.evaluate(point, exact=self.exact)

    def box_values(self, horizon: int) -> tuple:
        """Memoized (points, values) over the axis box at ``horizon``."""
        try:
            cache = self._box_cache
        except AttributeError:
            cache = {}
            object.__setattr__(self, "_box_cache", cache)
        if horizon not in cache:
            pts = self.domain.box_points(horizon)
            try:
                vals = tuple(self.value_at(p) for p in pts)
            except IrrationalValueError:
                # A value fell off the rationals mid-box: finish in floats.
                vals = tuple(self.expr.evaluate(p, exact=False) for p in pts)
            cache[horizon] = (pts, vals)
        return cache[horizon]

    def __call__(self, *point) -> Number:
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        if not self.domain.contains(point):
            raise DomainMismatchError(f"{point} is not in the domain {self.domain.text()}")
        return self.value_at(point)

    def body_text(self) -> str:
        if self.expr is not None:
            return self.expr.text()
        return "table{" + ", ".join(f"{p}:{v}" for p, v in sorted(self.table.items())) + "}"


_VALIDATION_HORIZON = 8


def make_function(spec: DomainSpec, body, mode: NumericMode = EXACT,
                  check_horizon: int = _VALIDATION_HORIZON) -> ResourceFunction:
    """Build and validate a resource function.

    Validation is exhaustive on finite domains and horizon-sampled on grids:
    values must be defined (log/pow guards) and non-negative, and exact mode
    must be representable (no logarithms, no irrational powers).
    """
    if isinstance(body, FuncExpr):
        if body.max_coord() > spec.dimension:
            raise DomainMismatchError(
                f"body arity {body.max_coord()} exceeds domain dimension {spec.dimension}")
        if mode.kind == "exact" and body.requires_float():
            # Logarithms are structurally irrational: demote to float mode.
            mode = FLOAT
        fn = ResourceFunction(spec, None, body, mode)
        try:
            for p in spec.box_points(check_horizon):
                v = fn.value_at(p)  # raises PartialFunctionError / IrrationalValueError
                if v < 0:
                    raise NegativeValueError(p, v)
        except IrrationalValueError:
            # Irrational powers demote the function to float mode.
            if mode.kind != "exact":
                raise
            return make_function(spec, body, FLOAT, check_horizon)
        return fn
    # Table body.
    if not isinstance(spec, FiniteSet):
        raise DomainMismatchError("table bodies require a finite-set domain")
    table = {tuple(p): (_as_fraction(v) if mode.kind == "exact" else float(v))
             for p, v in dict(body).items()}
    missing = set(spec.points) - set(table)
    if missing:
        raise DomainMismatchError(f"table lacks values for {sorted(missing)[:3]}")
    extra = set(table) - set(spec.points)
    if extra:
        raise DomainMismatchError(f"table has values outside the domain: {sorted(extra)[:3]}")
    for p, v in table.items():
        if v < 0:
            raise NegativeValueError(p, v)
    return ResourceFunction(spec, table, None, mode)


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Restrict:
    subdomain: DomainSpec


@dataclass(frozen=True)
class ComposeRight:
    """Precompose with s : Y -> X, given as one coordinate expression per
    X-coordinate, each over Y's coordinates."""

    source: DomainSpec  # Y
    coords: tuple       # tuple[FuncExpr, ...] of length dim(X)


@dataclass(frozen=True)
class Pointwise:
    op: str  # 'add' | 'mul' | 'max' | 'scale' | 'pow'
    other: Optional[ResourceFunction] = None
    alpha: Optional[Fraction] = None


def _map_point(op: ComposeRight, y: Point) -> Point:
    img = []
    for e in op.coords:
        v = e.evaluate(y, exact=True)
        if v.denominator != 1:
            raise RangeEscapeError(tuple(y), tuple(img) + (v,))
        img.append(int(v))
    return tuple(img)


def transform(f: ResourceFunction, op) -> ResourceFunction:
    """Restriction, right-composition, or pointwise combination."""
    if isinstance(op, Restrict):
        sub = op.subdomain
        if isinstance(sub, FiniteSet):
            for p in sub.points:
                if not f.domain.contains(p):
                    raise DomainMismatchError(f"{p} is outside the original domain")
            if f.table is not None:
                return ResourceFunction(sub, {p: f.table[p] for p in sub.points}, None, f.mode)
            return ResourceFunction(sub, None, f.expr, f.mode)
        if not isinstance(f.domain, Grid):
            raise DomainMismatchError("grid restriction requires a grid original domain")
        return ResourceFunction(sub, None, f.expr, f.mode)

    if isinstance(op, ComposeRight):
        src = op.source
        if len(op.coords) != f.domain.dimension:
            raise DomainMismatchError("map arity does not match the target domain dimension")
        check_pts = src.box_points(_VALIDATION_HORIZON)
        for y in check_pts:
            img = _map_point(op, y)
            if not f.domain.contains(img):
                raise RangeEscapeError(tuple(y), img)
        if f.table is not None:
            if not isinstance(src, FiniteSet):
                raise DomainMismatchError("composing a table requires a finite source domain")
            new_table = {y: f.table[_map_point(op, y)] for y in src.points}
            return ResourceFunction(src, new_table, None, f.mode)
        return ResourceFunction(src, None, f.expr.substitute(op.coords), f.mode)

    if isinstance(op, Pointwise):
        if op.op in ("add", "mul", "max"):
            g = op.other
            if g is None or not same_domain(f.domain, g.domain):
                raise DomainMismatchError("pointwise operands must share a domain")
            if f.table is not None and g.table is not None:
                combine = {"add": lambda a, b: a + b,
                           "mul": lambda a, b: a * b,
                           "max": max}[op.op]
                return ResourceFunction(
                    f.domain, {p: combine(f.table[p], g.table[p]) for p in f.table},
                    None, f.mode)
            fe = _as_expr(f)
            ge = _as_expr(g)
            node = {"add": Add, "mul": Mul, "max": Max}[op.op]
            return ResourceFunction(f.domain, None, node((fe, ge)), f.mode)
        if op.op == "scale":
            alpha = _as_fraction(op.alpha)
            if alpha <= 0:
                raise ValueError("scale factor must be positive")
            if f.table is not None:
                return ResourceFunction(f.domain, {p: alpha * v for p, v in f.table.items()},
                                        None, f.mode)
            return ResourceFunction(f.domain, None, Scale(alpha, f.expr), f.mode)
        if op.op == "pow":
            alpha = _as_fraction(op.alpha)
            if f.table is not None:
                return ResourceFunction(
                    f.domain, {p: _pow_exact(v, alpha) for p, v in f.table.items()},
                    None, f.mode)
            return ResourceFunction(f.domain, None, Pow(f.expr, alpha), f.mode)
        raise ValueError(f"unknown pointwise op {op.op!r}")

    raise TypeError(f"unknown transform {op!r}")


def _as_expr(f: ResourceFunction) -> FuncExpr:
    if f.expr is not None:
        return f.expr
    raise DomainMismatchError("cannot mix a table with an expression over a shared domain")


def sample(f: ResourceFunction, horizon: int) -> list:
    """Deterministic lexicographic enumeration of (point, value) in the box."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    return [(p, f.value_at(p)) for p in f.domain.box_points(horizon)]


# ---------------------------------------------------------------------------
# Text grammar
# ---------------------------------------------------------------------------
#
#   expr   := term (('+'|'max'|'min') term)*
#   term   := factor ('*' factor)*
#   factor := rational | var | 'pow(' expr ',' rational ')'
#           | 'log(' rational ',' expr ')' | 'exp(' rational ',' expr ')'
#           | 'floor(' expr ')' | 'ceil(' expr ')' | 'sgn(' expr ')'
#           | 'ind(' expr cmp expr ')' | '(' expr ')'
#   var    := 'x1'..'xd'; aliases: 1-D n:=x1; 2-D m:=x1, n:=x2
#
# Domain text: "N", "N+", "Z" with optional "^d", or "finite:[(..),..]",
# optionally followed by "where <expr cmp expr>".

_TOKEN_RE = re.compile(r"""
    (?P<num>\d+(?:/\d+)?(?:\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<cmp><=|>=|==|!=|<|>|=)
  | (?P<sym>[-+*(),])
  | (?P<ws>\s+)
""", re.VERBOSE)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, dimension: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.dimension = dimension

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, value: str):
        kind, tok, pos = self.next()
        if tok != value:
            raise ParseError(f"expected {value!r}, found {tok!r}", pos)

    def parse(self) -> FuncExpr:
        e = self.expr()
        kind, tok, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {tok!r}", pos)
        return e

    def expr(self) -> FuncExpr:
        out = self.term()
        while True:
            kind, tok, _ = self.peek()
            if tok == "+":
                self.next()
                out = Add((out, self.term()))
            elif tok in ("max", "min"):
                self.next()
                node = Max if tok == "max" else Min
                out = node((out, self.term()))
            else:
                return out

    def term(self) -> FuncExpr:
        out = self.factor()
        while self.peek()[1] == "*":
            self.next()
            out = Mul((out, self.factor()))
        return out

    def rational(self) -> Fraction:
        kind, tok, pos = self.next()
        sign = 1
        if tok == "-":
            sign = -1
            kind, tok, pos = self.next()
        if kind != "num":
            raise ParseError(f"expected a rational, found {tok!r}", pos)
        return sign * Fraction(tok)

    def factor(self) -> FuncExpr:
        kind, tok, pos = self.next()
        if kind == "num":
            return Const(Fraction(tok))
        if tok == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "name":
            if tok == "pow":
                self.expect("(")
                e = self.expr()
                self.expect(",")
                a = self.rational()
                self.expect(")")
                return Pow(e, a)
            if tok == "log":
                self.expect("(")
                b = self.rational()
                self.expect(",")
                e = self.expr()
                self.expect(")")
                return Log(b, e)
            if tok == "exp":
                self.expect("(")
                b = self.rational()
                self.expect(",")
                e = self.expr()
                self.expect(")")
                return ExpBase(b, e)
            if tok in ("floor", "ceil", "sgn"):
                self.expect("(")
                e = self.expr()
                self.expect(")")
                return {"floor": Floor, "ceil": Ceil, "sgn": Sgn}[tok](e)
            if tok == "ind":
                self.expect("(")
                left = self.expr()
                ckind, ctok, cpos = self.next()
                if ckind != "cmp":
                    raise ParseError(f"expected a comparison, found {ctok!r}", cpos)
                right = self.expr()
                self.expect(")")
                return Indicator(left, ctok, right)
            return self.variable(tok, pos)
        raise ParseError(f"unexpected token {tok!r}", pos)

    def variable(self, name: str, pos: int) -> Coord:
        m = re.fullmatch(r"x(\d+)", name)
        if m:
            idx = int(m.group(1))
        elif name == "n":
            idx = 1 if self.dimension == 1 else 2
        elif name == "m":
            if self.dimension < 2:
                raise ParseError("variable 'm' needs a 2-D domain", pos)
            idx = 1
        else:
            raise ParseError(f"unknown variable {name!r}", pos)
        if not 1 <= idx <= self.dimension:
            raise ParseError(f"coordinate x{idx} is outside dimension {self.dimension}", pos)
        return Coord(idx)


def parse_expression(text: str, dimension: int) -> FuncExpr:
    return _Parser(text, dimension).parse()


_DOMAIN_RE = re.compile(r"^\s*(N\+|N|Z)(?:\^(\d+))?\s*$")
_FINITE_RE = re.compile(r"^\s*finite:\[(.*)\]\s*$")


def parse_domain(text: str) -> DomainSpec:
    body, _, pred = text.partition(" where ")
    m = _DOMAIN_RE.match(body)
    if m:
        base = {"N": NATURALS, "N+": POSITIVE_NATURALS, "Z": INTEGERS}[m.group(1)]
        dim = int(m.group(2) or 1)
        constraint = None
        if pred.strip():
            constraint = _parse_predicate(pred.strip(), dim)
        return Grid(dim, base, constraint)
    m = _FINITE_RE.match(body)
    if m:
        if pred.strip():
            raise ParseError("finite domains do not take a 'where' clause")
        inner = m.group(1).strip()
        points = []
        if inner:
            for part in re.findall(r"\(([^()]*)\)", inner):
                points.append(tuple(int(x) for x in part.split(",") if x.strip()))
            if not points:
                points = [(int(x),) for x in inner.split(",")]
        return FiniteSet(tuple(points))
    raise ParseError(f"cannot parse domain {text!r}")


def _parse_predicate(text: str, dimension: int) -> FuncExpr:
    p = _Parser(text, dimension)
    left = p.expr()
    kind, tok, pos = p.peek()
    if kind == "cmp":
        p.next()
        right = p.expr()
        result = Indicator(left, tok, right)
    else:
        result = left
    kind, tok, pos = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input {tok!r} in predicate", pos)
    return result


# Convenience constructors -------------------------------------------------

def const_function(spec: DomainSpec, value) -> ResourceFunction:
    return make_function(spec, Const(_as_fraction(value)))


def from_text(domain_text: str, expr_text: str,
              mode: NumericMode = EXACT) -> ResourceFunction:
    spec = parse_domain(domain_text)
    return make_function(spec, parse_expression(expr_text, spec.dimension), mode)
