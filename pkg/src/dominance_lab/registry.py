"""Regression registry of counterexample constructions.

Each case packages a concrete construction — functions, maps, domains, all
with fixed parameters — together with the verdict pattern it is expected to
produce.  The registry separates the dominance kinds: every case exhibits a
membership (or composed membership) that fails for some kinds while the
corresponding legs hold for others, which is what distinguishes the kinds in
the comparison matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .dominance import Verdict, decide, minimal_constant
from .functions import (
    ComposeRight,
    Grid,
    NATURALS,
    ResourceFunction,
    from_text,
    parse_expression,
    transform,
)


class UnknownCaseError(KeyError):
    pass


@dataclass(frozen=True)
class Check:
    """One expectation inside a case: a dominance verdict or a value fact."""

    name: str
    expected: str        # 'holds' | 'fails' | 'fails-exact' | 'true'
    actual: str
    passed: bool
    verdict: Optional[Verdict] = None


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    checks: tuple
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _check_verdict(name: str, expected: str, v: Verdict) -> Check:
    if expected == "holds":
        ok = v.status == "holds"
    elif expected == "fails-exact":
        ok = v.status == "fails" and v.exact
    else:
        ok = v.status == "fails"
    return Check(name, expected, v.describe(), ok, v)


def _check_fact(name: str, ok: bool, actual: str = "") -> Check:
    return Check(name, "true", actual or str(ok), bool(ok))


# ---------------------------------------------------------------------------
# Case constructions
# ---------------------------------------------------------------------------

def _case_howell_subset_sum(horizon: int) -> CaseResult:
    """Prefix-summing along one axis does not preserve asymptotic membership.

    ghat(m,n) = 2^n when m = 0 else m*n is asymptotically dominated by
    g(m,n) = m*n (constant 1 beyond (1,1)), yet the prefix sums over m
    T(ghat) = 2^n + m(m+1)n/2 and T(g) = m(m+1)n/2 are not so related:
    the exponential column survives the sum.
    """
    ghat = from_text("N^2", "exp(2, n) * ind(m = 0) + m * n * ind(m >= 1)")
    g = from_text("N^2", "m * n")
    t_ghat = from_text("N^2", "exp(2, n) + 1/2 * m * (m + 1) * n")
    t_g = from_text("N^2", "1/2 * m * (m + 1) * n")

    checks = [
        _check_verdict("ghat in asymptotic O(g)", "holds",
                       decide("asymptotic", ghat, g, horizon)),
        _check_verdict("sum(ghat) in asymptotic O(sum(g))", "fails",
                       decide("asymptotic", t_ghat, t_g, max(16, horizon // 4))),
    ]
    # Closed forms agree with the literal prefix sums on a small box.
    box_ok = True
    for m in range(0, 9):
        for n in range(0, 9):
            s_hat = sum(ghat.value_at((i, n)) for i in range(m + 1))
            s = sum(g.value_at((i, n)) for i in range(m + 1))
            if s_hat != t_ghat.value_at((m, n)) or s != t_g.value_at((m, n)):
                box_ok = False
    checks.append(_check_fact("prefix sums match closed forms on box 8", box_ok))
    spot = t_ghat.value_at((2, 3))
    checks.append(_check_fact("sum(ghat)(2,3) = 17", spot == 17, f"value {spot}"))
    constants = {h: minimal_constant("asymptotic", t_ghat, t_g, h)
                 for h in (32, 64, 128)}
    growth_ok = all(
        constants[2 * h] is not None and constants[h] is not None
        and constants[2 * h] >= 2 * constants[h]
        for h in (32, 64))
    checks.append(_check_fact(
        "minimal constant at least doubles per box doubling 32->128", growth_ok,
        ", ".join(f"{h}: {float(c):.4g}" for h, c in constants.items())))
    return CaseResult("howell-subset-sum", tuple(checks),
                      {"constants": constants, "spot": spot})


def _case_even_zero_subcomp(horizon: int) -> CaseResult:
    """Composition with s(n) = n (odd) / 0 (even) breaks grid-region kinds.

    fhat = max(n,1) sits in the cofinite/asymptotic/co-asymptotic classes of
    f = n (one exceptional point), but fhat∘s exceeds every constant multiple
    of f∘s on the infinitely many even points where f∘s is zero.  The linear
    kind never admits fhat in the first place: the zero gap at n = 0 is an
    exact failure, so no composition fact can be derived from it.
    """
    dom = "N"
    f = from_text(dom, "n")
    fhat = from_text(dom, "n max 1")
    s = ComposeRight(Grid(1, NATURALS),
                     (parse_expression("n * ind(n != 2 * floor(1/2 * n))", 1),))
    f_s = transform(f, s)
    fhat_s = transform(fhat, s)
    checks = [
        _check_verdict("fhat in linear O(f)", "fails-exact",
                       decide("linear", fhat, f, horizon)),
        _check_verdict("fhat in cofinite O(f)", "holds",
                       decide("cofinite", fhat, f, horizon)),
        _check_verdict("fhat in asymptotic O(f)", "holds",
                       decide("asymptotic", fhat, f, horizon)),
        _check_verdict("fhat in coasymptotic O(f)", "holds",
                       decide("coasymptotic", fhat, f, horizon)),
        _check_verdict("fhat.s in cofinite O(f.s)", "fails",
                       decide("cofinite", fhat_s, f_s, horizon)),
        _check_verdict("fhat.s in asymptotic O(f.s)", "fails",
                       decide("asymptotic", fhat_s, f_s, horizon)),
        _check_verdict("fhat.s in coasymptotic O(f.s)", "fails",
                       decide("coasymptotic", fhat_s, f_s, horizon)),
    ]
    lin = checks[0].verdict
    checks.append(_check_fact(
        "linear failure is a zero gap at n=0",
        lin.certificate is not None and lin.certificate.reason == "zero-gap"
        and (0,) in lin.certificate.points,
        lin.describe()))
    return CaseResult("even-zero-subcomp", tuple(checks))


_STRIP_COST = "(3*n + 1) * ind(m = 0) + 4"


def _case_strip_isubcomp(horizon: int) -> CaseResult:
    """An injective embedding of the axis breaks the asymptotic kind in 2-D.

    cost(m,n) = 3n+5 on the strip m = 0 and 4 elsewhere is asymptotically
    bounded (threshold (1,0), constant 4) yet composing with the injective
    s(n) = (0,n) lands exactly on the strip, where no constant works.  The
    co-asymptotic kind never admits cost in the first place: every region
    outside a box still meets the strip.
    """
    cost = from_text("N^2", _STRIP_COST)
    one2 = from_text("N^2", "1")
    one1 = from_text("N", "1")
    s = ComposeRight(Grid(1, NATURALS),
                     (parse_expression("0", 1), parse_expression("n", 1)))
    cost_s = transform(cost, s)
    v_holds = decide("asymptotic", cost, one2, horizon // 2 or 16)
    checks = [
        _check_verdict("cost in asymptotic O(1) on the plane", "holds", v_holds),
        _check_verdict("cost.s in asymptotic O(1) on the line", "fails",
                       decide("asymptotic", cost_s, one1, horizon)),
        _check_verdict("cost in coasymptotic O(1) on the plane", "fails",
                       decide("coasymptotic", cost, one2, horizon // 2 or 16)),
        _check_fact("composed cost is 3n+5",
                    all(cost_s.value_at((n,)) == 3 * n + 5 for n in range(64))),
    ]
    w = v_holds.witness
    checks.append(_check_fact(
        "asymptotic witness threshold clears the strip",
        w is not None and w.region is not None and w.region[0] >= 1,
        f"threshold {w.region if w else None}"))
    return CaseResult("strip-N2-isubcomp", tuple(checks))


def _case_negatives_isubcomp(horizon: int) -> CaseResult:
    """An injective map into the negatives breaks the co-asymptotic kind.

    cost(z) = 4 for z >= 0 and 3|z|+5 for z < 0 lies in the co-asymptotic
    and asymptotic classes of 1 over the integers (the admissible regions can
    avoid every negative), but s(n) = -(n+1) lands on the negatives only, and
    cost∘s = 3n+8 is unbounded.  The cofinite kind never admits cost: the
    negatives are an infinite bad set.
    """
    cost = from_text("Z", "4 * ind(n >= 0) + (3 * (n * sgn(n)) + 5) * ind(n < 0)")
    onez = from_text("Z", "1")
    one1 = from_text("N", "1")
    s = ComposeRight(Grid(1, NATURALS), (_neg_shift(),))
    cost_s = transform(cost, s)
    checks = [
        _check_verdict("cost in coasymptotic O(1) on the integers", "holds",
                       decide("coasymptotic", cost, onez, horizon)),
        _check_verdict("cost in asymptotic O(1) on the integers", "holds",
                       decide("asymptotic", cost, onez, horizon)),
        _check_verdict("cost.s in coasymptotic O(1) on the line", "fails",
                       decide("coasymptotic", cost_s, one1, horizon)),
        _check_verdict("cost.s in asymptotic O(1) on the line", "fails",
                       decide("asymptotic", cost_s, one1, horizon)),
        _check_verdict("cost in cofinite O(1) on the integers", "fails",
                       decide("cofinite", cost, onez, horizon)),
        _check_fact("composed cost is 3n+8",
                    all(cost_s.value_at((n,)) == 3 * n + 8 for n in range(64))),
    ]
    return CaseResult("negatives-Z-isubcomp", tuple(checks))


def _neg_shift():
    """The map coordinate n |-> -(n+1), written with an explicit negative scale."""
    from .functions import Add, Const, Coord, Scale
    return Scale(Fraction(-1), Add((Coord(1), Const(Fraction(1)))))


def _case_affine_subhom(horizon: int) -> CaseResult:
    """Scaling by an unbounded u escapes the affine class.

    With u(n) = n and f(n) = 1/n on the positive naturals, fhat = 1 is in
    the affine class of f (constant 1) but u*fhat = n is not in the affine
    class of u*f = 1.  Directly: u(ceil(3c)) > c*u*f + c for every c, since
    3c > 2c.
    """
    u = from_text("N+", "n")
    f = from_text("N+", "pow(n, -1)")
    fhat = from_text("N+", "1")
    u_fhat = from_text("N+", "n")
    u_f = from_text("N+", "1")
    checks = [
        _check_verdict("fhat in affine O(f)", "holds",
                       decide("affine", fhat, f, horizon)),
        _check_verdict("u*fhat in affine O(u*f)", "fails",
                       decide("affine", u_fhat, u_f, horizon)),
    ]
    import math
    direct = all(math.ceil(3 * c) > c * 1 + c for c in (1, 2, 4))
    checks.append(_check_fact("u(ceil(3c)) > c*u*f + c for c in {1,2,4}", direct))
    return CaseResult("affine-subhom", tuple(checks))


def _case_affine_superhom(horizon: int) -> CaseResult:
    """No decomposition recovers slack created by a zero multiplier.

    hhat = 1 is in the affine class of u*g with u = 0 (slack absorbs the
    constant), but no ghat satisfies u*ghat = hhat: the product is zero
    everywhere while hhat is one.
    """
    u = from_text("N", "0")
    hhat = from_text("N", "1")
    u_g = from_text("N", "0")
    checks = [
        _check_verdict("hhat in affine O(u*g)", "holds",
                       decide("affine", hhat, u_g, horizon)),
        _check_fact(
            "no ghat with u*ghat = hhat",
            any(u.value_at((n,)) == 0 and hhat.value_at((n,)) > 0
                for n in range(horizon))),
    ]
    return CaseResult("affine-superhom", tuple(checks))


def _case_affine_zero(horizon: int) -> CaseResult:
    """The affine classes of 0 and 1 coincide.

    1 <= c*0 + c with c = 1, so the constants sit inside the affine class of
    the zero function; conversely 0 is below everything.  The class of zero
    is therefore not a singleton under the affine kind.
    """
    zero = from_text("N+", "0")
    one = from_text("N+", "1")
    checks = [
        _check_verdict("1 in affine O(0)", "holds",
                       decide("affine", one, zero, horizon)),
        _check_verdict("0 in affine O(1)", "holds",
                       decide("affine", zero, one, horizon)),
        _check_verdict("1 in linear O(0)", "fails-exact",
                       decide("linear", one, zero, horizon)),
    ]
    return CaseResult("affine-zero", tuple(checks))


def _case_mn_domain(horizon: int) -> CaseResult:
    """mn and mn+n: equivalent on m >= 1, inequivalent on the full plane.

    On the half-plane m >= 1, mn+n = (m+1)n <= 2mn, so the two functions
    generate the same linear class.  On the full plane the row m = 0 has
    mn = 0 while mn+n = n > 0: an exact zero-gap failure at (0,1).
    """
    half = "N^2 where m >= 1"
    f_h = from_text(half, "m * n")
    g_h = from_text(half, "m * n + n")
    f = from_text("N^2", "m * n")
    g = from_text("N^2", "m * n + n")
    hz = max(16, horizon // 4)
    v_fwd = decide("linear", g_h, f_h, hz)
    v_bwd = decide("linear", f_h, g_h, hz)
    v_fail = decide("linear", g, f, hz)
    checks = [
        _check_verdict("mn+n in linear O(mn) on m>=1", "holds", v_fwd),
        _check_verdict("mn in linear O(mn+n) on m>=1", "holds", v_bwd),
        _check_verdict("mn+n in linear O(mn) on the full plane", "fails-exact", v_fail),
        _check_fact(
            "full-plane failure is a zero gap at (0,1)",
            v_fail.certificate is not None
            and v_fail.certificate.reason == "zero-gap"
            and (0, 1) in v_fail.certificate.points,
            v_fail.describe()),
    ]
    return CaseResult("mn-vs-mn-plus-n", tuple(checks))


def _case_alg_strip_cost(horizon: int) -> CaseResult:
    """The strip traversal cost takes its two closed-form values.

    Scanning a row of the plane costs 4 operations off the strip m = 0 and
    3n+5 operations on it; the overall cost is asymptotically constant.
    """
    cost = from_text("N^2", _STRIP_COST)
    one2 = from_text("N^2", "1")
    ok = True
    for m in range(0, 9):
        for n in range(0, 9):
            want = 3 * n + 5 if m == 0 else 4
            if cost.value_at((m, n)) != want:
                ok = False
    checks = [
        _check_fact("cost(m,n) is 3n+5 on the strip and 4 elsewhere", ok),
        _check_verdict("cost in asymptotic O(1)", "holds",
                       decide("asymptotic", cost, one2, max(16, horizon // 4))),
        _check_verdict("cost in linear O(1)", "fails",
                       decide("linear", cost, one2, max(16, horizon // 4))),
    ]
    return CaseResult("alg-strip-cost", tuple(checks))


_CASES: dict = {
    "howell-subset-sum": _case_howell_subset_sum,
    "even-zero-subcomp": _case_even_zero_subcomp,
    "strip-N2-isubcomp": _case_strip_isubcomp,
    "negatives-Z-isubcomp": _case_negatives_isubcomp,
    "affine-subhom": _case_affine_subhom,
    "affine-superhom": _case_affine_superhom,
    "affine-zero": _case_affine_zero,
    "mn-vs-mn-plus-n": _case_mn_domain,
    "alg-strip-cost": _case_alg_strip_cost,
}

CASE_IDS = tuple(_CASES)


def run_counterexample(case_id: str, horizon: int = 64) -> CaseResult:
    """Execute one registry case and report every expectation's outcome."""
    try:
        builder = _CASES[case_id]
    except KeyError:
        raise UnknownCaseError(f"unknown case {case_id!r}; known: {', '.join(CASE_IDS)}")
    return builder(horizon)


def run_all(horizon: int = 64) -> list:
    return [run_counterexample(cid, horizon) for cid in CASE_IDS]
