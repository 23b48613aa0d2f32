"""Finite preorders, down-sets, and the classification of maps between them.

A finite preorder is a reflexive, transitive boolean relation on labelled
elements.  The module provides:

* down-set machinery -- generated down-sets, the two equivalent down-set
  characterizations (cross-checked), principal down-sets, and full
  enumeration;
* ``classify_map`` -- exhaustive computation of the standard flags of a
  map between preorders: order-preserving, order-reflecting,
  order-embedding, p-injective / p-surjective / p-bijective (the p-prefix
  works up to the induced equivalence x ~ y iff x <= y <= x), residuated,
  anti-residuated, and order-isomorphism.  Residuation is verified two
  ways -- by exhaustive residual search and by the principal-down-set
  preimage criterion -- and the two computations must agree;
* ``residual_of`` -- the residual map when one exists, verified against
  its defining adjunction and its derived inequalities;
* exhaustive enumerators for small preorders and for all maps between two
  preorders, used by the invariant suites;
* the six standard separating examples (cases "a".."f") showing that the
  map classes are genuinely distinct.

Anti-residuation is computed as residuation in the transposed relations,
so a single implementation serves both.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Tuple

__all__ = [
    "FinitePreorder",
    "MapClassification",
    "all_down_sets",
    "classify_map",
    "down_sets",
    "enumerate_maps",
    "enumerate_preorders",
    "hasse_case",
    "HASSE_CASES",
    "residual_of",
]

Label = str


@dataclass(frozen=True)
class FinitePreorder:
    """A reflexive, transitive relation on a finite tuple of labels."""

    elements: Tuple[Label, ...]
    pairs: FrozenSet[Tuple[Label, Label]]

    def __post_init__(self):
        elems = tuple(self.elements)
        if len(set(elems)) != len(elems):
            raise ValueError("element labels must be distinct")
        pairs = frozenset((str(a), str(b)) for a, b in self.pairs)
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "pairs", pairs)
        known = set(elems)
        for a, b in pairs:
            if a not in known or b not in known:
                raise ValueError(f"relation pair ({a}, {b}) uses unknown labels")
        for x in elems:
            if (x, x) not in pairs:
                raise ValueError(f"relation is not reflexive at {x}")
        for a, b in pairs:
            for c in elems:
                if (b, c) in pairs and (a, c) not in pairs:
                    raise ValueError(
                        f"relation is not transitive: {a} <= {b} <= {c} "
                        f"but not {a} <= {c}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_pairs(cls, elements: Iterable[Label],
                   pairs: Iterable[Tuple[Label, Label]]) -> "FinitePreorder":
        """Close the given pairs reflexively and transitively."""
        elems = tuple(elements)
        rel = {(x, x) for x in elems} | {(str(a), str(b)) for a, b in pairs}
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in product(tuple(rel), repeat=2):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        return cls(elems, frozenset(rel))

    @classmethod
    def chain(cls, elements: Iterable[Label]) -> "FinitePreorder":
        elems = tuple(elements)
        return cls(elems, frozenset(
            (elems[i], elems[j]) for i in range(len(elems))
            for j in range(i, len(elems))))

    @classmethod
    def antichain(cls, elements: Iterable[Label]) -> "FinitePreorder":
        elems = tuple(elements)
        return cls(elems, frozenset((x, x) for x in elems))

    # -- relation queries --------------------------------------------------

    def leq(self, a: Label, b: Label) -> bool:
        return (a, b) in self.pairs

    def equivalent(self, a: Label, b: Label) -> bool:
        return self.leq(a, b) and self.leq(b, a)

    def transpose(self) -> "FinitePreorder":
        return FinitePreorder(self.elements,
                              frozenset((b, a) for a, b in self.pairs))

    # -- down-sets ---------------------------------------------------------

    def generated_down_set(self, subset: Iterable[Label]) -> FrozenSet[Label]:
        gen = set(subset)
        return frozenset(x for x in self.elements
                         if any(self.leq(x, d) for d in gen))

    def is_down_set(self, subset: Iterable[Label]) -> bool:
        """D = down(D), cross-checked against the pointwise criterion."""
        d = frozenset(subset)
        by_generation = self.generated_down_set(d) == d
        by_pointwise = all((x in d) for x in self.elements for g in d
                           if self.leq(x, g))
        if by_generation != by_pointwise:
            raise RuntimeError(
                "down-set characterizations disagree (internal error)")
        return by_generation

    def principal_generator(self, subset: Iterable[Label]) -> Optional[Label]:
        d = frozenset(subset)
        for g in self.elements:
            if self.generated_down_set({g}) == d:
                return g
        return None

    def all_down_sets(self) -> List[FrozenSet[Label]]:
        out = []
        for r in range(len(self.elements) + 1):
            for combo in combinations(self.elements, r):
                if self.is_down_set(combo):
                    out.append(frozenset(combo))
        return out

    def text(self) -> str:
        strict = sorted((a, b) for a, b in self.pairs if a != b)
        inner = ",".join(f"{a}<={b}" for a, b in strict)
        return f"[{','.join(self.elements)}; {inner}]"


def down_sets(preorder: FinitePreorder, query: str,
              subset: Optional[Iterable[Label]] = None):
    """Dispatch: 'generate', 'isDownSet', 'isPrincipal', or 'enumerateAll'."""
    if query == "enumerateAll":
        return preorder.all_down_sets()
    if subset is None:
        raise ValueError(f"query {query!r} needs a subset")
    if query == "generate":
        return preorder.generated_down_set(subset)
    if query == "isDownSet":
        return preorder.is_down_set(subset)
    if query == "isPrincipal":
        return preorder.principal_generator(subset) is not None
    raise ValueError(f"unknown query {query!r}")


def all_down_sets(preorder: FinitePreorder) -> List[FrozenSet[Label]]:
    return preorder.all_down_sets()


# ---------------------------------------------------------------------------
# Map classification


@dataclass(frozen=True)
class MapClassification:
    order_preserving: bool
    order_reflecting: bool
    order_embedding: bool
    p_injective: bool
    p_surjective: bool
    p_bijective: bool
    residuated: bool
    anti_residuated: bool
    order_isomorphism: bool
    residual: Optional[Dict[Label, Label]] = None
    anti_residual: Optional[Dict[Label, Label]] = None

    def flags(self) -> Dict[str, bool]:
        return {
            "orderPreserving": self.order_preserving,
            "orderReflecting": self.order_reflecting,
            "orderEmbedding": self.order_embedding,
            "pInjective": self.p_injective,
            "pSurjective": self.p_surjective,
            "pBijective": self.p_bijective,
            "residuated": self.residuated,
            "antiResiduated": self.anti_residuated,
            "orderIsomorphism": self.order_isomorphism,
        }


def _check_total(p: FinitePreorder, q: FinitePreorder,
                 h: Mapping[Label, Label]) -> Dict[Label, Label]:
    m = {str(k): str(v) for k, v in dict(h).items()}
    if set(m) != set(p.elements):
        raise ValueError("map must be total on the source elements")
    for v in m.values():
        if v not in set(q.elements):
            raise ValueError(f"map hits {v}, not a target element")
    return m


def _is_adjoint(p: FinitePreorder, q: FinitePreorder,
                h: Mapping[Label, Label],
                back: Mapping[Label, Label]) -> bool:
    return all((q.leq(h[x], y)) == (p.leq(x, back[y]))
               for x in p.elements for y in q.elements)


def residual_of(p: FinitePreorder, q: FinitePreorder,
                h: Mapping[Label, Label]) -> Optional[Dict[Label, Label]]:
    """The residual map when the adjunction h(x) <= y iff x <= r(y) holds.

    Found by exhaustive search; when present the derived inequalities are
    asserted: the residual is order-preserving, h(r(y)) <= y, and
    x <= r(h(x)).
    """
    h = _check_total(p, q, h)
    if not q.elements:
        return {}
    if not p.elements:
        return None
    for values in product(p.elements, repeat=len(q.elements)):
        back = dict(zip(q.elements, values))
        if _is_adjoint(p, q, h, back):
            _assert_residual_properties(p, q, h, back)
            return back
    return None


def _assert_residual_properties(p, q, h, back) -> None:
    for y1 in q.elements:
        for y2 in q.elements:
            if q.leq(y1, y2) and not p.leq(back[y1], back[y2]):
                raise RuntimeError("residual is not order-preserving")
    for y in q.elements:
        if not q.leq(h[back[y]], y):
            raise RuntimeError("h(residual(y)) <= y failed")
    for x in p.elements:
        if not p.leq(x, back[h[x]]):
            raise RuntimeError("x <= residual(h(x)) failed")


def _residuated_by_preimages(p: FinitePreorder, q: FinitePreorder,
                             h: Mapping[Label, Label]) -> bool:
    """h is residuated iff every principal down-set pulls back to one."""
    for y in q.elements:
        preimage = frozenset(x for x in p.elements if q.leq(h[x], y))
        if p.principal_generator(preimage) is None:
            return False
    return True


def classify_map(p: FinitePreorder, q: FinitePreorder,
                 h: Mapping[Label, Label]) -> MapClassification:
    h = _check_total(p, q, h)
    elems = p.elements

    preserving = all(q.leq(h[a], h[b])
                     for a in elems for b in elems if p.leq(a, b))
    reflecting = all(p.leq(a, b)
                     for a in elems for b in elems if q.leq(h[a], h[b]))
    p_inj = all(p.equivalent(a, b) for a in elems for b in elems
                if q.equivalent(h[a], h[b]))
    p_sur = all(any(q.equivalent(h[x], y) for x in elems)
                for y in q.elements)

    residual = residual_of(p, q, h)
    by_preimages = _residuated_by_preimages(p, q, h) if p.elements \
        else not q.elements
    if (residual is not None) != by_preimages:
        raise RuntimeError(
            "residual search and preimage criterion disagree (internal error)")

    anti = residual_of(p.transpose(), q.transpose(), h)

    embedding = preserving and reflecting
    p_bij = p_inj and p_sur
    return MapClassification(
        order_preserving=preserving,
        order_reflecting=reflecting,
        order_embedding=embedding,
        p_injective=p_inj,
        p_surjective=p_sur,
        p_bijective=p_bij,
        residuated=residual is not None,
        anti_residuated=anti is not None,
        order_isomorphism=p_bij and embedding,
        residual=residual,
        anti_residual=anti,
    )


# ---------------------------------------------------------------------------
# Enumeration


def enumerate_preorders(size: int) -> Iterator[FinitePreorder]:
    """All preorders on ``size`` labelled elements (exhaustive, size <= 4)."""
    if size < 0 or size > 4:
        raise ValueError("enumeration supports sizes 0..4")
    elems = tuple(chr(ord("a") + i) for i in range(size))
    off_diagonal = [(a, b) for a in elems for b in elems if a != b]
    diagonal = frozenset((x, x) for x in elems)
    for mask in product((False, True), repeat=len(off_diagonal)):
        pairs = set(diagonal)
        pairs.update(pair for pair, on in zip(off_diagonal, mask) if on)
        transitive = all((a, d) in pairs
                         for (a, b) in pairs for (c, d) in pairs if b == c)
        if transitive:
            yield FinitePreorder(elems, frozenset(pairs))


def enumerate_maps(p: FinitePreorder,
                   q: FinitePreorder) -> Iterator[Dict[Label, Label]]:
    """All total maps from p's elements to q's elements."""
    if not p.elements:
        yield {}
        return
    for values in product(q.elements, repeat=len(p.elements)):
        yield dict(zip(p.elements, values))


# ---------------------------------------------------------------------------
# The six separating examples


def _case_a():
    p = FinitePreorder.chain(("a0", "a1"))
    q = FinitePreorder.chain(("b0", "b1"))
    h = {"a0": "b0", "a1": "b0"}
    expect = {"orderPreserving": True, "residuated": True,
              "pSurjective": False, "pInjective": False}
    return p, q, h, expect


def _case_b():
    p = FinitePreorder.chain(("a0",))
    q = FinitePreorder.chain(("b0", "b1"))
    h = {"a0": "b1"}
    expect = {"orderEmbedding": True, "pInjective": True,
              "residuated": False, "pSurjective": False}
    return p, q, h, expect


def _case_c():
    p = FinitePreorder.chain(("a0", "a1"))
    q = FinitePreorder.chain(("b0",))
    h = {"a0": "b0", "a1": "b0"}
    expect = {"orderPreserving": True, "residuated": True,
              "pSurjective": True, "pInjective": False}
    return p, q, h, expect


def _case_d():
    p = FinitePreorder.chain(("a0",))
    q = FinitePreorder.chain(("b0", "b1"))
    h = {"a0": "b0"}
    expect = {"orderPreserving": True, "residuated": True,
              "pInjective": True, "pSurjective": False}
    return p, q, h, expect


def _case_e():
    # source: a0 below both a1 and a2, which are incomparable;
    # target: the 3-chain b0 <= b1 <= b2; h sends ai to bi.
    p = FinitePreorder.from_pairs(("a0", "a1", "a2"),
                                  (("a0", "a1"), ("a0", "a2")))
    q = FinitePreorder.chain(("b0", "b1", "b2"))
    h = {"a0": "b0", "a1": "b1", "a2": "b2"}
    expect = {"orderPreserving": True, "pBijective": True,
              "orderReflecting": False, "residuated": False}
    return p, q, h, expect


def _case_f():
    # source: the 3-chain a0 <= a1 <= a2;
    # target: b0 below both b1 and b2, which are incomparable.
    p = FinitePreorder.chain(("a0", "a1", "a2"))
    q = FinitePreorder.from_pairs(("b0", "b1", "b2"),
                                  (("b0", "b1"), ("b0", "b2")))
    h = {"a0": "b0", "a1": "b1", "a2": "b2"}
    expect = {"orderReflecting": True, "pBijective": True,
              "orderPreserving": False}
    return p, q, h, expect


HASSE_CASES = ("a", "b", "c", "d", "e", "f")


def hasse_case(letter: str):
    """One of the six separating examples: (source, target, map, expected)."""
    builders = {"a": _case_a, "b": _case_b, "c": _case_c,
                "d": _case_d, "e": _case_e, "f": _case_f}
    if letter not in builders:
        raise ValueError(f"unknown case {letter!r}; pick one of a..f")
    return builders[letter]()
