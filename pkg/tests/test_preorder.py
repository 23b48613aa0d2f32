"""Finite preorders: down-sets, map classification, residuation."""

import pytest

from dominance_lab.preorder import (
    FinitePreorder,
    HASSE_CASES,
    classify_map,
    down_sets,
    enumerate_maps,
    enumerate_preorders,
    hasse_case,
    residual_of,
)


class TestConstruction:
    def test_missing_reflexivity_rejected(self):
        with pytest.raises(ValueError):
            FinitePreorder(("a", "b"), (("a", "b"), ("a", "a")))

    def test_missing_transitivity_rejected(self):
        with pytest.raises(ValueError):
            FinitePreorder(("a", "b", "c"),
                           (("a", "a"), ("b", "b"), ("c", "c"),
                            ("a", "b"), ("b", "c")))

    def test_from_pairs_closes(self):
        p = FinitePreorder.from_pairs(("a", "b", "c"),
                                      (("a", "b"), ("b", "c")))
        assert p.leq("a", "c")

    def test_chain_and_antichain(self):
        chain = FinitePreorder.chain("abc")
        anti = FinitePreorder.antichain("xyz")
        labels = sorted(chain.elements)
        assert chain.leq(labels[0], labels[2])
        assert not any(anti.leq(x, y) for x in anti.elements
                       for y in anti.elements if x != y)


class TestDownSets:
    def test_empty_set_is_down_set(self):
        p = FinitePreorder.chain("abc")
        assert down_sets(p, "isDownSet", ())

    def test_principal_of_top_is_whole_chain(self):
        p = FinitePreorder.chain("abcd")
        top = max(p.elements, key=lambda x: sum(p.leq(y, x)
                                                for y in p.elements))
        generated = down_sets(p, "generate", (top,))
        assert set(generated) == set(p.elements)
        assert down_sets(p, "isPrincipal", generated)

    def test_enumerate_all_on_chain(self):
        p = FinitePreorder.chain("abc")
        all_sets = down_sets(p, "enumerateAll")
        assert len(all_sets) == 4  # one per prefix, including empty

    def test_definitions_coincide_exhaustively(self):
        # both down-set characterizations agree for every subset of every
        # preorder on up to 4 elements (is_down_set cross-checks internally)
        import itertools
        for size in range(1, 5):
            for p in enumerate_preorders(size):
                elems = list(p.elements)
                for r in range(len(elems) + 1):
                    for subset in itertools.combinations(elems, r):
                        down_sets(p, "isDownSet", subset)


class TestClassifyMap:
    def test_identity_has_all_flags(self):
        p = FinitePreorder.chain("abc")
        ident = {x: x for x in p.elements}
        flags = classify_map(p, p, ident).flags()
        assert all(flags.values())

    def test_constant_to_bottom_on_chain_is_residuated(self):
        p = FinitePreorder.chain("abc")
        h = {x: "a" for x in p.elements}
        # the residual of constant-to-bottom is constant-to-top
        assert residual_of(p, p, h) == {x: "c" for x in p.elements}
        # constant-to-top, by contrast, is not residuated
        assert residual_of(p, p, {x: "c" for x in p.elements}) is None

    def test_non_monotone_map_not_residuated(self):
        p = FinitePreorder.chain("ab")
        lo, hi = sorted(p.elements,
                        key=lambda x: sum(p.leq(x, y) for y in p.elements),
                        reverse=True)
        swap = {lo: hi, hi: lo}
        flags = classify_map(p, p, swap).flags()
        assert not flags["orderPreserving"]
        assert not flags["residuated"]

    def test_residual_satisfies_adjunction(self):
        p = FinitePreorder.chain("abc")
        q = FinitePreorder.chain("abc")
        for h in enumerate_maps(p, q):
            r = residual_of(p, q, h)
            if r is None:
                continue
            for x in p.elements:
                for y in q.elements:
                    assert q.leq(h[x], y) == p.leq(x, r[y])


class TestHasseCases:
    def test_case_letters(self):
        assert tuple(HASSE_CASES) == ("a", "b", "c", "d", "e", "f")

    @pytest.mark.parametrize("letter", HASSE_CASES)
    def test_case_matches_caption(self, letter):
        p, q, h, expected = hasse_case(letter)
        flags = classify_map(p, q, h).flags()
        for name, want in expected.items():
            assert flags[name] == want, (letter, name)


class TestEnumeration:
    @pytest.mark.parametrize("size,count", [(1, 1), (2, 4), (3, 29),
                                            (4, 355)])
    def test_labelled_preorder_counts(self, size, count):
        assert sum(1 for _ in enumerate_preorders(size)) == count

    def test_map_count_is_exponential(self):
        p = FinitePreorder.chain("ab")
        q = FinitePreorder.antichain("xyz")
        assert sum(1 for _ in enumerate_maps(p, q)) == 9

    def test_size_cap(self):
        with pytest.raises(ValueError):
            list(enumerate_preorders(5))
