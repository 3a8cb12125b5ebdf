import pytest

from holodec import (Skeleton, Transformation, TransformationSemigroup,
                     mask_from_points)

from conftest import random_semigroup_rows
from oracles import (brute_classes, brute_closure, brute_extended_image_set,
                     brute_heights, brute_subduction, brute_tiles)


def idx(sk, *points_one_based):
    return sk.index[mask_from_points(tuple(p - 1 for p in points_one_based))]


def as_frozensets(sk):
    from holodec import points_from_mask
    return {frozenset(points_from_mask(m)) for m in sk.sets}


class TestExtendedImageSet:
    def test_swap_collapse_has_five_sets(self, swap_collapse):
        sk = swap_collapse.sk
        assert [sk.set_str(i) for i in range(len(sk.sets))] == \
            ["{1,2,3}", "{1,2}", "{1}", "{2}", "{3}"]

    def test_six_point_has_nineteen_sets(self, six_point):
        assert len(six_point.sk.sets) == 19

    def test_identity_only_has_mandatory_sets(self):
        ts = TransformationSemigroup.from_one_based([[1, 2]])
        sk = Skeleton(ts)
        assert [sk.set_str(i) for i in range(len(sk.sets))] == \
            ["{1,2}", "{1}", "{2}"]

    def test_matches_brute_oracle_on_corpus(self):
        for n, rows in random_semigroup_rows(8):
            ts = TransformationSemigroup.from_one_based(rows)
            sk = Skeleton(ts)
            gens = {tuple(g.images) for g in ts.generators}
            assert as_frozensets(sk) == brute_extended_image_set(n, gens)

    def test_closed_under_action(self, swap_collapse, six_point, full_t3):
        for system in (swap_collapse, six_point, full_t3):
            sk = system.sk
            for i in range(len(sk.sets)):
                for g in sk.ts.generators:
                    assert g.act_mask(sk.sets[i]) in sk.index

    def test_total_order_descending_card_then_lex(self, six_point):
        sk = six_point.sk
        keys = [( -sk.card(i), tuple(sorted(sk.set_str(i)))) for i in range(len(sk.sets))]
        cards = [sk.card(i) for i in range(len(sk.sets))]
        assert cards == sorted(cards, reverse=True)
        assert sk.sets[0] == sk.full_mask


class TestSubduction:
    def test_inclusion_implies_subduction(self, swap_collapse):
        sk = swap_collapse.sk
        assert sk.subduction_holds(idx(sk, 3), idx(sk, 1, 2, 3))

    def test_unreachable_pair(self, swap_collapse):
        # every image of {1,2} stays inside {1,2}
        sk = swap_collapse.sk
        assert not sk.subduction_holds(idx(sk, 3), idx(sk, 1, 2))

    def test_published_depth_relation(self, six_point):
        sk = six_point.sk
        assert sk.depth[idx(sk, 1, 4)] < sk.depth[idx(sk, 1, 2, 3)]

    def test_agrees_with_brute_oracle(self):
        compared = 0
        for n, rows in random_semigroup_rows(8, seed=99):
            ts = TransformationSemigroup.from_one_based(rows)
            if len(ts) > 250:
                continue
            compared += 1
            sk = Skeleton(ts)
            elements = brute_closure({tuple(g.images) for g in ts.generators})
            from holodec import points_from_mask
            for p in range(len(sk.sets)):
                for q in range(len(sk.sets)):
                    expected = brute_subduction(
                        frozenset(points_from_mask(sk.sets[p])),
                        frozenset(points_from_mask(sk.sets[q])), elements)
                    assert sk.subduction_holds(p, q) == expected
        assert compared >= 4

    def test_preorder_laws_exhaustive(self):
        for n, rows in random_semigroup_rows(4, seed=4242):
            sk = Skeleton(TransformationSemigroup.from_one_based(rows))
            m = len(sk.sets)
            rel = [[sk.subduction_holds(p, q) for q in range(m)] for p in range(m)]
            for p in range(m):
                assert rel[p][p]
            for p in range(m):
                for q in range(m):
                    for r in range(m):
                        if rel[p][q] and rel[q][r]:
                            assert rel[p][r]


class TestClasses:
    def test_swap_collapse_partition(self, swap_collapse):
        sk = swap_collapse.sk
        got = [[sk.set_str(u) for u in members] for members in sk.classes]
        assert got == [["{1,2,3}"], ["{1,2}"], ["{1}", "{2}"], ["{3}"]]

    def test_matches_brute_mutual_reachability(self):
        from holodec import points_from_mask
        compared = 0
        for n, rows in random_semigroup_rows(8, seed=7):
            ts = TransformationSemigroup.from_one_based(rows)
            if len(ts) > 250:  # keep the quadratic oracle tractable
                continue
            compared += 1
            sk = Skeleton(ts)
            elements = brute_closure({tuple(g.images) for g in ts.generators})
            sets = as_frozensets(sk)
            expected = {frozenset(c) for c in brute_classes(sets, elements)}
            got = {
                frozenset(frozenset(points_from_mask(sk.sets[u])) for u in members)
                for members in sk.classes
            }
            assert got == expected
        assert compared >= 4

    def test_singleton_class_words_empty(self, swap_collapse):
        sk = swap_collapse.sk
        i = idx(sk, 1, 2)
        assert sk.to_rep[i] == () and sk.from_rep[i] == ()

    def test_witness_words_biject_and_roundtrip(self, six_point, corpus_systems):
        for system in [six_point] + corpus_systems:
            sk = system.sk
            for members in sk.classes:
                rep = members[0]
                for u in members:
                    fwd = sk.ts.evaluate(sk.to_rep[u])
                    back = sk.ts.evaluate(sk.from_rep[u])
                    assert fwd.act_mask(sk.sets[u]) == sk.sets[rep]
                    assert back.act_mask(sk.sets[rep]) == sk.sets[u]
                    # the round trip fixes the member pointwise
                    combined = sk.ts.evaluate(sk.to_rep[u] + sk.from_rep[u])
                    from holodec import points_from_mask
                    for p in points_from_mask(sk.sets[u]):
                        assert combined(p) == p

    def test_equivalent_sets_same_cardinality_and_height(self, corpus_systems):
        for system in corpus_systems:
            sk = system.sk
            for members in sk.classes:
                assert len({sk.card(u) for u in members}) == 1
                assert len({sk.height[u] for u in members}) == 1


class TestTiles:
    def test_swap_collapse_tiles(self, swap_collapse):
        sk = swap_collapse.sk
        assert [sk.set_str(t) for t in sk.tiles_of(idx(sk, 1, 2, 3))] == \
            ["{1,2}", "{3}"]
        assert [sk.set_str(t) for t in sk.tiles_of(idx(sk, 1, 2))] == \
            ["{1}", "{2}"]

    def test_pair_tiles_are_the_singletons(self, full_t3):
        sk = full_t3.sk
        assert [sk.set_str(t) for t in sk.tiles_of(idx(sk, 1, 3))] == \
            ["{1}", "{3}"]

    def test_singleton_has_no_tiles(self, swap_collapse):
        with pytest.raises(ValueError):
            swap_collapse.sk.tiles_of(idx(swap_collapse.sk, 3))

    def test_matches_brute_oracle(self):
        from holodec import points_from_mask
        for n, rows in random_semigroup_rows(6, seed=31):
            sk = Skeleton(TransformationSemigroup.from_one_based(rows))
            sets = as_frozensets(sk)
            for i in range(len(sk.sets)):
                if sk.card(i) <= 1:
                    continue
                got = {frozenset(points_from_mask(sk.sets[t]))
                       for t in sk.tiles_of(i)}
                assert got == brute_tiles(
                    frozenset(points_from_mask(sk.sets[i])), sets)

    def test_cover_and_incomparability(self, corpus_systems):
        for system in corpus_systems:
            sk = system.sk
            for i in range(len(sk.sets)):
                if sk.card(i) <= 1:
                    continue
                tiles = sk.tiles_of(i)
                union = 0
                for t in tiles:
                    union |= sk.sets[t]
                assert union == sk.sets[i]
                for a in tiles:
                    for b in tiles:
                        if a != b:
                            assert sk.sets[a] & ~sk.sets[b] != 0


class TestHeightsDepths:
    def test_swap_collapse_levels(self, swap_collapse):
        sk = swap_collapse.sk
        assert sk.levels == 2
        assert sk.height[idx(sk, 1, 2)] == 1
        assert sk.height[idx(sk, 1, 2, 3)] == 2
        assert [sk.depth[idx(sk, 1, 2, 3)], sk.depth[idx(sk, 1, 2)],
                sk.depth[idx(sk, 3)]] == [1, 2, 3]

    def test_top_set_depth_is_one(self, swap_collapse, six_point, full_t3,
                                  corpus_systems):
        for system in [swap_collapse, six_point, full_t3] + corpus_systems:
            sk = system.sk
            assert sk.depth[sk.index[sk.full_mask]] == 1

    def test_matches_brute_oracle(self):
        from holodec import points_from_mask
        compared = 0
        for n, rows in random_semigroup_rows(8, seed=17):
            ts = TransformationSemigroup.from_one_based(rows)
            if len(ts) > 250:  # keep the quadratic oracle tractable
                continue
            compared += 1
            sk = Skeleton(ts)
            gens = {tuple(g.images) for g in ts.generators}
            expected = brute_heights(n, gens)
            for i in range(len(sk.sets)):
                key = frozenset(points_from_mask(sk.sets[i]))
                assert sk.height[i] == expected[key]
        assert compared >= 4

    def test_depth_never_decreases(self, swap_collapse, six_point, full_t3,
                                   corpus_systems):
        for system in [swap_collapse, six_point, full_t3] + corpus_systems:
            sk = system.sk
            for i in range(len(sk.sets)):
                for j in sk.edges[i]:
                    assert sk.depth[j] >= sk.depth[i]

    def test_equal_depth_implies_equivalent_for_non_singletons(
            self, swap_collapse, six_point, full_t3, corpus_systems):
        for system in [swap_collapse, six_point, full_t3] + corpus_systems:
            sk = system.sk
            for i in range(len(sk.sets)):
                if sk.card(i) <= 1:
                    continue
                for j in sk.edges[i]:
                    if sk.depth[j] == sk.depth[i]:
                        assert sk.class_of[j] == sk.class_of[i]

    def test_singletons_are_the_stated_exception(self):
        # moving a singleton keeps the (maximal) depth but need not stay in
        # its class: one-way traffic among singletons is possible
        ts = TransformationSemigroup.from_one_based([[2, 3, 3]])
        sk = Skeleton(ts)
        one = sk.index[mask_from_points((0,))]
        two = sk.index[mask_from_points((1,))]
        assert sk.edges[one][0] == two
        assert sk.depth[one] == sk.depth[two]
        assert sk.class_of[one] != sk.class_of[two]
