import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holodec import (BudgetExceededError, Transformation,
                     TransformationSemigroup, evaluate_word, mask_from_points,
                     mask_str, points_from_mask)

from oracles import brute_closure, compose as oracle_compose


def t(rows):
    return Transformation.from_one_based(rows)


def transformations(max_degree=6):
    return st.integers(2, max_degree).flatmap(
        lambda n: st.tuples(*([st.integers(0, n - 1)] * n)).map(Transformation))


class TestCompose:
    def test_involution_squared_is_identity(self):
        swap = t([2, 1, 3])
        assert swap.then(swap) == Transformation.identity(3)

    def test_collapse_then_swap(self):
        # published product: the collapse followed by the swap
        assert t([1, 2, 2]).then(t([2, 1, 3])) == t([2, 1, 1])

    def test_swap_then_collapse(self):
        # hand oracle: pointwise composition
        assert t([2, 1, 3]).then(t([1, 2, 2])) == t([2, 1, 2])

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ValueError):
            t([2, 1]).then(t([2, 1, 3]))

    @given(transformations(), transformations(), transformations())
    def test_associative(self, f, g, h):
        if f.degree != g.degree or g.degree != h.degree:
            return
        assert f.then(g).then(h) == f.then(g.then(h))

    def test_associative_exhaustive_small_semigroup(self):
        ts = TransformationSemigroup.from_one_based([[2, 1, 3], [1, 2, 2]])
        elements = list(ts)
        assert len(elements) <= 200
        for f, g, h in itertools.product(elements, repeat=3):
            assert f.then(g).then(h) == f.then(g.then(h))


class TestSetAction:
    def test_collapse_image_of_full_set(self):
        full = mask_from_points((0, 1, 2))
        assert t([1, 2, 2]).act_mask(full) == mask_from_points((0, 1))

    def test_fixed_point(self):
        assert t([2, 1, 3]).act_mask(1 << 2) == 1 << 2

    def test_published_six_point_image(self):
        s1 = t([1, 2, 3, 1, 1, 1])
        assert s1.act_mask((1 << 6) - 1) == mask_from_points((0, 1, 2))

    def test_cardinality_never_grows(self):
        f = t([2, 1, 1])
        for mask in range(1, 8):
            assert f.act_mask(mask).bit_count() <= mask.bit_count()

    @given(transformations(), transformations(), st.integers(0, 63))
    @settings(max_examples=200)
    def test_action_respects_composition(self, f, g, mask):
        if f.degree != g.degree:
            return
        mask &= (1 << f.degree) - 1
        assert g.act_mask(f.act_mask(mask)) == f.then(g).act_mask(mask)

    def test_monotone(self):
        f = t([2, 1, 2])
        for p in range(8):
            for q in range(8):
                if p & ~q == 0:
                    assert f.act_mask(p) & ~f.act_mask(q) == 0


class TestEnumerate:
    def test_swap_collapse_closure(self):
        ts = TransformationSemigroup.from_one_based([[2, 1, 3], [1, 2, 2]])
        got = {tuple(e.images) for e in ts}
        expected = brute_closure({(1, 0, 2), (0, 1, 1)})
        assert got == expected
        assert len(ts) == 6
        assert ts.is_monoid  # the swap squares to the identity

    def test_published_six_point_size(self):
        rows = [[1, 2, 3, 1, 1, 1], [4, 4, 4, 5, 4, 6], [4, 4, 4, 5, 6, 4],
                [4, 4, 4, 4, 5, 5], [4, 4, 4, 1, 2, 3], [2, 3, 1, 4, 4, 4]]
        assert len(TransformationSemigroup.from_one_based(rows)) == 138

    def test_identity_alone(self):
        ts = TransformationSemigroup.from_one_based([[1, 2, 3]])
        assert len(ts) == 1
        assert ts.is_monoid

    def test_duplicate_generators_do_not_change_output(self):
        a = TransformationSemigroup.from_one_based([[2, 1, 3], [1, 2, 2]])
        b = TransformationSemigroup.from_one_based(
            [[2, 1, 3], [1, 2, 2], [2, 1, 3]])
        assert list(a) == list(b)
        assert [a.witness(i) for i in range(len(a))] == \
               [b.witness(i) for i in range(len(b))]

    def test_budget_error_names_cap(self):
        with pytest.raises(BudgetExceededError) as err:
            TransformationSemigroup.from_one_based(
                [[2, 1, 3], [2, 3, 1], [1, 2, 1]], budget=5)
        assert "5" in str(err.value)

    def test_every_witness_evaluates_to_its_element(self):
        ts = TransformationSemigroup.from_one_based([[2, 1, 3], [2, 3, 1], [1, 2, 1]])
        for i, element in enumerate(ts):
            assert ts.evaluate(ts.witness(i)) == element

    def test_witnesses_shortest_then_lex(self):
        ts = TransformationSemigroup.from_one_based([[2, 1, 3], [1, 2, 2]])
        # frozen from the hand oracle over products of the two generators
        assert [ts.witness(i) for i in range(len(ts))] == [
            (0,), (1,), (0, 0), (0, 1), (1, 0), (0, 1, 0)]


class TestEvaluate:
    def test_published_product_word(self):
        ts = TransformationSemigroup.from_one_based([[2, 1, 3], [1, 2, 2]])
        # collapse then swap, 0-based letters
        assert ts.evaluate((1, 0)) == t([2, 1, 1])

    def test_empty_word_is_identity(self):
        ts = TransformationSemigroup.from_one_based([[2, 1, 3], [1, 2, 2]])
        assert ts.evaluate(()) == Transformation.identity(3)

    def test_swap_squared(self):
        ts = TransformationSemigroup.from_one_based([[2, 1, 3], [1, 2, 2]])
        assert ts.evaluate((0, 0)) == t([1, 2, 3])

    def test_bad_letter_rejected(self):
        ts = TransformationSemigroup.from_one_based([[2, 1, 3]])
        with pytest.raises(ValueError):
            ts.evaluate((3,))

    @given(st.lists(st.integers(0, 1), max_size=6),
           st.lists(st.integers(0, 1), max_size=6))
    def test_concatenation_is_composition(self, w1, w2):
        ts = TransformationSemigroup.from_one_based([[2, 1, 3], [1, 2, 2]])
        lhs = ts.evaluate(tuple(w1) + tuple(w2))
        rhs = ts.evaluate(tuple(w1)).then(ts.evaluate(tuple(w2)))
        assert lhs == rhs


class TestMasks:
    def test_roundtrip(self):
        assert points_from_mask(mask_from_points((0, 2, 5))) == (0, 2, 5)

    def test_str_one_based(self):
        assert mask_str(mask_from_points((0, 1))) == "{1,2}"

    def test_oracle_compose_agrees(self):
        f, g = (1, 0, 2), (0, 1, 1)
        assert oracle_compose(f, g) == tuple(
            Transformation(f).then(Transformation(g)).images)
