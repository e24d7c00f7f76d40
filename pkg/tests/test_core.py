from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from beadslide import (
    GapVector,
    SlideMove,
    apply_slide,
    apply_slide_gaps,
    from_gaps,
    gaps,
    is_slideable_target,
    leq,
    new_config,
    spread,
)
from beadslide.errors import (
    BasePointMismatch,
    DimensionMismatch,
    InadmissibleSlide,
    IndexOutOfRange,
    NotMonotone,
)

from conftest import cfg, configs


class TestConstruction:
    def test_valid(self):
        x = new_config(0, [1, 3, 6])
        assert gaps(x).gaps == (1, 2, 3)

    def test_decreasing_gaps_rejected(self):
        with pytest.raises(NotMonotone) as exc:
            new_config(0, [2, 3])
        assert exc.value.index == 1

    def test_zero_first_gap_admitted(self):
        x = new_config(1, [1, 2, 3])
        assert gaps(x).gaps == (0, 1, 1)

    def test_negative_first_gap(self):
        with pytest.raises(NotMonotone):
            new_config(0, [-1, 0])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            new_config(0, [])

    def test_floats_refused(self):
        with pytest.raises(TypeError):
            new_config(0, [0.5])

    def test_one_based_indexing(self):
        x = new_config(F(1, 2), [1, 2])
        assert x[0] == F(1, 2) and x[2] == 2
        with pytest.raises(IndexOutOfRange):
            x[3]


class TestGaps:
    @pytest.mark.parametrize("mu, pos, expected", [
        (0, [1, 3, 6], (1, 2, 3)),
        (-1, [0, 1], (1, 1)),
    ])
    def test_differences(self, mu, pos, expected):
        assert gaps(new_config(mu, pos)).gaps == expected

    @pytest.mark.parametrize("mu, g, expected", [
        (0, (1, 2, 3), (1, 3, 6)),
        (0, (1, 1, 1), (1, 2, 3)),
        (2, (0, 3), (2, 5)),
    ])
    def test_prefix_sums(self, mu, g, expected):
        assert from_gaps(GapVector(F(mu), g)).positions == expected

    def test_from_gaps_rejects(self):
        with pytest.raises(NotMonotone):
            from_gaps(GapVector(F(0), (2, 1)))

    def test_increments(self):
        assert GapVector(F(0), (1, 2, 4)).increments() == [1, 2]

    @given(configs())
    def test_round_trip(self, x):
        assert from_gaps(gaps(x)) == x
        assert gaps(from_gaps(gaps(x))) == gaps(x)


class TestOrder:
    def test_examples(self):
        b = cfg(0, [1, 3, 6])
        assert leq(cfg(0, [1, 2, 3]), b)
        assert leq(b, b)
        assert not leq(cfg(0, [1, 4, 8]), b)

    def test_frame_mismatch(self):
        with pytest.raises(DimensionMismatch):
            leq(cfg(0, [1]), cfg(0, [1, 2]))
        with pytest.raises(BasePointMismatch):
            leq(cfg(0, [1]), cfg(1, [1]))

    @given(st.lists(configs(3, 3, mu=0), min_size=3, max_size=3))
    def test_partial_order_laws(self, xs):
        a, b, c = xs
        assert leq(a, a)
        if leq(a, b) and leq(b, a):
            assert a == b
        if leq(a, b) and leq(b, c):
            assert leq(a, c)


class TestSpread:
    @pytest.mark.parametrize("pos, expected", [([1, 2, 3], 0), ([1, 3, 6], 2), ([5], 0)])
    def test_values(self, pos, expected):
        assert spread(cfg(0, pos)) == expected

    @given(configs())
    def test_zero_iff_equidistant(self, x):
        g = gaps(x).gaps
        assert spread(x) >= 0
        assert (spread(x) == 0) == (len(set(g)) == 1)


class TestSlideable:
    @pytest.mark.parametrize("pos, expected", [
        ([1, 3, 6], True),
        ([1, 2, 3], False),
        ([1, 3, 5, 7], False),
        ([4], True),
        ([1, 2], True),
    ])
    def test_examples(self, pos, expected):
        assert is_slideable_target(cfg(0, pos)) is expected

    @given(configs(), st.builds(F, st.integers(-5, 5), st.integers(1, 3)),
           st.builds(F, st.integers(1, 9), st.integers(1, 4)))
    def test_translation_and_scaling_invariant(self, x, shift, scale):
        moved = new_config(x.mu + shift, [x.mu + shift + scale * (p - x.mu) for p in x.positions])
        assert is_slideable_target(moved) == is_slideable_target(x)

    @given(configs(min_beads=3))
    def test_no_four_equidistant_points(self, x):
        pts = [x.mu, *x.positions]
        run = any(pts[i + 1] - pts[i] == pts[i + 2] - pts[i + 1] == pts[i + 3] - pts[i + 2]
                  for i in range(len(pts) - 3))
        assert is_slideable_target(x) == (not run)


class TestSlides:
    def test_last_bead_free(self):
        assert apply_slide(cfg(0, [1, 3, 6]), SlideMove(3, F(10))).positions == (1, 3, 16)

    def test_gap_constraint(self):
        with pytest.raises(InadmissibleSlide):
            apply_slide(cfg(0, [1, 3, 6]), SlideMove(2, F(1)))

    def test_boundary(self):
        y = apply_slide(cfg(0, [1, 3, 6]), SlideMove(2, F(1, 2)))
        assert y.positions == (1, F(7, 2), 6)
        assert gaps(y).gaps == (1, F(5, 2), F(5, 2))

    def test_gap_form(self):
        g = GapVector(F(0), (1, 2, 3))
        assert apply_slide_gaps(g, SlideMove(2, F(1, 2))).gaps == (1, F(5, 2), F(5, 2))
        assert apply_slide_gaps(g, SlideMove(3, F(4))).gaps == (1, 2, 7)

    def test_equal_gaps_lock(self):
        with pytest.raises(InadmissibleSlide):
            apply_slide_gaps(GapVector(F(0), (1, 1)), SlideMove(1, F(1, 4)))

    def test_zero_slide_is_noop(self):
        x = cfg(0, [1, 2, 3])
        assert apply_slide(x, SlideMove(2, F(0))) == x

    def test_bad_moves(self):
        with pytest.raises(InadmissibleSlide):
            SlideMove(1, F(-1))
        with pytest.raises(IndexOutOfRange):
            apply_slide(cfg(0, [1]), SlideMove(2, F(0)))

    @given(configs(), st.data())
    def test_commutes_with_gaps(self, x, data):
        k = data.draw(st.integers(1, x.n))
        g = gaps(x).gaps
        room = (g[k] - g[k - 1]) / 2 if k < x.n else F(5)
        frac = data.draw(st.builds(F, st.integers(0, 8), st.just(8)))
        m = SlideMove(k, room * frac)
        y = apply_slide(x, m)
        assert gaps(y) == apply_slide_gaps(gaps(x), m)
        changed = [i for i in range(x.n) if y.positions[i] != x.positions[i]]
        assert changed in ([], [k - 1])
        assert y.positions[k - 1] - x.positions[k - 1] == m.delta
