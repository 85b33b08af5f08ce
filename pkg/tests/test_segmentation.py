import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atde.errors import ConfigError, SeedExclusionWarning
from atde.model import ChannelRestriction, SeedSpec
from atde.segmentation import (
    apply_channel_restriction,
    count_mask,
    dnf,
    frame_to_hsv,
    in_range_mask,
    neighbor_counts,
    rgb_to_hsv,
    seed_bounds,
)
from conftest import (
    DARK,
    DARK_HSV,
    FIG_FILTERED,
    FIG_INPUT,
    FIG_NEIGHBOR_COUNTS,
    MID,
    MID_HSV,
    OCEAN,
    OCEAN_HSV,
    PALE,
    PALE_HSV,
    four_block_frame,
    solid_frame,
)

rgb_values = st.integers(min_value=0, max_value=255)
rgb_triples = st.tuples(rgb_values, rgb_values, rgb_values)


class TestRgbToHsv:
    @pytest.mark.parametrize(
        "rgb,expected",
        [
            ((255, 0, 0), (0, 255, 255)),
            ((0, 255, 0), (60, 255, 255)),
            ((0, 0, 255), (120, 255, 255)),
            ((128, 128, 128), (0, 0, 128)),
            ((0, 0, 0), (0, 0, 0)),
            ((255, 255, 255), (0, 0, 255)),
            (DARK, DARK_HSV),
            (MID, MID_HSV),
            (PALE, PALE_HSV),
            (OCEAN, OCEAN_HSV),
        ],
    )
    def test_known_values(self, rgb, expected):
        c = rgb_to_hsv(rgb)
        assert (c.h, c.s, c.v) == expected

    @given(rgb_triples)
    def test_value_is_max_channel(self, rgb):
        assert rgb_to_hsv(rgb).v == max(rgb)

    @given(rgb_triples)
    def test_saturation_zero_iff_achromatic(self, rgb):
        c = rgb_to_hsv(rgb)
        assert (c.s == 0) == (rgb[0] == rgb[1] == rgb[2])

    @given(rgb_triples)
    def test_ranges(self, rgb):
        c = rgb_to_hsv(rgb)
        assert 0 <= c.h < 180 and 0 <= c.s <= 255 and 0 <= c.v <= 255

    def test_out_of_range_channel_rejected(self):
        with pytest.raises(ValueError):
            rgb_to_hsv((0, 0, 256))

    @given(st.lists(rgb_triples, min_size=1, max_size=64))
    def test_vectorized_matches_scalar(self, colors):
        frame = np.array(colors, dtype=np.uint8).reshape(1, -1, 3)
        hsv = frame_to_hsv(frame)
        for i, rgb in enumerate(colors):
            c = rgb_to_hsv(rgb)
            assert tuple(int(x) for x in hsv[0, i]) == (c.h, c.s, c.v)


class TestSeedBounds:
    def test_defaults_single_seed(self):
        # a seed with hue 100: the dark shade
        pairs = seed_bounds(SeedSpec(seeds=(DARK,)))
        assert len(pairs) == 1
        lower, upper = pairs[0]
        assert (lower.h, lower.s, lower.v) == (90, 100, 100)
        assert (upper.h, upper.s, upper.v) == (110, 255, 255)

    def test_wraparound_splits_low_hue(self):
        # pure red sits at hue 0; radius 10 wraps below zero
        pairs = seed_bounds(SeedSpec(seeds=((255, 0, 0),), hsv_range=10))
        hues = sorted((lo.h, hi.h) for lo, hi in pairs)
        assert hues == [(0, 10), (170, 179)]

    def test_wraparound_splits_high_hue(self):
        # (255, 0, 30) has hue 176 (352.9 degrees): radius 10 wraps past 180
        hsv = rgb_to_hsv((255, 0, 30))
        assert hsv.h == 176
        pairs = seed_bounds(SeedSpec(seeds=((255, 0, 30),), hsv_range=10))
        hues = sorted((lo.h, hi.h) for lo, hi in pairs)
        assert hues == [(0, 6), (166, 179)]

    def test_full_circle_when_radius_covers(self):
        pairs = seed_bounds(SeedSpec(seeds=(DARK,), hsv_range=90))
        assert [(lo.h, hi.h) for lo, hi in pairs] == [(0, 179)]

    def test_three_shades_of_one_hue(self, territory_seed):
        with pytest.warns(SeedExclusionWarning):
            pairs = seed_bounds(territory_seed)
        assert [(lo.h, hi.h) for lo, hi in pairs] == [(90, 110), (89, 109), (89, 109)]
        for lower, upper in pairs:
            assert (lower.s, lower.v) == (100, 100)
            assert (upper.s, upper.v) == (255, 255)

    def test_pale_seed_excludes_itself(self, territory_seed):
        with pytest.warns(SeedExclusionWarning, match=r"\(201, 238, 254\)"):
            seed_bounds(territory_seed)

    def test_no_warning_when_all_seeds_covered(self, two_shade_seed):
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("error", SeedExclusionWarning)
            seed_bounds(two_shade_seed)


class TestInRangeMask:
    def test_uniform_dark_detected(self, territory_seed):
        with pytest.warns(SeedExclusionWarning):
            bounds = seed_bounds(territory_seed)
        frame = solid_frame(DARK)
        assert in_range_mask(frame_to_hsv(frame), bounds).all()

    def test_ocean_false_positive(self, two_shade_seed):
        # ocean hue 106 sits inside the dark shade's band: detected
        bounds = seed_bounds(two_shade_seed)
        frame = solid_frame(OCEAN)
        assert in_range_mask(frame_to_hsv(frame), bounds).all()

    def test_pale_rejected_by_default_lower_sv(self, territory_seed):
        with pytest.warns(SeedExclusionWarning):
            bounds = seed_bounds(territory_seed)
        frame = solid_frame(PALE)
        assert not in_range_mask(frame_to_hsv(frame), bounds).any()

    def test_bounds_inclusive_at_edges(self):
        bounds = seed_bounds(SeedSpec(seeds=(DARK,)))
        lower, upper = bounds[0]
        for h, s, v in [
            (lower.h, lower.s, lower.v),
            (upper.h, upper.s, upper.v),
            (lower.h, upper.s, lower.v),
        ]:
            hsv = np.array([[[h, s, v]]], dtype=np.uint8)
            assert in_range_mask(hsv, bounds).all()
        outside = np.array([[[lower.h - 1, upper.s, upper.v]]], dtype=np.uint8)
        assert not in_range_mask(outside, bounds).any()

    def test_multi_seed_mask_is_union_of_single_seed_masks(self):
        rng = np.random.default_rng(7)
        frame = rng.integers(0, 256, (16, 16, 3), dtype=np.uint8)
        hsv = frame_to_hsv(frame)
        spec_a = SeedSpec(seeds=(DARK,), lower_sv=40)
        spec_b = SeedSpec(seeds=((200, 30, 40),), lower_sv=40)
        spec_ab = SeedSpec(seeds=(DARK, (200, 30, 40)), lower_sv=40)
        combined = in_range_mask(hsv, seed_bounds(spec_ab))
        union = in_range_mask(hsv, seed_bounds(spec_a)) | in_range_mask(hsv, seed_bounds(spec_b))
        assert np.array_equal(combined, union)

    @given(st.integers(0, 200), st.data())
    @settings(max_examples=30, deadline=None)
    def test_monotone_in_hsv_range(self, seed_int, data):
        rng = np.random.default_rng(seed_int)
        frame = rng.integers(0, 256, (8, 8, 3), dtype=np.uint8)
        hsv = frame_to_hsv(frame)
        r1 = data.draw(st.integers(0, 40))
        r2 = data.draw(st.integers(r1, 60))
        spec1 = SeedSpec(seeds=(DARK,), hsv_range=r1, lower_sv=60)
        spec2 = SeedSpec(seeds=(DARK,), hsv_range=r2, lower_sv=60)
        m1 = in_range_mask(hsv, seed_bounds(spec1))
        m2 = in_range_mask(hsv, seed_bounds(spec2))
        assert not (m1 & ~m2).any()

    def test_dimension_mismatch(self, two_shade_seed):
        bounds = seed_bounds(two_shade_seed)
        from atde.errors import DimensionMismatchError

        with pytest.raises(DimensionMismatchError):
            in_range_mask(np.zeros((4, 4), dtype=np.uint8), bounds)


class TestChannelRestriction:
    def test_separates_ocean_from_territory(self, two_shade_seed):
        frame, blocks = four_block_frame()
        bounds = seed_bounds(two_shade_seed)
        mask = in_range_mask(frame_to_hsv(frame), bounds)
        ocean_region = blocks["ocean"][0]
        assert mask[ocean_region.y0 : ocean_region.y1, ocean_region.x0 : ocean_region.x1].all()

        kept = apply_channel_restriction(mask, frame, ChannelRestriction("G", ">=", 150))
        assert not kept[ocean_region.y0 : ocean_region.y1, ocean_region.x0 : ocean_region.x1].any()
        dark_region = blocks["dark"][0]
        assert kept[dark_region.y0 : dark_region.y1, dark_region.x0 : dark_region.x1].all()

    def test_threshold_zero_ge_is_identity(self):
        rng = np.random.default_rng(3)
        frame = rng.integers(0, 256, (8, 8, 3), dtype=np.uint8)
        mask = rng.random((8, 8)) < 0.5
        kept = apply_channel_restriction(mask, frame, ChannelRestriction("G", ">=", 0))
        assert np.array_equal(kept, mask)

    def test_unreachable_threshold_empties_mask(self):
        frame, _ = four_block_frame()
        mask = np.ones(frame.shape[:2], dtype=bool)
        kept = apply_channel_restriction(mask, frame, ChannelRestriction("G", ">=", 255))
        assert count_mask(kept) == 0

    def test_less_than_direction(self):
        frame, blocks = four_block_frame()
        mask = np.ones(frame.shape[:2], dtype=bool)
        kept = apply_channel_restriction(mask, frame, ChannelRestriction("G", "<", 150))
        dark_region = blocks["dark"][0]
        ocean_region = blocks["ocean"][0]
        assert not kept[dark_region.y0 : dark_region.y1, dark_region.x0 : dark_region.x1].any()
        assert kept[ocean_region.y0 : ocean_region.y1, ocean_region.x0 : ocean_region.x1].all()

    @given(st.integers(0, 1000))
    @settings(max_examples=25, deadline=None)
    def test_contractive(self, seed_int):
        rng = np.random.default_rng(seed_int)
        frame = rng.integers(0, 256, (8, 8, 3), dtype=np.uint8)
        mask = rng.random((8, 8)) < 0.6
        restriction = ChannelRestriction("B", "<", int(rng.integers(0, 256)))
        kept = apply_channel_restriction(mask, frame, restriction)
        assert not (kept & ~mask).any()


class TestDnf:
    def test_neighbor_counts_match_worked_example(self):
        assert np.array_equal(neighbor_counts(FIG_INPUT), FIG_NEIGHBOR_COUNTS)

    def test_filtering_rule_on_worked_example(self):
        assert np.array_equal(dnf(FIG_INPUT, 3), FIG_FILTERED)

    def test_worked_example_count(self):
        assert count_mask(dnf(FIG_INPUT, 3)) == 7

    def test_zero_neighbors_is_identity(self):
        rng = np.random.default_rng(11)
        mask = rng.random((12, 12)) < 0.5
        assert np.array_equal(dnf(mask, 0), mask)

    def test_full_mask_min8_keeps_interior_only(self):
        mask = np.ones((6, 9), dtype=bool)
        out = dnf(mask, 8)
        expected = np.zeros_like(mask)
        expected[1:-1, 1:-1] = True
        assert np.array_equal(out, expected)

    def test_min_neighbors_9_rejected(self):
        with pytest.raises(ConfigError):
            dnf(np.ones((3, 3), dtype=bool), 9)

    @given(st.integers(0, 500), st.integers(0, 8))
    @settings(max_examples=40, deadline=None)
    def test_contractive(self, seed_int, min_neighbors):
        rng = np.random.default_rng(seed_int)
        mask = rng.random((10, 10)) < 0.5
        out = dnf(mask, min_neighbors)
        assert not (out & ~mask).any()
        assert count_mask(out) <= count_mask(mask)

    @given(st.integers(0, 500), st.integers(0, 8))
    @settings(max_examples=40, deadline=None)
    def test_matches_brute_force(self, seed_int, min_neighbors):
        from atde.synth import brute_force_dnf

        rng = np.random.default_rng(seed_int)
        mask = rng.random((13, 9)) < 0.45
        assert np.array_equal(dnf(mask, min_neighbors), brute_force_dnf(mask, min_neighbors))


class TestCountMask:
    def test_empty(self):
        assert count_mask(np.zeros((5, 5), dtype=bool)) == 0

    def test_full(self):
        assert count_mask(np.ones((5, 5), dtype=bool)) == 25
