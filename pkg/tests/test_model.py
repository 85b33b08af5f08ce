import json

import pytest

from atde.errors import ConfigError, RegionError
from atde.model import (
    ChannelRestriction,
    Region,
    SeedSpec,
    config_from_dict,
    load_config,
    save_config,
)


def minimal_doc(**overrides):
    doc = {
        "frames": "frames",
        "clock_region": [0, 0, 10, 10],
        "territory_seed": {"seeds": [[47, 170, 235]]},
        "start_year": 960,
        "end_year": 1279,
        "label": "demo",
    }
    doc.update(overrides)
    return doc


class TestRegion:
    def test_basic_properties(self):
        r = Region(2, 3, 10, 7)
        assert (r.width, r.height, r.area) == (8, 4, 32)

    @pytest.mark.parametrize("coords", [(5, 0, 5, 10), (6, 0, 5, 10), (0, 9, 10, 9), (-1, 0, 5, 5)])
    def test_degenerate_rejected(self, coords):
        with pytest.raises(RegionError):
            Region(*coords)

    def test_require_within(self):
        Region(0, 0, 10, 10).require_within(10, 10)
        with pytest.raises(RegionError):
            Region(0, 0, 11, 10).require_within(10, 10)

    def test_contains(self):
        outer = Region(0, 0, 10, 10)
        assert outer.contains(Region(2, 2, 8, 8))
        assert not outer.contains(Region(2, 2, 11, 8))


class TestSeedSpec:
    def test_defaults(self):
        spec = SeedSpec(seeds=((1, 2, 3),))
        assert (spec.hsv_range, spec.lower_sv, spec.upper_sv) == (10, 100, 255)

    def test_empty_seeds_rejected(self):
        with pytest.raises(ConfigError):
            SeedSpec(seeds=())

    def test_sv_order_enforced(self):
        with pytest.raises(ConfigError):
            SeedSpec(seeds=((0, 0, 0),), lower_sv=200, upper_sv=100)

    def test_bad_channel_rejected(self):
        with pytest.raises(ConfigError):
            SeedSpec(seeds=((0, 0, 300),))


class TestChannelRestriction:
    def test_roundtrip(self):
        r = ChannelRestriction("G", ">=", 150)
        assert ChannelRestriction.from_dict(r.to_dict()) == r

    @pytest.mark.parametrize("kwargs", [
        {"channel": "X", "op": ">=", "threshold": 10},
        {"channel": "G", "op": ">", "threshold": 10},
        {"channel": "G", "op": ">=", "threshold": 300},
    ])
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(ConfigError):
            ChannelRestriction(**kwargs)


class TestConfig:
    def test_defaults_applied(self):
        config = config_from_dict(minimal_doc())
        assert config.territory_seed.hsv_range == 10
        assert config.territory_seed.lower_sv == 100
        assert config.territory_seed.upper_sv == 255
        assert config.min_neighbors == 5
        assert config.clock_threshold == 50000
        assert config.map_region is None
        assert config.water_region is None
        assert config.restrictions == ()

    def test_era_span(self):
        config = config_from_dict(minimal_doc(start_year=960, end_year=1279))
        assert config.year_count == 320

    def test_bce_years_are_negative(self):
        config = config_from_dict(minimal_doc(start_year=-199, end_year=1912))
        assert config.start_year == -199

    def test_degenerate_clock_region_rejected(self):
        with pytest.raises(ConfigError):
            config_from_dict(minimal_doc(clock_region=[10, 0, 10, 10]))

    def test_year_order_enforced(self):
        with pytest.raises(ConfigError):
            config_from_dict(minimal_doc(start_year=1279, end_year=960))

    def test_missing_field_named(self):
        doc = minimal_doc()
        del doc["clock_region"]
        with pytest.raises(ConfigError, match="clock_region"):
            config_from_dict(doc)

    def test_unknown_field_rejected(self):
        with pytest.raises(ConfigError, match="typo_field"):
            config_from_dict(minimal_doc(typo_field=1))

    def test_min_neighbors_capped_at_8(self):
        with pytest.raises(ConfigError):
            config_from_dict(minimal_doc(min_neighbors=9))

    def test_full_document_roundtrip(self, tmp_path):
        doc = minimal_doc(
            map_region=[0, 0, 100, 80],
            water_region=[50, 50, 80, 70],
            water_seed={"seeds": [[49, 135, 235]], "hsv_range": 5},
            restrictions=[{"channel": "G", "op": ">=", "threshold": 150}],
            min_neighbors=3,
            clock_threshold=42000,
        )
        config = config_from_dict(doc)
        path = tmp_path / "config.json"
        save_config(config, path)
        assert load_config(path) == config

    def test_load_config_bad_json(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_load_config_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "nope.json")

    def test_roundtrip_via_json_text(self):
        config = config_from_dict(minimal_doc())
        again = config_from_dict(json.loads(json.dumps(config.to_dict())))
        assert again == config
