import json

import pytest

from bellmark.devices import PRESET_NAMES, DevicePreset, list_presets, load_preset
from bellmark.errors import InvalidInputError
from bellmark.graphs import ConnectivityGraph


def test_all_presets_load_and_are_connected():
    for preset in list_presets():
        assert preset.graph.is_connected()
        assert preset.name in PRESET_NAMES


def test_preset_shapes():
    star = load_preset("star-5")
    assert star.graph.n_vertices == 5
    assert sorted(star.graph.degree(v) for v in range(5)) == [1, 1, 1, 1, 4]

    falcon = load_preset("falcon-7")
    assert falcon.graph.n_vertices == 7
    assert len(falcon.graph.edges) == 6

    ion = load_preset("ion-trap-20")
    assert ion.graph == ConnectivityGraph.complete(20)

    syc = load_preset("sycamore-53")
    assert syc.graph.n_vertices == 53
    assert max(syc.graph.degree(v) for v in range(53)) <= 4

    eagle = load_preset("eagle-127")
    assert eagle.graph.n_vertices == 127
    assert len(eagle.graph.edges) == 144
    assert max(eagle.graph.degree(v) for v in range(127)) <= 3


def test_preset_noise_rates():
    assert load_preset("eagle-127").noise.p1 == 4.322e-4
    assert load_preset("sycamore-53").noise.p2 == 6.2e-3
    assert load_preset("star-5").noise.is_zero


def test_load_from_file_round_trip(tmp_path):
    preset = load_preset("falcon-7")
    path = tmp_path / "custom.json"
    path.write_text(json.dumps(preset.to_json_dict()))
    again = load_preset(str(path))
    assert again.graph == preset.graph
    assert again.noise == preset.noise


def test_unknown_device_raises():
    with pytest.raises(InvalidInputError):
        load_preset("not-a-device")


def test_malformed_file_raises(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"name": "x", "edges": []}))
    with pytest.raises(InvalidInputError):
        load_preset(str(path))
