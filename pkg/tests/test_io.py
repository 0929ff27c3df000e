import json

import numpy as np
import pytest

import pulsecal as pc
from pulsecal.errors import FormatError
from pulsecal.io import (
    FORMAT_NAME,
    FORMAT_VERSION,
    landscape_from_dict,
    landscape_to_dict,
)


@pytest.fixture()
def saved(small_landscape, tmp_path):
    path = tmp_path / "land.json"
    pc.save_landscape(small_landscape, path)
    return path


def test_round_trip_preserves_everything(small_landscape, saved):
    loaded = pc.load_landscape(saved)
    assert landscape_to_dict(loaded) == landscape_to_dict(small_landscape)
    assert loaded.family.name == small_landscape.family.name
    assert loaded.ansatz == small_landscape.ansatz
    assert loaded.seed == small_landscape.seed
    for a, b in zip(loaded.references, small_landscape.references):
        assert np.array_equal(a.alpha, b.alpha)  # hex floats: bit-exact
        assert a.infidelity == b.infidelity
    assert np.array_equal(loaded.mesh.simplices, small_landscape.mesh.simplices)
    assert loaded.log == small_landscape.log


def test_round_trip_interpolation_is_bit_exact(small_landscape, saved):
    loaded = pc.load_landscape(saved)
    rng = np.random.default_rng(8)
    for _ in range(100):
        p = rng.random(3)
        assert np.array_equal(
            pc.interpolate(small_landscape, p), pc.interpolate(loaded, p)
        )


def test_save_is_byte_identical(small_landscape, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    pc.save_landscape(small_landscape, p1)
    pc.save_landscape(small_landscape, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_header_is_self_describing(saved):
    data = json.loads(saved.read_text())
    assert data["format"] == FORMAT_NAME == "pulsecal-landscape"
    assert data["version"] == FORMAT_VERSION == 1
    assert data["family"] == "single-qubit"
    assert len(data["references"]) == 27
    for h in data["references"][0]["alpha_hex"]:
        float.fromhex(h)  # every stored amplitude parses back


def test_rejects_wrong_format_name(saved):
    data = json.loads(saved.read_text())
    data["format"] = "something-else"
    with pytest.raises(FormatError, match="not a pulsecal-landscape"):
        landscape_from_dict(data)


def test_rejects_unsupported_version(saved):
    data = json.loads(saved.read_text())
    data["version"] = 99
    with pytest.raises(FormatError, match="version"):
        landscape_from_dict(data)


def test_rejects_missing_sections(saved):
    data = json.loads(saved.read_text())
    del data["references"]
    with pytest.raises(FormatError, match="malformed"):
        landscape_from_dict(data)


def test_rejects_unknown_family(saved):
    data = json.loads(saved.read_text())
    data["family"] = "three-qubit"
    with pytest.raises(FormatError):
        landscape_from_dict(data)


def test_rejects_pulse_length_mismatch(saved):
    data = json.loads(saved.read_text())
    data["references"][0]["alpha_hex"] = data["references"][0]["alpha_hex"][:-1]
    with pytest.raises(FormatError, match="length"):
        landscape_from_dict(data)


def test_rejects_corrupt_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{this is not json")
    with pytest.raises(FormatError, match="corrupt"):
        pc.load_landscape(path)
    path.write_text('["a", "list"]')
    with pytest.raises(FormatError, match="expected an object"):
        pc.load_landscape(path)


def test_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        pc.load_landscape(tmp_path / "nope.json")
