import pytest

from qjones.fixtures import fixture_names, load_knot, read_json
from qjones.ore import APoly


def test_shipped_fixtures():
    assert {"unknot", "trefoil", "figure8", "figure8_apoly", "trefoil_surgery"} <= set(fixture_names())


@pytest.mark.parametrize("name", ["unknot", "trefoil", "figure8"])
def test_knot_fixture_headers(name):
    fx = load_knot(name)
    assert fx.name == name
    assert fx.coeffs.kmax >= 16
    assert "verified" in fx.provenance and "Generated" in fx.provenance
    assert fx.mirror_convention
    assert fx.diagram is not None


def test_read_json_resolution(tmp_path):
    assert read_json("figure8") == read_json("figure8.json") == read_json("fixtures/figure8.json")
    path = tmp_path / "x.json"
    path.write_text('{"a": 1}')
    assert read_json(path) == {"a": 1}
    with pytest.raises(FileNotFoundError):
        read_json("no_such_fixture")


def test_apoly_fixture():
    data = read_json("figure8_apoly")
    A = APoly.from_json(data)
    assert A.terms[(1, 0)] == 1 and len(A.terms) == 7
    assert "provenance" in data
