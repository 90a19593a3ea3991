import json

import pytest

from powclo.algebra_file import AlgebraFile, dump_algebra_file, load_algebra_file
from powclo.errors import AlgebraFileError
from powclo.power import build_extended_power

SAMPLES = ["sl2.json", "sl3v.json", "lz2.json", "chain3.json", "lzrz.json", "z2.json", "digraph3.json"]


@pytest.mark.parametrize("name", SAMPLES)
def test_samples_load(algebras_dir, name):
    spec = load_algebra_file(algebras_dir / name)
    alg = spec.to_algebra()
    assert alg.size == spec.carrier


def test_sample_matches_fixture(algebras_dir, sl3v):
    alg = load_algebra_file(algebras_dir / "sl3v.json").to_algebra()
    assert alg.labels == ("0", "a", "b")
    assert alg.flat_table("m") == sl3v.flat_table("m")


def test_relations_load(algebras_dir):
    spec = load_algebra_file(algebras_dir / "digraph3.json")
    rs = spec.to_relation_structure()
    (edge,) = rs.relations
    assert edge.symbol == "e"
    assert (1, 2) in edge.tuples and (2, 1) not in edge.tuples


def test_out_of_range_table_is_rejected(algebras_dir):
    with pytest.raises(AlgebraFileError) as info:
        load_algebra_file(algebras_dir / "broken.json")
    assert info.value.exit_code == 2
    assert "broken.json" in str(info.value)


def test_missing_and_malformed_files(tmp_path):
    with pytest.raises(AlgebraFileError, match="no such file"):
        load_algebra_file(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{\"name\": ", encoding="utf-8")
    with pytest.raises(AlgebraFileError, match="invalid JSON"):
        load_algebra_file(bad)


def test_schema_errors_name_the_field(tmp_path):
    path = tmp_path / "schema.json"
    path.write_text(json.dumps({"name": "x", "carrier": 0}), encoding="utf-8")
    with pytest.raises(AlgebraFileError, match="carrier"):
        load_algebra_file(path)
    path.write_text(
        json.dumps({"name": "x", "carrier": 1, "ops": [
            {"symbol": "m", "arity": 2, "table": [0]},
            {"symbol": "m", "arity": 2, "table": [0]},
        ]}),
        encoding="utf-8",
    )
    with pytest.raises(AlgebraFileError, match="duplicate"):
        load_algebra_file(path)


def test_power_algebra_dumps_and_reloads(tmp_path, sl2):
    power = build_extended_power(sl2).algebra
    path = tmp_path / "power.json"
    dump_algebra_file(power, path)
    again = load_algebra_file(path)
    assert again.extended
    assert again.to_algebra().flat_table("+") == power.flat_table("+")
    assert AlgebraFile.from_algebra(power).labels == list(power.labels)
