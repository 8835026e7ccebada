import json

import jsonschema
import numpy as np
import pytest

from darkbright import ConfigError, ScanTable, ScenarioSpec, run_threshold_map
from darkbright.io import SCHEMA_PATH, read_table, render_csv, write_results
from darkbright.scenarios import run_cpt_scan


@pytest.fixture(scope="module")
def table():
    return run_threshold_map()


def test_csv_layout(table, tmp_path):
    path = write_results(table, tmp_path / "out.csv", "csv")
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# units: gamma_cb [1/s]")
    assert lines[1].split(",") == list(table.columns)
    assert len(lines) == 2 + table.nrows


def test_csv_round_trip_is_numerically_identical(table, tmp_path):
    path = write_results(table, tmp_path / "out.csv", "csv")
    back = read_table(path)
    assert back.columns == table.columns
    assert back.units == table.units
    assert np.array_equal(back.data, table.data)


def test_json_round_trip_keeps_provenance(table, tmp_path):
    path = write_results(table, tmp_path / "out.json", "json")
    back = read_table(path)
    assert np.array_equal(back.data, table.data)
    assert back.provenance["scenario"] == "threshold_map"


def test_json_validates_against_shipped_schema(table, tmp_path):
    path = write_results(table, tmp_path / "out.json", "json")
    schema = json.loads(SCHEMA_PATH.read_text())
    doc = json.loads(path.read_text())
    jsonschema.validate(doc, schema)


def test_three_row_table_renders_three_data_lines():
    t = ScanTable(columns=("param", "obs"), units=("1", "1"),
                  data=np.arange(6.0).reshape(3, 2), provenance={})
    lines = render_csv(t).splitlines()
    assert len(lines) == 5  # 1 comment + 1 header + 3 rows


def test_write_is_atomic_and_leaves_no_temp_files(table, tmp_path):
    write_results(table, tmp_path / "out.csv", "csv")
    assert [p.name for p in tmp_path.iterdir()] == ["out.csv"]


def test_unwritable_path_is_an_error(table, tmp_path):
    with pytest.raises(ConfigError, match="does not exist"):
        write_results(table, tmp_path / "missing" / "out.csv", "csv")


def test_unknown_format_rejected(table, tmp_path):
    with pytest.raises(ConfigError, match="format"):
        write_results(table, tmp_path / "out.xml", "xml")


def test_repeated_runs_render_byte_identical_csv():
    spec = {"overrides": {"scan_points": 11, "scan_half_width": 1e9}}
    a = render_csv(run_cpt_scan(ScenarioSpec("cpt", **spec)))
    b = render_csv(run_cpt_scan(ScenarioSpec("cpt", **spec)))
    assert a == b
