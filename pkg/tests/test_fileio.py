import json

import numpy as np

from qthin import fileio


def test_complex_csv_round_trip(tmp_path):
    path = tmp_path / "vec.csv"
    rng = np.random.default_rng(0)
    values = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    fileio.write_complex_csv(path, values)
    back = fileio.read_complex_csv(path)
    np.testing.assert_array_equal(back, values)


def test_complex_csv_layout(tmp_path):
    path = tmp_path / "vec.csv"
    fileio.write_complex_csv(path, np.array([1 + 2j, -0.5j]))
    raw = path.read_bytes().decode("utf-8")
    lines = raw.split("\n")
    assert lines[0] == "index,re,im"
    assert lines[1].startswith("0,1,2")
    assert "\r" not in raw
    assert raw.endswith("\n")


def test_power_csv_columns(tmp_path):
    path = tmp_path / "p.csv"
    u = np.array([-1.0, 0.0, 1.0])
    fileio.write_power_csv(path, u, np.array([0.25, 1.0, 0.0]))
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "u,p_linear,p_db"
    row = lines[1].split(",")
    assert float(row[0]) == -1.0
    assert float(row[1]) == 0.25
    assert float(row[2]) == 10 * np.log10(0.25)
    # exact nulls are floored, not -inf
    assert float(lines[3].split(",")[2]) <= -2990.0


def test_pattern_db_csv(tmp_path):
    path = tmp_path / "pattern.csv"
    fileio.write_pattern_db_csv(path, [0.0, 0.5], [1.0, 0.1])
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "u,p_db"
    assert float(lines[2].split(",")[1]) == 10 * np.log10(0.1)


def test_probability_csvs(tmp_path):
    fileio.write_probabilities_csv(tmp_path / "p.csv", [0.5, 0.5])
    assert (tmp_path / "p.csv").read_text().startswith("n,p\n0,0.5\n1,0.5")
    fileio.write_sorted_probabilities_csv(tmp_path / "s.csv", [0.9, 0.1])
    assert (tmp_path / "s.csv").read_text().startswith("t,p\n0,0.9")


def test_noise_sweep_csv(tmp_path):
    path = tmp_path / "noise.csv"
    fileio.write_noise_sweep_csv(path, [(10.0, 3, 0, 0.5), (10.0, 3, 1, 0.25)])
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "snr_db,seed,t,p_sorted"
    assert lines[1] == "10,3,0,0.5"


def test_json_writer_is_sorted_and_lf(tmp_path):
    path = tmp_path / "m.json"
    fileio.write_json(path, {"b": 1, "a": [1, 2]})
    raw = path.read_bytes().decode("utf-8")
    assert "\r" not in raw
    assert json.loads(raw) == {"a": [1, 2], "b": 1}
    assert raw.index('"a"') < raw.index('"b"')


def test_text_writer_appends_newline(tmp_path):
    path = tmp_path / "mask.txt"
    fileio.write_text(path, "1010")
    assert path.read_bytes() == b"1010\n"
