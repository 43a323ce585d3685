import csv
import io
import json

import numpy as np
import pytest

from qimf.cli import build_parser, encode_check, main
from qimf.encoding import ImageBuffer
from qimf.pgm import read_pgm, write_pgm


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_filter_builtin_writes_outputs(tmp_path, capsys):
    out, rep = tmp_path / "o.pgm", tmp_path / "r.json"
    code, _, _ = run(["filter", "--builtin", "rectangle", "--size", "32", "--kind", "band",
                      "--d1", "3", "--d2", "9", "--delta", "0.1", "--l", "2",
                      "--out", str(out), "--report", str(rep)], capsys)
    assert code == 0
    assert read_pgm(out).shape == (32, 32)
    doc = json.loads(rep.read_text())
    assert doc["schedule"]["l"] == 2 and doc["quantum"]["oracle_calls"] == 4


def test_filter_report_to_stdout(capsys):
    code, out, _ = run(["filter", "--builtin", "rectangle", "--size", "16", "--kind", "highpass",
                        "--d1", "2", "--delta", "0.1"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["parameters"]["d2"] == "inf" and doc["guaranteed"]


def test_filter_pgm_input(tmp_path, capsys, rng):
    path = tmp_path / "in.pgm"
    write_pgm(ImageBuffer(rng.random((16, 16))), path)
    code, out, _ = run(["filter", "--input", str(path), "--kind", "lowpass", "--d2", "4",
                        "--delta", "0.1"], capsys)
    assert code == 0 and json.loads(out)["status"] == "ok"


@pytest.mark.parametrize(
    "argv",
    [
        ["filter", "--builtin", "rectangle", "--size", "16", "--kind", "band", "--d2", "3"],
        ["filter", "--builtin", "rectangle", "--size", "16", "--kind", "band", "--d1", "5", "--d2", "2"],
        ["filter", "--builtin", "rectangle", "--size", "16", "--kind", "band", "--d1", "1", "--d2", "2",
         "--delta", "0"],
        ["filter", "--builtin", "rectangle", "--size", "24", "--kind", "lowpass", "--d2", "3"],
        ["sweep", "--sizes", "64,abc"],
    ],
)
def test_config_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err.startswith("qimf:")


def test_empty_region_exit_2(tmp_path, capsys):
    path = tmp_path / "flat.pgm"
    write_pgm(ImageBuffer(np.ones((16, 16))), path)
    code, _, err = run(["filter", "--input", str(path), "--kind", "band", "--d1", "2", "--d2", "5"], capsys)
    assert code == 2 and "empty region" in err


def test_lambda_floor_exit_3(capsys):
    code, _, err = run(["filter", "--builtin", "rectangle", "--size", "64", "--kind", "band",
                        "--d1", "20", "--d2", "35", "--lambda-floor", "0.5"], capsys)
    assert code == 3 and "below the floor" in err


def test_io_errors_exit_4(tmp_path, capsys):
    code, _, _ = run(["filter", "--input", str(tmp_path / "missing.pgm"), "--kind", "lowpass",
                      "--d2", "3"], capsys)
    assert code == 4
    bad = tmp_path / "odd.pgm"
    bad.write_bytes(b"P5\n5 3\n255\n" + bytes(15))
    code, _, err = run(["filter", "--input", str(bad), "--kind", "lowpass", "--d2", "3"], capsys)
    assert code == 4 and "pad or crop" in err
    junk = tmp_path / "junk.pgm"
    junk.write_bytes(b"P7 nonsense")
    assert run(["filter", "--input", str(junk), "--kind", "lowpass", "--d2", "3"], capsys)[0] == 4


def test_l_argument_parsing():
    parser = build_parser()
    assert parser.parse_args(["demo", "lowpass", "--l", "auto"]).l == "auto"
    assert parser.parse_args(["demo", "lowpass", "--l", "7"]).l == 7
    with pytest.raises(SystemExit):
        parser.parse_args(["demo", "lowpass", "--l", "seven"])


def test_demo_repeatable_byte_identical(tmp_path, capsys):
    files = []
    for k in range(2):
        out, rep = tmp_path / f"o{k}.pgm", tmp_path / f"r{k}.json"
        assert run(["demo", "lowpass", "--seed", "3", "--out", str(out), "--report", str(rep)], capsys)[0] == 0
        files.append((out.read_bytes(), rep.read_bytes()))
    assert files[0] == files[1]


def test_demo_l_override(capsys):
    code, out, _ = run(["demo", "highpass", "--l", "auto"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["schedule"]["l"] == doc["minimal_l"]


def test_sweep_csv(tmp_path, capsys):
    path = tmp_path / "s.csv"
    assert run(["sweep", "--sizes", "64,128", "--family", "fixed-rectangle", "--out", str(path)], capsys)[0] == 0
    rows = list(csv.DictReader(path.open()))
    assert [int(r["N"]) for r in rows] == [4096, 16384]
    assert {"lambda", "l", "quantum_cost", "classical_mask_ops"} <= set(rows[0])
    code, out, _ = run(["sweep", "--sizes", "64"], capsys)
    assert code == 0 and list(csv.DictReader(io.StringIO(out)))[0]["side"] == "64"


def test_encode_check(capsys):
    results = encode_check(trials=10, seed=1)
    assert len(results) == 4 and all(dev < 1e-10 for _, dev in results)
    code, out, _ = run(["encode-check", "--trials", "5"], capsys)
    assert code == 0 and out.count("PASS") == 4
