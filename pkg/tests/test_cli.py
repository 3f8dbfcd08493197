"""Command-line surface: output shapes, exit codes, exports, goldens."""

import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from hofstadter.cli import main

GOLDEN = Path(__file__).parent / "golden"
SQRT2 = math.sqrt(2.0)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_spectrum_flux_one_half(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "1", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "flux: 1/2"
    edges = [float(tok) for tok in lines[1].removeprefix("edges: ").split()]
    assert len(edges) == 4
    expected = [-2 * SQRT2, 0.0, 0.0, 2 * SQRT2]
    assert all(abs(a - b) < 1e-9 for a, b in zip(edges, expected))
    assert "-2.82842712475" in lines[1]  # 12 significant digits
    assert sum(1 for line in lines if line.startswith("band ")) == 2
    assert sum(1 for line in lines if line.startswith("gap ")) == 1


def test_spectrum_flux_one(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "1", "1")
    assert code == 0
    assert "edges: -4 4" in out
    assert "gap" not in out


def test_spectrum_rejects_non_coprime(capsys):
    code, out, err = run_cli(capsys, "spectrum", "2", "4")
    assert code == 2
    assert out == ""
    assert "p and q must be coprime" in err


def test_spectrum_rejects_bad_denominator(capsys):
    code, _, err = run_cli(capsys, "spectrum", "1", "0")
    assert code == 2 and "denominator" in err


def test_labels_tb(capsys):
    code, out, _ = run_cli(capsys, "labels", "2", "5", "--regime", "tb")
    assert code == 0
    rows = [line.split() for line in out.splitlines() if line and line[0].isdigit()]
    assert [int(row[1]) for row in rows] == [-2, 1, -1, 2]
    assert all(row[3] == "false" for row in rows)


def test_labels_landau(capsys):
    code, out, _ = run_cli(capsys, "labels", "1", "3", "--regime", "landau")
    assert code == 0
    rows = [line.split() for line in out.splitlines() if line and line[0].isdigit()]
    assert [int(row[1]) for row in rows] == [0, 0]


def test_labels_landau_above_one_quantum(capsys):
    code, out, _ = run_cli(capsys, "labels", "4", "3", "--regime", "landau")
    assert code == 0
    rows = [line.split() for line in out.splitlines() if line and line[0].isdigit()]
    assert [(int(r[1]), r[3]) for r in rows] == [(-1, "false"), (2, "true")]


def test_labels_empty_table_for_single_band(capsys):
    code, out, _ = run_cli(capsys, "labels", "1", "1", "--regime", "tb")
    assert code == 0
    assert "# j sigma width ambiguous" in out
    assert not [line for line in out.splitlines() if line and line[0].isdigit()]


def test_labels_rejects_unknown_regime(capsys):
    code, _, _ = run_cli(capsys, "labels", "1", "3", "--regime", "bogus")
    assert code == 2


def test_labels_landau_rejects_zero_numerator(capsys):
    code, _, err = run_cli(capsys, "labels", "0", "1", "--regime", "landau")
    assert code == 2 and "inverse flux" in err


def test_butterfly_golden_and_stderr_summary(tmp_path, capsys):
    out_path = tmp_path / "b.ppm"
    code, out, err = run_cli(
        capsys, "butterfly", "--regime", "tb", "--qmax", "10",
        "--width", "64", "--height", "64", "--format", "ppm", "--out", str(out_path),
    )
    assert code == 0
    assert out == ""  # stdout stays machine-clean; the summary goes to stderr
    assert "wrote" in err and "64x64" in err
    assert out_path.read_bytes() == (GOLDEN / "tb_q10_64x64.ppm").read_bytes()


def test_butterfly_landau_golden_differs(tmp_path, capsys):
    out_path = tmp_path / "l.ppm"
    code, _, _ = run_cli(
        capsys, "butterfly", "--regime", "landau", "--qmax", "10",
        "--width", "64", "--height", "64", "--format", "ppm", "--out", str(out_path),
    )
    assert code == 0
    golden = (GOLDEN / "landau_q10_64x64.ppm").read_bytes()
    assert out_path.read_bytes() == golden
    assert golden != (GOLDEN / "tb_q10_64x64.ppm").read_bytes()


def test_butterfly_rejects_bad_qmax(tmp_path, capsys):
    code, _, err = run_cli(
        capsys, "butterfly", "--qmax", "0", "--width", "8", "--height", "8",
        "--out", str(tmp_path / "x.ppm"),
    )
    assert code == 2 and "q_max" in err


def test_butterfly_io_failure(tmp_path, capsys):
    code, _, err = run_cli(
        capsys, "butterfly", "--qmax", "2", "--width", "8", "--height", "8",
        "--out", str(tmp_path / "missing" / "x.ppm"),
    )
    assert code == 1 and "x.ppm" in err


def test_butterfly_png_and_svg(tmp_path, capsys):
    png_path = tmp_path / "b.png"
    code, _, _ = run_cli(
        capsys, "butterfly", "--qmax", "5", "--width", "16", "--height", "16",
        "--format", "png", "--out", str(png_path),
    )
    assert code == 0
    assert png_path.read_bytes().startswith(b"\x89PNG\r\n\x1a\n")

    svg_path = tmp_path / "b.svg"
    code, _, _ = run_cli(
        capsys, "butterfly", "--qmax", "5", "--width", "16", "--height", "16",
        "--format", "svg", "--out", str(svg_path),
    )
    assert code == 0
    assert svg_path.read_text().startswith("<?xml")


def test_export_csv_layout(tmp_path, capsys):
    path = tmp_path / "gaps.csv"
    code, _, _ = run_cli(capsys, "export", "--qmax", "3", "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "p,q,j,e_lo,e_hi,width,sigma_tb,sigma_landau,ambiguous_landau"
    body = [line.split(",") for line in lines[1:]]
    assert [(row[0], row[1], row[2]) for row in body] == [
        ("1", "2", "1"), ("1", "3", "1"), ("1", "3", "2"), ("2", "3", "1"), ("2", "3", "2"),
    ]
    by_key = {(row[0], row[1], row[2]): row for row in body}
    assert by_key[("1", "3", "1")][6] == "1"  # sigma_tb of the first gap of 1/3
    touching = by_key[("1", "2", "1")]
    assert float(touching[5]) < 1e-12  # the closed gap is still labelled
    assert touching[6] == "1"


def test_export_json_matches_csv(tmp_path, capsys):
    csv_path = tmp_path / "gaps.csv"
    json_path = tmp_path / "gaps.json"
    assert run_cli(capsys, "export", "--qmax", "5", "--out", str(csv_path))[0] == 0
    assert run_cli(capsys, "export", "--qmax", "5", "--out", str(json_path))[0] == 0
    records = json.loads(json_path.read_text())
    lines = csv_path.read_text().splitlines()[1:]
    assert len(records) == len(lines)
    for record, line in zip(records, lines):
        cells = line.split(",")
        assert record["p"] == int(cells[0])
        assert record["q"] == int(cells[1])
        assert record["j"] == int(cells[2])
        for key, cell in zip(("e_lo", "e_hi", "width"), cells[3:6]):
            assert record[key] == float(cell)
        assert record["sigma_tb"] == int(cells[6])
        assert record["sigma_landau"] == int(cells[7])
        assert record["ambiguous_landau"] == (cells[8] == "true")


def test_export_is_deterministic(tmp_path, capsys):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    run_cli(capsys, "export", "--qmax", "4", "--out", str(first))
    run_cli(capsys, "export", "--qmax", "4", "--out", str(second))
    assert first.read_bytes() == second.read_bytes()


def test_export_rejects_unknown_extension(tmp_path, capsys):
    code, _, err = run_cli(capsys, "export", "--qmax", "3", "--out", str(tmp_path / "x.xml"))
    assert code == 2 and "extension" in err


def test_export_rejects_bad_qmax(tmp_path, capsys):
    code, _, _ = run_cli(capsys, "export", "--qmax", "0", "--out", str(tmp_path / "x.csv"))
    assert code == 2


def test_verify_pass(capsys):
    code, out, _ = run_cli(capsys, "verify", "1", "3", "--grid", "30")
    assert code == 0
    assert out.splitlines()[-1] == "PASS"
    assert "band 2: chern -2" in out


def test_verify_degenerate_without_composite(capsys):
    code, _, err = run_cli(capsys, "verify", "1", "2", "--grid", "30")
    assert code == 4
    assert "composite" in err or "touches" in err or "closed" in err


def test_verify_composite(capsys):
    code, out, _ = run_cli(capsys, "verify", "1", "2", "--grid", "30", "--composite")
    assert code == 0
    assert "bands 1-2: chern 0" in out
    assert out.splitlines()[-1] == "PASS"


def test_verify_rejects_non_coprime(capsys):
    code, _, err = run_cli(capsys, "verify", "2", "4", "--grid", "30")
    assert code == 2 and "coprime" in err


def test_missing_subcommand_is_usage_error(capsys):
    assert run_cli(capsys, )[0] == 2


def test_module_entry_point_runs():
    import os

    env = dict(os.environ)
    src = str(Path(__file__).resolve().parent.parent / "src")
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    result = subprocess.run(
        [sys.executable, "-m", "hofstadter", "spectrum", "1", "1"],
        capture_output=True, text=True, env=env,
        cwd=Path(__file__).parent.parent,
    )
    assert result.returncode == 0
    assert "edges: -4 4" in result.stdout
