from __future__ import annotations

import json
import math
from pathlib import Path

import pytest

from awtaylor.cli import main


def read_jsonl(path: Path) -> tuple[dict, list[dict]]:
    lines = path.read_text().strip().splitlines()
    meta = json.loads(lines[0])["meta"]
    return meta, [json.loads(s) for s in lines[1:]]


def test_verify_default_point(tmp_path, capsys):
    out = tmp_path / "r.jsonl"
    code = main(["verify", "q-gauss", "--output", str(out), "--no-figures"])
    assert code == 0
    meta, rows = read_jsonl(out)
    assert meta["formula_id"] == "q-gauss"
    assert rows[0]["pass"] is True
    assert rows[0]["rel_error"] < 1e-10


def test_verify_trivial_collapse_exit_zero(tmp_path):
    out = tmp_path / "r.jsonl"
    code = main(
        ["verify", "new-saalschutz", "--alpha", "0.4", "--beta", "0.4",
         "--output", str(out), "--no-figures"]
    )
    assert code == 0
    _, rows = read_jsonl(out)
    assert rows[0]["pass"] is True


def test_exit_codes_domain_vs_numerical(tmp_path, capsys):
    # domain rejection is 2
    assert main(["verify", "q-gauss", "--q", "1.5", "--no-figures"]) == 2
    assert main(["verify", "no-such-formula", "--no-figures"]) == 2
    capsys.readouterr()
    # an unreachable tolerance turns a pass into a numerical failure, 1
    out = tmp_path / "r.jsonl"
    code = main(["verify", "q-gauss", "--tol", "1e-18", "--output", str(out), "--no-figures"])
    assert code == 1


def test_sweep_grid_file(tmp_path):
    grid = [
        {"alpha": 0.2, "beta": 0.6, "xi": -0.3, "x": 0.5, "q": 0.5},
        {"alpha": 0.1, "beta": 0.4, "xi": 0.2, "x": -0.3, "q": 0.3},
    ]
    gridfile = tmp_path / "grid.json"
    gridfile.write_text(json.dumps(grid))
    out = tmp_path / "r.jsonl"
    code = main(
        ["sweep", "q-gauss", "--grid", str(gridfile), "--output", str(out), "--no-figures"]
    )
    assert code == 0
    _, rows = read_jsonl(out)
    assert len(rows) == 2
    assert all(r["pass"] for r in rows)


def test_sweep_seeded_determinism(tmp_path):
    a = tmp_path / "a.jsonl"
    b = tmp_path / "b.jsonl"
    for out in (a, b):
        code = main(
            ["sweep", "table2-t", "--count", "6", "--seed", "11",
             "--output", str(out), "--no-figures"]
        )
        assert code == 0
    # byte-identical modulo the timestamped meta line
    la = a.read_text().splitlines()
    lb = b.read_text().splitlines()
    assert la[1:] == lb[1:]
    assert len(la) == 7


def test_sweep_seeded_sample_passes(tmp_path):
    out = tmp_path / "r.jsonl"
    code = main(
        ["sweep", "nonterminating-q-saalschutz", "--count", "5", "--seed", "2",
         "--output", str(out), "--no-figures"]
    )
    assert code == 0
    _, rows = read_jsonl(out)
    assert len(rows) == 5 and all(r["pass"] for r in rows)


def test_report_figures_written(tmp_path):
    out = tmp_path / "r.jsonl"
    code = main(["sweep", "table2-g", "--count", "4", "--seed", "1", "--output", str(out)])
    assert code == 0
    assert (tmp_path / "r_residuals.png").exists()


def test_csv_format(tmp_path):
    out = tmp_path / "r.csv"
    code = main(["verify", "table2-a", "--output", str(out), "--format", "csv", "--no-figures"])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("# meta")
    header = lines[1].split(",")
    assert "rel_error" in header and "pass" in header


def test_expand_continuous_exp(tmp_path):
    out = tmp_path / "e.jsonl"
    code = main(
        ["expand", "exp", "--form", "C", "--base", "0", "--order", "8",
         "--output", str(out), "--no-figures"]
    )
    assert code == 0
    _, rows = read_jsonl(out)
    for row in rows:
        k = row["k"]
        assert abs(row["coeff_re"] * math.factorial(k) - 1.0) < 1e-9, k


def test_expand_fig39_written(tmp_path):
    out = tmp_path / "e.jsonl"
    code = main(
        ["expand", "qpoch-ratio", "--form", "G", "--base", "0.4", "--q", "0.5",
         "--alpha", "0.3", "--beta", "0.7", "--order", "10", "--at", "0.6",
         "--output", str(out)]
    )
    assert code == 0
    assert (tmp_path / "e_coefficients.png").exists()
    _, rows = read_jsonl(out)
    assert len(rows) == 11 and "term_abs" in rows[0]


def test_bounds_small_sweep(tmp_path):
    out = tmp_path / "b.jsonl"
    code = main(
        ["bounds", "--q", "0.5", "--samples", "150", "--rho", "0.3", "--delta", "0.1",
         "--seed", "7", "--output", str(out), "--no-figures"]
    )
    assert code == 0
    _, rows = read_jsonl(out)
    assert len(rows) == 150
    assert not any(r["violation"] for r in rows)
    members = [r for r in rows if r["in_set"]]
    assert members and min(r["ratio"] for r in members) > 0


def test_bounds_domain_rejection():
    assert main(["bounds", "--q", "1.5", "--no-figures"]) == 2


def test_sweep_row_alias(tmp_path):
    out = tmp_path / "r.jsonl"
    code = main(
        ["sweep", "table2", "--row", "T", "--count", "3", "--seed", "5",
         "--output", str(out), "--no-figures"]
    )
    assert code == 0
    _, rows = read_jsonl(out)
    assert rows[0]["formula_id"] == "table2-t"


def test_float_serialization_round_trips(tmp_path):
    out = tmp_path / "r.jsonl"
    main(["verify", "q-gauss", "--output", str(out), "--no-figures"])
    _, rows = read_jsonl(out)
    # 17 significant digits reproduce the double exactly
    assert rows[0]["lhs_re"] == float(format(rows[0]["lhs_re"], ".17g"))
