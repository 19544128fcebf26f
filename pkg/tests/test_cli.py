import json

import numpy as np
import pytest

from cointkit.cli import main

from .conftest import BUNDLED_CFG


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("cmd", ["adf", "johansen", "vecm", "fevd", "stats", "report"])
def test_subcommands_succeed_on_bundled_data(cmd, capsys):
    code, out, err = run([cmd, "--config", str(BUNDLED_CFG)], capsys)
    assert code == 0, err
    assert out.strip()


def test_johansen_text_header(capsys):
    code, out, _ = run(["johansen", "--config", str(BUNDLED_CFG)], capsys)
    assert code == 0
    assert "Unrestricted Cointegration Rank Test (Maximum Eigenvalue)" in out


def test_fevd_footer_follows_ordering_flag(capsys):
    code, out, _ = run(["fevd", "--config", str(BUNDLED_CFG), "--ordering", "GDP,INFL,DF,M2,TCE"], capsys)
    assert code == 0
    assert "Cholesky Ordering: GDP INFL DF M2 TCE" in out


def test_report_json_to_file_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["report", "--config", str(BUNDLED_CFG), "--format", "json", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["johansen"]["selected_rank_max"] == 1


def test_missing_data_file_exits_2(tmp_path, capsys):
    code, _, err = run(["johansen", "--data", str(tmp_path / "none.csv")], capsys)
    assert code == 2
    assert "not found" in err


def test_rank_out_of_range_exits_2(tmp_path, capsys):
    sim = tmp_path / "two.csv"
    assert main(["simulate", "--dgp", "random-walks", "--k", "2", "--n", "80", "--out", str(sim)]) == 0
    code, _, err = run(["vecm", "--data", str(sim), "--rank", "3"], capsys)
    assert code == 2
    assert "vecm" in err


def test_numerical_failure_exits_3(tmp_path, capsys):
    rng = np.random.default_rng(0)
    lines = ["year,a,b,c"]
    for i, (x, y) in enumerate(np.cumsum(rng.standard_normal((60, 2)), axis=0)):
        lines.append(f"{1950 + i},{x},{y},5.0")  # constant column: singular moment matrix
    path = tmp_path / "flat.csv"
    path.write_text("\n".join(lines) + "\n")
    code, _, err = run(["johansen", "--data", str(path)], capsys)
    assert code == 3, err


def test_bad_config_key_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("flavour = vanilla\n")
    code, _, _ = run(["report", "--config", str(cfg)], capsys)
    assert code == 2


def test_simulate_is_byte_identical(tmp_path):
    args = ["simulate", "--dgp", "common-trend", "--alpha=-0.5,0", "--beta=1,-1", "--n", "500", "--seed", "42"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == "year,x1,x2"


def test_simulate_rejects_bad_spec(capsys):
    code, _, _ = run(["simulate", "--dgp", "stationary-var", "--a", "1.2,0;0,0.5"], capsys)
    assert code == 2


def test_transform_flag(tmp_path, capsys):
    path = tmp_path / "g.csv"
    rows = ["year,a"] + [f"{2000 + i},{100 * 1.1 ** i}" for i in range(30)]
    path.write_text("\n".join(rows) + "\n")
    code, out, _ = run(
        ["stats", "--data", str(path), "--transform", "a=percent-growth", "--periods", "2001-2029", "--format", "json"],
        capsys,
    )
    assert code == 0
    stats = json.loads(out)["stats"]
    assert stats["variables"]["a"][0]["mean"] == pytest.approx(10.0)
