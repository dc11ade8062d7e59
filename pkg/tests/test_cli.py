import csv
import io
import json

import numpy as np
import pytest

from flagsympl import cli
from flagsympl.phase_space import dumps_points, random_point
from flagsympl.suites import RunConfig


def _run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_figure1_suite_example(capsys):
    code, out, _ = _run(["verify", "--suite", "figure1", "--n", "3", "--N", "4", "--samples", "64",
                         "--seed", "7"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert set(rep) == {"version", "suite", "config", "cases"}
    alpha1 = next(c for c in rep["cases"] if c["name"] == "figure1.alpha1")
    assert alpha1["details"]["reversed_23"] is True
    assert alpha1["details"]["interior_hits_23"] == [] and alpha1["details"]["interior_hits_31"] == []


def test_verify_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert cli.main(["verify", "--suite", "all", "--n", "3", "--seed", "1", "--samples", "5",
                         "--json", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    names = [c["name"] for c in json.loads(paths[0].read_text())["cases"]]
    assert names == sorted(names)


def test_springer_suite_n5(capsys):
    code, out, _ = _run(["verify", "--suite", "springer", "--n", "5", "--samples", "20"], capsys)
    assert code == 0
    zn = next(c for c in json.loads(out)["cases"] if c["name"] == "springer.zn_normal_form")
    assert zn["status"] == "pass" and zn["max_error"] <= 1e-8


def test_list_mentions_every_case(capsys):
    code, out, _ = _run(["verify", "--list"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert any(line.startswith("twist.steinberg_slope\t") for line in lines)
    assert all("\t" in line for line in lines)


def test_bad_tolerance(capsys):
    code, _, err = _run(["verify", "--suite", "moment", "--tol", "moment=-1"], capsys)
    assert code == 2 and "error" in err
    code, _, err = _run(["verify", "--suite", "moment", "--tol", "nonsense"], capsys)
    assert code == 2


def test_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    code, _, err = _run(["verify", "--config", str(cfg)], capsys)
    assert code == 2 and "bogus" in err


def test_config_precedence(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n": 4, "seed": 9}))
    args = cli.make_parser().parse_args(["verify", "--config", str(cfg), "--seed", "3"])
    conf = cli.build_config(args)
    assert conf.n == 4 and conf.seed == 3


def test_unwritable_output(capsys):
    code, _, err = _run(["sample", "--samples", "1", "--json", "/nonexistent/dir/x.json"], capsys)
    assert code == 2 and "cannot write" in err


def test_sample_points_in_fiber(capsys):
    code, out, _ = _run(["sample", "--n", "4", "--samples", "3", "--seed", "2"], capsys)
    assert code == 0
    from flagsympl.moment import mu, p_n
    from flagsympl.phase_space import loads_points
    pts = loads_points(out)
    assert len(pts) == 3
    assert all(np.abs(mu(p) - np.diag(p_n(4))).max() < 1e-9 for p in pts)


def test_twist_point_file(tmp_path, capsys, rng):
    f = tmp_path / "p.json"
    f.write_text(dumps_points([random_point(3, rng)]))
    code, out, _ = _run(["twist", "--point", str(f), "--alpha", "2"], capsys)
    assert code == 0
    data = json.loads(out)
    assert {"input", "output", "report"} <= set(data)
    code, _, _ = _run(["twist", "--point", str(f), "--alpha", "3"], capsys)
    assert code == 2


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_edge_trajectory_m12_constant():
    rows = _rows(cli.emit_trajectory(RunConfig(samples=21), "edge"))
    assert rows[0] == ["t", "m12", "m13", "m23", "nu"]
    data = np.array(rows[1:], dtype=float)
    assert np.all(np.diff(data[:, 0]) > 0)
    assert np.ptp(data[:, 1]) < 1e-9


def test_twist_trajectory_header_and_columns():
    rows = _rows(cli.emit_trajectory(RunConfig(samples=5), "twist"))
    assert rows[0][:3] == ["t", "xi11_re", "xi11_im"]
    assert len(rows) == 6 and all(len(r) == 1 + 18 for r in rows)


def test_twist_trajectory_identity_regime_endpoints(rng):
    from flagsympl import lie
    from flagsympl.phase_space import CotangentPoint
    p = random_point(3, rng)
    xa, m = lie.root_component(p.xi, 1)
    p = CotangentPoint(p.x, p.xi + xa * (2.0 / m - 1))
    data = np.array(_rows(cli.emit_trajectory(RunConfig(samples=9), "twist", 1, p))[1:], dtype=float)
    start = np.array(cli._complex_row(p.xi))
    # the endpoint agrees with the input up to the torus; here the torus factor is trivial
    assert np.abs(data[0, 1:] - start).max() < 1e-12
    assert np.abs(np.abs(data[-1, 1::2] + 1j * data[-1, 2::2])
                  - np.abs(start[0::2] + 1j * start[1::2])).max() < 1e-9


def test_empty_trajectory_header_only():
    text = cli.emit_trajectory(RunConfig(samples=5), "edge", rows=0)
    assert text == "t,m12,m13,m23,nu\n"


def test_trajectory_csv_file(tmp_path):
    out = tmp_path / "traj.csv"
    assert cli.main(["twist", "--trajectory", "--samples", "4", "--csv", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 5


def test_figure1_command_csv(tmp_path, capsys):
    out = tmp_path / "poly.csv"
    code, text, _ = _run(["figure1", "--N", "4", "--samples", "64", "--csv", str(out)], capsys)
    assert code == 0
    assert json.loads(text)["reversed_23"] is True
    assert len(out.read_text().splitlines()) == 65


def test_springer_command_csv(capsys):
    code, out, _ = _run(["springer", "--n", "3", "--samples", "10"], capsys)
    assert code == 0
    rows = _rows(out)
    assert rows[0] == ["sample_id", "partition", "epsilon", "m12", "m13", "m23"]
    assert len(rows) == 11


@pytest.mark.parametrize("suite", ["sp4", "rays", "blowup"])
def test_localmodels_command(suite, capsys):
    code, out, _ = _run(["localmodels", "--suite", suite, "--samples", "20"], capsys)
    assert code == 0
    assert json.loads(out)["suite"] == f"localmodels.{suite}"
