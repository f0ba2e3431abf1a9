"""End-to-end exercises of the command line, in process.

Exit codes are a contract: 0 success (divergence included), 2 input error,
3 hypothesis violation, 4 numerical-domain error, 5 verification failure.
"""

import json
import math

import numpy as np
import pytest

from blockspaces.cli import main
from blockspaces.io import read_csv


def write_spec(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def ball(tmp_path):
    return write_spec(tmp_path / "ball.json", {"type": "indicator", "a": -1, "b": 1})


@pytest.fixture
def i12(tmp_path):
    return write_spec(tmp_path / "i12.json", {"type": "indicator", "a": 1, "b": 2})


# -- norm -----------------------------------------------------------------------


def test_norm_flat_ball(ball, tmp_path):
    out = tmp_path / "n"
    assert main(["norm", "--input", ball, "--params", "1,1,2,0", "--out", str(out)]) == 0
    rep = json.loads((tmp_path / "n.json").read_text())
    assert rep["norm"] == 2.0
    assert rep["divergent"] is False
    assert rep["profile"]["total"] == 2.0


def test_norm_weighted_interval(i12, tmp_path):
    out = tmp_path / "n"
    assert main(["norm", "--input", i12, "--params", "1,1,2,1", "--out", str(out)]) == 0
    rep = json.loads((tmp_path / "n.json").read_text())
    assert rep["norm"] == 1.5


def test_norm_divergent_is_data_not_error(tmp_path):
    f = write_spec(tmp_path / "f.json", {"type": "indicator", "a": 0, "b": 1})
    out = tmp_path / "n"
    assert main(["norm", "--input", f, "--params", "1,1,2,-1", "--out", str(out)]) == 0
    rep = json.loads((tmp_path / "n.json").read_text())
    assert rep["divergent"] is True
    assert rep["norm"] == "inf"


def test_norm_fraction_params(ball, tmp_path):
    out = tmp_path / "n"
    assert main(["norm", "--input", ball, "--params", "1,1/2,2,-3/4", "--out", str(out)]) == 0
    rep = json.loads((tmp_path / "n.json").read_text())
    assert rep["provenance"]["config"]["params"] == [1, 0.5, 2, -0.75]


def test_norm_bad_json_exits_2(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text("{not json")
    out = tmp_path / "n"
    assert main(["norm", "--input", str(f), "--params", "1,1,2,0", "--out", str(out)]) == 2
    assert "bad.json" in capsys.readouterr().err


def test_norm_missing_params_exits_2(ball, tmp_path):
    assert main(["norm", "--input", ball, "--out", str(tmp_path / "n")]) == 2


def test_norm_invalid_params_exit_2(ball, tmp_path):
    assert main(["norm", "--input", ball, "--params", "1,0,2,0", "--out", str(tmp_path / "n")]) == 2
    assert main(["norm", "--input", ball, "--params", "1,1,2", "--out", str(tmp_path / "n")]) == 2
    assert main(["norm", "--input", ball, "--params", "1,1,2,x", "--out", str(tmp_path / "n")]) == 2


# -- decompose --------------------------------------------------------------------


def test_decompose_unit_shell_single_term(tmp_path):
    f = write_spec(
        tmp_path / "shell.json",
        {"breakpoints": [-1.0, -0.5, 0.5, 1.0], "values": [1.0, 0.0, 1.0]},
    )
    out = tmp_path / "d"
    rc = main(
        ["decompose", "--input", f, "--params", "1,1,2,0", "--op", "homogeneous", "--out", str(out)]
    )
    assert rc == 0
    rep = json.loads((tmp_path / "d.json").read_text())
    assert len(rep["terms"]) == 1
    assert rep["terms"][0]["lambda"] == math.sqrt(2.0)
    assert rep["terms"][0]["k"] == 0
    assert rep["residual_norm"] == 0.0
    assert rep["quasinorm_upper_bound"] == math.sqrt(2.0)


def test_decompose_ball_three_terms(tmp_path):
    f = write_spec(tmp_path / "b2.json", {"type": "indicator", "a": -4, "b": 4})
    out = tmp_path / "d"
    assert main(["decompose", "--input", f, "--params", "1,1,2,0", "--out", str(out)]) == 0
    rep = json.loads((tmp_path / "d.json").read_text())
    assert [t["k"] for t in rep["terms"]] == [0, 1, 2]
    assert all(t["restrict_type"] for t in rep["terms"])


def test_decompose_zero_function(tmp_path):
    f = write_spec(tmp_path / "z.json", {"type": "zero"})
    out = tmp_path / "d"
    assert main(["decompose", "--input", f, "--params", "1,1,2,0", "--out", str(out)]) == 0
    rep = json.loads((tmp_path / "d.json").read_text())
    assert rep["terms"] == [] and rep["coefficient_cost"] == 0.0


def test_decompose_round_trip_lossless(tmp_path, i12):
    out = tmp_path / "d"
    assert main(["decompose", "--input", i12, "--params", "1,1,2,-1/2", "--out", str(out)]) == 0
    rep = json.loads((tmp_path / "d.json").read_text())
    from blockspaces.io import decomposition_from_dict, load_function

    dec = decomposition_from_dict(rep)
    assert dec.synthesize().equal_as_functions(load_function(i12))


def test_decompose_hypothesis_violation_exits_3(tmp_path, ball, capsys):
    rc = main(
        [
            "decompose",
            "--input",
            ball,
            "--params",
            "1,2,2,0",  # p = s: the homogeneous route needs p < s
            "--op",
            "homogeneous",
            "--out",
            str(tmp_path / "d"),
        ]
    )
    assert rc == 3
    assert "p < s" in capsys.readouterr().err


def test_decompose_upper_bound_route(tmp_path, ball):
    out = tmp_path / "d"
    rc = main(
        [
            "decompose",
            "--input",
            ball,
            "--params",
            "1,1,2,-1/2",
            "--op",
            "upper-bound",
            "--seed",
            "3",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    rep = json.loads((tmp_path / "d.json").read_text())
    direct = rep["coefficient_cost"]
    assert rep["quasinorm_upper_bound"] <= direct ** 1.0 + 1e-12


def test_decompose_unknown_route_exits_2(tmp_path, ball):
    rc = main(
        ["decompose", "--input", ball, "--params", "1,1,2,0", "--op", "svd", "--out", str(tmp_path / "d")]
    )
    assert rc == 2


# -- apply ------------------------------------------------------------------------


def test_apply_hilbert_closed_form(tmp_path, i12):
    out = tmp_path / "a"
    rc = main(["apply", "--input", i12, "--op", "hilbert", "--grid", "4:4:1", "--out", str(out)])
    assert rc == 0
    rows = read_csv(str(tmp_path / "a.csv"))
    assert rows[0][0] == 4.0
    assert math.isclose(rows[0][1], math.log(1.5) / math.pi, rel_tol=1e-14)
    rep = json.loads((tmp_path / "a.json").read_text())
    assert rep["operator"] == "hilbert"


def test_apply_breakpoint_pv_exits_4(tmp_path, i12, capsys):
    rc = main(["apply", "--input", i12, "--op", "hilbert", "--grid", "1:2:3", "--out", str(tmp_path / "a")])
    assert rc == 4
    err = capsys.readouterr().err
    assert "1.0" in err  # the offending abscissa is named


def test_apply_carleson_anchor(tmp_path, i12):
    out = tmp_path / "a"
    rc = main(
        ["apply", "--input", i12, "--op", "carleson", "--grid", "3/2:3/2:1", "--out", str(out)]
    )
    assert rc == 0
    rows = read_csv(str(tmp_path / "a.csv"))
    assert abs(rows[0][1] - 1.1789797444721675) < 1e-6


def test_apply_sn_zero_input(tmp_path):
    f = write_spec(tmp_path / "z.json", {"type": "zero"})
    out = tmp_path / "a"
    rc = main(["apply", "--input", f, "--op", "sn", "--grid=-1:1:5", "--out", str(out)])
    assert rc == 0
    rows = read_csv(str(tmp_path / "a.csv"))
    assert len(rows) == 5 and all(v == 0.0 for _, v in rows)


def test_apply_unknown_op_exits_2(tmp_path, ball):
    rc = main(["apply", "--input", ball, "--op", "fft", "--grid", "0:1:2", "--out", str(tmp_path / "a")])
    assert rc == 2


def test_apply_schedule_override(tmp_path, i12):
    out = tmp_path / "a"
    rc = main(
        [
            "apply",
            "--input",
            i12,
            "--op",
            "sn",
            "--schedule",
            "16",
            "--grid",
            "1.5:1.5:1",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    rep = json.loads((tmp_path / "a.json").read_text())
    assert rep["schedule"] == [16.0]


# -- verify -----------------------------------------------------------------------


def test_verify_single_claim_passes(tmp_path):
    out = tmp_path / "v"
    assert main(["verify", "--theorem", "4.1", "--out", str(out)]) == 0
    rep = json.loads((tmp_path / "v.json").read_text())
    assert rep["theorem"] == "4.1" and rep["passed"] is True
    # curve measurements come with CSV sidecars
    csvs = list(tmp_path.glob("v.*.csv"))
    assert csvs


def test_verify_unknown_claim_exits_2(tmp_path, capsys):
    assert main(["verify", "--theorem", "9.9", "--out", str(tmp_path / "v")]) == 2


def test_verify_seed_echoed_in_provenance(tmp_path):
    out = tmp_path / "v"
    assert main(["verify", "--theorem", "5.3", "--seed", "7", "--out", str(out)]) == 0
    rep = json.loads((tmp_path / "v.json").read_text())
    assert rep["provenance"]["seed"] == 7
    assert rep["provenance"]["config"]["theorem"] == "5.3"


# -- sweep ------------------------------------------------------------------------


def test_sweep_error_curve_decreases(tmp_path):
    f = write_spec(tmp_path / "q.json", {"type": "indicator", "a": 0.25, "b": 0.5})
    out = tmp_path / "s"
    rc = main(
        [
            "sweep",
            "--input",
            f,
            "--op",
            "e-of-N",
            "--params",
            "1,1,2,-1/2",
            "--schedule",
            "1,4,16",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    rows = read_csv(str(tmp_path / "s.csv"))
    assert [r[0] for r in rows] == [1.0, 4.0, 16.0]
    assert rows[-1][1] < rows[0][1]
    sidecar = json.loads((tmp_path / "s.json").read_text())
    assert sidecar["rows"] == 3


def test_sweep_empty_schedule_header_only(tmp_path, ball):
    out = tmp_path / "s"
    rc = main(
        [
            "sweep",
            "--input",
            ball,
            "--op",
            "e-of-N",
            "--params",
            "1,1,2,0",
            "--schedule",
            "",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    assert read_csv(str(tmp_path / "s.csv")) == []


def test_sweep_block_scale_flat(tmp_path):
    out = tmp_path / "s"
    rc = main(
        [
            "sweep",
            "--op",
            "hilbert",
            "--params",
            "1,1,2,-1/2",
            "--schedule=-2,0,2",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    rows = read_csv(str(tmp_path / "s.csv"))
    vals = [r[1] for r in rows]
    assert max(vals) / min(vals) < 1.0 + 1e-6  # dilation covariance end to end


def test_sweep_rejects_fractional_scales(tmp_path):
    rc = main(
        ["sweep", "--op", "hilbert", "--params", "1,1,2,-1/2", "--schedule", "0.5", "--out", str(tmp_path / "s")]
    )
    assert rc == 2


def test_sweep_unknown_kind_exits_2(tmp_path):
    assert main(["sweep", "--op", "resolvent", "--params", "1,1,2,0", "--out", str(tmp_path / "s")]) == 2
