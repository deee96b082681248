import json

import numpy as np
import pytest

from discos import (
    charfn_discrete,
    DiscreteDist,
    filtered_cdf,
    raised_cosine,
    sample_coefficients,
)
from discos.cli import build_parser, main, parse_position, read_artifact_header

PI = np.pi

TWO_POINT_DOC = {"type": "discrete",
                 "points": [PI / 4, PI / 2],
                 "probs": [0.4, 0.6]}


@pytest.fixture
def twopoint(tmp_path):
    path = tmp_path / "twopoint.json"
    path.write_text(json.dumps(TWO_POINT_DOC))
    return str(path)


def read_rows(path):
    header = read_artifact_header(path)
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    cols = lines[1].split(",")
    rows = [ln.split(",") for ln in lines[2:] if not ln.startswith("#")]
    return header, cols, rows


def test_pi_literals():
    assert parse_position("0.6pi") == pytest.approx(0.6 * PI)
    assert parse_position("pi") == PI
    assert parse_position("-pi") == -PI
    assert parse_position("-0.5pi") == pytest.approx(-PI / 2)
    assert parse_position("1.25") == 1.25


def test_cdf_command_matches_engine(twopoint, tmp_path):
    out = tmp_path / "cdf.csv"
    rc = main(["cdf", "--model", twopoint, "-K", "64", "--a", "0", "--b", "pi",
               "--at", "0.6pi", "-o", str(out)])
    assert rc == 0
    header, cols, rows = read_rows(out)
    assert cols == ["x", "value"]
    dist = DiscreteDist(TWO_POINT_DOC["points"], TWO_POINT_DOC["probs"])
    exp = sample_coefficients(charfn_discrete(dist), 0.0, PI, 64)
    expected = filtered_cdf(exp, raised_cosine(), 0.6 * PI)
    assert float(rows[0][1]) == expected  # 17 significant digits round-trip


def test_artifact_regenerates_bit_identically(twopoint, tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    argv = ["convergence", "--model", twopoint, "--at", "0.6pi", "--filter", "rcos",
            "-K", "16,32,64", "--a", "0", "--b", "pi"]
    assert main(argv + ["-o", str(out1)]) == 0
    # replay the command line recorded in the artifact's own header
    header = read_artifact_header(out1)
    assert main(header["argv"] + ["-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_convergence_errors_match_direct_computation(twopoint, tmp_path):
    out = tmp_path / "conv.csv"
    assert main(["convergence", "--model", twopoint, "--at", "0.6pi", "--filter", "rcos",
                 "-K", "16,32", "--a", "0", "--b", "pi", "-o", str(out)]) == 0
    _, _, rows = read_rows(out)
    dist = DiscreteDist(TWO_POINT_DOC["points"], TWO_POINT_DOC["probs"])
    for row in rows:
        K = int(row[0])
        exp = sample_coefficients(charfn_discrete(dist), 0.0, PI, K)
        err = abs(filtered_cdf(exp, raised_cosine(), 0.6 * PI) - 1.0)
        assert float(row[3]) == pytest.approx(err, rel=1e-12)


def test_malformed_model_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"type": "discrete", "points": [1.0]}')
    rc = main(["cdf", "--model", str(bad), "-K", "8", "--a", "0", "--b", "pi"])
    assert rc == 2
    assert "missing field" in capsys.readouterr().err


def test_bounds_clean_sweep_exits_0(tmp_path):
    out = tmp_path / "bounds.csv"
    rc = main(["bounds", "--filter", "rcos", "-K", "16,32", "--grid", "100", "-o", str(out)])
    assert rc == 0
    header, cols, rows = read_rows(out)
    assert cols == ["K", "x", "abs_K1", "bound", "admissible"]
    assert len(rows) == 2 * 100
    text = out.read_text()
    assert "violations=0" in text


def test_bounds_all_pass_rejected(capsys):
    assert main(["bounds", "--filter", "none", "-K", "16", "--grid", "10"]) == 2


def test_trace_command(tmp_path):
    out = tmp_path / "trace.csv"
    rc = main(["trace", "--filter", "srcos", "--at", "0.5", "-K", "16,64,256", "-o", str(out)])
    assert rc == 0
    _, cols, rows = read_rows(out)
    assert cols == ["K", "abs_K1", "bound", "admissible"]
    assert [int(r[0]) for r in rows] == [16, 64, 256]


def test_pmf_command(twopoint, tmp_path):
    out = tmp_path / "pmf.csv"
    rc = main(["pmf", "--model", twopoint, "-K", "256", "--a", "0", "--b", "pi", "-o", str(out)])
    assert rc == 0
    _, cols, rows = read_rows(out)
    masses = [float(r[1]) for r in rows]
    assert masses == pytest.approx([0.4, 0.6], abs=1e-3)


def test_moment_command(twopoint, tmp_path):
    out = tmp_path / "m.csv"
    rc = main(["moment", "--model", twopoint, "-K", "256", "--filter", "srcos",
               "--q", "1,2", "--a", "0", "--b", "pi", "-o", str(out)])
    assert rc == 0
    _, _, rows = read_rows(out)
    assert float(rows[0][1]) == pytest.approx(0.4 * PI, abs=1e-9)


def test_cdf2d_command(tmp_path):
    doc = {"type": "product", "x": TWO_POINT_DOC, "y": TWO_POINT_DOC}
    path = tmp_path / "prod.json"
    path.write_text(json.dumps(doc))
    out = tmp_path / "c2.csv"
    rc = main(["cdf2d", "--model", str(path), "--K1", "32", "--K2", "32",
               "--a", "0", "--b", "pi", "--at", "pi:pi,0.6pi:0.6pi", "-o", str(out)])
    assert rc == 0
    _, cols, rows = read_rows(out)
    assert cols == ["x1", "x2", "value"]
    assert float(rows[0][2]) == pytest.approx(1.0, abs=1e-12)


def test_oracle_exact_and_mc(twopoint, tmp_path):
    out = tmp_path / "o.csv"
    rc = main(["oracle", "cdf", "--model", twopoint, "--at", "0.6pi,0.1", "-o", str(out)])
    assert rc == 0
    _, _, rows = read_rows(out)
    assert [float(r[1]) for r in rows] == [1.0, 0.0]

    gpb = tmp_path / "gpb.json"
    gpb.write_text(json.dumps({"type": "pb", "p": [0.5, 0.5]}))
    out2 = tmp_path / "o2.csv"
    rc = main(["oracle", "cdf", "--model", str(gpb), "--method", "mc",
               "--paths", "20000", "--seed", "9", "--at", "0.5,1.5", "-o", str(out2)])
    assert rc == 0
    _, _, rows = read_rows(out2)
    assert float(rows[0][1]) == pytest.approx(0.25, abs=0.02)


def test_hawkes_command(tmp_path):
    doc = {"type": "hawkes", "kappa": 1.2, "c": 1.0, "delta": 0.7, "loss_rate": 5 / 6,
           "t": 1.0, "T": 2.0, "lambda_t": 1.0, "L_t": 0.7, "N_t": 3}
    cfg = tmp_path / "h.json"
    cfg.write_text(json.dumps(doc))
    out = tmp_path / "h.csv"
    rc = main(["hawkes", "--config", str(cfg), "-K", "64", "--steps", "400",
               "--filter", "srcos", "--what", "moment", "-o", str(out)])
    assert rc == 0
    _, _, rows = read_rows(out)
    assert float(rows[0][1]) == pytest.approx(4.3738, abs=5e-3)


def test_gpb_command(tmp_path):
    doc = {"type": "gpb", "a": [0.0, 0.1], "b": [1.0, 0.8], "p": [0.3, 0.6]}
    cfg = tmp_path / "g.json"
    cfg.write_text(json.dumps(doc))
    out = tmp_path / "g.csv"
    rc = main(["gpb", "--config", str(cfg), "-K", "64", "--what", "cdf",
               "--at", "1.85", "-o", str(out)])
    assert rc == 0
    _, _, rows = read_rows(out)
    assert 0.9 < float(rows[0][1]) <= 1.001


def test_help_enumerates_documented_flags(capsys):
    parser = build_parser()
    texts = [parser.format_help()]
    for action in parser._subparsers._group_actions:
        for sub in action.choices.values():
            texts.append(sub.format_help())
    blob = "\n".join(texts)
    for flag in ("--filter", "--alpha", "--exp-order", "--range", "--a", "--b",
                 "--at", "--grid", "--steps", "--method", "--seed", "--output",
                 "-K", "--K1", "--K2", "--dx", "--q", "--paths", "--model", "--config"):
        assert flag in blob, flag


def test_exp_filter_flags(tmp_path):
    out = tmp_path / "t.csv"
    rc = main(["trace", "--filter", "exp", "--alpha", "16", "--at", "0.5",
               "-K", "16,32", "-o", str(out)])
    assert rc == 0
    rc = main(["trace", "--filter", "exp", "--alpha", "k2", "--at", "0.5",
               "-K", "16,32", "-o", str(out)])
    assert rc == 0
    # odd exponential order is a validation failure
    assert main(["trace", "--filter", "exp", "--alpha", "16", "--exp-order", "3",
                 "--at", "0.5", "-K", "16"]) == 2
