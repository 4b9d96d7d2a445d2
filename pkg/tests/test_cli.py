import json

import pytest

from wkbcluster.cli import main, parse_angle, parse_theta_range
from wkbcluster.errors import ConfigError


def job(tmp_path, **cfg):
    p = tmp_path / "job.json"
    p.write_text(json.dumps(cfg))
    return str(p)


def test_parse_angle():
    assert parse_angle("-pi/10") == pytest.approx(-0.3141592653589793)
    assert parse_angle("0.25") == 0.25
    with pytest.raises(ConfigError):
        parse_angle("__import__('os')")


def test_parse_theta_range():
    assert parse_theta_range("-pi/10:pi/10:5")[2] == 5
    with pytest.raises(ConfigError):
        parse_theta_range("0:1")


def test_mutate_pentagon_table(tmp_path, capsys):
    cfg = job(tmp_path, B=[[0, 1], [-1, 0]], sequence=[1, 2, 1, 2, 1], nu=[2, 1])
    out = tmp_path / "out.json"
    assert main(["mutate", "--config", cfg, "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data["seeds"]) == 6
    assert data["seeds"][-1]["x"] == ["x2", "x1"]
    assert data["seeds"][-1]["y"] == ["y2", "y1"]
    assert data["period"] is True
    assert "nu-period: yes" in capsys.readouterr().out


def test_mutate_empty_sequence_echoes_seed(tmp_path, capsys):
    cfg = job(tmp_path, B=[[0, 1], [-1, 0]], sequence=[])
    assert main(["mutate", "--config", cfg, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [r["x"] for r in data["seeds"]] == [["x1", "x2"]]


def test_invalid_index_exit_code(tmp_path, capsys):
    cfg = job(tmp_path, B=[[0, 1], [-1, 0]], sequence=[1, 3])
    assert main(["mutate", "--config", cfg]) == 2
    assert "sequence" in capsys.readouterr().err


def test_bad_json_exit_code(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["mutate", "--config", str(p)]) == 2


def test_period_failure_exit_code(tmp_path):
    cfg = job(tmp_path, B=[[0, 1], [-1, 0]], sequence=[1], nu=[1, 2])
    assert main(["period", "--config", cfg]) == 3


def test_identity_pentagon(tmp_path, capsys):
    cfg = job(tmp_path, B=[[0, 1], [-1, 0]], sequence=[1, 2, 1, 2, 1], nu=[2, 1])
    assert main(["identity", "--config", cfg]) == 0
    out = capsys.readouterr().out
    assert "S_{g2} S_{g1} = S_{g1} S_{g1+g2} S_{g2}" in out
    assert "verified: yes" in out


def test_identity_trivial(tmp_path, capsys):
    cfg = job(tmp_path, B=[[0, 1], [-1, 0]], sequence=[2, 2])
    assert main(["identity", "--config", cfg]) == 0


def test_identity_non_period_exit_code(tmp_path):
    cfg = job(tmp_path, B=[[0, 1], [-1, 0]], sequence=[1, 2])
    assert main(["identity", "--config", cfg]) == 3


def test_identity_digon_with_pops(tmp_path, capsys):
    cfg = job(tmp_path, sequence=[1, 2, 1, 2], triangulation="punctured_digon")
    assert main(["identity", "--config", cfg, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verified"] and data["chain_closes"] and data["extended_period"]
    assert [m["kind"] for m in data["lift"]] == ["flip", "flip", "pop", "flip", "flip", "pop"]


def test_riccati_command(tmp_path, capsys):
    cfg = job(tmp_path, potential="weber")
    assert main(["riccati", "--config", cfg, "--order", "3"]) == 0
    assert "residual vanishes through eta^-3: True" in capsys.readouterr().out


def test_trace_airy_svg(tmp_path, capsys):
    cfg = job(tmp_path, potential="airy")
    svg = tmp_path / "airy.svg"
    assert main(["trace", "--config", cfg, "--svg", str(svg), "--theta", "0"]) == 0
    assert svg.read_text().count("<polyline") == 3
    assert "0 strips, 3 half planes" in capsys.readouterr().out


def test_rotate_weber(tmp_path, capsys):
    cfg = job(tmp_path, potential="weber")
    out = tmp_path / "rot.json"
    stem = tmp_path / "frame.svg"
    assert main(["rotate", "--config", cfg, "--theta", "-pi/10:pi/10:5", "--out", str(out),
                 "--svg", str(stem)]) == 0
    data = json.loads(out.read_text())
    assert [e["kind"] for e in data["events"]] == ["regular"]
    assert len(list(tmp_path.glob("frame_*.svg"))) == 5
    assert "move: mu_1^(-)" in capsys.readouterr().out


def test_rotate_degenerate(tmp_path, capsys):
    cfg = job(tmp_path, Q0="-(z+2*i)*(z-3*i)/z^2", theta="-0.2:0.2:5")
    assert main(["rotate", "--config", cfg]) == 0
    assert "kappa_p0^(-)" in capsys.readouterr().out


def test_triangulate_from_potential(tmp_path, capsys):
    cfg = job(tmp_path, Q0="z*(z+1)*(z+i)", theta="0")
    assert main(["triangulate", "--config", cfg, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["census"] == [2, 5]
    assert data["B"] in ([[0, 1], [-1, 0]], [[0, -1], [1, 0]])


def test_triangulate_fixture(tmp_path, capsys):
    cfg = job(tmp_path, triangulation="octagon")
    assert main(["triangulate", "--config", cfg, "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["B"][0] == [0, 1, -1, 0, 0]


def test_numerical_failure_exit_code(tmp_path):
    cfg = job(tmp_path, Q0="(z-1)^2*(z+1)")
    assert main(["trace", "--config", cfg]) == 4


def test_unknown_potential_exit_code(tmp_path):
    cfg = job(tmp_path, potential="nope")
    assert main(["trace", "--config", cfg]) == 2
