"""Command line behaviour and exit codes."""

import json

from metsymp.cli import main

GOOD_FILE = """
chart x [-1.5, 1.5]
chart y [-1.5, 1.5]
chart z [-1.5, 1.5]
eta x = -y
eta z = 1
g x x = 1/2 + y^2
g x z = -y
g y y = 1/2
g z z = 1
phi x y = 1
phi y x = -1
phi z y = y
"""

INCOMPATIBLE_FILE = GOOD_FILE.replace("g y y = 1/2", "g y y = 1")

BROKEN_FILE = GOOD_FILE.replace("eta x = -y", "eta x = -y +")


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "darboux-sasakian-r3" in out
    assert "unit-tangent-flat-plane" in out


def test_check_text(capsys):
    assert main(["check", "darboux-sasakian-r3", "--samples", "10", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 16
    assert "[FAIL]" not in out


def test_check_json_to_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code = main(["check", "unit-tangent-flat-plane", "--samples", "10",
                 "--format", "json", "--out", str(out_path)])
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["entry"] == "unit-tangent-flat-plane"
    assert payload["summary"]["failed"] == 0
    assert {c["id"] for c in payload["checks"]} >= {"compatibility", "ricci_rows"}


def test_check_unknown_entry(capsys):
    assert main(["check", "missing-entry"]) == 2
    assert "unknown entry" in capsys.readouterr().err


def test_check_bad_t_range(capsys):
    assert main(["check", "darboux-sasakian-r3", "--t-range", "1;2"]) == 2


def test_check_bad_samples(capsys):
    assert main(["check", "darboux-sasakian-r3", "--samples", "0"]) == 2


def test_fit_entry(capsys):
    assert main(["fit-kmu", "unit-tangent-flat-plane", "--samples", "15"]) == 0
    out = capsys.readouterr().out
    assert "kappa=0" in out and "mu=0" in out and "index=1" in out


def test_fit_file(tmp_path, capsys):
    path = tmp_path / "s.txt"
    path.write_text(GOOD_FILE)
    assert main(["fit-kmu", str(path), "--samples", "15"]) == 0
    out = capsys.readouterr().out
    assert "kappa=1" in out and "mu=undefined" in out


def test_fit_incompatible_file_fails(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text(INCOMPATIBLE_FILE)
    assert main(["fit-kmu", str(path), "--samples", "15"]) == 1
    assert "compatibility" in capsys.readouterr().out


def test_fit_parse_error(tmp_path, capsys):
    path = tmp_path / "broken.txt"
    path.write_text(BROKEN_FILE)
    assert main(["fit-kmu", str(path)]) == 2
    err = capsys.readouterr().err
    assert "line 5" in err


def test_fit_missing_path(capsys):
    assert main(["fit-kmu", "no-such-entry-or-file"]) == 2


def test_symplectize(capsys):
    assert main(["symplectize", "darboux-sasakian-r3"]) == 0
    out = capsys.readouterr().out
    assert "product chart" in out


def test_symplectize_verify(capsys):
    assert main(["symplectize", "unit-tangent-flat-plane", "--verify",
                 "--samples", "15"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 8


def test_dhomothety_verify(capsys):
    assert main(["dhomothety", "unit-tangent-flat-plane", "--a", "2",
                 "--verify", "--samples", "15"]) == 0
    out = capsys.readouterr().out
    assert "(0.75, 1)" in out
    assert "[PASS]" in out


def test_dhomothety_bad_factor(capsys):
    assert main(["dhomothety", "unit-tangent-flat-plane", "--a", "-1"]) == 2
