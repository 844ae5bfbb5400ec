from __future__ import annotations

import json

import pytest

from stickel.cli import main
from stickel.grouprings import GroupRingElement
from stickel.tower import IwasawaElement


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_stick_text(capsys):
    code, out = run(capsys, "stick", "--f", "3")
    assert code == 0 and "-1/6*[1] + 1/6*[2]" in out.out


def test_stick_real(capsys):
    code, out = run(capsys, "stick", "--f", "5", "--H", "-1")
    assert code == 0 and "0 (real field)" in out.out


def test_stick_restriction_json(capsys):
    code, out = run(capsys, "--format", "json", "stick", "--f", "15", "--restrict", "3", "--c", "7")
    rep = json.loads(out.out)
    assert code == 0 and rep["restriction"]["equal"]
    sc = GroupRingElement.from_json(rep["sigma_c"])
    assert sc.is_integral()


def test_iwasawa_index(capsys):
    code, out = run(capsys, "--format", "json", "iwasawa", "--ell", "3", "--f", "3", "--tdeg-N", "27",
                    "index", "--c", "5,7", "--n", "1")
    rep = json.loads(out.out)
    assert code == 0 and rep["index"]["certified"] and rep["index"]["valuation"] is not None


def test_iwasawa_selftests(capsys):
    assert run(capsys, "iwasawa", "--ell", "3", "--f", "3", "mirror", "--selftest")[0] == 0
    assert run(capsys, "iwasawa", "--ell", "3", "--f", "3", "twist", "--i", "0", "--selftest")[0] == 0


def test_iwasawa_json_roundtrip(capsys):
    code, out = run(capsys, "--format", "json", "iwasawa", "--ell", "5", "--f", "5", "mirror", "--c", "3")
    rep = json.loads(out.out)
    x = IwasawaElement.from_json(rep["result"])
    assert x.to_json() == rep["result"]


@pytest.mark.parametrize("argv", [
    ("verify", "kummer", "--ell", "37"),
    ("verify", "hminus", "--p", "23"),
    ("verify", "degree-zero", "--ell", "5", "--count", "20", "--seed", "1"),
    ("--ell", "37", "verify", "consistency", "--prec-M", "10"),
    ("verify", "bernoulli", "--fmax", "60"),
    ("verify", "restriction", "--fmax", "30"),
])
def test_verify_suites_pass(capsys, argv):
    code, out = run(capsys, "--format", "json", *argv)
    rep = json.loads(out.out)
    assert code == 0 and rep["pass"]


def test_kummer_flags_irregular(capsys):
    _, out = run(capsys, "--format", "json", "verify", "kummer", "--ell", "37")
    assert json.loads(out.out)["irregular"] == [[37, 32]]


def test_hminus_value(capsys):
    _, out = run(capsys, "--format", "json", "verify", "hminus", "--p", "23")
    assert json.loads(out.out)["h_minus"] == {"23": 3}


def test_exit_codes(capsys):
    assert run(capsys, "stick", "--f", "6")[0] == 3
    assert run(capsys, "iwasawa", "--ell", "3", "--f", "21", "mirror", "--selftest")[0] == 3
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "stick", "--f", "x")[0] == 2


def test_cache_dir(capsys, tmp_path):
    code, _ = run(capsys, "--cache-dir", str(tmp_path), "verify", "kummer", "--ell", "11")
    assert code == 0 and (tmp_path / "bernoulli.json").exists()
    from stickel.bernoulli import set_cache
    set_cache(None)


def test_deterministic_output(capsys):
    a = run(capsys, "--format", "json", "verify", "degree-zero", "--ell", "3", "--count", "5", "--seed", "4")[1].out
    b = run(capsys, "--format", "json", "verify", "degree-zero", "--ell", "3", "--count", "5", "--seed", "4")[1].out
    assert a == b
