"""CLI behavior: outputs, exit codes, determinism, --emit round trip."""

from __future__ import annotations

import io

import pytest

from kirbycalc.cli import run
from kirbycalc.golden import ODD_SPLIT, S2XS2, TWIST_MERIDIAN
from kirbycalc.lang import parse_diagram, serialize_diagram


def _invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture()
def s2xs2(tmp_path):
    p = tmp_path / "s2xs2.kd"
    p.write_text(S2XS2)
    return str(p)


def test_invariants_success(s2xs2):
    code, out, err = _invoke(["invariants", s2xs2])
    assert code == 0 and err == ""
    assert out == (
        "h1_invariant_factors: none\n"
        "h2_rank: 2\n"
        "form_rank: 2\n"
        "signature: 0\n"
        "parity: even\n"
        "gram_torsion: 1 1\n"
        "three_handle_flag: false\n"
    )


def test_invariants_empty(tmp_path):
    p = tmp_path / "empty.kd"
    p.write_text("diagram empty\n")
    code, out, _ = _invoke(["invariants", str(p)])
    assert code == 0
    assert "h2_rank: 0" in out and "signature: 0" in out


def test_gluck_prints_pre_post_and_diagram(s2xs2):
    code, out, _ = _invoke(["gluck", s2xs2, "--sphere", "S"])
    assert code == 0
    assert "pre.parity: even" in out
    assert "post.parity: odd" in out
    assert "post.signature: 0" in out and "post.form_rank: 2" in out
    assert "handle K word 1 framing 1" in out


def test_check_unknown_exits_1(s2xs2):
    code, out, _ = _invoke(["check", s2xs2, "--sphere", "S"])
    assert code == 1
    assert out == "verdict: unknown\n"


def test_check_certified_exits_0(tmp_path):
    p = tmp_path / "odd.kd"
    p.write_text(ODD_SPLIT)
    code, out, _ = _invoke(["check", str(p), "--sphere", "S"])
    assert code == 0
    assert out.startswith("verdict: certified\nwitness: handle E\n")


def test_check_with_certificate_file(tmp_path):
    from kirbycalc.golden import CERT_DEMO

    d = tmp_path / "d.kd"
    d.write_text(CERT_DEMO)
    c = tmp_path / "c.cert"
    c.write_text("term A sign + conj 1\nterm B sign - conj 1\n")
    code, out, _ = _invoke(["check", str(d), "--sphere", "S", "--cert", str(c)])
    assert code == 0
    assert "witness: certificate" in out


def test_apply_emit_round_trip(tmp_path, s2xs2):
    ks = tmp_path / "moves.ks"
    ks.write_text("gluck S sign +\nslide K over S sign - band 1\n")
    emitted = tmp_path / "out.kd"
    code, out, _ = _invoke(["apply", s2xs2, str(ks), "--emit", str(emitted), "--log"])
    assert code == 0
    assert "step 1:" in out and "step 2:" in out and "hash: " in out
    reparsed = parse_diagram(emitted.read_text())
    assert serialize_diagram(reparsed) in out


def test_surger_emits_diagram(s2xs2):
    code, out, _ = _invoke(["surger", s2xs2, "--sphere", "S", "--dot", "g"])
    assert code == 0
    assert out == "diagram X\ndots g\nhandle K word g framing 0\n"


def test_trivialize_certifies(tmp_path):
    p = tmp_path / "m.kd"
    p.write_text(TWIST_MERIDIAN)
    code, out, _ = _invoke(["trivialize", str(p), "--sphere", "S", "--handle", "K"])
    assert code == 0
    assert out.startswith("verdict: certified\n")
    assert "slide K over C sign - band 1" in out


def test_trivialize_budget_zero_unknown(tmp_path):
    p = tmp_path / "m.kd"
    p.write_text(TWIST_MERIDIAN)
    code, out, _ = _invoke(["trivialize", str(p), "--sphere", "S", "--handle", "K", "--budget", "0"])
    assert code == 1
    assert out == "verdict: unknown\n"


def test_trivialize_negative_budget_usage_error(tmp_path):
    p = tmp_path / "m.kd"
    p.write_text(TWIST_MERIDIAN)
    code, _, err = _invoke(["trivialize", str(p), "--sphere", "S", "--handle", "K", "--budget", "-5"])
    assert code == 2
    assert "budget" in err


def test_budget_env_default(tmp_path, monkeypatch):
    monkeypatch.setenv("KIRBY_BUDGET", "0")
    p = tmp_path / "m.kd"
    p.write_text(TWIST_MERIDIAN)
    code, out, _ = _invoke(["trivialize", str(p), "--sphere", "S", "--handle", "K"])
    assert code == 1 and out == "verdict: unknown\n"


def test_parse_error_exits_2(tmp_path):
    p = tmp_path / "bad.kd"
    p.write_text("handle h word ghost framing 0\n")
    code, out, err = _invoke(["invariants", str(p)])
    assert code == 2 and out == ""
    assert "line 1" in err and "col 15" in err


def test_missing_file_exits_2(tmp_path):
    code, _, err = _invoke(["invariants", str(tmp_path / "nope.kd")])
    assert code == 2
    assert "error:" in err


def test_move_error_exits_3(tmp_path, s2xs2):
    ks = tmp_path / "bad.ks"
    ks.write_text("cancel12 g K\n")  # no dot g in the diagram
    code, _, err = _invoke(["apply", s2xs2, str(ks)])
    assert code == 3
    assert "step 1" in err


def test_bad_certificate_exits_3(tmp_path, s2xs2):
    c = tmp_path / "c.cert"
    c.write_text("term K sign + conj 1\n")  # boundary word g, not trivial after surgery
    code, _, err = _invoke(["check", s2xs2, "--sphere", "S", "--cert", str(c)])
    assert code == 3
    assert "certificate" in err


def test_usage_error_exits_2():
    code, _, _ = _invoke(["gluck"])  # missing required args
    assert code == 2
    code, _, _ = _invoke(["not-a-command"])
    assert code == 2


def test_byte_identical_reruns(tmp_path, s2xs2):
    p = tmp_path / "m.kd"
    p.write_text(TWIST_MERIDIAN)
    for argv in (
        ["invariants", s2xs2],
        ["gluck", s2xs2, "--sphere", "S"],
        ["trivialize", str(p), "--sphere", "S", "--handle", "K"],
        ["selftest"],
    ):
        first = _invoke(argv)
        second = _invoke(argv)
        assert first == second


def test_selftest_passes():
    code, out, _ = _invoke(["selftest"])
    assert code == 0
    assert "FAIL" not in out
    assert out.rstrip().endswith("passed")
