import json

import pytest

from polystrength import __version__
from polystrength.cli import main


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    monkeypatch.setenv("POLYSTRENGTH_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_strength_astr(capsys):
    code, env, _ = run(capsys, "strength", "--field", "QQ", "--form", "x1^2+x2^2", "--mode", "astr")
    assert code == 0 and env["payload"]["astr"] == 1
    assert env["version"] == __version__ and env["field"] == "QQ" and env["form"] == "x1^2+x2^2"
    assert set(env) == {"command", "field", "form", "payload", "timing", "version", "cache_hit"}


def test_strength_exact_with_witness(capsys):
    code, env, _ = run(capsys, "strength", "--field", "GF(2)", "--form", "x1*x2+x3*x4", "--mode", "exact")
    assert code == 0
    p = env["payload"]
    assert p["status"] == "Exact" and p["upper"]["value"] == 2 and p["verified"]
    assert p["upper"]["witness"] == [["x1", "x2"], ["x3", "x4"]]


def test_torsor_delta(capsys):
    code, env, _ = run(capsys, "torsor", "delta", "--field", "QQ", "--base", "a", "--fiber", "x", "--f", "x^2")
    assert code == 0 and env["payload"]["components"] == {"0": "x^2", "1": "2*x*y", "2": "y^2"}


def test_torsor_other_actions(capsys):
    code, env, _ = run(capsys, "torsor", "derive", "--field", "QQ", "--fiber", "x1,x2", "--f", "x1*x2", "--r", "x1=1,x2=0")
    assert code == 0 and env["payload"]["derivative"] == "x2" and env["payload"]["level"] == 2
    code, env, _ = run(capsys, "torsor", "descend", "--field", "GF(2)", "--base", "a,b", "--fiber", "x", "--f", "a*x^2+b*x^4")
    assert code == 0 and env["payload"]["q"] == 2
    code, env, _ = run(capsys, "torsor", "witness", "--field", "GF(3)", "--n", "2", "--f", "zu1u2^2-zu1u1*zu2u2",
                       "--phi", "u1:e1=1;u2:e2=1")
    assert code == 0 and env["payload"]["passed"]


def test_falsified_exit_code(capsys):
    # not in the rank-one ideal: reported, exit 2
    code, env, _ = run(capsys, "torsor", "witness", "--field", "QQ", "--f", "zu1u1", "--phi", "u1:e1=1;u2:e2=1")
    assert code == 2 and env["payload"]["passed"] is False
    code, env, _ = run(capsys, "extend", "--field", "QQ", "--form", "x1*x2+x3*x4", "--target-s", "1")
    assert code == 2 and not env["payload"]["found"]


def test_extend(capsys):
    code, env, _ = run(capsys, "extend", "--field", "QQ", "--form", "x1^2+x2^2", "--target-s", "1")
    assert code == 0 and env["payload"]["field"] == "QQ[i]/(i^2+1)"


def test_glcase(capsys):
    code, env, _ = run(capsys, "glcase", "shift-dims", "--a", "2", "--m", "1", "--n", "2")
    assert code == 0 and env["payload"]["total"] == 6
    code, env, _ = run(capsys, "glcase", "ns-check", "--n", "2")
    assert code == 0 and env["payload"]["passed"]


def test_usage_errors_emit_nothing(capsys):
    for argv in (
        ["strength", "--field", "QQ", "--form", "x1^2+"],
        ["strength", "--field", "QX", "--form", "x1^2"],
        ["strength", "--field", "QQ", "--form", "x1^2", "--mode", "exact"],
        ["strength", "--field", "QQ", "--form", "x1+x2"],
        ["strength", "--field", "QQ"],
        ["torsor", "witness", "--field", "QQ", "--f", "zu1u1", "--phi", "u1:e1=1;u2:e1=1"],
        ["torsor", "witness", "--field", "QQ", "--f", "zu1u2^2-zu1u1*zu2u2", "--phi", "u1:e1=1;u2:e2=1",
         "--r0", "ze1e1=1"],
        ["torsor", "witness", "--field", "QQ", "--f", "ze1e1", "--phi", "u1:e1=1;u2:e2=1"],
        ["glcase", "ns-check", "--n", "0"],
        ["bogus"],
    ):
        code, env, err = run(capsys, *argv)
        assert code == 1 and env is None and err


def test_cache_hit_and_determinism(capsys, cache):
    argv = ["strength", "--field", "GF(3)", "--form", "x1^3+x2^3+x3^3", "--mode", "exact"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    _, fresh, _ = run(capsys, *argv, "--no-cache")
    assert not first["cache_hit"] and second["cache_hit"] and not fresh["cache_hit"]
    assert json.dumps(first["payload"], sort_keys=True) == json.dumps(second["payload"], sort_keys=True)
    assert first["payload"] == fresh["payload"]
    assert any(cache.glob("*.json"))


def test_corrupt_cache_entry_is_recomputed(capsys, cache):
    argv = ["glcase", "shift-dims", "--a", "3", "--m", "2", "--n", "2"]
    run(capsys, *argv)
    for f in cache.glob("*.json"):
        f.write_text("{not json")
    code, env, _ = run(capsys, *argv)
    assert code == 0 and not env["cache_hit"] and env["payload"]["total"] == 20


def test_pretty(capsys):
    main(["glcase", "shift-dims", "--a", "1", "--m", "1", "--n", "1", "--pretty"])
    out = capsys.readouterr().out
    assert out.startswith("{\n  ")


def test_verify_subset(capsys):
    code, env, err = run(capsys, "verify", "--criteria", "1,8")
    assert code == 0 and env["payload"]["passed"]
    assert "[PASS] criterion 1" in err and "[PASS] criterion 8" in err
