import json
import subprocess
import sys

import pytest

from qsuper.cli import main
from qsuper.report import CheckReport, summary_table

KEYS = {"check", "params", "status", "witness", "ms"}


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return [json.loads(l) for l in text.splitlines() if l.strip()]


def strip_ms(text):
    out = []
    for d in records(text):
        d.pop("ms")
        out.append(json.dumps(d, sort_keys=True))
    return out


@pytest.mark.parametrize("argv", [
    ["ybe", "--M", "9", "--N", "9"],
    ["ybe", "--M", "2"],
    ["ybe", "--M", "0", "--N", "2"],
    ["ope", "--M", "2", "--N", "1"],
    ["ope", "--rule", "no.such", "--M", "2", "--N", "1"],
    ["weakeq", "--prop", "8"],
    ["weakeq", "--prop", "7", "--M", "1", "--N", "2"],
    ["weakeq", "--prop", "3", "--M", "2", "--N", "1"],
    ["invert", "--M", "2", "--N", "1", "--q", "3/2"],
    ["constants", "--q", "x"],
    ["crossing", "--order", "0", "--M", "2", "--N", "1"],
    ["suite", "--max-mn", "2"],
    ["ybe", "--M", "2", "--N", "1", "--jobs", "0"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and out == "" and err


def test_initial_is_report_only(capsys):
    code, out, _ = run(["initial", "--M", "2", "--N", "1", "--convention", "paper"], capsys)
    (d,) = records(out)
    assert code == 0 and set(d) == KEYS
    assert d["status"] == "report-only"
    assert d["params"] == {"M": 2, "N": 1, "convention": "paper"}
    assert d["witness"]["I"]["outcome"] in ("equal", "equal up to global sign", "failure")


def test_initial_defaults_to_both_conventions(capsys):
    _, out, _ = run(["initial", "--M", "1", "--N", "2"], capsys)
    assert [d["params"]["convention"] for d in records(out)] == ["paper", "flipped"]


def test_pass_exits_zero_and_failure_exits_one(capsys):
    code, out, _ = run(["ybe", "--M", "2", "--N", "1"], capsys)
    assert code == 0 and records(out)[0]["status"] == "pass" and records(out)[0]["witness"] is None
    code, out, _ = run(["composite", "--M", "2", "--N", "1"], capsys)
    assert code == 1
    assert all(d["status"] == "fail" and d["witness"] for d in records(out))


def test_rerun_is_byte_identical_modulo_time(capsys):
    argv = ["ope", "--rule", "phistar.phistar", "--sorted"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert strip_ms(a) == strip_ms(b) and len(strip_ms(a)) == 6


def test_jobs_changes_only_order(capsys):
    argv = ["fmu", "--M", "2", "--N", "3"]
    _, a, _ = run(argv + ["--jobs", "1"], capsys)
    _, b, _ = run(argv + ["--jobs", "3"], capsys)
    assert sorted(strip_ms(a)) == sorted(strip_ms(b))
    _, c, _ = run(argv + ["--jobs", "3", "--sorted"], capsys)
    assert strip_ms(c) == sorted(strip_ms(c), key=lambda s: (json.loads(s)["check"],
                                                          json.dumps(json.loads(s)["params"], sort_keys=True)))


def test_jobs_env_default(monkeypatch):
    from qsuper import cli
    monkeypatch.setenv(cli.JOBS_ENV, "3")
    assert cli.build_parser().parse_args(["ybe"]).jobs == 3
    monkeypatch.setenv(cli.JOBS_ENV, "junk")
    assert cli.build_parser().parse_args(["ybe"]).jobs == 1


def test_summary_table(capsys):
    code, out, _ = run(["fmu", "--M", "2", "--N", "1", "--summary"], capsys)
    assert code == 0 and "fmu" in out and "3 checks, 0 failed" in out


def test_ope_list(capsys):
    code, out, _ = run(["ope", "--list", "--M", "1", "--N", "2"], capsys)
    assert code == 0 and "hstar.1L" in out and "x+top.psistar" in out


def test_weakeq_zero_block(capsys):
    code, out, _ = run(["weakeq", "--prop", "5prime", "--M", "0", "--N", "3", "--samples", "5"], capsys)
    assert code == 0 and len(records(out)) == 2


def test_q_and_precision_flags(capsys):
    code, out, _ = run(["constants", "--M", "3", "--N", "1", "--q", "1/5", "--precision", "1e-12"], capsys)
    (d,) = records(out)
    assert code == 0 and d["params"]["q"] == "1/5" and d["params"]["precision"] == 1e-12


def test_report_roundtrip():
    r = CheckReport("x", {"M": 1}, "pass", None, 1.23)
    assert CheckReport.from_json(r.to_json()).as_dict() == r.as_dict()
    with pytest.raises(ValueError):
        CheckReport("x", {}, "maybe")
    assert "1 checks, 0 failed" in summary_table([r])


def test_console_entry_point():
    p = subprocess.run([sys.executable, "-m", "qsuper.cli", "ybe", "--M", "1", "--N", "2"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["check"] == "ybe"


def test_exchange_only_phi_phi_fails_and_variant_rescues(capsys):
    code, out, _ = run(["exchange", "--M", "2", "--N", "1"], capsys)
    recs = records(out)
    assert code == 1
    assert recs[-1]["params"]["relation"] == "currents" and recs[-1]["status"] == "pass"
    bad = [d for d in recs if d["status"] == "fail"]
    assert [d["params"]["relation"] for d in bad] == ["phi.phi"]
    assert bad[0]["witness"]["variants"] == {"kappa^I_VV -> kappa^I_V*V*": True}
