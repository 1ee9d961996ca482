import csv
import io
import json
import re
import subprocess
import sys
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moprl.cli import main
from moprl.config import (
    RATIONAL,
    ConfigError,
    config_to_obj,
    fingerprint,
    grid_indices,
    parse_config,
    parse_index,
    parse_rational,
    system_to_obj,
)
from moprl.measures import DiscreteMeasure, make_angelesco

ANGELESCO = {
    "kind": "angelesco",
    "measures": [
        {"atoms": [["-3/4", "1/2"], ["-1/4", "1/2"]], "interval": ["-1", "0"]},
        {"atoms": [["1/4", "1/2"], ["3/4", "1/2"]], "interval": ["0", "1"]},
    ],
}
ANGELESCO44 = {
    "kind": "angelesco",
    "measures": [
        {"atoms": [[f"-{k}/8", "1/4"] for k in (7, 5, 3, 1)], "interval": ["-1", "0"]},
        {"atoms": [[f"{k}/8", "1/4"] for k in (1, 3, 5, 7)], "interval": ["0", "1"]},
    ],
}
NIKISHIN = {
    "kind": "nikishin",
    "sigmas": [
        {"atoms": [[f"{k}/6", "1/5"] for k in range(1, 6)], "interval": ["0", "1"]},
        {"atoms": [["2", "1/3"], ["5/2", "1/3"], ["3", "1/3"]], "interval": ["2", "3"]},
    ],
}
AT = {
    "kind": "at",
    "measures": [{"atoms": [["0", "1/2"], ["1/2", "1/4"], ["1", "1/4"]], "interval": ["0", "1"]}],
    "poles": ["2", "3"],
}


@pytest.fixture
def run(tmp_path):
    """Write a config and run the CLI in-process; returns (exit code, records)."""

    def _run(config, *argv):
        path = tmp_path / "config.json"
        path.write_text(config if isinstance(config, str) else json.dumps(config), encoding="utf-8")
        out = io.StringIO()
        code = main([argv[0], "--config", str(path), "--no-timing", *argv[1:]], stdout=out)
        return code, [json.loads(line) for line in out.getvalue().splitlines()]

    return _run


# -- configuration ------------------------------------------------------------------


def test_parse_rational():
    assert parse_rational("-3/4", "x") == F(-3, 4)
    assert parse_rational(5, "x") == 5
    for bad in ("1/0", "0.5", "1/-2", "+1", "1 / 2", True, 0.5, None):
        with pytest.raises(ConfigError):
            parse_rational(bad, "x")


def test_float_literals_rejected():
    text = json.dumps({"system": ANGELESCO}).replace('"1/2"', "0.5", 1)
    with pytest.raises(ConfigError, match="floating-point"):
        parse_config(text)


def test_unknown_fields_rejected():
    with pytest.raises(ConfigError, match="unknown field"):
        parse_config(json.dumps({"system": ANGELESCO, "colour": 1}))
    bad = json.loads(json.dumps(ANGELESCO))
    bad["measures"][0]["weight"] = "1"
    with pytest.raises(ConfigError, match=r"system.measures\[0\]: unknown field"):
        parse_config(json.dumps({"system": bad}))
    with pytest.raises(ConfigError, match="unknown field"):
        parse_config(json.dumps({"system": ANGELESCO, "options": {"speed": 1}}))
    with pytest.raises(ConfigError, match="poles"):
        parse_config(json.dumps({"system": {**ANGELESCO, "poles": ["2"]}}))


def test_json_syntax_error_has_location():
    with pytest.raises(ConfigError, match="line 2, column"):
        parse_config('{"system":\n  [}')


def test_malformed_zero_denominator_in_atoms():
    bad = json.loads(json.dumps(ANGELESCO))
    bad["measures"][0]["atoms"][0][1] = "1/0"
    with pytest.raises(ConfigError, match=r"atoms\[0\]\[1\]"):
        parse_config(json.dumps({"system": bad}))


def test_measure_errors_become_config_errors():
    bad = json.loads(json.dumps(ANGELESCO))
    bad["measures"][1]["interval"] = ["-1", "1"]
    with pytest.raises(ConfigError):
        parse_config(json.dumps({"system": bad}))


def test_indices_and_grid():
    cfg = parse_config(json.dumps({"system": ANGELESCO, "indices": {"grid": [1, 2]}, "seed": 3}))
    assert [n.parts for n in cfg.indices] == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    assert cfg.seed == 3
    assert grid_indices([]) == [grid_indices([])[0]] and grid_indices([])[0].parts == ()
    assert parse_index("1,2", 2).parts == (1, 2)
    with pytest.raises(ConfigError):
        parse_index("1,x")
    with pytest.raises(ConfigError):
        parse_index("1,2", 3)
    with pytest.raises(ConfigError):
        parse_config(json.dumps({"system": ANGELESCO, "seed": -1}))


@pytest.mark.parametrize("system", [ANGELESCO, NIKISHIN, AT])
def test_round_trip_fingerprint(system):
    cfg = parse_config(json.dumps({"system": system, "indices": [[1, 1]]}))
    again = parse_config(json.dumps(config_to_obj(cfg)))
    assert again.fingerprint == cfg.fingerprint
    assert system_to_obj(again.system) == system_to_obj(cfg.system)
    assert re.fullmatch("[0-9a-f]{64}", cfg.fingerprint)


@given(st.lists(st.tuples(st.fractions(-5, -1, max_denominator=9), st.fractions(1, 5, max_denominator=9)),
                min_size=1, max_size=5, unique_by=lambda a: a[0]))
@settings(max_examples=40)
def test_round_trip_random(atoms):
    mu1 = DiscreteMeasure(tuple(atoms), (F(-5), F(-1)))
    mu2 = DiscreteMeasure(tuple((-t + 6, w) for t, w in atoms), (F(1), F(11)))
    sys_ = make_angelesco([mu1, mu2])
    cfg = parse_config(json.dumps({"system": system_to_obj(sys_)}))
    assert fingerprint(cfg.system) == fingerprint(sys_)


# -- commands ------------------------------------------------------------------------


def test_moments(run):
    code, recs = run({"system": ANGELESCO}, "moments", "--max-k", "2")
    assert code == 0
    [rec] = recs
    assert rec["outputs"]["rows"] == [["1", "-1/2", "5/16"], ["1", "1/2", "5/16"]]
    assert "timing" not in rec


def test_moment_zero_is_mass(run):
    code, [rec] = run({"system": AT}, "moments", "--max-k", "0")
    assert rec["outputs"]["rows"] == [["2/3"], ["47/120"]]


def test_solve(run):
    code, [rec] = run({"system": ANGELESCO}, "solve", "--index", "1,1")
    assert code == 0 and rec["outputs"]["coefficients"] == ["-5/16", "0", "1"]
    code, [rec] = run({"system": ANGELESCO}, "solve", "--index", "1,1", "--type", "i")
    assert code == 0 and rec["outputs"]["coefficients"] == [["-1"], ["1"]]
    code, [rec] = run({"system": ANGELESCO}, "solve", "--index", "0,0")
    assert rec["outputs"]["coefficients"] == ["1"]


def test_solve_non_normal_exit_2(run):
    system = {"kind": "explicit", "measures": [{"atoms": [["-1", "1"], ["1", "-2"], ["2", "1"]]}]}
    code, [rec] = run({"system": system}, "solve", "--index", "1")
    assert code == 2 and "error" in rec


def test_zeros(run):
    code, [rec] = run({"system": ANGELESCO}, "zeros", "--index", "1,1", "--width", "1/100")
    assert code == 0
    [P] = rec["outputs"]["polynomials"]
    assert P["coefficients"] == ["-5/16", "0", "1"] and P["real_root_count"] == 2
    ivs = P["intervals"]
    assert len(ivs) == 2
    assert F(ivs[0]["hi"]) <= 0 <= F(ivs[1]["lo"])
    assert [iv["in_intervals"] for iv in ivs] == [[1], [2]]
    assert all(F(iv["hi"]) - F(iv["lo"]) < F(1, 100) for iv in ivs)
    code, [rec] = run({"system": ANGELESCO}, "zeros", "--index", "0,0")
    assert rec["outputs"]["polynomials"][0]["intervals"] == []


def test_zeros_out_of_regime_type_i(run):
    """An out-of-regime Nikishin type I polynomial with fewer real zeros than its degree."""
    system = {
        "kind": "nikishin",
        "sigmas": [
            {"atoms": [[f"{k}/10", "1"] for k in range(1, 10)], "interval": ["0", "1"]},
            {"atoms": [["2", "1"], ["5/2", "1"], ["3", "1"], ["7/2", "1"], ["4", "1"]], "interval": ["2", "4"]},
        ],
    }
    found = False
    for n1, n2 in [(4, 1), (5, 1), (4, 2), (5, 2), (3, 1)]:
        code, [rec] = run({"system": system}, "zeros", "--index", f"{n1},{n2}", "--type", "i", "--slot", "1")
        polys = rec["outputs"].get("polynomials", [])
        if code == 0 and any(P["real_root_count"] < P["degree"] for P in polys):
            found = True
            break
    assert found


def test_verify_zero_ii_grid(run):
    code, recs = run({"system": ANGELESCO44}, "verify", "--criterion", "zero-ii", "--grid", "2,2")
    sizes = [sum(r["index"]) for r in recs]
    assert code == 0 and len(recs) == 9 and max(sizes) == 4
    assert all(r["outputs"]["verdict"] == "Pass" for r in recs)


def test_verify_andreief_fixture(run):
    cfg = {
        "system": {"kind": "explicit", "measures": [{"atoms": [["0", "1/2"], ["1", "1/2"]]}]},
        "options": {"criterion": "andreief", "phis": [["1"], ["0", "1"]], "psis": [["1"], ["0", "1"]]},
    }
    code, [rec] = run(cfg, "verify")
    assert code == 0
    assert rec["outputs"]["witnesses"] == {"lhs": "1/4", "rhs": "1/4"}


def test_verify_even_wronskian_odd_length_exit_3(run):
    code, [rec] = run({"system": ANGELESCO}, "verify", "--criterion", "even-wronskian",
                      "--index", "0,0", "--steps", "1,2")
    assert code == 3 and rec["error"]["kind"] == "hypothesis"


def test_verify_reports_one_based_parameters(run):
    code, [rec] = run({"system": ANGELESCO44}, "verify", "--criterion", "interlace-ii",
                      "--index", "1,1", "--slot", "2")
    assert code == 0 and rec["parameters"]["slot"] == 2


def test_verify_fail_exit_4(run):
    system = {"kind": "explicit", "measures": [{"atoms": [["-1", "1"], ["1", "-2"], ["2", "1"]]}]}
    code, [rec] = run({"system": system}, "verify", "--criterion", "zero-ii", "--index", "1")
    assert code == 4 and rec["outputs"]["verdict"] == "Fail"


def test_usage_errors_exit_5(run, tmp_path):
    code, _ = run({"system": ANGELESCO}, "verify")
    assert code == 5
    code, _ = run('{"system": 1/0}', "moments")
    assert code == 5
    with pytest.raises(SystemExit) as exc:
        main(["bogus", "--config", str(tmp_path / "x.json")])
    assert exc.value.code == 5
    assert main(["moments", "--config", str(tmp_path / "missing.json")]) == 5


def test_scan(run, tmp_path):
    code, recs = run({"system": ANGELESCO}, "scan", "--grid", "1,1", "--out", str(tmp_path / "out"))
    assert code == 0 and recs == []
    rows = list(csv.DictReader((tmp_path / "out" / "scan.csv").open(encoding="utf-8")))
    assert [r["index"] for r in rows] == ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]
    assert all(r["normal"] == "true" and r["det_sign"] == "1" for r in rows)
    lines = (tmp_path / "out" / "scan.jsonl").read_text(encoding="utf-8").splitlines()
    assert len(lines) == 4


def test_scan_insufficient_support_rows(run):
    code, recs = run({"system": ANGELESCO}, "scan", "--grid", "3,3")
    statuses = {tuple(r["index"]): r["outputs"]["status"] for r in recs}
    assert statuses[(3, 3)] == "insufficient support"
    assert statuses[(2, 2)] == "ok"
    assert code == 0


def test_scan_empty_grid_is_header_only(run, tmp_path):
    cfg = {"system": ANGELESCO, "indices": []}
    code, recs = run(cfg, "scan", "--out", str(tmp_path / "empty"))
    assert code == 0
    text = (tmp_path / "empty" / "scan.csv").read_text(encoding="utf-8")
    assert text == "index,status,normal,det_sign,det,midpoints,midpoints_decimal\n"


def test_records_deterministic_and_exact(run):
    first = run({"system": NIKISHIN, "seed": 4}, "zeros", "--grid", "2,2", "--type", "ii")
    second = run({"system": NIKISHIN, "seed": 4}, "zeros", "--grid", "2,2", "--type", "ii")
    assert first == second
    for rec in first[1]:
        for iv in (iv for P in rec["outputs"]["polynomials"] for iv in P["intervals"]):
            assert RATIONAL.fullmatch(iv["lo"]) and RATIONAL.fullmatch(iv["hi"])


def test_jobs_do_not_change_order(run):
    one = run({"system": ANGELESCO44}, "verify", "--criterion", "angelesco-count", "--grid", "2,2")
    two = run({"system": ANGELESCO44}, "verify", "--criterion", "angelesco-count", "--grid", "2,2", "--jobs", "2")
    assert one == two


def test_console_entry_point(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"system": ANGELESCO}), encoding="utf-8")
    proc = subprocess.run([sys.executable, "-m", "moprl.cli", "solve", "--config", str(path), "--index", "1,1",
                           "--no-timing"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outputs"]["coefficients"] == ["-5/16", "0", "1"]
