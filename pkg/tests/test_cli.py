"""Command-line interface: subcommands, reports, and exit codes."""

import json
import math

from refspin import cli, fixtures
from refspin.models import format_complex, parse_complex


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def fx(name):
    return str(fixtures.fixture_path(name))


def test_compare_distinguishes_the_ten_crossing_pair(capsys):
    code, out = run(
        capsys, "compare", "--model", "potts-family:a=1,b=0",
        fx("d1042.smg"), fx("d1042p.smg"),
    )
    assert code == 0
    assert "DISTINGUISHED" in out
    assert f"{-math.sqrt(3):.12g}"[:8] in out
    assert f"{-3 * math.sqrt(3):.12g}"[:8] in out


def test_compare_equal_inputs_not_distinguished(capsys):
    code, out = run(
        capsys, "compare", "--model", "potts-family:a=1,b=0",
        fx("d1042.smg"), fx("d1042.smg"),
    )
    assert code == 0
    assert "NOT DISTINGUISHED" in out


def test_invariant_on_trivial_graph(capsys):
    code, out = run(capsys, "invariant", "--model", "pentagonal",
                    fx("trivial.smg"))
    assert code == 0
    assert "I = 2.2360679774997898+0i" in out


def test_invariant_on_sud_reports_both_colorings(capsys):
    code, out = run(capsys, "invariant", "--model", "potts-family:a=1,b=0",
                    fx("d1042.sud"))
    assert code == 0
    assert "I[coloring 0]" in out and "I[coloring 1]" in out
    assert "[PASS] colorings agree" in out


def test_json_report_round_trips(capsys):
    code, out = run(capsys, "invariant", "--model", "potts-family:a=1,b=0",
                    "--json", fx("d1042.sud"))
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "invariant"
    values = [r["value"] for r in report["results"] if "value" in r]
    assert values
    for v in values:
        assert format_complex(parse_complex(v)) == v


def test_validate_model_ok(capsys):
    code, out = run(capsys, "validate-model", "--model",
                    "pent-family:a=1,b=2,c=-2")
    assert code == 0
    assert "FAIL" not in out
    assert "type II: no" in out
    assert "translation invariant: yes" in out


def test_validate_model_invalid_exits_3(capsys):
    code, out = run(capsys, "validate-model", "--model",
                    "potts-family:a=0,b=1")
    assert code == 3
    assert "FAIL" in out


def test_model_parse_error_exits_2(capsys):
    code, out = run(capsys, "validate-model", "--model", "nonsense:z=1")
    assert code == 2


def test_missing_file_exits_2(capsys, tmp_path):
    code, out = run(capsys, "invariant", "--model", "pentagonal",
                    str(tmp_path / "nope.smg"))
    assert code == 2


def test_resource_limit_exits_4(capsys, tmp_path):
    lines = ["smg big", "N 40", "PB 0", "NB 0"]
    lines += [f"e {k} {k + 1} + off" for k in range(1, 40)]
    path = tmp_path / "big.smg"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    code, out = run(capsys, "invariant", "--model", "potts-family:a=1,b=0",
                    "--method", "naive", str(path))
    assert code == 4


def test_gluing_check(capsys):
    code, out = run(capsys, "gluing-check", "--model",
                    "pent-family:a=1,b=1,c=-1",
                    fx("d89.smg"), fx("d89p.smg"))
    assert code == 0
    assert "[PASS] I(A#B) = I(A) I(B) / d" in out


def test_rewrite_fuzz(capsys):
    code, out = run(capsys, "rewrite-fuzz", "--model", "potts-family:a=2,b=0.3",
                    "--seed", "5", "--steps", "30", fx("d1042.smg"))
    assert code == 0
    assert "[PASS] invariant preserved" in out


def test_rewrite_fuzz_on_sud_input(capsys):
    code, out = run(capsys, "rewrite-fuzz", "--model", "pentagonal",
                    "--seed", "1", "--steps", "15", fx("d89.sud"))
    assert code == 0


def test_bad_sud_content_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.sud"
    path.write_text("sud bad\nx 1 1 2 3 1 axis=none\n", encoding="utf-8")
    code, out = run(capsys, "invariant", "--model", "pentagonal", str(path))
    assert code == 2


def test_gluing_check_refuses_non_invariant_model(capsys, tmp_path):
    # a permuted five-state model is valid but not circulant
    import numpy as np

    from refspin import models as m

    pent = m.make_pentagonal()
    perm = np.eye(5)[[0, 2, 1, 3, 4]]
    w = perm @ pent.w_plus @ perm.T
    path = tmp_path / "permuted.model"
    path.write_text(f"d = {pent.d!r}\n" + m.format_matrix(w), encoding="utf-8")
    code, out = run(capsys, "gluing-check", "--model", f"file:{path}",
                    fx("d89.smg"), fx("d89p.smg"))
    assert code == 1
    assert "FAIL" in out


def test_rewrite_fuzz_zero_tolerance_reports_failure(capsys):
    # with an impossible tolerance the report must fail honestly (exit 1)
    code, out = run(capsys, "rewrite-fuzz", "--model", "potts-family:a=1,b=0",
                    "--seed", "2", "--steps", "30", "--tol", "0",
                    fx("d1042.smg"))
    assert code == 1
    assert "[FAIL] invariant preserved" in out


def test_paper_repro_all_rows_pass(capsys):
    code, out = run(capsys, "paper-repro")
    assert code == 0
    assert "FAIL" not in out
    assert out.count("[PASS]") == 10


def test_method_flags_agree(capsys):
    vals = {}
    for method in ("naive", "eliminate"):
        code, out = run(capsys, "invariant", "--model", "potts-family:a=1,b=0",
                        "--method", method, "--json", fx("d1042p.smg"))
        assert code == 0
        report = json.loads(out)
        vals[method] = [parse_complex(r["value"]) for r in report["results"]]
    for a, b in zip(vals["naive"], vals["eliminate"]):
        assert abs(a - b) < 1e-9
