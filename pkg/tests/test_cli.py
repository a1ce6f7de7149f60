"""End-to-end CLI coverage: report shapes, formats, exit codes, determinism,
and worker-pool equivalence.  Commands run in process through main()."""

import csv
import io
import json
import subprocess
import sys

import pytest
from mpmath import mpf

from regcount import graph_to_text
from regcount.cli import main
from regcount.verify import Verdict


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture()
def c4_file(tmp_path, c4):
    path = tmp_path / "c4.txt"
    path.write_text(graph_to_text(c4))
    return str(path)


def test_count_matching(capsys, c4_file):
    code, doc = run_json(capsys, "count", "--kind", "matching", "--graph", c4_file)
    assert code == 0
    assert doc["tool"] == "regcount"
    assert doc["command"] == "count"
    assert doc["coefficients"] == ["1", "4", "2"]
    assert doc["config"]["kind"] == "matching"


def test_count_independent_to_file(capsys, tmp_path, c4_file):
    out = tmp_path / "report.json"
    code, stdout = run_cli(
        capsys,
        "count", "--kind", "independent-set", "--graph", c4_file, "--out", str(out),
    )
    assert code == 0
    assert str(out) in stdout
    doc = json.loads(out.read_text())
    assert doc["coefficients"] == ["1", "4", "2"]
    assert doc["config"]["out"] == str(out)


def test_count_csv_key_value(capsys, c4_file):
    code, out = run_cli(
        capsys, "count", "--kind", "matching", "--graph", c4_file, "--format", "csv"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# tool=regcount")
    assert lines[1].startswith("# config=")
    rows = list(csv.reader(io.StringIO("\n".join(lines[2:]))))
    assert rows[0] == ["key", "value"]
    assert ["coefficients", '["1", "4", "2"]'] in rows


def test_usage_and_io_errors(capsys, tmp_path):
    assert main(["count", "--kind", "matching"]) == 1  # missing --graph
    assert main(["no-such-command"]) == 1
    capsys.readouterr()
    assert main(["count", "--kind", "matching", "--graph", str(tmp_path / "nope")]) == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("not a graph\n")
    assert main(["count", "--kind", "matching", "--graph", str(bad)]) == 1
    # domain errors from argument values, not just parsing
    assert main(["bounds", "--n", "8", "--d", "3"]) == 1  # 2d does not divide n
    assert main(["bounds", "--n", "8", "--d", "2", "--ell", "9"]) == 1


def test_verify_umc_end_to_end(capsys):
    code, doc = run_json(capsys, "verify-umc", "--n", "8", "--d", "2")
    assert code == 0
    assert doc["summary"] == {"total": 15, "failed": 0}
    assert all(v["pass"] for v in doc["verdicts"])
    labels = {v["graph_label"] for v in doc["verdicts"]}
    assert labels == {"8v-2r-0000", "8v-2r-0001", "8v-2r-0002"}


def test_reruns_are_byte_identical(capsys):
    argv = ["verify-kahn", "--n", "8", "--d", "2"]
    code1, out1 = run_cli(capsys, *argv)
    code2, out2 = run_cli(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    argv_csv = argv + ["--format", "csv"]
    _, csv1 = run_cli(capsys, *argv_csv)
    _, csv2 = run_cli(capsys, *argv_csv)
    assert csv1 == csv2
    assert csv1 != out1


def test_workers_equivalence(capsys):
    _, doc1 = run_json(capsys, "verify-kahn", "--n", "8", "--d", "2", "--workers", "1")
    _, doc2 = run_json(capsys, "verify-kahn", "--n", "8", "--d", "2", "--workers", "2")
    assert doc1["verdicts"] == doc2["verdicts"]
    assert doc2["config"]["workers"] == 2


def test_verdict_csv_table(capsys):
    code, out = run_cli(capsys, "verify-umc", "--n", "8", "--d", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    rows = list(csv.reader(io.StringIO("\n".join(lines[2:]))))
    assert rows[0] == ["check_id", "graph_label", "params", "lhs", "rhs", "pass", "margin"]
    assert len(rows) == 1 + 15
    assert all(r[5] == "true" for r in rows[1:])
    params = json.loads(rows[1][2])
    assert params["n"] == 8 and params["d"] == 2


def test_gen_census_and_labeled(capsys):
    from regcount import canonical_form, graph_from_text

    code, doc = run_json(capsys, "gen", "--n", "6", "--d", "3")
    assert code == 0
    assert doc["count"] == 2
    for row in doc["rows"]:
        g = graph_from_text(row["graph"])
        assert row["label"] == canonical_form(g)
        assert row["edges"] == 9
    code, doc = run_json(capsys, "gen", "--n", "6", "--d", "2", "--labeled")
    assert code == 0 and doc["count"] == 70
    assert doc["rows"][0]["label"] == "6v-2r-000000"
    code, doc = run_json(capsys, "gen", "--n", "8", "--d", "2", "--bipartite-only")
    assert code == 0 and doc["count"] == 2


def test_bounds_report(capsys):
    code, doc = run_json(
        capsys,
        "bounds", "--n", "8", "--d", "2",
        "--ell", "2", "--t", "2", "--lam", "1", "--c", "2",
    )
    assert code == 0
    rows = doc["rows"]
    names = {r["name"] for r in rows}
    assert {
        "union-match-count",
        "match-count-upper",
        "optimal-lambda",
        "union-match-lower-explicit",
        "explicit-gap-log2",
        "stirling-terms-ok",
        "profile-match-lower",
        "match-pf-upper",
        "ind-pf-upper-general",
        "ind-pf-upper-bipartite",
        "union-ind-count",
        "ind-count-upper-general",
        "ind-upper-pm-exact",
        "union-ind-lower-markov",
        "union-ind-lower-small-t-log",
        "union-ind-lower-small-t-exact",
        "block-miss-mean",
        "block-miss-mean-upper",
    } <= names

    def row(name):
        return [r for r in rows if r["name"] == name][0]

    assert row("union-match-count")["value"] == "20"
    assert row("match-count-upper")["value"] == "6"
    assert row("optimal-lambda")["value"] == "1/2"
    assert row("union-ind-lower-small-t-exact")["value"] == "16"
    assert row("block-miss-mean")["value"] == "1/3"
    assert row("block-miss-mean-upper")["value"] == "1/2"
    assert row("union-ind-lower-markov")["params"]["c"] == "2"


def test_bounds_csv_rows(capsys):
    code, out = run_cli(
        capsys, "bounds", "--n", "8", "--d", "2", "--ell", "2", "--t", "1",
        "--lam", "1", "--c", "2", "--format", "csv",
    )
    assert code == 0
    lines = out.splitlines()
    rows = list(csv.reader(io.StringIO("\n".join(lines[2:]))))
    assert rows[0] == ["name", "params", "value", "direction"]
    assert all(len(r) == 4 for r in rows[1:])


def test_verify_roots_modes(capsys, c4_file):
    code, doc = run_json(capsys, "verify-roots", "--n", "6", "--d", "3")
    assert code == 0 and doc["summary"]["failed"] == 0 and doc["summary"]["total"] == 2
    code, doc = run_json(capsys, "verify-roots", "--graph", c4_file)
    assert code == 0 and doc["summary"]["total"] == 1
    assert main(["verify-roots"]) == 1  # needs --graph or --n/--d


def test_verify_suite_cli(capsys):
    code, doc = run_json(
        capsys, "verify-suite", "--n", "6", "--d", "3", "--lam", "1", "--lam", "2"
    )
    assert code == 0
    assert doc["summary"]["failed"] == 0
    ids = {v["check_id"] for v in doc["verdicts"]}
    assert "match-pf-upper" in ids
    assert "union-block-identity" in ids  # 2d | n, so union lowers are included


def test_verify_hom_cli(capsys):
    code, doc = run_json(
        capsys, "verify-hom", "--n", "4", "--d", "2", "--orders", "2", "--seed", "7"
    )
    assert code == 0
    # 1 class x (5 targets x 4 orders + 2 c x 3 weights)
    assert doc["summary"] == {"total": 26, "failed": 0}


def test_exit_code_2_on_failed_verdict(capsys, monkeypatch):
    import regcount.cli as cli_mod

    def fake_verdict(g, tol):
        return Verdict("match-poly-real-rooted", "stub", {}, mpf(1), mpf(0), False, mpf(-1))

    monkeypatch.setattr(cli_mod, "verify_real_rooted", fake_verdict)
    code, doc = run_json(capsys, "verify-roots", "--n", "4", "--d", "2")
    assert code == 2
    assert doc["summary"]["failed"] == 1


def test_module_entry_point(c4_file):
    proc = subprocess.run(
        [sys.executable, "-m", "regcount.cli", "count", "--kind", "matching", "--graph", c4_file],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["coefficients"] == ["1", "4", "2"]
