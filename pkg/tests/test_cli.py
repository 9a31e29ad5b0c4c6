import json

import pytest
from click.testing import CliRunner

from regramsey.cli import main, strip_volatile


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("REGRAMSEY_CAP", raising=False)
    runner = CliRunner()

    def _run(*args):
        return runner.invoke(main, list(args), catch_exceptions=False)

    return _run


def _doc(path="out.json"):
    with open(path) as fh:
        return json.load(fh)


class TestEval:
    @pytest.mark.parametrize("args, out", [
        (("ack", "2", "3"), "6"),
        (("ft:t=2", "1", "9"), "10"),
        (("fg:g=id", "3", "36"), "45"),
        (("ack", "5", "5", "--cap", "2^256"), "TOP (exceeds cap 2^256)"),
        (("ack", "3", "3", "--iterate", "2"), str(3 * 2**3 * 2 ** (3 * 2**3))),
    ])
    def test_values(self, run, args, out):
        r = run("eval", *args, "-o", "out.json")
        assert r.exit_code == 0 and r.output.strip() == out

    def test_document_has_config(self, run):
        run("eval", "ack", "2", "3", "-o", "out.json")
        doc = _doc()
        assert doc["config"]["command"] == "eval"
        assert doc["config"]["parameters"] == {"spec": "ack", "i": 2, "n": 3, "iterate": None}
        assert doc["config"]["cap"] == "2^256"
        assert doc["result"]["value"] == 6

    def test_default_output_path(self, run, tmp_path):
        run("eval", "ack", "2", "3")
        assert (tmp_path / "regramsey-eval.json").exists()

    def test_stdout_document(self, run):
        r = run("eval", "ack", "2", "3", "-o", "-")
        assert json.loads(r.output)["result"]["value"] == 6

    def test_cap_env(self, run, monkeypatch):
        monkeypatch.setenv("REGRAMSEY_CAP", "100")
        r = run("eval", "ack", "3", "5", "-o", "out.json")
        assert r.output.strip() == "TOP (exceeds cap 100)"

    @pytest.mark.parametrize("args", [("bogus", "1", "1"), ("ft:t=0", "1", "1"), ("ack", "0", "1"),
                                      ("ack", "1", "1", "--cap", "many"), ("ack", "1")])
    def test_usage_errors(self, run, args):
        assert run("eval", *args, "-o", "out.json").exit_code == 2


class TestVerify:
    def test_small_dg(self, run):
        r = run("verify", "smallDg", "--g", "id", "--k", "3", "-o", "out.json")
        assert r.exit_code == 0 and r.output.startswith("PASS smallDg")

    def test_prei1_reports_both_sides(self, run):
        r = run("verify", "obs-prei1", "--t", "2", "--k", "3", "--n", "16", "-o", "out.json")
        assert r.exit_code == 0 and "33 ≥ 32" in r.output

    def test_fail_exit_code(self, run):
        r = run("verify", "stitched-regressive", "-o", "out.json")
        assert r.exit_code == 1 and r.output.startswith("FAIL")

    def test_budget_exit_code(self, run):
        r = run("verify", "base10-nominhom", "--max-nodes", "100", "-o", "out.json")
        assert r.exit_code == 3 and r.output.startswith("INDETERMINATE")

    def test_extra_params(self, run):
        r = run("verify", "regHom2", "-p", "N=300", "-o", "out.json")
        assert r.exit_code == 0
        assert _doc()["result"]["params"] == {"s": 2, "N": 300}

    @pytest.mark.parametrize("args", [("nope",), (), ("smallDg", "-p", "oops")])
    def test_usage(self, run, args):
        assert run("verify", *args, "-o", "out.json").exit_code == 2


class TestRoundTrip:
    @pytest.mark.parametrize("args", [
        ("search", "cg:g=id,k=3"),
        ("search", "ramsey42", "--mode", "homogeneous", "--target", "5"),
        ("nu", "--g", "const:1", "--k", "3", "--k", "4"),
        ("verify", "noMinHom", "--k", "4"),
        ("eval", "ft:t=2", "3", "16"),
        ("color", "cg:g=id,k=4", "--g", "id"),
    ])
    def test_reverify(self, run, args):
        assert run(*args, "-o", "doc.json").exit_code == 0
        r = run("verify", "--from-file", "doc.json", "-o", "re.json")
        assert r.exit_code == 0, r.output
        assert _doc("re.json")["result"]["matches"] is True

    def test_tampered_witness_is_caught(self, run):
        run("search", "cg:g=id,k=3", "-o", "doc.json")
        doc = _doc("doc.json")
        doc["result"]["elements"] = [36, 37, 40]
        with open("doc.json", "w") as fh:
            json.dump(doc, fh)
        r = run("verify", "--from-file", "doc.json", "--no-rerun", "-o", "re.json")
        assert r.exit_code == 1 and "not min_homogeneous" in r.output

    def test_tampered_nu_coloring_is_caught(self, run):
        run("nu", "--g", "const:1", "--k", "3", "-o", "doc.json")
        doc = _doc("doc.json")
        doc["result"]["values"][0]["bad_coloring"] = [[-1, 0, 0], [-1, -1, 0], [-1, -1, -1]]
        with open("doc.json", "w") as fh:
            json.dump(doc, fh)
        assert run("verify", "--from-file", "doc.json", "--no-rerun", "-o", "re.json").exit_code == 1

    def test_deterministic_documents(self, run):
        run("search", "base10:lo=43,hi=300", "-o", "a.json")
        run("search", "base10:lo=43,hi=300", "-o", "b.json")
        a, b = _doc("a.json"), _doc("b.json")
        a["config"]["output_path"] = b["config"]["output_path"]
        assert strip_volatile(a) == strip_volatile(b)


class TestOtherCommands:
    def test_nu_values(self, run):
        assert run("nu", "--g", "const:0", "--k", "5", "-o", "o.json").output.strip() == "5"
        assert run("nu", "--g", "const:1", "--k", "3", "-o", "o.json").output.strip() == "4"
        r = run("nu", "--g", "id", "--k", "3", "--limit", "100", "-o", "o.json")
        assert r.output.strip() == "3"

    def test_nu_budget(self, run):
        r = run("nu", "--g", "id", "--k", "5", "--max-nodes", "200", "-o", "o.json")
        assert r.exit_code == 3 and r.output.startswith("NotFoundBelow(")

    def test_nu_csv(self, run):
        r = run("nu", "--g", "const:0", "--k", "2", "--k", "3", "--format", "csv", "-o", "nu.csv")
        assert r.exit_code == 0
        lines = open("nu.csv").read().splitlines()
        assert lines[0].startswith("# config: ")
        assert lines[1].startswith("g,k,value")
        assert lines[2].startswith("const:0,2,2,")

    def test_nu_checkpoint(self, run, tmp_path):
        run("nu", "--g", "const:1", "--k", "4", "--limit", "6", "--checkpoint", "ck.json", "-o", "o.json")
        assert json.loads((tmp_path / "ck.json").read_text())["next_N"] == 7
        r = run("nu", "--g", "const:1", "--k", "4", "--checkpoint", "ck.json", "-o", "o.json")
        assert r.output.strip() == "8"

    def test_csv_only_for_tables(self, run):
        assert run("eval", "ack", "2", "3", "--format", "csv").exit_code == 2

    def test_search_budget(self, run):
        r = run("search", "base10", "--target", "6", "--max-nodes", "100", "-o", "o.json")
        assert r.exit_code == 3 and r.output.startswith("budget exhausted")

    def test_search_interval(self, run):
        r = run("search", "base-s:s=2,hi=200", "--mode", "homogeneous", "--interval", "64,128", "-o", "o.json")
        assert r.exit_code == 0 and _doc("o.json")["result"]["interval"] == [64, 128]

    def test_color_regressive_fail(self, run):
        r = run("color", "stitched", "--g", "sched:@" + _toy(), "-o", "o.json")
        assert r.exit_code == 1 and "FAIL at (43, 45)" in r.output

    def test_export_cnf(self, run, tmp_path):
        r = run("export", "cnf", "--g", "const:1", "--k", "3", "--N", "4", "--out", "x.cnf", "-o", "o.json")
        assert r.exit_code == 0
        text = (tmp_path / "x.cnf").read_text()
        assert "p cnf" in text and _doc("o.json")["result"]["num_clauses"] > 0

    def test_export_cnf_too_large(self, run):
        r = run("export", "cnf", "--g", "id", "--k", "3", "--N", "100", "--out", "x.cnf", "-o", "o.json")
        assert r.exit_code == 2

    def test_export_coloring(self, run, tmp_path):
        r = run("export", "coloring", "cg:g=id,k=3", "--out", "cg", "--data-format", "bin", "-o", "o.json")
        assert r.exit_code == 0
        assert (tmp_path / "cg.json").exists() and (tmp_path / "cg.bin").exists()
        r = run("search", "file:cg.json", "-o", "s.json")
        assert r.output.startswith("maximum 3")


def _toy():
    from importlib import resources
    return str(resources.files("regramsey.data").joinpath("toy-schedule.json"))
