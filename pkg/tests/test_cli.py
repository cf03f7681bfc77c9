import json
import re

import pytest

from sncover.certificates import Certificate, Relation, Rule, axiom_trivial_pair, serialize
from sncover.characters import character_table
from sncover.cli import main, render
from sncover.diagram import Partition
from sncover.tablecache import dump_table

P = Partition.parse


@pytest.fixture
def run(tmp_path, capsys):
    def invoke(*argv):
        code = main(["--cache-dir", str(tmp_path / "cache"), *argv])
        out, err = capsys.readouterr()
        return code, out.strip(), err

    return invoke


class TestQueries:
    @pytest.mark.parametrize(
        "argv, expected",
        [
            (["kron", "[2,1]", "[2,1]", "[2,1]"], "1"),
            (["kron", "[2,2]", "[2,2]", "[3,1]"], "0"),
            (["dim", "[3,2,1]"], "16"),
            (["conj", "[3,1]"], "[2,1,1]"),
            (["hsum", "[2,1]", "[1]"], "[3,1]"),
            (["distrows", "[3,3,1]"], "2"),
            (["saxl", "[3,2,1]"], "true"),
            (["saxl", "[2,2]"], "false"),
            (["tensor", "[2,1]", "[2,1]"], "[3];[2,1];[1,1,1]"),
            (["covers", "[3];[2,1]"], "false"),
            (["char", "[3,2,1]", "[3,3]"], "-2"),
            (["measure", "[3];[2,1]"], None),
        ],
    )
    def test_scalar_commands(self, run, argv, expected):
        code, out, _ = run(*argv)
        assert code == 0
        if expected is not None:
            assert out == expected
        else:
            assert re.search(r"measure\s+5/6", out)

    def test_table_matches_dump(self, run):
        code, out, _ = run("table", "3")
        assert code == 0
        assert out == dump_table(character_table(3)).rstrip("\n")

    def test_staircase_extract(self, run):
        code, out, _ = run("staircase-extract", "[6,4,4,1]", "2")
        assert code == 0
        assert re.search(r"mu\s+\[4,1\]", out)
        assert re.search(r"nu\s+\[4,3\]", out)

    def test_staircase_extract_chosen(self, run):
        code, out, _ = run("staircase-extract", "[6,4,4,1]", "2", "--chosen", "[4,1]")
        assert code == 0
        assert re.search(r"mu\s+\[6,4\]", out)
        assert re.search(r"nu\s+\[2\]", out)

    def test_staircase_extract_bad_choice(self, run):
        code, _, err = run("staircase-extract", "[6,4,4,1]", "2", "--chosen", "[3,1]")
        assert code == 2
        assert "chosen lengths" in err

    def test_min_power_never(self, run):
        code, out, _ = run("min-power", "[2,2]", "--t-max", "10")
        assert code == 0
        assert re.search(r"status\s+never", out)
        assert re.search(r"power\s+-", out)

    def test_hooks_as_json_lines(self, run):
        code, out, _ = run("--format", "structured", "hooks", "[2,1]")
        assert code == 0
        records = [json.loads(line) for line in out.splitlines()]
        assert sorted(r["hook"] for r in records) == [1, 1, 3]

    def test_structured_scalar(self, run):
        code, out, _ = run("--format", "structured", "saxl", "[3,2,1]")
        assert code == 0
        assert json.loads(out) == {"result": True}

    def test_structured_model(self, run):
        code, out, _ = run("--format", "structured", "affine-demo", "3")
        assert code == 0
        doc = json.loads(out)
        assert doc["uniform_sum"] == "4/3"
        assert doc["uniform_criterion_fails"] is True

    def test_format_from_environment(self, run, monkeypatch):
        monkeypatch.setenv("SNCOVER_FORMAT", "structured")
        code, out, _ = run("dim", "[2,1]")
        assert code == 0
        assert json.loads(out) == {"result": 2}


class TestExitCodes:
    def test_resource_limit(self, run):
        code, _, err = run("--cap", "4", "kron", "[5]", "[5]", "[5]")
        assert code == 3
        assert "ResourceLimitError" in err

    def test_precondition(self, run):
        code, _, err = run("finish", "5", "2", "2")
        assert code == 2
        assert err.startswith("❌")

    def test_bad_config(self, run):
        code, _, _ = run("--cap", "0", "dim", "[1]")
        assert code == 2

    def test_malformed_partition(self, run):
        with pytest.raises(SystemExit) as exc:
            run("dim", "[1,2]")
        assert exc.value.code == 2

    def test_unknown_lemma(self, run):
        code, _, err = run("certify", "nolemma", "1")
        assert code == 2
        assert "unknown lemma" in err

    def test_saxl_needs_argument(self, run):
        code, _, _ = run("saxl")
        assert code == 2


class TestCertificates:
    def test_certify_then_verify(self, run, tmp_path):
        path = tmp_path / "rectsquare.cert"
        code, out, _ = run("certify", "rectsquare", "2", "3", "1", "-o", str(path))
        assert code == 0
        assert out.startswith("✅")
        code, out, _ = run("verify", str(path), "--mode", "full")
        assert code == 0
        assert re.search(r"passed\s+true", out)
        assert "[3,3,3,3]" in out

    def test_certify_to_stdout(self, run):
        code, out, _ = run("certify", "hookidempotent", "3", "2")
        assert code == 0
        assert json.loads(out)["schema"] == "sncover-certificate"

    def test_tampered_file_fails(self, run, tmp_path):
        a = axiom_trivial_pair(P("[2]"))
        bad = Certificate(Relation((P("[4]"), P("[4]"), P("[3,1]"))), Rule.COMBINE_HSUM, (a, a))
        path = tmp_path / "bad.cert"
        path.write_text(serialize(bad), encoding="utf-8")
        code, _, err = run("verify", str(path))
        assert code == 1
        assert "VerificationError" in err

    def test_missing_file(self, run, tmp_path):
        code, _, _ = run("verify", str(tmp_path / "absent.cert"))
        assert code == 2


def test_render_records_as_tab_separated():
    text = render([{"a": 1, "b": True}, {"a": 2, "b": None}], "table")
    assert text.splitlines() == ["a\tb", "1\ttrue", "2\t-"]
