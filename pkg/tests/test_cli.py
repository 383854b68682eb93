"""Command-line interface: golden outputs, determinism and exit codes."""

import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from minishift.cli import cli


@pytest.fixture()
def runner():
    return CliRunner()


def run(runner, *args):
    result = runner.invoke(cli, list(args), catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result.output


class TestSubst:
    def test_apply_and_iterate(self, runner):
        out = run(
            runner, "subst", "--subst", "a->ab;b->a",
            "--apply", "ab", "--iterate", "a", "-k", "3", "--primitive",
        )
        assert json.loads(out) == {
            "substitution": "a->ab;b->a",
            "apply": "aba",
            "iterate": "abaab",
            "primitive": True,
        }


class TestFactors:
    def test_substitution(self, runner):
        out = json.loads(run(
            runner, "factors", "--subst", "a->ab;b->a", "--start", "a",
            "--horizon", "4", "--complexity", "3", "--witness", "b",
        ))
        assert out["complexity"] == 4
        assert out["witness"] == 3
        assert out["complete"] is True

    def test_periodic(self, runner):
        out = json.loads(run(
            runner, "factors", "--periodic", "abc", "--horizon", "3",
            "--complexity", "2",
        ))
        assert out["complexity"] == 3

    def test_needs_a_source(self, runner):
        result = runner.invoke(cli, ["factors", "--horizon", "3"])
        assert result.exit_code != 0


class TestClassify:
    def test_golden(self, runner):
        out = run(
            runner, "classify", "--subst", "a->ab;b->a", "--start", "a",
            "--maxlen", "6",
        )
        assert out.strip() == (
            '{"acyclic": true, "connected": true, "max_length": 6, '
            '"neutral": true, "tree": true}'
        )

    def test_word_multiplicity(self, runner):
        out = json.loads(run(
            runner, "classify", "--subst", "a->ab;b->ba", "--start", "a",
            "--maxlen", "4", "--word", "",
        ))
        assert out["multiplicity"] == 1
        assert out["neutral"] is False


class TestReturns:
    def test_golden_right(self, runner):
        out = run(
            runner, "returns", "--subst", "a->ab;b->a", "--start", "a",
            "--word", "b",
        )
        assert out.strip() == '{"right": ["ab", "aab"]}'

    def test_left_and_gamma(self, runner):
        out = json.loads(run(
            runner, "returns", "--subst", "a->ab;b->a", "--start", "a",
            "--word", "a", "--left", "--gamma", "3",
        ))
        assert out["left"] == ["a", "ab"]
        assert out["gamma"] == ["", "a", "ba", "aba", "baa"]


class TestEpisturmian:
    def test_pal_and_returns(self, runner):
        out = json.loads(run(
            runner, "episturmian", "--directive", "abababababab",
            "--pal", "ab", "--word", "aa",
        ))
        assert out["pal"] == "aba"
        assert out["left"] == ["aab", "aabab"]


class TestFreegroup:
    def test_index_two(self, runner):
        out = json.loads(run(
            runner, "freegroup", "--alphabet", "ab",
            "--generators", "aa,ab,ba", "--member", "abba",
        ))
        assert out == {
            "basis": False,
            "generates": False,
            "index": 2,
            "member": True,
            "rank": 3,
        }

    def test_separation(self, runner):
        out = json.loads(run(
            runner, "freegroup", "--alphabet", "ab",
            "--generators", "aa", "--separate", "a",
        ))
        assert out["separated"] is True
        assert out["separating_index"] is not None


class TestMonoid:
    def test_three_state_code(self, runner):
        out = json.loads(run(
            runner, "monoid", "--code", "aa,ab,ba",
            "--subst", "a->ab;b->a", "--start", "a", "--horizon", "16",
        ))
        assert out["states"] == 3
        assert out["monoid_size"] == 19
        assert out["f_min_rank"] == 2
        assert out["f_group_order"] == 2

    def test_eggbox_text(self, runner):
        out = run(
            runner, "monoid", "--code", "aa,ab,ba",
            "--subst", "a->ab;b->a", "--start", "a", "--horizon", "16",
            "--eggbox",
        )
        assert "aa*" in out and "+" in out


class TestBifix:
    def test_cyclic_intersection(self, runner):
        out = json.loads(run(
            runner, "bifix", "--group", "cyclic:2", "--images", "a=1,b=1",
            "--subst", "a->ab;b->a", "--start", "a", "--horizon", "16",
        ))
        assert out == {"code": ["aa", "ab", "ba"], "degree": 2, "size": 3}


class TestShadow:
    def test_golden_horder(self, runner):
        out = run(
            runner, "horder", "--subst", "a->ab;b->a",
            "--group", "A5", "--images", "a:(1 2 3 4 5);b:(1 2 3)",
        )
        assert json.loads(out) == {"h_order": 14}

    def test_horder_alias_matches_subcommand(self, runner):
        args = ["--subst", "a->ab;b->a", "--group", "cyclic:3", "--images", "a=1,b=1"]
        top = run(runner, "horder", *args)
        sub = run(runner, "shadow", "horder", *args)
        assert top == sub
        assert json.loads(top) == {"h_order": 8}

    def test_horder_no_return(self, runner):
        out = json.loads(run(
            runner, "horder", "--subst", "a->ab;b->ba",
            "--group", "cyclic:2", "--images", "a=1,b=1",
        ))
        assert out == {"h_order": None, "preperiod": 1, "period": 1}

    def test_eval(self, runner):
        out = json.loads(run(
            runner, "shadow", "eval", "--expr", "subst^w(phi, a)",
            "--subst-def", "phi=a->ab;b->a",
            "--group", "cyclic:3", "--images", "a=1,b=1",
        ))
        assert out["value"] == "1"

    def test_separate(self, runner):
        out = json.loads(run(
            runner, "shadow", "separate", "--code", "ab,aab",
            "--beta", "a=ab,b=aab",
            "--group", "cyclic:2", "--images", "a=1,b=1",
            "-u", "a", "-v", "ab",
        ))
        assert out["separated"] is True
        assert out["prefixes"] == ["", "a", "aa"]


class TestArith:
    def test_factorial_digits(self, runner):
        out = json.loads(run(runner, "arith", "--to-factorial", "7", "-k", "3"))
        assert out == {"digits": [1, 0, 1], "display": "(1 0 1)_!"}

    def test_fib(self, runner):
        out = json.loads(run(
            runner, "arith", "--fib-mod", "10", "7", "--fib-limit", "24",
            "--offset", "2",
        ))
        assert out["fib_mod"] == 55 % 7
        assert out["fib_factorial_sequence"][-3:] == [1, 1, 1]


class TestDeterminism:
    def test_repeated_runs_identical(self, runner):
        args = [
            "classify", "--subst", "a->ab;b->a", "--start", "a", "--maxlen", "5",
        ]
        assert run(runner, *args) == run(runner, *args)


class TestExitCodes:
    def invoke(self, *args):
        return subprocess.run(
            [sys.executable, "-m", "minishift.cli", *args],
            capture_output=True, text=True,
        )

    def test_parse_error_is_2(self):
        r = self.invoke("subst", "--subst", "not a substitution")
        assert r.returncode == 2

    def test_usage_error_is_2(self):
        r = self.invoke("factors")
        assert r.returncode == 2

    def test_insufficient_horizon_is_3(self):
        r = self.invoke(
            "returns", "--subst", "a->ab;b->a", "--start", "a",
            "--word", "b", "--horizon", "3",
        )
        assert r.returncode == 3

    def test_success_is_0(self):
        r = self.invoke("arith", "--to-factorial", "0")
        assert r.returncode == 0
        assert json.loads(r.stdout)["digits"] == [0, 0, 0, 0]
