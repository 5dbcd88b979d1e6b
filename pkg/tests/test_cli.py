import json

import pytest
from click.testing import CliRunner

from ratlq.cli import main
from tests import reference as ref


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.setenv("RATLQ_CACHE", str(tmp_path / "cache"))
    runner = CliRunner()
    return lambda *args: runner.invoke(main, list(args))


def test_compute_color_zero(run):
    result = run("compute", "--fraction", "5/2", "--color", "0", "--method", "skein")
    assert result.exit_code == 0 and result.output.strip() == "1"


def test_compute_json_from_printed_tables(run):
    result = run("compute", "--fraction", "7/1", "--color", "1", "--method", "quiver-alg", "--format", "json")
    assert result.exit_code == 0
    out = json.loads(result.output)
    assert out["value"]["denom_index"] == 0
    expected = {}
    for s, x, d in zip(ref.K71_S, ref.K71_A, (ref.K71_Q[i][i] for i in range(7))):
        key = (s + d, x)
        expected[key] = expected.get(key, 0) + (-1 if s % 2 else 1)
    got = {(eq, ea): int(c) for eq, ea, c in out["value"]["numerator"]}
    assert got == {k: c for k, c in expected.items() if c}


def test_compute_link_is_a_ratio(run):
    result = run("compute", "--fraction", "8/3", "--color", "1", "--method", "quiver-geo", "--format", "json")
    assert json.loads(result.output)["value"]["denom_index"] == 1


def test_compute_latex(run):
    result = run("compute", "--fraction", "8/3", "--color", "1", "--format", "latex")
    assert result.exit_code == 0 and result.output.startswith("\\frac{")


@pytest.mark.parametrize("bad", ["3/4", "4/2", "seven", "7/4"])
def test_bad_fraction_exits_two(run, bad):
    assert run("compute", "--fraction", bad).exit_code == 2


def test_cache_round_trip_is_byte_identical(run, tmp_path):
    args = ("compute", "--fraction", "5/2", "--color", "2", "--format", "json")
    cold = run(*args).output
    files = list((tmp_path / "cache").iterdir())
    assert len(files) == 1 and files[0].suffix == ".json"
    warm = run(*args).output
    assert cold == warm
    assert run(*args, "--no-cache").output == cold


def test_stale_cache_is_ignored(run, tmp_path):
    args = ("compute", "--fraction", "3/1", "--color", "1", "--format", "json")
    cold = run(*args).output
    path = next((tmp_path / "cache").iterdir())
    record = json.loads(path.read_text())
    record["engine"] = "0.0.0-old"
    record["value"] = {"numerator": [], "denom_index": 0}
    path.write_text(json.dumps(record))
    assert run(*args).output == cold


def test_quiver_command_golden(run):
    out = json.loads(run("quiver", "--fraction", "7/1", "--route", "algebraic").output)
    assert out["Q"] == [list(r) for r in ref.K71_Q]
    assert out["S"] == list(ref.K71_S) and out["mu"] == [-6, 0, 0]
    out = json.loads(run("quiver", "--fraction", "8/1", "--route", "geometric", "--raw").output)
    assert out["Q"] == [list(r) for r in ref.L81_Q]


def test_quiver_command_jones(run):
    # the printed colored Jones data comes from the uncorrected table in its printed order
    out = json.loads(run("quiver", "--fraction", "5/2", "--variant", "jones", "--raw").output)
    assert [out["H"][i] for i in (0, 1, 2, 4, 3)] == list(ref.JONES52_H)
    assert [out["Q"][i][i] for i in range(5)] == [ref.JONES52_Q[i][i] for i in (0, 1, 2, 4, 3)]


def test_quiver_command_latex_and_symmetric(run):
    result = run("quiver", "--fraction", "5/2", "--format", "latex")
    assert result.output.count("\\begin{bmatrix}") == 3
    sym = json.loads(run("quiver", "--fraction", "3/1", "--variant", "symmetric").output)
    plain = json.loads(run("quiver", "--fraction", "3/1").output)
    assert sym["S"] == [-s for s in plain["S"]]


def test_verify_small_bound(run):
    result = run("verify", "--max-denominator", "3", "--max-color", "1", "--workers", "1")
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0].split()[0] == "2/1" and lines[-1] == "1/1 fractions pass"


def test_verify_reports_failure(run, monkeypatch):
    import ratlq.cli as cli
    from ratlq.errors import MismatchReport
    from ratlq.algebra import ONE

    def fail(args):
        return str(args[0]), None, str(MismatchReport(("skein", "geometric"), 1, ONE))

    monkeypatch.setattr(cli, "_verify_one", fail)
    monkeypatch.setattr(cli, "ProcessPoolExecutor", _SerialPool)
    result = run("verify", "--max-denominator", "4", "--max-color", "1")
    assert result.exit_code == 3


class _SerialPool:
    def __init__(self, max_workers=None):
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False

    def map(self, fn, jobs):
        return map(fn, jobs)
