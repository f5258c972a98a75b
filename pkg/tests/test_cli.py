"""Command-line interface: subcommands, reports, exit codes."""

import json

import pytest

from conftest import EXAMPLE_GENERATORS
from tensurf.bipoly import DEFAULT_PRIME, parse_poly, poly_to_str
from tensurf.cli import main

P = DEFAULT_PRIME


@pytest.fixture()
def example_job(tmp_path):
    path = tmp_path / "job.json"
    path.write_text(json.dumps(
        {"a": 2, "b": 5, "generators": EXAMPLE_GENERATORS}))
    return str(path)


@pytest.fixture()
def basepoint_job(tmp_path):
    path = tmp_path / "bp.json"
    path.write_text(json.dumps(
        {"a": 2, "b": 2,
         "generators": ["s^2*u^2", "s*t*u^2", "t^2*u^2",
                        "s^2*u*v + t^2*u*v"]}))
    return str(path)


@pytest.fixture()
def undetermined_job(tmp_path):
    gens = []
    for B, C in zip(["u^2", "u*v", "v^2", "u^2 + u*v"],
                    ["s^2", "s*t", "t^2", "t^2 + s*t"]):
        f = (parse_poly(B, P) * parse_poly("s^2 - 3*t^2", P)
             + parse_poly(C, P) * parse_poly("u^2 - 3*v^2", P))
        gens.append(poly_to_str(f))
    path = tmp_path / "und.json"
    path.write_text(json.dumps({"a": 2, "b": 2, "generators": gens}))
    return str(path)


# ---------------------------------------------------------------------------
# analyze


def test_analyze_text(example_job, capsys):
    assert main(["analyze", example_job]) == 0
    out = capsys.readouterr().out
    assert "a = 2, b = 5, prime = 2147483647" in out
    assert "n = 3, dim V = 4, case dim4" in out
    assert "column degrees: 1, 1, 1" in out
    assert "strand size = 20" in out


def test_analyze_json(example_job, capsys):
    assert main(["analyze", example_job, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["n"] == 3
    assert payload["kernel_dim"] == 1
    assert payload["dim_v"] == 4
    assert payload["case"] == "dim4"
    assert payload["mus"] == [1, 1, 1]
    assert payload["strand_size"] == 20
    assert [s["label"] for s in payload["syzygies"]] == ["S", "S1", "S2", "S3"]
    assert [s["columns"] for s in payload["syzygies"]] == [8, 4, 4, 4]


# ---------------------------------------------------------------------------
# implicitize


def test_implicitize_json_frozen(example_job, capsys):
    assert main(["implicitize", example_job, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["deg_f"] == 10
    assert payload["deg_phi"] == 2
    assert payload["c"] == P - 1
    assert payload["strand_size"] == 20
    assert payload["column_counts"] == {"S": 8, "S1": 4, "S2": 4, "S3": 4}
    assert payload["basepoints"]["status"] == "free"
    assert payload["certificate"]["passed"] is True
    assert payload["oracle"]["kernel_dims"][-1] == [10, 1]
    assert len(payload["f_coefficients"]) == 143
    assert payload["f"].startswith("x0^9*x3")


def test_implicitize_stdout_is_deterministic(example_job, capsys):
    assert main(["implicitize", example_job, "--json"]) == 0
    first = capsys.readouterr().out
    assert main(["implicitize", example_job, "--json"]) == 0
    second = capsys.readouterr().out
    assert first == second


def test_implicitize_text(example_job, capsys):
    assert main(["implicitize", example_job]) == 0
    out = capsys.readouterr().out
    assert "deg F = 10, deg phi = 2, c = 2147483646" in out
    assert "strand: 20 x 20 (columns: S=8, S1=4, S2=4, S3=4)" in out
    assert "certificate: det = c * F^2 verified at 40 random points" in out
    assert "basepoints: free" in out


def test_implicitize_timings_go_to_stderr(example_job, capsys):
    assert main(["implicitize", example_job, "--json", "--oracle"]) == 0
    captured = capsys.readouterr()
    assert "[time]" not in captured.out
    assert "[time] oracle:" in captured.err
    assert "[oracle] degree 10: kernel dimension 1" in captured.err


def test_implicitize_side_st_rejected_for_asymmetric_input(example_job,
                                                           capsys):
    assert main(["implicitize", example_job, "--side", "st"]) == 2
    assert "hypothesis violation" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# verify


def test_verify_text(example_job, capsys):
    assert main(["verify", example_job]) == 0
    out = capsys.readouterr().out
    assert "deg F = 10, deg phi = 2, c = 2147483646" in out
    assert "PASS det = c * F^2 at 40 random points" in out


def test_verify_json_omits_coefficients(example_job, capsys):
    assert main(["verify", example_job, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "f_coefficients" not in payload
    assert payload["deg_f"] == 10


def test_verify_interpolate_mode(example_job, capsys):
    assert main(["verify", example_job, "--det-mode", "interpolate",
                 "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["certificate"]["mode"] == "interpolate"


def test_job_options_supply_defaults(tmp_path, capsys):
    path = tmp_path / "job.json"
    path.write_text(json.dumps(
        {"a": 2, "b": 5, "generators": EXAMPLE_GENERATORS,
         "options": {"det_mode": "interpolate", "n_points": 12}}))
    assert main(["verify", str(path), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["certificate"]["mode"] == "interpolate"
    assert payload["certificate"]["n_points"] == 12
    # command-line flags override file options
    assert main(["verify", str(path), "--det-mode", "eval", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["certificate"]["mode"] == "eval"


# ---------------------------------------------------------------------------
# generate


def test_generate_then_implicitize(tmp_path, capsys):
    out_path = tmp_path / "generated.json"
    assert main(["generate", "--a", "2", "--b", "3", "--n", "2",
                 "--dimv", "2", "--out", str(out_path)]) == 0
    capsys.readouterr()
    job = json.loads(out_path.read_text())
    assert job["a"] == 2 and job["b"] == 3
    assert len(job["generators"]) == 4
    assert main(["implicitize", str(out_path), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim_v"] == 2
    assert payload["deg_phi"] * payload["deg_f"] == 12


def test_generate_is_deterministic(tmp_path, capsys):
    a_path, b_path = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["generate", "--a", "2", "--b", "5", "--n", "3",
            "--dimv", "3", "--mu", "1", "--seed", "4", "--index", "9"]
    assert main(argv + ["--out", str(a_path)]) == 0
    assert main(argv + ["--out", str(b_path)]) == 0
    assert a_path.read_text() == b_path.read_text()


# ---------------------------------------------------------------------------
# exit codes and error handling


def test_selftest_passes(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.count("PASS") >= 8


def test_usage_errors_exit_1(capsys):
    assert main(["frobnicate"]) == 1       # unknown subcommand
    assert main([]) == 1                   # missing subcommand
    assert main(["analyze"]) == 1          # missing job argument
    assert "error:" in capsys.readouterr().err


def test_missing_job_file_returns_1(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "nope.json")]) == 1
    assert "error:" in capsys.readouterr().err


def test_malformed_job_returns_1(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{\"a\": 2}")
    assert main(["analyze", str(path)]) == 1
    path.write_text("not json at all")
    assert main(["analyze", str(path)]) == 1


def test_basepoint_job_exits_2(basepoint_job, capsys):
    assert main(["implicitize", basepoint_job]) == 2
    err = capsys.readouterr().err
    assert "hypothesis violation" in err
    assert "basepoint" in err


def test_undetermined_screen_requires_force(undetermined_job, capsys):
    assert main(["implicitize", undetermined_job]) == 2
    err = capsys.readouterr().err
    assert "undetermined" in err and "--force" in err
    # forcing proceeds past the screen; this input then fails the syzygy
    # degree hypothesis instead
    assert main(["implicitize", undetermined_job, "--force"]) == 2
    err = capsys.readouterr().err
    assert "below 2n - 1" in err


def test_job_from_stdin(example_job, capsys, monkeypatch):
    import io
    payload = open(example_job).read()
    monkeypatch.setattr("sys.stdin", io.StringIO(payload))
    assert main(["analyze", "-", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["n"] == 3
