import json
import os
import subprocess
import sys


CLI = [sys.executable, "-m", "stochastihedron.cli"]


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("CONTINGENCY_MAX_N", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, env=env
    )


def run_json(*args, **kw):
    proc = run_cli(*args, **kw)
    assert proc.returncode in (0, 1), proc.stderr
    return proc.returncode, json.loads(proc.stdout)


def test_f_vector_command():
    code, report = run_json("--stable", "f-vector", "--n", "3")
    assert code == 0
    assert report["pass"] is True
    assert report["details"]["f_vector"] == {"0": 6, "1": 12, "2": 10, "3": 4, "4": 1}
    assert report["details"]["total"] == 33
    assert "elapsed_ms" not in report


def test_stable_output_is_byte_identical():
    first = run_cli("--stable", "sphericity", "--n", "2")
    second = run_cli("--stable", "sphericity", "--n", "2")
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


def test_unstable_output_has_timing():
    code, report = run_json("metamatrix", "--n", "2")
    assert code == 0
    assert "elapsed_ms" in report


def test_metamatrix_weight1():
    code, report = run_json("--stable", "metamatrix", "--n", "1")
    assert code == 0
    assert report["details"]["entries"] == [[1]]


def test_metamatrix_csv():
    code, report = run_json("--stable", "metamatrix", "--n", "3", "--format", "csv")
    assert code == 0
    assert report["details"]["csv"] == "1,2,1\n2,8,6\n1,6,6\n"


def test_enumerate_matrices():
    code, report = run_json("--stable", "enumerate", "--n", "2")
    assert code == 0
    assert report["details"]["count"] == 5
    assert report["details"]["matrices"][0] == {"rows": [[2]]}


def test_enumerate_with_margins():
    code, report = run_json(
        "--stable", "enumerate", "--alpha", "2,1", "--beta", "2,1"
    )
    assert code == 0
    assert report["details"]["count"] == 2


def test_poset_exports():
    code, report = run_json("--stable", "poset", "--n", "2")
    assert code == 0
    assert len(report["details"]["elements"]) == 5
    code, report = run_json("--stable", "poset", "--n", "2", "--format", "dot")
    assert code == 0
    assert report["details"]["dot"].startswith("digraph")


def test_verify_identities():
    code, report = run_json("--stable", "verify-identities", "--n", "4")
    assert code == 0
    assert report["details"]["total"] == 281
    assert all(report["details"]["identities"].values())


def test_total_positivity_command():
    code, report = run_json("--stable", "total-positivity", "--n", "4")
    assert code == 0
    assert report["details"]["totally_positive"] is True


def test_anodyne_and_meet_join():
    code, report = run_json("--stable", "anodyne-classes", "--n", "3")
    assert code == 0
    assert report["details"]["class_count"] == 3
    code, report = run_json(
        "--stable", "anodyne-classes", "--n", "3", "--kind", "horizontal", "--full"
    )
    assert code == 0
    assert report["details"]["fiber_label"] == "fnf"
    assert len(report["details"]["classes"]) == report["details"]["class_count"]
    code, report = run_json("--stable", "meet-join", "--n", "3")
    assert code == 0
    assert report["details"]["meet"]["pass"] is True
    assert report["details"]["join"]["both"]["classes_match_fibers"] is True


def test_meet_join_n6_skips_join():
    code, report = run_json("--stable", "meet-join", "--n", "6")
    assert code == 0
    assert report["details"]["join"] == "skipped (capacity)"


def test_sphericity_command():
    code, report = run_json("--stable", "sphericity", "--n", "2", "--full")
    assert code == 0
    assert report["details"]["cells_checked"] == 5
    assert report["details"]["violations"] == []
    assert len(report["details"]["cells"]) == 5


def test_classify_command(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(
        json.dumps(
            {"points": [{"re": "0", "im": "1"}, {"re": "0", "im": "-1"}]}
        )
    )
    code, report = run_json("--stable", "classify", "--input", str(path))
    assert code == 0
    assert report["details"]["matrix"] == {"rows": [[1, 1]]}
    assert report["details"]["fnf"]["beta"] == [1, 1]
    assert report["details"]["fnf"]["gamma"] == [[1], [1]]


def test_classify_malformed_input(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    proc = run_cli("classify", "--input", str(path))
    assert proc.returncode == 2
    assert "error" in proc.stderr


def test_sheaf_commands(tmp_path):
    code, report = run_json("--stable", "constant-sheaf", "--n", "2", "--dim", "1")
    assert code == 0
    rep_json = report["details"]["representation"]
    path = tmp_path / "rep.json"
    path.write_text(json.dumps(rep_json))
    for strat in ("cont", "fnf", "ifnf", "complex"):
        code, report = run_json(
            "--stable", "sheaf-check", "--input", str(path), "--strat", strat
        )
        assert code == 0
        assert report["details"]["constructible"] is True


def test_failing_sheaf_check_exits_nonzero(tmp_path):
    code, report = run_json("--stable", "constant-sheaf", "--n", "2", "--dim", "1")
    rep_json = report["details"]["representation"]
    # zero out all maps into the top cell and the covers of one permutation
    # matrix, keeping the functor condition; the horizontal anodyne cover
    # then fails invertibility
    for item in rep_json["maps"]:
        if item["to"] == 0 or (item["from"] == 4 and item["to"] == 1):
            item["matrix"] = [["0"]]
    path = tmp_path / "rep.json"
    path.write_text(json.dumps(rep_json))
    code, report = run_json(
        "--stable", "sheaf-check", "--input", str(path), "--strat", "fnf"
    )
    assert code == 1
    assert report["pass"] is False
    assert report["details"]["witness"]["kind"] == "horizontal"
    code, report = run_json(
        "--stable", "sheaf-check", "--input", str(path), "--strat", "cont"
    )
    assert code == 0


def test_unknown_subcommand_exits_2():
    proc = run_cli("frobnicate")
    assert proc.returncode == 2


def test_usage_errors_exit_2():
    assert run_cli("enumerate", "--what", "partitions").returncode == 2
    assert run_cli("enumerate").returncode == 2
    assert run_cli("enumerate", "--alpha", "2,x").returncode == 2
    assert run_cli("enumerate", "--n", "3", "--alpha", "2,2").returncode == 2


def test_capacity_exit_code_and_env_override():
    proc = run_cli("enumerate", "--n", "8", "--p", "1")
    assert proc.returncode == 3
    assert "capacity" in proc.stderr
    proc = run_cli(
        "--stable", "enumerate", "--n", "8", "--p", "1",
        env_extra={"CONTINGENCY_MAX_N": "8"},
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["details"]["count"] == 128


def test_pretty_output():
    proc = run_cli("--pretty", "--stable", "f-vector", "--n", "2")
    assert proc.returncode == 0
    assert proc.stdout.startswith("f-vector: PASS")
