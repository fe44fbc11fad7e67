import json

import pytest

from src.cli import EXIT_INPUT_ERROR, EXIT_OK, EXIT_SIZE_GUARD, EXIT_VERIFY_FAILED, main
from src.instance_io import load_instance, load_result


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def planar_instance(tmp_path, capsys):
    """A generated cluster instance with (p, q) = (7, 5)."""
    path = str(tmp_path / "instance.json")
    code, _, _ = run(capsys, "gen", "planar", "--n", "25", "--p", "7", "--q", "5",
                     "--scheme", "cluster", "--seed", "42", "--out", path)
    assert code == EXIT_OK
    return path


def test_reduce_pq(capsys):
    assert run(capsys, "reduce-pq", "--h", "3", "--p", "4", "--q", "4")[:2] == (EXIT_OK, "3 3\n")


def test_reduce_pq_inadmissible(capsys):
    code, _, err = run(capsys, "reduce-pq", "--h", "3", "--p", "4", "--q", "3")
    assert code == EXIT_INPUT_ERROR
    error = json.loads(err.strip().splitlines()[-1])["error"]
    assert error["type"] == "InadmissibleParametersError"
    assert error["exit_code"] == EXIT_INPUT_ERROR


def test_reduction_instance_then_decide_right(tmp_path, capsys):
    path = str(tmp_path / "reduction.json")
    assert run(capsys, "reduction-instance", "--array", "1,0,0", "--out", path)[0] == EXIT_OK
    code, out, _ = run(capsys, "decide-right", path, "--x", "0")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["decision"] is True
    assert document["witness"] == [1, 2]

    assert run(capsys, "reduction-instance", "--array", "0,1,2", "--out", path)[0] == EXIT_OK
    assert json.loads(run(capsys, "decide-right", path, "--x", "0")[1])["decision"] is False


def test_stab_verify_pipeline(planar_instance, tmp_path, capsys):
    result_path = str(tmp_path / "result.json")
    code, _, _ = run(capsys, "stab", planar_instance, "--verify", "--out", result_path)
    assert code == EXIT_OK
    result = load_result(result_path)
    assert len(result.points) <= 3
    assert result.certificate.verdict

    code, out, _ = run(capsys, "verify", planar_instance, result_path)
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] is True


def test_stab_is_deterministic_apart_from_timing(planar_instance, capsys):
    outputs = []
    for _ in range(2):
        code, out, _ = run(capsys, "stab", planar_instance, "--mode", "randomized", "--seed", "5")
        assert code == EXIT_OK
        document = json.loads(out)
        document.pop("timing", None)
        outputs.append(document)
    assert outputs[0] == outputs[1]


def test_verify_detects_missing_points(planar_instance, tmp_path, capsys):
    result_path = str(tmp_path / "result.json")
    run(capsys, "stab", planar_instance, "--out", result_path)
    document = json.loads(open(result_path).read())
    document["points"] = document["points"][:0]
    with open(result_path, "w") as handle:
        json.dump(document, handle)
    code, out, _ = run(capsys, "verify", planar_instance, result_path)
    assert code == EXIT_VERIFY_FAILED
    assert json.loads(out)["witness"] == list(range(25))


def test_gen_tree_and_poset(tmp_path, capsys):
    tree_path = str(tmp_path / "tree.json")
    assert run(capsys, "gen", "tree", "--n", "10", "--p", "4", "--q", "2", "--seed", "1",
               "--out", tree_path)[0] == EXIT_OK
    assert len(load_instance(tree_path)) == 10
    code, out, _ = run(capsys, "stab", tree_path, "--verify")
    assert code == EXIT_OK
    assert json.loads(out)["certificate"]["verdict"] is True

    poset_path = str(tmp_path / "poset.json")
    assert run(capsys, "gen", "poset", "--n", "10", "--p", "5", "--q", "4", "--seed", "1",
               "--out", poset_path)[0] == EXIT_OK
    assert run(capsys, "stab", poset_path, "--verify")[0] == EXIT_OK


def test_geometry_commands(planar_instance, capsys):
    code, out, _ = run(capsys, "max-stab", planar_instance)
    assert code == EXIT_OK
    assert json.loads(out)["count"] >= 1

    quadratic = json.loads(run(capsys, "count-pairs", planar_instance)[1])
    sweep = json.loads(run(capsys, "count-pairs", planar_instance, "--method", "sweep")[1])
    assert quadratic["count"] == sweep["count"]


def test_count_intervals(tmp_path, capsys):
    path = tmp_path / "intervals.json"
    path.write_text(json.dumps({"format_version": 1, "kind": "intervals",
                                "intervals": [[0, 1], [1, 2], [5, 6]]}))
    code, out, _ = run(capsys, "count-intervals", str(path))
    assert code == EXIT_OK
    assert json.loads(out)["count"] == 1


def test_min_stab_and_its_guard(planar_instance, tmp_path, capsys):
    code, out, _ = run(capsys, "min-stab", planar_instance, "--budget", "3")
    assert code == EXIT_OK
    assert json.loads(out)["minimum"] in (1, 2, 3)

    path = str(tmp_path / "reduction.json")
    run(capsys, "reduction-instance", "--array", "0,1,2", "--out", path)
    code, out, _ = run(capsys, "min-stab", path, "--budget", "2")
    assert json.loads(out)["minimum"] == "exceeds-budget"
    code, _, err = run(capsys, "min-stab", path, "--budget", "3", "--min-stab-limit", "1")
    assert code == EXIT_SIZE_GUARD
    assert json.loads(err.strip().splitlines()[-1])["error"]["guard"] == "min_stab_limit"


def test_input_errors(tmp_path, capsys):
    missing = str(tmp_path / "missing.json")
    assert run(capsys, "stab", missing)[0] == EXIT_INPUT_ERROR

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"format_version": 1, "kind": "tree", "p": 2, "q": 2,
                               "tree": {"n": 3, "edges": [[0, 1], [1, 2]]},
                               "subtrees": [[0, 2]]}))
    code, _, err = run(capsys, "stab", str(bad))
    assert code == EXIT_INPUT_ERROR
    error = json.loads(err.strip().splitlines()[-1])["error"]
    assert error["type"] == "InstanceFormatError"
    assert "subtrees[0]" in error["message"]


def test_decide_right_needs_planar_instance(tmp_path, capsys):
    path = tmp_path / "intervals.json"
    path.write_text(json.dumps({"format_version": 1, "kind": "intervals", "intervals": []}))
    assert run(capsys, "decide-right", str(path), "--x", "0")[0] == EXIT_INPUT_ERROR
