import json
import subprocess
import sys

from quasifree.cli import main

DISCRETE_GROUP = {"kind": "discrete", "free_rank": 1, "torsion": []}
REAL_GROUP = {
    "kind": "real_line",
    "basis": [
        {"name": "1", "lo": "1", "hi": "1"},
        {"name": "sqrt2", "lo": "1414213/1000000", "hi": "1414214/1000000"},
    ],
}


def write_spec(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_classify_command(tmp_path, capsys):
    spec = write_spec(
        tmp_path,
        "s.json",
        {"group": DISCRETE_GROUP, "algebra": {"kind": "O_n", "n": 2},
         "omega": [[1], [-1]]},
    )
    code, payload = run_cli(["classify", "--spec", spec], capsys)
    assert code == 0
    assert payload["purely_infinite"] is True
    assert payload["af_embeddable"] == "no"


def test_classify_real_open_case(tmp_path, capsys):
    spec = write_spec(
        tmp_path,
        "s.json",
        {"group": REAL_GROUP, "algebra": {"kind": "O_n", "n": 2},
         "omega": [["0", "0"], ["1", "0"]]},
    )
    code, payload = run_cli(["classify", "--spec", spec], capsys)
    assert code == 0
    assert payload["af_embeddable"] == "open"
    assert payload["stably_finite"] == "yes"


def test_decompose_command(tmp_path, capsys):
    spec = write_spec(
        tmp_path,
        "s.json",
        {"group": DISCRETE_GROUP, "algebra": {"kind": "O_n", "n": 2},
         "omega": [[1], [2]], "regions": [[0], [1]], "truncation": 2},
    )
    dot_file = tmp_path / "d.dot"
    code, payload = run_cli(
        ["decompose", "--spec", spec, "--dot", str(dot_file)], capsys
    )
    assert code == 0
    assert payload["shift_bound"] == 1
    assert payload["summand_count"] == 2
    assert dot_file.read_text().startswith("graph summands {")


def test_scaling_command(tmp_path, capsys):
    spec = write_spec(
        tmp_path,
        "s.json",
        {"group": DISCRETE_GROUP, "algebra": {"kind": "O_n", "n": 2},
         "omega": [[1], [-1]], "x_set": [[0]], "gamma0": [1]},
    )
    code, payload = run_cli(["scaling", "--spec", spec], capsys)
    assert code == 0
    assert payload["checks"] == {
        "scaling_identity": True,
        "supports_differ": True,
        "x_star_x_is_partition_sum": True,
    }


def test_eval_command(tmp_path, capsys):
    spec = write_spec(
        tmp_path,
        "s.json",
        {"group": DISCRETE_GROUP, "algebra": {"kind": "O_n", "n": 2},
         "omega": [[1], [2]]},
    )
    code, payload = run_cli(
        ["eval", "--spec", spec,
         "S[1] * chi{0} * S*[2]  *  S[2] * chi{0} * S*[1]"],
        capsys,
    )
    assert code == 0
    assert payload["canonical"] == "S[1]·chi{0}·S*[1]"


def test_verify_command(tmp_path, capsys):
    spec = write_spec(
        tmp_path,
        "s.json",
        {"group": DISCRETE_GROUP, "algebra": {"kind": "O_n", "n": 2},
         "omega": [[1], [2]], "verify_runs": 10},
    )
    code, payload = run_cli(["verify", "--spec", spec, "--seed", "5"], capsys)
    assert code == 0
    assert payload["pass"] is True


def test_error_exit_codes(tmp_path, capsys):
    # precondition error -> 2
    spec = write_spec(
        tmp_path,
        "bad.json",
        {"group": DISCRETE_GROUP, "algebra": {"kind": "O_n", "n": 2},
         "omega": [[1], [2]], "x_set": [[0]], "gamma0": [1]},
    )
    code, payload = run_cli(["scaling", "--spec", spec], capsys)
    assert code == 2
    assert payload["error"]["module"] == "scaling_constructor"
    # resource cap -> 3
    spec = write_spec(
        tmp_path,
        "big.json",
        {"group": DISCRETE_GROUP, "algebra": {"kind": "O_n", "n": 2},
         "omega": [[1], [2]], "regions": [[0], [1]], "max_terms": 3},
    )
    code, payload = run_cli(["decompose", "--spec", spec], capsys)
    assert code == 3
    # precision error -> 4
    spec = write_spec(
        tmp_path,
        "fuzzy.json",
        {"group": {
            "kind": "real_line",
            "basis": [
                {"name": "1", "lo": "1", "hi": "1"},
                {"name": "a", "lo": "0", "hi": "2"},
            ],
        }, "algebra": {"kind": "O_n", "n": 2},
         "omega": [["1", "0"], ["0", "1"]]},
    )
    code, payload = run_cli(["classify", "--spec", spec], capsys)
    assert code == 4
    assert payload["error"]["kind"] == "PrecisionError"


def test_output_byte_stability(tmp_path):
    spec_payload = {
        "group": DISCRETE_GROUP,
        "algebra": {"kind": "O_n", "n": 2},
        "omega": [[1], [-1]],
    }
    spec = write_spec(tmp_path, "s.json", spec_payload)
    runs = []
    for _ in range(2):
        proc = subprocess.run(
            [sys.executable, "-m", "quasifree.cli", "classify", "--spec", spec],
            capture_output=True,
            check=True,
        )
        runs.append(proc.stdout)
    assert runs[0] == runs[1]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quasifree.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    for name in ("classify", "decompose", "scaling", "verify", "eval"):
        assert name in proc.stdout
