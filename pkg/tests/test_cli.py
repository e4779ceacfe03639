import json

from src.cli import main as cli
from src.cli.verify import CellResult, Failure
from src.errors import InvariantViolation


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- ENUMERATE ---
def test_enumerate_prints_the_golden_list(capsys):
    code, out, _ = run(capsys, "enumerate", "--p", "3", "--ell", "2", "--n", "3")

    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 19
    assert "(∅,∅,(1^3))" in lines[1]


def test_enumerate_level_zero(capsys):
    code, out, _ = run(capsys, "enumerate", "--p", "3", "--ell", "2", "--n", "0")
    assert code == 0
    assert len(out.strip().splitlines()) == 2


def test_enumerate_json_multi_orbit(capsys):
    code, out, _ = run(capsys, "enumerate", "--p", "4", "--k", "2", "--ell", "1", "--n", "2", "--format", "json")

    assert code == 0
    data = json.loads(out)
    assert data["env"] == {"p": 4, "k": 2, "d": 2, "ell": 1, "e": 2}
    assert data["count"] == len(data["multipartitions"])
    assert all(len(lam) == 4 for lam in data["multipartitions"])


def test_output_is_deterministic(capsys):
    _, first, _ = run(capsys, "hmap", "--p", "3", "--ell", "2", "--n", "3", "--format", "json")
    _, second, _ = run(capsys, "hmap", "--p", "3", "--ell", "2", "--n", "3", "--format", "json")
    assert first == second


# --- USAGE ERRORS ---
def test_invalid_flags_exit_with_one(capsys):
    code, _, err = run(capsys, "enumerate", "--p", "4", "--k", "3", "--n", "1")
    assert code == 1
    assert "must divide" in err

    code, _, err = run(capsys, "enumerate", "--n", "1")
    assert code == 1
    assert "usage" in err

    code, _, _ = run(capsys, "frobnicate")
    assert code == 1


def test_domain_errors_exit_with_one(capsys):
    code, _, err = run(capsys, "eta", "--p", "2", "--ell", "2", "--n", "1", "--m", "1")
    assert code == 1
    assert "must divide" in err


def test_invariant_violation_exits_with_two(mocker, capsys):
    mocker.patch("src.cli.main.count_report", side_effect=InvariantViolation("not integral"))
    code, _, err = run(capsys, "count", "--p", "3", "--ell", "2", "--n", "3")
    assert code == 2
    assert "not integral" in err


# --- HMAP / COUNT / ETA ---
def test_hmap_table(capsys):
    code, out, _ = run(capsys, "hmap", "--p", "3", "--ell", "2", "--n", "3", "--format", "json")

    assert code == 0
    data = json.loads(out)
    assert len(data["orbits"]) == 7
    assert data["orbits"][-1] == {"orbit": [[[1], [1], [1]]], "order": 1, "stabilizer_size": 3}
    assert data["orbits"][0]["orbit"][1] == [[1, 1], [], [1]]


def test_count_with_check(capsys):
    code, out, _ = run(capsys, "count", "--p", "3", "--ell", "2", "--n", "3", "--check")

    assert code == 0
    assert "irr_ppn = 9" in out
    assert "PASS" in out


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--p", "3", "--ell", "2", "--n", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["n_tilde"]["1"] == 1
    assert data["n_exact"]["1"] == 1
    assert data["irr_ppn"] == 9


def test_eta_single_row(capsys):
    code, out, _ = run(capsys, "eta", "--p", "3", "--ell", "2", "--m", "1", "--n", "3", "--format", "json")

    assert code == 0
    assert json.loads(out)["rows"] == [{"source": [[1]], "image": [[1], [1], [1]]}]


# --- FOCK / RESIDUES / LATTICE ---
def test_fock_applies_a_word(capsys):
    code, out, _ = run(
        capsys, "fock", "--p", "3", "--ell", "2", "--state", "[[],[],[]]", "--word", "F0", "--format", "json"
    )

    assert code == 0
    assert json.loads(out)["terms"] == [{"multipartition": [[1], [], []], "coefficient": [[0, 1]]}]


def test_fock_rejects_bad_state(capsys):
    code, _, err = run(capsys, "fock", "--p", "3", "--ell", "2", "--state", "not json")
    assert code == 1
    assert "--state" in err


def test_fock_rejects_a_coefficient_pair_missing_its_exponent(capsys):
    """A coefficient entry must be an [exponent, coefficient] pair; [0] alone exits 1 without a traceback."""
    state = '{"terms": [{"multipartition": [[], [], []], "coefficient": [[0]]}]}'
    code, out, err = run(capsys, "fock", "--p", "3", "--ell", "2", "--state", state, "--word", "F0")

    assert code == 1
    assert out == ""
    assert "--state" in err


def test_residues_of_the_worked_example(capsys):
    code, out, _ = run(
        capsys, "residues", "--p", "4", "--ell", "2", "--lambda", "[[2,1],[1,1],[1,1,1],[2]]", "--format", "json"
    )

    assert code == 0
    grid = json.loads(out)["residues"]
    assert grid[0] == [[0, 1], [7]]
    assert grid[3] == [[6, 7]]


def test_lattice_json_has_edges(capsys):
    code, out, _ = run(capsys, "lattice", "--p", "3", "--ell", "2", "--n", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert {edge["residue"] for edge in data["edges"]} == {0, 2, 4}
    assert all(edge["from"] == 0 for edge in data["edges"])


def test_out_writes_a_file(tmp_path, capsys):
    target = tmp_path / "k3.json"
    code, out, _ = run(capsys, "enumerate", "--p", "3", "--ell", "2", "--n", "3", "--format", "json", "--out", str(target))

    assert code == 0
    assert out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["count"] == 19


# --- VERIFY ---
def test_verify_reports_failures_with_exit_two(mocker, capsys):
    # 1. Mock the grid run (one failing cell)
    failing = CellResult(cell="(p=2, k=1, d=2, ell=1, e=2)", checks=3, failures=[Failure("eta bijection", "n=2")])
    mock_run = mocker.patch("src.cli.main.run_verify", return_value=[failing])

    # 2. Run the command
    code, out, _ = run(capsys, "verify", "--max-n", "2", "--seed", "5")

    # 3. Assertions
    assert code == 2
    assert "FAIL (p=2, k=1, d=2, ell=1, e=2) [eta bijection]: n=2" in out
    args = mock_run.call_args.args
    assert args[1:3] == (2, 5)


def test_verify_passes_with_exit_zero(mocker, capsys):
    mocker.patch("src.cli.main.run_verify", return_value=[CellResult(cell="cell", checks=1)])
    code, out, _ = run(capsys, "verify", "--format", "json")
    assert code == 0
    assert json.loads(out)["passed"] is True
