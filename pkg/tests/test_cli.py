import json

import pytest

from src.bench import COLUMNS
from src.cli import main
from src.config import settings
from src.serialization import load_instance, load_solution


def _json(capsys):
    return json.loads(capsys.readouterr().out)


@pytest.fixture
def diagonal(tmp_path, capsys):
    path = tmp_path / "diag.json"
    assert main(["gen", "--kind", "diagonal", "--n", "3", "--out", str(path)]) == 0
    assert _json(capsys)["demands"] == 3
    return path


def test_gen_every_kind(tmp_path, capsys):
    for kind in ("random", "uniform", "thin", "diagonal", "triangular", "unit-disk", "disk", "kpartite"):
        out = tmp_path / f"{kind}.json"
        assert main(["gen", "--kind", kind, "--n", "6", "--seed", "2", "--radii", "1,2", "--out", str(out)]) == 0
        assert len(load_instance(out).points) == {"diagonal": 12, "triangular": 7}.get(kind, 6)
    capsys.readouterr()


def test_solve_and_verify(tmp_path, capsys, diagonal):
    sol = tmp_path / "sol.json"
    assert main(["solve", "--alg", "horizontal", "--in", str(diagonal), "--out", str(sol)]) == 0
    summary = _json(capsys)
    assert summary["feasible"] is True
    assert summary["cost"] == len(load_solution(sol))

    assert main(["verify", "--in", str(diagonal), "--solution", str(sol)]) == 0
    assert _json(capsys)["feasible"] is True


def test_solve_to_stdout(capsys, diagonal):
    assert main(["solve", "--alg", "vertical", "--strips", "2", "--in", str(diagonal)]) == 0
    assert json.loads(capsys.readouterr().out)["version"] == 1


def test_verify_reports_infeasible(tmp_path, capsys, diagonal):
    empty = tmp_path / "empty.json"
    empty.write_text('{"version": 1, "points": []}', encoding="utf-8")

    assert main(["verify", "--in", str(diagonal), "--solution", str(empty)]) == 1
    assert len(_json(capsys)["violated"]) == 3


def test_input_errors_exit_2(tmp_path, capsys, diagonal):
    assert main(["solve", "--alg", "horizontal", "--in", str(tmp_path / "missing.json")]) == 2
    assert main(["solve", "--alg", "greedy", "--in", str(diagonal)]) == 2
    assert main(["gen", "--kind", "random", "--n", "4", "--density", "2", "--out", str(tmp_path / "x.json")]) == 2


def test_budget_exit_3(capsys, diagonal):
    assert main(["solve", "--alg", "exact", "--cap", "1", "--in", str(diagonal)]) == 3


def test_unknown_algorithm_is_a_usage_error(diagonal):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--alg", "simplex", "--in", str(diagonal)])
    assert exc.value.code == 2


def test_bound(capsys, diagonal):
    assert main(["bound", "--which", "all", "--in", str(diagonal)]) == 0
    out = _json(capsys)
    assert out["is"] >= 1
    assert out["ir"] == 1
    assert out["vs"] == 3
    assert out["opt_lower_bound"] == max(out["is"], out["vs"], out["components"])

    assert main(["bound", "--which", "ir", "--cap", "1", "--in", str(diagonal)]) == 3


def test_reduce_with_assignment(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 3 2\n1 2 3 0\n-1 2 -3 0\n", encoding="utf-8")
    out = tmp_path / "gadget.json"

    assert main(["reduce", "--cnf", str(cnf), "--out", str(out), "--emit-assignment-solution", "T,T,F"]) == 0
    summary = _json(capsys)
    assert summary["alpha"] == 12 * 2 + 4 * 3
    assert summary["solution_size"] == summary["alpha"]
    assert summary["satisfied_sc"] == 2

    solution = tmp_path / "gadget.solution.json"
    assert main(["verify", "--in", str(out), "--solution", str(solution)]) == 0


def test_reduce_rejects_bad_assignment(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 3 1\n1 2 3 0\n", encoding="utf-8")
    args = ["reduce", "--cnf", str(cnf), "--out", str(tmp_path / "g.json"), "--emit-assignment-solution"]

    assert main(args + ["10"]) == 2
    assert main(args + ["1x0"]) == 2


def test_render(tmp_path, capsys, diagonal):
    sol = tmp_path / "sol.json"
    main(["solve", "--alg", "horizontal", "--in", str(diagonal), "--out", str(sol)])
    svg = tmp_path / "scene.svg"

    assert main(["render", "--in", str(diagonal), "--solution", str(sol), "--witness", "both", "--labels", "--out", str(svg)]) == 0
    assert svg.read_text(encoding="utf-8").lstrip().startswith("<?xml")


def test_bench_to_stdout(tmp_path, capsys):
    config = tmp_path / "bench.yaml"
    config.write_text(
        "seeds: [0]\ntiming: false\nfamilies:\n  - family: thin\n    sizes: [6]\n    algorithms: [horizontal, naive]\n",
        encoding="utf-8",
    )
    assert main(["bench", "--config", str(config), "--out", "-"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == ",".join(COLUMNS)
    assert len(lines) == 3


def test_bench_defaults_to_artifacts(tmp_path, monkeypatch, capsys):
    (tmp_path / "configs").mkdir()
    (tmp_path / "configs" / "bench.yaml").write_text(
        "families:\n  - family: diagonal\n    sizes: [2]\n    algorithms: [horizontal]\n", encoding="utf-8"
    )
    monkeypatch.setattr(settings, "PROJECT_ROOT", str(tmp_path))

    assert main(["bench"]) == 0
    assert _json(capsys)["records"] == 1
    assert (tmp_path / "artifacts" / "bench.csv").exists()


def test_bench_scaling_shortfall_exits_1(tmp_path, capsys, caplog):
    config = tmp_path / "bench.yaml"
    config.write_text(
        "seeds: [0, 1]\ntiming: false\nfamilies:\n  - family: thin\n    sizes: [8]\n"
        "    algorithms: [vertical, naive]\nscaling: {threshold: 0.8, sizes: [8, 99]}\n",
        encoding="utf-8",
    )
    assert main(["bench", "--config", str(config), "--out", str(tmp_path / "out.csv")]) == 1
    assert _json(capsys)["records"] == 4
    assert "n=99: vertical beats naive on 0% of seeds, below 80%" in caplog.text


def test_bench_scaling_threshold_zero_passes(tmp_path, capsys):
    config = tmp_path / "bench.yaml"
    config.write_text(
        "seeds: [0]\ntiming: false\nfamilies:\n  - family: thin\n    sizes: [8]\n"
        "    algorithms: [vertical, naive]\nscaling: {threshold: 0.0, sizes: [8]}\n",
        encoding="utf-8",
    )
    assert main(["bench", "--config", str(config), "--out", "-"]) == 0
