"""The command line, driven in-process through main(argv)."""

import json

import numpy as np
import pytest

from shiwa import LEAVES, __version__
from shiwa.benchmark import matrix_from_csv, read_results, score
from shiwa.cli import main


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0
    assert capsys.readouterr().out.strip() == __version__ == "0.1.0"


# -- explain -------------------------------------------------------------------


def test_explain_memetic_route(capsys):
    assert main(["explain", "--dim", "10", "--budget", "10000"]) == 0
    out = capsys.readouterr().out.rstrip()
    assert out.endswith("leaf: chaining CMA + Powell (memetic)")
    assert "Sequential and budget > 6000 and d > 7? -> yes" in out


def test_explain_es_route(capsys):
    assert main(["explain", "--dim", "50", "--budget", "500"]) == 0
    out = capsys.readouterr().out.rstrip()
    assert out.endswith("leaf: (1+1)-ES with 1/5 rule")


def test_explain_discrete_routes(capsys):
    assert main(["explain", "--dim", "8", "--budget", "1000", "--discrete",
                 "--noisy"]) == 0
    out = capsys.readouterr().out.rstrip()
    assert out.endswith(f"leaf: {LEAVES['optimistic-discrete']}")

    assert main(["explain", "--dim", "100", "--budget", "1000", "--discrete"]) == 0
    out = capsys.readouterr().out.rstrip()
    assert out.endswith(f"leaf: {LEAVES['cma-softmax']}")


def test_explain_rejects_impossible_descriptors(capsys):
    assert main(["explain", "--dim", "5", "--budget", "10", "--workers", "20"]) == 2
    assert "rejected" in capsys.readouterr().err
    assert main(["explain", "--dim", "1", "--budget", "100", "--discrete"]) == 2


# -- list ----------------------------------------------------------------------


def test_list_enumerates_everything(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for header in ("benchmarks:", "optimizers:", "functions:"):
        assert header in out
    for name in ("yabbob", "yabbob-mini", "shiwa", "random-search", "Sphere",
                 "DeceptivePath"):
        assert f"  {name}" in out
    parabbob = next(line for line in out.splitlines() if "yaparabbob" in line)
    assert "workers=100" in parabbob


# -- run usage errors ------------------------------------------------------------


def test_run_requires_benchmark_and_optims(capsys):
    assert main(["run"]) == 2
    assert "run requires" in capsys.readouterr().err


def test_run_rejects_unknown_benchmark(capsys):
    assert main(["run", "--benchmark", "nope", "--optims", "cma"]) == 2
    assert "valid names" in capsys.readouterr().err


def test_run_rejects_unknown_optimizers(capsys):
    assert main(["run", "--benchmark", "yabbob-mini", "--optims",
                 "cma,spsa"]) == 2
    err = capsys.readouterr().err
    assert "spsa" in err and "random-search" in err


def test_run_rejects_zero_reps(capsys):
    assert main(["run", "--benchmark", "yabbob-mini", "--optims", "cma",
                 "--reps", "0"]) == 2
    assert "--reps" in capsys.readouterr().err


# -- run / rerun / score round trip ----------------------------------------------


@pytest.fixture(scope="module")
def mini_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("mini")
    code = main(["run", "--benchmark", "yabbob-mini",
                 "--optims", "random-search,cobyla", "--reps", "1",
                 "--seed", "5", "--out", str(out)])
    assert code == 0
    return out


def test_run_writes_results_and_manifest(mini_run):
    rows = read_results(mini_run / "results.csv")
    assert len(rows) == 252 * 2
    assert {r.optimizer for r in rows} == {"random-search", "cobyla"}
    assert all(r.status == "ok" for r in rows)

    manifest = json.loads((mini_run / "manifest.json").read_text())
    assert manifest["version"] == __version__
    assert manifest["config"]["benchmark"] == "yabbob-mini"
    assert manifest["config"]["optimizers"] == ["random-search", "cobyla"]
    assert manifest["config"]["seed"] == 5
    assert len(manifest["cells"]) == 252
    first = manifest["cells"][0]
    assert first["index"] == 0
    assert first["seeds"][0]["repetition"] == 0
    assert {"instance_seed", "optimizer_seed"} <= set(first["seeds"][0])
    # the recorded seeds are the ones the rows actually used
    assert rows[0].seed == first["seeds"][0]["instance_seed"]


def test_rerun_is_byte_identical(mini_run, tmp_path):
    again = tmp_path / "again"
    assert main(["run", "--benchmark", "yabbob-mini",
                 "--optims", "random-search,cobyla", "--reps", "1",
                 "--seed", "5", "--out", str(again)]) == 0
    assert (again / "results.csv").read_bytes() == \
           (mini_run / "results.csv").read_bytes()


def test_rerun_from_manifest_is_byte_identical(mini_run, tmp_path):
    redo = tmp_path / "redo"
    assert main(["run", "--from-manifest", str(mini_run / "manifest.json"),
                 "--out", str(redo)]) == 0
    assert (redo / "results.csv").read_bytes() == \
           (mini_run / "results.csv").read_bytes()
    assert (redo / "manifest.json").read_bytes() == \
           (mini_run / "manifest.json").read_bytes()


def test_score_command(mini_run, capsys):
    assert main(["score", str(mini_run / "results.csv")]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("1. ")
    assert "wrote" in out
    matrix = matrix_from_csv(mini_run / "scores.csv")
    expected = score(read_results(mini_run / "results.csv"))
    assert matrix.optimizers == expected.optimizers
    assert np.allclose(matrix.values, expected.values, equal_nan=True)
    svg = (mini_run / "scores.svg").read_text()
    assert svg.startswith("<svg") and "data-value" in svg


def test_score_ranks_a_dominating_optimizer_first(tmp_path, capsys):
    header = "benchmark,function,dimension,budget,parallelism,rotated,noisy,optimizer,seed,loss,status"
    lines = [header]
    for seed in range(3):
        lines.append(f"yabbob,Sphere,2,50,1,false,false,alpha,{seed},0.0,ok")
        lines.append(f"yabbob,Sphere,2,50,1,false,false,beta,{seed},1.0,ok")
    results = tmp_path / "results.csv"
    results.write_text("\n".join(lines) + "\n")
    assert main(["score", str(results)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "1. alpha 1.0000"
    assert out[1] == "2. beta 0.0000"


def test_score_missing_file_fails_cleanly(tmp_path, capsys):
    assert main(["score", str(tmp_path / "absent.csv")]) == 1
    assert capsys.readouterr().err.startswith("shiwa:")


def test_score_empty_results_fails_cleanly(tmp_path, capsys):
    header = "benchmark,function,dimension,budget,parallelism,rotated,noisy,optimizer,seed,loss,status"
    results = tmp_path / "results.csv"
    results.write_text(header + "\n")
    assert main(["score", str(results)]) == 1
    assert "no data rows" in capsys.readouterr().err


def test_malformed_results_fail_with_line_numbers(tmp_path, capsys):
    results = tmp_path / "results.csv"
    results.write_text("not,a,results,file\n")
    assert main(["score", str(results)]) == 1
    assert "line 1" in capsys.readouterr().err


def test_output_dir_environment_variable(tmp_path, monkeypatch, capsys):
    target = tmp_path / "from-env"
    monkeypatch.setenv("SHIWA_OUTPUT_DIR", str(target))
    assert main(["run", "--benchmark", "yabbob-mini",
                 "--optims", "random-search", "--reps", "1", "--seed", "1"]) == 0
    assert (target / "results.csv").exists()
    assert (target / "manifest.json").exists()
