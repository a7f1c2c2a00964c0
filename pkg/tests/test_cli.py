import json

import pytest

from collsim.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows_of(out):
    lines = out.strip().splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


def test_run_kported_bcast_round_count(capsys):
    code, out, _ = run_cli(
        capsys, "run", "--op", "bcast", "--algo", "kported", "--k", "2", "-N", "4", "-n", "1", "-c", "10"
    )
    assert code == 0
    (row,) = rows_of(out)
    assert row["comm_rounds"] == "2"
    assert row["p"] == "4"


def test_run_fulllane_scatter_root_node_out(capsys):
    code, out, _ = run_cli(
        capsys, "run", "--op", "scatter", "--algo", "fulllane", "-N", "2", "-n", "2", "-c", "1", "--root", "0"
    )
    assert code == 0
    (row,) = rows_of(out)
    assert row["root_node_out_elems"] == "2"


def test_run_klane_alltoall_rounds(capsys):
    code, out, _ = run_cli(
        capsys, "run", "--op", "alltoall", "--algo", "klane", "-N", "3", "-n", "2", "-c", "1"
    )
    assert code == 0
    (row,) = rows_of(out)
    assert row["comm_rounds"] == "5"


def test_run_row_ordering_and_json(capsys):
    code, out, _ = run_cli(
        capsys, "run", "--op", "bcast", "--algo", "kported,klane", "--k", "2,1",
        "-N", "2", "-n", "2", "-c", "4,2", "--format", "json",
    )
    assert code == 0
    rows = json.loads(out)
    keys = [(r["algo"], r["k"], r["c"]) for r in rows]
    assert keys == sorted(keys)
    assert len(rows) == 8


def test_dump_exact_lines(capsys):
    code, out, _ = run_cli(
        capsys, "dump", "--op", "bcast", "--algo", "kported", "--k", "1", "-N", "4", "-n", "1", "-c", "5"
    )
    assert code == 0
    assert out.splitlines() == ["0,0,2,0,0,5", "1,0,1,0,0,5", "1,2,3,0,0,5"]


def test_dump_empty_schedule(capsys):
    code, out, _ = run_cli(
        capsys, "dump", "--op", "bcast", "--algo", "kported", "-N", "1", "-n", "1", "-c", "3"
    )
    assert code == 0
    assert out == ""


def test_dump_rejects_lists(capsys):
    code, _, err = run_cli(
        capsys, "dump", "--op", "bcast", "--algo", "kported", "--k", "1,2", "-N", "2", "-n", "1", "-c", "5"
    )
    assert code == 2
    assert "error" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["run", "--op", "nonsense", "-N", "2", "-n", "2"])
    assert info.value.code == 2


def test_invalid_lane_parameter_diagnostic(capsys):
    code, _, err = run_cli(
        capsys, "run", "--op", "bcast", "--algo", "klane", "--k", "5", "-N", "2", "-n", "2", "-c", "1"
    )
    assert code == 2
    assert "collsim: error" in err


def test_verify_default_grid_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "-N", "2", "-n", "2", "--k", "1,2", "-c", "1,5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)
    assert len(lines) == 3 * 3 * 2 * 2


def test_verify_single_rank_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "-N", "1", "-n", "1", "-c", "1")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.strip().splitlines())


def test_verify_mutation_fails(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "-N", "2", "-n", "2", "--op", "bcast", "--algo", "kported",
        "--mutate", "drop-last-event",
    )
    assert code == 1
    assert out.strip().splitlines()[0].startswith("FAIL")


def test_verify_placement_round_robin(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "-N", "3", "-n", "2", "--placement", "rr", "-c", "2", "--root", "3"
    )
    assert code == 0
    assert all(line.startswith("PASS") for line in out.strip().splitlines())


def test_sweep_cross_product_size(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--op", "bcast", "--algo", "kported", "-N", "36", "-n", "32",
        "--k", "1,2,3,4,5,6", "-c", "1,6,10,60,100",
    )
    assert code == 0
    assert len(rows_of(out)) == 30


def test_sweep_single_case(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--op", "scatter", "--algo", "fulllane", "-N", "2", "-n", "2", "-c", "3"
    )
    assert code == 0
    assert len(rows_of(out)) == 1


def test_sweep_byte_identical(capsys):
    argv = [
        "sweep", "--op", "alltoall", "--algo", "klane,kported", "-N", "4", "-n", "4",
        "--k", "1,2,4", "-c", "1,7,19",
    ]
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second


def test_sweep_klane_alltoall_time_nonincreasing_in_k(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--op", "alltoall", "--algo", "klane", "-N", "2", "-n", "4",
        "--k", "1,2,3,4", "-c", "50",
    )
    assert code == 0
    times = [float(r["modeled_time"]) for r in rows_of(out)]
    assert all(a >= b - 1e-12 for a, b in zip(times, times[1:]))


def test_sweep_plot_writes_figure(tmp_path, capsys):
    target = tmp_path / "sweep.png"
    code, _, _ = run_cli(
        capsys, "sweep", "--op", "bcast", "--algo", "kported,fulllane", "-N", "4", "-n", "2",
        "--k", "1,2", "-c", "1,10,100", "--plot", str(target),
    )
    assert code == 0
    assert target.exists() and target.stat().st_size > 0
