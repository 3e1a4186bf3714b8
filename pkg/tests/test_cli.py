import json
from pathlib import Path

import pytest

from branchsys.cli import main
from branchsys.serialize import dumps, save_ppoly, system_to_obj
from branchsys.ppoly import PPoly
from branchsys.intervals import IntervalSet

DATA = Path(__file__).parent / "data"
GRAPH = str(DATA / "three_vertex_graph.json")
SYSTEM = str(DATA / "three_vertex_system.json")


@pytest.fixture()
def indicator_file(tmp_path):
    path = tmp_path / "phi.json"
    path.write_text(save_ppoly(PPoly.indicator(IntervalSet.of((0, 4)))) + "\n")
    return str(path)


@pytest.fixture()
def self_loop_file(tmp_path):
    path = tmp_path / "loop.json"
    path.write_text(
        '{"vertices": ["v"], "edges": [{"id": "e", "src": "v", "dst": "v"}]}'
    )
    return str(path)


@pytest.fixture()
def broken_system_file(tmp_path, three_vertex_system):
    obj = system_to_obj(three_vertex_system)
    obj["R"]["e2"] = obj["R"]["e1"]  # duplicate edge interval: axiom 1 fails
    path = tmp_path / "broken.json"
    path.write_text(dumps(obj) + "\n")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCheckK:
    def test_satisfied_graph(self, capsys):
        code, out, _ = run(capsys, "check-k", GRAPH)
        assert code == 0
        payload = json.loads(out)
        assert payload["satisfied"] is True
        assert payload["per_vertex"]["v3"] == "two-return-paths"

    def test_violating_graph(self, capsys, self_loop_file):
        code, out, _ = run(capsys, "check-k", self_loop_file)
        assert code == 1
        assert json.loads(out)["satisfied"] is False

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "check-k", "no-such-file.json")
        assert code == 2
        assert "error:" in err


class TestBuildValidate:
    def test_build_writes_loadable_system(self, capsys, tmp_path):
        out_path = tmp_path / "bs.json"
        code, _, _ = run(capsys, "build", GRAPH, "-o", str(out_path))
        assert code == 0
        assert out_path.read_text().strip() == Path(SYSTEM).read_text().strip()

    def test_build_stdout(self, capsys):
        code, out, _ = run(capsys, "build", GRAPH)
        assert code == 0
        assert json.loads(out)["X"] == [{"lo": "-1", "hi": "4"}]

    def test_validate_ok(self, capsys):
        code, out, _ = run(capsys, "validate", SYSTEM)
        assert code == 0
        assert json.loads(out) == {"valid": True, "violations": []}

    def test_validate_broken(self, capsys, broken_system_file):
        code, out, _ = run(capsys, "validate", broken_system_file)
        assert code == 1
        payload = json.loads(out)
        assert payload["valid"] is False
        assert payload["violations"][0]["item"] == 1

    def test_pipeline_build_then_downstream(self, capsys, tmp_path, indicator_file):
        bs_path = tmp_path / "bs.json"
        assert run(capsys, "build", GRAPH, "-o", str(bs_path))[0] == 0
        assert run(capsys, "validate", str(bs_path))[0] == 0
        assert run(capsys, "verify", str(bs_path), "--trials", "3")[0] == 0
        assert run(capsys, "thm44", str(bs_path), "--func", indicator_file)[0] == 0


class TestVerify:
    def test_passes_and_reports(self, capsys):
        code, out, _ = run(capsys, "verify", SYSTEM, "--trials", "5", "--seed", "7")
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"] is True
        assert payload["max_residual"] <= 1e-9

    def test_deterministic_stdout(self, capsys):
        _, first, _ = run(capsys, "verify", SYSTEM, "--trials", "5")
        _, second, _ = run(capsys, "verify", SYSTEM, "--trials", "5")
        assert first == second

    def test_broken_system_fails(self, capsys, broken_system_file):
        code, out, _ = run(capsys, "verify", broken_system_file, "--trials", "2")
        assert code == 1
        assert json.loads(out)["passed"] is False


class TestApply:
    def test_word_application_tsv(self, capsys, tmp_path, indicator_file):
        out_path = tmp_path / "out.tsv"
        code, _, _ = run(
            capsys,
            "apply",
            SYSTEM,
            "--word",
            "S_e2",
            "--func",
            indicator_file,
            "--samples",
            "50",
            "-o",
            str(out_path),
        )
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "x\tre\tim"
        assert len(lines) == 51
        # S_e2 chi_[0,4) is sqrt(2) on [1,2), zero elsewhere
        for line in lines[1:]:
            x, re, im = (float(v) for v in line.split("\t"))
            want = 2**0.5 if 1 <= x < 2 else 0.0
            assert abs(re - want) < 1e-12 and im == 0.0

    def test_bad_word_is_input_error(self, capsys, indicator_file):
        code, _, err = run(
            capsys, "apply", SYSTEM, "--word", "Q_v1", "--func", indicator_file
        )
        assert code == 2
        assert "error:" in err


class TestTransferCommands:
    def test_thm44_verdict(self, capsys, indicator_file):
        code, out, _ = run(capsys, "thm44", SYSTEM, "--func", indicator_file)
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"] is True and payload["l1_gap"] <= 1e-9

    def test_thm44_bad_support_is_input_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(save_ppoly(PPoly.indicator(IntervalSet.of((-1, 0)))) + "\n")
        code, _, err = run(capsys, "thm44", SYSTEM, "--func", str(path))
        assert code == 2
        assert "support" in err

    def test_duality_verdict(self, capsys, indicator_file):
        code, out, _ = run(
            capsys, "duality", SYSTEM, "--func", indicator_file, "--set=-1,1/2"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"] is True
        assert payload["gap"] <= 1e-9
        assert payload["quadrature_gap"] <= 1e-7

    def test_duality_bad_set(self, capsys, indicator_file):
        code, _, _ = run(
            capsys, "duality", SYSTEM, "--func", indicator_file, "--set", "2,2"
        )
        assert code == 2

    def test_pf_trajectory(self, capsys, tmp_path, indicator_file):
        out_path = tmp_path / "traj.tsv"
        code, out, _ = run(
            capsys,
            "pf",
            SYSTEM,
            "--func",
            indicator_file,
            "--iters",
            "3",
            "--samples",
            "20",
            "-o",
            str(out_path),
        )
        assert code == 0
        payload = json.loads(out)
        assert len(payload["total_mass"]) == 4
        for m in payload["total_mass"]:
            assert abs(m - 4.0) < 1e-9  # indicator of [0,4) has mass 4
        y = payload["identity_region_mass"]
        assert all(a <= b + 1e-12 for a, b in zip(y, y[1:]))
        lines = out_path.read_text().splitlines()
        assert lines[0] == "step\tx\tre\tim\ttotal_mass\ty_mass"
        assert len(lines) == 1 + 4 * 20

    def test_pf_default_density(self, capsys):
        # without --func the iteration starts from the normalized indicator
        # of the edge-interval union, so total mass is 1
        code, out, _ = run(capsys, "pf", SYSTEM, "--iters", "2", "--samples", "4")
        assert code == 0
        lines = [line for line in out.splitlines() if line.startswith("{")]
        payload = json.loads(lines[-1])
        assert all(abs(m - 1.0) < 1e-12 for m in payload["total_mass"])

    def test_export_layout(self, capsys, tmp_path):
        out_path = tmp_path / "layout.tsv"
        code, _, _ = run(capsys, "export", SYSTEM, "--samples", "10", "-o", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        records = [line.split("\t")[0] for line in lines[1:]]
        assert records.count("R") == 4
        assert records.count("D") == 3
        assert records.count("F") == 10


class TestUsage:
    def test_unknown_command_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2
