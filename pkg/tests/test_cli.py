import json

import pytest

from polybinom.cli import main

K3 = "vertices 3\nedge 0 1\nedge 0 2\nedge 1 2\n"
P3 = "vertices 3\nedge 0 1\nedge 1 2\n"
THETA = "vertices 2\nedge 0 1\nedge 0 1\nedge 0 1\n"
LOOP = "vertices 1\nedge 0 0\n"
CHAIN3 = "elements 3\ncover 0 1\ncover 1 2\n"
ANTICHAIN4 = "elements 4\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


class TestChromaticCommand:
    def test_k3_text(self, write, capsys):
        assert main(["chromatic", write("k3.graph", K3)]) == 0
        out = capsys.readouterr().out
        assert "chi_star: (0, 0, 0, 6)" in out

    def test_p3_json(self, write, capsys):
        assert main(["chromatic", "--json", write("p3.graph", P3)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["a"] == [4, 6, 6, 4]
        assert payload["b"] == [4, 6, 4]
        assert payload["verdict"] == "pass"
        assert payload["schema"] == 1

    def test_loop_rejected(self, write, capsys):
        assert main(["chromatic", write("loop.graph", LOOP)]) == 2
        assert "loop" in capsys.readouterr().err

    def test_parse_error_has_line(self, write, capsys):
        assert main(["chromatic", write("bad.graph", "vertices 2\nedge 0 9\n")]) == 2
        assert "line 2" in capsys.readouterr().err

    def test_missing_file(self, capsys):
        assert main(["chromatic", "/nonexistent/file.graph"]) == 2

    def test_edge_cap_exits_3(self, write, capsys):
        assert main(["chromatic", "--cap-edges", "2", write("k3.graph", K3)]) == 3
        assert "cap exceeded" in capsys.readouterr().err

    def test_csv_export(self, write, tmp_path):
        csv_path = tmp_path / "audit.csv"
        assert main(["chromatic", "--csv", str(csv_path), write("k3.graph", K3)]) == 0
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "instance,family,j,lhs,rhs,holds"
        assert len(lines) > 1


class TestFlowCommand:
    def test_theta(self, write, capsys):
        assert main(["flow", write("theta.graph", THETA)]) == 0
        out = capsys.readouterr().out
        assert "c: (6, 6, 6, 6)" in out
        assert "totally cyclic orientations: 6" in out

    def test_double_edge_json(self, write, capsys):
        double = "vertices 2\nedge 0 1\nedge 0 1\n"
        assert main(["flow", "--json", write("d2.graph", double)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["phi_star"]["entries"] == [0, 0, 1]
        assert payload["f_star"]["entries"] == [0, 0, 2]

    def test_bridge_rejected(self, write, capsys):
        assert main(["flow", write("p3.graph", P3)]) == 2
        assert "bridge" in capsys.readouterr().err


class TestOrderCommand:
    def test_chain(self, write, capsys):
        assert main(["order", write("chain3.poset", CHAIN3)]) == 0
        out = capsys.readouterr().out
        assert "omega_star: (0, 0, 0, 1)" in out

    def test_antichain_json(self, write, capsys):
        assert main(["order", "--json", write("a4.poset", ANTICHAIN4)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["omega_star"]["entries"] == [0, 1, 11, 11, 1]

    def test_two_antichain_split(self, write, capsys):
        assert main(["order", write("a2.poset", "elements 2\n")]) == 0
        assert "a: (1, 2, 1)" in capsys.readouterr().out

    def test_non_poset_rejected(self, write, capsys):
        bad = "elements 2\ncover 0 1\ncover 1 0\n"
        assert main(["order", write("bad.poset", bad)]) == 2


class TestSurveyCommand:
    def test_graphs_exhaustive(self, capsys):
        assert main(["survey", "graphs", "--max-size", "4"]) == 0
        out = capsys.readouterr().out
        assert "instances: 10" in out
        assert "counterexamples: 0" in out

    def test_json_deterministic_modulo_run(self, capsys):
        assert main(["survey", "posets", "--max-size", "3", "--json"]) == 0
        first = json.loads(capsys.readouterr().out)
        assert main(["survey", "posets", "--max-size", "3", "--json"]) == 0
        second = json.loads(capsys.readouterr().out)
        first.pop("run")
        second.pop("run")
        assert first == second
        assert first["schema"] == 1
        assert first["verdict"] == "pass"

    def test_flows_with_fixtures(self, capsys):
        assert main(["survey", "flows", "--max-size", "3"]) == 0
        out = capsys.readouterr().out
        assert "verdict: pass" in out

    def test_survey_csv(self, tmp_path, capsys):
        path = tmp_path / "rows.csv"
        assert main(["survey", "graphs", "--max-size", "3", "--csv", str(path)]) == 0
        assert path.read_text().startswith("instance,check,verdict")


class TestTable1Command:
    def test_all_rows_match(self, capsys):
        assert main(["table1"]) == 0
        assert "all golden rows matched: True" in capsys.readouterr().out

    def test_json(self, capsys):
        assert main(["table1", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["all_matched"] is True
        assert set(payload["degrees"]) == {"5", "6", "7"}
