import io
import json

import pytest

from eternal_guard.cli_io import (emit_graph_text, main,
                                  make_report, parse_attack_script_text,
                                  parse_graph_text, report_json)
from eternal_guard.errors import GraphFormatError
from eternal_guard.graph_core import path, pentagon_with_chord

P3_TEXT = "p ed 3 2\ne 0 1\ne 1 2\n"
FIG1_TEXT = ("p ed 5 6\n"
             "e 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\ne 0 3\n")


class TestGraphParsing:
    def test_p2(self):
        g = parse_graph_text("p ed 2 1\ne 0 1\n")
        assert g.n == 2 and list(g.edges()) == [(0, 1)]

    def test_pentagon_file(self):
        g = parse_graph_text(FIG1_TEXT)
        assert g.n == 5 and g.edge_count == 6
        assert set(g.edges()) == set(pentagon_with_chord().edges())

    def test_comments_and_labels(self):
        g = parse_graph_text("p ed 2 1\nc a comment\nl 0 left\nl 1 right\ne 0 1\n")
        assert g.labels == ("left", "right")

    def test_self_loop_diagnostic_carries_line(self):
        with pytest.raises(GraphFormatError) as exc:
            parse_graph_text("p ed 2 1\ne 0 0\n")
        assert exc.value.line == 2 and "self-loop" in str(exc.value)

    def test_duplicate_edge(self):
        with pytest.raises(GraphFormatError, match="duplicate"):
            parse_graph_text("p ed 2 2\ne 0 1\ne 1 0\n")

    def test_out_of_range(self):
        with pytest.raises(GraphFormatError, match="out of range"):
            parse_graph_text("p ed 2 1\ne 0 5\n")

    def test_malformed_header(self):
        with pytest.raises(GraphFormatError, match="header"):
            parse_graph_text("p xx 2 1\ne 0 1\n")

    def test_missing_header(self):
        with pytest.raises(GraphFormatError, match="header"):
            parse_graph_text("e 0 1\n")

    def test_edge_count_mismatch(self):
        with pytest.raises(GraphFormatError, match="declares"):
            parse_graph_text("p ed 2 2\ne 0 1\n")

    def test_unknown_line_type(self):
        with pytest.raises(GraphFormatError, match="unknown"):
            parse_graph_text("p ed 2 1\nq 0 1\ne 0 1\n")


class TestRoundTrip:
    def test_canonical_round_trip_bytes(self):
        assert emit_graph_text(parse_graph_text(P3_TEXT)) == P3_TEXT
        # Non-canonical edge order normalizes once, then round-trips exactly.
        canonical = emit_graph_text(parse_graph_text(FIG1_TEXT))
        assert emit_graph_text(parse_graph_text(canonical)) == canonical

    def test_emit_with_labels_round_trips(self):
        g = pentagon_with_chord()
        text = emit_graph_text(g)
        assert emit_graph_text(parse_graph_text(text)) == text

    def test_comments_are_not_canonical(self):
        text = emit_graph_text(path(3), comments=("block A: 0 1",))
        assert "c block A: 0 1" in text
        reparsed = emit_graph_text(parse_graph_text(text))
        assert "c block" not in reparsed


class TestAttackScripts:
    def test_vertex_list(self):
        s = parse_attack_script_text("3\n0\n3\n")
        assert s.vertices() == [3, 0, 3]

    def test_coordinates(self):
        s = parse_attack_script_text("0 1\n2 -3\n")
        assert s.coords() == [(0, 1), (2, -3)]

    def test_random_directive(self):
        s = parse_attack_script_text("# attack plan\nrandom 7 100\n")
        assert s.directive == ("random", 7, 100) and not s.rows

    def test_adversarial_directive(self):
        s = parse_attack_script_text("adversarial 2 50\n")
        assert s.directive == ("adversarial", 2, 50)

    def test_directive_exclusive(self):
        with pytest.raises(GraphFormatError):
            parse_attack_script_text("1\nrandom 7 100\n")
        with pytest.raises(GraphFormatError):
            parse_attack_script_text("random 7 100\n1\n")

    def test_malformed_directive(self):
        with pytest.raises(GraphFormatError):
            parse_attack_script_text("random 7\n")


@pytest.fixture
def p3_file(tmp_path):
    f = tmp_path / "p3.graph"
    f.write_text(P3_TEXT)
    return str(f)


@pytest.fixture
def fig1_file(tmp_path):
    f = tmp_path / "fig1.graph"
    f.write_text(FIG1_TEXT)
    return str(f)


class TestCli:
    def test_static(self, p3_file, capsys):
        assert main(["static", p3_file, "--variant", "domination"]) == 0
        assert "static domination number: 1" in capsys.readouterr().out

    def test_solve_p3(self, p3_file, capsys):
        assert main(["solve", p3_file]) == 0
        assert "eternal domination number: 2" in capsys.readouterr().out

    def test_solve_fig1_gadget_via_files(self, fig1_file, tmp_path, capsys):
        gadget = str(tmp_path / "h.graph")
        assert main(["reduce", fig1_file, "--theorem", "t1", "--out", gadget]) == 0
        capsys.readouterr()
        assert main(["solve", gadget, "--variant", "domination"]) == 0
        assert "eternal domination number: 4" in capsys.readouterr().out

    def test_simulate_script(self, p3_file, tmp_path, capsys):
        script = tmp_path / "attacks.txt"
        script.write_text("0\n2\n0\n")
        assert main(["simulate", p3_file, "--script", str(script)]) == 0
        assert "survived" in capsys.readouterr().out

    def test_verify_reduction(self, p3_file, capsys):
        assert main(["verify-reduction", p3_file, "--theorem", "t1"]) == 0
        out = capsys.readouterr().out
        assert "relation holds: True" in out

    def test_grid_verify(self, capsys):
        assert main(["grid-verify", "--grid", "t4", "--radius", "12"]) == 0
        assert "indices all 1" in capsys.readouterr().out

    def test_grid_simulate_script(self, tmp_path, capsys):
        script = tmp_path / "attacks.txt"
        script.write_text("0 1\n")
        assert main(["grid-simulate", "--grid", "t3", "--radius", "8",
                     "--script", str(script)]) == 0
        assert "all rounds valid" in capsys.readouterr().out

    def test_grid_play_repl(self, capsys):
        # Second attack hits the now-guarded (1,0) and is refused; a malformed
        # line gets a usage hint; quit ends the loop.
        stdin = io.StringIO("1 0\n1 0\nbogus\nquit\n")
        assert main(["grid-play", "--grid", "t4", "--radius", "2"],
                    stdin=stdin) == 0
        out = capsys.readouterr().out
        assert "defended; offset now (1, 0)" in out
        assert "is guarded; attack an unguarded vertex" in out
        assert "enter an attack as: x y" in out

    def test_usage_error_exit_2(self, capsys):
        assert main(["solve"]) == 2
        assert main(["frobnicate"]) == 2

    def test_simulate_random_requires_rounds(self, p3_file, capsys):
        assert main(["simulate", p3_file, "--random", "7"]) == 2
        assert "--rounds" in capsys.readouterr().err

    def test_simulate_random_with_rounds(self, p3_file, capsys):
        assert main(["simulate", p3_file, "--random", "7", "--rounds", "50"]) == 0
        assert "survived" in capsys.readouterr().out

    def test_grid_simulate_random(self, capsys):
        assert main(["grid-simulate", "--grid", "t8", "--radius", "6",
                     "--random", "3", "--rounds", "25"]) == 0
        assert "all rounds valid" in capsys.readouterr().out

    def test_missing_file_exit_2(self, capsys):
        assert main(["static", "/nonexistent/g.graph"]) == 2

    def test_malformed_file_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.graph"
        bad.write_text("p ed 2 1\ne 0 0\n")
        assert main(["static", str(bad)]) == 2

    def test_budget_env_var(self, fig1_file, tmp_path, monkeypatch, capsys):
        gadget = str(tmp_path / "h.graph")
        main(["reduce", fig1_file, "--theorem", "t1", "--out", gadget])
        monkeypatch.setenv("ETERNAL_GUARD_BUDGET", "10")
        assert main(["solve", gadget]) == 1
        assert "budget" in capsys.readouterr().err

    def test_report_determinism(self, p3_file, tmp_path, capsys):
        r1, r2 = str(tmp_path / "r1.json"), str(tmp_path / "r2.json")
        assert main(["solve", p3_file, "--report", r1]) == 0
        assert main(["solve", p3_file, "--report", r2]) == 0
        d1 = json.loads(open(r1).read())
        d2 = json.loads(open(r2).read())
        d1.pop("timings"), d2.pop("timings")
        assert json.dumps(d1, indent=2) == json.dumps(d2, indent=2)

    def test_report_schema(self, p3_file, tmp_path):
        r = str(tmp_path / "r.json")
        main(["solve", p3_file, "--report", r])
        doc = json.loads(open(r).read())
        assert doc["schema"] == "eternal-guard-report/1"
        assert doc["command"] == "solve"
        assert doc["numbers"]["value"] == 2


def test_report_json_excludes_timings_on_request():
    rep = make_report("x", {}, timings={"total_s": 1.0})
    with_t = report_json(rep, include_timings=True)
    without_t = report_json(rep, include_timings=False)
    assert "timings" in with_t and "timings" not in without_t
