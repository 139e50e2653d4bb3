import json
import os
import subprocess
import sys

import pytest

from specdesign import designs as D
from specdesign.cli import main
from specdesign.graphs import Graph, family, graph6_decode, graph6_encode, incidence_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def cli(*argv, env=None):
    return subprocess.run([sys.executable, "-m", "specdesign", *argv],
                          capture_output=True, text=True, env=env)


class TestFamily:
    def test_p5(self, capsys):
        code, out, _ = run(capsys, "family", "S", "--k", "2", "--format", "graph6")
        lines = out.splitlines()
        assert code == 0 and lines[1] == "x^5-4x^3+3x"
        assert graph6_decode(lines[0]) == family("S", 2)

    def test_l3(self, capsys):
        code, out, _ = run(capsys, "family", "L", "--k", "3")
        c6 = graph6_decode(out.splitlines()[0])
        assert code == 0 and c6.n == 6 and set(c6.degrees()) == {2} and c6.is_connected()

    def test_json(self, capsys):
        code, out, _ = run(capsys, "family", "G1", "--format", "json")
        assert code == 0 and json.loads(out.splitlines()[0])["n"] == 10

    def test_guard(self, capsys):
        code, _, err = run(capsys, "family", "R", "--k", "2")
        assert code == 2 and "k must be ≥ 3" in err


class TestSpectrum:
    def test_heawood(self, capsys, tmp_path):
        f = tmp_path / "heawood.g6"
        f.write_text(graph6_encode(incidence_graph(D.fano())))
        code, out, _ = run(capsys, "spectrum", str(f))
        assert code == 0 and out.splitlines()[1] == "(x^2-9)(x^2-2)^6"

    def test_s17(self, capsys):
        code, out, _ = run(capsys, "spectrum", graph6_encode(family("S", 8)))
        assert code == 0 and out.splitlines()[1] == "x(x^2-9)(x^2-1)^7"

    def test_json_input(self, capsys):
        code, out, _ = run(capsys, "spectrum", "[[1],[0,2],[1]]")
        assert code == 0 and out.splitlines() == ["x^3-2x", "x(x^2-2)"]

    def test_unrecognized_pattern_prints_only_poly(self, capsys):
        code, out, _ = run(capsys, "spectrum", "Dhc")  # C5
        assert code == 0 and len(out.splitlines()) == 1

    @pytest.mark.parametrize("text", ["A!", "garbage!", "~??", "{not json"])
    def test_garbage(self, capsys, text):
        code, out, err = run(capsys, "spectrum", text)
        assert code == 2 and out == "" and "error" in err

    def test_offset_reported(self, capsys):
        _, _, err = run(capsys, "spectrum", "A!")
        assert "offset 1" in err


class TestPairs:
    def test_cospectral_and_iso(self, capsys):
        star = graph6_encode(Graph.from_edges(5, [(0, i) for i in range(1, 5)]))
        c4k1 = graph6_encode(Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0)]))
        code, out, _ = run(capsys, "cospectral", star, c4k1)
        assert code == 0 and json.loads(out) == {"cospectral": True}
        _, out, _ = run(capsys, "iso", star, c4k1)
        assert json.loads(out) == {"isomorphic": False}
        s5 = graph6_encode(family("S", 2))
        h23 = graph6_encode(family("H", 2))
        _, out, _ = run(capsys, "iso", s5, h23)
        assert json.loads(out) == {"isomorphic": True}
        _, out, _ = run(capsys, "cospectral", s5, graph6_encode(family("L", 3)))
        assert json.loads(out) == {"cospectral": False}


class TestDesign:
    def test_show_and_check(self, capsys, tmp_path):
        code, out, _ = run(capsys, "design", "show", "D2")
        assert code == 0 and D.Design.from_text(out) == D.named_pseudo("D2")
        f = tmp_path / "d2.txt"
        f.write_text(out)
        code, out, _ = run(capsys, "design", "check", str(f), "--pseudo", "8", "4", "2")
        rep = json.loads(out)
        assert code == 0 and rep["is_pseudo"] and not rep["primary"]

    def test_check_bibd(self, capsys, tmp_path):
        f = tmp_path / "fano.json"
        f.write_text(D.fano().to_json())
        code, out, _ = run(capsys, "design", "check", str(f), "--bibd", "7", "7", "3", "3", "1",
                           "--pseudo", "7", "3", "1")
        rep = json.loads(out)
        assert code == 0 and rep["is_bibd"] and not rep["is_pseudo"]

    def test_check_bad_params(self, capsys, tmp_path):
        f = tmp_path / "fano.txt"
        f.write_text(D.fano().to_text())
        code, _, err = run(capsys, "design", "check", str(f), "--bibd", "6", "3", "3", "2", "2")
        assert code == 2 and "vr = bk" in err

    def test_split(self, capsys, tmp_path):
        f = tmp_path / "p.txt"
        f.write_text(D.remove_block(D.complement_design(D.fano()), 0).to_text())
        code, out, _ = run(capsys, "design", "split", str(f))
        rep = json.loads(out)
        assert code == 0 and rep["M"] == [6, 4, 3, 2, 1] and rep["N"] == [6, 3, 4, 2, 2]
        assert rep["y"] == 2

    def test_split_nonprimary(self, capsys, tmp_path):
        f = tmp_path / "d1.txt"
        f.write_text(D.named_pseudo("D1").to_text())
        code, _, _ = run(capsys, "design", "split", str(f))
        assert code == 2

    def test_unknown_name(self, capsys):
        code, _, err = run(capsys, "design", "show", "nope")
        assert code == 2 and "unknown design" in err


class TestEnumerate:
    def test_pseudo(self, capsys):
        code, out, _ = run(capsys, "enumerate", "pseudo", "--v", "8", "--k", "4", "--lambda", "2")
        assert code == 0 and len(out.splitlines()) == 4
        for line in out.splitlines():
            assert D.is_pseudo(D.Design.from_json(line), D.PseudoParams(8, 4, 2))
        _, out, _ = run(capsys, "enumerate", "pseudo", "--v", "7", "--k", "3", "--lambda", "1")
        assert len(out.splitlines()) == 1

    def test_bipartite(self, capsys):
        code, out, _ = run(capsys, "enumerate", "bipartite", "--n", "4", "--m", "4")
        assert code == 0 and len(out.splitlines()) == 1

    def test_guards(self, capsys):
        assert run(capsys, "enumerate", "bipartite", "--n", "11", "--m", "3")[0] == 2
        assert run(capsys, "enumerate", "pseudo", "--v", "13", "--k", "3", "--lambda", "1")[0] == 2
        assert run(capsys, "enumerate", "pseudo", "--v", "7", "--k", "3", "--lambda", "3")[0] == 2
        assert run(capsys, "enumerate", "pseudo", "--v", "7")[0] == 2


class TestVerify:
    def test_cor_sds_k8(self, capsys):
        code, out, err = run(capsys, "verify", "cor-sds", "--k", "8")
        rep = json.loads(out)
        assert code == 0 and rep["ok"] and "assertions passed" in err

    @pytest.mark.parametrize("suite", ["lemma-spec", "thm-Ln", "sec4", "conjecture"])
    def test_passing_suites(self, capsys, suite):
        code, out, _ = run(capsys, "verify", suite)
        assert code == 0 and json.loads(out)["ok"]

    def test_thm_pseudo_names_first_failure(self, capsys):
        code, out, err = run(capsys, "verify", "thm-pseudo")
        rep = json.loads(out)
        assert code == 1 and not rep["ok"]
        names = [a["name"] for a in rep["assertions"] if a["ok"]]
        assert len(names) >= 6
        assert "first failure:" in err

    def test_bad_option(self, capsys):
        code, _, err = run(capsys, "verify", "conjecture", "--k", "3")
        assert code == 2 and "does not take --k" in err

    def test_unknown_suite(self, capsys):
        assert run(capsys, "verify", "nope")[0] == 2


class TestProcess:
    def test_exit_codes(self):
        assert cli("family", "S", "--k", "3").returncode == 0
        assert cli("verify", "lemma-bibd", "--vmax", "100").returncode == 1
        assert cli("spectrum", "A!").returncode == 2
        assert cli().returncode == 2
        assert cli("--help").returncode == 0

    def test_deterministic(self):
        for argv in (["enumerate", "pseudo", "--v", "8", "--k", "4", "--lambda", "2"],
                     ["enumerate", "bipartite", "--n", "7", "--m", "6"],
                     ["verify", "cor-sds", "--k", "15"]):
            a, b = cli(*argv), cli(*argv)
            assert a.stdout == b.stdout and a.stdout

    def test_thread_cap(self):
        env = dict(os.environ, SPECDESIGN_THREADS="1")
        a = cli("verify", "cor-sds", env=env)
        b = cli("verify", "cor-sds")
        assert a.stdout == b.stdout and a.returncode == b.returncode
