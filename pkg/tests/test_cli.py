import csv
import io
import json
import subprocess
import sys

import pytest

from graph_ph.cli import main
from graph_ph.graph import read_graph6_file


def _run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


class TestGenerate:
    @pytest.mark.parametrize(
        "args, count",
        [
            (["--family", "cub08"], 5),
            (["--family", "cubic", "--n", "10"], 19),
            (["--family", "connected", "--n", "5"], 21),
            (["--family", "all", "--n", "4"], 11),
            (["--family", "complete_bipartite", "--n", "3", "--m", "3"], 1),
            (["--family", "shrikhande"], 1),
        ],
    )
    def test_counts(self, tmp_path, capsys, args, count):
        out = tmp_path / "g.g6"
        rc, text, _ = _run(capsys, "generate", *args, "--out", str(out))
        assert rc == 0 and f"wrote {count} graph" in text
        assert len(read_graph6_file(out)) == count

    def test_errors(self, tmp_path, capsys):
        rc, _, err = _run(capsys, "generate", "--family", "cubic", "--out", str(tmp_path / "x"))
        assert rc == 2 and "--n" in err
        rc, _, err = _run(capsys, "generate", "--family", "nonsense", "--out", str(tmp_path / "x"))
        assert rc == 2 and "unknown family" in err


class TestDiagramAndCompare:
    def _diagrams(self, tmp_path, capsys, family, *extra):
        g6 = tmp_path / f"{family}.g6"
        main(["generate", "--family", family, "--out", str(g6)])
        out = tmp_path / family
        rc, _, _ = _run(capsys, "diagram", "--input", str(g6), "--out", str(out), *extra)
        assert rc == 0
        return out

    def test_cub06_degree(self, tmp_path, capsys):
        out = self._diagrams(tmp_path, capsys, "cub06", "--k", "2")
        names = sorted(p.name for p in out.iterdir())
        assert names == ["g0.json", "g0_dim0.json", "g0_dim1.json", "g0_dim2.json",
                         "g1.json", "g1_dim0.json", "g1_dim1.json", "g1_dim2.json"]
        rc, text, _ = _run(capsys, "compare", "--a", str(out / "g0.json"), "--b", str(out / "g1.json"))
        data = json.loads(text)
        assert rc == 0 and data["distinguished"]
        # K33 has no triangles and prism has two, so the essential count in dim 1 differs
        assert data["distances"]["1"] == "inf"
        assert data["distances"]["0"] == 0
        assert "essential" in data["essential_points"]

    def test_k1_degree_not_distinguished(self, tmp_path, capsys):
        out = self._diagrams(tmp_path, capsys, "cub06")
        _, text, _ = _run(capsys, "compare", "--a", str(out / "g0.json"), "--b", str(out / "g1.json"))
        assert json.loads(text)["distinguished"] is False

    def test_orc_alpha_flag(self, tmp_path, capsys):
        out = self._diagrams(tmp_path, capsys, "cub06", "--filtration", "orc", "--alpha", "0.5")
        _, text, _ = _run(capsys, "compare", "--a", str(out / "g0_dim0.json"), "--b", str(out / "g1_dim0.json"))
        assert json.loads(text)["distinguished"] is True

    def test_compare_dimension_mismatch(self, tmp_path, capsys):
        out = self._diagrams(tmp_path, capsys, "cub06")
        rc, _, err = _run(capsys, "compare", "--a", str(out / "g0_dim0.json"), "--b", str(out / "g0_dim1.json"))
        assert rc == 2 and "dimension" in err

    def test_bad_filtration(self, tmp_path, capsys):
        rc, _, err = _run(capsys, "diagram", "--input", "cub06", "--filtration", "orc", "--alpha", "3",
                          "--out", str(tmp_path))
        assert rc == 2


class TestDistinguish:
    def test_table(self, capsys):
        rc, text, _ = _run(capsys, "distinguish", "--dataset", "cub06", "--dataset", "cub08",
                           "--filtration", "degree,orc", "--k", "1,2")
        rows = list(csv.reader(io.StringIO(text)))
        assert rc == 0
        assert rows[0] == ["dataset", "k=1/D", "k=1/C", "k=2/D", "k=2/C"]
        assert rows[1][1:] == ["0.0", "1.0", "1.0", "1.0"]
        assert rows[2][1:] == ["0.0", "0.9", "0.9", "0.9"]

    def test_config_overridden_by_flags(self, tmp_path, capsys):
        cfg = tmp_path / "c.yaml"
        cfg.write_text("dataset: cub06\nfiltration: [degree]\nk_expansion: 1\nformat: markdown\n")
        _, text, _ = _run(capsys, "distinguish", "--config", str(cfg))
        assert "| cub06 | 0.00 |" in text
        _, text, _ = _run(capsys, "distinguish", "--config", str(cfg), "--k", "2", "--format", "json")
        assert json.loads(text)["rows"][0]["k=2/D"] == 1.0

    def test_out_file_and_workers(self, tmp_path, capsys):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["distinguish", "--dataset", "cub08", "--filtration", "orc", "--out", str(a)])
        main(["distinguish", "--dataset", "cub08", "--filtration", "orc", "--workers", "2", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_missing_dataset(self, capsys):
        rc, _, err = _run(capsys, "distinguish")
        assert rc == 2 and "dataset" in err


class TestWL:
    def test_histograms(self, tmp_path, capsys):
        out = tmp_path / "wl.json"
        rc, _, _ = _run(capsys, "wl", "--input", "cub06", "--out", str(out))
        doc = json.loads(out.read_text())
        assert rc == 0 and doc["k"] == 1 and len(doc["graphs"]) == 2
        # both graphs are 3-regular so 1-WL never splits the single class
        assert doc["graphs"][0]["histograms"] == doc["graphs"][1]["histograms"]
        assert doc["graphs"][0]["stable_at"] == 0

    def test_2wl_separates(self, capsys):
        _, text, _ = _run(capsys, "wl", "--input", "cub06", "--k", "2")
        doc = json.loads(text)
        assert doc["graphs"][0]["histograms"] != doc["graphs"][1]["histograms"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "graph_ph", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "distinguish" in proc.stdout
