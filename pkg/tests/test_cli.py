import json
import os
import subprocess
import sys

import pytest

from listchoose.cli import main
from listchoose.graph import chocolate, complete_bipartite, graph_to_json, path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        p = tmp_path / name
        p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(p)
    return write


def test_recognize_chocolate_file(capsys, files):
    g = files("chocolate.json", graph_to_json(chocolate()))
    code, out, _ = run(capsys, "recognize", g, "--problem", "23ch")
    assert code == 1
    assert json.loads(out)["choosable"] is False


def test_choosable_k25(capsys, files):
    g = files("k25.json", graph_to_json(complete_bipartite(2, 5)))
    code, out, _ = run(capsys, "choosable", g, "--uniform", "2", "--palette", "3")
    assert code == 0
    assert json.loads(out)["choosable"] is True


def test_not_choosable_emits_witness(capsys):
    code, out, _ = run(capsys, "choosable", "chocolate", "--uniform", "2", "--palette", "3")
    doc = json.loads(out)
    assert code == 1 and doc["witness"] is not None


def test_core_of_p3(capsys, files):
    g = files("p3.json", graph_to_json(path(3)))
    code, out, _ = run(capsys, "core", g)
    doc = json.loads(out)
    assert code == 0 and len(doc["vertices"]) == 1 and doc["edges"] == []


def test_jobs_do_not_change_output(capsys):
    outs = set()
    for jobs in ("1", "3"):
        code, out, _ = run(capsys, "--jobs", jobs, "choosable", "theta:2,2,2,4",
                           "--uniform", "2", "--palette", "3")
        assert code == 1
        outs.add(out)
        code, out2, _ = run(capsys, "choosable", "theta:2,2,2,4", "--uniform", "2",
                            "--palette", "3", "--jobs", jobs)
        outs.add(out2)
    assert len(outs) == 1


def test_budget_exit_code(capsys):
    code, out, _ = run(capsys, "choosable", "completeBipartite:2,5", "--uniform", "2",
                       "--palette", "3", "--budget", "5")
    assert code == 3 and json.loads(out)["budget_exceeded"] is True


def test_malformed_json_reports_position(capsys, files):
    bad = files("bad.json", '{"vertices": ["a",\n  ]}')
    code, _, err = run(capsys, "core", bad)
    assert code == 2
    assert "line 2" in err and "column" in err


def test_usage_errors(capsys, files):
    assert run(capsys, "choosable", "cycle:4", "--palette", "3")[0] == 2
    assert run(capsys, "nosuch")[0] == 2
    assert run(capsys, "core", "cycle:2")[0] == 2
    assert run(capsys, "gadget", "unknown")[0] == 2
    assert run(capsys, "core", files("missing_vertices.json", {"edges": []}))[0] == 2


def test_color_and_pins(capsys, files):
    lists = files("lists.json", {"palette": 2, "lists": {"p0": [1, 2], "p1": [1, 2]}})
    code, out, _ = run(capsys, "color", "path:2", lists, "--pin", "p0=2")
    assert code == 0 and json.loads(out)["colors"] == {"p0": 2, "p1": 1}
    code, out, _ = run(capsys, "color", "cycle:3", files("l3.json", {
        "palette": 2, "lists": {"c0": [1, 2], "c1": [1, 2], "c2": [1, 2]}}))
    assert code == 1 and json.loads(out)["colors"] is None


def test_critical_command(capsys, files):
    g = files("k12.json", {"vertices": ["c", "l1", "l2"], "edges": [["c", "l1"], ["c", "l2"]]})
    sizes = files("f.json", {"c": 2, "l1": 1, "l2": 1})
    code, out, _ = run(capsys, "critical", g, sizes, "--palette", "3", "--subset", "l1,l2")
    assert code == 0 and json.loads(out)["critical"] is True


def test_blocks_and_dot(capsys):
    code, out, _ = run(capsys, "blocks", "gamma:4,4,0")
    doc = json.loads(out)
    assert code == 0 and len(doc["blocks"]) == 2 and doc["block_cactus"]
    code, out, _ = run(capsys, "export-dot", "cycle:4", "--name", "C4")
    assert code == 0 and out.startswith('graph "C4" {')


def test_gadget_outputs(capsys, tmp_path, files):
    code, out, _ = run(capsys, "gadget", "transmitter", "3", "1")
    doc = json.loads(out)
    assert code == 0 and doc["metadata"]["target_color"] == 2
    gpath, lpath = tmp_path / "h.json", tmp_path / "hl.json"
    code, out, _ = run(capsys, "gadget", "H", "--out", str(gpath), "--lists", str(lpath))
    assert code == 0 and out == ""
    assert len(json.loads(gpath.read_text())["vertices"]) == 7
    assert json.loads(lpath.read_text())["palette"] == 4
    hyper = files("hyp.json", {"X": ["x1", "x2"], "F": [["x1"], ["x2"]]})
    code, out, _ = run(capsys, "gadget", "hyperred", hyper)
    assert code == 0 and "VS" in json.loads(out)["roles"]
    code, out, _ = run(capsys, "gadget", "padgrid", files("s.json", {
        "vertices": ["g1_1", "g2_2"], "edges": [],
        "coords": {"g1_1": [1, 1], "g2_2": [2, 2]}, "grid": [2, 2]}),
        files("fs.json", {"g1_1": 2, "g2_2": 2}))
    assert code == 0 and sorted(json.loads(out)["sizes"].values()) == [2, 2, 5, 5]


def test_verify_paper_filter(capsys):
    code, out, err = run(capsys, "verify-paper", "--filter", "F1")
    doc = json.loads(out)
    assert code == 0 and [f["id"] for f in doc["facts"]] == ["F1"]
    assert "F1 PASS" in err
    code, out, err = run(capsys, "verify-paper", "--filter", "nothing")
    assert code == 0 and json.loads(out)["facts"] == [] and "warning" in err


def test_module_entry_point_and_no_color(tmp_path):
    env = dict(os.environ, NO_COLOR="1")
    proc = subprocess.run([sys.executable, "-m", "listchoose", "core", "cycle:2"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 2
    assert "\033[" not in proc.stderr and proc.stderr.startswith("error:")
    proc = subprocess.run([sys.executable, "-m", "listchoose", "recognize", "cycle:10",
                           "--problem", "23ch"], capture_output=True, text=True, env=env)
    assert proc.returncode == 0 and json.loads(proc.stdout)["core_classes"] == ["EvenCycle(10)"]
