import json

import pytest

from occult.cli import main
from occult.graph import Graph, cycle_graph, disjoint_union


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def generate(capsys, tmp_path, family, *params):
    d = tmp_path / family
    code, rep, _ = run(capsys, "generate", family, *params, "--out", d)
    assert code == 0
    return d


# generate

def test_generate_occultation(capsys, tmp_path):
    d = tmp_path / "occ"
    code, rep, err = run(capsys, "generate", "occultation", "--s", 4, "--out", d)
    assert code == 0 and rep["n"] == 21 and "21 vertices" in err
    g = Graph.from_json((d / "graph.json").read_text())
    assert g.n == 21
    assert (d / "graph.dot").read_text().startswith("graph G {")
    assert set(json.loads((d / "witness.json").read_text())) == {"S", "L"}


def test_generate_wall(capsys, tmp_path):
    d = generate(capsys, tmp_path, "wall", "--t", 3)
    assert Graph.from_json((d / "graph.json").read_text()).n == 16
    assert not (d / "witness.json").exists()


def test_generate_is_byte_identical(capsys, tmp_path):
    for name in ("a", "b"):
        run(capsys, "generate", "interrupted", "--r", 4, "--seed", 99, "--out", tmp_path / name)
    for f in ("graph.json", "graph.dot", "witness.json"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_generate_hex_seed_matches_decimal(capsys):
    _, a, _ = run(capsys, "generate", "syzygy", "--a", 3, "--seed", "0xff")
    _, b, _ = run(capsys, "generate", "syzygy", "--a", 3, "--seed", 255)
    assert a["graph"] == b["graph"]


@pytest.mark.parametrize("argv", [
    ["generate", "nonsense"],
    ["generate", "occultation"],  # missing --s
    ["generate", "occultation", "--s", "0"],
    ["generate", "wall", "--t", "x"],
    ["generate", "syzygy", "--a", "2", "--seed", "-4"],
    ["frobnicate"],
])
def test_generate_usage_errors(capsys, argv):
    assert main(argv) == 3


# check

def test_check_full_occultation(capsys, tmp_path):
    d = generate(capsys, tmp_path, "occultation", "--s", 3)
    code, rep, _ = run(capsys, "check", "full-occultation", "--o", 1,
                       "--graph", d / "graph.json", "--witness", d / "witness.json")
    assert code == 0 and rep["holds"]


def test_check_refutation_reports_failures(capsys, tmp_path):
    d = generate(capsys, tmp_path, "occultation", "--s", 3)
    w = json.loads((d / "witness.json").read_text())
    w["S"] = [w["S"][1], w["S"][0], w["S"][2]]
    bad = tmp_path / "swapped.json"
    bad.write_text(json.dumps(w))
    code, rep, _ = run(capsys, "check", "occultation", "--graph", d / "graph.json", "--witness", bad)
    assert code == 1 and rep["violation"]["clause"] == "O3"


def _two_squares(tmp_path):
    p = tmp_path / "squares.json"
    p.write_text(disjoint_union(cycle_graph(4), cycle_graph(4)).to_json())
    return p


def test_check_perforated_refuted(capsys, tmp_path):
    code, rep, _ = run(capsys, "check", "perforated", "--c", 2, "--o", 1, "--graph", _two_squares(tmp_path))
    assert code == 1 and rep["status"] == "NotPerforated" and len(rep["witness"]) == 2


def test_check_perforated_tiny_budget(capsys, tmp_path):
    d = generate(capsys, tmp_path, "wall", "--t", 5)
    code, rep, _ = run(capsys, "check", "perforated", "--c", 3, "--budget", 2, "--graph", d / "graph.json")
    assert code == 2 and rep["status"] == "Indeterminate"


def test_budget_from_environment(capsys, tmp_path, monkeypatch):
    d = generate(capsys, tmp_path, "wall", "--t", 5)
    monkeypatch.setenv("OCCULT_BUDGET", "2")
    code, rep, _ = run(capsys, "check", "perforated", "--c", 3, "--graph", d / "graph.json")
    assert code == 2 and rep["budget"] == 2
    monkeypatch.setenv("OCCULT_BUDGET", "lots")
    assert main(["check", "perforated", "--graph", str(d / "graph.json")]) == 3


def test_check_missing_file(capsys, tmp_path):
    code, rep, _ = run(capsys, "check", "asterism", "--graph", tmp_path / "nope.json", "--witness", "x")
    assert code == 3 and "error" in rep


def test_check_malformed_witness(capsys, tmp_path):
    d = generate(capsys, tmp_path, "constellation", "--s", 2, "--l", 2)
    bad = tmp_path / "bad.json"
    bad.write_text('{"S": [0]}')
    code, _, _ = run(capsys, "check", "constellation", "--graph", d / "graph.json", "--witness", bad)
    assert code == 3


@pytest.mark.parametrize("family, params, check, flags", [
    ("occultation", ["--s", 4], "occultation", []),
    ("full-occultation", ["--s", 3, "--o", 2, "--seed", 5], "full-occultation", ["--o", 2]),
    ("interrupted", ["--r", 4, "--seed", 3], "interrupted", []),
    ("ample-interrupted", ["--s", 3, "--d", 2], "ample", ["--d", 2]),
    ("meager", ["--n", 6, "--d", 2, "--seed", 1], "meager", ["--d", 2]),
    ("syzygy", ["--a", 4, "--seed", 2], "syzygy", []),
    ("gemini", ["--g", 3, "--o", 1, "--seed", 4], "gemini", []),
    ("constellation", ["--s", 3, "--l", 3], "constellation", []),
    ("constellation", ["--s", 3, "--l", 3, "--non-plain"], "constellation", ["--no-plain"]),
    ("five-asterism", [], "asterism", []),
    ("complete", ["--t", 4], "biclique-free", ["--t", 2]),
    ("biclique", ["--t", 3], "clique-free", ["--t", 3]),
    ("path", ["--n", 6], "perforated", ["--c", 1]),
])
def test_generate_then_check_round_trip(capsys, tmp_path, family, params, check, flags):
    d = generate(capsys, tmp_path, family, *params)
    witness = ["--witness", d / "witness.json"] if (d / "witness.json").exists() else []
    code, rep, _ = run(capsys, "check", check, "--graph", d / "graph.json", *witness, *flags)
    assert code == 0, rep


# extract

def test_extract_occultation(capsys, tmp_path):
    d = generate(capsys, tmp_path, "ample-interrupted", "--s", 3, "--d", 2)
    out = tmp_path / "ext"
    code, rep, _ = run(capsys, "extract", "occultation", "--c", 1, "--o", 1, "--s", 3,
                       "--graph", d / "graph.json", "--witness", d / "witness.json", "--out", out)
    assert code == 0 and rep["kind"] == "FullOccultation" and rep["trace"]
    saved = json.loads((out / "outcome.json").read_text())
    (tmp_path / "w.json").write_text(json.dumps(saved["witness"]))
    code, rep, _ = run(capsys, "check", "full-occultation", "--o", 1,
                       "--graph", d / "graph.json", "--witness", tmp_path / "w.json")
    assert code == 0


def test_extract_occultation_precondition(capsys, tmp_path):
    d = generate(capsys, tmp_path, "occultation", "--s", 3)
    code, rep, _ = run(capsys, "extract", "occultation", "--s", 2,
                       "--graph", d / "graph.json", "--witness", d / "witness.json")
    assert code == 3 and "2-ample" in rep["error"]


def test_extract_syzygy_or_constellation_at_bound(capsys, tmp_path):
    for seed in range(5):
        d = generate(capsys, tmp_path / str(seed), "meager", "--n", 4, "--d", 1, "--seed", seed)
        code, rep, _ = run(capsys, "extract", "syzygy-or-constellation", "--a", 2, "--l", 2, "--s", 1, "--d", 1,
                           "--graph", d / "graph.json", "--witness", d / "witness.json")
        assert code == 0 and rep["kind"] in ("Syzygy", "PlainConstellation")


def test_extract_gemini_cycles(capsys, tmp_path):
    d = generate(capsys, tmp_path, "gemini", "--g", 4, "--o", 1, "--seed", 1)
    code, rep, _ = run(capsys, "extract", "gemini-cycles", "--c", 2, "--o", 1,
                       "--graph", d / "graph.json", "--witness", d / "witness.json")
    assert code == 0 and len(rep["witness"]) == 2
    assert all(len(c) >= 8 for c in rep["witness"])
    (tmp_path / "cyc.json").write_text(json.dumps(rep["witness"]))
    code, _, _ = run(capsys, "check", "cycle-packing", "--o", 6, "--graph", d / "graph.json",
                     "--witness", tmp_path / "cyc.json")
    assert code == 0


def test_extract_matching_or_cover(capsys, tmp_path):
    d = generate(capsys, tmp_path, "cycle", "--n", 6)
    code, rep, _ = run(capsys, "extract", "matching-or-cover", "--c", 3, "--graph", d / "graph.json")
    assert code == 0 and rep["kind"] == "Matching"


# treewidth

def test_treewidth_wall(capsys, tmp_path):
    d = generate(capsys, tmp_path, "wall", "--t", 3)
    out = tmp_path / "tw"
    code, rep, err = run(capsys, "treewidth", "--graph", d / "graph.json", "--out", out)
    assert code == 0 and rep["treewidth"] == 3 and "treewidth 3" in err
    code, rep, _ = run(capsys, "check", "decomposition", "--graph", d / "graph.json",
                       "--witness", out / "decomposition.td")
    assert code == 0 and rep["width"] == 3
    code, rep, _ = run(capsys, "check", "decomposition", "--graph", d / "graph.json",
                       "--witness", out / "decomposition.json")
    assert code == 0


def test_treewidth_occultation4(capsys, tmp_path):
    d = generate(capsys, tmp_path, "occultation", "--s", 4)
    code, rep, _ = run(capsys, "treewidth", "--graph", d / "graph.json")
    assert code == 0 and rep["treewidth"] >= 3


def test_treewidth_tiny_graphs(capsys, tmp_path):
    for n in (0, 1):
        p = tmp_path / f"g{n}.json"
        p.write_text(Graph(range(n), []).to_json())
        code, rep, _ = run(capsys, "treewidth", "--graph", p)
        assert code == 0 and rep["treewidth"] == 0


def test_treewidth_node_limit(capsys, tmp_path):
    d = generate(capsys, tmp_path, "wall", "--t", 4)
    code, rep, _ = run(capsys, "treewidth", "--graph", d / "graph.json", "--node-limit", 1)
    assert code == 2 and rep["status"] == "Indeterminate" and rep["lower"] < rep["upper"]


# config and global flags

def test_config_precedence(capsys, tmp_path):
    cfg = tmp_path / "occult.toml"
    cfg.write_text('budget = 2\nseed = 7\n\n[check]\nc = 3\n\n[generate]\nseed = 11\n')
    d = generate(capsys, tmp_path, "wall", "--t", 5)
    code, rep, _ = run(capsys, "--config", cfg, "check", "perforated", "--graph", d / "graph.json")
    assert code == 2 and rep["c"] == 3 and rep["budget"] == 2
    code, rep, _ = run(capsys, "--config", cfg, "check", "perforated", "--c", 2, "--budget", 10 ** 6,
                       "--graph", d / "graph.json")
    assert code == 1 and rep["c"] == 2
    _, rep, _ = run(capsys, "--config", cfg, "generate", "syzygy", "--a", 2)
    assert rep["seed"] == 11


def test_config_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("colour = 'red'\n")
    assert main(["--config", str(cfg), "generate", "wall", "--t", "2"]) == 3
    cfg.write_text("[check]\nseed = 1\n")
    assert main(["--config", str(cfg), "check", "perforated", "--graph", "x"]) == 3
    cfg.write_text("[paint]\nc = 1\n")
    assert main(["--config", str(cfg), "generate", "wall", "--t", "2"]) == 3


def test_threads_flag_is_accepted(capsys):
    code, a, _ = run(capsys, "--threads", 4, "generate", "meager", "--n", 5, "--d", 2, "--seed", 3)
    _, b, _ = run(capsys, "generate", "meager", "--n", 5, "--d", 2, "--seed", 3)
    assert code == 0 and a == b
    assert main(["--threads", "0", "generate", "wall", "--t", "2"]) == 3
