from __future__ import annotations

import json

import pytest

from fareylab.cli import SCHEMA, main
from fareylab.graph import graph_from_dict, graph_to_dict
from fareylab.kclass import is_strong
from fareylab.models import ModelSpec, TreeEdge, build_tree_model


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def chain_file(tmp_path):
    spec = ModelSpec(((0, 1), (1, 1)), (TreeEdge(0, 1, 3, 2),))
    return write(tmp_path, "chain.json", graph_to_dict(build_tree_model(spec).graph))


def test_build(capsys):
    code, out, _ = run(capsys, "build", "--level", "3")
    data = json.loads(out)
    assert code == 0 and data["schema"] == SCHEMA
    assert data["vertex_count"] == 16 and len(data["edges"]) == 29


def test_build_dot(capsys):
    code, out, _ = run(capsys, "build", "--level", "1", "--format", "dot")
    assert code == 0 and out.startswith("graph") and 'color="blue"' in out


def test_check_k_negative_with_witness(capsys, tmp_path, c4):
    path = write(tmp_path, "c4.json", graph_to_dict(c4))
    code, out, _ = run(capsys, "check-k", "--input", path)
    data = json.loads(out)
    assert code == 1 and data["violation"]["kind"] == "no_removable_vertex"
    assert not is_strong(set(range(4)) - set(data["violation"]["stuck"]), c4)[0]


def test_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"vertex_count": 3,\n "edges": [[0, 1],, ]}')
    code, _, err = run(capsys, "check-k", "--input", str(path))
    assert code == 2 and "line 2" in err and "column" in err


def test_bad_graph(capsys, tmp_path):
    path = write(tmp_path, "loop.json", {"vertex_count": 2, "edges": [[1, 1]]})
    assert run(capsys, "check-k", "--input", path)[0] == 2


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build", "--level", "2", "--colour"])
    assert exc.value.code == 2


def test_round_trip(capsys, tmp_path):
    _, out, _ = run(capsys, "build", "--level", "4")
    path = tmp_path / "f4.json"
    path.write_text(out)
    _, again, _ = run(capsys, "export", "--input", str(path))
    assert json.loads(again) == json.loads(out)
    assert graph_from_dict(json.loads(again)) == graph_from_dict(json.loads(out))


def test_deterministic_generic(capsys):
    first = run(capsys, "generic", "--seed", "9", "--steps", "50")[1]
    second = run(capsys, "generic", "--seed", "9", "--steps", "50")[1]
    assert first == second


def test_pdelta_chain(capsys, chain_file):
    code, out, _ = run(
        capsys, "eval", "--pred", "pdelta", "--delta", "lozenge,lozenge", "--x", "2", "--y", "6", "--input", chain_file
    )
    data = json.loads(out)
    assert code == 0 and data["holds"] and data["connecting_points"] == [2, 3, 6]


def test_eval_other_predicates(capsys, chain_file):
    assert run(capsys, "eval", "--pred", "pc", "--type", "lozenge", "--x", "2", "--y", "3", "--input", chain_file)[0] == 0
    code, out, _ = run(capsys, "eval", "--pred", "d", "--x", "0", "--y", "1", "--z", "2", "--input", chain_file)
    assert code == 0 and json.loads(out)["extensions"] == [{"3": 3}]
    code, out, _ = run(
        capsys, "eval", "--pred", "y", "--d3", "lozenge", "--x", "0", "--y", "1", "--z", "6", "--input", chain_file
    )
    assert code == 0 and json.loads(out)["witnesses"] == [0, 1, 3]
    assert run(capsys, "eval", "--pred", "pc", "--type", "nosuch", "--x", "0", "--y", "1", "--input", chain_file)[0] == 2


def test_strong_and_peel(capsys, chain_file):
    code, out, _ = run(capsys, "strong", "--subset", "0,1", "--input", chain_file)
    assert code == 0 and json.loads(out)["strong"]
    code, out, _ = run(capsys, "peel", "--input", chain_file, "--protected", "3")
    assert code == 0 and json.loads(out)["stuck"] == []


def test_blocks_acl_gate_indep(capsys, chain_file):
    data = json.loads(run(capsys, "blocks", "--input", chain_file)[1])
    assert data["cut_vertices"] == [3] and data["is_forest"]
    assert json.loads(run(capsys, "acl", "--set", "2,6", "--input", chain_file)[1])["acl"] == list(range(7))
    assert json.loads(run(capsys, "gate", "--x", "6", "--set", "0,1", "--input", chain_file)[1])["gate"] == 3
    assert run(capsys, "indep", "--a", "3", "--b", "0", "--c", "6", "--input", chain_file)[0] == 0
    assert run(capsys, "indep", "--a", "1", "--b", "0", "--c", "6", "--input", chain_file)[0] == 1


def test_amalgamate(capsys, tmp_path):
    b = write(tmp_path, "b.json", {"vertex_count": 3, "edges": [[0, 1], [0, 2], [1, 2]]})
    _, f1, _ = run(capsys, "build", "--level", "1")
    c = tmp_path / "c.json"
    c.write_text(f1)
    code, out, _ = run(capsys, "amalgamate", "--b", b, "--c", str(c), "--glue", "0:0,1:1")
    data = json.loads(out)
    assert code == 0 and data["collapsed"] == [[2, 2]] and data["vertex_count"] == 4
    code, out, _ = run(capsys, "amalgamate", "--b", b, "--c", str(c), "--glue", "0:0,1:1", "--free")
    assert json.loads(out)["vertex_count"] == 5


def test_tree_model(capsys, tmp_path):
    spec = write(
        tmp_path,
        "spec.json",
        {"nodes": [{"id": 0, "level": 1}, {"id": 1, "level": 1}], "edges": [{"u": 0, "v": 1, "attach_u": 3, "attach_v": 2}]},
    )
    data = json.loads(run(capsys, "tree-model", "--spec", spec)[1])
    assert data["vertex_count"] == 7 and data["copy_of"][3] == [0, 1]
    cyc = write(tmp_path, "cyc.json", {"nodes": [{"id": 0, "level": 1}], "edges": [{"u": 0, "v": 0, "attach_u": 0, "attach_v": 1}]})
    assert run(capsys, "tree-model", "--spec", cyc)[0] == 2


def test_cycles_and_cache(capsys, tmp_path, monkeypatch, chain_file):
    out_path = tmp_path / "cat.json"
    data = json.loads(run(capsys, "cycles", "--max-vertices", "6", "--out", str(out_path))[1])
    assert data["by_span"]["2"][0] == "C2.0" and out_path.exists()
    cache = tmp_path / "cache.json"
    monkeypatch.setenv("FAREY_LAB_CACHE", str(cache))
    assert run(capsys, "eval", "--pred", "pc", "--type", "C2.0", "--x", "2", "--y", "3", "--input", chain_file)[0] == 0
    assert cache.exists()


def test_fingerprint_and_counts(capsys, tmp_path):
    _, f2, _ = run(capsys, "build", "--level", "2")
    path = tmp_path / "f2.json"
    path.write_text(f2)
    data = json.loads(
        run(capsys, "fingerprint", "--input", str(path), "--over", "0,1", "--b", "2,3,4", "--max-cycle", "6",
            "--max-delta", "2", "--max-eps", "2", "--max-level", "1", "--jobs", "2")[1]
    )
    assert data["distinct"] == 2
    assert json.loads(run(capsys, "counts", "--level", "3")[1])["edges"] == 29
    data = json.loads(run(capsys, "counts", "--input", str(path), "--atom", "lozenge@0")[1])
    assert data["count"] == 2
    assert run(capsys, "counts")[0] == 2
