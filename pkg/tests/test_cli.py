import json
from pathlib import Path

import jsonschema
import pytest

import skewrank
from skewrank.cli import main

SCHEMA = json.loads((Path(skewrank.__file__).parent / "schemas" / "report.schema.json").read_text())

EVEN_C6 = "6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n"
ODD_C6 = "6\n1 0\n1 2\n2 3\n3 4\n4 5\n5 0\n"
ODD_C4 = "4\n1 0\n1 2\n2 3\n3 0\n"
TWO_C6 = "11\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n0 6\n6 7\n7 8\n8 9\n9 10\n10 0\n"
P4 = "4\n0 1\n2 1\n2 3\n"


@pytest.fixture
def run(tmp_path, capsys):
    def go(*args, graph=None):
        argv = list(args)
        if graph is not None:
            p = tmp_path / "g.txt"
            p.write_text(graph)
            argv.append(str(p))
        code = main(argv)
        out, err = capsys.readouterr()
        doc = json.loads(out) if out.strip().startswith("{") else out
        if isinstance(doc, dict):
            jsonschema.validate(doc, SCHEMA)
        return code, doc, err

    return go


def test_info_even_c6(run):
    code, doc, _ = run("info", graph=EVEN_C6)
    assert code == 0
    assert (doc["n"], doc["r"], doc["sr"], doc["d"], doc["beta"]) == (6, 6, 4, 1, 1)
    assert doc["kind"] == "info" and doc["schema_version"] == 1


def test_info_empty(run):
    _, doc, _ = run("info", graph="3\n")
    assert (doc["r"], doc["sr"], doc["eta"], doc["beta"]) == (0, 0, 3, None)


def test_info_bounds(run):
    code, doc, _ = run("info", "--bounds", graph=EVEN_C6)
    assert code == 0
    names = {b["name"] for b in doc["bounds"]}
    assert {"skew_rank_lower", "skew_rank_upper", "nullity_upper"} <= names


def test_self_loop_is_input_error(run):
    code, _, err = run("info", graph="3\n0 1\n1 1\n")
    assert code == 2 and "self-loop at line 3" in err


def test_missing_file(run):
    code, _, err = run("info", "/nonexistent/graph.txt")
    assert code == 2 and "error" in err


def test_classify(run):
    code, doc, _ = run("classify", graph=EVEN_C6)
    assert code == 0 and doc["structural"] and doc["direct"] and doc["agreement"]
    _, doc, _ = run("classify", graph=ODD_C6)
    assert not doc["conditions"]["cond2_cycles_even_mod4_evenly_oriented"] and not doc["direct"]
    assert doc["sr"] == 6
    _, doc, _ = run("classify", graph=TWO_C6)
    assert not doc["conditions"]["cond1_disjoint_cycles"] and not doc["direct"]


def test_reduce_p4(run):
    code, doc, _ = run("reduce", graph=P4)
    assert code == 0 and len(doc["steps"]) == 2 and doc["final"] == "0\n" and doc["success"]


def test_compress(run):
    code, doc, _ = run("compress", graph=P4)
    assert code == 0 and doc["t_graph"] == "4\n0 1\n1 2\n2 3\n"
    code, _, err = run("compress", graph=TWO_C6)
    assert code == 2 and "0" in err


def test_cycles_odd_c4(run):
    _, doc, _ = run("cycles", graph=ODD_C4)
    assert [(c["len"], c["class"], c["sign"]) for c in doc["cycles"]] == [(4, "oddly_oriented", -1)]


def test_construct_round_trips_into_classify(run, tmp_path):
    code, text, _ = run("construct", "--cycles", "6,10", "--ops", "4", "--seed", "3")
    assert code == 0
    _, doc, _ = run("classify", graph=text)
    assert doc["structural"] and doc["direct"]


def test_construct_bad_length(run):
    code, _, err = run("construct", "--cycles", "8")
    assert code == 2 and "2 mod 4" in err
    code, _, _ = run("construct", "--cycles", "six")
    assert code == 2


def test_verify_exhaustive_n4(run):
    code, doc, _ = run("verify", "--n", "4", "--exhaustive")
    assert code == 0 and doc["passed"]
    assert doc["generator"]["graphs_by_n"]["4"] == 729
    assert "wall_time_s" not in doc


def test_verify_timing_flag(run):
    _, doc, _ = run("verify", "--n", "3", "--exhaustive", "--timing")
    assert isinstance(doc["wall_time_s"], float)


def test_verify_random_is_byte_identical(tmp_path, capsys):
    argv = ["verify", "--n", "10", "--samples", "200", "--seed", "7"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_verify_rejects_n7(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--n", "7", "--exhaustive"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_verify_rejects_unknown_check(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--n", "3", "--exhaustive", "--checks", "bounds,bogus"])


def test_docs_schema_matches_package_copy():
    docs = Path(__file__).resolve().parents[1] / "docs" / "report.schema.json"
    assert json.loads(docs.read_text()) == SCHEMA
