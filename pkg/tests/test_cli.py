import io
import json
from pathlib import Path

import pytest

import oracles
from opd.cli import run
from opd import serialize as sz
from opd.algebra import poset_algebra
from opd.operad import ass_operad

DATA = Path(__file__).resolve().parent.parent / "data"


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


def test_tree_enum_counts():
    code, d = call_json("tree", "enum", "--leaves", 4, "--arities", "2")
    assert code == 0
    assert d["tables"]["count"] == len(d["tables"]["trees"]) == oracles.catalan(3)


def test_tree_enum_needs_bound_for_nullary():
    code, _ = call("tree", "enum", "--leaves", 2, "--arities", "0,2")
    assert code == 2


def test_tree_render_text():
    code, text = call("tree", "render", "((**)*)", "--format", "text")
    assert code == 0
    assert "arity 2" in text


def test_tree_render_bad_input():
    assert call("tree", "render", "((*")[0] == 2


def test_tree_check_small():
    code, d = call_json("tree", "check", "--max-inner", 3, "--samples", 20)
    assert code == 0
    assert d["status"] == "pass"


def test_operad_check_builtin_and_file():
    assert call("operad", "check", "ass", "--max-arity", 3)[0] == 0
    assert call("operad", "check", DATA / "ass.json", "--max-arity", 4)[0] == 0


def test_operad_check_detects_defect(tmp_path):
    d = sz.dump_operad(ass_operad(max_arity=3))
    d["circ"]["2,1,2"]["entries"][0][0] = "2"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    code, out = call_json("operad", "check", p, "--max-arity", 3)
    assert code == 1
    assert out["status"] == "fail"


def test_operad_check_rejects_too_high_arity():
    assert call("operad", "check", DATA / "ass.json", "--max-arity", 9)[0] == 2


def test_operad_free_dims():
    code, d = call_json("operad", "free", "--gen", "2:1", "--n-max", 5, "--check")
    assert code == 0
    dims = [d["tables"]["dims"][str(n)] for n in range(6)]
    assert dims == [0] + [oracles.catalan(n - 1) for n in range(1, 6)]


def test_operad_counit():
    code, d = call_json("operad", "counit", "ass", "--n-max", 2, "--w-max", 2)
    assert code == 0
    assert d["status"] in ("pass", "truncated")


def test_operad_pushout_on_data_file():
    code, d = call_json("operad", "pushout", "--problem", DATA / "pushout_free.json",
                        "--n-max", 4, "--exact")
    assert code == 0
    assert [d["tables"]["dims"][str(n)] for n in range(1, 5)] == [1, 1, 2, 5]


def test_algebra_free_path_counts():
    code, d = call_json("algebra", "free", "--quiver", "x->y,y->z", "--p-max", 3, "--check")
    assert code == 0
    counts = oracles.path_counts("xyz", {("x", "y"): 1, ("y", "z"): 1}, 3)
    carrier = d["tables"]["dims"]
    for (x, y), n in counts.items():
        assert carrier.get(f"{x},{y}", 0) == n


def test_algebra_pushout_on_data_file():
    code, d = call_json("algebra", "pushout", "--problem", DATA / "algebra_pushout.json",
                        "--n-max", 3, "--t-max", 3)
    assert code == 0
    assert d["tables"]["carrier"]["x,z"] == 1


def test_algebra_check_file(tmp_path):
    a = poset_algebra("xy", [("x", "x"), ("y", "y"), ("x", "y")], ass_operad(max_arity=2))
    p = tmp_path / "alg.json"
    p.write_text(sz.dumps(sz.dump_algebra(a)))
    code, d = call_json("algebra", "check", p)
    assert code == 0 and d["status"] == "pass"


def test_algebra_end():
    code, d = call_json("algebra", "end", "--quiver", "x->y", "--max-arity", 3, "--check")
    assert code == 0
    assert d["tables"]["dims"] == [0, 1, 0, 0]


@pytest.mark.parametrize("argv", [
    ["operad", "check", "/nonexistent.json"],
    ["operad", "free", "--gen", "two:1"],
    ["algebra", "free", "--quiver", "x->"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_output_is_deterministic():
    a = call("tree", "check", "--max-inner", 3, "--samples", 30, "--seed", 4)[1]
    b = call("tree", "check", "--max-inner", 3, "--samples", 30, "--seed", 4)[1]
    assert a == b


def test_text_format():
    code, text = call("operad", "check", "ass", "--max-arity", 3, "--format", "text")
    assert code == 0
    assert text.startswith("status: pass")
