import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import linmaps
from opd import serialize as sz
from opd import trees as tr
from opd.algebra import algebras_equal, free_algebra, poset_algebra, sgraph
from opd.exactcat import LinMap, Space
from opd.operad import Sequence, ass_operad, check_operad, free_operad, rescaled_ass
from opd.opcolim import coproduct_problem
from opd.serialize import SchemaError


def through_json(d):
    return json.loads(sz.dumps(d))


@given(linmaps(max_dim=3))
def test_linmap_round_trip(f):
    assert sz.load_linmap(through_json(sz.dump_linmap(f))) == f


@pytest.mark.parametrize("bad", ["1/0", 0.5, True, "x", "1/2/3"])
def test_bad_scalars_rejected(bad):
    with pytest.raises(SchemaError):
        sz.load_scalar(bad)


def test_scalar_text_forms():
    assert sz.load_scalar("-6/4") == Fraction(-3, 2)
    assert sz.load_scalar(7) == 7
    assert sz.dump_scalar(sz.load_scalar("2/4")) == "1/2"


def test_error_paths_are_precise():
    d = sz.dump_operad(ass_operad(max_arity=3))
    d["circ"]["2,1,2"]["entries"][0][0] = "1/0"
    with pytest.raises(SchemaError) as exc:
        sz.load_operad(d)
    assert exc.value.path == '$.circ["2,1,2"].entries[0][0]'


def test_wrong_row_count():
    with pytest.raises(SchemaError) as exc:
        sz.load_linmap({"source": 2, "target": 2, "entries": [["1", "0"]]})
    assert exc.value.path == "$.entries"


def test_circ_key_outside_range():
    d = sz.dump_operad(ass_operad(max_arity=3))
    d["circ"]["3,1,2"] = d["circ"]["2,1,2"]
    with pytest.raises(SchemaError):
        sz.load_operad(d)


@given(st.integers(0, 10**6))
def test_random_operad_round_trip(seed):
    rng = random.Random(seed)
    sc = {n: Fraction(rng.randint(1, 5), rng.randint(1, 3)) * rng.choice([1, -1])
          for n in range(4)}
    o = rescaled_ass(sc, 3)
    back = sz.load_operad(through_json(sz.dump_operad(o)))
    assert back.dims() == o.dims()
    assert back.unit == o.unit
    for k in [(2, 1, 2), (2, 2, 1), (3, 1, 0), (1, 1, 3)]:
        assert back.circ_i(*k) == o.circ_i(*k)
    assert check_operad(back).status == "pass"


def test_builtin_operads():
    assert sz.load_operad({"builtin": "ass", "max_arity": 3}).dims() == [1, 1, 1, 1]
    f = sz.load_operad({"builtin": "free", "gens": {"2": 1}, "max_arity": 4})
    assert f.dims() == free_operad(Sequence({2: Space(1)}), 4).dims()
    with pytest.raises(SchemaError):
        sz.load_operad({"builtin": "lie"})


def test_problem_round_trip():
    p = coproduct_problem(Sequence({2: Space(1)}), ass_operad(max_arity=3))
    q = sz.load_problem(through_json(sz.dump_problem(p)))
    assert q.v.support == p.v.support
    assert q.o.dims() == p.o.dims()


def test_sgraph_with_empty_homs():
    g = sz.load_sgraph({"objects": ["a", "b"]})
    assert g.total_dim == 0
    with pytest.raises(SchemaError):
        sz.load_sgraph({"objects": ["a", "a"]})
    with pytest.raises(SchemaError) as exc:
        sz.load_sgraph({"objects": ["a"], "hom": {"a,c": 1}})
    assert "hom" in exc.value.path


def test_algebra_round_trip():
    o = ass_operad(max_arity=2)
    for a in [poset_algebra("xy", [("x", "x"), ("y", "y"), ("x", "y")], o),
              free_algebra(o, sgraph("xy", {("x", "y"): 1}), 2)]:
        b = sz.load_algebra(through_json(sz.dump_algebra(a)))
        assert algebras_equal(a, b)
        assert b.truncated == a.truncated


def test_tree_round_trip():
    t = tr.parse("((**)()*)")
    assert sz.load_tree(through_json(sz.dump_tree(t))) == t
    with pytest.raises(SchemaError):
        sz.load_tree({"tree": "(*"})


def test_dumps_is_deterministic():
    d = {"b": {3, 1, 2}, "a": (1, 2), "t": tr.corolla(2)}
    assert sz.dumps(d) == sz.dumps(dict(reversed(list(d.items()))))
    assert json.loads(sz.dumps(d)) == {"a": [1, 2], "b": [1, 2, 3], "t": "(**)"}


def test_load_file_rejects_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError):
        sz.load_file(str(p))


def test_integer_spaces_accepted():
    assert sz.load_space(3).dim == 3
    with pytest.raises(SchemaError):
        sz.load_space(-1)
    assert LinMap.identity(sz.load_space({"dim": 2})).rank() == 2
