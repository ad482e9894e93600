import json
from dataclasses import dataclass

import pytest

from opd.config import Truncation, as_dict, load_config


@dataclass(frozen=True)
class Demo:
    n_max: int = 3
    w_max: int | None = None
    exact: bool = False
    arities: tuple = (2,)
    label: str = "demo"


def test_defaults_file_and_overrides(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"n_max": 5, "label": "file"}))
    cfg = load_config(Demo, str(p), ["w_max=2", "exact=true", "arities=[0,2]"])
    assert cfg == Demo(n_max=5, w_max=2, exact=True, arities=[0, 2], label="file")
    assert as_dict(cfg)["label"] == "file"


def test_none_override():
    assert load_config(Demo, None, ["w_max=none"]).w_max is None


@pytest.mark.parametrize("bad", [["nope=1"], ["n_max"]])
def test_bad_overrides(bad):
    with pytest.raises(ValueError):
        load_config(Demo, None, bad)


def test_truncation_validates():
    assert Truncation(4, t_max=2).t_max == 2
    with pytest.raises(ValueError):
        Truncation(-1)
    with pytest.raises(ValueError):
        Truncation(3, w_max=-2)
