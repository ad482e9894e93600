"""Experiment configuration as plain dataclasses.

Scripts declare a frozen dataclass of parameters and build it with
:func:`load_config`, which layers an optional JSON file and ``key=value``
overrides over the defaults.  Unknown keys are an error rather than silently
ignored.
"""

from __future__ import annotations

import dataclasses
import json
import typing
from dataclasses import dataclass
from typing import Any, Iterable, TypeVar

T = TypeVar("T")


@dataclass(frozen=True)
class Truncation:
    """Bounds shared by every construction that is only computed in part."""

    n_max: int
    w_max: int | None = None
    t_max: int | None = None
    exact: bool = False

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError("n_max must be non-negative")
        for name in ("w_max", "t_max"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name} must be non-negative")


def _coerce(hint: Any, raw: Any) -> Any:
    if not isinstance(raw, str):
        return raw
    options = [a for a in typing.get_args(hint) if a is not type(None)] or [hint]
    optional = type(None) in typing.get_args(hint)
    if optional and raw.lower() in ("none", "null"):
        return None
    base = typing.get_origin(options[0]) or options[0]
    if base is bool:
        return raw.lower() in ("1", "true", "yes")
    if base is int:
        return int(raw)
    if base in (list, tuple):
        return json.loads(raw)
    return raw


def load_config(cls: type[T], path: str | None = None,
                overrides: Iterable[str] = ()) -> T:
    """``cls`` with defaults, then the JSON object at ``path``, then overrides."""
    hints = typing.get_type_hints(cls)
    fields = {f.name for f in dataclasses.fields(cls)}
    values: dict = {}
    if path:
        with open(path, encoding="utf-8") as fh:
            values.update(json.load(fh))
    for item in overrides:
        key, sep, raw = item.partition("=")
        if not sep:
            raise ValueError(f"override {item!r} is not key=value")
        values[key.strip()] = raw.strip()
    unknown = set(values) - set(fields)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return cls(**{k: _coerce(hints[k], v) for k, v in values.items()})


def as_dict(cfg: Any) -> dict:
    return dataclasses.asdict(cfg)
