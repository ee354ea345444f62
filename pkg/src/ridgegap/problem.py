"""Problem descriptions: JSON loading, validation and domain construction."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import jsonschema
import numpy as np

from .geometry import BoxDomainSpec, DirectionPair, SampledDomain, sample_box

__all__ = ["PROBLEM_SCHEMA", "REPORT_SCHEMA", "ProblemSpec", "load_problem", "problem_from_json"]

_VEC = {"type": "array", "items": {"type": "number"}, "minItems": 1}

PROBLEM_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ridgegap problem",
    "type": "object",
    "properties": {
        "dims": {"type": "integer", "minimum": 1},
        "a": _VEC,
        "b": _VEC,
        "points": {"type": "array", "items": _VEC},
        "box": {
            "type": "object",
            "properties": {k: {"type": "number"} for k in ("c1", "d1", "c2", "d2")},
            "required": ["c1", "d1", "c2", "d2"],
            "additionalProperties": False,
        },
        "grid": {"type": "integer", "minimum": 2},
        "f": {"type": "string"},
        "fvals": {"type": "array", "items": {"type": "number"}},
        "activation": {"type": "string"},
        "epsilon": {"type": "number", "exclusiveMinimum": 0},
        "tol": {"type": "number", "minimum": 0},
        "maxLen": {"type": "integer", "minimum": 2},
        "quadOrder": {"type": "integer", "minimum": 2},
        "classGrid": {"type": "integer", "minimum": 2},
        "maxShifts": {"type": "integer", "minimum": 1},
    },
    "not": {"required": ["points", "box"]},
    "dependentRequired": {"box": ["grid"], "grid": ["box"]},
    "additionalProperties": False,
}

_NULLABLE_OBJ = {"type": ["object", "null"]}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ridgegap report",
    "type": "object",
    "properties": {
        "command": {"type": "string"},
        "problem": {"type": "object"},
        "lowerBound": {
            "type": ["object", "null"],
            "properties": {
                "value": {"type": "number", "minimum": 0},
                "witness": _NULLABLE_OBJ,
                "method": {"enum": ["exact-mean-cycle", "enumeration"]},
            },
            "required": ["value", "witness", "method"],
        },
        "bestRidge": {
            "type": ["object", "null"],
            "properties": {"error": {"type": "number", "minimum": 0}},
            "required": ["error"],
        },
        "closedForm": _NULLABLE_OBJ,
        "network": _NULLABLE_OBJ,
        "agreement": {
            "type": "object",
            "properties": {
                "duality": {"type": ["boolean", "null"]},
                "closedForm": {"type": ["boolean", "null"]},
            },
        },
        "errors": {"type": "array"},
        "timings": {"type": "object"},
    },
    "required": ["command", "problem", "agreement"],
}


@dataclass(frozen=True)
class ProblemSpec:
    """Everything a command needs: directions, domain, function and options."""

    a: tuple[float, ...]
    b: tuple[float, ...]
    points: tuple[tuple[float, ...], ...] | None = None
    box: tuple[float, float, float, float] | None = None
    grid: int | None = None
    f: str | None = None
    fvals: tuple[float, ...] | None = None
    activation: str = "sigmoid"
    epsilon: float = 0.05
    tol: float | None = None
    max_len: int = 8
    quad_order: int = 32
    class_grid: int = 65
    max_shifts: int = 64
    extra: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if (self.points is None) == (self.box is None):
            raise ValueError("give exactly one of explicit points or a box with a grid")
        if self.box is not None and self.grid is None:
            raise ValueError("a box domain needs a grid size")
        if len(self.a) != len(self.b):
            raise ValueError("directions a and b must have the same length")
        if self.box is not None and len(self.a) != 2:
            raise ValueError("box domains are planar (d = 2)")
        if self.points is not None and any(len(p) != len(self.a) for p in self.points):
            raise ValueError("every point must have the dimension of the directions")
        if self.epsilon <= 0 or self.max_len < 2 or self.quad_order < 2:
            raise ValueError("epsilon must be positive, maxLen and quadOrder at least 2")

    @property
    def dims(self) -> int:
        return len(self.a)

    @property
    def dirs(self) -> DirectionPair:
        return DirectionPair(self.a, self.b)

    def box_spec(self) -> BoxDomainSpec:
        return BoxDomainSpec(*self.box, self.dirs)

    def domain(self, grid: int | None = None) -> SampledDomain:
        if self.box is not None:
            return sample_box(self.box_spec(), grid or self.grid)
        return SampledDomain.from_points(np.array(self.points, dtype=float), self.dirs, self.tol)

    def with_grid(self, m: int) -> "ProblemSpec":
        return replace(self, grid=m)

    def to_json(self) -> dict:
        out = {"dims": self.dims, "a": list(self.a), "b": list(self.b)}
        if self.points is not None:
            out["points"] = [list(p) for p in self.points]
        else:
            c1, d1, c2, d2 = self.box
            out["box"] = {"c1": c1, "d1": d1, "c2": c2, "d2": d2}
            out["grid"] = self.grid
        if self.f is not None:
            out["f"] = self.f
        if self.fvals is not None:
            out["fvals"] = list(self.fvals)
        out.update(
            activation=self.activation,
            epsilon=self.epsilon,
            maxLen=self.max_len,
            quadOrder=self.quad_order,
        )
        if self.tol is not None:
            out["tol"] = self.tol
        return out


_KEYMAP = {
    "maxLen": "max_len",
    "quadOrder": "quad_order",
    "classGrid": "class_grid",
    "maxShifts": "max_shifts",
}


def problem_from_json(obj: dict) -> ProblemSpec:
    """Validate against :data:`PROBLEM_SCHEMA` and build a :class:`ProblemSpec`."""
    jsonschema.validate(obj, PROBLEM_SCHEMA)
    kw = {}
    for key, value in obj.items():
        name = _KEYMAP.get(key, key)
        if name == "dims":
            continue
        if name == "points":
            value = tuple(tuple(float(x) for x in p) for p in value)
        elif name == "box":
            value = (value["c1"], value["d1"], value["c2"], value["d2"])
        elif name in ("a", "b", "fvals"):
            value = tuple(float(x) for x in value)
        kw[name] = value
    if "dims" in obj and "a" in obj and obj["dims"] != len(obj["a"]):
        raise ValueError(f"dims={obj['dims']} but a has {len(obj['a'])} entries")
    return ProblemSpec(**kw)


def load_problem(path) -> dict:
    """Raw JSON object from a problem file (a bare list is read as points)."""
    with open(path) as fh:
        obj = json.load(fh)
    if isinstance(obj, list):
        obj = {"points": obj}
    return obj
