"""JSON (de)serialization for configurations, certificates and reports.

Rational numbers travel as strings ("p/q" or "n") so nothing is lost on
the wire; floats stay JSON numbers; complex values become two-element
{"re": .., "im": ..} objects.  The shared configuration format is

    {"pairs": [{"x": ["5", "12", "13"], "y": [...]}, ...]}
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .exact import exact_array
from .zmatrix import PointPairConfig

__all__ = [
    "scalar_to_json",
    "vector_to_json",
    "matrix_to_json",
    "config_to_json",
    "config_from_json",
    "load_config",
    "dump_json",
]


def scalar_to_json(v):
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    if isinstance(v, (complex, np.complexfloating)):
        if v.imag == 0:
            return float(v.real)
        return {"re": float(v.real), "im": float(v.imag)}
    raise TypeError(f"cannot serialize scalar {v!r}")


def vector_to_json(v):
    return [scalar_to_json(s) for s in np.asarray(v).ravel()]


def matrix_to_json(m):
    return [[scalar_to_json(s) for s in row] for row in np.asarray(m)]


def _scalar_from_json(v):
    if isinstance(v, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        f = Fraction(v)
        return int(f) if f.denominator == 1 else f
    if isinstance(v, float):
        return v
    raise TypeError(f"cannot parse coordinate {v!r}")


def config_to_json(cfg: PointPairConfig) -> dict:
    return {"pairs": [{"x": vector_to_json(x), "y": vector_to_json(y)}
                      for x, y in cfg.pairs]}


def config_from_json(doc: dict) -> PointPairConfig:
    if not isinstance(doc, dict) or "pairs" not in doc:
        raise ValueError("configuration JSON needs a top-level 'pairs' list")
    pairs = []
    for entry in doc["pairs"]:
        x = [_scalar_from_json(v) for v in entry["x"]]
        y = [_scalar_from_json(v) for v in entry["y"]]
        if any(isinstance(v, float) for v in x + y):
            pairs.append((np.array([float(v) for v in x]),
                          np.array([float(v) for v in y])))
        else:
            pairs.append((exact_array(x), exact_array(y)))
    return PointPairConfig(tuple(pairs))


def load_config(path) -> PointPairConfig:
    with open(path) as fh:
        return config_from_json(json.load(fh))


def dump_json(doc, path=None) -> str:
    text = json.dumps(doc, indent=2)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text
