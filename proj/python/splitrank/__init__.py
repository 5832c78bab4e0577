"""Exact integer hulls, split closures and split-rank certificates.

Polyhedra are plain dicts in the same shape as the command-line JSON files,
with every rational as a ``fractions.Fraction``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import _core
from ._core import CapExceeded, SplitrankError

__all__ = [
    "CapExceeded",
    "SplitrankError",
    "polyhedron",
    "integer_hull",
    "closure",
    "certify",
    "check",
    "bounded_split_rank",
]

__version__ = _core.__version__


def _decode_rows(rows):
    return [([Fraction(a) for a in row["a"]], Fraction(row["b"])) for row in rows]


def _decode_poly(text: str) -> dict:
    doc = json.loads(text)
    out = {
        "dim": doc["dim"],
        "empty": doc["empty"],
        "ineq": _decode_rows(doc["ineq"]),
        "eq": _decode_rows(doc["eq"]),
    }
    v = doc.get("vrep", {})
    for key in ("vertices", "rays", "lineality"):
        out[key] = [[Fraction(x) for x in p] for p in v.get(key, [])]
    return out


def polyhedron(dim: int, ineq: Iterable = (), eq: Iterable = ()) -> dict:
    """Build {x : a x <= b for (a, b) in ineq, a x = b for (a, b) in eq}."""
    return {
        "dim": dim,
        "ineq": [([Fraction(a) for a in row], Fraction(b)) for row, b in ineq],
        "eq": [([Fraction(a) for a in row], Fraction(b)) for row, b in eq],
    }


def _to_json(p: dict) -> str:
    rows = lambda key: [{"a": [str(Fraction(a)) for a in row], "b": str(Fraction(b))}
                        for row, b in p.get(key, [])]
    return json.dumps({"dim": p["dim"], "ineq": rows("ineq"), "eq": rows("eq")})


def integer_hull(p: dict) -> dict:
    return _decode_poly(_core.hull(_to_json(p)))


def closure(
    p: dict,
    directions: Optional[Sequence[Sequence[int]]] = None,
    norm_bound: Optional[int] = None,
    kind: str = "split",
    iters: int = 1,
) -> dict:
    """Iterate the split (or Chvátal) closure over explicit directions or all
    primitive directions with infinity-norm at most ``norm_bound``."""
    dirs = None if directions is None else json.dumps([[str(int(x)) for x in d] for d in directions])
    return _decode_poly(_core.closure(_to_json(p), dirs, norm_bound, kind, iters))


def certify(p: dict, max_iters: int = 1000, name: str = "instance") -> dict:
    """Certificate as a JSON document (rationals kept as strings)."""
    return json.loads(_core.certify(_to_json(p), max_iters, name))


def check(p: dict, certificate: dict) -> tuple[bool, str]:
    return _core.check(_to_json(p), json.dumps(certificate))


def bounded_split_rank(p: dict, bound: int, cap: int = 1000) -> tuple[bool, int]:
    """(reached, iterations) for the closure over all directions of norm <= bound."""
    return _core.bounded_split_rank(_to_json(p), bound, cap)
