"""JSON text formats for algebras, functions, measures, operators and towers.

Rationals are always written as ``"p/q"`` strings in lowest terms. Writers are
deterministic (atom order follows the algebra), so ``dumps(loads(s)) == s`` for
any ``s`` produced by :func:`dumps`.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from . import _rational as R
from .boolean_algebra import BooleanAlgebra, make_dyadic_algebra, make_finite_algebra
from .cond_expectation import CeOperator, DuplicateOperator, PartitionAverageOperator, duplicate_space
from .errors import AlgebraMismatch, ParseError
from .functional import OrderFunctional
from .simple_function import SimpleFunction
from .witness import DyadicTower, build_tower

Value = Union[BooleanAlgebra, SimpleFunction, OrderFunctional, CeOperator, DyadicTower]


def _expect_keys(obj: Any, required: set, optional: set = frozenset(), what: str = "object") -> dict:
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be a JSON object")
    missing = required - obj.keys()
    if missing:
        raise ParseError(f"{what} is missing key {sorted(missing)[0]!r}")
    extra = obj.keys() - required - optional
    if extra:
        raise ParseError(f"{what} has unexpected key {sorted(extra)[0]!r}")
    return obj


def _rational(x: Any) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(f"expected an exact rational string 'p/q', got {x!r}")
    return R.as_fraction(x)


def _rational_map(obj: Any, what: str) -> dict[str, Fraction]:
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be a JSON object mapping atoms to rationals")
    return {k: _rational(v) for k, v in obj.items()}


# -- algebra -------------------------------------------------------------------

def algebra_to_obj(B: BooleanAlgebra) -> dict:
    if B.depth is not None:
        return {"kind": "dyadic", "depth": B.depth}
    return {"kind": "finite", "atoms": list(B.atoms)}


def algebra_from_obj(obj: Any) -> BooleanAlgebra:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError("algebra must be an object with a 'kind' key")
    kind = obj["kind"]
    if kind == "finite":
        _expect_keys(obj, {"kind", "atoms"}, what="finite algebra")
        atoms = obj["atoms"]
        if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
            raise ParseError("'atoms' must be a list of strings")
        return make_finite_algebra(atoms)
    if kind == "dyadic":
        _expect_keys(obj, {"kind", "depth"}, what="dyadic algebra")
        depth = obj["depth"]
        if isinstance(depth, bool) or not isinstance(depth, int):
            raise ParseError("'depth' must be an integer")
        return make_dyadic_algebra(depth)
    raise ParseError(f"unknown algebra kind {kind!r}")


# -- function and measure -----------------------------------------------------

def function_to_obj(f: SimpleFunction) -> dict:
    return {
        "algebra": algebra_to_obj(f.algebra),
        "values": {a: R.format_rational(v) for a, v in f},
    }


def function_from_obj(obj: Any, algebra: BooleanAlgebra = None) -> SimpleFunction:
    """Parse a function; when ``algebra`` is given the ``"algebra"`` key is optional."""
    if algebra is None:
        _expect_keys(obj, {"algebra", "values"}, what="function")
        algebra = algebra_from_obj(obj["algebra"])
    else:
        _expect_keys(obj, {"values"}, {"algebra"}, what="function")
        if "algebra" in obj and algebra_from_obj(obj["algebra"]) != algebra:
            raise AlgebraMismatch("function file names a different algebra")
    values = _rational_map(obj["values"], "'values'")
    missing = [a for a in algebra.atoms if a not in values]
    if missing:
        raise ParseError(f"function has no value for atom {missing[0]!r}")
    return SimpleFunction(algebra, values)


def measure_to_obj(phi: OrderFunctional) -> dict:
    return {
        "algebra": algebra_to_obj(phi.algebra),
        "weights": {a: R.format_rational(w) for a, w in phi.as_dict().items()},
    }


def measure_from_obj(obj: Any) -> OrderFunctional:
    _expect_keys(obj, {"algebra", "weights"}, what="measure")
    algebra = algebra_from_obj(obj["algebra"])
    weights = _rational_map(obj["weights"], "'weights'")
    if any(w < 0 for w in weights.values()):
        raise ParseError("measure weights must be nonnegative")
    return OrderFunctional(algebra, weights)


# -- operator -----------------------------------------------------------------

def operator_to_obj(T: CeOperator) -> dict:
    if isinstance(T, DuplicateOperator):
        if T.space is None:
            raise ValueError("operators built from an arbitrary pairing have no file format")
        return {"form": "duplicate", "base": algebra_to_obj(T.space.base)}
    if isinstance(T, PartitionAverageOperator):
        return {
            "form": "partition",
            "blocks": [list(b) for b in T.blocks],
            "measure": measure_to_obj(T.measure),
        }
    raise TypeError(f"unknown operator type {type(T).__name__}")


def operator_from_obj(obj: Any) -> CeOperator:
    if not isinstance(obj, dict) or "form" not in obj:
        raise ParseError("operator must be an object with a 'form' key")
    form = obj["form"]
    if form == "duplicate":
        _expect_keys(obj, {"form", "base"}, what="duplicate operator")
        return DuplicateOperator(duplicate_space(algebra_from_obj(obj["base"])))
    if form == "partition":
        _expect_keys(obj, {"form", "blocks", "measure"}, what="partition operator")
        blocks = obj["blocks"]
        if not isinstance(blocks, list) or not all(
            isinstance(b, list) and all(isinstance(a, str) for a in b) for b in blocks
        ):
            raise ParseError("'blocks' must be a list of lists of atom names")
        return PartitionAverageOperator(blocks, measure_from_obj(obj["measure"]))
    raise ParseError(f"unknown operator form {form!r}")


# -- tower --------------------------------------------------------------------

def tower_to_obj(tower: DyadicTower) -> dict:
    if tower.is_uniform():
        return {"depth": tower.depth, "ratios": "uniform"}
    return {"depth": tower.depth, "ratios": {w: R.format_rational(r) for w, r in tower.ratios.items()}}


def tower_from_obj(obj: Any) -> DyadicTower:
    _expect_keys(obj, {"depth", "ratios"}, what="tower")
    depth = obj["depth"]
    if isinstance(depth, bool) or not isinstance(depth, int):
        raise ParseError("'depth' must be an integer")
    ratios = obj["ratios"]
    if isinstance(ratios, str):
        return build_tower(depth, ratios)
    return build_tower(depth, _rational_map(ratios, "'ratios'"))


# -- text ---------------------------------------------------------------------

_WRITERS = [
    (BooleanAlgebra, algebra_to_obj),
    (SimpleFunction, function_to_obj),
    (OrderFunctional, measure_to_obj),
    (CeOperator, operator_to_obj),
    (DyadicTower, tower_to_obj),
]

_READERS = {
    "algebra": algebra_from_obj,
    "function": function_from_obj,
    "measure": measure_from_obj,
    "operator": operator_from_obj,
    "tower": tower_from_obj,
}


def to_obj(value: Value) -> dict:
    for cls, writer in _WRITERS:
        if isinstance(value, cls):
            return writer(value)
    raise TypeError(f"no text format for {type(value).__name__}")


def dumps(value: Value) -> str:
    return json.dumps(to_obj(value), indent=2, ensure_ascii=False) + "\n"


def parse_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None


def loads(text: str, kind: str) -> Value:
    """Parse ``text`` as one of ``algebra``, ``function``, ``measure``, ``operator``, ``tower``."""
    try:
        reader = _READERS[kind]
    except KeyError:
        raise ValueError(f"unknown value kind {kind!r}") from None
    return reader(parse_json(text))


def read(path: Union[str, Path], kind: str) -> Value:
    return loads(Path(path).read_text(encoding="utf-8"), kind)


def write(path: Union[str, Path], value: Value) -> None:
    Path(path).write_text(dumps(value), encoding="utf-8")


def format_table(rows, header=("n", "phi(f_n)")) -> str:
    """Two-column table with exact rationals rendered as ``p/q``."""
    cells = [tuple(header)] + [
        tuple(str(c) if isinstance(c, int) else R.format_rational(c) for c in row) for row in rows
    ]
    width = max(len(c[0]) for c in cells)
    return "\n".join(f"{a.ljust(width)}  {b}" for a, b in cells)
