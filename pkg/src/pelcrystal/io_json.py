"""JSON interchange for contexts, elements, crystals, displays, connections.

Witt elements travel as integer coefficient arrays in [0, p^n); rationals as
[numerator, denominator]; polynomials as ascending coefficient arrays.  The
formats are deliberately language-portable so golden files can be replayed
anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Mapping, Optional

from . import display as display_mod
from .cartier import ConnectionModule
from .errors import UsageError
from .linalg import Matrix, mat
from .pel import PelDatum
from .semilinear import FCrystal, NewtonPolygon, SemilinearMap
from .witt import WittContext, WittElem


def context_to_json(ctx: WittContext) -> dict:
    return {"p": ctx.p, "m": ctx.m, "n": ctx.n, "lift_poly": list(ctx.modulus)}


def context_from_json(obj: Mapping) -> WittContext:
    try:
        return WittContext(int(obj["p"]), int(obj["m"]), int(obj["n"]), obj.get("lift_poly"))
    except KeyError as exc:
        raise UsageError(f"context object missing field {exc}") from exc


def elem_to_json(x: WittElem) -> List[int]:
    return list(x.coeffs)


def elem_from_json(ctx: WittContext, obj) -> WittElem:
    if isinstance(obj, Mapping):
        obj = obj["coeffs"]
    return ctx.elem(int(c) for c in obj)


def matrix_to_json(a: Matrix) -> List[List[List[int]]]:
    return [[elem_to_json(x) for x in row] for row in a]


def matrix_from_json(ctx: WittContext, rows) -> Matrix:
    return mat([[elem_from_json(ctx, x) for x in row] for row in rows])


def crystal_to_json(c: FCrystal) -> dict:
    out = {
        "ctx": context_to_json(c.ctx),
        "rank": c.rank,
        "frobenius": matrix_to_json(c.frobenius.matrix),
    }
    if c.verschiebung is not None:
        out["verschiebung"] = matrix_to_json(c.verschiebung.matrix)
    return out


def crystal_from_json(obj: Mapping) -> FCrystal:
    ctx = context_from_json(obj["ctx"])
    f = matrix_from_json(ctx, obj["frobenius"])
    rank = int(obj.get("rank", len(f)))
    if rank != len(f) or any(len(row) != rank for row in f):
        raise UsageError("crystal rank disagrees with the frobenius matrix shape")
    v = None
    if obj.get("verschiebung") is not None:
        v = SemilinearMap(ctx, matrix_from_json(ctx, obj["verschiebung"]), -1)
    return FCrystal(ctx, SemilinearMap(ctx, f, 1), v)


def polygon_to_json(np_: NewtonPolygon) -> List[List[int]]:
    return np_.to_json()


def fraction_to_json(x: Fraction) -> List[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def fraction_from_str(s: str) -> Fraction:
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def datum_from_json(obj: Mapping) -> PelDatum:
    try:
        return PelDatum(int(obj["p"]), int(obj["n"]), tuple(int(f) for f in obj["f"]), int(obj["g"]))
    except KeyError as exc:
        raise UsageError(f"datum object missing field {exc}") from exc


def datum_to_json(datum: PelDatum) -> dict:
    return {"p": datum.p, "n": datum.n, "f": list(datum.local_degrees), "g": datum.g}


def display_params_from_json(obj: Mapping) -> tuple:
    ctx = context_from_json(obj["ctx"])
    raw = obj.get("params", {})
    missing = [k for k in display_mod.PARAM_NAMES if k not in raw]
    if missing:
        raise UsageError(f"display params missing slots: {missing}")
    params = {k: elem_from_json(ctx, raw[k]) for k in display_mod.PARAM_NAMES}
    return ctx, params


def display_params_to_json(ctx: WittContext, params: Mapping[str, WittElem]) -> dict:
    return {
        "ctx": context_to_json(ctx),
        "params": {k: elem_to_json(v) for k, v in params.items()},
    }


def tpoly_to_json(tp: display_mod.TPoly) -> List[List[int]]:
    """Sparse t-polynomial as [exponent, c0, c1, ...] rows, ascending."""
    out = []
    for e in sorted(tp.coeffs):
        c = tp.coeffs[e]
        out.append([e] + list(c.coeffs))
    return out


def tpmatrix_to_json(m) -> List[List[List[List[int]]]]:
    return [[tpoly_to_json(x) for x in row] for row in m]


def connection_to_json(cm: ConnectionModule) -> dict:
    return {
        "p": cm.p,
        "N": cm.N,
        "rank": cm.rank,
        "matrix": [[list(e) for e in row] for row in cm.conn],
    }


def connection_from_json(obj: Mapping) -> ConnectionModule:
    try:
        return ConnectionModule(
            int(obj["p"]),
            int(obj["N"]),
            int(obj["rank"]),
            tuple(tuple(tuple(int(c) for c in e) for e in row) for row in obj["matrix"]),
        )
    except KeyError as exc:
        raise UsageError(f"connection object missing field {exc}") from exc
