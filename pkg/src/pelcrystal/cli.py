"""Command-line frontend with deterministic JSON output.

Subcommands cover every module: witt-check, newton-slopes, p-rank,
pel-decompose, frobenius-chain, polygons, mass-formula, display-deform,
degeneracy, classify-stability, hn-hodge, deuring, cartier.  Results go to
stdout as canonical one-line JSON (or an aligned table with --report table);
diagnostics go to stderr.  Exit codes: 0 success, 1 usage error, 2 domain
error (with the typed error name in the payload).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import List, Optional

from . import cartier as cartier_mod
from . import deuring as deuring_mod
from . import display as display_mod
from . import io_json
from . import pel as pel_mod
from . import semilinear as sl
from . import stability as stab_mod
from .errors import PelCrystalError, UsageError
from .pel import Embedding, PelDatum
from .witt import make_context


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj, report: str, table_renderer=None) -> None:
    if report == "table" and table_renderer is not None:
        sys.stdout.write(table_renderer(obj) + "\n")
    else:
        sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def _load_input(path: Optional[str], inline: Optional[str]):
    if (path is None) == (inline is None):
        raise UsageError("provide exactly one of --input FILE or --inline JSON")
    if inline is not None:
        return json.loads(inline)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _parse_f(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"bad local degree list {text!r}") from exc


def _datum(args) -> PelDatum:
    return PelDatum(args.p, args.n, tuple(_parse_f(args.f)), args.g)


def build_parser() -> _Parser:
    ap = _Parser(prog="pelcrystal", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(sp, datum=False, io=False):
        sp.add_argument("--report", choices=("json", "table"), default="json")
        sp.add_argument("--seed", type=int, default=0)
        if datum:
            sp.add_argument("--p", type=int, required=True)
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--f", type=str, required=True, help="local degrees, e.g. 2,1")
            sp.add_argument("--g", type=int, required=True)
        if io:
            sp.add_argument("--input", type=str)
            sp.add_argument("--inline", type=str)

    sp = sub.add_parser("witt-check", help="randomized Witt-ring property sweep")
    common(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--trials", type=int, default=50)

    sp = sub.add_parser("newton-slopes", help="Newton polygon of a crystal file")
    common(sp, io=True)
    sp.add_argument("--slope-bound", type=str, default="1")

    sp = sub.add_parser("p-rank", help="p-rank of a crystal file")
    common(sp, io=True)

    sp = sub.add_parser("pel-decompose", help="summand ranks and degrees")
    common(sp, datum=True)

    sp = sub.add_parser("frobenius-chain", help="tagged Frobenius edges")
    common(sp, datum=True)

    sp = sub.add_parser("polygons", help="generic and supersingular global polygons")
    common(sp, datum=True)

    sp = sub.add_parser("mass-formula", help="Newton-jumping point count")
    common(sp)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--g", type=int, required=True)

    sp = sub.add_parser("display-deform", help="deform a display and iterate Hasse-Witt")
    common(sp, io=True)
    sp.add_argument("--s", type=int, default=2)
    sp.add_argument("--order", type=int, default=None, help="t-truncation order")

    sp = sub.add_parser("degeneracy", help="local equation of the jumping locus")
    common(sp, io=True)
    sp.add_argument("--source", type=int, default=0)
    sp.add_argument("--target", type=int, default=3)
    sp.add_argument("--s", type=int, default=2)
    sp.add_argument("--order", type=int, default=None)

    sp = sub.add_parser("classify-stability", help="stability ledger of all summands")
    common(sp, datum=True)

    sp = sub.add_parser("hn-hodge", help="HN vs Hodge profiles for a chain summand")
    common(sp, datum=True)
    sp.add_argument("--i", type=int, required=True, help="chain position, 2 <= i <= d")
    sp.add_argument("--star", action="store_true")
    sp.add_argument("--bar", action="store_true")

    sp = sub.add_parser("deuring", help="supersingular count, mass, squarefree flag")
    common(sp)
    sp.add_argument("--p", type=int, required=True)

    sp = sub.add_parser("cartier", help="p-curvature and descent round-trip")
    common(sp, io=True)
    return ap


# -- subcommand bodies ---------------------------------------------------------


def _run_witt_check(args) -> dict:
    ctx = make_context(args.p, args.m, args.n)
    rng = random.Random(args.seed)
    checks = {"ring_axioms": 0, "sigma_order": 0, "teichmuller_mult": 0, "valuation_add": 0}
    for _ in range(args.trials):
        x, y, z = (ctx.random_elem(rng) for _ in range(3))
        assert (x + y) * z == x * z + y * z
        assert x * y == y * x and (x + y) + z == x + (y + z)
        checks["ring_axioms"] += 1
        fx = x
        for _ in range(ctx.m):
            fx = fx.frobenius()
        assert fx == x
        assert (x * y).frobenius() == x.frobenius() * y.frobenius()
        checks["sigma_order"] += 1
        a = [rng.randrange(args.p) for _ in range(args.m)]
        b = [rng.randrange(args.p) for _ in range(args.m)]
        ta, tb = ctx.teichmuller(a), ctx.teichmuller(b)
        prod_res = (ta * tb).residue()
        assert ctx.teichmuller(prod_res.coeffs) == ta * tb
        checks["teichmuller_mult"] += 1
        vx, vy = x.valuation(), y.valuation()
        if vx is not None and vy is not None and vx + vy < ctx.n:
            assert (x * y).valuation() == vx + vy
            checks["valuation_add"] += 1
    return {"ok": True, "p": args.p, "m": args.m, "n": args.n, "checks": checks}


def _run_newton_slopes(args) -> dict:
    c = io_json.crystal_from_json(_load_input(args.input, args.inline))
    bound = io_json.fraction_from_str(args.slope_bound)
    np_ = sl.newton_slopes(c, bound)
    return {"slopes": np_.to_json(), "height": np_.height(), "p_rank": sl.p_rank(c)}


def _run_p_rank(args) -> dict:
    c = io_json.crystal_from_json(_load_input(args.input, args.inline))
    return {"p_rank": sl.p_rank(c), "rank": c.rank}


def _run_pel_decompose(args) -> dict:
    datum = _datum(args)
    table = [s.to_json() for s in pel_mod.summand_table(datum)]
    total = sum(s["rank_10"] + s["rank_01"] for s in table)
    return {"datum": io_json.datum_to_json(datum), "summands": table, "total_rank": total}


def _run_frobenius_chain(args) -> dict:
    datum = _datum(args)
    return {
        "datum": io_json.datum_to_json(datum),
        "edges": [e.to_json() for e in pel_mod.frobenius_chain(datum)],
    }


def _run_polygons(args) -> dict:
    datum = _datum(args)
    gen = pel_mod.assemble_global_polygon(datum, False)
    ss = pel_mod.assemble_global_polygon(datum, True)
    return {
        "datum": io_json.datum_to_json(datum),
        "generic": gen.to_json(),
        "supersingular": ss.to_json(),
        "height": gen.height(),
        "rise": io_json.fraction_to_json(gen.rise()),
        "self_dual": gen.is_self_dual() and ss.is_self_dual(),
        "supersingular_dominates": ss.dominates(gen),
    }


def _run_mass_formula(args) -> dict:
    return pel_mod.mass_formula(args.p, args.d, args.g).to_json()


def _run_display_deform(args) -> dict:
    ctx, params = io_json.display_params_from_json(_load_input(args.input, args.inline))
    disp = display_mod.pel_display_template(ctx, params)
    dd = display_mod.deform(disp, args.order)
    hw = display_mod.hasse_witt_iterate(dd, args.s)
    return {
        "ctx": io_json.context_to_json(ctx.residue_context()),
        "s": args.s,
        "truncation": dd.N,
        "hasse_witt": io_json.tpmatrix_to_json(hw),
    }


def _run_degeneracy(args) -> dict:
    ctx, params = io_json.display_params_from_json(_load_input(args.input, args.inline))
    disp = display_mod.pel_display_template(ctx, params)
    dd = display_mod.deform(disp, args.order)
    eq = display_mod.degeneracy_equation(dd, args.source, args.target, args.s)
    out = {
        "source": args.source,
        "target": args.target,
        "s": args.s,
        "equation": io_json.tpoly_to_json(eq),
    }
    order = eq.vanishing_order()
    out["multiplicity_at_zero"] = order if order is not None and order > 0 else 0
    out["vanishes_at_zero"] = order is None or order > 0
    return out


def _run_classify_stability(args) -> dict:
    datum = _datum(args)
    return {
        "datum": io_json.datum_to_json(datum),
        "verdicts": [v.to_json() for v in stab_mod.classify_summands(datum)],
    }


def _run_hn_hodge(args) -> dict:
    datum = _datum(args)
    pos = (args.i - 1) + (datum.d if args.star else 0)
    emb = Embedding(1, pos, args.bar)
    cmp_ = stab_mod.hn_equals_hodge(datum, emb)
    chain = pel_mod.pullback_chain(datum, emb)
    return {
        "datum": io_json.datum_to_json(datum),
        "embedding": emb.to_json(),
        "hn_profile": cmp_.hn.to_json(),
        "hodge": list(cmp_.hodge),
        "equal": cmp_.equal,
        "steps": chain.steps,
        "terminal": chain.terminal.to_json(),
    }


def _run_deuring(args) -> dict:
    count, js = deuring_mod.count_supersingular(args.p)
    mass = deuring_mod.eichler_mass(args.p)
    return {
        "p": args.p,
        "count": count,
        "j_list": [list(j) for j in js],
        "mass": f"{int(mass * 24)}/24",
        "mass_frac": io_json.fraction_to_json(mass),
        "squarefree": deuring_mod.squarefree_check(args.p),
    }


def _run_cartier(args) -> dict:
    cm = io_json.connection_from_json(_load_input(args.input, args.inline))
    psi = cartier_mod.p_curvature(cm)
    flat = all(not any(e) for row in psi for e in row)
    out = {
        "p": cm.p,
        "N": cm.N,
        "rank": cm.rank,
        "p_curvature": [[list(e) for e in row] for row in psi],
        "p_curvature_zero": flat,
    }
    if flat:
        out["descent_roundtrip"] = cartier_mod.descent_roundtrip(cm)
    return out


_RUNNERS = {
    "witt-check": _run_witt_check,
    "newton-slopes": _run_newton_slopes,
    "p-rank": _run_p_rank,
    "pel-decompose": _run_pel_decompose,
    "frobenius-chain": _run_frobenius_chain,
    "polygons": _run_polygons,
    "mass-formula": _run_mass_formula,
    "display-deform": _run_display_deform,
    "degeneracy": _run_degeneracy,
    "classify-stability": _run_classify_stability,
    "hn-hodge": _run_hn_hodge,
    "deuring": _run_deuring,
    "cartier": _run_cartier,
}


def _render_table(obj) -> str:
    lines = []

    def walk(prefix, val):
        if isinstance(val, dict):
            for k in sorted(val):
                walk(f"{prefix}{k}.", val[k])
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            for idx, item in enumerate(val):
                walk(f"{prefix}{idx}.", item)
        else:
            lines.append((prefix.rstrip("."), json.dumps(val)))

    walk("", obj)
    width = max((len(k) for k, _ in lines), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in lines)


def run(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        result = _RUNNERS[args.cmd](args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    except PelCrystalError as exc:
        payload = {"error": exc.name, "message": str(exc)}
        sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
        return 2
    _emit(result, args.report, _render_table)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
