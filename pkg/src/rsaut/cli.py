"""Command-line driver.

    rsaut classify --genus 21 --order-expr 3g
    rsaut signatures --triple-rhs "1/3+2/45"
    rsaut jacobian --genus 15
    rsaut curve verify --tag C24 --g 5
    rsaut cache --stats

Reports are JSON by default (``--format csv`` or ``md`` give projections of
the rows). Exit codes: 0 success, 1 a curve check failed, 2 unsupported or
inapplicable input, 3 IO error, 4 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import re
import sys
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .actions import DEFAULT_NODE_CAP, SearchBoundExceeded, classify_genus_order
from .catalog import (CATALOG_VERSION, CatalogEntry, GroupRecipe, InvalidParams, ParseError,
                      UnsupportedOrder, groups_of_order, load_group_dir, named)
from .curves import (CurveMap, c24_maps, c24_quotient_cover, closure, gimpar_exponents,
                     gimpar_maps, is_automorphism, named_curve, superelliptic_genus,
                     verify_cover, ReducibleCover)
from .curves import InvalidParams as CurveParams
from .cyclotomic import omega
from .functions import FactoredRF, Mobius
from .groups import DEFAULT_CLOSURE_CAP, ClosureBoundExceeded, are_isomorphic
from .jacobian import InapplicableResidue, UnsupportedFamily, decomposition, expected_dimensions
from .signatures import divisors, enumerate_signatures, parse_rhs, rh_genus, solve_triple_period

log = logging.getLogger("rsaut")

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_IO, EXIT_CAP = 0, 1, 2, 3, 4


# -- catalog cache --------------------------------------------------------------


def cache_dir() -> Path:
    env = os.environ.get("RS_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "rsaut"


def cache_path(order: int, directory: Path | None = None) -> Path:
    return (directory or cache_dir()) / f"order_{order}_v{CATALOG_VERSION}.json"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def _read_cache(path: Path, order: int) -> list[CatalogEntry] | None:
    data = json.loads(path.read_text())
    if data.get("order") != order or data.get("catalog_version") != CATALOG_VERSION:
        raise ValueError("cache header mismatch")
    entries = []
    for i, item in enumerate(data["entries"]):
        recipe = GroupRecipe.from_json(item["recipe"])
        G = recipe.realize()
        if G.order != order or item["iso_class_id"] != i:
            raise ValueError("cache entry does not match its order")
        entries.append(CatalogEntry(recipe, G, i))
    return entries


def cached_groups_of_order(order: int, *, directory: Path | None = None,
                           use_cache: bool = True) -> list[CatalogEntry]:
    """:func:`groups_of_order` behind a JSON cache of recipes.

    A cache file that fails to load is reported and rebuilt, never trusted.
    """
    path = cache_path(order, directory)
    if use_cache and path.exists():
        try:
            return _read_cache(path, order)
        except Exception as exc:  # any defect means regenerate
            log.warning("ignoring corrupted cache file %s (%s); regenerating", path, exc)
    entries = groups_of_order(order)
    if use_cache:
        payload = {"order": order, "catalog_version": CATALOG_VERSION,
                   "entries": [{"recipe": e.recipe.to_json(), "iso_class_id": e.iso_class_id}
                               for e in entries]}
        _atomic_write(path, json.dumps(payload, sort_keys=True, indent=1) + "\n")
    return entries


# -- reports --------------------------------------------------------------------


def _provenance(args) -> dict:
    return {"engine_version": __version__, "catalog_version": CATALOG_VERSION,
            "node_cap": args.node_cap, "closure_cap": args.closure_cap}


def _command_echo(args) -> dict:
    skip = {"func", "format", "node_cap", "closure_cap", "no_cache"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    rows = report["rows"]
    cols: list[str] = []
    for r in rows:
        cols += [k for k in r if k not in cols]

    def cell(v):
        return json.dumps(v) if isinstance(v, (list, dict)) or v is None else str(v)

    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([cell(r.get(c)) for c in cols])
        return buf.getvalue()
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    lines += ["| " + " | ".join(cell(r.get(c)) for c in cols) + " |" for r in rows]
    summary = report.get("summary")
    if summary:
        lines += [""] + [f"- {k}: {cell(v)}" for k, v in sorted(summary.items())]
    return "\n".join(lines) + "\n"


# -- commands -------------------------------------------------------------------

_ORDER_EXPR = re.compile(r"(\d*)g([+-]\d+)?")


def eval_order_expr(expr: str, g: int) -> int:
    """``3g``, ``3g+3``, ``4g``, ``6g`` and similar linear expressions in g."""
    m = _ORDER_EXPR.fullmatch(expr.replace(" ", ""))
    if not m:
        raise ValueError(f"bad order expression {expr!r}")
    a = int(m.group(1)) if m.group(1) else 1
    b = int(m.group(2)) if m.group(2) else 0
    return a * g + b


def cmd_classify(args) -> tuple[dict, int]:
    if (args.order is None) == (args.order_expr is None):
        raise ValueError("give exactly one of --order and --order-expr")
    order = args.order if args.order is not None else eval_order_expr(args.order_expr, args.genus)
    if args.extra_groups:
        extra = load_group_dir(args.extra_groups)
        entries = groups_of_order(order, extra=extra)
    else:
        entries = cached_groups_of_order(order, use_cache=not args.no_cache)
    rep = classify_genus_order(args.genus, order, entries, gamma_max=args.gamma_max,
                               node_cap=args.node_cap)
    rows = [{"group": r.group, "iso_class_id": r.iso_class_id, "signature": str(r.signature),
             "gamma": r.signature.gamma, "periods": list(r.signature.periods),
             "classes": r.class_count, "raw_vectors": r.raw_count,
             "family_dimension": r.family_dimension,
             "hypermap_type": list(r.hypermap_type) if r.hypermap_type else None}
            for r in rep.rows]
    summary = {"genus": args.genus, "order": order, "groups_searched": len(entries),
               "rows": len(rows)}
    return {"rows": rows, "summary": summary}, EXIT_OK


def cmd_signatures(args) -> tuple[dict, int]:
    if args.triple_rhs is not None:
        rhs = parse_rhs(args.triple_rhs)
        if args.all_periods:
            allowed, bound = None, None
        else:
            bound = args.divisors if args.divisors else rhs.denominator
            allowed = divisors(bound)
        triples = solve_triple_period(rhs, allowed)
        rows = [{"periods": list(t)} for t in triples]
        summary = {"rhs": str(rhs), "periods_divide": bound, "count": len(rows)}
        return {"rows": rows, "summary": summary}, EXIT_OK
    if args.order is None or args.genus is None:
        raise ValueError("give --order and --genus, or --triple-rhs")
    sigs = enumerate_signatures(args.order, args.genus, args.gamma_max)
    rows = [{"signature": str(s), "gamma": s.gamma, "periods": list(s.periods),
             "genus": rh_genus(args.order, s), "family_dimension": s.family_dimension}
            for s in sigs]
    return {"rows": rows, "summary": {"order": args.order, "genus": args.genus,
                                      "count": len(rows)}}, EXIT_OK


def cmd_jacobian(args) -> tuple[dict, int]:
    table = decomposition(args.genus)
    rows = [{"factor": r.name, "dim": r.factor_dim, "multiplicity": r.multiplicity,
             "field_degree": r.orbit.field_degree, "orbit": list(r.orbit.members)}
            for r in table.rows]
    expected = sorted(expected_dimensions(args.genus))
    got = sorted((r.name, r.factor_dim, r.multiplicity) for r in table.rows)
    summary = {"genus": table.genus, "group": table.group, "signature": str(table.signature),
               "divisor_set": {"tag": table.divisor_tag, "values": list(table.divisor_set)},
               "total": table.total, "checksum_ok": table.total == table.genus,
               "matches_closed_form": got == expected}
    return {"rows": rows, "summary": summary}, EXIT_OK


def _curve_params(args) -> dict:
    params: dict[str, Any] = {}
    for item in args.params or []:
        key, sep, val = item.partition("=")
        if not sep:
            raise CurveParams(f"parameter {item!r} is not key=value")
        params[key] = Fraction(val) if key == "eta" else int(val)
    if args.g is not None:
        params["g"] = args.g
    if args.p is not None:
        params["p"] = args.p
    return params


def cmd_curve(args) -> tuple[dict, int]:
    params = _curve_params(args)
    curve = named_curve(args.tag, **dict(params))
    rows: list[dict] = []

    def check(name, value, expected=None):
        ok = value if expected is None else value == expected
        rows.append({"check": name, "value": value, "expected": expected, "ok": bool(ok)})

    def info(name, value):
        rows.append({"check": name, "value": value, "expected": None, "ok": True})

    genus = superelliptic_genus(curve)
    info("genus", genus)
    tag = args.tag
    if tag == "C24":
        g = params["g"]
        check("genus equals g", genus, g)
        maps = c24_maps(g)
        for k, m in maps.items():
            check(f"automorphism {k}", is_automorphism(curve, m))
        _, G = closure(curve, list(maps.values()), args.closure_cap)
        check("closure order {t,r,s}", G.order, 6 * g)
        if g % 2:
            check("closure isomorphic to Z3 x D_g", are_isomorphic(G, named("z3_x_dihedral", g)))
        check("cover onto w^3 = z^2 - z", verify_cover(curve, named_curve("E"), c24_quotient_cover(g)))
    elif tag == "gimpar":
        p = params["p"]
        e, s, ell = gimpar_exponents(p)
        info("exponents (e, s, l)", [e, s, ell])
        maps = gimpar_maps(p)
        for k, m in maps.items():
            check(f"automorphism {k}", is_automorphism(curve, m))
        _, G = closure(curve, list(maps.values()), args.closure_cap)
        check("closure order {a,b}", G.order, 12 * p)
        check("closure isomorphic to Z_p :2 Z12", are_isomorphic(G, named("zp_rtimes_z12", p)))
    elif tag in ("C1", "C2", "C3", "C4"):
        check("genus equals g", genus, params["g"])
    if curve.n == 3 and curve.is_split:
        t = CurveMap(Mobius.identity(), FactoredRF(omega(3)), 1)
        check("automorphism (x, w3 y)", is_automorphism(curve, t))
    ok = all(r["ok"] for r in rows)
    summary = {"curve": str(curve), "label": curve.label, "genus": genus, "all_ok": ok}
    return {"rows": rows, "summary": summary}, EXIT_OK if ok else EXIT_FAILED


def cmd_cache(args) -> tuple[dict, int]:
    d = cache_dir()
    files = sorted(d.glob("order_*_v*.json")) if d.is_dir() else []
    if args.clear:
        for f in files:
            f.unlink()
        files = []
    rows = [{"file": f.name, "bytes": f.stat().st_size} for f in files]
    return {"rows": rows, "summary": {"cache_dir": str(d), "files": len(rows)}}, EXIT_OK


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "md"), default="json")
    common.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
    common.add_argument("--closure-cap", type=int, default=DEFAULT_CLOSURE_CAP)

    ap = argparse.ArgumentParser(prog="rsaut", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify actions of a given order")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--order", type=int)
    p.add_argument("--order-expr")
    p.add_argument("--gamma-max", type=int, default=2)
    p.add_argument("--extra-groups", type=Path)
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("signatures", parents=[common], help="enumerate signatures or solve triples")
    p.add_argument("--order", type=int)
    p.add_argument("--genus", type=int)
    p.add_argument("--gamma-max", type=int, default=2)
    p.add_argument("--triple-rhs")
    p.add_argument("--divisors", type=int, help="periods must divide this (default: the rhs denominator)")
    p.add_argument("--all-periods", action="store_true", help="allow every period >= 2")
    p.set_defaults(func=cmd_signatures)

    p = sub.add_parser("jacobian", parents=[common], help="Jacobian decomposition dimensions")
    p.add_argument("--genus", type=int, required=True)
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("curve", help="curve checks")
    csub = p.add_subparsers(dest="action", required=True)
    v = csub.add_parser("verify", parents=[common])
    v.add_argument("--tag", required=True)
    v.add_argument("--g", type=int)
    v.add_argument("--p", type=int)
    v.add_argument("--params", nargs="*", help="extra key=value parameters such as eta=2")
    v.set_defaults(func=cmd_curve)

    p = sub.add_parser("cache", parents=[common], help="inspect or clear the catalog cache")
    p.add_argument("--clear", action="store_true")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_cache)
    return ap


_INPUT_ERRORS = (UnsupportedOrder, InapplicableResidue, InvalidParams, CurveParams, UnsupportedFamily,
                 ReducibleCover, ParseError, ValueError, KeyError)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.node_cap <= 0 or args.closure_cap <= 0:
        print("error: caps must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        body, code = args.func(args)
    except (SearchBoundExceeded, ClosureBoundExceeded) as exc:
        print(f"error: resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = {"command": args.command if args.command != "curve" else "curve verify",
              "arguments": _jsonable(_command_echo(args)), **body,
              "provenance": _provenance(args)}
    sys.stdout.write(render(report, args.format))
    return code


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (Path, Fraction)):
        return str(x)
    return x


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
