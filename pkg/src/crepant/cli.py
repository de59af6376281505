"""Command-line front end.

Subcommands: models, ifun, pf-check, mirror-map, continue, umatrix, lg,
theta, report.  Output is deterministic JSON (sorted keys, fixed float
formatting); the exit code is nonzero when any requested check fails.

Configuration is read from an optional TOML file (--config); command-line
flags override config values.  Computed I-function series are cached as
JSON under content-hash filenames (atomic write-then-rename); the cache
directory comes from --cache-dir, the config file, or CREPANT_CACHE_DIR.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from fractions import Fraction

import mpmath

try:
    import tomllib
except ModuleNotFoundError:                      # Python 3.10
    import tomli as tomllib

_DEFAULTS = {
    "order": 8,
    "precision": 40,
    "cache_dir": None,
    "contour": {"nodes": 24, "halfwidth": None},
}

_MODELS = ("P112", "P1113", "F2", "F3")
_PAIR_ALIASES = {"p1113-f3": "P1113", "p112-f2": "P112",
                 "P1113": "P1113", "P112": "P112"}


def _num(x, digits=17):
    """Deterministic string form of one numeric value."""
    if isinstance(x, (mpmath.mpf, mpmath.mpc, complex, float)):
        return mpmath.nstr(mpmath.mpc(x), digits, strip_zeros=False)
    return x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (mpmath.mpf, mpmath.mpc, complex, float)):
        return _num(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    return str(obj)


def _emit(doc):
    json.dump(_jsonable(doc), sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _load_config(path):
    cfg = json.loads(json.dumps(_DEFAULTS))
    if path:
        with open(path, "rb") as fh:
            for k, v in tomllib.load(fh).items():
                if k in cfg and isinstance(cfg[k], dict):
                    cfg[k].update(v)
                else:
                    cfg[k] = v
    return cfg


def _cache_dir(args, cfg):
    return (getattr(args, "cache_dir", None) or cfg.get("cache_dir")
            or os.environ.get("CREPANT_CACHE_DIR"))


def _cached_series(model_id, order, cache_dir):
    """I-function series, cached as JSON keyed by a content hash."""
    from .models import build_toric_model, i_function
    from .series import series_to_json, series_from_json
    model = build_toric_model(model_id)
    if not cache_dir:
        return series_to_json(i_function(model, order))
    key = hashlib.sha256(
        f"ifun:{model_id}:{order}:exact".encode()).hexdigest()[:24]
    path = os.path.join(cache_dir, f"ifun-{key}.json")
    if os.path.exists(path):
        with open(path) as fh:
            doc = json.load(fh)
        series_from_json(doc, model.algebra,
                         prefactor=model.prefactor_elems())  # validate
        return doc
    doc = series_to_json(i_function(model, order))
    os.makedirs(cache_dir, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(doc, fh, sort_keys=True)
    os.replace(tmp, path)
    return doc


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_models(args, cfg):
    from .algebra import build_model_algebra, hard_lefschetz_check
    out = []
    for mid in _MODELS:
        alg = build_model_algebra(mid)
        entry = {"id": mid, "rank": len(alg.basis), "basis": list(alg.basis),
                 "degrees": [str(d) for d in alg.degrees],
                 "dim": alg.dim_c}
        if args.hard_lefschetz:
            omega = (alg.from_label("p") if mid.startswith("P") else
                     alg.from_label("p1") + alg.from_label("p2"))
            hl = hard_lefschetz_check(alg, omega)
            entry["hard_lefschetz"] = hl["holds"]
            entry["variance"] = hl["variance"]
        out.append(entry)
    _emit({"models": out})
    return 0


def _cmd_ifun(args, cfg):
    doc = _cached_series(args.model, args.order or cfg["order"],
                         _cache_dir(args, cfg))
    _emit(doc)
    return 0


def _cmd_pf_check(args, cfg):
    from .models import (build_toric_model, i_function, pf_operators,
                        pf_check, pf_residual_order)
    order = args.order or cfg["order"]
    model = build_toric_model(args.model)
    ser = i_function(model, order)
    ops = pf_operators(model)
    cut = pf_residual_order(model, order)
    residuals = [r.truncate(cut).is_zero() for r in pf_check(ops, ser)]
    ok = all(residuals)
    _emit({"model": args.model, "order": order,
           "exact_through_order": str(cut),
           "residual_zero": residuals, "pass": ok})
    return 0 if ok else 1


def _cmd_mirror_map(args, cfg):
    from .models import build_toric_model
    from .mirror import mirror_map, inverse_mirror_map
    order = args.order or cfg["order"]
    model = build_toric_model(args.model)
    fn = inverse_mirror_map if args.inverse else mirror_map
    comps = fn(model, order)
    out = []
    for comp in comps:
        out.append(sorted(
            ("*".join(f"{n}^{e}" for n, e in zip(comp.vars, mono) if e)
             or "1", str(Fraction(c)))
            for mono, c in comp.terms.items() if c))
    _emit({"model": args.model, "order": order,
           "direction": "inverse" if args.inverse else "forward",
           "components": out})
    return 0


def _cmd_continue(args, cfg):
    from .givental import check_continuation_identity
    pair = _PAIR_ALIASES[args.pair]
    rep = check_continuation_identity(
        pair, order=args.order or 6, dps=args.precision or cfg["precision"])
    ok = rep["max_difference"] < mpmath.mpf(10) ** -20
    _emit({"pair": pair, "max_difference": rep["max_difference"],
           "per_order": rep["per_order"], "pass": ok})
    return 0 if ok else 1


def _cmd_umatrix(args, cfg):
    from . import givental as gv
    pair = _PAIR_ALIASES[args.pair]
    u = gv.u_matrix(pair, source=args.source)
    checks = [c for c in (args.check or "").split(",") if c]
    report = {"pair": pair, "source": args.source,
              "matrix": [[str(u.mat[i, j]) for j in range(u.mat.cols)]
                         for i in range(u.mat.rows)]}
    ok = True
    for c in checks:
        if c == "symplectic":
            r = {"preserved": gv.check_symplectic(u)["preserved"]}
            r["pass"] = r["preserved"]
        elif c == "grading":
            r = {"preserved": gv.check_grading(u)["preserved"]}
            r["pass"] = r["preserved"]
        elif c == "opposite":
            raw = gv.check_opposite(u)
            r = {"preserved": raw["preserved"],
                 "witnesses": raw["witnesses"],
                 "pass": raw["preserved"] == (pair == "P112")}
        elif c == "monodromy":
            r = {"equivariant":
                 gv.check_monodromy_equivariance(u)["equivariant"]}
            r["pass"] = r["equivariant"]
        elif c == "continuation":
            rep = gv.check_continuation_identity(
                pair, dps=args.precision or cfg["precision"])
            r = {"pass": rep["max_difference"] < mpmath.mpf(10) ** -20,
                 "max_difference": rep["max_difference"]}
        else:
            raise SystemExit(f"unknown check {c!r}")
        report[c] = r
        ok = ok and r["pass"]
    report["pass"] = ok
    _emit(report)
    return 0 if ok else 1


def _cmd_lg(args, cfg):
    from . import lg as lgm
    dps = args.precision or cfg["precision"]
    base = tuple(float(x) for x in args.y.split(","))
    model = args.model.lower()
    out = {"model": model, "base": list(base)}
    ok = True
    if args.what in ("crit", "all"):
        pts = lgm.critical_points(lgm.build_lg_model(model), base, dps)
        out["critical_points"] = [
            {"coords": [_num(c) for c in p.coords], "value": _num(p.value),
             "hess_det": _num(p.hess_det)} for p in pts]
    if args.what in ("gram", "all"):
        g = lgm.gram_check(model, base, dps)
        out["gram_max_diff"] = g["max_diff"]
        ok = ok and g["max_diff"] < 1e-8
    if args.what in ("ring", "all"):
        ring = lgm.quantum_ring(model, base, dps, from_q=args.from_q)
        out["relations"] = ring["relations"]
        out["critical_values"] = [_num(v) for v in ring["critical_values"]]
        ok = ok and all(v < 1e-8 for v in ring["relations"].values())
    out["pass"] = ok
    _emit(out)
    return 0 if ok else 1


def _cmd_theta(args, cfg):
    from . import compare
    pair = _PAIR_ALIASES[args.pair]
    if not args.verify:
        th = (compare.theta_p1113() if pair == "P1113"
              else compare.theta_p112())
        _emit({"pair": pair,
               "matrix": [[str(th.mat[i, j]) for j in range(th.mat.cols)]
                          for i in range(th.mat.rows)]})
        return 0
    dps = args.precision or cfg["precision"]
    if pair == "P1113":
        rep = compare.verify_theta_conjugation_p1113(args.q, dps=dps)
        ok = (rep["symbolic_frame_match"] and rep["pairing_congruence"]
              and rep["conjugation_residual"] < 1e-8)
    else:
        rep = compare.verify_specialization_p112(args.q, dps=dps)
        ok = (rep["pairing_congruence"] and rep["u_matrix_limit_match"]
              and max(rep["frame_residual"],
                      rep["conjugation_residual"]) < 1e-8)
    rep["pass"] = ok
    _emit(rep)
    return 0 if ok else 1


def _cmd_report(args, cfg):
    """One-shot reproduction of the headline computations."""
    from . import givental as gv
    from . import compare, lg as lgm
    from .algebra import build_model_algebra, hard_lefschetz_check
    from .mirror import flat_compare_p1113
    order = args.order or cfg["order"]
    dps = args.precision or cfg["precision"]
    rep = {}
    ok = True

    for pair in ("P112", "P1113"):
        u = gv.u_matrix(pair, source="derived")
        entry = {
            "derived_equals_paper":
                _matrices_equal(gv.u_matrix(pair).mat, u.mat),
            "symplectic": gv.check_symplectic(u)["preserved"],
            "grading": gv.check_grading(u)["preserved"],
            "monodromy": gv.check_monodromy_equivariance(u)["equivariant"],
            "opposite_preserved": gv.check_opposite(u)["preserved"],
        }
        ok = ok and entry["derived_equals_paper"] and entry["symplectic"] \
            and entry["grading"] and entry["monodromy"] \
            and entry["opposite_preserved"] == (pair == "P112")
        rep[f"umatrix_{pair}"] = entry

    fc = flat_compare_p1113(order=max(order, 11))
    got = {k[0]: Fraction(v) for k, v in fc["g_of_t1"].terms.items() if v}
    want = {Fraction(2): Fraction(1, 2),
            Fraction(5): Fraction(-1, 9 * 120),
            Fraction(8): Fraction(1, 3 * 40320),
            Fraction(11): Fraction(-1093, 243 * 39916800)}
    fm_ok = all(got.get(k) == v for k, v in want.items()) \
        and all(k in want for k in got if k <= 11)
    rep["flat_match"] = {
        "coefficients": {str(k): str(v) for k, v in sorted(got.items())},
        "pass": fm_ok}
    ok = ok and fm_ok
    ab = compare.appendix_b_pipeline(dps=dps)
    rep["appendix_b"] = ab
    ok = ok and ab["gram_max_diff"] < 1e-8 and ab["frame_commutes"] \
        and ab["flat_coordinates_exact"] and ab["path_limit_frame"]

    th = compare.verify_specialization_p112(0.04, dps=dps)
    rep["theta_P112"] = th
    ok = ok and max(th["frame_residual"], th["conjugation_residual"]) < 1e-8

    th3 = compare.verify_theta_conjugation_p1113(0.01, dps=min(dps, 30))
    rep["theta_P1113"] = th3
    ok = ok and th3["symbolic_frame_match"] \
        and th3["conjugation_residual"] < 1e-8

    hl = {}
    for mid in _MODELS:
        alg = build_model_algebra(mid)
        omega = (alg.from_label("p") if mid.startswith("P") else
                 alg.from_label("p1") + alg.from_label("p2"))
        r = hard_lefschetz_check(alg, omega)
        hl[mid] = {"holds": r["holds"], "variance": r["variance"]}
    rep["hard_lefschetz"] = hl
    ok = ok and hl["P112"]["holds"] and hl["F2"]["holds"] \
        and not hl["P1113"]["holds"] \
        and hl["P112"]["variance"] == hl["F2"]["variance"] \
        and hl["P1113"]["variance"] == hl["F3"]["variance"]

    rep["order"] = order
    rep["precision"] = dps
    rep["pass"] = ok
    _emit(rep)
    return 0 if ok else 1


def _matrices_equal(a, b):
    import sympy as sp
    from .scalars import SymField
    field = SymField()
    return all(field.is_zero(sp.expand(a[i, j] - b[i, j]))
               for i in range(a.rows) for j in range(a.cols))


# ---------------------------------------------------------------------------

def _build_parser():
    p = argparse.ArgumentParser(
        prog="crepant",
        description="Mirror-symmetry computations for two crepant pairs")
    p.add_argument("--config", help="TOML configuration file")
    p.add_argument("--cache-dir", help="series cache directory")
    sub = p.add_subparsers(dest="cmd", required=True)

    sp_ = sub.add_parser("models", help="list the four models")
    sp_.add_argument("--hard-lefschetz", action="store_true")
    sp_.set_defaults(fn=_cmd_models)

    sp_ = sub.add_parser("ifun", help="I-function series as JSON")
    sp_.add_argument("--model", required=True, choices=_MODELS)
    sp_.add_argument("--order", type=int)
    sp_.set_defaults(fn=_cmd_ifun)

    sp_ = sub.add_parser("pf-check", help="Picard-Fuchs annihilation")
    sp_.add_argument("--model", required=True, choices=_MODELS)
    sp_.add_argument("--order", type=int)
    sp_.set_defaults(fn=_cmd_pf_check)

    sp_ = sub.add_parser("mirror-map", help="mirror map series")
    sp_.add_argument("--model", required=True, choices=("F2", "F3"))
    sp_.add_argument("--order", type=int)
    sp_.add_argument("--inverse", action="store_true")
    sp_.set_defaults(fn=_cmd_mirror_map)

    sp_ = sub.add_parser("continue", help="analytic-continuation identity")
    sp_.add_argument("--pair", required=True, choices=sorted(_PAIR_ALIASES))
    sp_.add_argument("--order", type=int)
    sp_.add_argument("--precision", type=int)
    sp_.set_defaults(fn=_cmd_continue)

    sp_ = sub.add_parser("umatrix", help="symplectic transformation checks")
    sp_.add_argument("--pair", required=True, choices=sorted(_PAIR_ALIASES))
    sp_.add_argument("--source", default="paper",
                     choices=("paper", "derived"))
    sp_.add_argument("--check", default="")
    sp_.add_argument("--precision", type=int)
    sp_.set_defaults(fn=_cmd_umatrix)

    sp_ = sub.add_parser("lg", help="Landau-Ginzburg critical data")
    sp_.add_argument("--model", required=True)
    sp_.add_argument("--y", required=True,
                     help="comma-separated base coordinates")
    sp_.add_argument("--what", default="all",
                     choices=("crit", "gram", "ring", "all"))
    sp_.add_argument("--from-q", action="store_true")
    sp_.add_argument("--precision", type=int)
    sp_.set_defaults(fn=_cmd_lg)

    sp_ = sub.add_parser("theta", help="comparison isomorphism checks")
    sp_.add_argument("--pair", required=True, choices=sorted(_PAIR_ALIASES))
    sp_.add_argument("--q", type=float, default=0.01)
    sp_.add_argument("--verify", action="store_true")
    sp_.add_argument("--precision", type=int)
    sp_.set_defaults(fn=_cmd_theta)

    sp_ = sub.add_parser("report", help="one-shot reproduction report")
    sp_.add_argument("--all", action="store_true")
    sp_.add_argument("--order", type=int)
    sp_.add_argument("--precision", type=int)
    sp_.set_defaults(fn=_cmd_report)
    return p


def main(argv=None):
    args = _build_parser().parse_args(argv)
    cfg = _load_config(args.config)
    return args.fn(args, cfg)


if __name__ == "__main__":
    sys.exit(main())
