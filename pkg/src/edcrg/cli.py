"""Command-line entry point ``edcrg``.

Exit codes: 0 success, 1 domain error (bad input file, value outside a
formula's range, size limits), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from . import bounds as B
from .constructions import ConstructionError, parse_construction, srg_parameters
from .crg import as_probability, f_line, f_value, parse_crg, serialize_crg
from .envelope import assemble_envelope, bound_at, envelope_csv, envelope_json, upper_curves
from .forbid import find_embedding, forbids_k2t, forbids_k2t_general, gray_criterion_applies
from .graph import parse_graph
from .gsolve import EXACT_LIMIT, g_exact, g_iterative, gray_degree_report
from .oracle import brute_edit_distance, grid_g, sample_gnp_distance, scan_small_pcores
from .summary import summary_drift
from .verify import run_suite


class DomainError(Exception):
    pass


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):
        return v.item()
    return v


def _human(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_human(x) for x in v) + "]"
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def emit(args, data: dict) -> str:
    fmt = args.format or "human"
    if fmt == "json":
        return json.dumps(_jsonable(data), indent=1)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in data.items():
            w.writerow([k, _human(v)])
        return buf.getvalue().rstrip("\n")
    return "\n".join(f"{k}: {_human(v)}" for k, v in data.items())


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise SystemExit(_usage(args, f"missing --{missing[0].replace('_', '-')}"))


def _usage(args, msg):
    args._parser.print_usage(sys.stderr)
    print(f"edcrg: error: {msg}", file=sys.stderr)
    return 2


def _prob(s):
    return as_probability(s)


def _load_crg(args):
    _need(args, "crg")
    return parse_crg(_read(args.crg))


# ---------------------------------------------------------------- commands


def cmd_crg_eval(args):
    _need(args, "p")
    K = _load_crg(args)
    p = _prob(args.p)
    out = {"k": K.k, "p": p, "f": f_value(K, p)}
    c0, c1 = f_line(K)
    out["f_line"] = B.line_formula(c0, c1)
    if isinstance(p, Fraction) and K.k <= EXACT_LIMIT:
        s = g_exact(K, p)
        out.update(g=s.g, g_method="exact", is_pcore=s.is_pcore)
    else:
        if args.exact:
            raise DomainError("exact g needs a rational p and k <= %d" % EXACT_LIMIT)
        s = g_iterative(K, p, seed=args.seed)
        out.update(g=s.g, g_method="iterative", converged=s.converged)
    out["g_le_f"] = s.g <= out["f"] + (1e-12 if s.approximate else 0)
    return out


def cmd_crg_pcore(args):
    _need(args, "p")
    K = _load_crg(args)
    p = _prob(args.p)
    if not isinstance(p, Fraction):
        raise DomainError("p-core verdicts need a rational p")
    s = g_exact(K, p)
    out = {"k": K.k, "p": p, "g": s.g, "x": list(s.x), "support": list(s.support),
           "is_pcore": s.is_pcore, "minimizers": len(s.all_minimizers), "kkt": s.kkt_holds(K)}
    r = gray_degree_report(K, s)
    out.update(gray_degree=list(r.d_gray), gray_degree_identity=r.dg_holds, weight_cap=r.weight_cap,
               weight_cap_holds=r.xbound_holds)
    if r.notes:
        out["notes"] = r.notes
    return out


def cmd_crg_forbid(args):
    K = _load_crg(args)
    if args.graph:
        H = parse_graph(_read(args.graph))
        phi = find_embedding(H, K)
        return {"embeds": phi is not None, "map": [phi[v] for v in range(H.n)] if phi else None}
    _need(args, "t")
    out = {"t": args.t, "forbids": forbids_k2t(K, args.t)}
    if gray_criterion_applies(K) and args.t >= 3:
        out["route"] = "gray-graph criterion"
        out["general_search_agrees"] = forbids_k2t_general(K, args.t) == out["forbids"]
    else:
        out["route"] = "embedding search"
    return out


def cmd_gen(args):
    name = args.name or args.construction
    if name is None:
        raise SystemExit(_usage(args, "gen needs a construction name"))
    spec = parse_construction(name, args.params)
    K = spec.build()
    text = serialize_crg(K)
    c0, c1 = f_line(K)
    out = {"construction": spec.name, "k": K.k, "f_line": B.line_formula(c0, c1)}
    prm = spec.srg_params()
    if prm is not None:
        got = srg_parameters(K.gray_graph())
        out["srg_params"] = str(got)
    if args.out:
        Path(args.out).write_text(text)
        out["written"] = args.out
        return out
    if (args.format or "human") == "human":
        return text.rstrip("\n")
    out["crg"] = text
    return out


def cmd_bounds_at(args):
    _need(args, "t", "p")
    r = bound_at(args.t, _prob(args.p), catalog=args.catalog)
    return r.as_dict() if args.format == "json" else {
        "t": r.t, "p": r.p, "upper": r.upper, "lower": r.lower, "exact": r.exact,
        "active_upper": r.active_upper, "lower_source": r.lower_source}


def cmd_bounds_envelope(args):
    _need(args, "t")
    env = assemble_envelope(args.t, args.samples or 2001, catalog=args.catalog)
    lo = float(_prob(args.from_)) if args.from_ is not None else 0.0
    hi = float(_prob(args.to)) if args.to is not None else 1.0
    keep = (env.p >= lo - 1e-15) & (env.p <= hi + 1e-15)
    fmt = args.format or "csv"
    if fmt == "json":
        data = envelope_json(env)
        data["points"] = [row for row, k in zip(data["points"], keep) if k]
        text = json.dumps(data, indent=1)
    elif fmt == "csv":
        lines = envelope_csv(env).splitlines()
        text = "\n".join([lines[0]] + [ln for ln, k in zip(lines[1:], keep) if k])
    else:
        x = env.extreme
        text = "\n".join([f"t: {args.t}", f"points: {int(keep.sum())}",
                          f"exact fraction: {env.exact[keep].mean():.4f}",
                          f"p_star: [{x.lo}, {x.hi}]", f"d_star: {x.d_star}", f"extreme exact: {x.exact}",
                          f"d_lower: {x.d_lower}"])
    return text


def cmd_bounds_qlist(args):
    _need(args, "t")
    qs = B.furedi_feasible_q(args.t)
    out = {"t": args.t, "q": qs, "threshold": B.furedi_q_threshold(args.t)}
    for q in qs:
        iv = B.furedi_envelope_improvement(q, args.t)
        out[f"q={q} improves envelope on"] = list(iv) if iv else "nowhere"
    return out


def cmd_bounds_tangency(args):
    _need(args, "t")
    if args.d is not None:
        p, val, ok = B.tangency_check(args.t, args.d)
        k = B.srg_equality_k(args.t, args.d)
        return {"t": args.t, "d": args.d, "k": k, "integral": k.denominator == 1, "p": p, "line_value": val,
                "equals_lower_bound": ok}
    rows = B.integral_tangencies(args.t, args.d_max)
    if args.format == "json":
        return {"t": args.t, "tangencies": [{k: (list(v) if isinstance(v, tuple) else v) for k, v in r.items()}
                                             for r in rows]}
    return "\n".join(f"d={r['d']} params={r['params']} p={r['p']} value={r['value']}" for r in rows) or "none"


def cmd_bounds_catalog(args):
    _need(args, "t")
    if 5 <= args.t <= 8:
        rep = summary_drift(args.t)
        rows = [{"formula": e.formula, "source": e.tag, "checked_by": e.route, "ok": e.ok, "detail": e.detail}
                for e in rep.entries]
        if args.format == "json":
            return {"t": args.t, "entries": rows, "mismatches": len(rep.mismatches),
                    "never_strictly_active": rep.dominated}
        return "\n".join(f"{r['formula']:<14} {r['source']:<18} {'ok' if r['ok'] else 'MISMATCH'}  {r['detail']}"
                         for r in rows)
    curves = upper_curves(args.t, catalog=args.catalog)
    if args.format == "json":
        return {"t": args.t, "curves": [{"name": c.name, "provenance": c.provenance} for c in curves]}
    return "\n".join(f"{c.name:<40} {c.provenance}" for c in curves)


def cmd_oracle_dist(args):
    _need(args, "graph", "t")
    G = parse_graph(_read(args.graph))
    r = brute_edit_distance(G, args.t, args.budget)
    out = {"n": G.n, "t": args.t, "distance": r.distance, "exceeded_budget": r.exceeded,
           "edits": [list(e) for e in r.edits]}
    if r.exceeded:
        out["distance"] = f">{args.budget}"
    return out


def cmd_oracle_gnp(args):
    _need(args, "n", "p", "t")
    res = sample_gnp_distance(args.n, _prob(args.p), args.t, args.samples or 10, args.seed)
    rows = [{"trial": i, "edges": s.graph.num_edges, "density": s.density, "distance": s.distance,
             "normalized": s.normalized} for i, s in enumerate(res)]
    if (args.format or "csv") == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else ["trial"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    if args.format == "json":
        return {"n": args.n, "p": _prob(args.p), "t": args.t, "seed": args.seed, "trials": rows}
    return "\n".join(f"trial {r['trial']}: distance {r['distance']} ({r['normalized']:.4f})" for r in rows)


def cmd_oracle_g(args):
    _need(args, "p")
    K = _load_crg(args)
    p = _prob(args.p)
    res = args.samples or 100
    out = {"k": K.k, "p": p, "resolution": res, "grid_g": grid_g(K, p, res)}
    if isinstance(p, Fraction) and K.k <= EXACT_LIMIT:
        out["g_exact"] = g_exact(K, p).g
    return out


def cmd_oracle_scan(args):
    _need(args, "p", "t")
    r = scan_small_pcores(args.max_k, _prob(args.p), args.t)
    return {"p": r.p, "t": r.t, "max_k": r.max_k, "classes": r.classes, "forbidding": r.forbidding,
            "pcores": r.pcores, "min_g": r.min_g, "lower_bound": r.lower_bound,
            "violations": len(r.violations), "violation_list": r.violations}


def cmd_verify(args):
    results = run_suite(args.suite)
    if args.format == "json":
        return {"suite": args.suite, "passed": all(r.passed for r in results),
                "checks": [r.__dict__ for r in results]}
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.key:<9} {r.seconds:6.2f}s  {r.about}: {r.detail}" for r in results]
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} passed")
    args._failed = not all(r.passed for r in results)
    return "\n".join(lines)


# ---------------------------------------------------------------- parser


def _common(p):
    p.add_argument("--t", type=int)
    p.add_argument("--p")
    p.add_argument("--crg")
    p.add_argument("--graph")
    p.add_argument("--format", choices=["csv", "json", "human"])
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true", help="insist on rational results")
    p.add_argument("--threads", type=int, default=1, help="worker cap (computations run in one thread)")
    p.add_argument("--catalog", action="store_true", help="also use SRG chart rows without a generator")


@lru_cache(maxsize=None)
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="edcrg", description="Edit distance bounds for graphs with no induced K_{2,t}.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    crg = sub.add_parser("crg", help="evaluate a CRG file").add_subparsers(dest="sub", required=True)
    for name, fn in (("eval", cmd_crg_eval), ("pcore", cmd_crg_pcore), ("forbid", cmd_crg_forbid)):
        p = crg.add_parser(name)
        _common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("gen", help="build a named construction")
    p.add_argument("name", nargs="?")
    p.add_argument("--construction")
    p.add_argument("--params")
    _common(p)
    p.set_defaults(fn=cmd_gen)

    bnd = sub.add_parser("bounds", help="closed-form bounds").add_subparsers(dest="sub", required=True)
    for name, fn in (("at", cmd_bounds_at), ("envelope", cmd_bounds_envelope), ("qlist", cmd_bounds_qlist),
                     ("tangency", cmd_bounds_tangency), ("catalog", cmd_bounds_catalog)):
        p = bnd.add_parser(name)
        _common(p)
        p.add_argument("--from", dest="from_")
        p.add_argument("--to")
        p.add_argument("--samples", type=int)
        p.add_argument("--d", type=int)
        p.add_argument("--d-max", type=int, default=60)
        p.set_defaults(fn=fn)

    orc = sub.add_parser("oracle", help="brute-force checks").add_subparsers(dest="sub", required=True)
    for name, fn in (("dist", cmd_oracle_dist), ("gnp", cmd_oracle_gnp), ("g", cmd_oracle_g),
                     ("scan", cmd_oracle_scan)):
        p = orc.add_parser(name)
        _common(p)
        p.add_argument("--n", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--budget", type=int)
        p.add_argument("--max-k", type=int, default=3)
        p.set_defaults(fn=fn)

    p = sub.add_parser("verify", help="run a self-check suite")
    p.add_argument("--suite", choices=["quick", "paper"], default="quick")
    _common(p)
    p.set_defaults(fn=cmd_verify)
    return ap


def _find_subparser(ap, argv):
    """The parser that owns the chosen subcommand (for usage messages)."""
    node = ap
    for tok in argv:
        acts = [a for a in node._actions if isinstance(a, argparse._SubParsersAction)]
        if not acts or tok not in acts[0].choices:
            break
        node = acts[0].choices[tok]
    return node


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._parser = _find_subparser(ap, argv)
    args._failed = False
    try:
        result = args.fn(args)
    except SystemExit as exc:
        return int(exc.code)
    except (DomainError, ValueError, TypeError, ConstructionError, KeyError) as exc:
        print(f"edcrg: {exc}", file=sys.stderr)
        return 1
    text = result if isinstance(result, str) else emit(args, result)
    if args.out and args.fn not in (cmd_gen,):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 1 if args._failed else 0


if __name__ == "__main__":
    sys.exit(main())
