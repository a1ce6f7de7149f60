"""Command line interface with deterministic JSON and CSV reports.

Exit status: 0 when every verdict passed (or the command produces no
verdicts), 2 when at least one verdict failed (a potential counterexample),
1 on usage or input errors.  Re-running a command with the same configuration
reproduces the report byte for byte: verdicts are sorted canonically and all
real values are formatted at 12 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial

from . import __version__
from .bounds import (
    BIPARTITE,
    GENERAL,
    MARKOV,
    SMALL_T,
    BoundParams,
    balanced_profile,
    block_miss_stats,
    independent_count_upper,
    independent_upper_pm_exact,
    log2,
    matching_count_upper,
    matching_partition_upper,
    independent_partition_upper,
    optimal_lambda,
    profile_matching_lower,
    stirling_term_check,
    union_independent_lower,
    union_matching_lower_explicit,
    union_small_t_exact,
)
from .counting import (
    INDEPENDENT_SET,
    MATCHING,
    independence_polynomial,
    matching_polynomial,
)
from .errors import DivisibilityError, DomainError, GraphError, ScaleError
from .generate import CANONICAL_FORM_LIMIT, GenSpec, canonical_form, generate
from .graphs import graph_from_text, graph_to_text
from .kdd import union_independent_count, union_matching_count, union_params
from .verify import (
    CSV_HEADER,
    DEFAULT_C_GRID,
    DEFAULT_LAMBDA_GRID,
    DEFAULT_ROOT_TOL,
    Verdict,
    _params,
    format_number,
    graph_label,
    hom_graph_verdicts,
    kahn_graph_verdicts,
    sort_verdicts,
    suite_graph_verdicts,
    umc_graph_verdicts,
    verify_real_rooted,
    verify_union_lower_bounds,
)


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; this tool reserves 2 for
    failed verdicts, so usage errors are remapped to status 1."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    value = Fraction(text)
    if value < 0:
        raise ValueError(f"expected a nonnegative rational, got {text}")
    return value


def _build_parser() -> _Parser:
    parser = _Parser(prog="regcount", description=__doc__)
    parser.add_argument(
        "--version", action="version", version=f"regcount {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, workers=True):
        sp.add_argument("--out", help="write the report to this path")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        if workers:
            sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("count", help="exact count polynomial of a graph file")
    sp.add_argument("--kind", choices=(MATCHING, INDEPENDENT_SET), required=True)
    sp.add_argument("--graph", required=True)
    common(sp, workers=False)

    sp = sub.add_parser("bounds", help="closed-form bound values for (n, d)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--ell", type=int, action="append")
    sp.add_argument("--t", type=int, action="append")
    sp.add_argument("--lam", type=_fraction, action="append")
    sp.add_argument("--c", type=_fraction, action="append")
    common(sp, workers=False)

    sp = sub.add_parser("gen", help="enumerate d-regular graphs")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--bipartite-only", action="store_true")
    sp.add_argument("--labeled", action="store_true",
                    help="emit every labeled graph instead of one per class")
    common(sp, workers=False)

    for name, help_text in (
        ("verify-umc", "matching counts vs the complete-bipartite union"),
        ("verify-kahn", "independent-set counts vs the union"),
        ("verify-suite", "all applicable bounds on every generated graph"),
        ("verify-roots", "real-rootedness of matching polynomials"),
        ("verify-hom", "order-product inequality and hard-core identity"),
    ):
        sp = sub.add_parser(name, help=help_text)
        if name == "verify-roots":
            sp.add_argument("--graph", help="single graph file instead of a sweep")
            sp.add_argument("--n", type=int)
            sp.add_argument("--d", type=int)
            sp.add_argument("--tol", type=float, default=DEFAULT_ROOT_TOL)
        else:
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--d", type=int, required=True)
        if name == "verify-suite":
            sp.add_argument("--lam", type=_fraction, action="append")
            sp.add_argument("--c", type=_fraction, action="append")
        if name == "verify-hom":
            sp.add_argument("--orders", type=int, default=5)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--c", type=_fraction, action="append")
        common(sp)
    return parser


def _pmap(fn, items, workers: int) -> list:
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _config_echo(args: argparse.Namespace) -> dict:
    config = {}
    for key in sorted(vars(args)):
        if key == "command":
            continue
        value = getattr(args, key)
        if value is None:
            continue
        if isinstance(value, list):
            config[key] = [
                str(v) if isinstance(v, Fraction) else v for v in value
            ]
        elif isinstance(value, Fraction):
            config[key] = str(value)
        else:
            config[key] = value
    return config


def _report(command: str, config: dict, verdicts=None, rows=None, extra=None) -> dict:
    doc = {
        "tool": "regcount",
        "version": __version__,
        "command": command,
        "config": config,
    }
    if extra:
        doc.update(extra)
    if rows is not None:
        doc["rows"] = rows
    if verdicts is not None:
        doc["verdicts"] = [v.to_json_dict() for v in verdicts]
        doc["summary"] = {
            "total": len(verdicts),
            "failed": sum(1 for v in verdicts if not v.passed),
        }
    return doc


def _render_csv(doc: dict) -> str:
    buf = io.StringIO()
    buf.write(f"# tool={doc['tool']} version={doc['version']} command={doc['command']}\n")
    buf.write(f"# config={json.dumps(doc['config'], sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    if "verdicts" in doc:
        writer.writerow(CSV_HEADER)
        for v in doc["verdicts"]:
            writer.writerow(
                [
                    v["check_id"],
                    v["graph_label"],
                    json.dumps(v["params"], sort_keys=True),
                    v["lhs"],
                    v["rhs"],
                    "true" if v["pass"] else "false",
                    v["margin"],
                ]
            )
    elif "rows" in doc:
        rows = doc["rows"]
        if rows:
            header = list(rows[0].keys())
            writer.writerow(header)
            for row in rows:
                writer.writerow(
                    [
                        json.dumps(row[k], sort_keys=True)
                        if isinstance(row[k], dict)
                        else row[k]
                        for k in header
                    ]
                )
    else:
        writer.writerow(["key", "value"])
        for key, value in doc.items():
            if key in ("tool", "version", "command", "config"):
                continue
            writer.writerow([key, json.dumps(value, sort_keys=True)])
    return buf.getvalue()


def _emit(doc: dict, args: argparse.Namespace) -> None:
    if args.format == "json":
        payload = json.dumps(doc, indent=2) + "\n"
    else:
        payload = _render_csv(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
        summary = doc.get("summary")
        if summary:
            sys.stdout.write(
                f"{doc['command']}: {summary['total']} checks, "
                f"{summary['failed']} failed -> {args.out}\n"
            )
        else:
            sys.stdout.write(f"{doc['command']}: report -> {args.out}\n")
    else:
        sys.stdout.write(payload)


def _exit_status(verdicts) -> int:
    return 2 if any(not v.passed for v in verdicts) else 0


def _read_graph(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_text(fh.read())


def _cmd_count(args) -> int:
    g = _read_graph(args.graph)
    if args.kind == MATCHING:
        poly = matching_polynomial(g)
    else:
        poly = independence_polynomial(g)
    doc = _report(
        "count",
        _config_echo(args),
        extra={"kind": args.kind, "coefficients": poly.to_json_strings()},
    )
    _emit(doc, args)
    return 0


def _bounds_rows(n, d, ells, ts, lams, cs) -> list[dict]:
    p = union_params(n, d)
    rows: list[dict] = []

    def add(name, value, direction, **params):
        rows.append(
            {
                "name": name,
                "params": _params(n=n, d=d, **params),
                "value": format_number(value),
                "direction": direction,
            }
        )

    for ell in ells:
        count = union_matching_count(p, ell)
        bp = BoundParams(n=n, d=d, size=ell)
        add("union-match-count", count, "exact", size=ell)
        if count:
            add("union-match-count-log2", log2(count), "exact", size=ell)
        add("match-count-upper", matching_count_upper(bp).value, "upper", size=ell)
        if 0 < ell < n // 2 and d >= 1:
            lam_opt = optimal_lambda(bp)
            add("optimal-lambda", lam_opt, "info", size=ell)
            explicit = union_matching_lower_explicit(bp)
            add("union-match-lower-explicit", explicit.value, "reference", size=ell)
            if count:
                add(
                    "explicit-gap-log2",
                    log2(count) - explicit.value,
                    "info",
                    size=ell,
                )
        if d >= 1:
            profile = balanced_profile(n, d, ell)
            for c in cs:
                add(
                    "stirling-terms-ok",
                    all(stirling_term_check(d, a, c) for a in profile),
                    "info",
                    size=ell,
                    c=c,
                )
                add(
                    "profile-match-lower",
                    profile_matching_lower(n, d, profile, c).value,
                    "lower",
                    size=ell,
                    c=c,
                )
    for lam in lams:
        bp = BoundParams(n=n, d=d, lam=lam)
        add("match-pf-upper", matching_partition_upper(bp).value, "upper", lam=lam)
        add(
            "ind-pf-upper-general",
            independent_partition_upper(bp, bipartite=False).value,
            "upper",
            lam=lam,
        )
        add(
            "ind-pf-upper-bipartite",
            independent_partition_upper(bp, bipartite=True).value,
            "upper",
            lam=lam,
        )
    for t in ts:
        count = union_independent_count(p, t)
        bp = BoundParams(n=n, d=d, size=t)
        add("union-ind-count", count, "exact", size=t)
        if count:
            add("union-ind-count-log2", log2(count), "exact", size=t)
        if d >= 1:
            add(
                "ind-count-upper-general",
                independent_count_upper(bp, GENERAL).value,
                "upper",
                size=t,
            )
            add(
                "ind-count-upper-bipartite",
                independent_count_upper(bp, BIPARTITE).value,
                "upper",
                size=t,
            )
        add("ind-upper-pm-exact", independent_upper_pm_exact(n, t), "upper", size=t)
        for c in cs:
            if c > 1:
                add(
                    "union-ind-lower-markov",
                    union_independent_lower(
                        BoundParams(n=n, d=d, size=t, c=c), MARKOV
                    ).value,
                    "lower",
                    size=t,
                    c=c,
                )
        if t <= p.copies:
            add(
                "union-ind-lower-small-t-log",
                union_independent_lower(bp, SMALL_T).value,
                "lower",
                size=t,
            )
            add(
                "union-ind-lower-small-t-exact",
                union_small_t_exact(n, d, t),
                "lower",
                size=t,
            )
        mu, mu_bound = block_miss_stats(bp)
        add("block-miss-mean", mu, "exact", size=t)
        add("block-miss-mean-upper", mu_bound, "upper", size=t)
    return rows


def _cmd_bounds(args) -> int:
    n, d = args.n, args.d
    union_params(n, d)
    ells = args.ell if args.ell else list(range(n // 2 + 1))
    ts = args.t if args.t else list(range(n // 2 + 1))
    lams = args.lam if args.lam else list(DEFAULT_LAMBDA_GRID)
    cs = args.c if args.c else list(DEFAULT_C_GRID)
    for size in list(ells) + list(ts):
        if not 0 <= size <= n // 2:
            raise DomainError(f"sizes must lie in 0..{n // 2}, got {size}")
    rows = _bounds_rows(n, d, ells, ts, lams, cs)
    doc = _report("bounds", _config_echo(args), rows=rows)
    _emit(doc, args)
    return 0


def _cmd_gen(args) -> int:
    spec = GenSpec(
        args.n,
        args.d,
        bipartite_only=args.bipartite_only,
        isomorph_reject=not args.labeled,
    )
    rows = []
    for idx, g in enumerate(generate(spec)):
        if spec.isomorph_reject and args.n <= CANONICAL_FORM_LIMIT:
            label = canonical_form(g)
        else:
            label = f"{args.n}v-{args.d}r-{idx:06d}"
        rows.append(
            {
                "index": idx,
                "label": label,
                "vertices": g.vertex_count,
                "edges": g.edge_count,
                "graph": graph_to_text(g),
            }
        )
    doc = _report(
        "gen", _config_echo(args), rows=rows, extra={"count": len(rows)}
    )
    _emit(doc, args)
    return 0


def _umc_item(n, d, item):
    idx, g = item
    return umc_graph_verdicts(n, d, idx, g)


def _kahn_item(n, d, item):
    idx, g = item
    return kahn_graph_verdicts(n, d, idx, g)


def _suite_item(n, d, lams, item):
    idx, g = item
    return suite_graph_verdicts(n, d, idx, g, lams)


def _roots_item(n, d, tol, item):
    idx, g = item
    return [verify_real_rooted(g, tol)]


def _hom_item(n, d, orders, seed, cs, item):
    idx, g = item
    return hom_graph_verdicts(n, d, idx, g, random_orders=orders, seed=seed, c_grid=cs)


def _run_sweep(args, task) -> int:
    items = list(enumerate(generate(GenSpec(args.n, args.d))))
    batches = _pmap(task, items, args.workers)
    verdicts = sort_verdicts(v for batch in batches for v in batch)
    doc = _report(args.command, _config_echo(args), verdicts=verdicts)
    _emit(doc, args)
    return _exit_status(verdicts)


def _cmd_verify_umc(args) -> int:
    union_params(args.n, args.d)
    return _run_sweep(args, partial(_umc_item, args.n, args.d))


def _cmd_verify_kahn(args) -> int:
    union_params(args.n, args.d)
    return _run_sweep(args, partial(_kahn_item, args.n, args.d))


def _cmd_verify_suite(args) -> int:
    lams = tuple(args.lam) if args.lam else DEFAULT_LAMBDA_GRID
    cs = tuple(args.c) if args.c else DEFAULT_C_GRID
    items = list(enumerate(generate(GenSpec(args.n, args.d))))
    batches = _pmap(partial(_suite_item, args.n, args.d, lams), items, args.workers)
    verdicts = [v for batch in batches for v in batch]
    if args.d >= 1 and args.n % (2 * args.d) == 0:
        verdicts.extend(verify_union_lower_bounds(args.n, args.d, cs))
    verdicts = sort_verdicts(verdicts)
    doc = _report(args.command, _config_echo(args), verdicts=verdicts)
    _emit(doc, args)
    return _exit_status(verdicts)


def _cmd_verify_roots(args) -> int:
    if args.graph:
        g = _read_graph(args.graph)
        verdicts = [verify_real_rooted(g, args.tol)]
    elif args.n is not None and args.d is not None:
        items = list(enumerate(generate(GenSpec(args.n, args.d))))
        batches = _pmap(
            partial(_roots_item, args.n, args.d, args.tol), items, args.workers
        )
        verdicts = [v for batch in batches for v in batch]
    else:
        raise DomainError("verify-roots needs either --graph or both --n and --d")
    verdicts = sort_verdicts(verdicts)
    doc = _report(args.command, _config_echo(args), verdicts=verdicts)
    _emit(doc, args)
    return _exit_status(verdicts)


def _cmd_verify_hom(args) -> int:
    cs = tuple(args.c) if args.c else DEFAULT_C_GRID
    items = list(enumerate(generate(GenSpec(args.n, args.d))))
    batches = _pmap(
        partial(_hom_item, args.n, args.d, args.orders, args.seed, cs),
        items,
        args.workers,
    )
    verdicts = sort_verdicts(v for batch in batches for v in batch)
    doc = _report(args.command, _config_echo(args), verdicts=verdicts)
    _emit(doc, args)
    return _exit_status(verdicts)


_COMMANDS = {
    "count": _cmd_count,
    "bounds": _cmd_bounds,
    "gen": _cmd_gen,
    "verify-umc": _cmd_verify_umc,
    "verify-kahn": _cmd_verify_kahn,
    "verify-suite": _cmd_verify_suite,
    "verify-roots": _cmd_verify_roots,
    "verify-hom": _cmd_verify_hom,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (GraphError, DomainError, DivisibilityError, ScaleError) as exc:
        sys.stderr.write(f"regcount: error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"regcount: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
