"""Command-line front end with deterministic, serializable reports.

Every subcommand assembles a plain JSON-compatible record and writes it to
``--out`` or standard output, as JSON (default) or tab-separated rows
(``--format table``).  Exit codes: 0 for a clean outcome, 1 when the
requested check found a failure/violation, 2 for usage or input errors.
The ``matrix`` and ``master`` subcommands can additionally render a
matplotlib figure next to the delimited output via ``--plot FILE``.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional

import click

from . import casework, dominance, master, omap, preorder, proofcheck, registry
from .functions import FunctionError, ParseError, from_text
from .properties import (PROPERTY_IDS, InstanceGen, UnsupportedCombinationError,
                         check_property, comparison_matrix)

DEFAULT_PROPERTIES = ("Order", "Trans", "One", "Zero", "Scale",
                      "Local", "SubHom", "SuperHom", "SubComp", "ISubComp")


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(record, fmt: str, out: Optional[str], rows=None) -> None:
    """Write the record as JSON, or as TSV rows when fmt == 'table'."""
    if fmt == "table":
        if rows is None:
            rows = [(k, json.dumps(_jsonable(v), sort_keys=True)
                     if isinstance(v, (dict, list)) else str(_jsonable(v)))
                    for k, v in record.items()]
        text = "\n".join("\t".join(str(c) for c in row) for row in rows) + "\n"
    else:
        text = json.dumps(_jsonable(record), indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)


def _verdict_record(verdict: dominance.Verdict) -> Dict[str, object]:
    rec: Dict[str, object] = {
        "status": verdict.status,
        "exact": verdict.exact,
        "horizon": verdict.horizon,
        "description": verdict.describe(),
    }
    if verdict.max_ratio is not None:
        rec["maxRatio"] = verdict.max_ratio
    if verdict.witness is not None:
        w = verdict.witness
        rec["witness"] = {"kind": w.kind, "constant": w.constant,
                          "region": w.region}
    if verdict.certificate is not None:
        c = verdict.certificate
        rec["certificate"] = {"reason": c.reason, "points": list(c.points),
                              "detail": c.detail}
    return rec


def _load_pair(domain: str, g: str, f: str):
    try:
        return from_text(domain, g), from_text(domain, f)
    except (ParseError, FunctionError, ValueError) as err:
        raise click.UsageError(str(err))


@click.group()
def main() -> None:
    """Order-theoretic comparison of resource-consumption functions."""


_shared = [
    click.option("--format", "fmt", type=click.Choice(["json", "table"]),
                 default="json", show_default=True),
    click.option("--out", type=click.Path(dir_okay=False), default=None,
                 help="Write the report to this file instead of stdout."),
]


def shared_options(fn):
    for opt in reversed(_shared):
        fn = opt(fn)
    return fn


# ---------------------------------------------------------------------------


@main.command()
@click.option("--kind", type=click.Choice(dominance.KINDS), required=True)
@click.option("--domain", required=True, help='e.g. "N", "N^2", "Z"')
@click.option("--g", "g_text", required=True, help="candidate member")
@click.option("--f", "f_text", required=True, help="reference function")
@click.option("--horizon", type=int, default=dominance.DEFAULT_HORIZON,
              show_default=True)
@click.option("--cmax", type=int, default=None,
              help="constant-blowup cutoff (default 2^20)")
@shared_options
def decide(kind, domain, g_text, f_text, horizon, cmax, fmt, out):
    """Decide whether g lies in the chosen dominance class of f."""
    g, f = _load_pair(domain, g_text, f_text)
    kwargs = {"horizon": horizon}
    if cmax is not None:
        kwargs["cmax"] = Fraction(cmax)
    verdict = dominance.decide(kind, g, f, **kwargs)
    record = {"command": "decide", "kind": kind, "domain": domain,
              "g": g_text, "f": f_text, **_verdict_record(verdict)}
    _emit(record, fmt, out)
    sys.exit(1 if verdict.status == "fails" else 0)


@main.command()
@click.option("--kind", type=click.Choice(dominance.KINDS), required=True)
@click.option("--domain", required=True)
@click.option("--g", "g_text", required=True)
@click.option("--f", "f_text", required=True)
@click.option("--horizon", type=int, default=dominance.DEFAULT_HORIZON,
              show_default=True)
@shared_options
def compare(kind, domain, g_text, f_text, horizon, fmt, out):
    """Compare g and f in both directions and classify the relation."""
    g, f = _load_pair(domain, g_text, f_text)
    comparison = dominance.compare(kind, g, f, horizon=horizon)
    record = {
        "command": "compare", "kind": kind, "domain": domain,
        "g": g_text, "f": f_text,
        "relation": comparison.relation,
        "forward": _verdict_record(comparison.forward),
        "backward": _verdict_record(comparison.backward),
    }
    _emit(record, fmt, out)
    sys.exit(0)


@main.command()
@click.option("--property", "prop", type=click.Choice(PROPERTY_IDS),
              required=True)
@click.option("--kind", type=click.Choice(dominance.KINDS), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=200, show_default=True)
@click.option("--horizon", type=int, default=dominance.DEFAULT_HORIZON,
              show_default=True)
@shared_options
def props(prop, kind, seed, trials, horizon, fmt, out):
    """Check one algebraic property for one dominance kind."""
    gen = InstanceGen(seed=seed, trials=trials, horizon=horizon)
    try:
        report = check_property(prop, kind, gen)
    except UnsupportedCombinationError as err:
        raise click.UsageError(str(err))
    record = {"command": "props", **report.to_record()}
    _emit(record, fmt, out)
    sys.exit(1 if report.status == "failed" else 0)


@main.command()
@click.option("--kinds", default=",".join(dominance.KINDS), show_default=True,
              help="comma-separated dominance kinds")
@click.option("--properties", "props_text",
              default=",".join(DEFAULT_PROPERTIES), show_default=True,
              help="comma-separated property names")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=200, show_default=True)
@click.option("--horizon", type=int, default=dominance.DEFAULT_HORIZON,
              show_default=True)
@click.option("--plot", type=click.Path(dir_okay=False), default=None,
              help="render the matrix as a figure to this file")
@shared_options
def matrix(kinds, props_text, seed, trials, horizon, plot, fmt, out):
    """Property-by-kind comparison matrix."""
    kind_list = [k.strip() for k in kinds.split(",") if k.strip()]
    prop_list = [p.strip() for p in props_text.split(",") if p.strip()]
    for k in kind_list:
        if k not in dominance.KINDS:
            raise click.UsageError(f"unknown kind {k!r}")
    for p in prop_list:
        if p not in PROPERTY_IDS:
            raise click.UsageError(f"unknown property {p!r}")
    gen = InstanceGen(seed=seed, trials=trials, horizon=horizon)
    cells = comparison_matrix(kind_list, prop_list, gen)
    record = {
        "command": "matrix", "kinds": kind_list, "properties": prop_list,
        "seed": seed, "trials": trials, "horizon": horizon,
        "cells": [c.to_record() for c in cells],
    }
    rows = [["property"] + kind_list]
    glyph = {"passed": "yes", "failed": "no", "skipped": "open",
             "evidence": "evidence"}
    by_key = {(c.property, c.kind): c for c in cells}
    for p in prop_list:
        rows.append([p] + [glyph.get(by_key[(p, k)].status,
                                     by_key[(p, k)].status)
                           for k in kind_list])
    if plot:
        _plot_matrix(kind_list, prop_list, by_key, plot)
        record["plot"] = plot
    _emit(record, fmt, out, rows=rows if fmt == "table" else None)
    sys.exit(0)


def _plot_matrix(kind_list, prop_list, by_key, path: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    colors = {"passed": "#2b8a3e", "failed": "#c92a2a", "skipped": "#868e96"}
    fig, ax = plt.subplots(
        figsize=(1.2 * len(kind_list) + 2, 0.4 * len(prop_list) + 1.5))
    for i, p in enumerate(prop_list):
        for j, k in enumerate(kind_list):
            cell = by_key[(p, k)]
            ax.add_patch(plt.Rectangle(
                (j, len(prop_list) - 1 - i), 1, 1,
                color=colors.get(cell.status, "#e67700")))
    ax.set_xticks([j + 0.5 for j in range(len(kind_list))])
    ax.set_xticklabels(kind_list, rotation=30, ha="right")
    ax.set_yticks([len(prop_list) - 1 - i + 0.5
                   for i in range(len(prop_list))])
    ax.set_yticklabels(prop_list)
    ax.set_xlim(0, len(kind_list))
    ax.set_ylim(0, len(prop_list))
    ax.set_title("property-by-kind comparison")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


@main.command()
@click.argument("case_id", required=False)
@click.option("--horizon", type=int, default=64, show_default=True)
@shared_options
def counterexample(case_id, horizon, fmt, out):
    """Replay a registered counterexample case (all of them by default)."""
    ids = [case_id] if case_id else list(registry.CASE_IDS)
    results = []
    for cid in ids:
        try:
            results.append(registry.run_counterexample(cid, horizon=horizon))
        except registry.UnknownCaseError as err:
            raise click.UsageError(str(err))
    record = {
        "command": "counterexample", "horizon": horizon,
        "cases": [
            {"id": r.case_id, "passed": r.passed,
             "checks": [{"name": c.name, "expected": c.expected,
                         "actual": c.actual, "passed": c.passed}
                        for c in r.checks]}
            for r in results
        ],
    }
    _emit(record, fmt, out)
    sys.exit(0 if all(r.passed for r in results) else 1)


@main.command("master")
@click.option("--variant", type=click.Choice(master.VARIANTS), required=True)
@click.option("-a", "a_", required=True, help="branch count (rational)")
@click.option("-b", "b_", required=True, help="shrink factor (rational)")
@click.option("-c", "c_", required=True, help="driving exponent (rational)")
@click.option("-d", "d_", required=True, help="base cost (rational)")
@click.option("--horizon-exp", type=int, default=8, show_default=True)
@click.option("--plot", type=click.Path(dir_okay=False), default=None,
              help="render the solution against its growth class")
@shared_options
def master_cmd(variant, a_, b_, c_, d_, horizon_exp, plot, fmt, out):
    """Classify and verify the growth of a divide-and-conquer recurrence."""
    try:
        params = master.MasterParams(Fraction(a_), Fraction(b_),
                                     Fraction(c_), Fraction(d_))
        report = master.master_theta_class(variant, params, horizon_exp)
    except (ValueError, ZeroDivisionError, master.BracketSearchFailed) as err:
        raise click.UsageError(str(err))
    record = {"command": "master", **report.to_record(),
              "horizonExp": horizon_exp}
    if plot:
        _plot_master(variant, params, report, horizon_exp, plot)
        record["plot"] = plot
    _emit(record, fmt, out)
    sys.exit(0)


def _plot_master(variant, params, report, horizon_exp, path: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if variant == "integers":
        points = [Fraction(n) for n in range(1, 2 ** min(horizon_exp, 10) + 1)]
    elif variant == "powers":
        points = [params.b ** i for i in range(horizon_exp + 1)]
    else:
        points = [Fraction(k, 4) for k in range(4, 4 * 64 + 1)]
    xs = [float(p) for p in points]
    ts = [float(master.eval_master(variant, params, p, "closed"))
          for p in points]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(xs, ts, label="T(n)", lw=1.6)
    sign = master._compare_a_vs_bc(params.a, params.b, params.c)
    ref = master._reference(params, sign)
    ax.plot(xs, [report.c1 * ref(p) if ref(p) > 0 else 0 for p in points],
            "--", label=f"c1·{report.class_label}")
    ax.plot(xs, [report.c2 * ref(p) if ref(p) > 0 else 0 for p in points],
            "--", label=f"c2·{report.class_label}")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.legend()
    ax.set_title(f"{variant}: a={params.a} b={params.b} c={params.c}"
                 f" -> {report.class_label}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


@main.command()
@click.option("--max-length", type=int, default=5, show_default=True)
@shared_options
def cases(max_length, fmt, out):
    """Worst/best/average insertion-sort comparisons by input length."""
    grouping, cost = casework.permutation_grouping(max_length)
    report = casework.case_report(cost, grouping)
    record = {
        "command": "cases", "maxLength": max_length,
        "byLength": {
            str(z[0]): {k: _jsonable(v) for k, v in entry.items()}
            for z, entry in report.items()
        },
    }
    rows = [["length", "worst", "best", "average"]]
    for z, entry in sorted(report.items()):
        rows.append([z[0], entry["worst"], entry["best"], entry["average"]])
    _emit(record, fmt, out, rows=rows if fmt == "table" else None)
    sys.exit(0)


@main.command("omap")
@click.option("--transform", "name",
              type=click.Choice(["translate", "scale", "power",
                                 "compose", "compose-injective",
                                 "subset-sum"]), required=True)
@click.option("--alpha", default="1", show_default=True,
              help="parameter for translate/scale/power")
@click.option("--law", type=click.Choice(["mapping", "equality"]),
              default="mapping", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=100, show_default=True)
@shared_options
def omap_cmd(name, alpha, law, seed, trials, fmt, out):
    """Check the mapping or strong-equality law for a standard transform."""
    import random as _random
    gen = omap.OMapGen(seed=seed, trials=trials)
    rng = _random.Random(seed)
    try:
        alpha_q = Fraction(alpha)
        transform = {
            "translate": lambda: omap.Translate(alpha_q),
            "scale": lambda: omap.ScaleBy(alpha_q),
            "power": lambda: omap.PowerBy(alpha_q),
            "compose": lambda: omap.random_index_map(rng, 6, gen.size),
            "compose-injective": lambda: omap.random_index_map(
                rng, 6, gen.size, injective=True),
            "subset-sum": lambda: omap.random_subset_sum(rng, 6, gen.size),
        }[name]()
        if law == "mapping":
            report = omap.check_o_mapping(transform, gen)
        else:
            report = omap.check_o_equality(transform, gen)
    except (ValueError, omap.RightInverseViolated) as err:
        raise click.UsageError(str(err))
    record = {"command": "omap", **report.to_record()}
    _emit(record, fmt, out)
    sys.exit(0 if report.passed else 1)


@main.command("preorder")
@click.option("--case", "letter", type=click.Choice(preorder.HASSE_CASES),
              required=True)
@shared_options
def preorder_cmd(letter, fmt, out):
    """Classify one of the bundled separating map examples."""
    p, q, h, expect = preorder.hasse_case(letter)
    cls = preorder.classify_map(p, q, h)
    flags = cls.flags()
    mismatches = {k: {"expected": v, "actual": flags[k]}
                  for k, v in expect.items() if flags[k] != v}
    record = {
        "command": "preorder", "case": letter,
        "source": p.text(), "target": q.text(), "map": dict(h),
        "flags": flags, "expected": expect, "mismatches": mismatches,
        "residual": cls.residual,
    }
    _emit(record, fmt, out)
    sys.exit(0 if not mismatches else 1)


@main.command("proofcheck")
@click.argument("ledger_file", type=click.Path(exists=True, dir_okay=False),
                required=False)
@shared_options
def proofcheck_cmd(ledger_file, fmt, out):
    """Check a theorem-dependency ledger (bundled corpus by default)."""
    try:
        if ledger_file:
            with open(ledger_file, encoding="utf-8") as handle:
                ledger = proofcheck.parse_ledger(handle.read())
        else:
            ledger = proofcheck.load_corpus()
    except proofcheck.LedgerParseError as err:
        raise click.UsageError(str(err))
    report = proofcheck.check_ledger(ledger)
    record = {
        "command": "proofcheck",
        "ledger": ledger_file or "<bundled corpus>",
        "records": len(ledger.records),
        "clean": report.clean,
        "violations": [v.to_record() for v in report.violations],
    }
    _emit(record, fmt, out)
    sys.exit(0 if report.clean else 1)


if __name__ == "__main__":
    main()
