"""``riskfuzz`` command-line interface.

Exit status: 0 on success, 2 on invalid input, 1 on I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .exceptions import RiskFuzzError
from .mcdm.methods import METHODS, get_method
from .pipeline import data_path, run_pipeline
from .render import render_heatmap_svg, render_matrix_ascii, render_matrix_svg
from .risk_model.questionnaire import default_rules_path, dumps_questionnaire, questionnaire_to_csv
from .risk_model.synthetic import DistributionSpec, generate_synthetic

EXIT_OK, EXIT_IO, EXIT_INVALID = 0, 1, 2


def _csv(rows):
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json(doc):
    return json.dumps(doc, indent=2) + "\n"


def _write(path, text):
    Path(path).write_text(text, encoding="utf-8")


class _Out:
    def __init__(self, quiet):
        self.quiet = quiet

    def data(self, text):
        sys.stdout.write(text)

    def note(self, text):
        if not self.quiet:
            print(text, file=sys.stderr)


def _report(args):
    return run_pipeline(args.questionnaire, args.config, args.rules, getattr(args, "recompute_colors", False))


def cmd_weights(args, out):
    w = _report(args).weights
    if args.format == "json":
        out.data(_json(w.to_dict()))
    else:
        out.data(_csv([("criterion", "weight"), *((c, f"{v:.6f}") for c, v in w.as_dict().items())]))


def cmd_rank(args, out):
    report = _report(args)
    if args.method.lower() == "all":
        rankings = list(report.rankings.values())
    else:
        name = next(k for k, fn in METHODS.items() if fn is get_method(args.method))
        rankings = [report.rankings[name]]
    if args.fuzzy:
        rankings.append(report.fuzzy_topsis)
    if args.format == "json":
        out.data(_json({r.method: r.to_dict() for r in rankings}))
    elif len(rankings) == 1:
        out.data(rankings[0].to_csv())
    else:
        alts = rankings[0].alternatives
        rows = [("alternative", *(r.method for r in rankings))]
        rows += [(a, *(r.rank_of(a) for r in rankings)) for a in alts]
        out.data(_csv(rows))


def cmd_compare(args, out):
    report = _report(args)
    if args.format == "json":
        out.data(_json({"correlation": report.correlation.to_dict(),
                        "consensus": report.consensus.to_dict()}))
    else:
        out.data(report.correlation.to_csv() + "\n" + report.consensus.to_csv())
    if args.svg:
        _write(args.svg, render_heatmap_svg(report.correlation))
        out.note(f"wrote {args.svg}")


def cmd_assess(args, out):
    rows = _report(args).assessment_table()
    if args.format == "json":
        out.data(_json(rows))
        return
    keys = ("code", "likelihood", "likelihood_term", "impact", "impact_term", "crisp_risk", "level")
    table = [keys]
    for r in rows:
        table.append(tuple(f"{r[k]:.4f}" if isinstance(r[k], float) else r[k] for k in keys))
    out.data(_csv(table))


def cmd_matrix(args, out):
    grid = _report(args).matrix
    if args.format == "json":
        out.data(_json(grid.to_dict()))
    else:
        out.data(render_matrix_ascii(grid))
    if args.svg:
        _write(args.svg, render_matrix_svg(grid))
        out.note(f"wrote {args.svg}")


def cmd_generate(args, out):
    spec = DistributionSpec.load(args.spec or data_path("demo_spec.json"))
    q = generate_synthetic(spec, args.experts, args.seed)
    if args.format == "csv":
        ratings, rules = questionnaire_to_csv(q)
        if not args.out:
            out.data(ratings)
            return
        rules_path = args.rules or default_rules_path(args.out)
        _write(args.out, ratings)
        _write(rules_path, rules)
        out.note(f"wrote {args.out} and {rules_path}")
        return
    text = dumps_questionnaire(q)
    if args.out:
        _write(args.out, text)
        out.note(f"wrote {args.out}")
    else:
        out.data(text)


def cmd_report(args, out):
    text = _report(args).to_json()
    if args.json in (None, "-"):
        out.data(text)
    else:
        _write(args.json, text)
        out.note(f"wrote {args.json}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="FIS configuration JSON (default: $RISKFUZZ_CONFIG or built-in)")
    common.add_argument("--format", choices=("csv", "json"),
                        help="output format (default: csv; json for generate)")
    common.add_argument("--quiet", action="store_true", help="suppress progress messages")
    common.add_argument("--rules", help="rules CSV for a CSV questionnaire (default: <stem>_rules.csv)")

    parser = argparse.ArgumentParser(prog="riskfuzz", description="Climate transition risk assessment.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, questionnaire=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if questionnaire:
            p.add_argument("questionnaire", help="questionnaire JSON or ratings CSV")
        p.set_defaults(func=fn)
        return p

    add("weights", cmd_weights, "criteria weights from section 1")
    p = add("rank", cmd_rank, "rank the risks with one or all MCDM methods")
    p.add_argument("--method", default="all", help=f"one of {', '.join(METHODS)} or 'all'")
    p.add_argument("--fuzzy", action="store_true", help="append the Fuzzy-TOPSIS ranking")
    p = add("compare", cmd_compare, "Kendall correlation between methods and Borda consensus")
    p.add_argument("--svg", help="write the correlation heatmap here")
    add("assess", cmd_assess, "crisp risk and level per risk, highest first")
    p = add("matrix", cmd_matrix, "5x5 risk matrix")
    p.add_argument("--svg", help="write the SVG matrix here")
    p.add_argument("--recompute-colors", action="store_true",
                   help="derive cell colours from the active FIS instead of the published layout")
    p = add("generate", cmd_generate, "synthetic questionnaire", questionnaire=False)
    p.add_argument("--spec", help="distribution spec JSON (default: shipped demo spec)")
    p.add_argument("--experts", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="output path (default: stdout)")
    p = add("report", cmd_report, "full pipeline report as JSON")
    p.add_argument("--json", help="output path, '-' for stdout")
    p.add_argument("--recompute-colors", action="store_true")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.quiet)
    if args.format is None:
        args.format = "json" if args.command == "generate" else "csv"
    try:
        if args.command == "rank" and args.method.lower() != "all":
            get_method(args.method)  # fail before running the pipeline
        args.func(args, out)
    except RiskFuzzError as exc:
        print(f"riskfuzz: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        target = exc.filename or ""
        print(f"riskfuzz: error: {exc.strerror or exc}{': ' + str(target) if target else ''}",
              file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
