"""Command-line front end: factor x^n - 1 over F_q and report the result.

Two subcommands: `run` factors a single (n, q) by the closed-form path, the
coset oracle, or both (cross-checking them), and renders a text or JSON
report; `sweep` tabulates factor counts from both paths over a grid.  When a
report is written to a file, a matplotlib figure is rendered alongside it.

Exit codes: 0 success, 2 a requested check failed (the report is still
emitted), 1 usage or resource errors.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from . import closedform, ffield, intarith, oracle, polyring
from .closedform import FactorReport

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2


class _Parser(argparse.ArgumentParser):
    # Exit code 2 is reserved for check failures; argparse defaults to 2.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cyclofactor",
        description="Factor x^n - 1 over a finite field F_q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="factor a single (n, q)")
    run_p.add_argument("--n", type=int, required=True)
    run_p.add_argument(
        "--q", type=int, required=True, help="prime power, e.g. 9 = 3^2"
    )
    run_p.add_argument(
        "--mode", choices=("closed", "oracle", "both"), default="both"
    )
    run_p.add_argument("--format", choices=("text", "json"), default="text")
    run_p.add_argument(
        "--no-verify",
        action="store_true",
        help="skip product and irreducibility checks",
    )
    run_p.add_argument(
        "--budget",
        type=int,
        default=closedform.DEFAULT_BUDGET_BITS,
        help="field-size cap in bits of cardinality",
    )
    run_p.add_argument("--out", help="write the report (and a figure) here")

    sweep_p = sub.add_parser("sweep", help="tabulate counts over a grid")
    sweep_p.add_argument("--n-max", type=int, required=True)
    sweep_p.add_argument(
        "--q-list", required=True, help="comma-separated prime powers"
    )
    sweep_p.add_argument(
        "--mode", choices=("closed", "oracle", "both"), default="both"
    )
    sweep_p.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep_p.add_argument("--out", help="write the table (and a figure) here")
    return parser


def _case_display(n: int, q: int) -> str:
    tag = closedform.classify(n, q)
    if tag.is_supported():
        return tag.name
    return f"UNSUPPORTED({tag.d})"


def _report_payload(report: FactorReport, fallback: bool) -> dict:
    ctx = closedform.field_for(report.q)
    factors = [
        {
            "degree": f.degree,
            "form": f.form,
            "coeffs": [ctx.to_ints(c) for c in f.poly.coeffs],
        }
        for f in report.factors
    ]
    return {
        "n": report.n,
        "q": report.q,
        "p": report.p,
        "s": report.s,
        "case": _case_display(report.n, report.q),
        "method": report.method,
        "fallback": fallback,
        "num_factors": report.num_factors,
        "factors": factors,
        "checks": dict(report.checks),
    }


def _render_json(payload) -> str:
    # Canonical form: sorted keys, fixed separators, no floats anywhere.
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _render_text(report: FactorReport, fallback: bool) -> str:
    lines = [f"x^{report.n} - 1 over F_{report.q}"]
    case = _case_display(report.n, report.q)
    lines.append(f"case: {case}  method: {report.method}")
    if fallback:
        lines.append("note: no closed-form construction; oracle fallback used")
    tag = closedform.classify(report.n, report.q)
    if tag.is_supported():
        params = closedform.compute_params(report.n, report.q, tag)
        dec = " ".join(f"{k}={v}" for k, v in sorted(params.decomposition.items()))
        lines.append(f"K: {params.big_k}")
        lines.append(f"decomposition: {dec}")
        lines.append(
            "m: " + " ".join(f"{k}={v}" for k, v in sorted(params.m_values.items()))
        )
        lines.append(
            "l: " + " ".join(f"{k}={v}" for k, v in sorted(params.l_values.items()))
        )
        if params.r is not None:
            lines.append(f"r: {params.r}")
        for k, v in sorted(params.count_constants.items()):
            lines.append(f"{k}: {v}")
    checks = " ".join(
        f"{k}={'skipped' if v is None else v}" for k, v in report.checks.items()
    )
    lines.append(f"checks: {checks}")
    if report.timing:
        lines.append(
            "timing: "
            + " ".join(f"{k}={v}ms" for k, v in sorted(report.timing.items()))
        )
    lines.append(f"factors ({report.num_factors}):")
    for f in report.factors:
        lines.append(f"  deg {f.degree:>3}  {f.form:<12}  {polyring.render(f.poly)}")
    return "\n".join(lines) + "\n"


def _figure_path(out: str, suffix: str) -> str:
    stem = out.rsplit(".", 1)[0] if "." in out.rsplit("/", 1)[-1] else out
    return f"{stem}_{suffix}.png"


def _save_degree_figure(report: FactorReport, path: str) -> None:
    histogram: dict[int, int] = {}
    for f in report.factors:
        histogram[f.degree] = histogram.get(f.degree, 0) + 1
    degrees = sorted(histogram)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([str(d) for d in degrees], [histogram[d] for d in degrees])
    ax.set_xlabel("factor degree")
    ax.set_ylabel("count")
    ax.set_title(f"Irreducible factors of x^{report.n} - 1 over F_{report.q}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _save_sweep_figure(rows: list[dict], path: str) -> None:
    fig, ax = plt.subplots(figsize=(7, 4))
    by_q: dict[int, list[dict]] = {}
    for row in rows:
        by_q.setdefault(row["q"], []).append(row)
    for q, qrows in sorted(by_q.items()):
        pts = [
            (r["n"], r["oracle_count"] if r["oracle_count"] is not None else r["closed_count"])
            for r in qrows
        ]
        pts = [(n, c) for n, c in pts if c is not None]
        if pts:
            ax.plot(*zip(*pts), marker=".", linestyle="none", label=f"q={q}")
    ax.set_xlabel("n")
    ax.set_ylabel("number of irreducible factors")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def run(args) -> int:
    try:
        closedform.split_prime_power(args.q)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    shared = math.gcd(args.n, args.q)
    if args.n < 1:
        print(f"error: n must be >= 1, got {args.n}", file=sys.stderr)
        return EXIT_USAGE
    if shared != 1:
        p = intarith.factorize(shared)[0][0]
        print(
            f"error: n and q share the prime {p}; x^n - 1 is not squarefree",
            file=sys.stderr,
        )
        return EXIT_USAGE
    verify = not args.no_verify
    timing: dict[str, int] = {}
    check_failed = False
    fallback = False
    closed_report = None
    oracle_report = None
    if args.mode in ("closed", "both"):
        start = time.perf_counter()
        try:
            closed_report = closedform.factor_closed_form(
                args.n, args.q, args.budget, verify
            )
        except closedform.UnsupportedCaseError:
            fallback = True
        except closedform.VerificationError as exc:
            closed_report = exc.report
            check_failed = True
        except (ffield.BudgetError, intarith.FactorBudgetError) as exc:
            print(f"resource error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        timing["closed_form_ms"] = int((time.perf_counter() - start) * 1000)
    if fallback or args.mode in ("oracle", "both"):
        start = time.perf_counter()
        try:
            oracle_report = oracle.factor_by_cosets(
                args.n, args.q, args.budget, verify
            )
        except closedform.VerificationError as exc:
            oracle_report = exc.report
            check_failed = True
        except (ffield.BudgetError, intarith.FactorBudgetError) as exc:
            if closed_report is None:
                print(f"resource error: {exc}", file=sys.stderr)
                return EXIT_USAGE
        timing["oracle_ms"] = int((time.perf_counter() - start) * 1000)
    primary = closed_report if closed_report is not None else oracle_report
    if primary is None:
        print("resource error: no path produced a report", file=sys.stderr)
        return EXIT_USAGE
    if closed_report is not None and oracle_report is not None:
        agrees = [f.poly for f in closed_report.factors] == [
            f.poly for f in oracle_report.factors
        ]
        primary.checks["oracle_agrees"] = agrees
        if not agrees:
            check_failed = True
    primary.timing.update(timing)
    if args.format == "json":
        text = _render_json(_report_payload(primary, fallback))
    else:
        text = _render_text(primary, fallback)
    _emit(text, args.out)
    if args.out:
        _save_degree_figure(primary, _figure_path(args.out, "degrees"))
    return EXIT_CHECK_FAILED if check_failed else EXIT_OK


def sweep(args) -> int:
    try:
        q_list = [int(part) for part in args.q_list.split(",") if part.strip()]
        for q in q_list:
            closedform.split_prime_power(q)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.n_max < 1 or not q_list:
        print("error: need --n-max >= 1 and a nonempty --q-list", file=sys.stderr)
        return EXIT_USAGE
    rows = []
    disagreement = False
    for q in q_list:
        for n in range(1, args.n_max + 1):
            if math.gcd(n, q) != 1:
                continue
            tag = closedform.classify(n, q)
            closed_count = None
            if args.mode in ("closed", "both") and tag.is_supported():
                closed_count = closedform.count_closed_form(n, q)
            oracle_count = None
            if args.mode in ("oracle", "both"):
                oracle_count = oracle.count_by_cosets(n, q)
            if closed_count is None or oracle_count is None:
                agree = "skipped"
            elif closed_count == oracle_count:
                agree = "true"
            else:
                agree = "false"
                disagreement = True
            rows.append(
                {
                    "n": n,
                    "q": q,
                    "case": _case_display(n, q),
                    "closed_count": closed_count,
                    "oracle_count": oracle_count,
                    "agree": agree,
                }
            )
    if args.format == "json":
        text = _render_json(rows)
    else:
        lines = ["n,q,case,closed_count,oracle_count,agree"]
        for row in rows:
            closed = "" if row["closed_count"] is None else row["closed_count"]
            orc = "" if row["oracle_count"] is None else row["oracle_count"]
            lines.append(
                f"{row['n']},{row['q']},{row['case']},{closed},{orc},{row['agree']}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if args.out:
        _save_sweep_figure(rows, _figure_path(args.out, "counts"))
    return EXIT_CHECK_FAILED if disagreement else EXIT_OK


def main(argv=None) -> None:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        sys.exit(run(args))
    sys.exit(sweep(args))


if __name__ == "__main__":
    main()
