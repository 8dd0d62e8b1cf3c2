"""Command line interface.

Exit codes: 0 success or reproduction match, 1 mismatch or counterexample,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from wpkstab.core import (
    HypersurfaceFamily,
    InputError,
    c1_count,
    fano_index,
    fundamental_degree,
    is_linear_cone,
    is_wellformed_ambient,
    smoothness_necessary,
)
from wpkstab.criteria import (
    PreconditionError,
    corollary3_verdict,
    kstability_verdict,
)
from wpkstab.datasets import (
    ParseError,
    ValidationError,
    embedded_threefold_families,
    load_family_file,
)
from wpkstab.monomials import hilbert_function
from wpkstab.report import FORMATS, Report
from wpkstab.reproduce import (
    reproduce_fourfolds,
    reproduce_lemma_ratio,
    reproduce_prop27,
    reproduce_table,
    reproduce_threefolds,
    verdict_row,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2

TARGETS = ("cor15-threefolds", "cor15-fourfolds", "lemma-ratio", "prop27", "table-sec11")
VERDICTS = {
    "kstable": "KStable",
    "deltageone": "DeltaGeOne",
    "inconclusive": "Inconclusive",
    "notfano": "NotFano",
    "notapplicable": "NotApplicable",
}


class UsageError(Exception):
    pass


def _weights(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights must be comma-separated integers: {text!r}")


def _emit(report: Report, fmt: str, output: Optional[str] = None) -> None:
    text = report.render(fmt)
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    f = HypersurfaceFamily.of(args.weights, args.degree)
    rep = Report(str(f))
    row = {
        "weights": list(f.weights),
        "degree": f.degree,
        "dim": f.dim,
        "index": fano_index(f),
        "wellformed_ambient": is_wellformed_ambient(f.ambient),
        "c1": c1_count(f.ambient),
        "linear_cone": is_linear_cone(f),
        "smoothness_necessary": smoothness_necessary(f),
        "fundamental_degree": fundamental_degree(f),
    }
    row.update({k: v for k, v in verdict_row(f).items() if k not in row and k != "id"})
    v = kstability_verdict(f)
    row["equality"] = v.equality
    if v.reason:
        row["reason"] = v.reason
    try:
        c3 = corollary3_verdict(f)
        row["smooth_verdict"] = c3.tag.value
        if c3.shape:
            row["smooth_exception"] = c3.shape
    except PreconditionError:
        pass
    rep.rows.append(row)
    _emit(rep, args.format)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    if args.upto < 0:
        raise UsageError("--upto must be >= 0")
    f = HypersurfaceFamily.of(args.weights, args.degree)
    rep = Report(f"h0(O_X(k)) for {f}")
    rep.rows = [{"k": k, "h0": h} for k, h in enumerate(hilbert_function(f, args.upto))]
    _emit(rep, args.format)
    return EXIT_OK


def _read_ids(path: str) -> set[int]:
    with open(path, encoding="utf-8") as fh:
        text = fh.read().replace(",", " ")
    try:
        return {int(tok) for tok in text.split()}
    except ValueError as exc:
        raise UsageError(f"{path}: ids must be integers ({exc})")


def cmd_scan(args) -> int:
    expected = None if args.any_index else 1
    if args.input:
        parsed = load_family_file(args.input, args.input_format, expected_index=expected)
        records = parsed.records
    else:
        records = embedded_threefold_families()
    known = _read_ids(args.known_ids) if args.known_ids else None
    if args.new_only and known is None:
        raise UsageError("--new-only needs --known-ids")
    rep = Report(f"scan of {args.input or 'embedded threefold list'}")
    tally: dict[str, int] = {}
    for rec in records:
        row = verdict_row(rec.to_family())
        tally[row["verdict"]] = tally.get(row["verdict"], 0) + 1
        if args.verdict and row["verdict"] != VERDICTS[args.verdict]:
            continue
        if args.new_only and rec.id in known:
            continue
        rep.rows.append(row)
    rep.summary = {"families": len(records), "rows": len(rep.rows)}
    rep.summary.update({k: tally[k] for k in sorted(tally)})
    _emit(rep, args.format, args.output)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    start = time.perf_counter()
    target = args.target
    if target == "cor15-threefolds":
        rep = reproduce_threefolds()
    elif target == "table-sec11":
        rep = reproduce_table()
    elif target == "cor15-fourfolds":
        if not args.input:
            raise UsageError("cor15-fourfolds needs --input PATH")
        parsed = load_family_file(args.input, args.input_format)
        rep = reproduce_fourfolds(parsed.records)
    elif target == "lemma-ratio":
        rep = reproduce_lemma_ratio(args.kmin, args.kmax, args.bmax)
    else:
        rep = reproduce_prop27(args.nmax, args.dmax)
    rep.summary["seconds"] = round(time.perf_counter() - start, 3)
    _emit(rep, args.format, args.output)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="wpkstab",
        description="K-stability criteria for weighted projective hypersurfaces.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=FORMATS, default="text")

    sp = sub.add_parser("check", help="predicates, bound and verdict for one family")
    sp.add_argument("--weights", type=_weights, required=True)
    sp.add_argument("--degree", type=int, required=True)
    fmt(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("hilbert", help="h0(O_X(k)) for k = 0..upto")
    sp.add_argument("--weights", type=_weights, required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--upto", type=int, default=10)
    fmt(sp)
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("scan", help="verdict rows for every family in a list")
    sp.add_argument("--input", help="CSV or JSON family list (default: embedded threefolds)")
    sp.add_argument("--input-format", choices=("csv", "json"))
    sp.add_argument("--output")
    sp.add_argument("--verdict", choices=sorted(VERDICTS))
    sp.add_argument("--new-only", action="store_true",
                    help="drop ids listed in --known-ids")
    sp.add_argument("--known-ids", help="file of whitespace/comma separated ids")
    sp.add_argument("--any-index", action="store_true",
                    help="accept families of any index (default: index 1 only)")
    fmt(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("reproduce", help="rerun a published count or finite check")
    sp.add_argument("target", choices=TARGETS)
    sp.add_argument("--input")
    sp.add_argument("--input-format", choices=("csv", "json"))
    sp.add_argument("--output")
    sp.add_argument("--bmax", type=int, default=60)
    sp.add_argument("--kmin", type=int, default=3)
    sp.add_argument("--kmax", type=int, default=6)
    sp.add_argument("--nmax", type=int, default=12)
    sp.add_argument("--dmax", type=int, default=200)
    fmt(sp)
    sp.set_defaults(func=cmd_reproduce)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParseError, ValidationError, UsageError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        # BoundError and friends from bad numeric options
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
