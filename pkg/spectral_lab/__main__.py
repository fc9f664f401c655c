import csv
import io
import json
import os
import sys
import time
from argparse import ArgumentParser, ArgumentTypeError, Namespace
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Any, Dict, List, Optional, Sequence, Tuple

from spectral_lab import (
    CacheError,
    CheckpointError,
    DocumentNames,
    SpectralLabValueError,
    __version__,
    sanitize_doc,
    schema_validators,
)
from spectral_lab.documents.report_file import ReportFile
from spectral_lab.documents.run_config import RunConfig
from spectral_lab.documents.verification_report import BoundHit, VerificationReport
from spectral_lab.enumeration import (
    EnumShard,
    enumerate_connected,
    enumerate_graphs,
    shard_enumeration,
)
from spectral_lab.graphs import FamilyKind, gadget_catalog, graph6_encode
from spectral_lab.storage import Checkpoint, SpectrumCache
from spectral_lab.verify import (
    FAMILY_LEMMAS,
    bound_cases,
    bound_chains,
    chain_endpoints,
    family_rows,
    merge_verification_reports,
    summarize_family_rows,
    verify_configuration_lemmas,
    verify_order,
    verify_shard,
    verify_sign_claims,
    verify_table1,
)

__all__ = ["main"]

THREADS_ENV = "SPECTRAL_LAB_THREADS"

SIDES = {"neg": "negative", "pos": "positive", "p2": "p2_min"}

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

SECTIONS = ("counts", "violations", "minimizers", "equalities", "rows", "timing")


def parse_range(text: str) -> Tuple[int, int]:
    """``"a..b"`` or ``"a"`` as an inclusive integer range."""
    lo, sep, hi = text.partition("..")
    try:
        bounds = (int(lo), int(hi) if sep else int(lo))
    except ValueError:
        raise ArgumentTypeError(f"expected a..b or a single integer, got {text!r}")
    if bounds[0] > bounds[1]:
        raise ArgumentTypeError(f"empty range {text!r}")
    return bounds


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--n", type=parse_range, help="order range a..b")
    common.add_argument("--p", type=float, default=3.0, help="energy exponent")
    common.add_argument("--t", type=parse_range, help="t range for subdivided-star")
    common.add_argument("--shards", type=int, default=1, help="worker processes")
    common.add_argument(
        "--shard-depth", type=int, help="prefix order of a shard (default n - 3)"
    )
    common.add_argument("--checkpoint", help="resume file of finished shards")
    common.add_argument("--cache", help="append-only spectrum cache")
    common.add_argument("--output", help="report file (default stdout)")
    common.add_argument(
        "--format", choices=["json", "csv", "text"], default="json", dest="fmt"
    )
    common.add_argument("--solver", choices=["jacobi", "lapack"], default="jacobi")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--no-timing", action="store_true", help="omit timings")
    common.add_argument("--verbose", action="store_true", help="progress on stderr")

    parser = ArgumentParser(
        prog="spectral-lab",
        description="Verify p-energy bounds of connected graphs.",
    )
    parser.add_argument("-v", "--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)
    verify = commands.add_parser(
        "verify", parents=[common], help="exhaustive check of an energy claim"
    )
    verify.add_argument("--side", choices=sorted(SIDES), default="neg")
    commands.add_parser(
        "table1", parents=[common], help="recompute the small-graph spectrum table"
    )
    family = commands.add_parser(
        "family", parents=[common], help="check a family lemma"
    )
    family.add_argument(
        "kind", choices=[kind.value for kind in FAMILY_LEMMAS], help="the family"
    )
    commands.add_parser(
        "bounds",
        parents=[common],
        help="tabulated bound values, monotonicity chains and sign claims",
    )
    commands.add_parser(
        "configurations",
        parents=[common],
        help="random witnesses of the configuration lemmas",
    )
    enumerate_ = commands.add_parser(
        "enumerate", parents=[common], help="count isomorphism classes"
    )
    enumerate_.add_argument(
        "--all", action="store_true", dest="all_graphs", help="include disconnected"
    )
    commands.add_parser("gadgets", parents=[common], help="dump H_1..H_17 as graph6")
    return parser


def _threads(shards: int) -> int:
    override = os.environ.get(THREADS_ENV)
    if not override:
        return shards
    try:
        return int(override)
    except ValueError:
        raise SpectralLabValueError(
            f"{THREADS_ENV} must be an integer, got {override!r}"
        )


def run_config_from_args(args: Namespace, validate: bool = True) -> RunConfig:
    """
    Collect the parsed flags into a ``RunConfig``.

    Raises
    ------
    SpectralLabValueError
        If the ranges, the shard count or the exponent are out of bounds.
    """
    n_range = args.n
    t_range = args.t
    exponent = 2.0 if getattr(args, "side", None) == "p2" else float(args.p)
    shards = _threads(args.shards)
    if args.command in ("verify", "family", "enumerate") and n_range is None:
        raise SpectralLabValueError(f"{args.command} needs --n")
    if n_range is not None and n_range[0] < 1:
        raise SpectralLabValueError(f"orders start at 1, got {n_range[0]}")
    if shards < 1:
        raise SpectralLabValueError(f"need at least one shard, got {shards}")
    if exponent < 1:
        raise SpectralLabValueError(f"the exponent must be >= 1, got {exponent}")
    if args.shard_depth is not None and args.shard_depth < 1:
        raise SpectralLabValueError(
            f"--shard-depth must be >= 1, got {args.shard_depth}"
        )
    if args.samples < 1:
        raise SpectralLabValueError(f"--samples must be >= 1, got {args.samples}")
    config = RunConfig(
        command=args.command,
        side=getattr(args, "side", None),
        kind=getattr(args, "kind", None),
        n_lo=None if n_range is None else n_range[0],
        n_hi=None if n_range is None else n_range[1],
        t_lo=None if t_range is None else t_range[0],
        t_hi=None if t_range is None else t_range[1],
        exponent=exponent,
        shards=shards,
        shard_depth=args.shard_depth,
        solver=args.solver,
        seed=args.seed,
        samples=args.samples,
        all_graphs=bool(getattr(args, "all_graphs", False)),
        format=args.fmt,
        cache=args.cache,
        checkpoint=args.checkpoint,
        output=args.output,
        timing=not args.no_timing,
    )
    if validate:
        schema_validators[DocumentNames.run_config].validate(config)
    return config


def _shard_tasks(
    claim: str, n: int, depth: Optional[int]
) -> List[Tuple[str, int, Optional[EnumShard]]]:
    depth = max(1, n - 3) if depth is None else depth
    if n == 1 or n <= depth:
        return [(f"{claim}:{n}:all", n, None)]
    return [
        (f"{claim}:{n}:{shard.prefix}", n, shard)
        for shard in shard_enumeration(n, depth)
    ]


def _run_task(
    claim: str, n: int, shard: Optional[EnumShard], p: float, solver: str
) -> VerificationReport:
    if shard is None:
        return verify_order(claim, n, p, solver)  # type: ignore[arg-type]
    return verify_shard(claim, shard, p, solver)  # type: ignore[arg-type]


def run_verify(config: RunConfig, verbose: bool = False) -> VerificationReport:
    """
    Run one claim shard by shard, reusing shards found in the checkpoint.

    Workers only compute; this process alone writes the checkpoint.
    """
    claim = SIDES[config["side"] or "neg"]
    p = config["exponent"]
    assert config["n_lo"] is not None and config["n_hi"] is not None
    tasks = [
        task
        for n in range(config["n_lo"], config["n_hi"] + 1)
        for task in _shard_tasks(claim, n, config["shard_depth"])
    ]
    checkpoint = Checkpoint(config["checkpoint"]) if config["checkpoint"] else None
    reports: Dict[str, VerificationReport] = {}
    pending = []
    for shard_id, n, shard in tasks:
        stored = checkpoint.get(shard_id, p) if checkpoint is not None else None
        if stored is not None:
            reports[shard_id] = stored
        else:
            pending.append((shard_id, n, shard))

    def finished(shard_id: str, report: VerificationReport) -> None:
        reports[shard_id] = report
        if checkpoint is not None:
            checkpoint.record(shard_id, report)
        if verbose:
            print(
                f"{shard_id} done: {report['graphs_checked']} graphs "
                f"({len(reports)}/{len(tasks)})",
                file=sys.stderr,
            )

    if config["shards"] > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=config["shards"]) as executor:
            futures = {
                executor.submit(_run_task, claim, n, shard, p, config["solver"]): sid
                for sid, n, shard in pending
            }
            for future in as_completed(futures):
                finished(futures[future], future.result())
    else:
        for shard_id, n, shard in pending:
            finished(shard_id, _run_task(claim, n, shard, p, config["solver"]))
    return merge_verification_reports(reports[shard_id] for shard_id, _, _ in tasks)


def _report_file(
    config: RunConfig,
    ok: bool,
    report: Optional[VerificationReport] = None,
    rows: Sequence[Dict[str, Any]] = (),
    timing: Optional[Dict[str, float]] = None,
    validate: bool = True,
) -> ReportFile:
    doc = ReportFile(
        config=config,
        ok=ok,
        counts=dict(report["counts"]) if report else {},
        violations=list(report["violations"]) if report else [],
        minimizers=list(report["minimizers"]) if report else [],
        equalities=list(report["equalities"]) if report else [],
        rows=[dict(row) for row in rows],
        timing=dict(timing or {}) if config["timing"] else {},
    )
    doc = sanitize_doc(doc)  # type: ignore[assignment]
    if validate:
        schema_validators[DocumentNames.report_file].validate(doc)
    return doc


def _chain_rows(links) -> Tuple[List[Dict[str, Any]], List[BoundHit]]:
    summary: Dict[str, Dict[str, Any]] = {}
    failures: List[BoundHit] = []
    for link in links:
        row = summary.setdefault(
            link.name,
            {
                "chain": link.name,
                "links": 0,
                "min_difference": link.difference,
                "holds": True,
            },
        )
        row["links"] += 1
        row["min_difference"] = min(row["min_difference"], link.difference)
        row["holds"] = row["holds"] and link.holds
        if not link.holds:
            failures.append(
                BoundHit(
                    bound=link.name,
                    n=link.upper[0],
                    graph6=None,
                    value=link.difference,
                    margin=link.difference,
                    exceptional="none",
                )
            )
    return [summary[name] for name in sorted(summary)], failures


def execute(config: RunConfig, verbose: bool = False) -> ReportFile:
    """Run the configured command and assemble its report."""
    start = time.perf_counter()
    command = config["command"]
    cache = SpectrumCache(config["cache"]) if config["cache"] else None
    if command == "verify":
        report = run_verify(config, verbose)
        ok = not report["violations"]
        timing = {"checked": report["wall_time"]}
        doc_args: Dict[str, Any] = {"report": report}
    elif command == "table1":
        rows = verify_table1(config["solver"], cache)  # type: ignore[arg-type]
        ok = all(row["ok"] for row in rows)
        timing = {}
        doc_args = {"rows": rows}
    elif command == "family":
        kind = FamilyKind(config["kind"])
        assert config["n_lo"] is not None and config["n_hi"] is not None
        t_range = None if config["t_lo"] is None else (config["t_lo"], config["t_hi"])
        rows = family_rows(
            kind,
            config["n_lo"],
            config["n_hi"],
            t_range,  # type: ignore[arg-type]
            config["solver"],  # type: ignore[arg-type]
            cache,
        )
        report = summarize_family_rows(kind, rows, time.perf_counter() - start)
        ok = not report["violations"] and all(row["ok"] for row in rows)
        timing = {"checked": report["wall_time"]}
        doc_args = {"report": report, "rows": rows}
    elif command == "bounds":
        cases = bound_cases() + chain_endpoints(6, 20)
        claims = verify_sign_claims()
        chain_rows, failures = _chain_rows(bound_chains())
        ok = (
            all(case["ok"] for case in cases)
            and all(c["holds"] and c["anchor_ok"] is not False for c in claims)
            and not failures
        )
        timing = {}
        doc_args = {
            "rows": [*cases, *claims, *chain_rows],
            "report": {
                "counts": {},
                "violations": failures,
                "minimizers": [],
                "equalities": [],
            },
        }
    elif command == "configurations":
        report = verify_configuration_lemmas(
            config["seed"], config["samples"], solver=config["solver"]  # type: ignore
        )
        ok = not report["violations"]
        timing = {"checked": report["wall_time"]}
        doc_args = {"report": report}
    elif command == "enumerate":
        assert config["n_lo"] is not None and config["n_hi"] is not None
        rows = []
        for n in range(config["n_lo"], config["n_hi"] + 1):
            if config["all_graphs"]:
                count = enumerate_graphs(n, lambda g: None)
            else:
                count = enumerate_connected(n, lambda g: None)
            rows.append({"n": n, "classes": count})
        ok = True
        timing = {}
        doc_args = {"rows": rows}
    elif command == "gadgets":
        rows = [
            {"name": f"H_{index}", "n": g.n, "m": g.m, "graph6": graph6_encode(g)}
            for index, g in gadget_catalog().items()
        ]
        ok = True
        timing = {}
        doc_args = {"rows": rows}
    else:
        raise SpectralLabValueError(f"unknown command {command!r}")
    timing["total"] = time.perf_counter() - start
    return _report_file(config, ok, timing=timing, **doc_args)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _records(doc: ReportFile) -> List[Dict[str, Any]]:
    records: List[Dict[str, Any]] = []
    for n, count in doc["counts"].items():
        records.append({"section": "counts", "n": int(n), "count": count})
    for section in ("violations", "minimizers", "equalities"):
        records.extend({"section": section, **hit} for hit in doc[section])
    records.extend({"section": "rows", **row} for row in doc["rows"])
    records.extend(
        {"section": "timing", "phase": phase, "seconds": seconds}
        for phase, seconds in doc["timing"].items()
    )
    return records


def _columns(records: Sequence[Dict[str, Any]]) -> List[str]:
    columns = ["section"]
    for record in records:
        columns.extend(key for key in record if key not in columns)
    return columns


def render_json(doc: ReportFile) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_csv(doc: ReportFile) -> str:
    """One line per count, hit, row and timing, keyed by a ``section`` column."""
    records = _records(doc)
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=_columns(records), lineterminator="\n")
    writer.writeheader()
    for record in records:
        writer.writerow({key: _cell(value) for key, value in record.items()})
    return out.getvalue()


def render_text(doc: ReportFile) -> str:
    lines = [f"{doc['config']['command']}: {'ok' if doc['ok'] else 'FAILED'}"]
    records = _records(doc)
    for section in SECTIONS:
        chunk = [r for r in records if r["section"] == section]
        if not chunk:
            continue
        columns = [c for c in _columns(chunk) if c != "section"]
        table = [columns] + [[_cell(r.get(c)) for c in columns] for r in chunk]
        widths = [max(len(row[i]) for row in table) for i in range(len(columns))]
        lines.append("")
        lines.append(f"[{section}]")
        for row in table:
            cells = (cell.ljust(w) for cell, w in zip(row, widths))
            lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


RENDERERS = {"json": render_json, "csv": render_csv, "text": render_text}


def main(args=None) -> int:
    parser = build_parser()
    parsed = parser.parse_args(args)
    try:
        config = run_config_from_args(parsed)
    except SpectralLabValueError as err:
        parser.error(str(err))
    try:
        doc = execute(config, verbose=parsed.verbose)
        text = RENDERERS[config["format"]](doc)
        if config["output"]:
            with open(config["output"], "w") as f:
                f.write(text)
        else:
            sys.stdout.write(text)
    except (CacheError, CheckpointError, OSError) as err:
        print(f"spectral-lab: {err}", file=sys.stderr)
        return EXIT_USAGE
    except SpectralLabValueError as err:
        print(f"spectral-lab: {err}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if doc["ok"] else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
