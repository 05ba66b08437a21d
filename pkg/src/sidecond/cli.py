"""The ``sidecond`` command line.

Every command writes one canonical JSON document to stdout (``report``
writes a text table instead).  Exit status is 0 on success, 1 when a
validation, precondition or property check fails, and 2 for bad input:
unknown flags, unreadable or malformed documents, unknown model ids or
property ids.  Failures are also described on stderr as a JSON document
whose ``error`` field is the machine-readable code.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import documents as docs
from . import product_forcing as pf
from . import single_forcing as sf
from .errors import DocumentError, SideCondError, UnknownId, UnknownProperty, VacuousRun
from .universe import Universe, generate_universe_with_stats, validate_universe

INPUT_ERRORS = (DocumentError, UnknownId, UnknownProperty)


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sidecond",
        description="Validate, combine and property-check finite side-condition forcing objects.",
    )
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    c = sub.add_parser("validate-universe", help="check a universe document against the axioms")
    c.add_argument("universe", help="universe JSON file")

    c = sub.add_parser("gen-universe", help="generate a valid universe from a seed")
    c.add_argument("--seed", type=_nonneg, required=True)
    c.add_argument("--stats", action="store_true", help="also report attempts and rejections")

    c = sub.add_parser("validate-cond", help="check a condition (single or product) against its clauses")
    c.add_argument("cond", help="condition JSON file")
    c.add_argument("--universe", required=True)

    c = sub.add_parser("restrict", help="restrict a condition to a model")
    c.add_argument("--universe", required=True)
    c.add_argument("--cond", required=True)
    c.add_argument("--model", required=True)

    c = sub.add_parser("amalgamate", help="amalgamate w with r over a simple model")
    c.add_argument("--mode", choices=("countable", "uncountable", "product"), required=True)
    c.add_argument("--universe", required=True)
    c.add_argument("--r", required=True, help="the condition being extended")
    c.add_argument("--w", required=True, help="the extension of its restriction")
    c.add_argument("--model", required=True)

    c = sub.add_parser("project", help="read one coordinate of a product condition")
    c.add_argument("--universe", required=True)
    c.add_argument("--cond", required=True)
    c.add_argument("--index", type=_nonneg, required=True)

    for name, text in (("check", "run one property"), ("fuzz-all", "run every property")):
        c = sub.add_parser(name, help=text)
        if name == "check":
            c.add_argument("property", help="property id, e.g. P-6.15")
        c.add_argument("--seed", type=_nonneg, required=True)
        c.add_argument("--trials", type=_nonneg, default=500)
        if name == "check":
            c.add_argument("--floor", type=_nonneg, help="absolute premise-hit floor (default: pinned)")
        c.add_argument("--jobs", type=_positive, default=1)
        c.add_argument("--timing", action="store_true", help="include wall-clock times")
        c.add_argument("--no-shrink", action="store_true", help="report counterexamples unshrunk")

    c = sub.add_parser("report", help="render a JSON report as a text table")
    c.add_argument("report", help="report JSON file")
    return ap


# --------------------------------------------------------------------------
# loading


def _universe(path: str) -> Universe:
    return docs.universe_from_doc(docs.read_json(path))


def _model(u: Universe, mid: str, kind: str = "any") -> str:
    ok = {
        "any": u.is_countable(mid) or u.is_uncountable(mid),
        "countable": u.is_countable(mid),
        "uncountable": u.is_uncountable(mid),
    }[kind]
    if not ok:
        label = "" if kind == "any" else f"{kind} "
        raise UnknownId(f"--model: no {label}model {mid!r} in the universe", model=mid)
    return mid


def _cond(path: str, u: Universe):
    doc = docs.read_json(path)
    if docs.is_qcond_doc(doc):
        return docs.qcond_from_doc(doc, u)
    return docs.pcond_from_doc(doc, u)


def _single(path: str, u: Universe, flag: str) -> sf.PCondition:
    c = _cond(path, u)
    if not isinstance(c, sf.PCondition):
        raise DocumentError(f"{flag} {path}: expected a single-forcing condition", path=path)
    return c


def _product(path: str, u: Universe, flag: str) -> pf.QCondition:
    c = _cond(path, u)
    if not isinstance(c, pf.QCondition):
        raise DocumentError(f"{flag} {path}: expected a product condition", path=path)
    return c


def _violations(u: Universe, c) -> list:
    if isinstance(c, pf.QCondition):
        return pf.validate_q(u, c)
    return sf.validate_p(u, c)


def _require_valid(u: Universe, c, name: str) -> None:
    bad = _violations(u, c)
    if bad:
        raise CheckFailed(
            {"error": "InvalidCondition", "input": name, "violations": docs.violations_to_doc(bad)}
        )


class CheckFailed(Exception):
    """Carries the document to print for an exit-1 outcome."""

    def __init__(self, doc: dict):
        super().__init__(doc.get("error", "failed"))
        self.doc = doc


# --------------------------------------------------------------------------
# commands


def cmd_validate_universe(a) -> tuple[dict, int]:
    report = validate_universe(_universe(a.universe))
    return report.to_doc(), 0 if report.ok else 1


def cmd_gen_universe(a) -> tuple[dict, int]:
    u, stats = generate_universe_with_stats(a.seed)
    doc = docs.universe_to_doc(u)
    if a.stats:
        doc = {
            "universe": doc,
            "stats": {
                "seed": a.seed,
                "attempts": stats.attempts,
                "rejections": dict(sorted(stats.rejections.items())),
                "countables": len(u.countables),
                "uncountables": len(u.uncountables),
            },
        }
    return doc, 0


def cmd_validate_cond(a) -> tuple[dict, int]:
    u = _universe(a.universe)
    c = _cond(a.cond, u)
    bad = _violations(u, c)
    return {"valid": not bad, "violations": docs.violations_to_doc(bad)}, 0 if not bad else 1


def cmd_restrict(a) -> tuple[dict, int]:
    u = _universe(a.universe)
    c = _cond(a.cond, u)
    model = _model(u, a.model)
    _require_valid(u, c, "--cond")
    if isinstance(c, pf.QCondition):
        if not pf.in_d_class(u, c, model):
            raise CheckFailed({"error": "NotInDClass", "model": model})
        return docs.qcond_to_doc(u, pf.restrict_q(u, c, model)), 0
    return docs.pcond_to_doc(u, sf.restrict(u, c, model)), 0


def cmd_amalgamate(a) -> tuple[dict, int]:
    u = _universe(a.universe)
    if a.mode == "product":
        r, w = _product(a.r, u, "--r"), _product(a.w, u, "--w")
        model = _model(u, a.model)
        res = pf.oplus_q_traced(u, w, r, model)
        out = docs.qcond_to_doc(u, res.condition)
        return {"condition": out, "opened": list(res.normalized)}, 0
    r, w = _single(a.r, u, "--r"), _single(a.w, u, "--w")
    model = _model(u, a.model, a.mode)
    if a.mode == "countable":
        return docs.pcond_to_doc(u, sf.amalg_countable(u, w, r, model)), 0
    return docs.pcond_to_doc(u, sf.amalg_uncountable(u, w, r, model)), 0


def cmd_project(a) -> tuple[dict, int]:
    u = _universe(a.universe)
    q = _product(a.cond, u, "--cond")
    _require_valid(u, q, "--cond")
    return docs.pcond_to_doc(u, pf.project_coordinate(u, q, a.index)), 0


def _run(pids, a) -> tuple[dict, int]:
    from .harness.runner import environment, run_property

    results = []
    for pid in pids:
        try:
            out = run_property(
                pid, seed=a.seed, trials=a.trials, floor=getattr(a, "floor", None),
                jobs=a.jobs, shrink=not a.no_shrink,
            )
        except VacuousRun as exc:
            out = exc.outcome
        results.append(out.to_doc(timing=a.timing))
    doc = {
        "environment": environment(a.seed, a.trials),
        "results": results,
        "summary": {
            s: sum(1 for r in results if r["status"] == s) for s in ("pass", "fail", "vacuous")
        },
    }
    return doc, 0 if all(r["status"] == "pass" for r in results) else 1


def cmd_check(a) -> tuple[dict, int]:
    from .harness.runner import get_spec

    get_spec(a.property)
    return _run([a.property], a)


def cmd_fuzz_all(a) -> tuple[dict, int]:
    from .harness.catalog import property_ids

    return _run(property_ids(), a)


def render_report(doc) -> str:
    """A fixed-width table for a run report or an axiom report."""
    if isinstance(doc, dict) and "results" in doc:
        timing = any("elapsed" in r for r in doc["results"])
        head = ["property", "status", "trials", "hits", "floor", "failures"] + (["seconds"] if timing else [])
        rows = [
            [r["property"], r["status"], r["trials"], r["premiseHits"], r["floor"], r["failures"]]
            + ([r.get("elapsed", "")] if timing else [])
            for r in doc["results"]
        ]
        env = doc.get("environment", {})
        title = f"seed {env.get('seed')}  trials {env.get('trials')}  version {env.get('version')}"
    elif isinstance(doc, dict) and "entries" in doc:
        head = ["axiom", "passed", "witness"]
        rows = [
            [e["axiom"], "yes" if e["passed"] else "NO",
             "" if e["witness"] is None else json.dumps(e["witness"], sort_keys=True)]
            for e in doc["entries"]
        ]
        title = "universe valid" if doc.get("valid") else "universe INVALID"
    elif isinstance(doc, dict) and "violations" in doc:
        head = ["clause", "witness"]
        rows = [[v["clause"], json.dumps(v["witness"], sort_keys=True)] for v in doc["violations"]]
        title = "condition valid" if doc.get("valid") else "condition INVALID"
    else:
        raise DocumentError("not a run, axiom or condition report")
    cells = [head] + [[str(x) for x in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(head))]
    lines = [title, ""]
    for i, row in enumerate(cells):
        lines.append("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


COMMANDS = {
    "validate-universe": cmd_validate_universe,
    "gen-universe": cmd_gen_universe,
    "validate-cond": cmd_validate_cond,
    "restrict": cmd_restrict,
    "amalgamate": cmd_amalgamate,
    "project": cmd_project,
    "check": cmd_check,
    "fuzz-all": cmd_fuzz_all,
}


def _error_doc(exc: SideCondError) -> dict:
    return {
        "error": exc.code,
        "message": str(exc),
        "detail": json.loads(json.dumps(exc.detail, default=str, sort_keys=True)),
    }


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "report":
            sys.stdout.write(render_report(docs.read_json(args.report)))
            return 0
        doc, status = COMMANDS[args.command](args)
    except INPUT_ERRORS as exc:
        sys.stderr.write(docs.dumps(_error_doc(exc)))
        return 2
    except CheckFailed as exc:
        sys.stdout.write(docs.dumps(exc.doc))
        return 1
    except SideCondError as exc:
        sys.stderr.write(docs.dumps(_error_doc(exc)))
        return 1
    sys.stdout.write(docs.dumps(doc))
    return status


if __name__ == "__main__":
    sys.exit(main())
