"""Batch front end: analyze ring/algebra specs and replay bundled examples.

Exit codes: 0 success, 1 input error, 2 enumeration budget exceeded,
3 verification mismatch.  All reports are JSON-serializable dictionaries
with a stable field order; the human-readable output is rendered from the
same dictionary, and timing goes to stderr so byte-level determinism of the
reports is preserved.
"""

from __future__ import annotations

import argparse
import difflib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

from . import cover as cover_mod
from . import depth as depth_mod
from . import divisors as div_mod
from . import findim as fd
from . import smash as smash_mod
from .cones import from_ring_spec, divisor_from_spec
from .errors import BudgetExceeded, GormodError, ParseError

FIXTURE_ORDER = ["quadric", "veronese6", "third11", "francia", "char2", "qx2"]


def _element_json(g):
    return {"torsion": list(g.torsion), "free": list(g.free)}


def analyze_ring(spec: dict, with_cover: bool = False,
                 depth_divisors=(), box: int | None = None,
                 hilbert_budget: int | None = None) -> dict:
    monoid = from_ring_spec(spec)
    if hilbert_budget is not None:
        monoid.hilbert_basis(budget=hilbert_budget)
    group, _ = monoid.class_group()
    K = monoid.canonical_divisor()
    k_class = monoid.divisor_class(K)
    order = k_class.order()
    flag, index = div_mod.is_q_gorenstein(monoid)
    gm_flag, witness = div_mod.gm_exists(monoid)
    report = {
        "ring": spec,
        "class_group": group.describe(),
        "canonical_class": {
            "coeffs": list(K.coeffs),
            "class": _element_json(k_class),
            "order": order if order is not None else "infinite",
        },
        "q_gorenstein": {"flag": flag, "index": index},
        "gm_exists": {
            "flag": gm_flag,
            "witness_classes": [_element_json(monoid.divisor_class(D))
                                for D in witness.summands] if gm_flag else None,
        },
    }
    if with_cover:
        cov = cover_mod.build_cover(monoid)
        cocycle_ok, _ = cover_mod.check_cocycle(cov)
        strongly = cover_mod.check_strong_grading(cov, box)
        cm = cover_mod.cover_as_monoid(cov)
        report["cover"] = {
            "index": cov.index,
            "m_q": list(cov.m_q),
            "gorenstein": cover_mod.is_gorenstein_cover(cov),
            "strongly_graded": strongly,
            "cocycle_ok": cocycle_ok,
            "cover_monoid": cm.monoid.ring_spec(),
        }
    if depth_divisors:
        report["depth"] = []
        for dspec in depth_divisors:
            D = divisor_from_spec(monoid, dspec)
            report["depth"].append(depth_mod.depth_report(monoid, D))
    return report


def analyze_algebra(spec: dict, with_smash: bool = False,
                    skew_zeta=None, cutoff: int = fd.RESOLUTION_CUTOFF) -> dict:
    A = fd.algebra_from_spec(spec)
    problems = fd.validate(A)
    report = {
        "algebra": {
            "field_char": A.field.char,
            "modulus": A.modulus,
            "dimension": A.dim,
        },
        "valid": not problems,
        "violations": problems,
    }
    if problems:
        return report
    report["gl_dim"] = fd.gl_dim(A, cutoff).render()
    report["inj_dim_self"] = fd.inj_dim_self(A, cutoff).render()
    if with_smash:
        transfer = fd.verify_homological_transfer(A, cutoff)
        report["smash"] = {
            "gl_dim": transfer["cover_gl_dim"].render(),
            "inj_dim_self": transfer["cover_inj_dim"].render(),
            "strict_gl_drop": transfer["strict_gl_drop"],
            "modulus_invertible": transfer["coprime"],
        }
        end_report = smash_mod.graded_end(A)
        report["graded_end_agrees"] = end_report["agrees"]
    if skew_zeta is not None:
        _, skew_report = smash_mod.skew_group_ring(A, skew_zeta)
        report["skew"] = {
            "zeta": str(skew_zeta),
            "verified": skew_report["verified"],
            "vandermonde_nonzero": skew_report["vandermonde_nonzero"],
        }
    return report


# ------------------------------------------------------------- fixtures


def _fixture_text(name: str) -> str:
    return resources.files("gormod").joinpath(f"fixtures/{name}").read_text()


def load_fixture_spec(name: str) -> dict:
    return json.loads(_fixture_text(f"{name}.json"))


def run_fixture(name: str) -> dict:
    spec = load_fixture_spec(name)
    if name in ("quadric", "veronese6", "third11"):
        return analyze_ring(spec, with_cover=True)
    if name == "francia":
        return analyze_ring(spec, with_cover=False)
    if name in ("char2", "qx2"):
        return analyze_algebra(spec, with_smash=True)
    raise ParseError(f"unknown fixture {name}")


def paper_examples_report(threads: int = 1) -> dict:
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_fixture, FIXTURE_ORDER))
        pairs = zip(FIXTURE_ORDER, results)
    else:
        pairs = ((name, run_fixture(name)) for name in FIXTURE_ORDER)
    return {"fixtures": [{"name": name, "report": rep} for name, rep in pairs]}


def _golden_text(name: str, golden_dir: str | None) -> str:
    if golden_dir is not None:
        from pathlib import Path
        return (Path(golden_dir) / f"{name}.golden.json").read_text()
    return _fixture_text(f"golden/{name}.golden.json")


def compare_with_golden(report: dict, golden_dir: str | None):
    """Yields (name, diff-lines) for every fixture that deviates."""
    for entry in report["fixtures"]:
        name = entry["name"]
        got = json.dumps(entry["report"], indent=2) + "\n"
        want = _golden_text(name, golden_dir)
        if got != want:
            diff = difflib.unified_diff(
                want.splitlines(keepends=True), got.splitlines(keepends=True),
                fromfile=f"{name}.golden.json", tofile=f"{name}.computed")
            yield name, "".join(diff)


# ------------------------------------------------------------- rendering


def render_human(report: dict, indent: int = 0) -> str:
    """Plain-text rendering of a JSON report (the JSON stays authoritative)."""
    lines = []
    pad = "  " * indent
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_human(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(render_human(item, indent + 1))
                lines.append(f"{pad}  -")
        else:
            lines.append(f"{pad}{key}: {json.dumps(value)}")
    return "\n".join(line for line in lines if line)


def _emit(report: dict, as_json: bool):
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        print(render_human(report))


# ------------------------------------------------------------------ main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gormod",
        description="Exact divisor-class, cover, and depth analyses for "
                    "affine monoid rings and finite-dimensional graded "
                    "algebras.")
    parser.add_argument("--json", action="store_true",
                        help="emit the JSON report instead of text")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for independent analyses")
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="analyze a ring spec")
    p_an.add_argument("ring", help="path to a ring spec JSON file")
    p_an.add_argument("--cover", action="store_true",
                      help="build and verify the cyclic cover")
    p_an.add_argument("--depth", action="append", default=[],
                      metavar="DIVISOR_JSON",
                      help="depth report for a divisor spec file (repeatable)")
    p_an.add_argument("--box", type=int, default=None,
                      help="override the enumeration box")
    p_an.add_argument("--hilbert-budget", type=int, default=None,
                      help="cap on generator enumeration size")

    p_fd = sub.add_parser("findim", help="analyze an algebra spec")
    p_fd.add_argument("algebra", help="path to an algebra spec JSON file")
    p_fd.add_argument("--smash", action="store_true",
                      help="also analyze the cyclic-group cover")
    p_fd.add_argument("--skew", default=None, metavar="ZETA",
                      help="verify the twisted group-algebra comparison "
                           "at this root of unity")

    p_px = sub.add_parser("paper-examples",
                          help="replay the bundled example suite against "
                               "golden reports")
    p_px.add_argument("--list", action="store_true", dest="list_only",
                      help="list fixture names and exit")
    p_px.add_argument("--golden-dir", default=None,
                      help="compare against golden files in this directory "
                           "instead of the bundled ones")
    p_px.add_argument("--write-golden", default=None, metavar="DIR",
                      help="write computed reports as golden files into DIR")
    return parser


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _parse_zeta(text: str):
    from fractions import Fraction
    try:
        return int(text)
    except ValueError:
        return Fraction(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        if args.command == "analyze":
            spec = _read_json(args.ring)
            depth_specs = [_read_json(p) for p in args.depth]
            report = analyze_ring(spec, with_cover=args.cover,
                                  depth_divisors=depth_specs, box=args.box,
                                  hilbert_budget=args.hilbert_budget)
            _emit(report, args.json)
        elif args.command == "findim":
            spec = _read_json(args.algebra)
            zeta = _parse_zeta(args.skew) if args.skew is not None else None
            report = analyze_algebra(spec, with_smash=args.smash,
                                     skew_zeta=zeta)
            _emit(report, args.json)
        elif args.command == "paper-examples":
            if args.list_only:
                for name in FIXTURE_ORDER:
                    print(name)
                return 0
            report = paper_examples_report(threads=max(args.threads, 1))
            if args.write_golden is not None:
                from pathlib import Path
                outdir = Path(args.write_golden)
                outdir.mkdir(parents=True, exist_ok=True)
                for entry in report["fixtures"]:
                    path = outdir / f"{entry['name']}.golden.json"
                    path.write_text(json.dumps(entry["report"], indent=2)
                                    + "\n")
                print(f"wrote {len(report['fixtures'])} golden files",
                      file=sys.stderr)
                return 0
            mismatches = list(compare_with_golden(report, args.golden_dir))
            _emit(report, args.json)
            if mismatches:
                for name, diff in mismatches:
                    print(f"fixture {name} deviates from golden:",
                          file=sys.stderr)
                    print(diff, file=sys.stderr)
                return 3
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except GormodError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    finally:
        elapsed = time.monotonic() - started
        print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
