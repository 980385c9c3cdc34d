"""Command-line front end.

Exit codes: 0 success (or the verified statement holds), 1 I/O error,
2 parse error, 3 poset not ranked, 4 domain or precondition error,
5 the verified statement fails.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import serialize
from .complexes import PolyMap, dual_map, face_poset_of_map, face_poset_of_simplicial
from .curvature import KINDS, full_report, is_sufficiently_covered, r1, ric
from .ensembles import ensemble_poset, random_map
from .errors import NotAlmostPolyhedral, NotRanked, ParameterOutOfRange, RicciPosetError
from .fixtures import FIXTURE_NAMES, Window, load_fixture
from .invariants import (
    is_almost_polyhedral,
    is_polyhedral_map_poset,
    negativity_criterion,
    orientable,
    positive_average_check,
    ranked_euler_char,
    verify_gauss_bonnet,
    verify_gauss_bonnet_ric,
    verify_stone_gauss_bonnet,
)
from .poset import Poset, f_vector, rank_level, verify_counting_identities
from .serialize import ParseError

EXIT_OK, EXIT_IO, EXIT_PARSE, EXIT_NOT_RANKED, EXIT_DOMAIN, EXIT_FAILS = range(6)

THEOREMS = ("gb", "gb-ric", "gb-stone", "identities", "positive-average", "negativity")
ENSEMBLE_THEOREMS = ("positive-average", "lemma-r1-ric", "gb", "identities")


class UsageError(RicciPosetError):
    pass


@dataclass
class Loaded:
    poset: Poset
    polymap: PolyMap | None = None
    window: Window | None = None


def load_input(args) -> Loaded:
    if args.fixture:
        try:
            obj = load_fixture(args.fixture)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
    else:
        text = Path(args.input).read_text(encoding="utf-8")
        obj = {
            "poset": serialize.poset_from_json,
            "map": serialize.map_from_json,
            "simplicial": serialize.simplicial_from_json,
        }[args.format](text)
    if isinstance(obj, PolyMap):
        return Loaded(face_poset_of_map(obj), polymap=obj)
    if isinstance(obj, Window):
        return Loaded(obj.poset, window=obj)
    if isinstance(obj, Poset):
        return Loaded(obj)
    return Loaded(face_poset_of_simplicial(obj))


def _require_map(loaded: Loaded) -> PolyMap:
    if loaded.polymap is None:
        raise UsageError("this command needs a polygonal map (--format map or a map fixture)")
    return loaded.polymap


def _emit(args, payload, csv_rows=None) -> None:
    if args.emit == "csv":
        text = csv_rows if isinstance(csv_rows, str) else serialize.records_to_csv(csv_rows or [payload])
    else:
        text = serialize.dumps(payload)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------


def cmd_rank(args) -> int:
    loaded = load_input(args)
    p = loaded.poset
    try:
        rf = p.rank_function
    except NotRanked as exc:
        _emit(args, {"ranked": False, "witness": exc.witness, "message": str(exc)})
        return EXIT_NOT_RANKED
    _emit(args, {"ranked": True, "rank": rf.r, "f_vector": f_vector(p, rf)})
    return EXIT_OK


def cmd_curvature(args) -> int:
    loaded = load_input(args)
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    unknown = [k for k in kinds if k not in KINDS]
    if unknown:
        raise UsageError(f"unknown kinds {unknown}; choose from {', '.join(KINDS)}")
    report = full_report(loaded.poset, kinds)
    if loaded.window is not None:
        # truncated windows: only interior values mean anything
        interior = loaded.window.interior
        report.values = {k: {x: v for x, v in vals.items() if x in interior} for k, vals in report.values.items()}
        report.aggregates = {}
        report.verdicts = {f"all_negative_{k}": all(v < 0 for v in vals.values()) for k, vals in report.values.items()}
    payload = serialize.report_to_json(report)
    if loaded.window is not None:
        payload["designated"] = dict(loaded.window.designated)
    _emit(args, payload, serialize.report_to_csv(report))
    return EXIT_OK


def _verification_payload(v) -> dict:
    return {
        "theorem": v.theorem,
        "lhs": v.lhs,
        "rhs": v.rhs,
        "holds": v.holds,
        "witnesses": v.witnesses,
        **({"details": v.details} if v.details else {}),
    }


def cmd_verify(args) -> int:
    loaded = load_input(args)
    p = loaded.poset
    theorem = args.theorem
    if theorem == "gb":
        payload = _verification_payload(verify_gauss_bonnet(p))
    elif theorem == "gb-ric":
        try:
            payload = _verification_payload(verify_gauss_bonnet_ric(p))
        except NotAlmostPolyhedral as exc:
            _emit(args, {"theorem": "gb-ric", "error": "NotAlmostPolyhedral", "witnesses": exc.witnesses})
            return EXIT_DOMAIN
    elif theorem == "gb-stone":
        payload = _verification_payload(verify_stone_gauss_bonnet(_require_map(loaded)))
    elif theorem == "identities":
        checks = []
        for i in range(p.rank_function.r + 1):
            for c in verify_counting_identities(p, None, i):
                checks.append({"rank": i, "identity": c.name, "lhs": c.lhs, "rhs": c.rhs, "holds": c.holds})
        payload = {"theorem": "identities", "holds": all(c["holds"] for c in checks), "checks": checks}
    elif theorem == "positive-average":
        rec = positive_average_check(p)
        payload = {
            "theorem": "positive-average",
            "sufficiently_covered": rec.sufficiently_covered,
            "mean_r1": rec.mean_r1,
            "mean_r1_positive": rec.mean_r1 > 0,
            "euler": rec.euler,
            "euler_positive": rec.euler > 0,
            "holds": rec.holds and rec.ric_holds,
            "ric_form": {"applicable": rec.ric_applicable, "mean_ric": rec.mean_ric, "holds": rec.ric_holds},
        }
    else:
        rec = negativity_criterion(_require_map(loaded))
        payload = {
            "theorem": "negativity",
            "all_negative": rec.all_negative,
            "min_face": rec.min_face,
            "iff": rec.iff_holds,
            "holds": rec.iff_holds,
        }
    _emit(args, payload)
    return EXIT_OK if payload["holds"] else EXIT_FAILS


def cmd_classify(args) -> int:
    loaded = load_input(args)
    p = loaded.poset
    out: dict = {"covering_finite": {"verdict": p.is_covering_finite(), "witnesses": []}}
    try:
        rf = p.rank_function
        out["ranked"] = {"verdict": True, "rank": rf.r, "witnesses": []}
    except NotRanked as exc:
        out["ranked"] = {"verdict": False, "witnesses": [exc.witness]}
        _emit(args, out)
        return EXIT_OK
    if rf.r == 2 and rank_level(p, 1):
        cov = is_sufficiently_covered(p)
        out["sufficiently_covered"] = {"verdict": cov.holds, "lhs": cov.lhs, "witnesses": []}
        for result in (is_almost_polyhedral(p), is_polyhedral_map_poset(p)):
            out[result.predicate] = {"verdict": result.verdict, "witnesses": result.witnesses}
    if loaded.polymap is not None:
        out["orientable"] = {"verdict": orientable(loaded.polymap), "witnesses": []}
        out["euler_characteristic"] = loaded.polymap.euler_characteristic()
    _emit(args, out, [{k: (v["verdict"] if isinstance(v, dict) else v) for k, v in out.items()}])
    return EXIT_OK


def run_ensemble(theorem: str, n: int, seed: int, n0: int = 8, n1: int = 8, n2: int = 8, flips: int = 30) -> dict:
    """Run ``n`` seeded random instances through one verifier and summarise."""
    if n < 1:
        raise ParameterOutOfRange("--n must be >= 1")
    if theorem not in ENSEMBLE_THEOREMS:
        raise UsageError(f"unknown ensemble theorem {theorem!r}")
    failures: list[int] = []
    qualifying = 0
    means: list[Fraction] = []
    eulers: list[int] = []
    checked = 0
    for i in range(n):
        if theorem == "lemma-r1-ric":
            m = random_map(seed * 1_000_003 + i, flips=flips)
            p = face_poset_of_map(m)
            edges = rank_level(p, 1)
            checked += len(edges)
            qualifying += 1
            if any(r1(p, e) != ric(p, e) for e in edges):
                failures.append(i)
            continue
        p = ensemble_poset(seed, i, n0, n1, n2)
        if theorem == "positive-average":
            rec = positive_average_check(p)
            if rec.qualifies:
                qualifying += 1
                means.append(rec.mean_r1)
                eulers.append(rec.euler)
            if not rec.holds:
                failures.append(i)
        elif theorem == "gb":
            qualifying += 1
            eulers.append(ranked_euler_char(p))
            if not verify_gauss_bonnet(p).holds:
                failures.append(i)
        else:
            qualifying += 1
            if not all(c.holds for j in range(3) for c in verify_counting_identities(p, None, j)):
                failures.append(i)
    summary = {
        "theorem": theorem,
        "seed": seed,
        "instances": n,
        "qualifying": qualifying,
        "counterexamples": len(failures),
        "counterexample_indices": failures[:20],
    }
    if theorem == "lemma-r1-ric":
        summary["edges_checked"] = checked
    if means:
        summary["min_mean_r1"], summary["max_mean_r1"] = min(means), max(means)
    if eulers:
        summary["min_euler"], summary["max_euler"] = min(eulers), max(eulers)
    return summary


def cmd_ensemble(args) -> int:
    summary = run_ensemble(args.theorem, args.n, args.seed, args.n0, args.n1, args.n2, args.flips)
    _emit(args, summary)
    return EXIT_OK if summary["counterexamples"] == 0 else EXIT_FAILS


def cmd_dual(args) -> int:
    loaded = load_input(args)
    _emit(args, dual_map(_require_map(loaded)).to_json())
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _add_io(sub: argparse.ArgumentParser, needs_input: bool = True) -> None:
    if needs_input:
        src = sub.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", metavar="PATH", help="JSON input file")
        src.add_argument("--fixture", metavar="NAME", help=f"built-in fixture: {' | '.join(FIXTURE_NAMES)}")
        sub.add_argument("--format", choices=("poset", "map", "simplicial"), default="poset",
                         help="schema of --input (default: poset)")
    sub.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    sub.add_argument("--emit", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ricciposet", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("rank", help="rank function and f-vector")
    _add_io(sp)
    sp.set_defaults(func=cmd_rank)

    sp = subs.add_parser("curvature", help="per-element curvature report")
    _add_io(sp)
    sp.add_argument("--kinds", default="r0,r1,r2", help=f"comma-separated subset of {','.join(KINDS)}")
    sp.set_defaults(func=cmd_curvature)

    sp = subs.add_parser("verify", help="check one identity or theorem")
    _add_io(sp)
    sp.add_argument("--theorem", choices=THEOREMS, required=True)
    sp.set_defaults(func=cmd_verify)

    sp = subs.add_parser("classify", help="run every structural predicate")
    _add_io(sp)
    sp.set_defaults(func=cmd_classify)

    sp = subs.add_parser("ensemble", help="batch-verify a theorem on seeded random instances")
    _add_io(sp, needs_input=False)
    sp.add_argument("--theorem", choices=ENSEMBLE_THEOREMS, required=True)
    sp.add_argument("--n", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--n0", type=int, default=8, help="max rank-0 level size")
    sp.add_argument("--n1", type=int, default=8, help="max rank-1 level size")
    sp.add_argument("--n2", type=int, default=8, help="max rank-2 level size")
    sp.add_argument("--flips", type=int, default=30, help="edge flips per random map")
    sp.set_defaults(func=cmd_ensemble)

    sp = subs.add_parser("dual", help="dual of a polygonal map")
    _add_io(sp)
    sp.set_defaults(func=cmd_dual)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotRanked as exc:
        print(f"error: {exc} (witness: {exc.witness})", file=sys.stderr)
        return EXIT_NOT_RANKED
    except RicciPosetError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
