"""Command-line front end.

Exit codes: 0 pass, 1 mathematical failure (with witness), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any

from .abelian import BoundExceeded, GroupMismatch, LIMITS
from .axioms import (
    is_derivation,
    is_jordan_biderivation,
    is_jordan_derivation,
    is_jordan_super_biderivation,
    is_jordan_superderivation,
    is_superderivation,
)
from .config import SCHEMA_VERSION, Config, ConfigError, MapSpec, load_config, resolve_map
from .enumeration import (
    enumerate_derivations,
    enumerate_jordan_biderivations,
    enumerate_jordan_super_biderivations,
    enumerate_jordan_superderivations,
    enumerate_superderivations,
)
from .finring import (
    TriangularRing,
    TrivialExtension,
    UpperTriangularRing,
    is_faithful,
    is_two_torsion,
    is_two_torsion_free,
)
from .graded import GradingError, grade, grade_triangular
from .maps import BiadditiveMap, graded_map, split_by_degree
from .structure import (
    PreconditionError,
    check_two_torsion_case,
    decompose_super_biderivation,
    decompose_triangular,
    decompose_trivial_ext,
    match_inner_degree1,
    transport,
    triangular_picture,
)
from .suite import DEFAULT_MATRIX, canonical_json, load_matrix, run_suite, without_timings

log = logging.getLogger("superjordan")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

AXIOMS = (
    "derivation",
    "jordan-derivation",
    "superderivation-deg0",
    "superderivation-deg1",
    "jordan-superderivation-deg0",
    "jordan-superderivation-deg1",
    "jordan-biderivation",
    "jordan-super-biderivation",
)

CLASSES = (
    "derivation",
    "jordan-derivation",
    "superderivation",
    "jordan-superderivation",
    "jordan-biderivation",
    "jordan-super-biderivation",
)


class InputError(Exception):
    pass


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _emit(args, report: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


def _images(obj) -> Any:
    if isinstance(obj, BiadditiveMap):
        return obj.array.tolist()
    return [list(r) for r in obj.images]


# ------------------------------------------------------------------ describe


def describe_ring(cfg: Config) -> dict:
    ring = cfg.ring.ring
    c = cfg.ring.construction
    G = grade(ring)
    out: dict[str, Any] = {
        "ring": ring.name,
        "order": ring.order,
        "carrier": list(ring.carrier.factors),
        "ring_axioms": ring.validate().to_json(),
        "even_part": len(G.even),
        "odd_part": len(G.odd),
        "grading": G.validate().to_json(),
        "two_torsion_free": is_two_torsion_free(ring),
    }
    if isinstance(c, TrivialExtension):
        out["module"] = {
            "name": c.module.name,
            "order": c.module.order,
            "two_torsion": is_two_torsion(c.module),
            "two_torsion_free": is_two_torsion_free(c.module),
            "faithful": list(is_faithful(c.module)),
        }
    tri = triangular_picture(c)
    if tri is not None:
        T = tri[0]
        out["triangular"] = {
            "left": T.R.name,
            "right": T.S.name,
            "module": T.M.name,
            "diagonal_two_torsion_free": is_two_torsion_free(T.R) and is_two_torsion_free(T.S),
            "faithful": list(is_faithful(T.M)),
        }
    return out


def cmd_describe(args) -> int:
    cfg = load_config(args.config)
    rep = describe_ring(cfg)
    lines = [
        f"ring        {rep['ring']}",
        f"order       {rep['order']}",
        f"ring axioms {'ok' if rep['ring_axioms']['passed'] else 'FAILED'}",
        f"|A0|={rep['even_part']}  |A1|={rep['odd_part']}",
        f"2-torsion free: {_yes(rep['two_torsion_free'])}",
    ]
    if "module" in rep:
        m = rep["module"]
        lines.append(f"module {m['name']} (order {m['order']}): 2-torsion: {_yes(m['two_torsion'])}, faithful: ({_yes(m['faithful'][0])},{_yes(m['faithful'][1])})")
    if "triangular" in rep:
        t = rep["triangular"]
        lines.append(f"triangular over {t['left']}, {t['right']} with corner {t['module']}")
        lines.append(f"diagonal 2-torsion free: {_yes(t['diagonal_two_torsion_free'])}, faithful: ({_yes(t['faithful'][0])},{_yes(t['faithful'][1])})")
    _emit(args, {"schema_version": SCHEMA_VERSION, "command": "describe", **rep}, lines)
    ok = rep["ring_axioms"]["passed"] and rep["grading"]["passed"]
    return EXIT_OK if ok else EXIT_FAIL


# ------------------------------------------------------------------ verify


def run_axiom(cfg: Config, parsed: MapSpec, axiom: str):
    ring = cfg.ring.ring
    if axiom not in AXIOMS:
        raise InputError(f"unknown axiom {axiom!r}; choose from {', '.join(AXIOMS)}")
    wants_bi = "biderivation" in axiom
    if wants_bi != parsed.biadditive:
        raise InputError(f"axiom {axiom} needs a {'biadditive' if wants_bi else 'additive'} map")
    if axiom == "derivation":
        return is_derivation(parsed.obj, ring)
    if axiom == "jordan-derivation":
        return is_jordan_derivation(parsed.obj, ring)
    if axiom == "jordan-biderivation":
        return is_jordan_biderivation(parsed.obj, ring)
    G = grade(ring)
    if axiom == "jordan-super-biderivation":
        return is_jordan_super_biderivation(parsed.obj, G)
    degree = int(axiom[-1])
    d = graded_map(parsed.obj, degree, G)
    return is_jordan_superderivation(d) if axiom.startswith("jordan") else is_superderivation(d)


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    parsed = resolve_map(cfg, args.map)
    try:
        v = run_axiom(cfg, parsed, args.axiom)
    except GradingError as exc:
        rep = {"axiom": args.axiom, "passed": False, "identity": "degree shift", "witness": [list(exc.witness)], "detail": str(exc)}
        _emit(args, {"schema_version": SCHEMA_VERSION, "command": "verify", "map": parsed.name, **rep}, [f"FAIL {args.axiom}: {exc}"])
        return EXIT_FAIL
    rep = {"schema_version": SCHEMA_VERSION, "command": "verify", "map": parsed.name, "axiom": args.axiom, **v.to_json()}
    line = f"PASS {args.axiom}" if v.ok else f"FAIL {args.axiom}: {v.identity} at {list(map(list, v.witness or ()))}"
    _emit(args, rep, [line])
    return EXIT_OK if v.ok else EXIT_FAIL


# ------------------------------------------------------------------ decompose


def _pair(cfg: Config, parsed_maps: list[MapSpec], G):
    if any(s.biadditive for s in parsed_maps):
        raise InputError("expected additive maps")
    if len(parsed_maps) == 1:
        return split_by_degree(parsed_maps[0].obj, G)
    if len(parsed_maps) == 2:
        d0, d1 = parsed_maps
        return graded_map(d0.obj, 0, G), graded_map(d1.obj, 1, G)
    raise InputError("give one map (split by degree) or two maps (degree 0 then degree 1)")


def _checks_text(title: str, log_json: list[dict]) -> list[str]:
    lines = [title]
    for c in log_json:
        mark = "ok  " if c["passed"] else "THEOREM VIOLATION"
        extra = f" witness {c['witness']}" if "witness" in c else ""
        lines.append(f"  {mark} {c['check']}{extra}")
    return lines


def cmd_decompose(args) -> int:
    cfg = load_config(args.config)
    parsed_maps = [resolve_map(cfg, m) for m in args.maps]
    c = cfg.ring.construction
    report: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "command": "decompose", "ring": cfg.ring.ring.name}
    lines: list[str] = []
    try:
        if isinstance(c, TrivialExtension) and len(parsed_maps) == 1 and parsed_maps[0].biadditive:
            dec = decompose_super_biderivation(c, parsed_maps[0].obj)
            report.update(claim="super-biderivation decomposition", **dec.to_json())
            lines += _checks_text("super-biderivation decomposition", report["checks"])
            ok = dec.ok
        elif isinstance(c, TrivialExtension):
            G = grade(cfg.ring.ring)
            d0, d1 = _pair(cfg, parsed_maps, G)
            dec = decompose_trivial_ext(c, d0, d1)
            torsion = check_two_torsion_case(c, dec)
            report.update(claim="trivial-extension classification", **dec.to_json(), odd_part=torsion.to_json())
            lines += _checks_text("trivial-extension decomposition", report["checks"])
            lines.append(f"odd part Jordan derivation: {_yes(torsion.d1_jordan.ok)}; doubled symmetry vanishes: {_yes(torsion.condition.ok)}")
            ok = dec.ok and torsion.ok
        elif isinstance(c, (TriangularRing, UpperTriangularRing)) and triangular_picture(c) is not None:
            T, fwd, inv = triangular_picture(c)
            G = grade(cfg.ring.ring)
            d0, d1 = _pair(cfg, parsed_maps, G)
            GT = grade_triangular(T)
            m0, m1 = transport(d0, fwd, inv, GT), transport(d1, fwd, inv, GT)
            dec = decompose_triangular(T, m0, m1)
            elem, inner = match_inner_degree1(T, m1, dec)
            report.update(claim="triangular decomposition", **dec.to_json())
            report["inner_element"] = list(inv(elem).coords)
            report["odd_part_inner"] = inner.to_json()
            lines += _checks_text("triangular decomposition", dec.checks.to_json())
            lines += _checks_text("via the trivial-extension picture", dec.trivial.checks.to_json())
            lines.append(f"corner element m* = {list(dec.corner_element.coords)}")
            lines.append(f"odd part inner: {_yes(inner.ok)}")
            ok = dec.ok and inner.ok
        else:
            raise InputError(f"{cfg.ring.ring.name} is not a trivial extension or triangular ring")
    except PreconditionError as exc:
        report.update(passed=False, precondition=str(exc))
        if exc.verdict is not None:
            report["verdict"] = exc.verdict.to_json()
        _emit(args, report, [f"refused: {exc}"] + ([f"  {exc.verdict.identity} at {exc.verdict.witness}"] if exc.verdict else []))
        return EXIT_FAIL
    report["passed"] = ok
    _emit(args, report, lines)
    return EXIT_OK if ok else EXIT_FAIL


# ------------------------------------------------------------------ enumerate


def cmd_enumerate(args) -> int:
    cfg = load_config(args.config)
    ring = cfg.ring.ring
    G = grade(ring)
    kw = dict(workers=args.workers, bound=args.bound, sample=args.sample, seed=args.seed)
    degrees = [args.degree] if args.degree is not None else [0, 1]
    runs = []
    if args.cls in ("derivation", "jordan-derivation"):
        runs.append((args.cls, enumerate_derivations(ring, jordan=args.cls == "jordan-derivation", **kw)))
    elif args.cls == "jordan-biderivation":
        runs.append((args.cls, enumerate_jordan_biderivations(ring, **kw)))
    elif args.cls == "jordan-super-biderivation":
        runs.append((args.cls, enumerate_jordan_super_biderivations(G, **kw)))
    else:
        fn = enumerate_jordan_superderivations if args.cls == "jordan-superderivation" else enumerate_superderivations
        for deg in degrees:
            runs.append((f"{args.cls}-deg{deg}", fn(G, deg, **kw)))
    report: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "command": "enumerate",
        "ring": ring.name,
        "exploratory": args.sample is not None,
        "results": [],
    }
    lines = []
    for name, found in runs:
        item: dict[str, Any] = {"class": name, "candidates": found.candidates, "count": len(found), "maps": [_images(m.map if hasattr(m, "map") else m) for m in found]}
        if args.sample is not None:
            item["sampled"] = min(args.sample, found.candidates)
        # exploratory search: Jordan-type survivors that fail the ordinary identity
        if name.startswith("jordan-superderivation"):
            bad = [d for d in found if not is_superderivation(d)]
            item["not_superderivations"] = [_images(d.map) for d in bad]
        elif name == "jordan-derivation":
            bad = [d for d in found if not is_derivation(d, ring)]
            item["not_derivations"] = [_images(d) for d in bad]
        report["results"].append(item)
        tested = f"{item['sampled']} sampled of {found.candidates}" if args.sample is not None else f"{found.candidates} candidates"
        lines.append(f"{name}: {len(found)} survivors ({tested})")
        for key in ("not_superderivations", "not_derivations"):
            if key in item:
                lines.append(f"  {len(item[key])} {key.replace('_', ' ')}")
    _emit(args, report, lines)
    return EXIT_OK


# ------------------------------------------------------------------ suite


def cmd_suite(args) -> int:
    entries = DEFAULT_MATRIX if args.matrix == "default" else load_matrix(args.matrix)
    report = run_suite(entries, workers=args.workers, bound=args.bound, mutations=args.mutations, seed=args.seed)
    if args.no_timings:
        report = without_timings(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    if args.format == "json":
        print(canonical_json(report) if args.no_timings else json.dumps(report, indent=2, sort_keys=True))
    else:
        for c in report["criteria"]:
            status = "PASS" if c["passed"] else "FAIL"
            print(f"[{status}] {c['id']}. {c['claim']} ({c['violations']} violations)")
            for f in c["failures"][:3]:
                print(f"    {f['entry']}: {f['check']}" + (f" witness {f['witness']}" if "witness" in f else ""))
        for name, e in report["entries"].items():
            for n in e["notices"]:
                print(f"notice: {name}: {n}")
    return EXIT_OK if report["passed"] else EXIT_FAIL


# ------------------------------------------------------------------ entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--workers", type=int, default=1, help="threads for enumeration (output does not depend on this)")
    common.add_argument("--bound", type=int, default=None, help=f"candidate bound (default {LIMITS.candidates})")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="superjordan", description="Jordan superderivations on small finite rings")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("describe", parents=[common], help="orders, grading parts, torsion and faithfulness flags")
    s.add_argument("config")
    s.set_defaults(func=cmd_describe)

    s = sub.add_parser("verify", parents=[common], help="check one map against one identity")
    s.add_argument("config")
    s.add_argument("map", help="map name from the config, or a path to a map document")
    s.add_argument("--axiom", required=True, help=", ".join(AXIOMS))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("decompose", parents=[common], help="split a map into components and re-verify every property")
    s.add_argument("config")
    s.add_argument("maps", nargs="+")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("enumerate", parents=[common], help="list every map of a class")
    s.add_argument("config")
    s.add_argument("--class", dest="cls", choices=CLASSES, required=True)
    s.add_argument("--degree", type=int, choices=(0, 1))
    s.add_argument("--sample", type=int, help="exploratory mode: test this many random candidates instead of all")
    s.add_argument("--seed", type=int, default=0, help="seed for --sample")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("suite", parents=[common], help="run the acceptance matrix")
    s.add_argument("--matrix", default="default", help="'default' or a path to a matrix document")
    s.add_argument("--mutations", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--output", help="also write the full JSON report here")
    s.add_argument("--no-timings", action="store_true", help="omit the timings block")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    if args.workers < 1:
        parser.error("--workers must be at least 1")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, GroupMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BoundExceeded as exc:
        print(f"error: {exc} (raise --bound or use --sample)", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
