from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path
from typing import Any

from characterize.ops import run_battery, run_family_battery
from core.errors import HypothesisFailed, NoDefaultSelection, SepSysError
from core.ops import SeparationSystem, is_tree_set
from generators.families import family
from generators.registry import fixture_selection, is_family, named_fixture
from inverse.ops import inverse_limit, phi, selection_point, verify_limit_tree_set
from orientations.ops import all_consistent_orientations, splitting_stars
from quotient.ops import is_branch_closed, quotient
from represent.ops import GROUND_KINDS, represent
from sepsys_contracts.documents import ParsedDocument, load_document, serialize_system
from treesets.config import load_limits, set_limits

_SELECTION_TOKEN = re.compile(r"\([^()]*\)|[^,\s]+")


def _fmt_set(items: Any) -> str:
    return "{" + ", ".join(sorted(items)) + "}"


def parse_selection(raw: str) -> list[str]:
    return _SELECTION_TOKEN.findall(raw)


def _is_document(target: str) -> bool:
    path = Path(target)
    return path.suffix in {".yaml", ".yml", ".sepsys"} or path.is_file()


def _load(target: str) -> ParsedDocument | SeparationSystem:
    if _is_document(target):
        return load_document(Path(target))
    return named_fixture(target)


def _load_system(target: str) -> SeparationSystem:
    loaded = _load(target)
    if isinstance(loaded, ParsedDocument):
        if loaded.system is None:
            raise SepSysError(f"{target} holds an inverse system; this command needs a single system")
        return loaded.system
    return loaded


def _emit(args: argparse.Namespace, payload: Any, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(lines))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Finite separation systems and tree sets")
    parser.add_argument("--json", action="store_true", help="Emit machine-readable JSON")
    parser.add_argument("--verbose", action="store_true", help="Log debug output to stderr")
    parser.add_argument("--limits", type=Path, default=None, help="Alternate limits YAML file")

    subparsers = parser.add_subparsers(dest="command", required=True)

    validate = subparsers.add_parser("validate", help="Validate a document or fixture and report tree-set status")
    validate.add_argument("target")

    orientations = subparsers.add_parser("orientations", help="List consistent orientations")
    orientations.add_argument("target")

    stars = subparsers.add_parser("stars", help="List splitting stars")
    stars.add_argument("target")

    quotient_cmd = subparsers.add_parser("quotient", help="Quotient by a selection with diagnostics")
    quotient_cmd.add_argument("target")
    quotient_cmd.add_argument("--selection", help="Comma separated element names; defaults to the fixture's selection")

    limit = subparsers.add_parser("limit", help="Inverse limit of a document, or the canonical limit of a tree set")
    limit.add_argument("target")

    represent_cmd = subparsers.add_parser("represent", help="Represent a regular tree set by bipartitions")
    represent_cmd.add_argument("target")
    represent_cmd.add_argument("--ground", default="splitting", choices=list(GROUND_KINDS))

    check = subparsers.add_parser("check", help="Run the characterization battery on a host or family")
    check.add_argument("target")
    check.add_argument("--bound", type=int, default=None, help="Last truncation level for families")

    gen = subparsers.add_parser("gen", help="Write a fixture as a sepsys document")
    gen.add_argument("fixture")
    gen.add_argument("--n", type=int, default=None, help="Level for truncation families")
    gen.add_argument("--out", type=Path, default=None)

    return parser


def _run_validate(args: argparse.Namespace) -> int:
    loaded = _load(args.target)
    if isinstance(loaded, ParsedDocument) and loaded.inverse_system is not None:
        system = loaded.inverse_system
        payload = {"kind": "inverse_system", "points": list(system.index.points), "valid": True}
        lines = [f"inverse system over {len(system.index.points)} index points", "valid: yes"]
        _emit(args, payload, lines)
        return 0
    system = loaded.system if isinstance(loaded, ParsedDocument) else loaded
    report = is_tree_set(system)
    payload = {"name": system.name, "elements": len(system), **report.to_dict()}
    lines = [
        f"system: {system.name}",
        f"elements: {len(system)}",
        f"nested: {'yes' if report.nested else 'no'}",
        f"regular: {'yes' if report.regular else 'no'}",
        f"tree set: {'yes' if report.ok else 'no'}",
    ]
    if not report.ok:
        lines.append(f"defects: {report.summary()}")
    _emit(args, payload, lines)
    return 0 if report.ok else 1


def _run_orientations(args: argparse.Namespace) -> int:
    system = _load_system(args.target)
    found = [o for o in all_consistent_orientations(system) if o.consistent]
    lines = [f"consistent orientations: {len(found)}"]
    for i, o in enumerate(found, start=1):
        flags = [flag for flag in ("splitting", "directed", "has_greatest") if getattr(o, flag)]
        lines.append(f"  O{i}: {_fmt_set(o.chosen)} max {_fmt_set(o.maximal)} [{', '.join(flags)}]")
    _emit(args, {"orientations": [o.to_dict() for o in found]}, lines)
    return 0


def _run_stars(args: argparse.Namespace) -> int:
    system = _load_system(args.target)
    found = splitting_stars(system)
    lines = [f"splitting stars: {len(found)}"]
    lines.extend(f"  {_fmt_set(star.members)}{' branching' if star.branching else ''}" for star in found)
    _emit(args, {"stars": [star.to_dict() for star in found]}, lines)
    return 0


def _run_quotient(args: argparse.Namespace) -> int:
    host = _load_system(args.target)
    if args.selection:
        selection = parse_selection(args.selection)
    elif _is_document(args.target):
        raise NoDefaultSelection(args.target)
    else:
        selection = list(fixture_selection(args.target))
    q = quotient(host, selection)
    closure = is_branch_closed(host, q.selection)
    lines = [f"quotient of {host.name} by {_fmt_set(q.selection.members)}", f"classes: {len(q.classes)}"]
    lines.extend(f"  {name} = {_fmt_set(members)}" for name, members in q.classes.items())
    lines.append("relation:")
    lines.extend(f"  {a} <= {b}" for a, b in sorted(q.le_pairs) if a != b)
    lines.append(f"transitivity violations: {len(q.transitivity_violations)}")
    for a, b, c in q.transitivity_violations:
        mirror = (q.inverse[c], q.inverse[b], q.inverse[a])
        lines.append(f"  {a} <= {b} <= {c} (mirror {mirror[0]} <= {mirror[1]} <= {mirror[2]})")
    lines.append(f"trivial classes: {len(q.trivial_classes)}")
    lines.extend(f"  {name}" for name in q.trivial_classes)
    lines.append(f"three-star witnesses: {len(q.three_star_witnesses)}")
    lines.extend(f"  {_fmt_set(triple)}" for triple in q.three_star_witnesses)
    missing = f" (missing {', '.join(closure.missing)})" if closure.missing else ""
    lines.append(f"branch-closed: {'yes' if closure.closed else 'no'}{missing}")
    lines.append(f"certified: {'yes' if q.certified else 'no'}")
    payload = {**q.to_dict(), "branch_closed": closure.closed, "missing": list(closure.missing)}
    _emit(args, payload, lines)
    return 0 if q.certified else 1


def _run_limit(args: argparse.Namespace) -> int:
    loaded = _load(args.target)
    if isinstance(loaded, ParsedDocument) and loaded.inverse_system is not None:
        system = loaded.inverse_system
        verdict = verify_limit_tree_set(system)
        limit = inverse_limit(system)
        lines = [
            f"inverse limit over {len(system.index.points)} index points",
            f"limit elements: {verdict.elements}",
            f"tree set: {'yes' if verdict.tree_set else 'no'}",
            f"regular: {'yes' if verdict.regular else 'no'}",
        ]
        lines.extend(f"  {name}" for name in limit.system.elements)
        _emit(args, {**verdict.to_dict(), "elements_list": list(limit.system.elements)}, lines)
        return 0
    host = loaded.system if isinstance(loaded, ParsedDocument) else loaded
    result = phi(host)
    total = len(result.family)
    lines = [f"canonical selection family of {host.name}: {total} selections"]
    lines.extend(
        f"  {selection_point(i, total)}: {_fmt_set(s.members)}" for i, s in enumerate(result.family.selections)
    )
    lines.append(f"limit elements: {len(result.limit.system)}")
    lines.append(f"phi: {'bijective' if result.map.is_bijective() else 'not bijective'}, "
                 f"{'isomorphism' if result.report.is_isomorphism else 'not an isomorphism'}")
    _emit(args, result.to_dict(), lines)
    return 0


def _run_represent(args: argparse.Namespace) -> int:
    host = _load_system(args.target)
    result = represent(host, args.ground)
    lines = [f"ground ({args.ground}): {len(result.ground)} orientations"]
    lines.extend(f"  {key}: {_fmt_set(o.chosen)}" for key, o in result.ground.items())
    lines.append("fibers:")
    lines.extend(
        f"  {s} -> {_fmt_set(back)} | {_fmt_set(front)}" for s, (back, front) in sorted(result.fibers.items())
    )
    lines.append("isomorphism onto image: yes")
    _emit(args, result.to_dict(), lines)
    return 0


def _verdict_lines(verdict: Any) -> list[str]:
    head = verdict.verdict + (f" (bound {verdict.bound})" if verdict.verdict == "unknown_up_to" else "")
    lines = [f"{verdict.name}: {head}"]
    for key, value in sorted((verdict.details or {}).items()):
        lines.append(f"  {key}: {json.dumps(value, sort_keys=True)}")
    if verdict.witness is not None:
        lines.append(f"  witness: {json.dumps(verdict.witness, sort_keys=True)}")
    if verdict.limit_annotation:
        lines.append(f"  limit: {verdict.limit_annotation}")
    return lines


def _run_check(args: argparse.Namespace, limits: Any) -> int:
    if is_family(args.target):
        verdicts = run_family_battery(family(args.target), args.bound, limits=limits)
    else:
        verdicts = run_battery(_load_system(args.target))
    lines: list[str] = []
    for verdict in verdicts:
        lines.extend(_verdict_lines(verdict))
    _emit(args, [v.to_dict() for v in verdicts], lines)
    return 1 if any(v.verdict == "violated" for v in verdicts) else 0


def _run_gen(args: argparse.Namespace) -> int:
    provenance: dict[str, Any] = {"fixture": args.fixture}
    if is_family(args.fixture):
        chosen = family(args.fixture)
        level = chosen.first_level if args.n is None else args.n
        system = chosen.level(level)
        provenance["n"] = level
    else:
        system = named_fixture(args.fixture)
    text = serialize_system(system, metadata={"provenance": provenance})
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")
        print(f"OK: wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        if args.limits is not None and not args.limits.exists():
            raise FileNotFoundError(f"Limits file not found: {args.limits}")
        limits = load_limits(args.limits) if args.limits is not None else None
        set_limits(limits)

        if args.command == "validate":
            return _run_validate(args)
        if args.command == "orientations":
            return _run_orientations(args)
        if args.command == "stars":
            return _run_stars(args)
        if args.command == "quotient":
            return _run_quotient(args)
        if args.command == "limit":
            return _run_limit(args)
        if args.command == "represent":
            return _run_represent(args)
        if args.command == "check":
            return _run_check(args, limits)
        if args.command == "gen":
            return _run_gen(args)
    except HypothesisFailed as exc:
        print(f"HYPOTHESIS FAILED: {exc}")
        return 1
    except (ValueError, FileNotFoundError) as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return 2
    finally:
        set_limits(None)

    parser.error("Unknown command")
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
