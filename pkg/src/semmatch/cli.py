"""Operator command line: validate, publish, list, match, serve, bench.

Exit codes for ``match`` encode the replacement quality so shell-based
self-healing scripts can branch without parsing output: 0 for exact or
plugin, 2 for subsume, 3 for fail, 1 for any operational error.
Diagnostics go to stderr; data goes to stdout.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import registry as registry_mod
from .bench import run_bench
from .errors import SemMatchError
from .matching import Assignment, MatchGraph, build_graph
from .matchmaker import (
    EmptyRepositoryError,
    InputDirection,
    MatchReport,
    match_services,
)
from .ontology import DegreeOfMatch, Ontology, parse_ontology_path
from .registry import load_registry
from .server import serve
from .services import ServiceDescription, parse_service_document
from .wire import build_match_payload, payload_bytes

EXIT_CODES = {
    DegreeOfMatch.EXACT: 0,
    DegreeOfMatch.PLUGIN: 0,
    DegreeOfMatch.SUBSUME: 2,
    DegreeOfMatch.FAIL: 3,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SemMatchError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semmatch",
        description="Semantic service matchmaking over a shared concept ontology.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    common.add_argument("--quiet", action="store_true", help="suppress human-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check an ontology and service files")
    p.add_argument("ontology", help="path to the .ont file")
    p.add_argument("services", nargs="*", help="service.json files to validate against it")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("publish", parents=[common], help="add a service to a registry")
    p.add_argument("--registry", required=True, help="registry directory")
    p.add_argument("service", help="service.json file to publish")
    p.set_defaults(func=cmd_publish)

    p = sub.add_parser("list", parents=[common], help="list registry services in publication order")
    p.add_argument("--registry", required=True, help="registry directory")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("match", parents=[common], help="find the best replacement service")
    p.add_argument("--ontology", help="ontology file (single-candidate mode)")
    p.add_argument("--crashed", required=True, help="description of the service to replace")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--candidate", help="score one candidate service file")
    target.add_argument("--registry", help="scan a registry directory")
    p.add_argument(
        "--exclude",
        action="append",
        default=[],
        metavar="NAME",
        help="registry service to skip (repeatable)",
    )
    p.add_argument(
        "--input-direction",
        choices=[d.value for d in InputDirection],
        default=InputDirection.AS_PAPER.value,
        help="orientation of the input-side match (default: as-paper)",
    )
    p.add_argument("--rank", action="store_true", help="evaluate and rank every candidate")
    p.add_argument("--explain", action="store_true", help="print per-side edge tables")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("serve", parents=[common], help="serve the registry HTTP API")
    p.add_argument("--registry", required=True, help="registry directory")
    p.add_argument("--bind", default="127.0.0.1:8080", metavar="HOST:PORT")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("bench", parents=[common], help="time a scan over a synthetic repository")
    p.add_argument("-n", "--services", type=int, required=True, help="repository size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--in-arity", type=int, default=4)
    p.add_argument("--out-arity", type=int, default=4)
    p.add_argument("--families", type=int, default=8)
    p.add_argument("--query-in-arity", type=int, default=2)
    p.add_argument("--query-out-arity", type=int, default=2)
    p.add_argument(
        "--early-exit-at",
        type=int,
        default=None,
        metavar="K",
        help="plant an exact candidate at 1-based position K",
    )
    p.set_defaults(func=cmd_bench)

    return parser


# -- commands -------------------------------------------------------------


def cmd_validate(args) -> int:
    ontology = parse_ontology_path(args.ontology)
    services = []
    for path in args.services:
        service = _load_service(path)
        service.validate_concepts(ontology)
        services.append(service)
    if args.json:
        print(
            json.dumps(
                {
                    "ontology": {"concepts": len(ontology.concepts), "ok": True},
                    "services": [s.name for s in services],
                }
            )
        )
    elif not args.quiet:
        print(f"ontology {args.ontology}: {len(ontology.concepts)} concepts, ok")
        for path, service in zip(args.services, services):
            print(f"service {path}: {service.name!r}, ok")
    return 0


def cmd_publish(args) -> int:
    reg = load_registry(args.registry)
    service = _load_service(args.service)
    reg = registry_mod.publish(reg, service)
    if args.json:
        print(json.dumps({"name": service.name, "version": reg.version}))
    elif not args.quiet:
        print(f"published {service.name!r} (version {reg.version})")
    return 0


def cmd_list(args) -> int:
    reg = load_registry(args.registry)
    if args.json:
        print(json.dumps([s.to_document() for s in reg.services]))
    elif not args.quiet:
        for name in reg.names():
            print(name)
    return 0


def cmd_match(args) -> int:
    ontology, crashed, repository = _match_inputs(args)
    if not repository:
        raise EmptyRepositoryError("empty repository")

    direction = InputDirection.from_label(args.input_direction)
    mode = "rank" if args.rank else "best"
    payload = build_match_payload(ontology, crashed, repository, mode, direction)
    result = DegreeOfMatch.from_label(payload["result"])

    if args.json:
        # payload_bytes is shared with the HTTP API; stdout must stay byte-identical
        sys.stdout.write(payload_bytes(payload).decode("utf-8"))
        sys.stdout.flush()
    elif not args.quiet:
        print(f"result: {payload['result']} (outsim: {payload['outsim']}, insim: {payload['insim']})")
        print(f"bestsrv: {payload['bestsrv']} (scanned: {payload['scanned']})")
        if args.rank:
            for entry in payload["ranking"]:
                print(
                    f"  {entry['name']}: {entry['result']} "
                    f"(outsim: {entry['outsim']}, insim: {entry['insim']})"
                )
        if args.explain:
            best = next(s for s in repository if s.name == payload["bestsrv"])
            report = match_services(ontology, crashed, best, direction)
            for line in render_explanation(ontology, crashed, best, report, direction):
                print(line)
    return EXIT_CODES[result]


def cmd_serve(args) -> int:
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    reg = load_registry(args.registry)
    host, port = _parse_bind(args.bind)
    serve(reg, host, port)
    return 0


def cmd_bench(args) -> int:
    try:
        report = run_bench(
            services=args.services,
            seed=args.seed,
            in_arity=args.in_arity,
            out_arity=args.out_arity,
            families=args.families,
            query_in_arity=args.query_in_arity,
            query_out_arity=args.query_out_arity,
            early_exit_at=args.early_exit_at,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(report.to_dict()))
    elif not args.quiet:
        for line in report.csv_lines():
            print(line)
    return 0


# -- helpers --------------------------------------------------------------


def _load_service(path: str) -> ServiceDescription:
    return parse_service_document(Path(path).read_text(encoding="utf-8"), source=path)


def _match_inputs(args) -> tuple[Ontology, ServiceDescription, list[ServiceDescription]]:
    if args.candidate:
        if not args.ontology:
            raise SemMatchError("--candidate mode requires --ontology")
        if args.exclude:
            raise SemMatchError("--exclude only applies to --registry mode")
        ontology = parse_ontology_path(args.ontology)
        crashed = _load_service(args.crashed)
        crashed.validate_concepts(ontology)
        candidate = _load_service(args.candidate)
        candidate.validate_concepts(ontology)
        repository = [candidate]
    else:
        if args.ontology:
            raise SemMatchError("--registry mode uses the registry's own ontology; drop --ontology")
        reg = load_registry(args.registry)
        ontology = reg.ontology
        crashed = _load_service(args.crashed)
        crashed.validate_concepts(ontology)
        excluded = set(args.exclude)
        repository = [s for s in reg.services if s.name not in excluded]
    return ontology, crashed, repository


def _parse_bind(bind: str) -> tuple[str, int]:
    host, sep, port = bind.rpartition(":")
    if not sep or not host:
        raise SemMatchError(f"--bind expects HOST:PORT, got {bind!r}")
    try:
        return host, int(port)
    except ValueError:
        raise SemMatchError(f"--bind expects a numeric port, got {port!r}") from None


# -- explanation rendering -------------------------------------------------


def render_explanation(
    ont: Ontology,
    crashed: ServiceDescription,
    candidate: ServiceDescription,
    report: MatchReport,
    direction: InputDirection = InputDirection.AS_PAPER,
) -> list[str]:
    """Textual edge tables for both sides; chosen pairs are starred."""
    out_graph = build_graph(ont, crashed.outputs, candidate.outputs)
    lines = _render_side("outputs", out_graph, report.outsim, report.output_assignment)
    if direction is InputDirection.AS_PAPER:
        in_graph = build_graph(ont, crashed.inputs, candidate.inputs)
    else:
        in_graph = build_graph(ont, candidate.inputs, crashed.inputs)
    lines += _render_side("inputs", in_graph, report.insim, report.input_assignment)
    lines.append(f"result: {report.result.label}")
    return lines


def _render_side(
    title: str, graph: MatchGraph, degree: DegreeOfMatch, assignment: Assignment | None
) -> list[str]:
    lines = [f"{title}: {degree.label}"]
    if not graph.left:
        lines.append("    (nothing required)")
        return lines
    chosen = set(assignment.pairs) if assignment is not None else set()
    for (i, j), label in sorted(graph.edges.items()):
        marker = "  * " if (i, j) in chosen else "    "
        lines.append(f"{marker}{graph.left[i]} ↔ {graph.right[j]} [{label.label}]")
    if not graph.edges:
        lines.append("    (no edges)")
    if assignment is None:
        lines.append("    (no complete matching)")
    return lines


if __name__ == "__main__":
    raise SystemExit(main())
