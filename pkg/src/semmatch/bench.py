"""Seeded synthetic workloads for measuring scan cost.

The generated ontology is a forest of three-level family chains
(top > mid > leaf). The query draws its concepts from the leaves and the
advertised services from the tops, so a pair is PLUGIN when the families
agree (distance 2) and FAIL otherwise; EXACT is unreachable and the scan
must touch every candidate. Planting an early-exit candidate swaps in a
clone of the query at a chosen position.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .matchmaker import InputDirection, MatchStats, find_match
from .ontology import Ontology
from .services import ServiceDescription


@dataclass(frozen=True)
class BenchWorkload:
    ontology: Ontology
    query: ServiceDescription
    repository: tuple[ServiceDescription, ...]


@dataclass(frozen=True)
class BenchReport:
    services: int
    seed: int
    in_arity: int
    out_arity: int
    families: int
    early_exit_at: int | None
    scanned: int
    evaluations: int
    bestsrv: str
    result: str
    wall_ms: float

    CSV_FIELDS = (
        "services",
        "seed",
        "in_arity",
        "out_arity",
        "families",
        "early_exit_at",
        "scanned",
        "evaluations",
        "bestsrv",
        "result",
        "wall_ms",
    )

    def csv_lines(self) -> list[str]:
        header = ",".join(self.CSV_FIELDS)
        row = ",".join(
            "" if getattr(self, f) is None else str(getattr(self, f)) for f in self.CSV_FIELDS
        )
        return [header, row]

    def to_dict(self) -> dict:
        return {f: getattr(self, f) for f in self.CSV_FIELDS}


def generate_workload(
    services: int,
    seed: int,
    in_arity: int = 4,
    out_arity: int = 4,
    families: int = 8,
    query_in_arity: int = 2,
    query_out_arity: int = 2,
    early_exit_at: int | None = None,
) -> BenchWorkload:
    """Deterministic ontology + query + repository for the given seed.

    ``early_exit_at`` is 1-based; that candidate becomes a clone of the
    query's concept lists and therefore matches EXACT.
    """
    if services < 1:
        raise ValueError("need at least one service")
    if families < 1:
        raise ValueError("need at least one family")
    if early_exit_at is not None and not 1 <= early_exit_at <= services:
        raise ValueError(f"early_exit_at must be in 1..{services}")

    rng = random.Random(seed)
    concepts: list[str] = []
    edges: list[tuple[str, str]] = []
    for g in range(families):
        top, mid, leaf = f"fam{g}", f"fam{g}.mid", f"fam{g}.leaf"
        concepts += [top, mid, leaf]
        edges += [(mid, top), (leaf, mid)]
    ontology = Ontology(concepts, subclass_edges=edges)

    def leaves(count: int) -> tuple[str, ...]:
        return tuple(f"fam{rng.randrange(families)}.leaf" for _ in range(count))

    def tops(count: int) -> tuple[str, ...]:
        return tuple(f"fam{rng.randrange(families)}" for _ in range(count))

    query = ServiceDescription(
        name="crashed-query", inputs=leaves(query_in_arity), outputs=leaves(query_out_arity)
    )
    repository = []
    for i in range(services):
        repository.append(
            ServiceDescription(name=f"svc-{i:05d}", inputs=tops(in_arity), outputs=tops(out_arity))
        )
    if early_exit_at is not None:
        index = early_exit_at - 1
        repository[index] = ServiceDescription(
            name=repository[index].name, inputs=query.inputs, outputs=query.outputs
        )
    return BenchWorkload(ontology=ontology, query=query, repository=tuple(repository))


def run_bench(
    services: int,
    seed: int,
    in_arity: int = 4,
    out_arity: int = 4,
    families: int = 8,
    query_in_arity: int = 2,
    query_out_arity: int = 2,
    early_exit_at: int | None = None,
    input_direction: InputDirection = InputDirection.AS_PAPER,
) -> BenchReport:
    """Generate a workload, time one scan over it, and report the counters."""
    workload = generate_workload(
        services,
        seed,
        in_arity=in_arity,
        out_arity=out_arity,
        families=families,
        query_in_arity=query_in_arity,
        query_out_arity=query_out_arity,
        early_exit_at=early_exit_at,
    )
    stats = MatchStats()
    start = time.perf_counter()
    best = find_match(
        workload.ontology, workload.query, workload.repository, input_direction, stats=stats
    )
    wall_ms = (time.perf_counter() - start) * 1000.0
    return BenchReport(
        services=services,
        seed=seed,
        in_arity=in_arity,
        out_arity=out_arity,
        families=families,
        early_exit_at=early_exit_at,
        scanned=best.scanned,
        evaluations=stats.evaluations,
        bestsrv=best.service,
        result=best.report.result.label,
        wall_ms=round(wall_ms, 3),
    )
