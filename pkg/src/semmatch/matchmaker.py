"""Service-level matching: per-side degrees, combination, and repository scan.

A service pair is scored by bottleneck-matching its output lists (OUTSIM)
and input lists (INSIM) and combining the two with the lattice minimum.
The repository scan keeps the first strictly-better candidate and stops
as soon as one reaches EXACT.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import SemMatchError
from .matching import Assignment, bottleneck_match, build_graph
from .ontology import DegreeOfMatch, Ontology
from .services import ServiceDescription


class EmptyRepositoryError(SemMatchError):
    """The scan was asked to pick a best service from an empty repository."""


class InputDirection(enum.Enum):
    """Orientation of the input-side graph.

    AS_PAPER puts the crashed service's inputs on the left (the side that
    must be saturated), mirroring the output side. REVERSED puts the
    candidate's inputs on the left, the classical capability-matching
    direction.
    """

    AS_PAPER = "as-paper"
    REVERSED = "reversed"

    @classmethod
    def from_label(cls, label: str) -> "InputDirection":
        for member in cls:
            if member.value == label:
                return member
        raise ValueError(f"not an input direction: {label!r}")


@dataclass
class MatchStats:
    """Mutable counters threaded through a scan for benchmarking."""

    evaluations: int = 0
    candidates: int = 0


@dataclass(frozen=True)
class MatchReport:
    """Per-side degrees and their lattice-minimum combination."""

    outsim: DegreeOfMatch
    insim: DegreeOfMatch
    result: DegreeOfMatch
    output_assignment: Assignment | None
    input_assignment: Assignment | None


@dataclass(frozen=True)
class BestMatch:
    """Winner of a repository scan plus how many candidates were evaluated."""

    service: str
    report: MatchReport
    scanned: int


def combine(outsim: DegreeOfMatch, insim: DegreeOfMatch) -> DegreeOfMatch:
    """Service-level degree: the lattice minimum of the two sides.

    Equivalent cascade: FAIL if either side is FAIL, else SUBSUME if either
    is SUBSUME, else PLUGIN if either is PLUGIN, else EXACT.
    """
    return min(outsim, insim)


def match_side(
    ont: Ontology,
    requester_concepts: Sequence[str],
    candidate_concepts: Sequence[str],
    stats: MatchStats | None = None,
) -> tuple[DegreeOfMatch, Assignment | None]:
    """Bottleneck-match one side; the requester list must be saturated."""
    graph = build_graph(ont, requester_concepts, candidate_concepts, stats=stats)
    result = bottleneck_match(graph)
    return result.degree, result.assignment


def match_services(
    ont: Ontology,
    crashed: ServiceDescription,
    candidate: ServiceDescription,
    input_direction: InputDirection = InputDirection.AS_PAPER,
    stats: MatchStats | None = None,
) -> MatchReport:
    """Score one candidate against the crashed service's description."""
    outsim, output_assignment = match_side(ont, crashed.outputs, candidate.outputs, stats=stats)
    if input_direction is InputDirection.AS_PAPER:
        insim, input_assignment = match_side(ont, crashed.inputs, candidate.inputs, stats=stats)
    else:
        insim, input_assignment = match_side(ont, candidate.inputs, crashed.inputs, stats=stats)
    return MatchReport(
        outsim=outsim,
        insim=insim,
        result=combine(outsim, insim),
        output_assignment=output_assignment,
        input_assignment=input_assignment,
    )


def find_match(
    ont: Ontology,
    crashed: ServiceDescription,
    repository: Sequence[ServiceDescription],
    input_direction: InputDirection = InputDirection.AS_PAPER,
    stats: MatchStats | None = None,
) -> BestMatch:
    """Scan the repository in publication order for the best replacement.

    The best degree starts at FAIL and the best service at the first entry;
    only a strictly better candidate replaces the incumbent, so the earliest
    service attaining the maximal degree wins. The scan quits immediately
    once a candidate reaches EXACT. ``scanned`` is the number of candidates
    actually evaluated.
    """
    if not repository:
        raise EmptyRepositoryError("empty repository")

    best_service = repository[0]
    best_degree = DegreeOfMatch.FAIL
    best_report: MatchReport | None = None
    scanned = 0

    for candidate in repository:
        report = match_services(ont, crashed, candidate, input_direction, stats=stats)
        scanned += 1
        if stats is not None:
            stats.candidates += 1
        if best_report is None:
            # the first service is the incumbent even if nothing ever beats FAIL
            best_report = report
        if report.result > best_degree:
            best_degree = report.result
            best_service = candidate
            best_report = report
        if best_degree is DegreeOfMatch.EXACT:
            break

    assert best_report is not None
    return BestMatch(service=best_service.name, report=best_report, scanned=scanned)


def rank_all(
    ont: Ontology,
    crashed: ServiceDescription,
    repository: Sequence[ServiceDescription],
    input_direction: InputDirection = InputDirection.AS_PAPER,
    stats: MatchStats | None = None,
) -> list[tuple[str, MatchReport]]:
    """Evaluate every candidate; sort by degree descending, publication order on ties."""
    reports = [
        (candidate.name, match_services(ont, crashed, candidate, input_direction, stats=stats))
        for candidate in repository
    ]
    if stats is not None:
        stats.candidates += len(reports)
    return sorted(reports, key=lambda item: -item[1].result)
