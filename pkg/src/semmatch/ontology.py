"""Concept ontology: declarations, subsumption queries, and the match lattice.

An ontology is a finite set of concept identifiers plus direct-subclass
edges and equivalence declarations. All queries are answered on the
quotient graph obtained by collapsing each equivalence class to a single
node; that graph must be a DAG. Instances are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import enum
import re
from typing import Iterable

from .errors import SemMatchError

CONCEPT_ID_RE = re.compile(r"^[A-Za-z0-9_.:\-]+$")

_DIRECTIVES = ("concept", "subclass", "equivalent")


class OntologyError(SemMatchError):
    """Base class for ontology parsing and validation errors."""


class OntologySyntaxError(OntologyError):
    """A line of an ontology document could not be interpreted."""

    def __init__(self, reason: str, line: int | None = None, source: str | None = None):
        self.reason = reason
        self.line = line
        self.source = source
        prefix = _location(source, line)
        super().__init__(f"{prefix}{reason}" if prefix else reason)


class DuplicateDeclarationError(OntologyError):
    """The same concept, edge, or equivalence was declared twice."""

    def __init__(self, reason: str, line: int | None = None, source: str | None = None):
        self.reason = reason
        self.line = line
        prefix = _location(source, line)
        super().__init__(f"{prefix}{reason}" if prefix else reason)


class UnknownConceptError(OntologyError):
    """A concept identifier was used but never declared."""

    def __init__(self, concept: str, context: str | None = None):
        self.concept = concept
        self.context = context
        message = f"unknown concept {concept!r}"
        if context:
            message = f"{context}: {message}"
        super().__init__(message)


class CycleError(OntologyError):
    """The subclass relation is cyclic after equivalence lifting."""

    def __init__(self, cycle: list[str], source: str | None = None):
        self.cycle = list(cycle)
        loop = " -> ".join(self.cycle + self.cycle[:1])
        prefix = _location(source, None)
        super().__init__(f"{prefix}subclass cycle: {loop}")


def _location(source: str | None, line: int | None) -> str:
    if source and line:
        return f"{source}:{line}: "
    if source:
        return f"{source}: "
    if line:
        return f"line {line}: "
    return ""


class RelationKind(enum.Enum):
    """How one concept stands to another in the hierarchy."""

    EQUAL = "equal"
    DIRECT_SUBCLASS_OF = "direct-subclass-of"
    SUBSUMED_BY = "subsumed-by"
    SUBSUMES = "subsumes"
    UNRELATED = "unrelated"


class DegreeOfMatch(enum.IntEnum):
    """Four-level compatibility lattice, totally ordered EXACT > PLUGIN > SUBSUME > FAIL."""

    FAIL = 0
    SUBSUME = 1
    PLUGIN = 2
    EXACT = 3

    @property
    def label(self) -> str:
        """Lowercase wire form: "exact", "plugin", "subsume", or "fail"."""
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "DegreeOfMatch":
        try:
            return cls[label.upper()]
        except KeyError:
            raise ValueError(f"not a degree of match: {label!r}") from None


def validate_concept_id(concept: str) -> str:
    """Return the id unchanged, or raise if it is not a valid concept token."""
    if not CONCEPT_ID_RE.match(concept):
        raise OntologySyntaxError(f"invalid concept id {concept!r}")
    return concept


class Ontology:
    """Immutable concept hierarchy with equivalence-aware subsumption queries."""

    def __init__(
        self,
        concepts: Iterable[str],
        subclass_edges: Iterable[tuple[str, str]] = (),
        equivalences: Iterable[tuple[str, str]] = (),
        source: str | None = None,
    ):
        self.concepts = frozenset(concepts)
        self.subclass_edges = frozenset(subclass_edges)
        self.equivalences = frozenset(frozenset(pair) for pair in equivalences)
        self._source = source

        for concept in self.concepts:
            validate_concept_id(concept)
        for child, parent in self.subclass_edges:
            self._require_declared(child)
            self._require_declared(parent)
        for pair in self.equivalences:
            if len(pair) != 2:
                raise OntologySyntaxError(
                    f"self-equivalence {next(iter(pair))!r} is redundant", source=source
                )
            for concept in pair:
                self._require_declared(concept)

        self._rep = self._build_equivalence_classes()
        self._class_members: dict[str, tuple[str, ...]] = {}
        for concept in self.concepts:
            rep = self._rep[concept]
            members = self._class_members.setdefault(rep, ())
            self._class_members[rep] = tuple(sorted(members + (concept,)))

        self._direct_parents = self._lift_edges(source)
        self._ancestors = self._close_ancestors(source)

    def _require_declared(self, concept: str) -> None:
        if concept not in self.concepts:
            raise UnknownConceptError(concept, context=self._source)

    def _build_equivalence_classes(self) -> dict[str, str]:
        parent = {c: c for c in self.concepts}

        def find(c: str) -> str:
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        for pair in self.equivalences:
            a, b = sorted(pair)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        # canonical representative: lexicographically smallest member
        return {c: find(c) for c in self.concepts}

    def _lift_edges(self, source: str | None) -> dict[str, frozenset[str]]:
        parents: dict[str, set[str]] = {rep: set() for rep in self._class_members}
        for child, parent in self.subclass_edges:
            rc, rp = self._rep[child], self._rep[parent]
            if rc == rp:
                # a subclass edge inside one equivalence class is a length-1 cycle
                raise CycleError(list(self._class_members[rc]), source=source)
            parents[rc].add(rp)
        return {rep: frozenset(ps) for rep, ps in parents.items()}

    def _close_ancestors(self, source: str | None) -> dict[str, frozenset[str]]:
        ancestors: dict[str, frozenset[str]] = {}
        in_progress: list[str] = []
        on_path: set[str] = set()

        def visit(rep: str) -> frozenset[str]:
            if rep in ancestors:
                return ancestors[rep]
            if rep in on_path:
                cycle = in_progress[in_progress.index(rep):]
                raise CycleError(cycle, source=source)
            in_progress.append(rep)
            on_path.add(rep)
            acc: set[str] = set()
            for parent in sorted(self._direct_parents[rep]):
                acc.add(parent)
                acc.update(visit(parent))
            in_progress.pop()
            on_path.discard(rep)
            ancestors[rep] = frozenset(acc)
            return ancestors[rep]

        for rep in sorted(self._class_members):
            visit(rep)
        return ancestors

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ontology):
            return NotImplemented
        return (
            self.concepts == other.concepts
            and self.subclass_edges == other.subclass_edges
            and self.equivalences == other.equivalences
        )

    def __hash__(self) -> int:
        return hash((self.concepts, self.subclass_edges, self.equivalences))

    def __repr__(self) -> str:
        return (
            f"Ontology({len(self.concepts)} concepts, "
            f"{len(self.subclass_edges)} subclass edges, "
            f"{len(self.equivalences)} equivalences)"
        )

    def __contains__(self, concept: str) -> bool:
        return concept in self.concepts

    def equivalence_class(self, concept: str) -> tuple[str, ...]:
        self._require_declared(concept)
        return self._class_members[self._rep[concept]]

    def relation(self, a: str, b: str) -> RelationKind:
        """Classify the ordered pair (a, b) on the equivalence-quotient DAG.

        Precedence when several hold: EQUAL > DIRECT_SUBCLASS_OF > SUBSUMED_BY
        > SUBSUMES (a direct subclass is also subsumed; the closer kind wins).
        """
        self._require_declared(a)
        self._require_declared(b)
        ra, rb = self._rep[a], self._rep[b]
        if ra == rb:
            return RelationKind.EQUAL
        if rb in self._direct_parents[ra]:
            return RelationKind.DIRECT_SUBCLASS_OF
        if rb in self._ancestors[ra]:
            return RelationKind.SUBSUMED_BY
        if ra in self._ancestors[rb]:
            return RelationKind.SUBSUMES
        return RelationKind.UNRELATED

    def degree_of_match(self, c_concept: str, adv_concept: str) -> DegreeOfMatch:
        """Classify requester concept vs advertised concept on the match lattice.

        Branches, in order: equal -> EXACT; requester a direct subclass of the
        advertised concept -> EXACT; advertised concept properly subsumes the
        requester (distance >= 2) -> PLUGIN; requester subsumes the advertised
        concept -> SUBSUME; otherwise FAIL.
        """
        rel = self.relation(c_concept, adv_concept)
        if rel is RelationKind.EQUAL:
            return DegreeOfMatch.EXACT
        if rel is RelationKind.DIRECT_SUBCLASS_OF:
            return DegreeOfMatch.EXACT
        if rel is RelationKind.SUBSUMED_BY:
            return DegreeOfMatch.PLUGIN
        if rel is RelationKind.SUBSUMES:
            return DegreeOfMatch.SUBSUME
        return DegreeOfMatch.FAIL

    def serialize(self) -> str:
        """Render as an ontology document; declaration order is normalized."""
        lines = [f"concept {c}" for c in sorted(self.concepts)]
        lines += [f"subclass {child} {parent}" for child, parent in sorted(self.subclass_edges)]
        lines += [f"equivalent {a} {b}" for a, b in sorted(tuple(sorted(p)) for p in self.equivalences)]
        return "\n".join(lines) + "\n"


def parse_ontology(text: str, source: str | None = None) -> Ontology:
    """Parse an ontology document (one directive per line) into an Ontology.

    Blank lines and lines starting with ``#`` are ignored. Declarations may
    appear in any order; every id referenced by a ``subclass`` or
    ``equivalent`` line must be declared by a ``concept`` line somewhere in
    the document.
    """
    concepts: dict[str, int] = {}
    edges: dict[tuple[str, str], int] = {}
    equivalences: dict[frozenset[str], int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        directive, args = tokens[0], tokens[1:]
        if directive not in _DIRECTIVES:
            raise OntologySyntaxError(
                f"unknown directive {directive!r}", line=lineno, source=source
            )

        for arg in args:
            if not CONCEPT_ID_RE.match(arg):
                raise OntologySyntaxError(
                    f"invalid concept id {arg!r}", line=lineno, source=source
                )

        if directive == "concept":
            if len(args) != 1:
                raise OntologySyntaxError(
                    "expected: concept <id>", line=lineno, source=source
                )
            (concept,) = args
            if concept in concepts:
                raise DuplicateDeclarationError(
                    f"concept {concept!r} already declared on line {concepts[concept]}",
                    line=lineno,
                    source=source,
                )
            concepts[concept] = lineno
        elif directive == "subclass":
            if len(args) != 2:
                raise OntologySyntaxError(
                    "expected: subclass <child-id> <parent-id>", line=lineno, source=source
                )
            edge = (args[0], args[1])
            if edge in edges:
                raise DuplicateDeclarationError(
                    f"subclass {edge[0]} {edge[1]} already declared on line {edges[edge]}",
                    line=lineno,
                    source=source,
                )
            edges[edge] = lineno
        else:
            if len(args) != 2:
                raise OntologySyntaxError(
                    "expected: equivalent <id> <id>", line=lineno, source=source
                )
            if args[0] == args[1]:
                raise OntologySyntaxError(
                    f"self-equivalence of {args[0]!r} is redundant", line=lineno, source=source
                )
            pair = frozenset(args)
            if pair in equivalences:
                a, b = sorted(pair)
                raise DuplicateDeclarationError(
                    f"equivalent {a} {b} already declared on line {equivalences[pair]}",
                    line=lineno,
                    source=source,
                )
            equivalences[pair] = lineno

    for (child, parent), lineno in edges.items():
        for concept in (child, parent):
            if concept not in concepts:
                raise UnknownConceptError(concept, context=_location(source, lineno).rstrip(": ") or None)
    for pair, lineno in equivalences.items():
        for concept in pair:
            if concept not in concepts:
                raise UnknownConceptError(concept, context=_location(source, lineno).rstrip(": ") or None)

    return Ontology(
        concepts,
        subclass_edges=edges,
        equivalences=(tuple(sorted(p)) for p in equivalences),
        source=source,
    )


def parse_ontology_path(path) -> Ontology:
    """Read and parse an ontology file, naming the file in any error."""
    from pathlib import Path

    p = Path(path)
    return parse_ontology(p.read_text(encoding="utf-8"), source=str(p))
