"""Service descriptions and their on-disk JSON document format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import SemMatchError
from .ontology import Ontology, UnknownConceptError

DOCUMENT_KEYS = {"name", "inputs", "outputs"}


class InvalidDocumentError(SemMatchError):
    """A service document is malformed or violates the schema."""


@dataclass(frozen=True)
class ServiceDescription:
    """A named service with ordered input and output concept lists.

    Duplicate concepts within one list are allowed; each occurrence is a
    distinct vertex in the match graph.
    """

    name: str
    inputs: tuple[str, ...] = field(default=())
    outputs: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.name:
            raise InvalidDocumentError("service name must be non-empty")
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))

    def validate_concepts(self, ont: Ontology) -> None:
        """Raise UnknownConceptError naming this service for any undeclared concept."""
        for concept in self.inputs + self.outputs:
            if concept not in ont:
                raise UnknownConceptError(concept, context=f"service {self.name!r}")

    def to_document(self) -> dict:
        return {"name": self.name, "inputs": list(self.inputs), "outputs": list(self.outputs)}


def service_from_document(doc: object, source: str | None = None) -> ServiceDescription:
    """Validate a decoded service document and build a ServiceDescription.

    Exactly the keys name/inputs/outputs are accepted; unknown keys are
    rejected. The lists may be empty.
    """

    def bad(reason: str) -> InvalidDocumentError:
        return InvalidDocumentError(f"{source}: {reason}" if source else reason)

    if not isinstance(doc, dict):
        raise bad("service document must be a JSON object")
    unknown = set(doc) - DOCUMENT_KEYS
    if unknown:
        raise bad(f"unknown keys: {', '.join(sorted(unknown))}")
    missing = DOCUMENT_KEYS - set(doc)
    if missing:
        raise bad(f"missing keys: {', '.join(sorted(missing))}")
    name = doc["name"]
    if not isinstance(name, str) or not name:
        raise bad("'name' must be a non-empty string")
    lists: dict[str, tuple[str, ...]] = {}
    for key in ("inputs", "outputs"):
        value = doc[key]
        if not isinstance(value, list) or not all(isinstance(c, str) and c for c in value):
            raise bad(f"'{key}' must be a list of non-empty concept ids")
        lists[key] = tuple(value)
    return ServiceDescription(name=name, inputs=lists["inputs"], outputs=lists["outputs"])


def parse_service_document(text: str, source: str | None = None) -> ServiceDescription:
    """Parse the JSON text of a .service.json document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        prefix = f"{source}: " if source else ""
        raise InvalidDocumentError(f"{prefix}invalid JSON: {exc}") from exc
    return service_from_document(doc, source=source)


def dump_service_document(service: ServiceDescription) -> str:
    """Canonical on-disk rendering of a service document."""
    return json.dumps(service.to_document(), indent=2) + "\n"
