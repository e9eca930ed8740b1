"""File-backed service registry: one ontology, one JSON document per service.

A registry directory holds ``ontology.ont``, zero or more
``*.service.json`` documents, and an ``order.manifest`` file recording
publication order (one filename per line). Registry values are immutable
snapshots; publish and remove persist to disk first and then return a new
snapshot with the version bumped, leaving the old value untouched. That
makes single-writer / multi-reader isolation a matter of swapping one
reference.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .errors import SemMatchError
from .ontology import Ontology, parse_ontology
from .services import (
    InvalidDocumentError,
    ServiceDescription,
    dump_service_document,
    parse_service_document,
)

ONTOLOGY_FILENAME = "ontology.ont"
MANIFEST_FILENAME = "order.manifest"
SERVICE_SUFFIX = ".service.json"


class RegistryError(SemMatchError):
    """Base class for registry storage errors."""


class DuplicateServiceNameError(RegistryError):
    """A service with this name is already published."""


class ServiceNotFoundError(RegistryError):
    """No published service has this name."""


class PersistenceError(RegistryError):
    """A disk write failed; the in-memory registry was left unchanged."""


class RegistryLoadError(RegistryError):
    """The registry directory structure is inconsistent."""


@dataclass(frozen=True)
class ServiceRecord:
    service: ServiceDescription
    filename: str


@dataclass(frozen=True)
class Registry:
    """Immutable snapshot of a registry directory."""

    root: Path
    ontology: Ontology
    ontology_text: str
    records: tuple[ServiceRecord, ...]
    version: int = 0

    @property
    def services(self) -> tuple[ServiceDescription, ...]:
        return tuple(record.service for record in self.records)

    def names(self) -> tuple[str, ...]:
        return tuple(record.service.name for record in self.records)

    def get(self, name: str) -> ServiceDescription | None:
        for record in self.records:
            if record.service.name == name:
                return record.service
        return None

    def same_contents(self, other: "Registry") -> bool:
        """Equality modulo version and directory location."""
        return self.ontology == other.ontology and self.records == other.records


def load_registry(path: str | Path) -> Registry:
    """Load a registry directory; services come back in publication order.

    Order is lexicographic by filename unless ``order.manifest`` exists, in
    which case the manifest rules and any unlisted service files are
    appended lexicographically.
    """
    root = Path(path)
    ontology_path = root / ONTOLOGY_FILENAME
    ontology_text = ontology_path.read_text(encoding="utf-8")
    ontology = parse_ontology(ontology_text, source=str(ontology_path))

    present = sorted(p.name for p in root.glob(f"*{SERVICE_SUFFIX}"))
    ordered = _apply_manifest(root, present)

    records: list[ServiceRecord] = []
    seen: dict[str, str] = {}
    for filename in ordered:
        service_path = root / filename
        service = parse_service_document(
            service_path.read_text(encoding="utf-8"), source=str(service_path)
        )
        if service.name in seen:
            raise DuplicateServiceNameError(
                f"service name {service.name!r} declared by both "
                f"{seen[service.name]} and {filename}"
            )
        service.validate_concepts(ontology)
        seen[service.name] = filename
        records.append(ServiceRecord(service, filename))

    return Registry(
        root=root,
        ontology=ontology,
        ontology_text=ontology_text,
        records=tuple(records),
        version=0,
    )


def _apply_manifest(root: Path, present: list[str]) -> list[str]:
    manifest_path = root / MANIFEST_FILENAME
    if not manifest_path.exists():
        return present
    listed = [
        line.strip()
        for line in manifest_path.read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    present_set = set(present)
    for filename in listed:
        if filename not in present_set:
            raise RegistryLoadError(
                f"{manifest_path}: manifest lists missing file {filename!r}"
            )
    listed_set = set(listed)
    if len(listed_set) != len(listed):
        raise RegistryLoadError(f"{manifest_path}: manifest lists a file twice")
    return listed + [f for f in present if f not in listed_set]


def publish(reg: Registry, service: ServiceDescription) -> Registry:
    """Persist a new service document and return the updated snapshot."""
    if reg.get(service.name) is not None:
        raise DuplicateServiceNameError(f"service name {service.name!r} already published")
    service.validate_concepts(reg.ontology)
    filename = _filename_for(service.name)
    if any(record.filename == filename for record in reg.records):
        raise PersistenceError(f"filename {filename!r} already in use")
    service_path = reg.root / filename
    if service_path.exists():
        raise PersistenceError(f"stray file {filename!r} already on disk")

    records = reg.records + (ServiceRecord(service, filename),)
    _atomic_write(service_path, dump_service_document(service))
    try:
        _write_manifest(reg.root, records)
    except PersistenceError:
        service_path.unlink(missing_ok=True)
        raise
    return Registry(
        root=reg.root,
        ontology=reg.ontology,
        ontology_text=reg.ontology_text,
        records=records,
        version=reg.version + 1,
    )


def remove(reg: Registry, name: str) -> Registry:
    """Delete a service document and return the updated snapshot."""
    remaining = tuple(record for record in reg.records if record.service.name != name)
    if len(remaining) == len(reg.records):
        raise ServiceNotFoundError(f"no service named {name!r}")
    victim = next(record for record in reg.records if record.service.name == name)

    _write_manifest(reg.root, remaining)
    try:
        (reg.root / victim.filename).unlink()
    except OSError as exc:
        raise PersistenceError(f"could not delete {victim.filename!r}: {exc}") from exc
    return Registry(
        root=reg.root,
        ontology=reg.ontology,
        ontology_text=reg.ontology_text,
        records=remaining,
        version=reg.version + 1,
    )


def init_registry(path: str | Path, ontology_text: str) -> Registry:
    """Create a fresh registry directory around the given ontology document."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    ontology = parse_ontology(ontology_text)  # validate before touching disk
    _atomic_write(root / ONTOLOGY_FILENAME, ontology_text)
    _write_manifest(root, ())
    return Registry(
        root=root,
        ontology=ontology,
        ontology_text=ontology_text,
        records=(),
        version=0,
    )


def _filename_for(name: str) -> str:
    if name.startswith(".") or any(ch in name for ch in "/\\\0"):
        raise InvalidDocumentError(
            f"service name {name!r} cannot be stored as a filename"
        )
    return f"{name}{SERVICE_SUFFIX}"


def _write_manifest(root: Path, records: tuple[ServiceRecord, ...]) -> None:
    body = "".join(f"{record.filename}\n" for record in records)
    _atomic_write(root / MANIFEST_FILENAME, body)


def _atomic_write(path: Path, content: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_text(content, encoding="utf-8")
        os.replace(tmp, path)
    except OSError as exc:
        tmp.unlink(missing_ok=True)
        raise PersistenceError(f"could not write {path}: {exc}") from exc
