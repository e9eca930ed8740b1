"""Semantic service matchmaking toolkit.

Classifies per-concept compatibility on a four-level lattice
(exact > plugin > subsume > fail), scores service pairs with bipartite
max-min matching over their input and output concept lists, and scans a
file-backed registry for the best replacement of a crashed service.
"""

from .errors import SemMatchError
from .matching import (
    Assignment,
    BottleneckResult,
    InstanceTooLargeError,
    MatchGraph,
    bottleneck_match,
    brute_force_bottleneck,
    build_graph,
)
from .matchmaker import (
    BestMatch,
    EmptyRepositoryError,
    InputDirection,
    MatchReport,
    MatchStats,
    combine,
    find_match,
    match_services,
    match_side,
    rank_all,
)
from .ontology import (
    CycleError,
    DegreeOfMatch,
    DuplicateDeclarationError,
    Ontology,
    OntologyError,
    OntologySyntaxError,
    RelationKind,
    UnknownConceptError,
    parse_ontology,
    parse_ontology_path,
)
from .registry import (
    DuplicateServiceNameError,
    PersistenceError,
    Registry,
    RegistryError,
    RegistryLoadError,
    ServiceNotFoundError,
    init_registry,
    load_registry,
    publish,
    remove,
)
from .server import BindError, RegistryServer, make_server, serve
from .services import (
    InvalidDocumentError,
    ServiceDescription,
    dump_service_document,
    parse_service_document,
    service_from_document,
)
from .wire import build_match_payload, payload_bytes

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BestMatch",
    "BindError",
    "BottleneckResult",
    "CycleError",
    "DegreeOfMatch",
    "DuplicateDeclarationError",
    "DuplicateServiceNameError",
    "EmptyRepositoryError",
    "InputDirection",
    "InstanceTooLargeError",
    "InvalidDocumentError",
    "MatchGraph",
    "MatchReport",
    "MatchStats",
    "Ontology",
    "OntologyError",
    "OntologySyntaxError",
    "PersistenceError",
    "Registry",
    "RegistryError",
    "RegistryLoadError",
    "RegistryServer",
    "SemMatchError",
    "ServiceDescription",
    "ServiceNotFoundError",
    "UnknownConceptError",
    "bottleneck_match",
    "brute_force_bottleneck",
    "build_graph",
    "build_match_payload",
    "combine",
    "dump_service_document",
    "find_match",
    "init_registry",
    "load_registry",
    "make_server",
    "match_services",
    "match_side",
    "parse_ontology",
    "parse_ontology_path",
    "parse_service_document",
    "payload_bytes",
    "publish",
    "rank_all",
    "remove",
    "serve",
    "service_from_document",
    "RelationKind",
    "__version__",
]
