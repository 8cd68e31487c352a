from .model import (
    Iri,
    Concept,
    RelationDecl,
    Instance,
    Triple,
    Ontology,
    WorldModel,
    LITERAL_KINDS,
    format_literal,
)
from .parse import parse_triple_file, load_ontology, load_scene
from .spatial import infer_spatial

__all__ = [
    "Iri",
    "Concept",
    "RelationDecl",
    "Instance",
    "Triple",
    "Ontology",
    "WorldModel",
    "LITERAL_KINDS",
    "format_literal",
    "parse_triple_file",
    "load_ontology",
    "load_scene",
    "infer_spatial",
]
