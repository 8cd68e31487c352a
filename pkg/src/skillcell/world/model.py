"""In-memory ontology + scene triple store.

Knowledge lives in two layers: an ontology (concepts with a subclass
hierarchy, relation declarations) and a scene (instances and asserted
triples).  Every asserted triple is type-checked against the ontology.
Mutations are serialized behind a lock and bump a monotone revision
counter; readers can take a cheap frozen snapshot at any revision.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from ..errors import TypeMismatch, UnknownPredicate, UnknownSymbol

LITERAL_KINDS = ("string", "number", "boolean")

# Predicates every model understands without an explicit declaration.
BUILTIN_PREFIXES = {
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
}


@dataclass(frozen=True, order=True)
class Iri:
    """Prefixed identifier; canonical text form is ``prefix:local``."""

    prefix: str
    local: str

    def __post_init__(self):
        if not self.local:
            raise ValueError("IRI local name must be non-empty")

    def __str__(self):
        return f"{self.prefix}:{self.local}"


RDF_TYPE = Iri("rdf", "type")
RDF_PROPERTY = Iri("rdf", "Property")
RDFS_CLASS = Iri("rdfs", "Class")
RDFS_SUBCLASS_OF = Iri("rdfs", "subClassOf")
RDFS_DOMAIN = Iri("rdfs", "domain")
RDFS_RANGE = Iri("rdfs", "range")


def literal_kind(value) -> str:
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, (int, float)):
        return "number"
    if isinstance(value, str):
        return "string"
    raise TypeError(f"unsupported literal type: {type(value).__name__}")


def format_literal(value) -> str:
    """Canonical text form of a literal, matching the triple file syntax."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return format(float(value), "g")
    return '"' + str(value).replace('"', '\\"') + '"'


@dataclass(frozen=True)
class Concept:
    iri: Iri
    parents: frozenset = frozenset()


@dataclass(frozen=True)
class RelationDecl:
    iri: Iri
    domain: Iri
    # Either a concept Iri or one of LITERAL_KINDS.
    range: object

    @property
    def is_data(self) -> bool:
        return isinstance(self.range, str)


@dataclass
class Instance:
    iri: Iri
    concept: Iri
    properties: dict = field(default_factory=dict)

    @property
    def pose(self):
        """(x, y, theta) in meters/radians, or None when x/y unset."""
        p = self.properties
        if "x" in p and "y" in p:
            return (float(p["x"]), float(p["y"]), float(p.get("theta", 0.0)))
        return None


@dataclass(frozen=True)
class Triple:
    subject: Iri
    predicate: Iri
    object: object  # Iri or literal

    def sort_key(self):
        obj = self.object
        obj_text = str(obj) if isinstance(obj, Iri) else format_literal(obj)
        return (str(self.subject), str(self.predicate), obj_text)


class Ontology:
    """Concepts, relation declarations and the prefix table."""

    def __init__(self):
        self.prefixes = dict(BUILTIN_PREFIXES)
        self.concepts: dict[Iri, Concept] = {}
        self.relations: dict[Iri, RelationDecl] = {}

    def add_concept(self, iri: Iri, parents=()):
        existing = self.concepts.get(iri)
        merged = frozenset(parents) | (existing.parents if existing else frozenset())
        self.concepts[iri] = Concept(iri, merged)

    def add_relation(self, decl: RelationDecl):
        self.relations[decl.iri] = decl

    def ancestors(self, concept: Iri) -> set:
        """Transitive parents of `concept`, including itself."""
        seen = {concept}
        stack = [concept]
        while stack:
            c = self.concepts.get(stack.pop())
            if c is None:
                continue
            for p in c.parents:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    def is_subconcept(self, concept: Iri, of: Iri) -> bool:
        return of in self.ancestors(concept)

    def relation_by_local(self, local: str) -> Iri | None:
        for iri in self.relations:
            if iri.local == local:
                return iri
        return None

    def copy(self) -> "Ontology":
        out = Ontology()
        out.prefixes = dict(self.prefixes)
        out.concepts = dict(self.concepts)
        out.relations = dict(self.relations)
        return out


class WorldModel:
    """Ontology + scene with serialized mutations and revision tracking."""

    def __init__(self, ontology: Ontology | None = None):
        self.ontology = ontology or Ontology()
        self.instances: dict[Iri, Instance] = {}
        self._triples: set[Triple] = set()
        self.revision = 0
        self._lock = threading.RLock()

    # -- mutation -----------------------------------------------------------

    def add_instance(self, iri: Iri, concept: Iri) -> int:
        with self._lock:
            if concept not in self.ontology.concepts:
                raise UnknownSymbol(f"undeclared concept: {concept}")
            self.instances[iri] = Instance(iri, concept)
            self._triples.add(Triple(iri, RDF_TYPE, concept))
            self.revision += 1
            return self.revision

    def assert_triple(self, t: Triple) -> int:
        """Add a type-checked triple; re-asserting is a no-op on contents
        but still bumps the revision.  Data properties are functional: a new
        literal value replaces the old one."""
        with self._lock:
            self._check(t)
            if not isinstance(t.object, Iri):
                stale = [
                    old
                    for old in self._triples
                    if old.subject == t.subject
                    and old.predicate == t.predicate
                    and not isinstance(old.object, Iri)
                ]
                self._triples.difference_update(stale)
                inst = self.instances.get(t.subject)
                if inst is not None:
                    inst.properties[t.predicate.local] = t.object
            self._triples.add(t)
            self.revision += 1
            return self.revision

    def retract_triple(self, t: Triple) -> int:
        with self._lock:
            self._triples.discard(t)
            if not isinstance(t.object, Iri):
                inst = self.instances.get(t.subject)
                if inst is not None:
                    inst.properties.pop(t.predicate.local, None)
            self.revision += 1
            return self.revision

    def set_pose(self, iri: Iri, x: float, y: float, theta: float = 0.0) -> int:
        """Overwrite an instance pose; one revision bump for the batch."""
        with self._lock:
            inst = self.instances.get(iri)
            if inst is None:
                raise UnknownSymbol(f"unknown instance: {iri}")
            for name, value in (("x", float(x)), ("y", float(y)), ("theta", float(theta))):
                inst.properties[name] = value
                pred = self.ontology.relation_by_local(name)
                if pred is not None:
                    self._triples = {
                        t
                        for t in self._triples
                        if not (t.subject == iri and t.predicate == pred)
                    }
                    self._triples.add(Triple(iri, pred, value))
            self.revision += 1
            return self.revision

    def _check(self, t: Triple):
        ont = self.ontology
        if t.predicate == RDF_TYPE:
            if not isinstance(t.object, Iri) or t.object not in ont.concepts:
                raise TypeMismatch(f"rdf:type object must be a declared concept: {t.object}")
            if t.subject not in self.instances:
                raise UnknownSymbol(f"rdf:type on undeclared instance: {t.subject}")
            return
        decl = ont.relations.get(t.predicate)
        if decl is None:
            raise UnknownPredicate(f"undeclared predicate: {t.predicate}")
        subj = self.instances.get(t.subject)
        if subj is None and t.subject not in ont.concepts:
            raise UnknownSymbol(f"undeclared subject: {t.subject}")
        if subj is not None and not ont.is_subconcept(subj.concept, decl.domain):
            raise TypeMismatch(
                f"{t.predicate} expects domain {decl.domain}, got {t.subject} of {subj.concept}"
            )
        if decl.is_data:
            if isinstance(t.object, Iri) or literal_kind(t.object) != decl.range:
                raise TypeMismatch(f"{t.predicate} expects a {decl.range} literal")
        else:
            if not isinstance(t.object, Iri):
                raise TypeMismatch(f"{t.predicate} expects an instance, got literal")
            obj = self.instances.get(t.object)
            if obj is None:
                raise UnknownSymbol(f"undeclared object: {t.object}")
            if not ont.is_subconcept(obj.concept, decl.range):
                raise TypeMismatch(
                    f"{t.predicate} expects range {decl.range}, got {t.object} of {obj.concept}"
                )

    # -- queries ------------------------------------------------------------

    def query(self, subject=None, predicate=None, object=None) -> list[Triple]:
        """All stored triples matching the bound fields, canonically ordered."""
        with self._lock:
            out = [
                t
                for t in self._triples
                if (subject is None or t.subject == subject)
                and (predicate is None or t.predicate == predicate)
                and (object is None or t.object == object)
            ]
        out.sort(key=Triple.sort_key)
        return out

    def has_triple(self, t: Triple) -> bool:
        with self._lock:
            return t in self._triples

    def triple_count(self) -> int:
        with self._lock:
            return len(self._triples)

    def instances_of(self, concept: Iri) -> list[Instance]:
        """Instances whose concept is `concept` or a subconcept of it."""
        with self._lock:
            out = [
                i
                for i in self.instances.values()
                if self.ontology.is_subconcept(i.concept, concept)
            ]
        out.sort(key=lambda i: str(i.iri))
        return out

    def eval_predicate(self, predicate: Iri, subject: Iri, object, expected: bool = True) -> bool:
        """True iff presence of the ground triple (asserted or spatially
        derived) equals `expected`."""
        from .spatial import infer_spatial

        with self._lock:
            if predicate != RDF_TYPE and predicate not in self.ontology.relations:
                raise UnknownPredicate(f"undeclared predicate: {predicate}")
            t = Triple(subject, predicate, object)
            present = t in self._triples or t in infer_spatial(self)
        return present == expected

    # -- snapshots ----------------------------------------------------------

    def snapshot(self) -> "WorldModel":
        """Frozen copy at the current revision; safe for concurrent planning."""
        with self._lock:
            wm = WorldModel(self.ontology.copy())
            wm.instances = {
                iri: Instance(i.iri, i.concept, dict(i.properties))
                for iri, i in self.instances.items()
            }
            wm._triples = set(self._triples)
            wm.revision = self.revision
        return wm
