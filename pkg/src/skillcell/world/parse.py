"""Line-oriented triple file parser.

Format (UTF-8):

    @prefix name: <expansion>        # prefix declaration ("" allowed)
    subject predicate object .       # one triple per line
    # comment to end of line

Tokens are ``prefix:local`` IRIs (a bare token resolves against the default
prefix ``:``).  Objects may also be literals: ``"quoted strings"``, bare
numbers, or ``true``/``false``.  Ontology and scene use the same syntax in
separate files.
"""

from __future__ import annotations

import re

from ..errors import CyclicHierarchy, ParseError, UnknownPredicate, UnknownSymbol
from .model import (
    BUILTIN_PREFIXES,
    Iri,
    Ontology,
    RelationDecl,
    Triple,
    WorldModel,
    LITERAL_KINDS,
    RDF_PROPERTY,
    RDF_TYPE,
    RDFS_CLASS,
    RDFS_DOMAIN,
    RDFS_RANGE,
    RDFS_SUBCLASS_OF,
)

_PREFIX_RE = re.compile(r"^@prefix\s+(\w*):\s+<([^>]*)>\s*$")
_NUMBER_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def _strip_comment(line: str) -> str:
    out = []
    in_string = False
    in_angle = False
    i = 0
    while i < len(line):
        ch = line[i]
        if ch == '"' and not in_angle and (i == 0 or line[i - 1] != "\\"):
            in_string = not in_string
        elif ch == "<" and not in_string:
            in_angle = True
        elif ch == ">" and not in_string:
            in_angle = False
        if ch == "#" and not in_string and not in_angle:
            break
        out.append(ch)
        i += 1
    return "".join(out)


def _tokenize(line: str, lineno: int) -> list[tuple[str, int]]:
    """Split a triple line into (token, column) pairs, respecting strings."""
    tokens = []
    i = 0
    n = len(line)
    while i < n:
        if line[i].isspace():
            i += 1
            continue
        start = i
        if line[i] == '"':
            i += 1
            while i < n and not (line[i] == '"' and line[i - 1] != "\\"):
                i += 1
            if i >= n:
                raise ParseError("unterminated string literal", lineno, start + 1)
            i += 1
        else:
            while i < n and not line[i].isspace():
                i += 1
        tokens.append((line[start:i], start + 1))
    return tokens


def _parse_term(token: str, prefixes: dict, lineno: int, col: int):
    """IRI or literal from a raw token."""
    if token.startswith('"'):
        return token[1:-1].replace('\\"', '"')
    if token == "true":
        return True
    if token == "false":
        return False
    if _NUMBER_RE.match(token):
        return float(token)
    if ":" in token:
        prefix, local = token.split(":", 1)
    else:
        prefix, local = "", token
    if prefix not in prefixes:
        raise ParseError(f"undeclared prefix '{prefix}:'", lineno, col)
    if not local:
        raise ParseError("empty local name", lineno, col)
    return Iri(prefix, local)


def parse_triple_file(text: str):
    """Parse into (prefix table, raw triples with positions).

    Returns (prefixes, [(subject, predicate, object, lineno)]).
    """
    prefixes = dict(BUILTIN_PREFIXES)
    triples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        m = _PREFIX_RE.match(line.strip())
        if m:
            prefixes[m.group(1)] = m.group(2)
            continue
        tokens = _tokenize(line, lineno)
        if tokens[-1][0] != ".":
            raise ParseError("triple must end with '.'", lineno, tokens[-1][1])
        if len(tokens) != 4:
            raise ParseError(
                f"expected 'subject predicate object .', got {len(tokens) - 1} terms",
                lineno,
                tokens[0][1],
            )
        terms = [_parse_term(tok, prefixes, lineno, col) for tok, col in tokens[:3]]
        subject, predicate, obj = terms
        if not isinstance(subject, Iri):
            raise ParseError("subject must be an IRI", lineno, tokens[0][1])
        if not isinstance(predicate, Iri):
            raise ParseError("predicate must be an IRI", lineno, tokens[1][1])
        triples.append((subject, predicate, obj, lineno))
    return prefixes, triples


def load_ontology(text: str, ontology: Ontology | None = None) -> Ontology:
    """Register concepts and relation declarations from a triple file.

    Recognized forms:
        C rdf:type rdfs:Class .
        C rdfs:subClassOf D .
        p rdf:type rdf:Property .
        p rdfs:domain C .
        p rdfs:range C|string|number|boolean .
    """
    ont = ontology or Ontology()
    prefixes, triples = parse_triple_file(text)
    ont.prefixes.update(prefixes)

    parents: dict[Iri, set] = {}
    domains: dict[Iri, Iri] = {}
    ranges: dict[Iri, object] = {}
    properties: list[Iri] = []

    for subject, predicate, obj, lineno in triples:
        if predicate == RDF_TYPE and obj == RDFS_CLASS:
            parents.setdefault(subject, set())
        elif predicate == RDFS_SUBCLASS_OF:
            if not isinstance(obj, Iri):
                raise ParseError("subClassOf object must be a concept", lineno)
            parents.setdefault(subject, set()).add(obj)
            parents.setdefault(obj, set())
        elif predicate == RDF_TYPE and obj == RDF_PROPERTY:
            properties.append(subject)
        elif predicate == RDFS_DOMAIN:
            domains[subject] = obj
        elif predicate == RDFS_RANGE:
            if isinstance(obj, Iri) and obj.prefix == "" and obj.local in LITERAL_KINDS:
                ranges[subject] = obj.local
            else:
                ranges[subject] = obj
        else:
            raise UnknownPredicate(
                f"line {lineno}: ontology files only accept rdf:/rdfs: declarations, got {predicate}"
            )

    _check_acyclic(parents)
    for concept, ps in parents.items():
        ont.add_concept(concept, ps)
    for prop in properties:
        if prop not in domains or prop not in ranges:
            raise UnknownSymbol(f"property {prop} lacks rdfs:domain or rdfs:range")
        rng = ranges[prop]
        if isinstance(rng, Iri) and rng not in parents and rng not in ont.concepts:
            raise UnknownSymbol(f"property {prop} range {rng} is not a declared concept")
        dom = domains[prop]
        if dom not in parents and dom not in ont.concepts:
            raise UnknownSymbol(f"property {prop} domain {dom} is not a declared concept")
        ont.add_relation(RelationDecl(prop, dom, rng))
    return ont


def _check_acyclic(parents: dict):
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {c: WHITE for c in parents}

    def visit(node, path):
        color[node] = GRAY
        path.append(node)
        for p in parents.get(node, ()):
            if color.get(p, BLACK) == GRAY:
                cycle = path[path.index(p):] + [p]
                raise CyclicHierarchy(cycle)
            if color.get(p, BLACK) == WHITE:
                visit(p, path)
        path.pop()
        color[node] = BLACK

    for c in sorted(parents, key=str):
        if color[c] == WHITE:
            visit(c, [])


def load_scene(text: str, wm: WorldModel) -> int:
    """Populate instances and asserted triples from a scene file.

    Instances are declared with ``x rdf:type Concept .``; all other lines are
    asserted as ordinary triples.  Returns the resulting revision.
    """
    prefixes, triples = parse_triple_file(text)
    wm.ontology.prefixes.update(prefixes)
    rev = wm.revision
    # Two passes so property lines may precede the rdf:type declaration.
    for subject, predicate, obj, lineno in triples:
        if predicate == RDF_TYPE:
            if not isinstance(obj, Iri) or obj not in wm.ontology.concepts:
                raise UnknownSymbol(f"line {lineno}: unknown concept {obj}")
            rev = wm.add_instance(subject, obj)
    for subject, predicate, obj, lineno in triples:
        if predicate == RDF_TYPE:
            continue
        try:
            rev = wm.assert_triple(Triple(subject, predicate, obj))
        except (UnknownPredicate, UnknownSymbol) as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    return rev
