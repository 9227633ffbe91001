"""Language profiles: user-defined terms mapped onto ontology terms.

A profile bundles four things: the ontology terms in use, the user's
own term names, a many-to-many mapping between the two, and a reference
to the source ontology.  Profiles are stored as small XML documents
(``.prf`` files) with a fixed element vocabulary: PROFILE /
USER_DEFINED_TERM / ONTOLOGY_TERM.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, replace
from xml.sax.saxutils import quoteattr

from . import owl_model
from .errors import (
    DuplicateName,
    EmptyMapping,
    EmptySource,
    MalformedXml,
    SchemaViolation,
)


@dataclass(frozen=True)
class UserDefinedTerm:
    name: str
    ontology_terms: tuple[str, ...]  # ontology local names, duplicate-free
    description: str = ""


@dataclass(frozen=True)
class Profile:
    author: str
    version: str
    source: str  # IRI of the source ontology
    description: str = ""
    terms: tuple[UserDefinedTerm, ...] = ()

    def term(self, name: str) -> UserDefinedTerm | None:
        for t in self.terms:
            if t.name == name:
                return t
        return None

    def term_names(self) -> list[str]:
        return [t.name for t in self.terms]


def new_profile(author: str, version: str, source: str) -> Profile:
    if not source:
        raise EmptySource("profile needs a source ontology IRI")
    return Profile(author=author, version=version, source=source)


def add_term(
    p: Profile, name: str, onto_terms: list[str], description: str = ""
) -> Profile:
    """Return a profile with the term appended; existing terms are
    never mutated."""
    if p.term(name) is not None:
        raise DuplicateName(name)
    deduped = list(dict.fromkeys(onto_terms))
    if not deduped:
        raise EmptyMapping(f"term {name!r} maps to no ontology terms")
    term = UserDefinedTerm(
        name=name, ontology_terms=tuple(deduped), description=description
    )
    return replace(p, terms=p.terms + (term,))


def serialize_profile(p: Profile) -> bytes:
    """Canonical UTF-8 XML: attribute order AUTHOR, DESCRIPTION,
    VERSION, SOURCE on the root; DESCRIPTION, NAME on each term."""
    out = ['<?xml version="1.0" encoding="UTF-8"?>\n']
    out.append(
        "<PROFILE AUTHOR=%s DESCRIPTION=%s VERSION=%s SOURCE=%s>"
        % (
            quoteattr(p.author),
            quoteattr(p.description),
            quoteattr(p.version),
            quoteattr(p.source),
        )
    )
    for term in p.terms:
        out.append(
            "\n  <USER_DEFINED_TERM DESCRIPTION=%s NAME=%s>"
            % (quoteattr(term.description), quoteattr(term.name))
        )
        for name in term.ontology_terms:
            out.append("\n    <ONTOLOGY_TERM NAME=%s/>" % quoteattr(name))
        out.append("\n  </USER_DEFINED_TERM>")
    out.append("\n</PROFILE>\n")
    return "".join(out).encode("utf-8")


def parse_profile(data: bytes) -> Profile:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as e:
        raise MalformedXml(str(e)) from e
    if root.tag != "PROFILE":
        raise SchemaViolation(f"expected PROFILE root, got {root.tag}")
    attrs = root.attrib
    for required in ("AUTHOR", "VERSION", "SOURCE"):
        if required not in attrs:
            raise SchemaViolation(f"PROFILE missing attribute {required}")
    if not attrs["SOURCE"]:
        raise SchemaViolation("PROFILE SOURCE is empty")
    p = Profile(
        author=attrs["AUTHOR"],
        version=attrs["VERSION"],
        source=attrs["SOURCE"],
        description=attrs.get("DESCRIPTION", ""),
    )
    seen: set[str] = set()
    terms: list[UserDefinedTerm] = []
    for el in root:
        if el.tag != "USER_DEFINED_TERM":
            raise SchemaViolation(f"unexpected element {el.tag} in PROFILE")
        if "NAME" not in el.attrib:
            raise SchemaViolation("USER_DEFINED_TERM missing NAME")
        name = el.attrib["NAME"]
        if name in seen:
            raise SchemaViolation(f"duplicate user-defined term {name!r}")
        seen.add(name)
        onto: list[str] = []
        for sub in el:
            if sub.tag != "ONTOLOGY_TERM":
                raise SchemaViolation(
                    f"unexpected element {sub.tag} in USER_DEFINED_TERM"
                )
            if "NAME" not in sub.attrib:
                raise SchemaViolation("ONTOLOGY_TERM missing NAME")
            if sub.attrib["NAME"] not in onto:
                onto.append(sub.attrib["NAME"])
        if not onto:
            raise SchemaViolation(f"term {name!r} has no ONTOLOGY_TERM children")
        terms.append(
            UserDefinedTerm(
                name=name,
                ontology_terms=tuple(onto),
                description=el.attrib.get("DESCRIPTION", ""),
            )
        )
    return replace(p, terms=tuple(terms))


@dataclass(frozen=True)
class Finding:
    kind: str  # Unresolved | Ambiguous
    term: str  # user-defined term name
    ontology_term: str
    message: str


def validate_against_ontology(
    p: Profile, doc: owl_model.OntologyDocument
) -> list[Finding]:
    """Check every mapped ontology term resolves, by local name, to a
    unique class or individual in the ontology.  Returns findings, not
    failures."""
    by_local: dict[str, list[str]] = {}
    for iri in list(doc.classes) + list(doc.individuals):
        by_local.setdefault(owl_model.local_name(iri), []).append(iri)
    findings: list[Finding] = []
    for term in p.terms:
        for name in term.ontology_terms:
            matches = by_local.get(name, [])
            if not matches:
                findings.append(
                    Finding(
                        kind="Unresolved",
                        term=term.name,
                        ontology_term=name,
                        message=f"{name!r} not found in ontology",
                    )
                )
            elif len(set(matches)) > 1:
                findings.append(
                    Finding(
                        kind="Ambiguous",
                        term=term.name,
                        ontology_term=name,
                        message=f"{name!r} matches {sorted(set(matches))}",
                    )
                )
    return findings
