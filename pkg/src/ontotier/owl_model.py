"""OWL-subset ontology model.

Parses RDF/XML ontologies covering the construct subset an annotation
front-end actually consumes: named classes with a subclass hierarchy,
object/datatype properties, property restrictions attached through
``rdfs:subClassOf``, and typed individuals.  Everything else is recorded
as a warning, never silently dropped.  No reasoning is performed; all
checks are nominal over declared types.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from urllib.parse import urljoin, urlparse

from .errors import (
    CardinalityViolation,
    CyclicHierarchy,
    DuplicateIri,
    InconsistentConstraints,
    MalformedXml,
    UnknownClass,
    UnresolvableBase,
    ValueTypeViolation,
)

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"


def _tag(ns: str, local: str) -> str:
    return "{%s}%s" % (ns, local)


RDF_RDF = _tag(RDF_NS, "RDF")
RDF_ID = _tag(RDF_NS, "ID")
RDF_ABOUT = _tag(RDF_NS, "about")
RDF_RESOURCE = _tag(RDF_NS, "resource")
RDF_DATATYPE = _tag(RDF_NS, "datatype")
RDF_PARSETYPE = _tag(RDF_NS, "parseType")
RDF_TYPE = _tag(RDF_NS, "type")
RDF_TYPE_IRI = RDF_NS + "type"
RDF_DESCRIPTION = _tag(RDF_NS, "Description")
XML_BASE = "{http://www.w3.org/XML/1998/namespace}base"

CHARACTERISTIC_TYPES = {
    OWL_NS + "FunctionalProperty": "functional",
    OWL_NS + "InverseFunctionalProperty": "inverse_functional",
    OWL_NS + "TransitiveProperty": "transitive",
    OWL_NS + "SymmetricProperty": "symmetric",
}

# datatype properties relate individuals to data values; only
# functionality is meaningful for them
OBJECT_ONLY_CHARACTERISTICS = {"inverse_functional", "transitive", "symmetric"}


@dataclass(frozen=True)
class IriRef:
    """A resource-valued assertion (as opposed to a literal)."""

    iri: str


@dataclass(frozen=True)
class Literal:
    value: str
    datatype: str | None = None


Value = IriRef | Literal


@dataclass(frozen=True)
class Restriction:
    on_property: str
    kind: str  # all_values_from | some_values_from | has_value |
    #            min_cardinality | max_cardinality | exact_cardinality
    value: object

    def __post_init__(self):
        if self.kind.endswith("cardinality") and (
            not isinstance(self.value, int) or self.value < 0
        ):
            raise ValueError("cardinality payload must be a non-negative int")


@dataclass
class OwlClass:
    iri: str
    label: str
    superclasses: set[str] = field(default_factory=set)
    disjoint_with: set[str] = field(default_factory=set)
    equivalent_to: set[str] = field(default_factory=set)
    one_of: list[str] | None = None
    restrictions: list[Restriction] = field(default_factory=list)


@dataclass
class OwlProperty:
    iri: str
    kind: str  # object | datatype
    label: str = ""
    domains: set[str] = field(default_factory=set)
    ranges: set[str] = field(default_factory=set)
    superproperties: set[str] = field(default_factory=set)
    characteristics: set[str] = field(default_factory=set)


@dataclass
class Individual:
    iri: str
    types: set[str]
    assertions: dict[str, list[Value]] = field(default_factory=dict)


@dataclass
class OntologyDocument:
    base_iri: str
    classes: dict[str, OwlClass] = field(default_factory=dict)
    properties: dict[str, OwlProperty] = field(default_factory=dict)
    individuals: dict[str, Individual] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    source: str = ""

    def local_name(self, iri: str) -> str:
        if "#" in iri:
            return iri.rsplit("#", 1)[1]
        return iri.rstrip("/").rsplit("/", 1)[-1]


def local_name(iri: str) -> str:
    if "#" in iri:
        return iri.rsplit("#", 1)[1]
    return iri.rstrip("/").rsplit("/", 1)[-1]


def _split_tag(tag: str) -> tuple[str, str]:
    if tag.startswith("{"):
        ns, local = tag[1:].split("}", 1)
        return ns, local
    return "", tag


def _tag_iri(tag: str) -> str:
    ns, local = _split_tag(tag)
    return ns + local


class _Parser:
    def __init__(self, root: ET.Element, base: str, source: str):
        self.base = root.get(XML_BASE, base)
        if not self.base or not urlparse(self.base).scheme:
            raise UnresolvableBase(f"base IRI is not absolute: {self.base!r}")
        self.doc = OntologyDocument(base_iri=self.base, source=source)
        self.root = root
        # deferred typed nodes whose element tag was not a known construct
        self.pending: list[ET.Element] = []

    def warn(self, msg: str) -> None:
        self.doc.warnings.append(msg)

    def resolve(self, el: ET.Element) -> str | None:
        rid = el.get(RDF_ID)
        if rid is not None:
            return urljoin(self.base, "#" + rid)
        about = el.get(RDF_ABOUT)
        if about is not None:
            return urljoin(self.base, about)
        return None

    def resolve_ref(self, el: ET.Element) -> str | None:
        res = el.get(RDF_RESOURCE)
        if res is not None:
            return urljoin(self.base, res)
        return None

    # --- top level ---

    def run(self) -> OntologyDocument:
        for el in self.root:
            self.dispatch(el)
        # second pass: typed nodes whose class only became known later
        for el in self.pending:
            type_iri = _tag_iri(el.tag)
            if type_iri in self.doc.classes:
                self.parse_individual(el, {type_iri})
            else:
                self.warn(f"unrecognized construct: {type_iri}")
        self._resolve_superclasses()
        self._check_acyclic()
        self._drop_unresolved_assertions()
        return self.doc

    def dispatch(self, el: ET.Element) -> None:
        iri = _tag_iri(el.tag)
        if iri == OWL_NS + "Class":
            self.parse_class(el)
        elif iri == OWL_NS + "ObjectProperty":
            self.parse_property(el, "object")
        elif iri == OWL_NS + "DatatypeProperty":
            self.parse_property(el, "datatype")
        elif iri in CHARACTERISTIC_TYPES:
            prop = self.parse_property(el, "object")
            if prop is not None:
                prop.characteristics.add(CHARACTERISTIC_TYPES[iri])
        elif iri == OWL_NS + "Ontology":
            pass  # header metadata only
        elif iri == OWL_NS + "Thing":
            self.parse_individual(el, set())
        elif el.tag == RDF_DESCRIPTION:
            self.parse_description(el)
        else:
            # possibly a typed individual of a class declared later
            self.pending.append(el)

    def parse_description(self, el: ET.Element) -> None:
        types = set()
        for child in el.findall(RDF_TYPE):
            ref = self.resolve_ref(child)
            if ref:
                types.add(ref)
        if OWL_NS + "Class" in types:
            self.parse_class(el)
        elif OWL_NS + "ObjectProperty" in types:
            self.parse_property(el, "object")
        elif OWL_NS + "DatatypeProperty" in types:
            self.parse_property(el, "datatype")
        else:
            self.parse_individual(el, types - {OWL_NS + "Thing"})

    # --- classes ---

    def parse_class(self, el: ET.Element) -> None:
        iri = self.resolve(el)
        if iri is None:
            self.warn("anonymous top-level class ignored")
            return
        cls = self.doc.classes.get(iri)
        if cls is None:
            cls = OwlClass(iri=iri, label=local_name(iri))
            self.doc.classes[iri] = cls
        for child in el:
            ciri = _tag_iri(child.tag)
            if ciri == RDFS_NS + "label":
                cls.label = (child.text or "").strip() or cls.label
            elif ciri == RDFS_NS + "subClassOf":
                self.parse_subclass_of(cls, child)
            elif ciri == OWL_NS + "disjointWith":
                ref = self.resolve_ref(child)
                if ref:
                    cls.disjoint_with.add(ref)
            elif ciri == OWL_NS + "equivalentClass":
                ref = self.resolve_ref(child)
                if ref:
                    cls.equivalent_to.add(ref)
                else:
                    self.warn(
                        f"unsupported anonymous owl:equivalentClass on {cls.label}"
                    )
            elif ciri == OWL_NS + "oneOf":
                members = self.parse_one_of(child, iri)
                if members:
                    cls.one_of = members
            elif ciri == RDF_TYPE_IRI:
                pass
            elif ciri == RDFS_NS + "comment":
                pass
            else:
                self.warn(f"unsupported construct on class {cls.label}: {ciri}")

    def parse_subclass_of(self, cls: OwlClass, el: ET.Element) -> None:
        ref = self.resolve_ref(el)
        if ref is not None:
            if ref != cls.iri:
                cls.superclasses.add(ref)
            else:
                raise CyclicHierarchy([cls.iri, cls.iri])
            return
        for child in el:
            ciri = _tag_iri(child.tag)
            if ciri == OWL_NS + "Restriction":
                r = self.parse_restriction(child, cls)
                if r is not None:
                    cls.restrictions.append(r)
            elif ciri == OWL_NS + "Class":
                sup = self.resolve(child)
                if sup and sup != cls.iri:
                    cls.superclasses.add(sup)
                else:
                    self.warn(
                        f"unsupported anonymous superclass on {cls.label}"
                    )
            else:
                self.warn(f"unsupported construct on class {cls.label}: {ciri}")

    def parse_restriction(self, el: ET.Element, cls: OwlClass) -> Restriction | None:
        on_property = None
        kind = None
        value: object = None
        for child in el:
            ciri = _tag_iri(child.tag)
            if ciri == OWL_NS + "onProperty":
                on_property = self.resolve_ref(child)
            elif ciri == OWL_NS + "allValuesFrom":
                kind, value = "all_values_from", self.resolve_ref(child)
            elif ciri == OWL_NS + "someValuesFrom":
                kind, value = "some_values_from", self.resolve_ref(child)
            elif ciri == OWL_NS + "hasValue":
                ref = self.resolve_ref(child)
                if ref is not None:
                    kind, value = "has_value", IriRef(ref)
                else:
                    kind, value = "has_value", Literal(
                        (child.text or "").strip(), child.get(RDF_DATATYPE)
                    )
            elif ciri in (
                OWL_NS + "minCardinality",
                OWL_NS + "maxCardinality",
                OWL_NS + "cardinality",
            ):
                try:
                    n = int((child.text or "").strip())
                except ValueError:
                    self.warn(f"non-integer cardinality on {cls.label}")
                    return None
                if n < 0:
                    self.warn(f"negative cardinality on {cls.label}")
                    return None
                kind = {
                    OWL_NS + "minCardinality": "min_cardinality",
                    OWL_NS + "maxCardinality": "max_cardinality",
                    OWL_NS + "cardinality": "exact_cardinality",
                }[ciri]
                value = n
            else:
                self.warn(
                    f"unsupported restriction facet on {cls.label}: {ciri}"
                )
        if on_property is None or kind is None:
            self.warn(f"incomplete restriction on {cls.label} ignored")
            return None
        return Restriction(on_property=on_property, kind=kind, value=value)

    def parse_one_of(self, el: ET.Element, class_iri: str) -> list[str]:
        members: list[str] = []
        if el.get(RDF_PARSETYPE) == "Collection":
            for child in el:
                iri = self.resolve(child)
                if iri:
                    members.append(iri)
                    ind = self.doc.individuals.setdefault(
                        iri, Individual(iri=iri, types=set())
                    )
                    ind.types.add(class_iri)
        else:
            self.warn("owl:oneOf without parseType=Collection unsupported")
        return members

    # --- properties ---

    def parse_property(self, el: ET.Element, kind: str) -> OwlProperty | None:
        iri = self.resolve(el)
        if iri is None:
            self.warn("anonymous property ignored")
            return None
        prop = self.doc.properties.get(iri)
        if prop is None:
            prop = OwlProperty(iri=iri, kind=kind, label=local_name(iri))
            self.doc.properties[iri] = prop
        elif kind == "datatype":
            prop.kind = "datatype"
        for child in el:
            ciri = _tag_iri(child.tag)
            if ciri == RDFS_NS + "label":
                prop.label = (child.text or "").strip() or prop.label
            elif ciri == RDFS_NS + "domain":
                ref = self.resolve_ref(child)
                if ref:
                    prop.domains.add(ref)
            elif ciri == RDFS_NS + "range":
                ref = self.resolve_ref(child)
                if ref:
                    prop.ranges.add(ref)
            elif ciri == RDFS_NS + "subPropertyOf":
                ref = self.resolve_ref(child)
                if ref:
                    prop.superproperties.add(ref)
            elif ciri == RDF_TYPE_IRI:
                ref = self.resolve_ref(child)
                if ref in CHARACTERISTIC_TYPES:
                    prop.characteristics.add(CHARACTERISTIC_TYPES[ref])
            elif ciri == OWL_NS + "equivalentProperty":
                self.warn(f"owl:equivalentProperty on {prop.label} not interpreted")
            elif ciri == OWL_NS + "inverseOf":
                self.warn(f"owl:inverseOf on {prop.label} not interpreted")
            elif ciri == RDFS_NS + "comment":
                pass
            else:
                self.warn(f"unsupported construct on property {prop.label}: {ciri}")
        if prop.kind == "datatype":
            dropped = prop.characteristics & OBJECT_ONLY_CHARACTERISTICS
            for c in sorted(dropped):
                self.warn(f"characteristic {c} dropped on datatype property {prop.label}")
            prop.characteristics -= OBJECT_ONLY_CHARACTERISTICS
        return prop

    # --- individuals ---

    def parse_individual(self, el: ET.Element, types: set[str]) -> None:
        iri = self.resolve(el)
        if iri is None:
            self.warn("anonymous individual ignored")
            return
        ind = self.doc.individuals.get(iri)
        if ind is None:
            ind = Individual(iri=iri, types=set(types))
            self.doc.individuals[iri] = ind
        else:
            ind.types |= types
        for child in el:
            ciri = _tag_iri(child.tag)
            if ciri == RDF_TYPE_IRI:
                ref = self.resolve_ref(child)
                if ref and ref != OWL_NS + "Thing":
                    ind.types.add(ref)
            elif ciri == RDFS_NS + "label":
                pass
            else:
                ref = self.resolve_ref(child)
                if ref is not None:
                    value: Value = IriRef(ref)
                else:
                    value = Literal(
                        (child.text or "").strip(), child.get(RDF_DATATYPE)
                    )
                ind.assertions.setdefault(ciri, []).append(value)

    # --- post-parse checks ---

    def _resolve_superclasses(self) -> None:
        for cls in self.doc.classes.values():
            for sup in sorted(cls.superclasses):
                if sup not in self.doc.classes:
                    self.warn(f"external superclass of {cls.label}: {sup}")

    def _check_acyclic(self) -> None:
        WHITE, GRAY, BLACK = 0, 1, 2
        color = {iri: WHITE for iri in self.doc.classes}
        stack_path: list[str] = []

        def visit(iri: str) -> None:
            color[iri] = GRAY
            stack_path.append(iri)
            for sup in self.doc.classes[iri].superclasses:
                if sup not in color:
                    continue
                if color[sup] == GRAY:
                    start = stack_path.index(sup)
                    raise CyclicHierarchy(stack_path[start:] + [sup])
                if color[sup] == WHITE:
                    visit(sup)
            stack_path.pop()
            color[iri] = BLACK

        for iri in list(color):
            if color[iri] == WHITE:
                visit(iri)

    def _drop_unresolved_assertions(self) -> None:
        for ind in self.doc.individuals.values():
            for piri in list(ind.assertions):
                if piri not in self.doc.properties:
                    self.warn(
                        f"assertion with unknown property {piri} on "
                        f"{local_name(ind.iri)} dropped"
                    )
                    del ind.assertions[piri]


def parse_ontology(data: bytes, base: str, source: str = "") -> OntologyDocument:
    """Parse an RDF/XML ontology into an :class:`OntologyDocument`.

    Unrecognized constructs are collected in ``doc.warnings``.  Raises
    MalformedXml, CyclicHierarchy or UnresolvableBase; no other failure
    mode on well-formed XML.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as e:
        raise MalformedXml(str(e)) from e
    if root.tag != RDF_RDF:
        raise MalformedXml(f"expected rdf:RDF root, got {root.tag}")
    return _Parser(root, base, source).run()


# --- structural queries ---

@dataclass
class TreeNode:
    iri: str
    label: str
    children: list["TreeNode"] = field(default_factory=list)


def class_tree(doc: OntologyDocument) -> list[TreeNode]:
    """Class hierarchy as a forest; multi-parent classes appear under
    each parent, children sorted by label."""
    children_of: dict[str, list[str]] = {iri: [] for iri in doc.classes}
    roots: list[str] = []
    for iri, cls in doc.classes.items():
        parents = [s for s in cls.superclasses if s in doc.classes]
        if not parents:
            roots.append(iri)
        for p in parents:
            children_of[p].append(iri)

    def sort_key(iri: str):
        return (doc.classes[iri].label, iri)

    def build(iri: str) -> TreeNode:
        node = TreeNode(iri=iri, label=doc.classes[iri].label)
        for child in sorted(children_of[iri], key=sort_key):
            node.children.append(build(child))
        return node

    return [build(iri) for iri in sorted(roots, key=sort_key)]


def term_index(doc: OntologyDocument) -> list[tuple[str, str]]:
    """All classes as (label, iri), case-insensitive alphabetical,
    ties broken by IRI."""
    entries = [(cls.label, cls.iri) for cls in doc.classes.values()]
    entries.sort(key=lambda e: (e[0].casefold(), e[1]))
    return entries


def ancestors(doc: OntologyDocument, class_iri: str) -> set[str]:
    """Transitive superclasses of a class, within the document."""
    seen: set[str] = set()
    frontier = [class_iri]
    while frontier:
        cur = frontier.pop()
        for sup in doc.classes[cur].superclasses:
            if sup in doc.classes and sup not in seen:
                seen.add(sup)
                frontier.append(sup)
    return seen


def descendants(doc: OntologyDocument, class_iri: str) -> set[str]:
    """Transitive subclasses of a class, within the document."""
    children_of: dict[str, set[str]] = {}
    for iri, cls in doc.classes.items():
        for sup in cls.superclasses:
            children_of.setdefault(sup, set()).add(iri)
    seen: set[str] = set()
    frontier = [class_iri]
    while frontier:
        cur = frontier.pop()
        for sub in children_of.get(cur, ()):
            if sub not in seen:
                seen.add(sub)
                frontier.append(sub)
    return seen


def instances_of(
    doc: OntologyDocument, class_iri: str, transitive: bool = False
) -> list[Individual]:
    if class_iri not in doc.classes:
        raise UnknownClass(class_iri)
    wanted = {class_iri}
    if transitive:
        wanted |= descendants(doc, class_iri)
    found = [ind for ind in doc.individuals.values() if ind.types & wanted]
    found.sort(key=lambda i: i.iri)
    return found


@dataclass
class EffectiveConstraints:
    """Merged restrictions for one property over a class and its ancestors.

    Cardinality bounds are intersected (tightest win); value constraints
    accumulate since each must hold.
    """

    min_count: int = 0
    max_count: int | None = None
    all_values_from: set[str] = field(default_factory=set)
    some_values_from: set[str] = field(default_factory=set)
    has_values: list[Value] = field(default_factory=list)


def _merge_constraints(
    property_iri: str, restrictions: list[Restriction]
) -> EffectiveConstraints:
    eff = EffectiveConstraints()
    for r in restrictions:
        if r.kind == "min_cardinality":
            eff.min_count = max(eff.min_count, r.value)
        elif r.kind == "max_cardinality":
            eff.max_count = (
                r.value if eff.max_count is None else min(eff.max_count, r.value)
            )
        elif r.kind == "exact_cardinality":
            eff.min_count = max(eff.min_count, r.value)
            eff.max_count = (
                r.value if eff.max_count is None else min(eff.max_count, r.value)
            )
        elif r.kind == "all_values_from":
            if r.value:
                eff.all_values_from.add(r.value)
        elif r.kind == "some_values_from":
            if r.value:
                eff.some_values_from.add(r.value)
        elif r.kind == "has_value":
            if r.value not in eff.has_values:
                eff.has_values.append(r.value)
    if eff.max_count is not None and eff.min_count > eff.max_count:
        raise InconsistentConstraints(property_iri, eff.min_count, eff.max_count)
    return eff


def applicable_properties(
    doc: OntologyDocument, class_iri: str
) -> list[tuple[OwlProperty, EffectiveConstraints]]:
    """Properties relevant when creating an individual of ``class_iri``:
    those whose domain names the class or an ancestor, plus those the
    class or an ancestor restricts."""
    if class_iri not in doc.classes:
        raise UnknownClass(class_iri)
    lineage = {class_iri} | ancestors(doc, class_iri)
    by_property: dict[str, list[Restriction]] = {}
    for c in lineage:
        for r in doc.classes[c].restrictions:
            by_property.setdefault(r.on_property, []).append(r)
    relevant: set[str] = set(by_property)
    for prop in doc.properties.values():
        if prop.domains & lineage:
            relevant.add(prop.iri)
    result = []
    for piri in sorted(relevant):
        prop = doc.properties.get(piri)
        if prop is None:
            # restriction on an undeclared property; surface it anyway
            prop = OwlProperty(iri=piri, kind="object", label=local_name(piri))
        eff = _merge_constraints(piri, by_property.get(piri, []))
        result.append((prop, eff))
    return result


def check_assertions(
    doc: OntologyDocument, class_iri: str, assertions: dict[str, list[Value]]
) -> list[Exception]:
    """All constraint violations of an assertion set against the
    effective constraints of ``class_iri``; empty list means valid."""
    violations: list[Exception] = []
    constrained = applicable_properties(doc, class_iri)
    for prop, eff in constrained:
        values = assertions.get(prop.iri, [])
        n = len(values)
        if n < eff.min_count or (eff.max_count is not None and n > eff.max_count):
            violations.append(
                CardinalityViolation(prop.iri, (eff.min_count, eff.max_count), n)
            )
        for required in eff.has_values:
            if required not in values:
                violations.append(
                    ValueTypeViolation(
                        f"{prop.iri}: required value {required!r} missing"
                    )
                )
        for target in sorted(eff.all_values_from):
            if target not in doc.classes:
                continue  # datatype or external range: best-effort skip
            allowed = {target} | descendants(doc, target)
            for v in values:
                if isinstance(v, Literal):
                    violations.append(
                        ValueTypeViolation(
                            f"{prop.iri}: literal where {local_name(target)} expected"
                        )
                    )
                elif v.iri in doc.individuals:
                    if not (doc.individuals[v.iri].types & allowed):
                        violations.append(
                            ValueTypeViolation(
                                f"{prop.iri}: {local_name(v.iri)} is not a "
                                f"{local_name(target)}"
                            )
                        )
                # external individual: cannot check, accept
    for piri in assertions:
        if piri not in doc.properties:
            violations.append(ValueTypeViolation(f"unknown property {piri}"))
    return violations


def create_individual(
    doc: OntologyDocument,
    class_iri: str,
    id: str,
    assertions: dict[str, list[Value]] | None = None,
) -> Individual:
    """Create and store a constraint-checked individual of ``class_iri``.

    The new IRI is ``base_iri#id``.  Validation is the same check that
    :func:`check_assertions` performs; an accepted individual therefore
    re-validates clean.
    """
    if class_iri not in doc.classes:
        raise UnknownClass(class_iri)
    assertions = assertions or {}
    iri = urljoin(doc.base_iri, "#" + id)
    if iri in doc.classes or iri in doc.properties or iri in doc.individuals:
        raise DuplicateIri(iri)
    violations = check_assertions(doc, class_iri, assertions)
    if violations:
        raise violations[0]
    ind = Individual(iri=iri, types={class_iri}, assertions=dict(assertions))
    doc.individuals[iri] = ind
    return ind
