"""RDF/XML persistence for annotation documents.

Documents are saved as instance data of the multimedia annotation
ontology under the ``media:`` namespace.  Element and property names,
and the node ordering, are frozen in docs/annotation-format.md; that
file is normative for this module.  Output is deterministic: equal
documents serialize to identical bytes.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from xml.sax.saxutils import escape, quoteattr

from .annodoc import (
    AlignableAnnotation,
    AnnotationDocument,
    LinguisticType,
    MediaDescriptor,
    OntologyAnnotation,
    ReferringAnnotation,
    Stereotype,
    StringAnnotation,
    Tier,
    TimeSlot,
    check_document,
)
from .errors import (
    DanglingReference,
    InvariantViolation,
    MalformedXml,
    UnknownConstraint,
    UnsetTimes,
)

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
MEDIA_NS = "http://database.cs.wayne.edu/proj/OntoELAN/multimedia.owl#"

_STEREOTYPE_FRAGMENTS = {
    Stereotype.TIME_SUBDIVISION: "Time_Subdivision",
    Stereotype.SYMBOLIC_SUBDIVISION: "Symbolic_Subdivision",
    Stereotype.SYMBOLIC_ASSOCIATION: "Symbolic_Association",
}
_FRAGMENT_STEREOTYPES = {v: k for k, v in _STEREOTYPE_FRAGMENTS.items()}


def _ordinal(aid: str) -> int:
    return int(aid[1:])


class _Writer:
    def __init__(self, doc: AnnotationDocument):
        self.doc = doc
        self.out: list[str] = []
        self.indent = 0

    def line(self, text: str) -> None:
        self.out.append("  " * self.indent + text + "\n")

    def prop(self, name: str, text: str) -> None:
        self.line(f"<media:{name}>{escape(text)}</media:{name}>")

    def ref(self, name: str, fragment: str) -> None:
        iri = self.doc.id + "#" + fragment
        self.line(f"<media:{name} rdf:resource={quoteattr(iri)}/>")

    def ref_abs(self, name: str, iri: str) -> None:
        self.line(f"<media:{name} rdf:resource={quoteattr(iri)}/>")

    def render(self) -> bytes:
        doc = self.doc
        self.line('<?xml version="1.0" encoding="UTF-8"?>')
        self.line(
            "<rdf:RDF xmlns:rdf=%s xmlns:media=%s>"
            % (quoteattr(RDF_NS), quoteattr(MEDIA_NS))
        )
        self.indent += 1
        self._document_node()
        for i, md in enumerate(doc.media, start=1):
            self._media_node(i, md)
        used_types = {t.type_id for t in doc.tiers.values()}
        for type_id in sorted(doc.linguistic_types):
            if type_id not in used_types:
                self._type_node(doc.linguistic_types[type_id], with_id=True)
        for sid in doc.time_order:
            self._slot_node(doc.slots[sid])
        emitted_types: set[str] = set()
        for tid in sorted(doc.tiers):
            self._tier_node(doc.tiers[tid], emitted_types)
        for aid in sorted(doc.annotations, key=_ordinal):
            self._annotation_node(doc.annotations[aid])
        self.indent -= 1
        self.line("</rdf:RDF>")
        return "".join(self.out).encode("utf-8")

    def _document_node(self) -> None:
        doc = self.doc
        self.line(f"<media:AnnotationDocument rdf:about={quoteattr(doc.id)}>")
        self.indent += 1
        self.prop("hasTimeUnit", doc.time_unit)
        self.prop("hasNextAnnotationOrdinal", str(doc.next_annotation_ordinal))
        self.prop("hasNextSlotOrdinal", str(doc.next_slot_ordinal))
        for i in range(1, len(doc.media) + 1):
            self.ref("hasMediaDescriptor", f"md{i}")
        for sid in doc.time_order:
            self.ref("hasTimeOrder", sid)
        self.indent -= 1
        self.line("</media:AnnotationDocument>")

    def _media_node(self, i: int, md: MediaDescriptor) -> None:
        self.line(f'<media:MediaDescriptor rdf:ID="md{i}">')
        self.indent += 1
        self.prop("hasMediaURL", md.media_url)
        self.prop("hasMimeType", md.mime_type)
        self.prop("hasTimeOrigin", str(md.time_origin_offset))
        if md.extracted_from is not None:
            self.prop("hasExtractedFrom", md.extracted_from)
        self.indent -= 1
        self.line("</media:MediaDescriptor>")

    def _slot_node(self, slot: TimeSlot) -> None:
        if slot.value is None:
            raise UnsetTimes(f"slot {slot.id} has no time value")
        self.line(f"<media:TimeSlot rdf:ID={quoteattr(slot.id)}>")
        self.indent += 1
        self.prop("hasTimeSlotID", slot.id)
        self.prop("hasTimeValue", str(slot.value))
        self.indent -= 1
        self.line("</media:TimeSlot>")

    def _type_node(self, lt: LinguisticType, with_id: bool) -> None:
        attr = f" rdf:ID={quoteattr(lt.id)}" if with_id else ""
        self.line(f"<media:LinguisticType{attr}>")
        self.indent += 1
        self.prop("hasTimeAlignable", "true" if lt.time_alignable else "false")
        self.prop("hasLinguisticTypeID", lt.id)
        if lt.stereotype is not Stereotype.NONE:
            self.ref("hasConstraint", _STEREOTYPE_FRAGMENTS[lt.stereotype])
        self.prop("hasGraphicRef", "true" if lt.graphic_ref else "false")
        self.prop("hasOntological", "true" if lt.ontological else "false")
        self.indent -= 1
        self.line("</media:LinguisticType>")

    def _tier_node(self, tier: Tier, emitted_types: set[str]) -> None:
        self.line(f"<media:Tier rdf:ID={quoteattr(tier.id)}>")
        self.indent += 1
        self.prop("hasTierID", tier.id)
        if tier.parent is not None:
            self.ref("hasParent", tier.parent)
        if tier.profile_ref is not None:
            self.prop("hasProfile", tier.profile_ref)
        if tier.type_id in emitted_types:
            self.ref("hasLinguisticType", tier.type_id)
        else:
            emitted_types.add(tier.type_id)
            self.line("<media:hasLinguisticType>")
            self.indent += 1
            self._type_node(self.doc.linguistic_types[tier.type_id], with_id=True)
            self.indent -= 1
            self.line("</media:hasLinguisticType>")
        for a in sorted(
            self.doc.annotations_on_tier(tier.id), key=lambda x: _ordinal(x.id)
        ):
            self.ref("hasAnnotation", a.id)
        self.indent -= 1
        self.line("</media:Tier>")

    def _annotation_node(self, ann) -> None:
        if isinstance(ann, AlignableAnnotation):
            self.line(f"<media:AlignableAnnotation rdf:ID={quoteattr(ann.id)}>")
            self.indent += 1
            self.prop("hasAnnotationID", ann.id)
            self.ref("hasTimeSlotRef1", ann.begin_slot)
            self.ref("hasTimeSlotRef2", ann.end_slot)
            if ann.parent is not None:
                self.ref("hasParentAnnotation", ann.parent)
            self._value_node(ann)
            self.indent -= 1
            self.line("</media:AlignableAnnotation>")
        else:
            self.line(f"<media:RefAnnotation rdf:ID={quoteattr(ann.id)}>")
            self.indent += 1
            self.prop("hasAnnotationID", ann.id)
            self.ref("hasAnnotationRef", ann.ref_annotation)
            if ann.previous is not None:
                self.ref("hasPreviousAnnotation", ann.previous)
            self._value_node(ann)
            self.indent -= 1
            self.line("</media:RefAnnotation>")

    def _value_node(self, ann) -> None:
        self.line("<media:hasAnnotationValue>")
        self.indent += 1
        value = ann.value
        if isinstance(value, StringAnnotation):
            self.line(
                f"<media:StringAnnotation rdf:ID={quoteattr(ann.id + 'Value')}>"
            )
            self.indent += 1
            self.prop("hasStringValue", value.text)
            self.indent -= 1
            self.line("</media:StringAnnotation>")
        else:
            self.line(
                f"<media:OntologyAnnotation rdf:ID={quoteattr(ann.id + 'Value')}>"
            )
            self.indent += 1
            self.prop("hasUserDefinedTerm", value.user_defined_term)
            for iri in value.instances:
                self.ref_abs("hasInstances", iri)
            for d in value.descriptions:
                self.prop("hasOntAnnotationDescription", d)
            self.prop("hasOntAnnotationId", value.ont_annotation_id)
            self.indent -= 1
            self.line("</media:OntologyAnnotation>")
        self.indent -= 1
        self.line("</media:hasAnnotationValue>")


def save_document(doc: AnnotationDocument) -> bytes:
    """Serialize a document to deterministic RDF/XML bytes.

    Raises UnsetTimes if any slot lacks a value and InvariantViolation
    if the document fails the exhaustive checker.
    """
    violations = check_document(doc)
    if violations:
        raise InvariantViolation("; ".join(violations))
    for sid in doc.time_order:
        if doc.slots[sid].value is None:
            raise UnsetTimes(f"slot {sid} has no time value")
    return _Writer(doc).render()


# --- loading ---

def _t(local: str) -> str:
    return "{%s}%s" % (MEDIA_NS, local)


_RDF_ID = "{%s}ID" % RDF_NS
_RDF_ABOUT = "{%s}about" % RDF_NS
_RDF_RESOURCE = "{%s}resource" % RDF_NS


def _text(el: ET.Element, local: str) -> str | None:
    child = el.find(_t(local))
    if child is None:
        return None
    return child.text or ""

def _req_text(el: ET.Element, local: str, ctx: str) -> str:
    value = _text(el, local)
    if value is None:
        raise MalformedXml(f"{ctx}: missing media:{local}")
    return value


def _fragment(el: ET.Element, local: str) -> str | None:
    child = el.find(_t(local))
    if child is None:
        return None
    res = child.get(_RDF_RESOURCE, "")
    if "#" not in res:
        raise DanglingReference(res or f"empty media:{local} reference")
    return res.rsplit("#", 1)[1]


def _parse_root(data: bytes) -> ET.Element:
    if not data.strip():
        raise MalformedXml("empty input")
    try:
        return ET.fromstring(data)
    except ET.ParseError as e:
        raise MalformedXml(str(e)) from e


def _load_type(el: ET.Element) -> LinguisticType:
    type_id = _req_text(el, "hasLinguisticTypeID", "LinguisticType")
    constraint = None
    cel = el.find(_t("hasConstraint"))
    if cel is not None:
        res = cel.get(_RDF_RESOURCE, "")
        fragment = res.rsplit("#", 1)[1] if "#" in res else res
        if fragment not in _FRAGMENT_STEREOTYPES:
            raise UnknownConstraint(fragment)
        constraint = _FRAGMENT_STEREOTYPES[fragment]
    return LinguisticType(
        id=type_id,
        stereotype=constraint or Stereotype.NONE,
        ontological=_text(el, "hasOntological") == "true",
        graphic_ref=_text(el, "hasGraphicRef") == "true",
    )


def load_document(data: bytes) -> AnnotationDocument:
    """Inverse of :func:`save_document`; resolves every in-document
    reference and raises DanglingReference when one is missing."""
    root = _parse_root(data)
    doc_el = root.find(_t("AnnotationDocument"))
    if doc_el is None:
        raise MalformedXml("no media:AnnotationDocument node")
    doc_id = doc_el.get(_RDF_ABOUT)
    if not doc_id:
        raise MalformedXml("AnnotationDocument without rdf:about")

    doc = AnnotationDocument(id=doc_id)
    doc.time_unit = _text(doc_el, "hasTimeUnit") or "milliseconds"
    doc.next_annotation_ordinal = int(
        _text(doc_el, "hasNextAnnotationOrdinal") or "1"
    )
    doc.next_slot_ordinal = int(_text(doc_el, "hasNextSlotOrdinal") or "1")

    media_by_id: dict[str, MediaDescriptor] = {}
    for el in root.findall(_t("MediaDescriptor")):
        mid = el.get(_RDF_ID, "")
        media_by_id[mid] = MediaDescriptor(
            media_url=_req_text(el, "hasMediaURL", "MediaDescriptor"),
            mime_type=_text(el, "hasMimeType") or "",
            time_origin_offset=int(_text(el, "hasTimeOrigin") or "0"),
            extracted_from=_text(el, "hasExtractedFrom"),
        )
    for child in doc_el.findall(_t("hasMediaDescriptor")):
        res = child.get(_RDF_RESOURCE, "")
        frag = res.rsplit("#", 1)[1] if "#" in res else res
        if frag not in media_by_id:
            raise DanglingReference(frag)
        doc.media.append(media_by_id[frag])

    for el in root.findall(_t("TimeSlot")):
        sid = el.get(_RDF_ID) or _req_text(el, "hasTimeSlotID", "TimeSlot")
        value_text = _text(el, "hasTimeValue")
        doc.slots[sid] = TimeSlot(
            id=sid, value=int(value_text) if value_text else None
        )
    for child in doc_el.findall(_t("hasTimeOrder")):
        res = child.get(_RDF_RESOURCE, "")
        frag = res.rsplit("#", 1)[1] if "#" in res else res
        if frag not in doc.slots:
            raise DanglingReference(frag)
        doc.time_order.append(frag)
    for sid in doc.slots:
        if sid not in doc.time_order:
            raise DanglingReference(f"slot {sid} missing from time order")

    # linguistic types appear top-level or nested in tiers
    for el in root.findall(_t("LinguisticType")):
        lt = _load_type(el)
        doc.linguistic_types[lt.id] = lt
    for tier_el in root.findall(_t("Tier")):
        holder = tier_el.find(_t("hasLinguisticType"))
        if holder is not None:
            nested = holder.find(_t("LinguisticType"))
            if nested is not None:
                lt = _load_type(nested)
                doc.linguistic_types[lt.id] = lt

    tier_els = {}
    for el in root.findall(_t("Tier")):
        tid = _req_text(el, "hasTierID", "Tier")
        tier_els[tid] = el
    for tid, el in tier_els.items():
        parent = _fragment(el, "hasParent")
        if parent is not None and parent not in tier_els:
            raise DanglingReference(parent)
        holder = el.find(_t("hasLinguisticType"))
        if holder is None:
            raise MalformedXml(f"tier {tid}: missing media:hasLinguisticType")
        nested = holder.find(_t("LinguisticType"))
        if nested is not None:
            type_id = _req_text(nested, "hasLinguisticTypeID", "LinguisticType")
        else:
            res = holder.get(_RDF_RESOURCE, "")
            type_id = res.rsplit("#", 1)[1] if "#" in res else res
        if type_id not in doc.linguistic_types:
            raise DanglingReference(type_id)
        doc.tiers[tid] = Tier(
            id=tid,
            parent=parent,
            type_id=type_id,
            profile_ref=_text(el, "hasProfile"),
        )

    ann_tier: dict[str, str] = {}
    for tid, el in tier_els.items():
        for child in el.findall(_t("hasAnnotation")):
            res = child.get(_RDF_RESOURCE, "")
            frag = res.rsplit("#", 1)[1] if "#" in res else res
            ann_tier[frag] = tid

    def load_value(el: ET.Element, aid: str):
        holder = el.find(_t("hasAnnotationValue"))
        if holder is None:
            raise MalformedXml(f"annotation {aid}: missing value")
        sa = holder.find(_t("StringAnnotation"))
        if sa is not None:
            return StringAnnotation(text=_text(sa, "hasStringValue") or "")
        oa = holder.find(_t("OntologyAnnotation"))
        if oa is not None:
            instances = tuple(
                c.get(_RDF_RESOURCE, "") for c in oa.findall(_t("hasInstances"))
            )
            descriptions = tuple(
                c.text or ""
                for c in oa.findall(_t("hasOntAnnotationDescription"))
            )
            return OntologyAnnotation(
                ont_annotation_id=_req_text(
                    oa, "hasOntAnnotationId", f"annotation {aid}"
                ),
                user_defined_term=_req_text(
                    oa, "hasUserDefinedTerm", f"annotation {aid}"
                ),
                instances=instances,
                descriptions=descriptions,
            )
        raise MalformedXml(f"annotation {aid}: unrecognized value node")

    for el in root.findall(_t("AlignableAnnotation")):
        aid = _req_text(el, "hasAnnotationID", "AlignableAnnotation")
        begin = _fragment(el, "hasTimeSlotRef1")
        end = _fragment(el, "hasTimeSlotRef2")
        if begin is None or end is None:
            raise MalformedXml(f"annotation {aid}: missing slot references")
        for sid in (begin, end):
            if sid not in doc.slots:
                raise DanglingReference(sid)
        if aid not in ann_tier:
            raise DanglingReference(f"annotation {aid} not listed by any tier")
        doc.annotations[aid] = AlignableAnnotation(
            id=aid,
            tier_id=ann_tier[aid],
            begin_slot=begin,
            end_slot=end,
            value=load_value(el, aid),
            parent=_fragment(el, "hasParentAnnotation"),
        )
    for el in root.findall(_t("RefAnnotation")):
        aid = _req_text(el, "hasAnnotationID", "RefAnnotation")
        ref = _fragment(el, "hasAnnotationRef")
        if ref is None:
            raise MalformedXml(f"annotation {aid}: missing media:hasAnnotationRef")
        if aid not in ann_tier:
            raise DanglingReference(f"annotation {aid} not listed by any tier")
        doc.annotations[aid] = ReferringAnnotation(
            id=aid,
            tier_id=ann_tier[aid],
            ref_annotation=ref,
            previous=_fragment(el, "hasPreviousAnnotation"),
            value=load_value(el, aid),
        )
    for a in doc.annotations.values():
        target = a.ref_annotation if isinstance(a, ReferringAnnotation) else a.parent
        if target is not None and target not in doc.annotations:
            raise DanglingReference(target)
    for aid in ann_tier:
        if aid not in doc.annotations:
            raise DanglingReference(aid)
    return doc


def validate_file(data: bytes) -> list[str]:
    """Structural findings over the raw file, without constructing a
    document.  Output of :func:`save_document` always validates clean."""
    root = _parse_root(data)
    findings: list[str] = []

    doc_els = root.findall(_t("AnnotationDocument"))
    if len(doc_els) != 1:
        findings.append(
            f"expected exactly one AnnotationDocument node, found {len(doc_els)}"
        )

    ids: set[str] = set()
    for el in root.iter():
        rid = el.get(_RDF_ID)
        if rid is not None:
            if rid in ids:
                findings.append(f"duplicate rdf:ID {rid!r}")
            ids.add(rid)

    for el in root.findall(_t("TimeSlot")):
        sid = el.get(_RDF_ID, "?")
        if _text(el, "hasTimeValue") is None:
            findings.append(f"time slot {sid}: missing hasTimeValue")

    tier_parent: dict[str, str | None] = {}
    for el in root.findall(_t("Tier")):
        tid = _text(el, "hasTierID")
        if tid is None:
            findings.append("tier without hasTierID")
            continue
        pel = el.find(_t("hasParent"))
        parent = None
        if pel is not None:
            res = pel.get(_RDF_RESOURCE, "")
            parent = res.rsplit("#", 1)[1] if "#" in res else res
        tier_parent[tid] = parent
        if el.find(_t("hasLinguisticType")) is None:
            findings.append(f"tier {tid}: missing hasLinguisticType")
    for tid, parent in tier_parent.items():
        if parent is not None and parent not in tier_parent:
            findings.append(f"tier {tid}: parent {parent!r} not in file")
        seen = {tid}
        cur = parent
        while cur is not None:
            if cur in seen:
                findings.append(f"tier {tid}: parent cycle")
                break
            seen.add(cur)
            cur = tier_parent.get(cur)

    for el in root.iter(_t("LinguisticType")):
        lid = _text(el, "hasLinguisticTypeID")
        if lid is None:
            findings.append("linguistic type without hasLinguisticTypeID")
        if _text(el, "hasTimeAlignable") not in ("true", "false"):
            findings.append(f"linguistic type {lid}: bad hasTimeAlignable")
        cel = el.find(_t("hasConstraint"))
        if cel is not None:
            res = cel.get(_RDF_RESOURCE, "")
            fragment = res.rsplit("#", 1)[1] if "#" in res else res
            if fragment not in _FRAGMENT_STEREOTYPES:
                findings.append(f"linguistic type {lid}: unknown constraint "
                                f"{fragment!r}")

    ann_ids: set[str] = set()
    for tag in ("AlignableAnnotation", "RefAnnotation"):
        for el in root.findall(_t(tag)):
            aid = _text(el, "hasAnnotationID")
            if aid is None:
                findings.append(f"{tag} without hasAnnotationID")
                continue
            ann_ids.add(aid)
            if el.find(_t("hasAnnotationValue")) is None:
                findings.append(f"annotation {aid}: missing hasAnnotationValue")
    slot_ids = {el.get(_RDF_ID) for el in root.findall(_t("TimeSlot"))}
    for el in root.findall(_t("AlignableAnnotation")):
        aid = _text(el, "hasAnnotationID") or "?"
        for prop in ("hasTimeSlotRef1", "hasTimeSlotRef2"):
            cel = el.find(_t(prop))
            if cel is None:
                findings.append(f"annotation {aid}: missing {prop}")
                continue
            res = cel.get(_RDF_RESOURCE, "")
            frag = res.rsplit("#", 1)[1] if "#" in res else res
            if frag not in slot_ids:
                findings.append(f"annotation {aid}: {prop} -> missing slot "
                                f"{frag!r}")
    for el in root.findall(_t("RefAnnotation")):
        aid = _text(el, "hasAnnotationID") or "?"
        cel = el.find(_t("hasAnnotationRef"))
        if cel is None:
            findings.append(f"annotation {aid}: missing hasAnnotationRef")
        else:
            res = cel.get(_RDF_RESOURCE, "")
            frag = res.rsplit("#", 1)[1] if "#" in res else res
            if frag not in ann_ids:
                findings.append(f"annotation {aid}: reference to missing "
                                f"annotation {frag!r}")

    for el in root.iter(_t("OntologyAnnotation")):
        oid = el.get(_RDF_ID, "?")
        if not el.findall(_t("hasInstances")):
            findings.append(
                f"ontology annotation {oid}: hasInstances cardinality below 1"
            )
        if len(el.findall(_t("hasUserDefinedTerm"))) != 1:
            findings.append(
                f"ontology annotation {oid}: hasUserDefinedTerm cardinality != 1"
            )
        if len(el.findall(_t("hasOntAnnotationId"))) != 1:
            findings.append(
                f"ontology annotation {oid}: hasOntAnnotationId cardinality != 1"
            )
    return findings
