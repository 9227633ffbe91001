"""Time-aligned annotation documents.

A document holds a forest of tiers.  Root tiers are alignable: their
annotations are bounded by two time slots on the media time axis.
Child tiers are governed by their linguistic type's stereotype:

- Time Subdivision: children partition the parent annotation's interval
  and carry their own (contained) time slots;
- Symbolic Subdivision: an ordered, unaligned chain of children per
  parent annotation;
- Symbolic Association: at most one child per parent annotation.

Tier and annotation deletion cascade to everything that depends on the
deleted node.  Ontological tiers (profile-bound) accept only ontology
values; all other tiers accept only string values.
"""

from __future__ import annotations

import copy
import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    AssociationAlreadyPresent,
    ChildWouldEscape,
    CutOutsideParent,
    DuplicateId,
    EmptyInstances,
    InvalidId,
    InvalidInterval,
    InvalidOntologicalCombination,
    MissingProfile,
    NotTimeSubdivision,
    OntologyValueOnAlignable,
    OverlapRejected,
    ProfileAlreadyBound,
    RootMustBeAlignable,
    ChildNeedsReferringType,
    TermNotInProfile,
    UnknownAnnotation,
    UnknownSibling,
    UnknownSlot,
    UnknownTier,
    UnknownType,
    UnsetTimes,
    WrongStereotype,
    WrongTierParent,
    WrongValueKind,
)
from .profile import Profile

_ID_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.-]*$")


class Stereotype(str, Enum):
    NONE = "None"
    TIME_SUBDIVISION = "Time_Subdivision"
    SYMBOLIC_SUBDIVISION = "Symbolic_Subdivision"
    SYMBOLIC_ASSOCIATION = "Symbolic_Association"


REFERRING_STEREOTYPES = {
    Stereotype.SYMBOLIC_SUBDIVISION,
    Stereotype.SYMBOLIC_ASSOCIATION,
}
CHILD_STEREOTYPES = REFERRING_STEREOTYPES | {Stereotype.TIME_SUBDIVISION}


@dataclass(frozen=True)
class MediaDescriptor:
    media_url: str
    mime_type: str
    time_origin_offset: int = 0
    extracted_from: str | None = None

    def __post_init__(self):
        if not self.media_url:
            raise ValueError("media_url must be non-empty")


@dataclass(frozen=True)
class LinguisticType:
    id: str
    stereotype: Stereotype
    ontological: bool = False
    graphic_ref: bool = False

    @property
    def time_alignable(self) -> bool:
        return self.stereotype in (Stereotype.NONE, Stereotype.TIME_SUBDIVISION)


@dataclass
class TimeSlot:
    id: str
    value: int | None = None


@dataclass(frozen=True)
class Tier:
    id: str
    parent: str | None
    type_id: str
    profile_ref: str | None = None


@dataclass(frozen=True)
class StringAnnotation:
    text: str


@dataclass(frozen=True)
class OntologyAnnotation:
    ont_annotation_id: str
    user_defined_term: str
    instances: tuple[str, ...]
    descriptions: tuple[str, ...] = ()


AnnotationValue = StringAnnotation | OntologyAnnotation


@dataclass
class AlignableAnnotation:
    id: str
    tier_id: str
    begin_slot: str
    end_slot: str
    value: AnnotationValue
    # set when this annotation subdivides a parent annotation's interval
    parent: str | None = None


@dataclass
class ReferringAnnotation:
    id: str
    tier_id: str
    ref_annotation: str
    previous: str | None
    value: AnnotationValue


Annotation = AlignableAnnotation | ReferringAnnotation


@dataclass(frozen=True)
class SearchHit:
    tier_id: str
    annotation_id: str
    text: str
    begin: int
    end: int


def _parent_of(a: Annotation) -> str | None:
    if isinstance(a, ReferringAnnotation):
        return a.ref_annotation
    return a.parent


@dataclass(eq=True)
class AnnotationDocument:
    id: str
    media: list[MediaDescriptor] = field(default_factory=list)
    time_unit: str = "milliseconds"
    time_order: list[str] = field(default_factory=list)
    slots: dict[str, TimeSlot] = field(default_factory=dict)
    linguistic_types: dict[str, LinguisticType] = field(default_factory=dict)
    tiers: dict[str, Tier] = field(default_factory=dict)
    annotations: dict[str, Annotation] = field(default_factory=dict)
    next_annotation_ordinal: int = 1
    next_slot_ordinal: int = 1
    # loaded profile contents by profile_ref path; session state, not persisted
    profiles: dict[str, Profile] = field(default_factory=dict, compare=False)

    # --- helpers ---

    def _new_annotation_id(self) -> str:
        aid = f"a{self.next_annotation_ordinal}"
        self.next_annotation_ordinal += 1
        return aid

    def _new_slot(self, value: int | None) -> TimeSlot:
        slot = TimeSlot(id=f"ts{self.next_slot_ordinal}", value=value)
        self.next_slot_ordinal += 1
        self.slots[slot.id] = slot
        self.time_order.append(slot.id)
        self._resort_time_order()
        return slot

    def _resort_time_order(self) -> None:
        def key(sid: str):
            v = self.slots[sid].value
            return (v is None, v if v is not None else 0, int(sid[2:]))

        self.time_order.sort(key=key)

    def _tier_of(self, ann: Annotation) -> Tier:
        return self.tiers[ann.tier_id]

    def _type_of_tier(self, tier: Tier) -> LinguisticType:
        return self.linguistic_types[tier.type_id]

    def _annotation(self, aid: str) -> Annotation:
        ann = self.annotations.get(aid)
        if ann is None:
            raise UnknownAnnotation(aid)
        return ann

    def _tier(self, tid: str) -> Tier:
        tier = self.tiers.get(tid)
        if tier is None:
            raise UnknownTier(tid)
        return tier

    def annotations_on_tier(self, tier_id: str) -> list[Annotation]:
        return [a for a in self.annotations.values() if a.tier_id == tier_id]

    def _interval(self, a: AlignableAnnotation) -> tuple[int, int]:
        b = self.slots[a.begin_slot].value
        e = self.slots[a.end_slot].value
        if b is None or e is None:
            raise UnsetTimes(a.id)
        return b, e

    def register_profile(self, path: str, prof: Profile) -> None:
        """Attach loaded profile contents for an ontological tier's
        profile_ref so term membership can be checked."""
        self.profiles[path] = prof

    # --- structure operations ---

    def add_linguistic_type(
        self, id: str, stereotype: Stereotype, ontological: bool = False
    ) -> LinguisticType:
        if not _ID_RE.match(id):
            raise InvalidId(id)
        if id in self.linguistic_types:
            raise DuplicateId(id)
        stereotype = Stereotype(stereotype)
        if ontological and stereotype not in REFERRING_STEREOTYPES:
            raise InvalidOntologicalCombination(
                f"ontological types must be Symbolic_Subdivision or "
                f"Symbolic_Association, not {stereotype.value}"
            )
        lt = LinguisticType(id=id, stereotype=stereotype, ontological=ontological)
        self.linguistic_types[id] = lt
        return lt

    def add_tier(
        self,
        id: str,
        parent: str | None,
        type_id: str,
        profile_ref: str | None = None,
    ) -> Tier:
        if not _ID_RE.match(id):
            raise InvalidId(id)
        if id in self.tiers:
            raise DuplicateId(id)
        if type_id not in self.linguistic_types:
            raise UnknownType(type_id)
        if parent is not None and parent not in self.tiers:
            raise UnknownTier(parent)
        lt = self.linguistic_types[type_id]
        if parent is None and lt.stereotype is not Stereotype.NONE:
            raise RootMustBeAlignable(
                f"root tier {id!r} needs a type with stereotype None"
            )
        if parent is not None and lt.stereotype not in CHILD_STEREOTYPES:
            raise ChildNeedsReferringType(
                f"child tier {id!r} cannot use stereotype None"
            )
        if lt.ontological:
            if not profile_ref:
                raise MissingProfile(f"ontological tier {id!r} needs a profile")
            for other in self.tiers.values():
                if other.profile_ref == profile_ref:
                    raise ProfileAlreadyBound(
                        f"profile {profile_ref!r} already bound to tier "
                        f"{other.id!r}"
                    )
        elif profile_ref:
            raise InvalidOntologicalCombination(
                f"tier {id!r} is not ontological but has a profile"
            )
        tier = Tier(id=id, parent=parent, type_id=type_id, profile_ref=profile_ref)
        self.tiers[id] = tier
        return tier

    def descendant_tiers(self, tier_id: str) -> set[str]:
        """Tier ids transitively below ``tier_id``, excluding it."""
        out: set[str] = set()
        frontier = [tier_id]
        while frontier:
            cur = frontier.pop()
            for t in self.tiers.values():
                if t.parent == cur and t.id not in out:
                    out.add(t.id)
                    frontier.append(t.id)
        return out

    def delete_tier(self, tier_id: str) -> None:
        self._tier(tier_id)
        doomed = {tier_id} | self.descendant_tiers(tier_id)
        for tid in doomed:
            del self.tiers[tid]
        for aid in [a.id for a in self.annotations.values() if a.tier_id in doomed]:
            del self.annotations[aid]
        self._gc_slots()

    def _gc_slots(self) -> None:
        used: set[str] = set()
        for a in self.annotations.values():
            if isinstance(a, AlignableAnnotation):
                used.add(a.begin_slot)
                used.add(a.end_slot)
        for sid in [s for s in self.slots if s not in used]:
            del self.slots[sid]
        self.time_order = [s for s in self.time_order if s in used]

    # --- annotation operations ---

    def add_alignable_annotation(
        self, tier_id: str, begin_ms: int, end_ms: int, value: AnnotationValue
    ) -> str:
        tier = self._tier(tier_id)
        lt = self._type_of_tier(tier)
        if lt.stereotype is not Stereotype.NONE:
            raise WrongStereotype(
                f"tier {tier_id!r} has stereotype {lt.stereotype.value}; "
                f"directly aligned annotations need stereotype None"
            )
        if isinstance(value, OntologyAnnotation):
            raise OntologyValueOnAlignable(
                "alignable annotations carry string values only"
            )
        if begin_ms < 0 or begin_ms >= end_ms:
            raise InvalidInterval(f"[{begin_ms}, {end_ms}]")
        self._check_overlap(tier_id, begin_ms, end_ms)
        begin_slot = self._boundary_slot(tier_id, begin_ms)
        end_slot = self._boundary_slot(tier_id, end_ms)
        aid = self._new_annotation_id()
        self.annotations[aid] = AlignableAnnotation(
            id=aid,
            tier_id=tier_id,
            begin_slot=begin_slot,
            end_slot=end_slot,
            value=value,
        )
        return aid

    def _check_overlap(
        self, tier_id: str, begin: int, end: int, ignore: set[str] = frozenset()
    ) -> None:
        for a in self.annotations_on_tier(tier_id):
            if not isinstance(a, AlignableAnnotation) or a.id in ignore:
                continue
            b, e = self._interval(a)
            if begin < e and b < end:
                raise OverlapRejected(
                    f"[{begin}, {end}] overlaps {a.id} [{b}, {e}] on {tier_id!r}"
                )

    def _boundary_slot(self, tier_id: str, value: int) -> str:
        # reuse an existing boundary slot of this tier at the exact value
        candidates = []
        for a in self.annotations_on_tier(tier_id):
            if isinstance(a, AlignableAnnotation):
                for sid in (a.begin_slot, a.end_slot):
                    if self.slots[sid].value == value:
                        candidates.append(sid)
        if candidates:
            return min(candidates, key=lambda s: int(s[2:]))
        return self._new_slot(value).id

    def subdivide_time(
        self, tier_id: str, parent_annotation: str, cut_points: list[int]
    ) -> list[str]:
        tier = self._tier(tier_id)
        lt = self._type_of_tier(tier)
        if lt.stereotype is not Stereotype.TIME_SUBDIVISION:
            raise NotTimeSubdivision(tier_id)
        parent = self._annotation(parent_annotation)
        if tier.parent != parent.tier_id:
            raise WrongTierParent(
                f"tier {tier_id!r} does not subdivide tier {parent.tier_id!r}"
            )
        if not isinstance(parent, AlignableAnnotation):
            raise NotTimeSubdivision(
                f"parent annotation {parent_annotation!r} is not time-aligned"
            )
        pb, pe = self._interval(parent)
        bounds = [pb, *cut_points, pe]
        for a, b in zip(bounds, bounds[1:]):
            if a >= b:
                raise CutOutsideParent(
                    f"cut points must be strictly increasing inside "
                    f"[{pb}, {pe}], got {cut_points}"
                )
        self._check_overlap(tier_id, pb, pe)
        slot_ids = [self._new_slot(v).id for v in bounds]
        child_ids = []
        for i in range(len(bounds) - 1):
            aid = self._new_annotation_id()
            self.annotations[aid] = AlignableAnnotation(
                id=aid,
                tier_id=tier_id,
                begin_slot=slot_ids[i],
                end_slot=slot_ids[i + 1],
                value=StringAnnotation(""),
                parent=parent_annotation,
            )
            child_ids.append(aid)
        return child_ids

    def _siblings(self, tier_id: str, parent_annotation: str) -> list[ReferringAnnotation]:
        return [
            a
            for a in self.annotations.values()
            if isinstance(a, ReferringAnnotation)
            and a.tier_id == tier_id
            and a.ref_annotation == parent_annotation
        ]

    def sibling_chain(self, tier_id: str, parent_annotation: str) -> list[str]:
        """Sibling annotation ids in chain order (via previous links)."""
        sibs = {a.id: a for a in self._siblings(tier_id, parent_annotation)}
        successor = {
            a.previous: a.id for a in sibs.values() if a.previous is not None
        }
        heads = [a.id for a in sibs.values() if a.previous is None]
        order: list[str] = []
        cur = heads[0] if heads else None
        while cur is not None and cur not in order:
            order.append(cur)
            cur = successor.get(cur)
        return order

    def add_referring_annotation(
        self,
        tier_id: str,
        parent_annotation: str,
        value: AnnotationValue,
        after: str | None = None,
    ) -> str:
        tier = self._tier(tier_id)
        lt = self._type_of_tier(tier)
        if lt.stereotype not in REFERRING_STEREOTYPES:
            raise WrongStereotype(
                f"tier {tier_id!r} has stereotype {lt.stereotype.value}"
            )
        parent = self._annotation(parent_annotation)
        if tier.parent != parent.tier_id:
            raise WrongTierParent(
                f"tier {tier_id!r} does not refer to tier {parent.tier_id!r}"
            )
        self._check_value(tier, value)
        siblings = self._siblings(tier_id, parent_annotation)
        if lt.stereotype is Stereotype.SYMBOLIC_ASSOCIATION:
            if siblings:
                raise AssociationAlreadyPresent(
                    f"{parent_annotation!r} already has an annotation on "
                    f"{tier_id!r}"
                )
            previous = None
        else:
            sib_ids = {a.id for a in siblings}
            if after is not None:
                if after not in sib_ids:
                    raise UnknownSibling(after)
                previous = after
            else:
                chain = self.sibling_chain(tier_id, parent_annotation)
                previous = chain[-1] if chain else None
        aid = self._new_annotation_id()
        if previous is not None and after is not None:
            # splice into the middle of the chain
            for sib in siblings:
                if sib.previous == after:
                    sib.previous = aid
                    break
        self.annotations[aid] = ReferringAnnotation(
            id=aid,
            tier_id=tier_id,
            ref_annotation=parent_annotation,
            previous=previous,
            value=value,
        )
        return aid

    def _check_value(self, tier: Tier, value: AnnotationValue) -> None:
        lt = self._type_of_tier(tier)
        if lt.ontological:
            if not isinstance(value, OntologyAnnotation):
                raise WrongValueKind(
                    f"tier {tier.id!r} is ontological; string values not allowed"
                )
            if not value.instances:
                raise EmptyInstances(
                    "an ontology value needs at least one instance"
                )
            prof = self.profiles.get(tier.profile_ref or "")
            if prof is None:
                raise MissingProfile(
                    f"profile {tier.profile_ref!r} is not loaded"
                )
            if prof.term(value.user_defined_term) is None:
                raise TermNotInProfile(value.user_defined_term)
        else:
            if isinstance(value, OntologyAnnotation):
                if lt.time_alignable:
                    raise OntologyValueOnAlignable(
                        f"tier {tier.id!r} is time-alignable"
                    )
                raise WrongValueKind(
                    f"tier {tier.id!r} is not ontological"
                )

    def set_annotation_value(self, annotation: str, value: AnnotationValue) -> None:
        ann = self._annotation(annotation)
        tier = self._tier_of(ann)
        if isinstance(ann, AlignableAnnotation) and isinstance(
            value, OntologyAnnotation
        ):
            raise OntologyValueOnAlignable(
                "alignable annotations carry string values only"
            )
        self._check_value(tier, value)
        ann.value = value

    def dependents_of(self, annotation: str) -> set[str]:
        """Annotation ids that transitively depend on ``annotation``
        (referring annotations and time-subdivision children)."""
        out: set[str] = set()
        frontier = [annotation]
        while frontier:
            cur = frontier.pop()
            for a in self.annotations.values():
                if _parent_of(a) == cur and a.id not in out:
                    out.add(a.id)
                    frontier.append(a.id)
        return out

    def delete_annotation(self, annotation: str) -> None:
        self._annotation(annotation)
        doomed = {annotation} | self.dependents_of(annotation)
        previous_of = {
            a.id: a.previous
            for a in self.annotations.values()
            if isinstance(a, ReferringAnnotation)
        }
        for aid in doomed:
            del self.annotations[aid]
        # re-link sibling chains across the removed nodes
        for a in self.annotations.values():
            if isinstance(a, ReferringAnnotation) and a.previous in doomed:
                prev = previous_of.get(a.previous)
                while prev in doomed:
                    prev = previous_of.get(prev)
                a.previous = prev
        self._gc_slots()

    # --- time operations ---

    def alter_time_slot(
        self, slot: str, new_value_ms: int, mode: str = "reject"
    ) -> None:
        if slot not in self.slots:
            raise UnknownSlot(slot)
        if mode not in ("reject", "trim"):
            raise ValueError(f"mode must be 'reject' or 'trim', got {mode!r}")
        if new_value_ms < 0:
            raise InvalidInterval(str(new_value_ms))
        work = copy.deepcopy(self)
        work._apply_slot_change(slot, new_value_ms, mode)
        self.__dict__.update(work.__dict__)

    def _apply_slot_change(self, slot: str, new_value_ms: int, mode: str) -> None:
        self.slots[slot].value = new_value_ms
        # the annotations whose own boundary moved must stay valid
        for a in list(self.annotations.values()):
            if a.id not in self.annotations or not isinstance(a, AlignableAnnotation):
                continue
            if slot not in (a.begin_slot, a.end_slot):
                continue
            b = self.slots[a.begin_slot].value
            e = self.slots[a.end_slot].value
            if b is None or e is None:
                continue
            if b >= e:
                if a.parent is None:
                    raise InvalidInterval(f"{a.id} would become [{b}, {e}]")
                if mode == "reject":
                    raise ChildWouldEscape(a.id)
                self.delete_annotation(a.id)
        # cascade containment top-down through subdivision children
        changed = True
        while changed:
            changed = False
            for a in list(self.annotations.values()):
                if a.id not in self.annotations:
                    continue
                if not isinstance(a, AlignableAnnotation) or a.parent is None:
                    continue
                parent = self.annotations.get(a.parent)
                if not isinstance(parent, AlignableAnnotation):
                    continue
                pb, pe = self._interval(parent)
                b, e = self._interval(a)
                if b >= pb and e <= pe:
                    continue
                if mode == "reject":
                    raise ChildWouldEscape(a.id)
                self.slots[a.begin_slot].value = min(max(b, pb), pe)
                self.slots[a.end_slot].value = min(max(e, pb), pe)
                nb, ne = self._interval(a)
                if nb >= ne:
                    self.delete_annotation(a.id)
                changed = True
        # the move must not introduce overlaps on any tier
        tier_ids = {
            a.tier_id
            for a in self.annotations.values()
            if isinstance(a, AlignableAnnotation)
        }
        for tid in tier_ids:
            anns = [
                a
                for a in self.annotations_on_tier(tid)
                if isinstance(a, AlignableAnnotation)
                and self.slots[a.begin_slot].value is not None
                and self.slots[a.end_slot].value is not None
            ]
            anns.sort(key=lambda a: self._interval(a))
            for x, y in zip(anns, anns[1:]):
                if self._interval(x)[1] > self._interval(y)[0]:
                    raise OverlapRejected(
                        f"{x.id} and {y.id} would overlap on {tid!r}"
                    )
        self._resort_time_order()

    def resolve_time_extent(self, annotation: str) -> tuple[int, int]:
        ann = self._annotation(annotation)
        seen = set()
        while isinstance(ann, ReferringAnnotation):
            if ann.id in seen:
                raise UnknownAnnotation(f"reference cycle at {ann.id}")
            seen.add(ann.id)
            ann = self._annotation(ann.ref_annotation)
        return self._interval(ann)

    # --- search ---

    def search(
        self,
        query: str,
        tiers: list[str] | None = None,
        case_sensitive: bool = False,
    ) -> list[SearchHit]:
        """Substring search over string values and user-defined terms,
        ordered by extent begin, then tier id."""
        needle = query if case_sensitive else query.casefold()
        hits = []
        for a in self.annotations.values():
            if tiers is not None and a.tier_id not in tiers:
                continue
            if isinstance(a.value, StringAnnotation):
                text = a.value.text
            else:
                text = a.value.user_defined_term
            haystack = text if case_sensitive else text.casefold()
            if needle in haystack:
                b, e = self.resolve_time_extent(a.id)
                hits.append(
                    SearchHit(
                        tier_id=a.tier_id,
                        annotation_id=a.id,
                        text=text,
                        begin=b,
                        end=e,
                    )
                )
        hits.sort(key=lambda h: (h.begin, h.tier_id, int(h.annotation_id[1:])))
        return hits


def new_document(
    id: str, media: list[MediaDescriptor] | None = None
) -> AnnotationDocument:
    return AnnotationDocument(id=id, media=list(media or []))


def check_document(doc: AnnotationDocument) -> list[str]:
    """Exhaustive standalone invariant checker.

    Re-validates every structural invariant over the whole document and
    returns one message per violation; an empty list means the document
    is consistent.  Deliberately independent of the mutation paths.
    """
    v: list[str] = []

    # tier forest with alignable roots
    for tier in doc.tiers.values():
        if tier.type_id not in doc.linguistic_types:
            v.append(f"tier {tier.id}: unknown linguistic type {tier.type_id}")
            continue
        lt = doc.linguistic_types[tier.type_id]
        if tier.parent is None:
            if lt.stereotype is not Stereotype.NONE:
                v.append(f"tier {tier.id}: root with stereotype {lt.stereotype.value}")
        else:
            if tier.parent not in doc.tiers:
                v.append(f"tier {tier.id}: missing parent {tier.parent}")
            if lt.stereotype not in CHILD_STEREOTYPES:
                v.append(f"tier {tier.id}: child with stereotype None")
        if lt.ontological and not tier.profile_ref:
            v.append(f"tier {tier.id}: ontological without profile")
        if not lt.ontological and tier.profile_ref:
            v.append(f"tier {tier.id}: profile on non-ontological tier")
    # no tier cycles
    for tier in doc.tiers.values():
        seen = set()
        cur: str | None = tier.id
        while cur is not None:
            if cur in seen:
                v.append(f"tier {tier.id}: parent cycle")
                break
            seen.add(cur)
            cur = doc.tiers[cur].parent if cur in doc.tiers else None
    # one-to-one profile binding
    bound: dict[str, str] = {}
    for tier in doc.tiers.values():
        if tier.profile_ref:
            if tier.profile_ref in bound:
                v.append(
                    f"profile {tier.profile_ref} bound to both "
                    f"{bound[tier.profile_ref]} and {tier.id}"
                )
            bound[tier.profile_ref] = tier.id

    # linguistic types
    for lt in doc.linguistic_types.values():
        if lt.ontological and lt.stereotype not in REFERRING_STEREOTYPES:
            v.append(f"type {lt.id}: ontological with {lt.stereotype.value}")

    # slots and time order
    if set(doc.time_order) != set(doc.slots):
        v.append("time_order does not cover exactly the slot set")
    set_values = [
        doc.slots[s].value
        for s in doc.time_order
        if s in doc.slots and doc.slots[s].value is not None
    ]
    if set_values != sorted(set_values):
        v.append("time_order values are not non-decreasing")
    for slot in doc.slots.values():
        if slot.value is not None and slot.value < 0:
            v.append(f"slot {slot.id}: negative value")

    # annotations
    for a in doc.annotations.values():
        if a.tier_id not in doc.tiers:
            v.append(f"annotation {a.id}: unknown tier {a.tier_id}")
            continue
        tier = doc.tiers[a.tier_id]
        lt = doc.linguistic_types.get(tier.type_id)
        if lt is None:
            continue
        if isinstance(a, AlignableAnnotation):
            if not lt.time_alignable:
                v.append(f"annotation {a.id}: aligned on unalignable tier")
            for sid in (a.begin_slot, a.end_slot):
                if sid not in doc.slots:
                    v.append(f"annotation {a.id}: missing slot {sid}")
            if a.begin_slot in doc.slots and a.end_slot in doc.slots:
                b = doc.slots[a.begin_slot].value
                e = doc.slots[a.end_slot].value
                if b is not None and e is not None and b >= e:
                    v.append(f"annotation {a.id}: empty interval [{b}, {e}]")
            if lt.stereotype is Stereotype.NONE and a.parent is not None:
                v.append(f"annotation {a.id}: root annotation with parent link")
            if lt.stereotype is Stereotype.TIME_SUBDIVISION:
                if a.parent is None:
                    v.append(f"annotation {a.id}: subdivision without parent")
                elif a.parent not in doc.annotations:
                    v.append(f"annotation {a.id}: missing parent {a.parent}")
                elif doc.annotations[a.parent].tier_id != tier.parent:
                    v.append(f"annotation {a.id}: parent on wrong tier")
            if isinstance(a.value, OntologyAnnotation):
                v.append(f"annotation {a.id}: ontology value on alignable")
        else:
            if lt.stereotype not in REFERRING_STEREOTYPES:
                v.append(f"annotation {a.id}: referring on {lt.stereotype.value} tier")
            if a.ref_annotation not in doc.annotations:
                v.append(f"annotation {a.id}: missing reference {a.ref_annotation}")
            else:
                ref = doc.annotations[a.ref_annotation]
                if ref.tier_id != tier.parent:
                    v.append(f"annotation {a.id}: reference on wrong tier")
                # the chain must terminate at an alignable annotation
                cur: Annotation = a
                steps = 0
                ok = False
                while steps <= len(doc.annotations):
                    if isinstance(cur, AlignableAnnotation):
                        ok = True
                        break
                    nxt = doc.annotations.get(cur.ref_annotation)
                    if nxt is None:
                        break
                    cur = nxt
                    steps += 1
                if not ok:
                    v.append(f"annotation {a.id}: reference chain does not "
                             f"terminate at an alignable annotation")
            if isinstance(a.value, OntologyAnnotation) and not lt.ontological:
                v.append(f"annotation {a.id}: ontology value on non-ontological tier")
        if isinstance(a.value, StringAnnotation) and lt.ontological:
            v.append(f"annotation {a.id}: string value on ontological tier")
        if isinstance(a.value, OntologyAnnotation) and not a.value.instances:
            v.append(f"annotation {a.id}: ontology value with zero instances")
        if isinstance(a.value, OntologyAnnotation) and lt.ontological:
            prof = doc.profiles.get(tier.profile_ref or "")
            if prof is not None and prof.term(a.value.user_defined_term) is None:
                v.append(
                    f"annotation {a.id}: term {a.value.user_defined_term!r} "
                    f"not in profile"
                )

    # per-tier structural rules
    for tier in doc.tiers.values():
        lt = doc.linguistic_types.get(tier.type_id)
        if lt is None:
            continue
        anns = doc.annotations_on_tier(tier.id)
        aligned = [
            a
            for a in anns
            if isinstance(a, AlignableAnnotation)
            and a.begin_slot in doc.slots
            and a.end_slot in doc.slots
            and doc.slots[a.begin_slot].value is not None
            and doc.slots[a.end_slot].value is not None
        ]
        intervals = sorted(
            (doc.slots[a.begin_slot].value, doc.slots[a.end_slot].value, a.id)
            for a in aligned
        )
        for (b1, e1, i1), (b2, e2, i2) in zip(intervals, intervals[1:]):
            if b2 < e1:
                v.append(f"tier {tier.id}: {i1} and {i2} overlap")
        if lt.stereotype is Stereotype.SYMBOLIC_ASSOCIATION:
            parents = [
                a.ref_annotation for a in anns if isinstance(a, ReferringAnnotation)
            ]
            if len(parents) != len(set(parents)):
                v.append(f"tier {tier.id}: association is not one-to-one")
        if lt.stereotype is Stereotype.SYMBOLIC_SUBDIVISION:
            by_parent: dict[str, list[ReferringAnnotation]] = {}
            for a in anns:
                if isinstance(a, ReferringAnnotation):
                    by_parent.setdefault(a.ref_annotation, []).append(a)
            for parent_id, sibs in by_parent.items():
                ids = {s.id for s in sibs}
                prevs = [s.previous for s in sibs if s.previous is not None]
                if any(p not in ids for p in prevs):
                    v.append(f"tier {tier.id}: chain under {parent_id} links "
                             f"outside the sibling set")
                    continue
                if len(prevs) != len(set(prevs)):
                    v.append(f"tier {tier.id}: chain under {parent_id} is not linear")
                    continue
                chain = doc.sibling_chain(tier.id, parent_id)
                if set(chain) != ids:
                    v.append(f"tier {tier.id}: chain under {parent_id} is "
                             f"broken or cyclic")
        if lt.stereotype is Stereotype.TIME_SUBDIVISION:
            by_parent2: dict[str, list[AlignableAnnotation]] = {}
            for a in aligned:
                if a.parent is not None:
                    by_parent2.setdefault(a.parent, []).append(a)
            for parent_id, kids in by_parent2.items():
                parent = doc.annotations.get(parent_id)
                if not isinstance(parent, AlignableAnnotation):
                    continue
                pb = doc.slots[parent.begin_slot].value
                pe = doc.slots[parent.end_slot].value
                if pb is None or pe is None:
                    continue
                ks = sorted(
                    (doc.slots[k.begin_slot].value, doc.slots[k.end_slot].value)
                    for k in kids
                )
                if ks[0][0] < pb or ks[-1][1] > pe:
                    v.append(
                        f"tier {tier.id}: children of {parent_id} escape the "
                        f"parent interval"
                    )
                for (b1, e1), (b2, e2) in zip(ks, ks[1:]):
                    if e1 != b2:
                        v.append(
                            f"tier {tier.id}: children of {parent_id} are not "
                            f"contiguous"
                        )

    # id discipline
    for aid in doc.annotations:
        if not re.match(r"^a\d+$", aid):
            v.append(f"annotation id {aid!r} is not of the form a<n>")
        elif int(aid[1:]) >= doc.next_annotation_ordinal:
            v.append(f"annotation id {aid!r} is beyond the ordinal counter")
    return v
