"""Shared error taxonomy.

Every engine error carries a stable machine-readable ``code`` (the class
name) so the HTTP layer and the CLI can surface it without string
matching on messages.
"""


class EngineError(Exception):
    """Base class for all engine-level failures."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- ontology parsing / querying ---

class MalformedXml(EngineError):
    pass


class CyclicHierarchy(EngineError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("subclass cycle: " + " -> ".join(self.cycle))


class UnresolvableBase(EngineError):
    pass


class UnknownClass(EngineError):
    pass


class InconsistentConstraints(EngineError):
    def __init__(self, property_iri, min_count, max_count):
        self.property_iri = property_iri
        self.min_count = min_count
        self.max_count = max_count
        super().__init__(
            f"merged cardinality bounds empty for {property_iri}: "
            f"min {min_count} > max {max_count}"
        )


class DuplicateIri(EngineError):
    pass


class CardinalityViolation(EngineError):
    def __init__(self, property_iri, expected, actual):
        self.property_iri = property_iri
        self.expected = expected  # (min, max-or-None)
        self.actual = actual
        lo, hi = expected
        bounds = f"[{lo},{'*' if hi is None else hi}]"
        super().__init__(f"{property_iri}: expected {bounds}, got {actual}")


class ValueTypeViolation(EngineError):
    pass


# --- profiles ---

class EmptySource(EngineError):
    pass


class DuplicateName(EngineError):
    pass


class EmptyMapping(EngineError):
    pass


class SchemaViolation(EngineError):
    pass


# --- annotation documents ---

class DuplicateId(EngineError):
    pass


class InvalidId(EngineError):
    pass


class InvalidOntologicalCombination(EngineError):
    pass


class RootMustBeAlignable(EngineError):
    pass


class ChildNeedsReferringType(EngineError):
    pass


class MissingProfile(EngineError):
    pass


class ProfileAlreadyBound(EngineError):
    pass


class UnknownTier(EngineError):
    pass


class UnknownType(EngineError):
    pass


class WrongStereotype(EngineError):
    pass


class UnknownAnnotation(EngineError):
    pass


class UnknownSlot(EngineError):
    pass


class OverlapRejected(EngineError):
    pass


class InvalidInterval(EngineError):
    pass


class OntologyValueOnAlignable(EngineError):
    pass


class CutOutsideParent(EngineError):
    pass


class NotTimeSubdivision(EngineError):
    pass


class AssociationAlreadyPresent(EngineError):
    pass


class UnknownSibling(EngineError):
    pass


class WrongTierParent(EngineError):
    pass


class TermNotInProfile(EngineError):
    pass


class EmptyInstances(EngineError):
    pass


class WrongValueKind(EngineError):
    pass


class ChildWouldEscape(EngineError):
    pass


class UnsetTimes(EngineError):
    pass


# --- serialization ---

class DanglingReference(EngineError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"dangling reference: {name}")


class UnknownConstraint(EngineError):
    pass


class InvariantViolation(EngineError):
    pass


class IoError(EngineError):
    pass
