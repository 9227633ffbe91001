"""Shared builders for the test suite."""

from pathlib import Path

from ontotier import annodoc, profile
from ontotier.annodoc import (
    MediaDescriptor,
    OntologyAnnotation,
    Stereotype,
    StringAnnotation,
)

FIXTURES = Path(__file__).parent / "fixtures"

GOLD_URL = "http://www.u.arizona.edu/~farrar/gold.owl"
PROFILE_PATH = "C:\\wabo4.prf"

# eleven words; the seventh is "neko", glossed "used to"
SENTENCE_WORDS = [
    "iw", "pi", "gi", "bmose", "ngoding", "gishep", "neko",
    "zhe", "anwe", "gda", "wisnemen",
]
SENTENCE = " ".join(SENTENCE_WORDS)
NEKO_INDEX = SENTENCE_WORDS.index("neko")

WORD_GLOSSES = [
    "that", "then", "past", "walk", "once", "morning", "used to",
    "there", "still", "should", "eat",
]
# user-defined terms per word; the seventh carries the Fig-8 Preverb value
WORD_TERMS = ["PC", "PV", "PC", "PC", "PC", "PC", "PV", "PC", "PC", "PV", "PC"]


def potawatomi_profile() -> profile.Profile:
    p = profile.new_profile("Artem", "1.0", GOLD_URL)
    p = profile.add_term(p, "NI", ["Noun", "Inanimate"])
    p = profile.add_term(p, "PV", ["Preverb"])
    p = profile.add_term(p, "PC", ["Participle"])
    return p


def case_study_tiers(doc: annodoc.AnnotationDocument) -> None:
    """The six-tier hierarchy: Orthographic at the root, Translation and
    Words below it, then Parse, Gloss and the ontological Ontology tier."""
    doc.add_linguistic_type("orthographic", Stereotype.NONE)
    doc.add_linguistic_type("translation", Stereotype.SYMBOLIC_ASSOCIATION)
    doc.add_linguistic_type("words", Stereotype.SYMBOLIC_SUBDIVISION)
    doc.add_linguistic_type("parse", Stereotype.SYMBOLIC_SUBDIVISION)
    doc.add_linguistic_type("gloss", Stereotype.SYMBOLIC_ASSOCIATION)
    doc.add_linguistic_type("ontology", Stereotype.SYMBOLIC_ASSOCIATION,
                            ontological=True)
    doc.add_tier("Orthographic", None, "orthographic")
    doc.add_tier("Translation", "Orthographic", "translation")
    doc.add_tier("Words", "Orthographic", "words")
    doc.add_tier("Parse", "Words", "parse")
    doc.add_tier("Gloss", "Parse", "gloss")
    doc.add_tier("Ontology", "Gloss", "ontology", profile_ref=PROFILE_PATH)


def case_study_document() -> annodoc.AnnotationDocument:
    """The full Potawatomi case-study document.  Annotation ordinals are
    assigned in creation order, which places the "used to" gloss at a31
    and its ontology annotation at a42."""
    doc = annodoc.new_document(
        "file:///C:/wabo4.eaf",
        [MediaDescriptor(media_url="file:///C:/wabo4.wav",
                         mime_type="audio/x-wav")],
    )
    doc.register_profile(PROFILE_PATH, potawatomi_profile())
    case_study_tiers(doc)

    sentence = doc.add_alignable_annotation(
        "Orthographic", 0, 5000, StringAnnotation(SENTENCE)
    )
    doc.add_referring_annotation(
        "Translation", sentence,
        StringAnnotation("then he used to walk there one morning"),
    )
    words = [
        doc.add_referring_annotation("Words", sentence, StringAnnotation(w))
        for w in SENTENCE_WORDS
    ]
    parses = [
        doc.add_referring_annotation("Parse", w, StringAnnotation(f"{t}-stem"))
        for w, t in zip(words, SENTENCE_WORDS)
    ]
    glosses = [
        doc.add_referring_annotation("Gloss", p, StringAnnotation(g))
        for p, g in zip(parses, WORD_GLOSSES)
    ]
    for i, (g, term) in enumerate(zip(glosses, WORD_TERMS)):
        if i == NEKO_INDEX:
            value = OntologyAnnotation(
                ont_annotation_id="e",
                user_defined_term="PV",
                instances=(GOLD_URL + "#Preverb",),
                descriptions=("comments",),
            )
        else:
            target = "Preverb" if term == "PV" else "Participle"
            value = OntologyAnnotation(
                ont_annotation_id=f"i{i}",
                user_defined_term=term,
                instances=(GOLD_URL + "#" + target,),
            )
        doc.add_referring_annotation("Ontology", g, value)
    return doc
