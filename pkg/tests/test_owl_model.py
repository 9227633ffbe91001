import random
import re

import pytest

from helpers import GOLD_URL

from ontotier import owl_model
from ontotier.errors import (
    CardinalityViolation,
    CyclicHierarchy,
    DuplicateIri,
    InconsistentConstraints,
    MalformedXml,
    UnknownClass,
    UnresolvableBase,
    ValueTypeViolation,
)
from ontotier.owl_model import (
    IriRef,
    Literal,
    OntologyDocument,
    Restriction,
    applicable_properties,
    check_assertions,
    class_tree,
    create_individual,
    instances_of,
    parse_ontology,
    term_index,
)

HEADER = (
    '<?xml version="1.0"?>\n'
    '<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"\n'
    '         xmlns:rdfs="http://www.w3.org/2000/01/rdf-schema#"\n'
    '         xmlns:owl="http://www.w3.org/2002/07/owl#">\n'
)
BASE = "http://example.org/onto.owl"


def make(body: str) -> owl_model.OntologyDocument:
    return parse_ontology((HEADER + body + "</rdf:RDF>").encode(), base=BASE)


class TestParse:
    def test_mini_gold_classes(self, gold_mini):
        assert len(gold_mini.classes) == 7
        assert gold_mini.warnings == []
        noun = gold_mini.classes[GOLD_URL + "#Noun"]
        assert noun.superclasses == {GOLD_URL + "#PartOfSpeech"}
        assert noun.label == "Noun"

    def test_empty_rdf(self):
        doc = make("")
        assert doc.classes == {}
        assert doc.warnings == []

    def test_union_of_warns(self):
        body = (
            '<owl:Class rdf:ID="A"/>\n'
            '<owl:Class rdf:ID="B">\n'
            '  <owl:unionOf rdf:parseType="Collection">\n'
            '    <owl:Class rdf:about="#A"/>\n'
            "  </owl:unionOf>\n"
            "</owl:Class>\n"
        )
        doc = make(body)
        # independent oracle: count occurrences of the unsupported
        # element names in the raw input
        unsupported = ("owl:unionOf", "owl:intersectionOf", "owl:complementOf")
        expected = sum(len(re.findall("<" + u + r"[\s>]", body)) for u in unsupported)
        assert expected == 1
        union_warnings = [w for w in doc.warnings if "unionOf" in w]
        assert len(union_warnings) == expected

    def test_malformed_xml(self):
        with pytest.raises(MalformedXml):
            parse_ontology(b"<rdf:RDF", base=BASE)

    def test_non_rdf_root(self):
        with pytest.raises(MalformedXml):
            parse_ontology(b"<html/>", base=BASE)

    def test_unresolvable_base(self):
        with pytest.raises(UnresolvableBase):
            parse_ontology(HEADER.encode() + b"</rdf:RDF>", base="not-absolute")

    def test_subclass_cycle(self):
        body = (
            '<owl:Class rdf:ID="A"><rdfs:subClassOf rdf:resource="#B"/></owl:Class>\n'
            '<owl:Class rdf:ID="B"><rdfs:subClassOf rdf:resource="#A"/></owl:Class>\n'
        )
        with pytest.raises(CyclicHierarchy) as exc:
            make(body)
        assert BASE + "#A" in exc.value.cycle

    def test_self_loop_is_a_cycle(self):
        with pytest.raises(CyclicHierarchy):
            make('<owl:Class rdf:ID="A"><rdfs:subClassOf rdf:resource="#A"/></owl:Class>')

    def test_external_superclass_warns(self):
        doc = make(
            '<owl:Class rdf:ID="A">'
            '<rdfs:subClassOf rdf:resource="http://other.org/x#B"/></owl:Class>'
        )
        assert any("external superclass" in w for w in doc.warnings)

    def test_label_defaults_to_local_name(self):
        doc = make('<owl:Class rdf:ID="Thing2"/>')
        assert doc.classes[BASE + "#Thing2"].label == "Thing2"

    def test_restriction_parsed(self):
        doc = make(
            '<owl:ObjectProperty rdf:ID="p"/>'
            '<owl:Class rdf:ID="A"><rdfs:subClassOf><owl:Restriction>'
            '<owl:onProperty rdf:resource="#p"/>'
            "<owl:cardinality>1</owl:cardinality>"
            "</owl:Restriction></rdfs:subClassOf></owl:Class>"
        )
        [r] = doc.classes[BASE + "#A"].restrictions
        assert r == Restriction(BASE + "#p", "exact_cardinality", 1)

    def test_datatype_property_drops_object_characteristics(self):
        doc = make(
            '<owl:DatatypeProperty rdf:ID="d">'
            '<rdf:type rdf:resource="http://www.w3.org/2002/07/owl#TransitiveProperty"/>'
            "</owl:DatatypeProperty>"
        )
        prop = doc.properties[BASE + "#d"]
        assert prop.kind == "datatype"
        assert "transitive" not in prop.characteristics
        assert any("transitive" in w for w in doc.warnings)

    def test_typed_individual(self, gold_with_individuals):
        doc = gold_with_individuals
        preverb = doc.individuals[GOLD_URL + "#Preverb"]
        assert preverb.types == {GOLD_URL + "#PartOfSpeech"}


class TestClassTree:
    def test_mini_gold_forest(self, gold_mini):
        forest = class_tree(gold_mini)
        by_label = {n.label: n for n in forest}
        assert sorted(by_label) == ["Animate", "Inanimate", "PartOfSpeech"]
        pos = by_label["PartOfSpeech"]
        assert [c.label for c in pos.children] == [
            "Noun", "Participle", "Preverb", "Verb",
        ]

    def test_single_class(self):
        doc = make('<owl:Class rdf:ID="Only"/>')
        forest = class_tree(doc)
        assert len(forest) == 1 and forest[0].children == []

    def test_diamond_duplicates_node(self):
        doc = make(
            '<owl:Class rdf:ID="A"/>'
            '<owl:Class rdf:ID="B"><rdfs:subClassOf rdf:resource="#A"/></owl:Class>'
            '<owl:Class rdf:ID="C"><rdfs:subClassOf rdf:resource="#A"/></owl:Class>'
            '<owl:Class rdf:ID="D">'
            '<rdfs:subClassOf rdf:resource="#B"/>'
            '<rdfs:subClassOf rdf:resource="#C"/></owl:Class>'
        )
        # oracle: number of distinct root-to-class paths in the DAG
        def paths_to(target, node):
            if node == target:
                return 1
            return sum(
                paths_to(target, sub.iri)
                for sub in doc.classes.values()
                if node in sub.superclasses
            )

        expected = sum(
            paths_to(BASE + "#D", r)
            for r in doc.classes
            if not doc.classes[r].superclasses
        )
        assert expected == 2

        def count(nodes):
            return sum(
                (1 if n.iri == BASE + "#D" else 0) + count(n.children) for n in nodes
            )

        assert count(class_tree(doc)) == expected

    def test_flatten_covers_all_classes(self, gold_mini):
        seen = set()

        def walk(nodes):
            for n in nodes:
                seen.add(n.iri)
                walk(n.children)

        walk(class_tree(gold_mini))
        assert seen == set(gold_mini.classes)


class TestTermIndex:
    def test_mini_gold_order(self, gold_mini):
        labels = [label for label, _ in term_index(gold_mini)]
        assert labels == [
            "Animate", "Inanimate", "Noun", "Participle",
            "PartOfSpeech", "Preverb", "Verb",
        ]
        # oracle: case-insensitive sort of the raw label list
        raw = [c.label for c in gold_mini.classes.values()]
        assert labels == sorted(raw, key=str.casefold)

    def test_empty(self):
        assert term_index(make("")) == []

    def test_duplicate_labels_iri_ordered(self):
        doc = make(
            '<owl:Class rdf:about="http://a.org/x#Noun"/>'
            '<owl:Class rdf:about="http://b.org/y#Noun"/>'
        )
        entries = term_index(doc)
        assert entries == [
            ("Noun", "http://a.org/x#Noun"),
            ("Noun", "http://b.org/y#Noun"),
        ]

    def test_permutation_and_sorted(self, gold_mini):
        entries = term_index(gold_mini)
        assert sorted(e[1] for e in entries) == sorted(gold_mini.classes)
        for a, b in zip(entries, entries[1:]):
            assert (a[0].casefold(), a[1]) <= (b[0].casefold(), b[1])


class TestInstancesOf:
    def test_preverb_individual(self, gold_with_individuals):
        found = instances_of(
            gold_with_individuals, GOLD_URL + "#PartOfSpeech", transitive=True
        )
        assert GOLD_URL + "#Preverb" in {i.iri for i in found}

    def test_non_transitive_excludes_subclass_instances(self, gold_with_individuals):
        found = instances_of(
            gold_with_individuals, GOLD_URL + "#PartOfSpeech", transitive=False
        )
        assert {i.iri for i in found} == {GOLD_URL + "#Preverb"}

    def test_no_individuals(self, gold_mini):
        assert instances_of(gold_mini, GOLD_URL + "#Noun", transitive=True) == []

    def test_unknown_class(self, gold_mini):
        with pytest.raises(UnknownClass):
            instances_of(gold_mini, GOLD_URL + "#Nope")

    def test_three_level_closure_matches_oracle(self):
        doc = make(
            '<owl:Class rdf:ID="A"/>'
            '<owl:Class rdf:ID="B"><rdfs:subClassOf rdf:resource="#A"/></owl:Class>'
            '<owl:Class rdf:ID="C"><rdfs:subClassOf rdf:resource="#B"/></owl:Class>'
            '<rdf:Description rdf:ID="ia"><rdf:type rdf:resource="#A"/></rdf:Description>'
            '<rdf:Description rdf:ID="ib"><rdf:type rdf:resource="#B"/></rdf:Description>'
            '<rdf:Description rdf:ID="ic"><rdf:type rdf:resource="#C"/></rdf:Description>'
        )
        # oracle: fixed-point reachability over direct subclass edges
        reach = {BASE + "#A"}
        changed = True
        while changed:
            changed = False
            for cls in doc.classes.values():
                if cls.iri not in reach and cls.superclasses & reach:
                    reach.add(cls.iri)
                    changed = True
        expected = {i.iri for i in doc.individuals.values() if i.types & reach}
        got = {i.iri for i in instances_of(doc, BASE + "#A", transitive=True)}
        assert got == expected == {BASE + "#ia", BASE + "#ib", BASE + "#ic"}


def constrained_doc(class_restrictions: str, ancestor_restrictions: str = "") -> OntologyDocument:
    return make(
        '<owl:ObjectProperty rdf:ID="p"><rdfs:domain rdf:resource="#Top"/></owl:ObjectProperty>'
        '<owl:Class rdf:ID="Top">%s</owl:Class>'
        '<owl:Class rdf:ID="Sub"><rdfs:subClassOf rdf:resource="#Top"/>%s</owl:Class>'
        % (ancestor_restrictions, class_restrictions)
    )


def restr(body: str) -> str:
    return (
        '<rdfs:subClassOf><owl:Restriction>'
        '<owl:onProperty rdf:resource="#p"/>%s'
        "</owl:Restriction></rdfs:subClassOf>" % body
    )


class TestApplicableProperties:
    def test_domain_inherited(self, gold_mini):
        doc = make(
            '<owl:Class rdf:ID="PartOfSpeech"/>'
            '<owl:Class rdf:ID="Noun"><rdfs:subClassOf rdf:resource="#PartOfSpeech"/></owl:Class>'
            '<owl:ObjectProperty rdf:ID="hasGender">'
            '<rdfs:domain rdf:resource="#PartOfSpeech"/></owl:ObjectProperty>'
        )
        props = applicable_properties(doc, BASE + "#Noun")
        assert [p.iri for p, _ in props] == [BASE + "#hasGender"]

    def test_interval_intersection(self):
        doc = constrained_doc(
            restr("<owl:minCardinality>1</owl:minCardinality>"),
            restr("<owl:maxCardinality>1</owl:maxCardinality>"),
        )
        [(prop, eff)] = applicable_properties(doc, BASE + "#Sub")
        # oracle: intersect the two intervals directly
        lo = max(1, 0)
        hi = min(10**9, 1)
        assert (eff.min_count, eff.max_count) == (lo, hi) == (1, 1)

    def test_inconsistent_bounds(self):
        doc = constrained_doc(
            restr("<owl:minCardinality>2</owl:minCardinality>"),
            restr("<owl:maxCardinality>1</owl:maxCardinality>"),
        )
        with pytest.raises(InconsistentConstraints):
            applicable_properties(doc, BASE + "#Sub")

    def test_monotone_under_specialization(self):
        doc = constrained_doc(restr("<owl:minCardinality>1</owl:minCardinality>"))
        top = {p.iri for p, _ in applicable_properties(doc, BASE + "#Top")}
        sub = {p.iri for p, _ in applicable_properties(doc, BASE + "#Sub")}
        assert top <= sub


class TestCreateIndividual:
    def exact_one_doc(self):
        return constrained_doc(restr("<owl:cardinality>1</owl:cardinality>"))

    def test_exact_cardinality_satisfied(self):
        doc = self.exact_one_doc()
        ind = create_individual(
            doc, BASE + "#Sub", "x",
            {BASE + "#p": [Literal("v")]},
        )
        assert ind.iri == BASE + "#x"
        assert doc.individuals[BASE + "#x"].types == {BASE + "#Sub"}

    def test_exact_cardinality_missing(self):
        doc = self.exact_one_doc()
        with pytest.raises(CardinalityViolation) as exc:
            create_individual(doc, BASE + "#Sub", "x", {})
        assert exc.value.expected == (1, 1)
        assert exc.value.actual == 0

    def test_duplicate_iri(self):
        doc = self.exact_one_doc()
        create_individual(doc, BASE + "#Sub", "x", {BASE + "#p": [Literal("v")]})
        with pytest.raises(DuplicateIri):
            create_individual(doc, BASE + "#Sub", "x", {BASE + "#p": [Literal("v")]})

    def test_has_value_required(self):
        doc = constrained_doc(restr('<owl:hasValue rdf:resource="#Top"/>'))
        with pytest.raises(ValueTypeViolation):
            create_individual(doc, BASE + "#Sub", "x", {})

    def test_all_values_from_nominal(self):
        doc = make(
            '<owl:ObjectProperty rdf:ID="p"/>'
            '<owl:Class rdf:ID="Target"/>'
            '<owl:Class rdf:ID="Other"/>'
            '<owl:Class rdf:ID="C">'
            + restr('<owl:allValuesFrom rdf:resource="#Target"/>')
            + "</owl:Class>"
            '<rdf:Description rdf:ID="good"><rdf:type rdf:resource="#Target"/></rdf:Description>'
            '<rdf:Description rdf:ID="bad"><rdf:type rdf:resource="#Other"/></rdf:Description>'
        )
        create_individual(doc, BASE + "#C", "ok", {BASE + "#p": [IriRef(BASE + "#good")]})
        with pytest.raises(ValueTypeViolation):
            create_individual(doc, BASE + "#C", "nope", {BASE + "#p": [IriRef(BASE + "#bad")]})

    def test_accepted_revalidates_clean(self):
        doc = self.exact_one_doc()
        ind = create_individual(doc, BASE + "#Sub", "x", {BASE + "#p": [Literal("v")]})
        assert check_assertions(doc, BASE + "#Sub", ind.assertions) == []

    def test_random_assertions_match_brute_force(self):
        rng = random.Random(7)
        kinds = ["min", "max", "exact", "has_value", "all_values_from"]
        for trial in range(120):
            n_props = rng.randint(1, 3)
            props = "".join(f'<owl:ObjectProperty rdf:ID="p{i}"/>' for i in range(n_props))
            restrictions = []
            for _ in range(rng.randint(0, 4)):
                i = rng.randrange(n_props)
                kind = rng.choice(kinds)
                if kind == "min":
                    restrictions.append((i, "min_cardinality", rng.randint(0, 3)))
                elif kind == "max":
                    restrictions.append((i, "max_cardinality", rng.randint(0, 3)))
                elif kind == "exact":
                    restrictions.append((i, "exact_cardinality", rng.randint(0, 2)))
                elif kind == "has_value":
                    restrictions.append((i, "has_value", IriRef(BASE + "#t0")))
                else:
                    restrictions.append((i, "all_values_from", BASE + "#Target"))
            body = props + (
                '<owl:Class rdf:ID="Target"/>'
                '<owl:Class rdf:ID="Other"/>'
                '<rdf:Description rdf:ID="t0"><rdf:type rdf:resource="#Target"/></rdf:Description>'
                '<rdf:Description rdf:ID="o0"><rdf:type rdf:resource="#Other"/></rdf:Description>'
            )
            facets = {
                "min_cardinality": "<owl:minCardinality>%d</owl:minCardinality>",
                "max_cardinality": "<owl:maxCardinality>%d</owl:maxCardinality>",
                "exact_cardinality": "<owl:cardinality>%d</owl:cardinality>",
            }
            rbody = ""
            for i, kind, val in restrictions:
                if kind in facets:
                    facet = facets[kind] % val
                elif kind == "has_value":
                    facet = '<owl:hasValue rdf:resource="#t0"/>'
                else:
                    facet = '<owl:allValuesFrom rdf:resource="#Target"/>'
                rbody += (
                    "<rdfs:subClassOf><owl:Restriction>"
                    '<owl:onProperty rdf:resource="#p%d"/>%s'
                    "</owl:Restriction></rdfs:subClassOf>" % (i, facet)
                )
            doc = make(body + '<owl:Class rdf:ID="C">%s</owl:Class>' % rbody)
            assertions = {}
            for i in range(n_props):
                vals = [
                    rng.choice([IriRef(BASE + "#t0"), IriRef(BASE + "#o0"), Literal("L")])
                    for _ in range(rng.randint(0, 3))
                ]
                if vals:
                    assertions[BASE + "#p" + str(i)] = vals

            # oracle: evaluate every restriction directly
            def satisfied(i, kind, val):
                vals = assertions.get(BASE + "#p" + str(i), [])
                if kind == "min_cardinality":
                    return len(vals) >= val
                if kind == "max_cardinality":
                    return len(vals) <= val
                if kind == "exact_cardinality":
                    return len(vals) == val
                if kind == "has_value":
                    return val in vals
                target_members = {BASE + "#t0"}
                return all(
                    isinstance(v, IriRef) and v.iri in target_members for v in vals
                )

            expected_ok = all(satisfied(*r) for r in restrictions)
            try:
                create_individual(doc, BASE + "#C", f"ind{trial}", assertions)
                actual_ok = True
            except (CardinalityViolation, ValueTypeViolation, InconsistentConstraints):
                actual_ok = False
            assert actual_ok == expected_ok, (trial, restrictions, assertions)
