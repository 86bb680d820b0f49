import random

import pytest

from tests.conftest import random_opinion, random_sentence
from uoce.kg import (
    DEFAULT_SCHEMA,
    InvalidOpinionError,
    build_corpus_graph,
    build_uoc_schema,
    instantiate_opinion,
    is_iri_value,
    mint_iri,
    validate_graph,
)
from uoce.kg.graph import Literal, OntologyGraph
from uoce.model import OpinionTuple, SentenceRecord

TUPLE = OpinionTuple.from_json(
    {
        "at": "battery life",
        "ac": "battery",
        "te": "laptop",
        "se": "hoped for better",
        "sp": "negative",
        "si": "average",
        "hs": "N/A",
        "he": "author",
        "q": "doing heavy computations",
        "r": "it had only about 2-1/2 hours",
    }
)
SENTENCE = SentenceRecord(
    id="s1",
    domain="Laptop",
    text=(
        "I hoped for better battery life as it had only about 2-1/2 hours "
        "doing heavy computations."
    ),
    opinions=(TUPLE,),
)


def uoc(name: str) -> str:
    return DEFAULT_SCHEMA.iri(name)


class TestInstantiate:
    def test_sentiment_expression_and_polarity(self):
        g = instantiate_opinion(TUPLE, SENTENCE)
        sentiment = g.subjects_of_type(uoc("Sentiment"))[0]
        assert g.objects(sentiment, uoc("sentimentExpression")) == [
            Literal("hoped for better")
        ]
        assert g.objects(sentiment, uoc("hasPolarity")) == [uoc("negative")]

    def test_target_aspect_chain(self):
        g = instantiate_opinion(TUPLE, SENTENCE)
        target = g.subjects_of_type(uoc("Target"))[0]
        aspect = g.subjects_of_type(uoc("Aspect"))[0]
        assert g.objects(target, uoc("embodiesAspect")) == [aspect]
        assert g.objects(aspect, uoc("aspectTerm")) == [Literal("battery life")]

    def test_qualifier_and_reason_texts(self):
        g = instantiate_opinion(TUPLE, SENTENCE)
        qualifier = g.subjects_of_type(uoc("Qualifier"))[0]
        reason = g.subjects_of_type(uoc("Reason"))[0]
        assert g.objects(qualifier, uoc("qualifierText")) == [
            Literal("doing heavy computations")
        ]
        assert g.objects(reason, uoc("reasonText")) == [
            Literal("it had only about 2-1/2 hours")
        ]

    def test_absent_slots_produce_no_individuals(self):
        bare = OpinionTuple.from_json(
            {"ac": "battery", "te": "laptop", "sp": "negative", "si": "average", "he": "author"}
        )
        record = SentenceRecord("s2", "Laptop", "It drains fast.", (bare,))
        g = instantiate_opinion(bare, record)
        assert g.subjects_of_type(uoc("Qualifier")) == []
        assert g.subjects_of_type(uoc("Reason")) == []
        sentiment = g.subjects_of_type(uoc("Sentiment"))[0]
        assert g.objects(sentiment, uoc("sentimentExpression")) == []

    def test_iri_valued_target_entity_links_directly(self):
        data = {**TUPLE.to_json(), "te": "https://example.org/products/laptop-a1"}
        opinion = OpinionTuple.from_json(data)
        g = instantiate_opinion(opinion, SENTENCE)
        target = g.subjects_of_type(uoc("Target"))[0]
        assert g.objects(target, uoc("hasTargetEntity")) == [
            "https://example.org/products/laptop-a1"
        ]

    def test_plain_text_target_entity_is_literal(self):
        g = instantiate_opinion(TUPLE, SENTENCE)
        target = g.subjects_of_type(uoc("Target"))[0]
        assert g.objects(target, uoc("hasTargetEntity")) == [Literal("laptop")]

    def test_invalid_tuple_rejected(self):
        broken = OpinionTuple.from_json({**TUPLE.to_json(), "sp": "N/A"})
        with pytest.raises(InvalidOpinionError):
            instantiate_opinion(broken, SENTENCE)

    def test_deterministic_iris(self):
        assert instantiate_opinion(TUPLE, SENTENCE) == instantiate_opinion(TUPLE, SENTENCE)
        assert mint_iri("https://example.org/opinions/", "s1", "opinion", 0) == (
            "https://example.org/opinions/s1/opinion-0"
        )

    def test_base_iri_changes_instance_prefix(self):
        g = instantiate_opinion(TUPLE, SENTENCE, base_iri="urn:corp:ops/")
        assert all(
            s.startswith("urn:corp:ops/") for s in g.subjects_of_type(uoc("Opinion"))
        )

    def test_ordinal_distinguishes_opinions(self):
        second = OpinionTuple.from_json({**TUPLE.to_json(), "sp": "positive"})
        record = SentenceRecord("s1", "Laptop", SENTENCE.text, (TUPLE, second))
        g0 = instantiate_opinion(TUPLE, record, ordinal=0)
        g1 = instantiate_opinion(second, record, ordinal=1)
        assert not (set(g0.subjects()) & set(g1.subjects()))

    def test_injective_on_slot_changes(self):
        rng = random.Random(42)
        for _ in range(30):
            a = random_opinion(rng)
            b = random_opinion(rng)
            record = SentenceRecord("sx", "Hotel", "placeholder", (a,))
            ga = instantiate_opinion(a, record, ordinal=0)
            gb = instantiate_opinion(b, record, ordinal=0)
            assert (ga == gb) == (a == b)


class TestValidateGraph:
    def test_instantiation_output_is_valid(self):
        rng = random.Random(7)
        for i in range(25):
            record = random_sentence(rng, i)
            for k, opinion in enumerate(record.opinions):
                g = instantiate_opinion(opinion, record, ordinal=k)
                assert validate_graph(g) == []

    def test_double_sentiment_link_is_flagged(self):
        g = instantiate_opinion(TUPLE, SENTENCE)
        opinion = g.subjects_of_type(uoc("Opinion"))[0]
        extra = OntologyGraph.of(
            [(opinion, uoc("conveysSentiment"), uoc("positive"))],
            dict(g.namespaces),
        )
        diags = validate_graph(g.merge(extra))
        assert any("conveysSentiment" in d.message and "expected 1" in d.message for d in diags)

    def test_literal_polarity_is_range_violation(self):
        g = instantiate_opinion(TUPLE, SENTENCE)
        sentiment = g.subjects_of_type(uoc("Sentiment"))[0]
        replaced = [
            (s, p, o)
            for s, p, o in g.triples
            if not (s == sentiment and p == uoc("hasPolarity"))
        ]
        replaced.append((sentiment, uoc("hasPolarity"), Literal("negative")))
        diags = validate_graph(OntologyGraph.of(replaced, dict(g.namespaces)))
        assert any("hasPolarity" in d.message for d in diags)

    def test_untyped_subject_is_domain_violation(self):
        g = OntologyGraph.of(
            [("urn:x", uoc("conveysSentiment"), "urn:y")], {"uoc": DEFAULT_SCHEMA.base_iri}
        )
        diags = validate_graph(g)
        assert any("not typed Opinion" in d.message for d in diags)

    def test_literal_on_structural_property_is_flagged(self):
        g = instantiate_opinion(TUPLE, SENTENCE)
        opinion = g.subjects_of_type(uoc("Opinion"))[0]
        bad = OntologyGraph.of(
            list(g.triples) + [(opinion, uoc("isHeldBy"), Literal("author"))],
            dict(g.namespaces),
        )
        diags = validate_graph(bad)
        assert any("must be an IRI" in d.message for d in diags)


class TestCorpusGraph:
    def test_merges_schema_and_instances(self):
        graph, skipped = build_corpus_graph([(SENTENCE, SENTENCE.opinions)])
        assert skipped == []
        assert set(build_uoc_schema().triples) <= set(graph.triples)
        assert len(graph.subjects_of_type(uoc("Opinion"))) == 1
        assert validate_graph(graph) == []

    def test_invalid_opinions_are_skipped_and_reported(self):
        broken = OpinionTuple.from_json({**TUPLE.to_json(), "si": "extreme"})
        graph, skipped = build_corpus_graph([(SENTENCE, (TUPLE, broken))])
        assert len(skipped) == 1
        assert skipped[0][0] == "s1" and skipped[0][1] == 1
        assert len(graph.subjects_of_type(uoc("Opinion"))) == 1


def test_is_iri_value():
    assert is_iri_value("https://example.org/x")
    assert is_iri_value("urn:isbn:12345")
    assert not is_iri_value("battery life")
    assert not is_iri_value("price: steep")
