"""Acceptance suite: one test per criterion, each printing a pass line.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the lines.
"""

import json
import os
import random
import time
from fractions import Fraction

import pytest
from click.testing import CliRunner

from tests.conftest import random_opinion, random_sentence
from uoce.cli import main as cli_main
from uoce.dataset import dataset_stats, load_dataset
from uoce.kg import (
    PARSE_FORMATS,
    SerializationFormat,
    build_uoc_schema,
    instantiate_opinion,
    parse_graph,
    serialize_graph,
    validate_graph,
)
from uoce.llm import MockBackend, ModelConfig, ResponseCache, run_eval
from uoce.metrics import (
    AgreementMatrix,
    MetricKind,
    agreement,
    brute_force_matching,
    component_level_scores,
    optimal_matching,
    score_task,
    tuple_level_scores,
)
from uoce.model import OpinionTuple, Slot, TaskKind
from uoce.prompts import (
    BLOCK_QUERY,
    ORDERINGS,
    PromptConfig,
    PromptKind,
    build_prompt,
)


def passline(number: int, message: str) -> None:
    print(f"ACCEPTANCE {number} PASS - {message}")


def test_criterion_1_matching_oracle_equivalence():
    rng = random.Random(20250810)
    matrices = []
    for _ in range(1000):
        rows, cols = rng.randint(0, 5), rng.randint(0, 5)
        matrices.append(
            AgreementMatrix.from_values(
                [[Fraction(rng.randint(0, 7), 7) for _ in range(cols)] for _ in range(rows)]
            )
        )
    started = time.perf_counter()
    for matrix in matrices:
        fast = optimal_matching(matrix)
        slow = brute_force_matching(matrix)
        assert fast.total_weight == slow.total_weight
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"matching equivalence took {elapsed:.2f}s"
    passline(1, f"1000 random matrices, exact weight equality in {elapsed:.2f}s")


def _random_corpus(rng: random.Random):
    values = ("good", "bad", "fine", "odd", "plain")

    def tuple_(
        polarity=("positive", "negative", "neutral"),
        intensity=("weak", "average", "strong"),
    ):
        def pick(optional=False):
            if optional and rng.random() < 0.4:
                return "N/A"
            return rng.choice(values)

        return OpinionTuple.from_json(
            {
                "at": pick(True), "ac": pick(), "te": pick(), "se": pick(True),
                "sp": rng.choice(polarity), "si": rng.choice(intensity),
                "hs": pick(True), "he": pick(), "q": pick(True), "r": pick(True),
            }
        )

    gold, pred = {}, {}
    for i in range(rng.randint(1, 4)):
        sid = f"s{i}"
        gold[sid] = [tuple_() for _ in range(rng.randint(0, 3))]
        pred[sid] = [tuple_() for _ in range(rng.randint(0, 4))]
    return gold, pred


def test_criterion_2_metric_inequalities_and_invariances():
    rng = random.Random(417)
    for round_ in range(200):
        gold, pred = _random_corpus(rng)
        task = rng.choice(list(TaskKind))
        comp = score_task(gold, pred, task, MetricKind.COMPONENT)
        tup = score_task(gold, pred, task, MetricKind.TUPLE)
        assert comp.precision >= tup.precision
        assert comp.recall >= tup.recall
        assert comp.f1 >= tup.f1
        assert 0 <= comp.true_positive_mass <= min(comp.gold_count, comp.predicted_count)

        shuffled = {}
        for sid, tuples in pred.items():
            reordered = list(tuples)
            rng.shuffle(reordered)
            shuffled[sid] = reordered
        assert score_task(gold, shuffled, task, MetricKind.COMPONENT) == comp
        assert score_task(gold, shuffled, task, MetricKind.TUPLE) == tup

        ids = list(gold)
        cut = len(ids) // 2
        first, second = ids[:cut], ids[cut:]
        whole = component_level_scores(gold, pred)
        part_a = component_level_scores(
            {i: gold[i] for i in first}, {i: pred[i] for i in first}
        )
        part_b = component_level_scores(
            {i: gold[i] for i in second}, {i: pred[i] for i in second}
        )
        assert part_a.true_positive_mass + part_b.true_positive_mass == whole.true_positive_mass
        assert part_a.gold_count + part_b.gold_count == whole.gold_count
        assert part_a.predicted_count + part_b.predicted_count == whole.predicted_count
    passline(2, "200 corpora: component >= tuple, order-invariant, shard-additive")


GOLD_SEVEN = OpinionTuple.from_json(
    {
        "at": "N/A", "ac": "general", "te": "location", "se": "one of the best",
        "sp": "positive", "si": "strong", "hs": "N/A", "he": "author",
        "q": "stay at in boston", "r": "N/A",
    }
)
PRED_FIVE_OF_SEVEN = OpinionTuple.from_json(
    {
        "at": "locations", "ac": "general", "te": "place", "se": "one of the best",
        "sp": "positive", "si": "strong", "hs": "N/A", "he": "author",
        "q": "you could stay at in boston", "r": "N/A",
    }
)
PRED_SIX_OF_SEVEN = OpinionTuple.from_json(
    {
        "at": "location", "ac": "general", "te": "location", "se": "one of the best",
        "sp": "positive", "si": "strong", "hs": "N/A", "he": "author",
        "q": "N/A", "r": "N/A",
    }
)


def test_criterion_3_worked_pair_scores():
    assert agreement(PRED_FIVE_OF_SEVEN, GOLD_SEVEN) == Fraction(5, 7)
    assert agreement(PRED_SIX_OF_SEVEN, GOLD_SEVEN) == Fraction(6, 7)
    for prediction, expected_f1 in (
        (PRED_FIVE_OF_SEVEN, 71.43),
        (PRED_SIX_OF_SEVEN, 85.71),
    ):
        report = component_level_scores({"s": [GOLD_SEVEN]}, {"s": [prediction]})
        assert 100 * report.f1 == pytest.approx(expected_f1, abs=0.01)
    passline(3, "agreement 5/7 and 6/7; single-pair F1 71.43 / 85.71 (+/-0.01)")


def test_criterion_4_partial_matches_zero_tuple_positive_component():
    gold = {}
    pred = {}
    rng = random.Random(99)
    for i in range(10):
        sid = f"s{i}"
        gold_tuple = random_opinion(rng)
        # clone with exactly one slot forced wrong: never an exact match
        broken = OpinionTuple.from_json(
            {**gold_tuple.to_json(), "te": gold_tuple.target_entity + " other"}
        )
        gold[sid] = [gold_tuple]
        pred[sid] = [broken]
    tup = tuple_level_scores(gold, pred)
    comp = component_level_scores(gold, pred)
    assert tup.precision == 0.0 and tup.recall == 0.0 and tup.f1 == 0.0
    assert comp.f1 > 0.0
    passline(4, f"all-partial corpus: tuple F1 0.00, component F1 {100 * comp.f1:.2f}")


FIXTURE_EXPECTED_TOTALS = {
    Slot.AT: 6, Slot.AC: 7, Slot.TE: 7, Slot.SE: 7, Slot.SP: 7,
    Slot.SI: 7, Slot.HS: 1, Slot.HE: 7, Slot.Q: 3, Slot.R: 1,
}
FIXTURE_EXPECTED_UNIQUES = {
    Slot.AT: 6, Slot.AC: 7, Slot.TE: 5, Slot.SE: 7, Slot.SP: 3,
    Slot.SI: 3, Slot.HS: 1, Slot.HE: 2, Slot.Q: 3, Slot.R: 1,
}

RELEASED_DATA_EXPECTED = {
    "sentences": 100,
    "opinions": 134,
    "totals": {
        Slot.SE: 111, Slot.AT: 102, Slot.HS: 61, Slot.Q: 31, Slot.R: 46,
        Slot.SP: 134, Slot.SI: 134, Slot.TE: 134, Slot.AC: 134, Slot.HE: 134,
    },
    "uniques": {
        Slot.SE: 96, Slot.AT: 73, Slot.HS: 10, Slot.Q: 24, Slot.R: 46,
        Slot.SP: 3, Slot.SI: 3, Slot.TE: 24, Slot.AC: 18, Slot.HE: 3,
    },
}


def test_criterion_5_dataset_stats(fixtures_dir):
    stats = dataset_stats(load_dataset(fixtures_dir / "sample_dataset.json"))
    assert stats.sentence_count == 6
    assert stats.opinion_count == 7
    assert dict(stats.slot_totals) == FIXTURE_EXPECTED_TOTALS
    assert dict(stats.slot_uniques) == FIXTURE_EXPECTED_UNIQUES
    passline(5, "synthetic fixture statistics match the authored expectations")


def test_criterion_5_released_evaluation_data_stats():
    path = os.environ.get("UOCE_EVAL_DATASET")
    if not path:
        pytest.skip("UOCE_EVAL_DATASET not set; released evaluation data not available")
    stats = dataset_stats(load_dataset(path))
    expected = RELEASED_DATA_EXPECTED
    assert stats.sentence_count == expected["sentences"]
    assert stats.opinion_count == expected["opinions"]
    for slot, total in expected["totals"].items():
        assert stats.slot_totals[slot] == total, slot
    for slot, unique in expected["uniques"].items():
        assert stats.slot_uniques[slot] == unique, slot
    passline(5, "released evaluation data reproduces the published statistics")


def test_criterion_6_ontology_round_trip_and_validity():
    schema_graph = build_uoc_schema()
    rng = random.Random(606)
    instance_graphs = []
    for i in range(50):
        record = random_sentence(rng, i)
        instance_graphs.append(instantiate_opinion(record.opinions[0], record, ordinal=0))
    for fmt in sorted(PARSE_FORMATS, key=lambda f: f.value):
        assert parse_graph(serialize_graph(schema_graph, fmt), fmt).triples == schema_graph.triples
        for graph in instance_graphs:
            assert parse_graph(serialize_graph(graph, fmt), fmt).triples == graph.triples
    for graph in instance_graphs:
        assert validate_graph(graph) == []
    for fmt in SerializationFormat:
        first = serialize_graph(schema_graph, fmt)
        assert first
        assert first == serialize_graph(build_uoc_schema(), fmt)
    passline(6, "round-trip identity (ttl/jsonld/rdfx), valid instances, 7 stable formats")


def test_criterion_7_prompt_determinism(golden_dir):
    query = "The soup arrived cold."
    seen = []
    for ordering in ORDERINGS:
        prompt = build_prompt(PromptConfig(kind=PromptKind.NL, ordering=ordering), query)
        golden = (golden_dir / "prompts" / f"nl_{ordering}.txt").read_text("utf-8")
        assert prompt.text == golden
        assert prompt.spans[-1][0] == BLOCK_QUERY
        seen.append(prompt.text)
    for fmt in sorted(SerializationFormat, key=lambda f: f.value):
        cfg = PromptConfig(kind=PromptKind.ONTO, ordering="DEF", onto_format=fmt)
        prompt = build_prompt(cfg, query)
        golden = (golden_dir / "prompts" / f"onto_{fmt.value}.txt").read_text("utf-8")
        assert prompt.text == golden
        assert prompt.spans[-1][0] == BLOCK_QUERY
        assert prompt.block_text("D") == serialize_graph(build_uoc_schema(), fmt)
        seen.append(prompt.text)
    assert len(seen) == 13 and len(set(seen)) == 13
    passline(7, "13 golden prompts reproduced; Query last; onto D span byte-equal")


def test_criterion_8_end_to_end_dry_run(fixtures_dir, tmp_path):
    dataset_path = str(fixtures_dir / "sample_dataset.json")
    config_path = str(fixtures_dir / "sweep_config.toml")
    cache_path = tmp_path / "cache.jsonl"
    runner = CliRunner()

    started = time.perf_counter()
    first = runner.invoke(
        cli_main,
        ["sweep", dataset_path, "--config", config_path,
         "--out", str(tmp_path / "a"), "--cache", str(cache_path)],
    )
    elapsed = time.perf_counter() - started
    assert first.exit_code == 0, first.output
    assert elapsed < 10.0, f"sweep took {elapsed:.2f}s"

    cache_bytes = cache_path.read_bytes()
    second = runner.invoke(
        cli_main,
        ["sweep", dataset_path, "--config", config_path,
         "--out", str(tmp_path / "b"), "--cache", str(cache_path)],
    )
    assert second.exit_code == 0, second.output
    grid_a = (tmp_path / "a" / "grid.txt").read_bytes()
    grid_b = (tmp_path / "b" / "grid.txt").read_bytes()
    assert grid_a == grid_b
    assert cache_path.read_bytes() == cache_bytes  # no new entries: all cache hits

    # same warm-cache run through the API: the backend is never consulted
    dataset = load_dataset(dataset_path)
    by_id = json.loads((fixtures_dir / "sample_replies.json").read_text("utf-8"))
    replies = {record.text: by_id[record.id] for record in dataset.records}
    backend = MockBackend(replies=replies)
    cfg = ModelConfig(model="canned-small")
    run_eval(dataset, PromptConfig(), cfg, backend, ResponseCache(cache_path))
    assert backend.calls == 0
    passline(8, f"mock sweep in {elapsed:.2f}s, byte-stable grid, warm cache zero calls")
