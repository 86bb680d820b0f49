"""Tuple-level and component-level exact-match metrics.

The component-level metric scores each (gold, predicted) pair by the fraction
of the gold tuple's present slots that the prediction reproduces, aligns the
two sets with a maximum-weight one-to-one matching, and accumulates the
matched agreement mass into corpus precision/recall/F1. All agreement
arithmetic is exact (rationals), so matchings tie-break deterministically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from uoce.model import (
    SLOT_ORDER,
    OpinionTuple,
    Slot,
    SlotDict,
    TaskKind,
    project_tuple,
)

#: Largest min-side for which exhaustive matching enumeration is allowed.
BRUTE_FORCE_LIMIT = 8


def _present(opinion: OpinionTuple | SlotDict) -> dict[Slot, str]:
    """The (slot, value) pairs an opinion actually carries."""
    if isinstance(opinion, OpinionTuple):
        return dict(opinion.present_items())
    return {slot: value for slot, value in opinion.items() if value is not None}


def agreement(pred: OpinionTuple | SlotDict, gold: OpinionTuple | SlotDict) -> Fraction:
    """Fraction of the gold tuple's present slots that the prediction matches.

    Tuples are treated as sets of present (slot, value) pairs; the denominator
    is the gold tuple's present-slot count. Slots the prediction fills but the
    gold leaves absent do not reduce the score. If the gold tuple has no
    present slots the score is 1 when the prediction is also all-absent,
    else 0.
    """
    gold_items = _present(gold)
    pred_items = _present(pred)
    if not gold_items:
        return Fraction(1) if not pred_items else Fraction(0)
    hits = sum(1 for slot, value in gold_items.items() if pred_items.get(slot) == value)
    return Fraction(hits, len(gold_items))


@dataclass(frozen=True)
class AgreementMatrix:
    """Pairwise agreement between gold tuples (rows) and predictions (columns)."""

    rows: int
    cols: int
    cells: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_values(
        cls, values: Sequence[Sequence[Fraction | float | int]]
    ) -> "AgreementMatrix":
        cells = tuple(tuple(Fraction(v) for v in row) for row in values)
        rows = len(cells)
        cols = len(cells[0]) if cells else 0
        if any(len(row) != cols for row in cells):
            raise ValueError("agreement matrix rows differ in length")
        for row in cells:
            for cell in row:
                if not 0 <= cell <= 1:
                    raise ValueError(f"agreement value {cell} outside [0, 1]")
        return cls(rows, cols, cells)

    @classmethod
    def from_opinions(
        cls,
        gold: Sequence[OpinionTuple | SlotDict],
        pred: Sequence[OpinionTuple | SlotDict],
    ) -> "AgreementMatrix":
        return cls.from_values(
            [[agreement(p, g) for p in pred] for g in gold]
        )


@dataclass(frozen=True)
class Matching:
    """A one-to-one alignment of gold and predicted tuples.

    ``pairs`` holds (gold index, predicted index) pairs sorted ascending;
    pairs with zero agreement are never included.
    """

    pairs: tuple[tuple[int, int], ...]
    total_weight: Fraction


def _integer_grid(matrix: AgreementMatrix) -> tuple[list[list[int]], int]:
    """Scale the rational cells to a common-denominator integer grid."""
    denom = 1
    for row in matrix.cells:
        for cell in row:
            denom = lcm(denom, cell.denominator)
    grid = [[int(cell * denom) for cell in row] for row in matrix.cells]
    return grid, denom


def _hungarian_max(grid: Sequence[Sequence[int]]) -> int:
    """Maximum total weight of a one-to-one matching; nonnegative integer cells.

    Classic O(n^2 m) assignment algorithm with potentials, run on the
    transposed grid when needed so rows <= cols. Because weights are
    nonnegative, the best full assignment of the smaller side equals the best
    matching overall.
    """
    if not grid or not grid[0]:
        return 0
    if len(grid) > len(grid[0]):
        grid = [list(col) for col in zip(*grid)]
    n, m = len(grid), len(grid[0])
    max_cell = max(max(row) for row in grid)
    cost = [[max_cell - cell for cell in row] for row in grid]
    inf = max_cell * (n + 1) + 1

    u = [0] * (n + 1)
    v = [0] * (m + 1)
    p = [0] * (m + 1)  # p[j] = row matched to column j (1-based; 0 = free)
    way = [0] * (m + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [inf] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = inf
            j1 = 0
            for j in range(1, m + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    return sum(grid[p[j] - 1][j - 1] for j in range(1, m + 1) if p[j])


def _submatrix_max(
    grid: Sequence[Sequence[int]], row_from: int, cols: Sequence[int]
) -> int:
    sub = [[grid[g][c] for c in cols] for g in range(row_from, len(grid))]
    return _hungarian_max(sub)


def optimal_matching(matrix: AgreementMatrix) -> Matching:
    """Maximum-weight one-to-one matching between gold rows and predicted columns.

    Rectangular matrices are allowed; tuples on the larger side may stay
    unmatched. Among equal-weight matchings the one whose sorted pair list is
    lexicographically smallest is returned, and zero-agreement pairs are left
    out, so results are deterministic.
    """
    grid, denom = _integer_grid(matrix)
    if matrix.rows == 0 or matrix.cols == 0:
        return Matching((), Fraction(0))
    best = _hungarian_max(grid)
    if best == 0:
        return Matching((), Fraction(0))

    # Fix pairs greedily in lexicographic order; a candidate is kept when the
    # remainder (strictly later rows, remaining columns) can still reach the
    # optimum. Suffix row maxima give a cheap upper bound before running the
    # exact check.
    pairs: list[tuple[int, int]] = []
    acc = 0
    last_row = -1
    free_cols = list(range(matrix.cols))
    while acc < best:
        chosen = None
        for g in range(last_row + 1, matrix.rows):
            row_max_after = [
                max((grid[r][c] for c in free_cols), default=0)
                for r in range(g + 1, matrix.rows)
            ]
            suffix_bound = sum(row_max_after)
            for c in free_cols:
                w = grid[g][c]
                if w == 0 or acc + w + suffix_bound < best:
                    continue
                rest_cols = [col for col in free_cols if col != c]
                if acc + w + _submatrix_max(grid, g + 1, rest_cols) == best:
                    chosen = (g, c)
                    break
            if chosen:
                break
        assert chosen is not None, "optimal matching refinement failed to progress"
        g, c = chosen
        pairs.append(chosen)
        acc += grid[g][c]
        last_row = g
        free_cols.remove(c)
    return Matching(tuple(pairs), Fraction(best, denom))


def brute_force_matching(matrix: AgreementMatrix) -> Matching:
    """Exhaustive matching oracle; same result contract as :func:`optimal_matching`.

    Enumerates every injective assignment of the smaller side, so it refuses
    matrices with min(rows, cols) > BRUTE_FORCE_LIMIT.
    """
    if min(matrix.rows, matrix.cols) > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"matrix too large for enumeration: min side > {BRUTE_FORCE_LIMIT}"
        )
    if matrix.rows == 0 or matrix.cols == 0:
        return Matching((), Fraction(0))

    def candidates() -> Iterable[tuple[tuple[int, int], ...]]:
        if matrix.rows <= matrix.cols:
            for perm in itertools.permutations(range(matrix.cols), matrix.rows):
                yield tuple((g, perm[g]) for g in range(matrix.rows))
        else:
            for perm in itertools.permutations(range(matrix.rows), matrix.cols):
                yield tuple(sorted((perm[c], c) for c in range(matrix.cols)))

    best_pairs: tuple[tuple[int, int], ...] = ()
    best_weight = Fraction(0)
    for assignment in candidates():
        kept = tuple((g, c) for g, c in assignment if matrix.cells[g][c] > 0)
        weight = sum((matrix.cells[g][c] for g, c in kept), Fraction(0))
        if weight > best_weight or (weight == best_weight and kept < best_pairs):
            best_pairs = kept
            best_weight = weight
    return Matching(best_pairs, best_weight)


@dataclass(frozen=True)
class ScoreReport:
    """Corpus-level scores plus per-slot agreement over matched pairs."""

    true_positive_mass: Fraction
    gold_count: int
    predicted_count: int
    precision: float
    recall: float
    f1: float
    per_slot_agreement: Mapping[Slot, float]
    per_slot_spurious: Mapping[Slot, int]

    @classmethod
    def from_mass(
        cls,
        tp: Fraction,
        gold_count: int,
        predicted_count: int,
        per_slot_agreement: Mapping[Slot, float] | None = None,
        per_slot_spurious: Mapping[Slot, int] | None = None,
    ) -> "ScoreReport":
        precision = float(tp / predicted_count) if predicted_count else 0.0
        recall = float(tp / gold_count) if gold_count else 0.0
        f1 = (
            2 * precision * recall / (precision + recall)
            if precision + recall > 0
            else 0.0
        )
        return cls(
            true_positive_mass=tp,
            gold_count=gold_count,
            predicted_count=predicted_count,
            precision=precision,
            recall=recall,
            f1=f1,
            per_slot_agreement=dict(per_slot_agreement or {}),
            per_slot_spurious=dict(per_slot_spurious or {}),
        )


GoldSets = Mapping[str, Sequence[OpinionTuple | SlotDict]]


def _sort_key(opinion: OpinionTuple | SlotDict) -> tuple:
    """Content-based ordering key (None-safe) used to canonicalize input order."""
    return tuple(
        (slot, value is None, value or "") for (slot, value) in _exact_key(opinion)
    )


def _check_ids(gold: GoldSets, pred: GoldSets) -> list[str]:
    if set(gold) != set(pred):
        missing = sorted(set(gold) - set(pred))
        extra = sorted(set(pred) - set(gold))
        raise ValueError(
            f"mismatched sentence ids: missing from predictions {missing}, unknown {extra}"
        )
    return list(gold.keys())


def component_level_scores(gold: GoldSets, pred: GoldSets) -> ScoreReport:
    """Component-level exact match over parallel per-sentence opinion sets.

    Per sentence the agreement matrix is aligned with a maximum-weight
    matching and the matched agreement mass accumulates into TP. Precision
    divides by the total predicted count, recall by the total gold count.
    Per-slot agreement rates are computed over matched pairs only.

    Each sentence's opinions are sorted by content before matching so that
    every report field, including the per-slot breakdown, is independent of
    input order even when equal-weight matchings tie.
    """
    tp = Fraction(0)
    gold_count = 0
    predicted_count = 0
    slot_hits: dict[Slot, int] = {}
    slot_seen: dict[Slot, int] = {}
    spurious: dict[Slot, int] = {}
    for sid in _check_ids(gold, pred):
        gold_set = sorted(gold[sid], key=_sort_key)
        pred_set = sorted(pred[sid], key=_sort_key)
        gold_count += len(gold_set)
        predicted_count += len(pred_set)
        if not gold_set or not pred_set:
            continue
        matching = optimal_matching(AgreementMatrix.from_opinions(gold_set, pred_set))
        tp += matching.total_weight
        for g, p in matching.pairs:
            gold_items = _present(gold_set[g])
            pred_items = _present(pred_set[p])
            for slot, value in gold_items.items():
                slot_seen[slot] = slot_seen.get(slot, 0) + 1
                if pred_items.get(slot) == value:
                    slot_hits[slot] = slot_hits.get(slot, 0) + 1
            for slot in pred_items:
                if slot not in gold_items:
                    spurious[slot] = spurious.get(slot, 0) + 1
    rates = {
        slot: slot_hits.get(slot, 0) / seen for slot, seen in slot_seen.items() if seen
    }
    return ScoreReport.from_mass(tp, gold_count, predicted_count, rates, spurious)


def _exact_key(opinion: OpinionTuple | SlotDict) -> tuple[tuple[str, str | None], ...]:
    """Canonical full-slot key: all slots in fixed order, absence included."""
    if isinstance(opinion, OpinionTuple):
        mapping: Mapping[Slot, str | None] = opinion.as_dict()
    else:
        mapping = opinion
    ordered = sorted(mapping, key=SLOT_ORDER.index)
    return tuple((slot.value, mapping[slot]) for slot in ordered)


def tuple_level_scores(gold: GoldSets, pred: GoldSets) -> ScoreReport:
    """Strict exact match: a prediction counts only if all slots (absence
    included) equal some not-yet-consumed gold tuple of the same sentence."""
    tp = 0
    gold_count = 0
    predicted_count = 0
    for sid in _check_ids(gold, pred):
        gold_keys = [_exact_key(g) for g in gold[sid]]
        pred_keys = [_exact_key(p) for p in pred[sid]]
        gold_count += len(gold_keys)
        predicted_count += len(pred_keys)
        remaining = list(gold_keys)
        for key in pred_keys:
            if key in remaining:
                remaining.remove(key)
                tp += 1
    return ScoreReport.from_mass(Fraction(tp), gold_count, predicted_count)


class MetricKind(str, Enum):
    COMPONENT = "component"
    TUPLE = "tuple"


def score_task(
    gold: GoldSets, pred: GoldSets, task: TaskKind, metric: MetricKind | str
) -> ScoreReport:
    """Project both sides onto the task's slots, drop duplicate projections
    within each sentence, then apply the chosen metric."""
    metric = MetricKind(metric)

    def prepare(sets: GoldSets) -> dict[str, list[dict[Slot, str | None]]]:
        out: dict[str, list[dict[Slot, str | None]]] = {}
        for sid, opinions in sets.items():
            seen: set[tuple] = set()
            kept: list[dict[Slot, str | None]] = []
            for opinion in opinions:
                projected = project_tuple(opinion, task)
                key = _exact_key(projected)
                if key not in seen:
                    seen.add(key)
                    kept.append(projected)
            out[sid] = kept
        return out

    gold_p, pred_p = prepare(gold), prepare(pred)
    if metric is MetricKind.COMPONENT:
        return component_level_scores(gold_p, pred_p)
    return tuple_level_scores(gold_p, pred_p)
