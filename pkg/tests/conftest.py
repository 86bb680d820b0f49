import random
from pathlib import Path

import pytest

from uoce.model import OpinionTuple, SentenceRecord

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

_WORDS = (
    "screen", "keyboard", "service", "plot", "fabric", "price", "room",
    "crisp", "flimsy", "friendly", "rushed", "soft", "steep", "noisy",
    "café", "naïve", 'a "quoted" bit', "back\\slash",
)


def random_opinion(rng: random.Random) -> OpinionTuple:
    """A structurally valid opinion with randomly absent optional slots."""

    def word() -> str:
        return " ".join(rng.choice(_WORDS) for _ in range(rng.randint(1, 3)))

    def optional() -> str | None:
        return word() if rng.random() < 0.6 else None

    return OpinionTuple(
        aspect_term=optional(),
        aspect_category=word(),
        target_entity=(
            f"https://example.org/things/{rng.randint(1, 5)}"
            if rng.random() < 0.2
            else word()
        ),
        sentiment_expression=optional(),
        sentiment_polarity=rng.choice(("positive", "negative", "neutral")),
        sentiment_intensity=rng.choice(("weak", "average", "strong")),
        holder_span=optional(),
        holder_entity=word(),
        qualifier=optional(),
        reason=optional(),
    )


def random_sentence(rng: random.Random, index: int) -> SentenceRecord:
    opinions = tuple(random_opinion(rng) for _ in range(rng.randint(1, 3)))
    return SentenceRecord(
        id=f"r{index}",
        domain=rng.choice(("Books", "Clothing", "Hotel", "Restaurant", "Laptop")),
        text="placeholder text",
        opinions=opinions,
    )


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN
