from __future__ import annotations

from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def corpus_refs() -> Path:
    return FIXTURES / "corpus" / "refs"


@pytest.fixture
def corpus_hyps() -> Path:
    return FIXTURES / "corpus" / "hyps"


@pytest.fixture
def revision_pairs() -> Path:
    return FIXTURES / "revision_pairs"
