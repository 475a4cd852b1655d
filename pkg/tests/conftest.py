from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import settings

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "scripts" / "corpus"

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def corpus():
    return CORPUS


def read_corpus(name: str) -> str:
    return (CORPUS / name).read_text()
