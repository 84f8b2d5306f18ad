import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from textnet import build_network, default_lexicon, preprocess
from textnet.corpus import RawText

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def lexicon_en():
    return default_lexicon("en")


@pytest.fixture(scope="session")
def fixture_texts():
    """The twenty short prose samples, id -> raw string."""
    out = {}
    for path in sorted((FIXTURES / "texts").glob("t*.txt")):
        out[path.stem] = path.read_text(encoding="utf-8")
    assert len(out) == 20
    return out


@pytest.fixture(scope="session")
def fixture_networks(fixture_texts, lexicon_en):
    """Co-occurrence networks for all twenty samples, id -> WordNetwork."""
    nets = {}
    for tid, content in fixture_texts.items():
        doc = preprocess(RawText(id=tid, language="en", content=content), lexicon_en)
        nets[tid] = build_network(doc)
    return nets


@pytest.fixture(scope="session")
def reference_text():
    return (FIXTURES / "texts" / "mt_reference.txt").read_text(encoding="utf-8")
