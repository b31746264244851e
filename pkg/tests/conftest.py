from pathlib import Path

import pytest
from hypothesis import settings

from lingknn.lexicon import Category, Language, WordRecord

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

TOY = Path(__file__).resolve().parents[1] / "src" / "lingknn" / "data" / "toy_lexicon.csv"


@pytest.fixture
def toy_path():
    return TOY


@pytest.fixture
def toy_text():
    return TOY.read_text(encoding="utf-8")


def rec(id, surface, language=Language.HINDI, meaning=None, category=Category.MISCELLANEOUS, concept=None):
    return WordRecord(id=id, concept_id=concept or id, language=language, surface=surface, meaning=meaning, category=category)


ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
