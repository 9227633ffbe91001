import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import FIXTURES, GOLD_URL, case_study_document  # noqa: E402

from ontotier import owl_model  # noqa: E402


@pytest.fixture
def gold_mini():
    data = (FIXTURES / "gold_mini.owl").read_bytes()
    return owl_model.parse_ontology(data, base=GOLD_URL)


@pytest.fixture
def gold_with_individuals():
    data = (FIXTURES / "gold_individuals.owl").read_bytes()
    return owl_model.parse_ontology(data, base=GOLD_URL)


@pytest.fixture
def case_study():
    return case_study_document()
