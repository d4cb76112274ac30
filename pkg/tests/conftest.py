import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import CORPUS  # noqa: E402


@pytest.fixture(params=CORPUS)
def corpus_name(request):
    return request.param
