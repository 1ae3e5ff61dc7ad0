import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from commaps.algebra import IncidenceElement  # noqa: E402
from commaps.preorder import build_preorder, random_preorder  # noqa: E402
from commaps.ring import make_ring  # noqa: E402

DATA = Path(__file__).parent / "data"

RINGS = {name: make_ring(name) for name in ("Z", "Q", "Z/7")}


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def intro():
    return build_preorder([1, 2, 3], [(1, 3), (2, 3)])


@pytest.fixture
def ex24():
    return build_preorder([1, 2, 3, 4], [(1, 2), (2, 3), (2, 4)])


@pytest.fixture
def intro_map(intro):
    from commaps.commuting import map_from_json
    import json

    return map_from_json(intro, json.loads((DATA / "intro_map.json").read_text()))


rings = st.sampled_from(list(RINGS.values()))


@st.composite
def preorders(draw, min_size=1, max_size=5):
    n = draw(st.integers(min_size, max_size))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_preorder(n, random.Random(seed))


@st.composite
def elements(draw, poset, ring):
    vals = draw(st.lists(st.integers(-6, 6), min_size=len(poset.pairs), max_size=len(poset.pairs)))
    return IncidenceElement(poset, ring, dict(zip(poset.pairs, vals)))


# one summary line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k[2:])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}  {detail}")
