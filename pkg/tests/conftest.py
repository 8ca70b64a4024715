import json
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from bredon.repring import GroupSpec, VirtualRep

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"

ORDERS = [3, 5, 15, 21, 35, 105]


@st.composite
def gradings(draw, n=None, spread=4, trivial=10):
    n = n or draw(st.sampled_from(ORDERS))
    g = GroupSpec(n)
    terms = {r: draw(st.integers(-spread, spread)) for r in draw(st.lists(st.integers(1, n - 1), max_size=5))}
    return VirtualRep.build(g, draw(st.integers(-trivial, trivial)), terms)


@pytest.fixture(scope="session")
def frozen_oracle():
    return json.loads((DATA / "oracle_values.json").read_text())["entries"]
