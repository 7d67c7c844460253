from __future__ import annotations

import pytest

from meettree import MeetTree


@pytest.fixture
def fig_tree() -> MeetTree:
    """r < g < p; a, b children of p; c a second child of g."""
    return MeetTree(
        "r g p a b c".split(),
        {"r": None, "g": "r", "p": "g", "a": "p", "b": "p", "c": "g"},
    )


@pytest.fixture
def chain3() -> MeetTree:
    return MeetTree("x0 x1 x2".split(), {"x0": None, "x1": "x0", "x2": "x1"})
