"""Shared fixtures: small models and on-disk model documents."""

import pytest

from pml import KripkeModel, demo_graph, save_model


@pytest.fixture
def demo() -> KripkeModel:
    return demo_graph()


@pytest.fixture
def chain2() -> KripkeModel:
    # a -> b, nothing else
    return KripkeModel.build([[(0, 1)]], names=("a", "b"))


@pytest.fixture
def write_model(tmp_path):
    """Factory fixture: serialise a model to a temp file, return its path."""
    count = 0

    def _write(model: KripkeModel) -> str:
        nonlocal count
        count += 1
        path = tmp_path / f"model{count}.json"
        path.write_text(save_model(model), encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def demo_path(write_model) -> str:
    return write_model(demo_graph())
