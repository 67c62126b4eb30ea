from __future__ import annotations

import pytest

from graphinverse import corpus


@pytest.fixture
def loop():
    return corpus.loop_graph()


@pytest.fixture
def edge():
    return corpus.edge_graph()


@pytest.fixture
def two_cycle():
    return corpus.two_cycle()


@pytest.fixture
def pendant():
    return corpus.pendant_cycle()


@pytest.fixture
def double_loop():
    return corpus.double_loop()


@pytest.fixture(params=sorted(corpus.CORPUS))
def corpus_graph(request):
    return corpus.CORPUS[request.param]


@pytest.fixture(params=sorted(corpus.ACYCLIC_CORPUS))
def acyclic_graph(request):
    return corpus.ACYCLIC_CORPUS[request.param]
