import pytest

from dbrg.corpus import enumerate_small_bipartite, generate, standard_corpus
from oracles import random_connected_graphs


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


@pytest.fixture(scope="session")
def random_graphs():
    return random_connected_graphs()


@pytest.fixture(scope="session")
def small_bipartite():
    return list(enumerate_small_bipartite(10))


@pytest.fixture(scope="session")
def delorme():
    return generate("delorme")


@pytest.fixture(scope="session")
def cay_d8():
    return generate("cay_d8")


@pytest.fixture(scope="session")
def sub_k4():
    return generate("subdivision_k4")


@pytest.fixture
def k23():
    return generate("complete_bipartite", 2, 3)
