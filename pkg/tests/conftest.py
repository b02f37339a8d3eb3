import pytest

from cubeburnside import fixtures as FX


@pytest.fixture(scope="session")
def pd_corpus():
    return FX.pd_corpus()


@pytest.fixture(scope="session")
def small_corpus(pd_corpus):
    """Diagrams with at most 4 crossings (cheap enough for repeated builds)."""
    return {k: v for k, v in pd_corpus.items() if v.n <= 4}


@pytest.fixture(scope="session")
def wedge_cube():
    return FX.wedge_cube()


@pytest.fixture(scope="session")
def projective():
    return FX.projective_functor()
