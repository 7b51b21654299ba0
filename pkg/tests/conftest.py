import pytest
from hypothesis import settings

from typeb.algebra import compute_basis, present_bmwA, present_bmwB, present_heckeB, present_tlb

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def bbb():
    """B*B_1 .. B*B_3 tables, computed once."""
    return {n: compute_basis(present_bmwB(n)) for n in (1, 2, 3)}


@pytest.fixture(scope="session")
def bmwA3():
    return compute_basis(present_bmwA(3))


@pytest.fixture(scope="session")
def hecke():
    return {n: compute_basis(present_heckeB(n)) for n in (1, 2, 3)}


@pytest.fixture(scope="session")
def tlb_tables():
    return {n: compute_basis(present_tlb(n)) for n in (1, 2, 3)}
