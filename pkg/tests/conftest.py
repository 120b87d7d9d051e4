import pytest

from f4tori.extweyl import tits_group
from f4tori.rootsys import enumerate_roots
from f4tori.weylgrp import weyl_group


@pytest.fixture(scope="session")
def R():
    return enumerate_roots()


@pytest.fixture(scope="session")
def W():
    return weyl_group()


@pytest.fixture(scope="session")
def G():
    return tits_group()
