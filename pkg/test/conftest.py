"""
Shared fixtures for the test suite
"""

import sys
sys.path.append('.')

import pytest

from src.algebra.chain_maps import Family
from src.algebra.words import parse_word


@pytest.fixture
def word():
    """word("e[1,3] e[1,2]", "D", 3)"""
    def make(text: str, fam: str, n: int):
        return parse_word(text, Family.parse(fam), n)
    return make
