"""
Test words
Token grammar, alphabets and evaluation
"""

import sys
sys.path.append('.')

import numpy as np
import pytest

from src.algebra.chain_maps import Family, compose, identity
from src.algebra.words import Word, all_words, alphabet, evaluate, format_word, parse_word, sym
from src.errors import UnsupportedFamilyError, ValidationError, WordSyntaxError


def test_parse_and_format():
    w = parse_word("  a[2,3]   f[1] ", Family.ID, 3)
    assert w.letters == (sym("a", 2, 3), sym("f", 1))
    assert format_word(w) == "a[2,3] f[1]"


def test_empty_word_is_one():
    w = parse_word("1", Family.C, 3)
    assert len(w) == 0
    assert format_word(w) == "1"
    assert evaluate(w) == identity(3)


@pytest.mark.parametrize("text", ["", "e[1,2", "e(1,2)", "E[1,2]", "e[1,2]e[1,3]"])
def test_bad_syntax(text):
    with pytest.raises(WordSyntaxError):
        parse_word(text, Family.D, 3)


@pytest.mark.parametrize("fam, text", [
    (Family.D, "e[2,2]"),
    (Family.D, "e[1]"),
    (Family.C, "e[3]"),
    (Family.IC, "f[1]"),
    (Family.ID, "a[3,4]"),
])
def test_letters_outside_the_alphabet(fam, text):
    with pytest.raises(ValidationError):
        parse_word(text, fam, 3)


def test_pd_has_no_letters():
    with pytest.raises(UnsupportedFamilyError):
        alphabet(Family.PD, 3)


def test_alphabet_sizes_and_order():
    assert alphabet(Family.D, 3) == (sym("e", 1, 2), sym("e", 1, 3), sym("e", 2, 3))
    assert len(alphabet(Family.ID, 3)) == 6
    assert alphabet(Family.IC, 3) == (sym("a", 1), sym("a", 2), sym("e", 1), sym("e", 2), sym("e", 3))
    assert alphabet(Family.C, 1) == ()


def test_evaluate_is_left_to_right(word):
    # 3 -> 2 by e[2,3], then 2 -> 1 by e[1,2]
    assert evaluate(word("e[2,3] e[1,2]", "D", 3)).images == (1, 1, 1)
    assert evaluate(word("e[1,2] e[2,3]", "D", 3)).images == (1, 1, 2)


def test_concatenation(word):
    u, v = word("e[1]", "C", 3), word("e[2]", "C", 3)
    assert format_word(u + v) == "e[1] e[2]"
    with pytest.raises(ValidationError):
        u + word("e[1]", "C", 4)


@pytest.mark.parametrize("fam", [Family.D, Family.ID, Family.C, Family.IC, Family.PC])
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_evaluate_turns_concatenation_into_compose(fam, n):
    letters = alphabet(fam, n)
    rng = np.random.default_rng(n)

    def random_word():
        picks = rng.integers(0, len(letters), size=int(rng.integers(0, 7)))
        return Word(tuple(letters[k] for k in picks), fam, n)

    for _ in range(200):
        u, v = random_word(), random_word()
        assert evaluate(u + v) == compose(evaluate(u), evaluate(v))


def test_all_words_counts():
    words = all_words(Family.D, 3, 2)
    assert len(words) == 1 + 3 + 9
    assert len(words[0]) == 0
