"""
algebra/words.py
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
Presentation letters, words over them, and the evaluation homomorphism

Word text grammar:
    WORD  := "1" | TOKEN (WS TOKEN)*
    TOKEN := KIND "[" INT ("," INT)? "]"
"""

import sys
sys.path.append('.')

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from src.algebra.chain_maps import Family, PartialMap, compose, generator, identity
from src.errors import UnsupportedFamilyError, ValidationError, WordSyntaxError

TOKEN_RE = re.compile(r"([a-z])\[(\d+)(?:,(\d+))?\]")

# kind -> arity, per family
FAMILY_KINDS: Dict[Family, Dict[str, int]] = {
    Family.D: {"e": 2},
    Family.ID: {"a": 2, "f": 1},
    Family.C: {"e": 1},
    Family.IC: {"a": 1, "e": 1},
    Family.PC: {"e": 1, "f": 1},
}


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    kind: str
    indices: Tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}[{','.join(str(i) for i in self.indices)}]"

    @property
    def first(self) -> int:
        return self.indices[0]

    @property
    def last(self) -> int:
        return self.indices[-1]


def sym(kind: str, *indices: int) -> GeneratorSymbol:
    return GeneratorSymbol(kind, tuple(indices))


def _kinds(fam: Family) -> Dict[str, int]:
    fam = Family(fam)
    if fam not in FAMILY_KINDS:
        raise UnsupportedFamilyError(
            f"{fam.value} has no presentation letters; use adjoin_bottom to work in D_(n+1)")
    return FAMILY_KINDS[fam]


def validate_symbol(fam: Family, s: GeneratorSymbol, n: int):
    """Raise ValidationError unless the letter belongs to the family's alphabet on [n]"""
    kinds = _kinds(fam)
    fam = Family(fam)
    if s.kind not in kinds:
        raise ValidationError(f"letter kind {s.kind!r} is not used by {fam.value}")
    if len(s.indices) != kinds[s.kind]:
        raise ValidationError(f"{s} needs {kinds[s.kind]} index(es) in {fam.value}")

    if len(s.indices) == 2:
        i, j = s.indices
        if not 1 <= i < j <= n:
            raise ValidationError(f"{s} requires 1 <= i < j <= {n}")
        return

    (i,) = s.indices
    # partial identities range over the whole chain, shifts over 1..n-1
    top = n if (fam, s.kind) in {(Family.IC, "e"), (Family.PC, "f"), (Family.ID, "f")} else n - 1
    if not 1 <= i <= top:
        raise ValidationError(f"{s} requires 1 <= i <= {top}")


@lru_cache(maxsize=None)
def alphabet(fam: Family, n: int) -> Tuple[GeneratorSymbol, ...]:
    """Letters of the family on [n], ordered by (kind, indices)"""
    letters = []
    for kind, arity in _kinds(fam).items():
        if arity == 2:
            letters += [sym(kind, i, j) for j in range(2, n + 1) for i in range(1, j)]
        else:
            letters += [sym(kind, i) for i in range(1, n + 1)]
    valid = []
    for s in letters:
        try:
            validate_symbol(fam, s, n)
        except ValidationError:
            continue
        valid.append(s)
    return tuple(sorted(valid))


@dataclass(frozen=True)
class Word:
    letters: Tuple[GeneratorSymbol, ...]
    family: Family
    n: int

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        return self.letters[item]

    def __add__(self, other: "Word") -> "Word":
        if (self.family, self.n) != (other.family, other.n):
            raise ValidationError("cannot concatenate words of different families or chain sizes")
        return Word(self.letters + other.letters, self.family, self.n)

    def __str__(self) -> str:
        return format_word(self)

    def replace(self, letters: Iterable[GeneratorSymbol]) -> "Word":
        return Word(tuple(letters), self.family, self.n)


def make_word(letters: Sequence[GeneratorSymbol], fam: Family, n: int) -> Word:
    """Word over the family's alphabet; rejects foreign letters"""
    fam = Family(fam)
    for s in letters:
        validate_symbol(fam, s, n)
    return Word(tuple(letters), fam, n)


def empty_word(fam: Family, n: int) -> Word:
    """The empty word, which evaluates to the identity"""
    return Word((), Family(fam), n)


# ═══════════════════════════════════════════════════════════════
# TEXT FORMAT
# ═══════════════════════════════════════════════════════════════

def parse_word(text: str, fam: Family, n: int) -> Word:
    """Parse space-separated letters such as "e[1,2] e[1,3]"; "1" is the empty word"""
    fam = Family(fam)
    _kinds(fam)
    stripped = text.strip()
    if stripped == "1":
        return empty_word(fam, n)
    if not stripped:
        raise WordSyntaxError("empty text; the empty word is written '1'")

    letters = []
    for token in stripped.split():
        match = TOKEN_RE.fullmatch(token)
        if not match:
            raise WordSyntaxError(f"bad token {token!r} in {text!r}")
        kind, first, second = match.groups()
        indices = (int(first),) if second is None else (int(first), int(second))
        letters.append(GeneratorSymbol(kind, indices))
    return make_word(letters, fam, n)


def format_word(w: Word) -> str:
    """Inverse of parse_word"""
    if not w.letters:
        return "1"
    return " ".join(str(s) for s in w.letters)


# ═══════════════════════════════════════════════════════════════
# EVALUATION
# ═══════════════════════════════════════════════════════════════

@lru_cache(maxsize=None)
def generator_table(fam: Family, n: int) -> Dict[GeneratorSymbol, PartialMap]:
    """Letter to concrete map, for every letter of the alphabet"""
    return {s: generator(fam, s, n) for s in alphabet(fam, n)}


def evaluate_letters(fam: Family, n: int, letters: Iterable[GeneratorSymbol]) -> PartialMap:
    """Product of the letters' maps, left to right"""
    table = generator_table(Family(fam), n)
    result = identity(n)
    for s in letters:
        result = compose(result, table[s])
    return result


def evaluate(w: Word) -> PartialMap:
    """Left-to-right product of the letters' concrete maps"""
    return evaluate_letters(w.family, w.n, w.letters)


def all_words(fam: Family, n: int, max_length: int) -> List[Word]:
    """Every word of length <= max_length, shortest first"""
    letters = alphabet(fam, n)
    layer = [()]
    words = [Word((), Family(fam), n)]
    for _ in range(max_length):
        layer = [w + (s,) for w in layer for s in letters]
        words += [Word(w, Family(fam), n) for w in layer]
    return words
