"""
algebra/chain_maps.py
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
Partial transformations of the chain [n] = {1..n}

A PartialMap stores its images as a dense tuple of length n where 0 means
"undefined". Composition is postfix: compose(alpha, beta) applies alpha first.
"""

import sys
sys.path.append('.')

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Tuple

import numpy as np

from src.config import CHAIN_CONFIG
from src.errors import ResourceLimitError, ValidationError
from src.utils.logger import get_module_logger

logger = get_module_logger("chain_maps")


class Family(str, Enum):
    """Monoid families on the n-chain"""
    D = "D"
    PD = "PD"
    ID = "ID"
    C = "C"
    IC = "IC"
    PC = "PC"

    @classmethod
    def parse(cls, text: str) -> "Family":
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise ValidationError(f"unknown family {text!r}; expected one of {[f.value for f in cls]}")


# (full, injective, order_preserving); order-decreasing is always required
FAMILY_PREDICATES: Dict[Family, Tuple[bool, bool, bool]] = {
    Family.D: (True, False, False),
    Family.PD: (False, False, False),
    Family.ID: (False, True, False),
    Family.C: (True, False, True),
    Family.IC: (False, True, True),
    Family.PC: (False, False, True),
}


@dataclass(frozen=True)
class PropertySet:
    order_decreasing: bool
    order_preserving: bool
    injective: bool
    full: bool

    def to_dict(self) -> Dict:
        return {
            "order_decreasing": self.order_decreasing,
            "order_preserving": self.order_preserving,
            "injective": self.injective,
            "full": self.full,
        }


@dataclass(frozen=True, order=True)
class PartialMap:
    """A partial self-map of {1..n}; images[x-1] == 0 means x is undefined"""
    n: int
    images: Tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValidationError(f"chain size must be a positive integer, got {self.n!r}")
        if len(self.images) != self.n:
            raise ValidationError(f"expected {self.n} images, got {len(self.images)}")
        for y in self.images:
            if not 0 <= y <= self.n:
                raise ValidationError(f"image {y} outside 0..{self.n}")
        # normalise numpy scalars so hashing and JSON stay plain
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "images", tuple(int(y) for y in self.images))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    @property
    def domain(self) -> Tuple[int, ...]:
        return tuple(x for x, y in enumerate(self.images, 1) if y)

    @property
    def image(self) -> Tuple[int, ...]:
        return tuple(sorted({y for y in self.images if y}))

    def key(self) -> str:
        """Image-sequence label, e.g. '1,1,3'"""
        return ",".join(str(y) for y in self.images)

    def to_dict(self) -> Dict:
        return {"n": self.n, "images": list(self.images)}

    @classmethod
    def from_dict(cls, data: Dict) -> "PartialMap":
        return cls(int(data["n"]), tuple(data["images"]))


# ═══════════════════════════════════════════════════════════════
# CONSTRUCTION & COMPOSITION
# ═══════════════════════════════════════════════════════════════

def _check_size(n: int):
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"chain size must be a positive integer, got {n!r}")


def make_partial_map(n: int, assignments: Iterable[Tuple[int, int]]) -> PartialMap:
    """Build a map from (point, value) pairs; unlisted points are undefined"""
    _check_size(n)
    images = [0] * n
    seen = set()
    for x, y in assignments:
        if not 1 <= x <= n:
            raise ValidationError(f"point {x} outside 1..{n}")
        if not 1 <= y <= n:
            raise ValidationError(f"value {y} outside 1..{n}")
        if x in seen:
            raise ValidationError(f"point {x} assigned twice")
        seen.add(x)
        images[x - 1] = y
    return PartialMap(n, tuple(images))


def identity(n: int) -> PartialMap:
    """The identity map on [n]"""
    _check_size(n)
    return PartialMap(n, tuple(range(1, n + 1)))


def partial_identity(n: int, missing: Iterable[int]) -> PartialMap:
    """Identity restricted to [n] minus the given points"""
    gone = set(missing)
    return PartialMap(n, tuple(0 if x in gone else x for x in range(1, n + 1)))


def compose(alpha: PartialMap, beta: PartialMap) -> PartialMap:
    """Apply alpha, then beta"""
    if alpha.n != beta.n:
        raise ValidationError(f"cannot compose maps on chains of size {alpha.n} and {beta.n}")
    b = beta.images
    return PartialMap(alpha.n, tuple(b[y - 1] if y else 0 for y in alpha.images))


def compose_all(n: int, maps: Iterable[PartialMap]) -> PartialMap:
    """Product of maps left to right, identity when empty"""
    result = identity(n)
    for m in maps:
        result = compose(result, m)
    return result


# ═══════════════════════════════════════════════════════════════
# CLASSIFICATION
# ═══════════════════════════════════════════════════════════════

def classify(alpha: PartialMap) -> PropertySet:
    """The predicates the map satisfies, as a PropertySet"""
    defined = [(x, y) for x, y in enumerate(alpha.images, 1) if y]
    values = [y for _, y in defined]
    decreasing = all(y <= x for x, y in defined)
    # defined points are in increasing order, so preserving means non-decreasing values
    preserving = all(a <= b for a, b in zip(values, values[1:]))
    return PropertySet(
        order_decreasing=decreasing,
        order_preserving=preserving,
        injective=len(set(values)) == len(values),
        full=len(defined) == alpha.n,
    )


def in_family(alpha: PartialMap, fam: Family) -> bool:
    """True when the map meets the family's three predicates"""
    props = classify(alpha)
    full, injective, preserving = FAMILY_PREDICATES[Family(fam)]
    return (props.order_decreasing
            and (props.full or not full)
            and (props.injective or not injective)
            and (props.order_preserving or not preserving))


# ═══════════════════════════════════════════════════════════════
# BRUTE-FORCE ORACLE
# ═══════════════════════════════════════════════════════════════

def candidate_count(fam: Family, n: int) -> int:
    """Number of order-decreasing image tuples examined for the family"""
    full = FAMILY_PREDICATES[Family(fam)][0]
    return math.factorial(n) if full else math.factorial(n + 1)


def _decreasing_candidates(n: int, full: bool) -> np.ndarray:
    """All order-decreasing image rows, in lexicographic order"""
    # position x (1-based) takes values 0..x, or 1..x for full maps
    radices = np.array([x if full else x + 1 for x in range(1, n + 1)], dtype=np.int64)
    total = int(np.prod(radices))
    codes = np.arange(total, dtype=np.int64)
    rows = np.empty((total, n), dtype=np.int16)
    # last position varies fastest, which gives lexicographic order
    for pos in range(n - 1, -1, -1):
        rows[:, pos] = codes % radices[pos]
        codes //= radices[pos]
    if full:
        rows += 1
    return rows


def brute_force_enumerate(fam: Family, n: int) -> Tuple[PartialMap, ...]:
    """Every element of the family on [n], ordered lexicographically by images"""
    _check_size(n)
    fam = Family(fam)
    count = candidate_count(fam, n)
    cap = CHAIN_CONFIG["max_candidates"]
    if count > cap:
        raise ResourceLimitError(f"{fam.value}_{n}: {count} candidates exceeds cap {cap}")

    full, injective, preserving = FAMILY_PREDICATES[fam]
    rows = _decreasing_candidates(n, full)
    keep = np.ones(len(rows), dtype=bool)

    for x in range(n):
        for y in range(x + 1, n):
            a, b = rows[:, x], rows[:, y]
            both = (a != 0) & (b != 0)
            if injective:
                keep &= ~(both & (a == b))
            if preserving:
                keep &= ~(both & (a > b))

    elements = tuple(PartialMap(n, tuple(row)) for row in rows[keep].tolist())
    logger.debug(f"{fam.value}_{n}: {len(elements)} elements from {count} candidates")
    return elements


# ═══════════════════════════════════════════════════════════════
# GENERATORS
# ═══════════════════════════════════════════════════════════════

def generator(fam: Family, sym, n: int) -> PartialMap:
    """Concrete map of a presentation letter (see words.GeneratorSymbol)"""
    from src.algebra.words import validate_symbol

    fam = Family(fam)
    validate_symbol(fam, sym, n)
    kind, idx = sym.kind, sym.indices

    if fam is Family.D:
        i, j = idx
        return _move(n, j, i)
    if fam is Family.ID:
        if kind == "f":
            return partial_identity(n, idx)
        i, j = idx
        return _move(n, j, i, kill=i)
    if fam is Family.C:
        (i,) = idx
        return _move(n, i + 1, i)
    if fam is Family.IC:
        (i,) = idx
        if kind == "e":
            return partial_identity(n, idx)
        return _move(n, i + 1, i, kill=i)
    if fam is Family.PC:
        (i,) = idx
        if kind == "f":
            return partial_identity(n, idx)
        return _move(n, i + 1, i)
    raise ValidationError(f"family {fam.value} has no generators")


def _move(n: int, src: int, dst: int, kill: int = None) -> PartialMap:
    """Send src to dst, fix everything else, optionally drop one point from the domain"""
    images = list(range(1, n + 1))
    images[src - 1] = dst
    if kill is not None:
        images[kill - 1] = 0
    return PartialMap(n, tuple(images))


def generators(fam: Family, n: int) -> List[Tuple[object, PartialMap]]:
    """(symbol, map) pairs for every letter of the family's alphabet"""
    from src.algebra.words import alphabet

    return [(sym, generator(fam, sym, n)) for sym in alphabet(fam, n)]


# ═══════════════════════════════════════════════════════════════
# PD_n INTO D_{n+1}
# ═══════════════════════════════════════════════════════════════

def adjoin_bottom(alpha: PartialMap) -> PartialMap:
    """Shift the chain up by one and send undefined points to the new bottom"""
    if not in_family(alpha, Family.PD):
        raise ValidationError(f"adjoin_bottom needs an order-decreasing map, got {alpha.key()}")
    images = [1] + [y + 1 if y else 1 for y in alpha.images]
    return PartialMap(alpha.n + 1, tuple(images))


def _pin_composition_order():
    # relation e[1,3] e[2,3] = e[1,3] only holds when the left factor acts first
    first, second = _move(3, 3, 1), _move(3, 3, 2)
    assert compose(first, second) == first, "composition must apply the left factor first"


_pin_composition_order()
