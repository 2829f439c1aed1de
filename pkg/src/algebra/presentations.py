"""
algebra/presentations.py
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
Finite presentations of D_n, ID_n, C_n, IC_n and PC_n

Every schema is instantiated over all admissible index tuples. Relation ids
are the schema id followed by the instance indices, e.g. "D.3[1,2,3]".
Chained equalities are split into binary relations with suffixed schema ids.
"""

import sys
sys.path.append('.')

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.algebra.chain_maps import Family
from src.algebra.words import (GeneratorSymbol, Word, alphabet, evaluate, make_word,
                               parse_word, format_word, sym)
from src.errors import UnsupportedFamilyError, ValidationError
from src.utils.logger import get_module_logger

logger = get_module_logger("presentations")

Letters = Tuple[GeneratorSymbol, ...]


@dataclass(frozen=True)
class Relation:
    id: str
    lhs: Word
    rhs: Word

    @property
    def schema(self) -> str:
        return self.id.split("[", 1)[0]

    def to_line(self) -> str:
        return f"{self.id}: {format_word(self.lhs)} = {format_word(self.rhs)}"


@dataclass
class Presentation:
    family: Family
    n: int
    alphabet: Tuple[GeneratorSymbol, ...]
    relations: List[Relation]
    _pairs: Dict[Tuple[Letters, Letters], Tuple[str, str]] = field(init=False, repr=False)
    _sides: Dict[Letters, List[Tuple[str, str, Letters]]] = field(init=False, repr=False)
    _by_id: Dict[str, Relation] = field(init=False, repr=False)
    derived_cache: Dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        self._by_id = {}
        self._pairs = {}
        self._sides = defaultdict(list)
        for rel in self.relations:
            if rel.id in self._by_id:
                raise ValidationError(f"duplicate relation id {rel.id}")
            self._by_id[rel.id] = rel
            lhs, rhs = rel.lhs.letters, rel.rhs.letters
            self._pairs.setdefault((lhs, rhs), (rel.id, "LR"))
            self._pairs.setdefault((rhs, lhs), (rel.id, "RL"))
            self._sides[lhs].append((rel.id, "LR", rhs))
            self._sides[rhs].append((rel.id, "RL", lhs))
        self.side_lengths = sorted({len(side) for side in self._sides})

    def relation(self, rel_id: str) -> Optional[Relation]:
        return self._by_id.get(rel_id)

    def step_for(self, old: Letters, new: Letters) -> Optional[Tuple[str, str]]:
        """(relation id, direction) turning the window old into new, if one relation does"""
        return self._pairs.get((tuple(old), tuple(new)))

    def rewrites_at(self, letters: Letters, pos: int):
        """Yield (rel_id, direction, side_length, replacement) applicable at pos"""
        for length in self.side_lengths:
            window = letters[pos:pos + length]
            if len(window) != length:
                break
            for rel_id, direction, other in self._sides.get(window, ()):
                yield rel_id, direction, length, other

    def export(self) -> str:
        return "\n".join(rel.to_line() for rel in self.relations)


# ═══════════════════════════════════════════════════════════════
# SCHEMAS
# ═══════════════════════════════════════════════════════════════

class _Builder:
    """Collects relation instances for one (family, n)"""

    def __init__(self, fam: Family, n: int):
        self.fam, self.n = fam, n
        self.relations: List[Relation] = []

    def add(self, schema: str, indices, lhs, rhs):
        rel_id = f"{schema}[{','.join(str(i) for i in indices)}]"
        self.relations.append(Relation(
            rel_id,
            make_word(lhs, self.fam, self.n),
            make_word(rhs, self.fam, self.n),
        ))


def _pairs_d(n):
    return [(i, j) for j in range(2, n + 1) for i in range(1, j)]


def _build_d(b: _Builder, n: int):
    e = lambda i, j: sym("e", i, j)
    letters = sorted(_pairs_d(n))
    for i, j in letters:
        b.add("D.1", (i, j), [e(i, j), e(i, j)], [e(i, j)])
    for (i, j), (k, l) in itertools.combinations(letters, 2):
        if not {i, j} & {k, l}:
            b.add("D.2", (i, j, k, l), [e(i, j), e(k, l)], [e(k, l), e(i, j)])
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        b.add("D.3", (i, j, k), [e(i, j), e(i, k)], [e(j, k), e(i, j)])
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        b.add("D.4", (i, j, k), [e(i, k), e(i, j)], [e(j, k), e(i, j)])
    for k in range(1, n + 1):
        for i, j in itertools.permutations(range(1, k), 2):
            b.add("D.5", (i, j, k), [e(i, k), e(j, k)], [e(i, k)])


def _build_id(b: _Builder, n: int):
    f = lambda i: sym("f", i)
    a = lambda i, j: sym("a", i, j)
    pairs = sorted(_pairs_d(n))
    for i in range(1, n + 1):
        b.add("ID.a", (i,), [f(i), f(i)], [f(i)])
    for i, j in itertools.combinations(range(1, n + 1), 2):
        b.add("ID.b", (i, j), [f(i), f(j)], [f(j), f(i)])
    for i, j in pairs:
        for k in range(1, n + 1):
            if k not in (i, j):
                b.add("ID.c", (k, i, j), [f(k), a(i, j)], [a(i, j), f(k)])
    for i, j in pairs:
        b.add("ID.d1", (i, j), [f(i), a(i, j)], [a(i, j)])
        b.add("ID.d2", (i, j), [a(i, j), f(j)], [a(i, j)])
    for i, j in pairs:
        b.add("ID.e1", (i, j), [f(j), a(i, j)], [a(i, j), f(i)])
        b.add("ID.e2", (i, j), [a(i, j), f(i)], [f(i), f(j)])
    for (i, j), (k, l) in itertools.combinations(pairs, 2):
        if not {i, j} & {k, l}:
            b.add("ID.f", (i, j, k, l), [a(i, j), a(k, l)], [a(k, l), a(i, j)])
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        b.add("ID.g", (i, j, k), [a(j, k), a(i, j)], [f(j), a(i, k)])


def _build_catalan(b: _Builder, n: int, prefix: str, ids: Tuple[str, str, str, str]):
    """Idempotent, far-commuting and braid-like schemas on e[1..n-1]"""
    e = lambda i: sym("e", i)
    top = n - 1
    for i in range(1, top + 1):
        b.add(f"{prefix}.{ids[0]}", (i,), [e(i), e(i)], [e(i)])
    for i in range(1, top + 1):
        for j in range(i + 2, top + 1):
            b.add(f"{prefix}.{ids[1]}", (i, j), [e(i), e(j)], [e(j), e(i)])
    for i in range(1, top):
        b.add(f"{prefix}.{ids[2]}", (i,), [e(i), e(i + 1), e(i)], [e(i + 1), e(i)])
    for i in range(1, top):
        b.add(f"{prefix}.{ids[3]}", (i,), [e(i + 1), e(i), e(i + 1)], [e(i + 1), e(i)])


def _build_c(b: _Builder, n: int):
    _build_catalan(b, n, "C", ("11", "12", "13", "14"))


def _build_ic(b: _Builder, n: int):
    e = lambda i: sym("e", i)
    a = lambda i: sym("a", i)
    for i in range(1, n + 1):
        b.add("IC.21", (i,), [e(i), e(i)], [e(i)])
    for i, j in itertools.combinations(range(1, n + 1), 2):
        b.add("IC.22", (i, j), [e(i), e(j)], [e(j), e(i)])
    for i in range(1, n + 1):
        for j in range(1, n):
            if i < j or i > j + 1:
                b.add("IC.23", (i, j), [e(i), a(j)], [a(j), e(i)])
    for i in range(1, n):
        for j in range(i + 2, n):
            b.add("IC.24", (i, j), [a(i), a(j)], [a(j), a(i)])
    for i in range(1, n):
        b.add("IC.25.1", (i,), [e(i), a(i)], [a(i)])
        b.add("IC.25.2", (i,), [a(i), e(i + 1)], [a(i)])
    for i in range(1, n):
        b.add("IC.26.1", (i,), [e(i + 1), a(i)], [a(i), e(i)])
        b.add("IC.26.2", (i,), [a(i), e(i)], [e(i), e(i + 1)])


def _build_pc(b: _Builder, n: int):
    e = lambda i: sym("e", i)
    f = lambda i: sym("f", i)
    _build_catalan(b, n, "PC", ("y1", "y2", "y3", "y4"))
    for i in range(1, n + 1):
        b.add("PC.y5", (i,), [f(i), f(i)], [f(i)])
    for i, j in itertools.combinations(range(1, n + 1), 2):
        b.add("PC.y6", (i, j), [f(i), f(j)], [f(j), f(i)])
    for j in range(1, n + 1):
        for i in range(1, n):
            if j < i or j > i + 1:
                b.add("PC.y7", (j, i), [f(j), e(i)], [e(i), f(j)])
    for i in range(1, n):
        b.add("PC.y8", (i,), [f(i + 1), e(i)], [f(i + 1)])
    for i in range(1, n):
        b.add("PC.y9", (i,), [e(i), f(i + 1)], [e(i)])
    for i in range(1, n):
        b.add("PC.y10", (i,), [e(i), f(i)], [f(i), f(i + 1)])


_BUILDERS = {
    Family.D: _build_d,
    Family.ID: _build_id,
    Family.C: _build_c,
    Family.IC: _build_ic,
    Family.PC: _build_pc,
}

_PRESENTATION_CACHE: Dict[Tuple[Family, int], Presentation] = {}


def build_presentation(fam: Family, n: int) -> Presentation:
    """Generators and defining relations of the family on [n]"""
    fam = Family(fam)
    if fam is Family.PD:
        raise UnsupportedFamilyError(
            "PD has no presentation of its own; map PD_n into D_(n+1) with adjoin_bottom")
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"chain size must be a positive integer, got {n!r}")

    key = (fam, n)
    if key not in _PRESENTATION_CACHE:
        builder = _Builder(fam, n)
        _BUILDERS[fam](builder, n)
        _PRESENTATION_CACHE[key] = Presentation(fam, n, alphabet(fam, n), builder.relations)
        logger.info(f"{fam.value}_{n}: {len(alphabet(fam, n))} letters, "
                    f"{len(builder.relations)} relations")
    return _PRESENTATION_CACHE[key]


def lemma_relations(fam: Family, n: int) -> List[Relation]:
    """Consequences of the defining relations that the normalizers use as macro steps"""
    fam = Family(fam)
    b = _Builder(fam, n)
    if fam is Family.ID:
        f = lambda i: sym("f", i)
        a = lambda i, j: sym("a", i, j)
        for i, j in sorted(_pairs_d(n)):
            for k in range(1, j):
                if k != i:
                    b.add("ID.aa1", (i, j, k), [a(i, j), a(k, j)], [f(k), a(i, j)])
            for k in range(i + 1, n + 1):
                if k != j:
                    b.add("ID.aa2", (i, j, k), [a(i, j), a(i, k)], [f(j), a(i, k)])
            b.add("ID.aa3", (i, j), [a(i, j), a(i, j)], [f(i), f(j)])
    elif fam is Family.IC:
        e = lambda i: sym("e", i)
        a = lambda i: sym("a", i)
        for i in range(1, n - 1):
            b.add("IC.L1", (i,), [a(i + 1), a(i), a(i + 1)], [a(i + 1), a(i)])
        for i in range(1, n):
            b.add("IC.L2", (i,), [a(i), a(i)], [e(i), e(i + 1)])
        for i in range(1, n - 1):
            b.add("IC.L3", (i,), [a(i), a(i + 1), a(i)], [a(i + 1), a(i)])
    return b.relations


def parse_presentation(text: str, fam: Family, n: int) -> Presentation:
    """Read the export format '<id>: <lhs> = <rhs>', one relation per line"""
    relations = []
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            rel_id, body = line.split(":", 1)
            lhs, rhs = body.split("=", 1)
        except ValueError:
            raise ValidationError(f"line {line_no}: expected '<id>: <lhs> = <rhs>'")
        relations.append(Relation(rel_id.strip(), parse_word(lhs, fam, n), parse_word(rhs, fam, n)))
    return Presentation(Family(fam), n, alphabet(fam, n), relations)


# ═══════════════════════════════════════════════════════════════
# SOUNDNESS
# ═══════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class RelationCheck:
    relation_id: str
    passed: bool
    witness: Optional[int] = None

    def to_dict(self) -> Dict:
        return {"relation": self.relation_id, "passed": self.passed, "witness": self.witness}


@dataclass
class SoundnessReport:
    family: Family
    n: int
    checks: List[RelationCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[RelationCheck]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict:
        return {
            "family": Family(self.family).value,
            "n": self.n,
            "passed": self.passed,
            "failures": [c.to_dict() for c in self.failures],
        }


def check_soundness(p: Presentation) -> SoundnessReport:
    """Evaluate both sides of every relation and report mismatches"""
    checks = []
    for rel in p.relations:
        left, right = evaluate(rel.lhs), evaluate(rel.rhs)
        if left == right:
            checks.append(RelationCheck(rel.id, True))
            continue
        witness = next(x for x in range(1, p.n + 1) if left(x) != right(x))
        checks.append(RelationCheck(rel.id, False, witness))
        logger.warning(f"{rel.id} fails at x={witness}: {left.key()} vs {right.key()}")
    return SoundnessReport(p.family, p.n, checks)


# ═══════════════════════════════════════════════════════════════
# SIDE-CONDITION AUDIT
# ═══════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class AuditEntry:
    schema: str
    lhs: str
    rhs: str
    status: str  # unsound | redundant | missing | undecided


def _excluded_instances(fam: Family, n: int):
    """(schema, lhs, rhs) for index tuples a side condition leaves out"""
    if fam is Family.D:
        e = lambda i, j: sym("e", i, j)
        letters = sorted(_pairs_d(n))
        for (i, j), (k, l) in itertools.combinations(letters, 2):
            if {i, j} & {k, l}:
                yield "D.2", [e(i, j), e(k, l)], [e(k, l), e(i, j)]
        for i, k in letters:
            yield "D.5", [e(i, k), e(i, k)], [e(i, k)]
    elif fam is Family.ID:
        f = lambda i: sym("f", i)
        a = lambda i, j: sym("a", i, j)
        pairs = sorted(_pairs_d(n))
        for i, j in pairs:
            for k in (i, j):
                yield "ID.c", [f(k), a(i, j)], [a(i, j), f(k)]
        for (i, j), (k, l) in itertools.combinations(pairs, 2):
            if {i, j} & {k, l}:
                yield "ID.f", [a(i, j), a(k, l)], [a(k, l), a(i, j)]
    elif fam in (Family.C, Family.PC):
        e = lambda i: sym("e", i)
        schema = "C.12" if fam is Family.C else "PC.y2"
        for i in range(1, n - 1):
            yield schema, [e(i), e(i + 1)], [e(i + 1), e(i)]
        if fam is Family.PC:
            for i in range(1, n):
                for j in (i, i + 1):
                    yield "PC.y7", [sym("f", j), e(i)], [e(i), sym("f", j)]
    elif fam is Family.IC:
        e = lambda i: sym("e", i)
        a = lambda i: sym("a", i)
        for j in range(1, n):
            for i in (j, j + 1):
                yield "IC.23", [e(i), a(j)], [a(j), e(i)]
        for i in range(1, n - 1):
            yield "IC.24", [a(i), a(i + 1)], [a(i + 1), a(i)]


def audit_side_conditions(fam: Family, n: int) -> List[AuditEntry]:
    """Classify every excluded index tuple as unsound or already derivable"""
    from src.algebra.congruence import complete

    fam = Family(fam)
    p = build_presentation(fam, n)
    system = None
    entries = []
    for schema, lhs, rhs in _excluded_instances(fam, n):
        left, right = make_word(lhs, fam, n), make_word(rhs, fam, n)
        if evaluate(left) != evaluate(right):
            status = "unsound"
        else:
            if system is None:
                system = complete(p)
            if not system.completed:
                status = "undecided"
            else:
                status = "redundant" if system.equal(left, right) else "missing"
        entries.append(AuditEntry(schema, format_word(left), format_word(right), status))
        if status == "missing":
            logger.warning(f"{schema}: {format_word(left)} = {format_word(right)} is sound but not derivable")
    return entries
