"""
algebra/derivations.py
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
Proof logs for rewriting: steps, replay, and derived-relation search
"""

import sys
sys.path.append('.')

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from src.algebra.presentations import Presentation
from src.algebra.words import GeneratorSymbol, Word, format_word, parse_word
from src.config import NORMALIZER_CONFIG
from src.errors import TerminationGuardError
from src.utils.logger import get_module_logger

logger = get_module_logger("derivations")

Letters = Tuple[GeneratorSymbol, ...]


@dataclass(frozen=True)
class RewriteStep:
    relation_id: str
    position: int
    direction: str  # "LR" or "RL"

    def shifted(self, offset: int) -> "RewriteStep":
        return RewriteStep(self.relation_id, self.position + offset, self.direction)

    def to_dict(self) -> Dict:
        return {"rel": self.relation_id, "pos": self.position, "dir": self.direction}


@dataclass(frozen=True)
class Derivation:
    start: Word
    steps: Tuple[RewriteStep, ...]
    end: Word

    def to_dict(self) -> Dict:
        return {
            "start": format_word(self.start),
            "steps": [s.to_dict() for s in self.steps],
            "end": format_word(self.end),
        }

    @classmethod
    def from_dict(cls, data: Dict, fam, n: int) -> "Derivation":
        steps = tuple(RewriteStep(s["rel"], int(s["pos"]), s["dir"]) for s in data["steps"])
        return cls(parse_word(data["start"], fam, n), steps, parse_word(data["end"], fam, n))


# ═══════════════════════════════════════════════════════════════
# REPLAY
# ═══════════════════════════════════════════════════════════════

def apply_step(letters: Letters, step: RewriteStep, p: Presentation) -> Letters:
    """Apply one step; raises ValueError when it does not match"""
    rel = p.relation(step.relation_id)
    if rel is None:
        raise ValueError(f"unknown relation {step.relation_id}")
    if step.direction == "LR":
        pattern, replacement = rel.lhs.letters, rel.rhs.letters
    elif step.direction == "RL":
        pattern, replacement = rel.rhs.letters, rel.lhs.letters
    else:
        raise ValueError(f"bad direction {step.direction!r}")
    pos = step.position
    if pos < 0 or tuple(letters[pos:pos + len(pattern)]) != pattern:
        raise ValueError(f"{step.relation_id} does not match at position {pos}")
    return tuple(letters[:pos]) + replacement + tuple(letters[pos + len(pattern):])


def check_derivation(d: Derivation, p: Presentation) -> bool:
    """True iff every step is a legal application and the chain replays start -> end"""
    if (d.start.family, d.start.n) != (p.family, p.n) or (d.end.family, d.end.n) != (p.family, p.n):
        return False
    letters = d.start.letters
    for step in d.steps:
        try:
            letters = apply_step(letters, step, p)
        except ValueError as e:
            logger.debug(f"derivation rejected: {e}")
            return False
    return letters == d.end.letters


# ═══════════════════════════════════════════════════════════════
# DERIVED RELATIONS
# ═══════════════════════════════════════════════════════════════

def derive(p: Presentation, lhs: Sequence[GeneratorSymbol], rhs: Sequence[GeneratorSymbol]) -> List[RewriteStep]:
    """Shortest derivation lhs -> rhs through words at most `slack` letters longer"""
    lhs, rhs = tuple(lhs), tuple(rhs)
    key = ("derive", lhs, rhs)
    if key in p.derived_cache:
        return p.derived_cache[key]

    bound = max(len(lhs), len(rhs)) + NORMALIZER_CONFIG["lemma_search_slack"]
    budget = NORMALIZER_CONFIG["lemma_search_max_words"]
    parents = {lhs: None}
    queue = deque([lhs])

    while queue and rhs not in parents:
        word = queue.popleft()
        for pos in range(len(word)):
            for rel_id, direction, length, other in p.rewrites_at(word, pos):
                nxt = word[:pos] + other + word[pos + length:]
                if len(nxt) > bound or nxt in parents:
                    continue
                parents[nxt] = (word, RewriteStep(rel_id, pos, direction))
                queue.append(nxt)
        if len(parents) > budget:
            break

    if rhs not in parents:
        raise TerminationGuardError(
            f"no derivation of {_text(lhs)} = {_text(rhs)} within length {bound}")

    steps = []
    node = rhs
    while parents[node] is not None:
        node, step = parents[node]
        steps.append(step)
    steps.reverse()
    p.derived_cache[key] = steps
    logger.debug(f"derived {_text(lhs)} = {_text(rhs)} in {len(steps)} steps")
    return steps


def _text(letters: Letters) -> str:
    return " ".join(str(s) for s in letters) or "1"


# ═══════════════════════════════════════════════════════════════
# RECORDING REWRITER
# ═══════════════════════════════════════════════════════════════

class Rewriter:
    """Mutable word plus the proof log of every replacement made to it"""

    def __init__(self, p: Presentation, start: Word):
        self.p = p
        self.start = start
        self.letters: List[GeneratorSymbol] = list(start.letters)
        self.steps: List[RewriteStep] = []
        self.applications = 0
        size = max(len(start), 2)
        self.cap = NORMALIZER_CONFIG["step_cap_factor"] * size * size

    def replace(self, pos: int, length: int, new: Sequence[GeneratorSymbol]):
        """Replace letters[pos:pos+length] by new, via one relation or a derived one"""
        old = tuple(self.letters[pos:pos + length])
        new = tuple(new)
        self.applications += 1
        if self.applications > self.cap:
            raise TerminationGuardError(
                f"step cap {self.cap} exceeded normalizing {format_word(self.start)}")

        found = self.p.step_for(old, new)
        if found is not None:
            rel_id, direction = found
            self.steps.append(RewriteStep(rel_id, pos, direction))
        else:
            self.steps.extend(s.shifted(pos) for s in derive(self.p, old, new))
        self.letters[pos:pos + length] = new

    def word(self) -> Word:
        return self.start.replace(self.letters)

    def derivation(self) -> Derivation:
        return Derivation(self.start, tuple(self.steps), self.word())
