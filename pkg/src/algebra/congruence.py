"""
algebra/congruence.py
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
Size of a presented monoid, computed from the presentation alone

Shortlex completion of the defining relations (alphabet ordered by
(kind, indices)), then a breadth-first count of irreducible words. Each
letter is encoded as one character so that words are plain strings and
rewriting is str.replace.
"""

import sys
sys.path.append('.')

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from src.algebra.presentations import Presentation
from src.algebra.words import GeneratorSymbol, Word
from src.config import CONGRUENCE_CONFIG
from src.errors import ValidationError
from src.utils.logger import get_module_logger

logger = get_module_logger("congruence")

METHOD = "completion"
_CODE_BASE = 0x100


class _Exhausted(Exception):
    pass


@dataclass(frozen=True)
class CongruenceLimits:
    max_states: int = field(default_factory=lambda: CONGRUENCE_CONFIG["max_states"])
    max_steps: int = field(default_factory=lambda: CONGRUENCE_CONFIG["max_steps"])
    max_rules: int = field(default_factory=lambda: CONGRUENCE_CONFIG["max_rules"])

    def __post_init__(self):
        for name in ("max_states", "max_steps", "max_rules"):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be positive")


@dataclass(frozen=True)
class PresentedSizeResult:
    status: str                  # completed | exhausted
    size: Optional[int]
    method: str = METHOD
    rules: int = 0

    def to_dict(self) -> Dict:
        return {"status": self.status, "size": self.size, "method": self.method}


# ═══════════════════════════════════════════════════════════════
# STRING REWRITING
# ═══════════════════════════════════════════════════════════════

def reduced(word: str, rule_list: Sequence[Tuple[str, str]]) -> str:
    """Rewrite word with rule_list until no left side occurs"""
    # rules strictly shrink in shortlex, so this terminates
    while True:
        word0 = word
        for left, right in rule_list:
            word = word.replace(left, right)
        if word == word0:
            return word


def shortlex_ordered(a: str, b: str) -> Tuple[str, str]:
    """The pair as (larger, smaller) in shortlex order"""
    if (len(a), a) > (len(b), b):
        return (a, b)
    return (b, a)


def kb_complete(rules: Sequence[Tuple[str, str]], limits: CongruenceLimits) -> Tuple[List[Tuple[str, str]], int]:
    """Complete a string rewriting system; returns (rules, rounds) or raises _Exhausted"""
    rule_set = set()
    for left, right in rules:
        if left != right:
            rule_set.add(shortlex_ordered(left, right))

    # rule_list[:num_reduced] are pairwise inter-reduced
    rule_list = sorted(rule_set)
    num_reduced = 0

    def replace_rule_at_index(i, new1, new2):
        nonlocal num_reduced
        rule_set.remove(rule_list[i])
        del rule_list[i]
        if i < num_reduced:
            num_reduced -= 1
        new_rule = shortlex_ordered(new1, new2)
        if new_rule[0] != new_rule[1] and new_rule not in rule_set:
            rule_set.add(new_rule)
            rule_list.append(new_rule)

    rounds = 0
    while True:
        rounds += 1
        if rounds > limits.max_steps:
            raise _Exhausted(f"not complete after {limits.max_steps} rounds")

        # ─────────────────────────────────────────────────────────
        # Inter-reduction: no side contains another rule's left side
        # ─────────────────────────────────────────────────────────
        while num_reduced < len(rule_list):
            left1, right1 = rule_list[num_reduced]
            for i, (left2, right2) in enumerate(rule_list[:num_reduced + 1]):
                if left2 in right1:
                    replace_rule_at_index(num_reduced, right1.replace(left2, right2), left1)
                    break
                if left1 in right2:
                    replace_rule_at_index(i, right2.replace(left1, right1), left2)
                    break
                if i == num_reduced:
                    continue
                if left2 in left1:
                    replace_rule_at_index(num_reduced, left1.replace(left2, right2), right1)
                    break
                if left1 in left2:
                    replace_rule_at_index(i, left2.replace(left1, right1), right2)
                    break
            else:
                num_reduced += 1

        if len(rule_list) > limits.max_rules:
            raise _Exhausted(f"more than {limits.max_rules} rules")

        # ─────────────────────────────────────────────────────────
        # Critical pairs from overlaps (suffix of one = prefix of other)
        # ─────────────────────────────────────────────────────────
        prefix_to_rules = defaultdict(list)
        suffix_to_rules = defaultdict(list)
        for rule in rule_list:
            left = rule[0]
            for i in range(1, len(left)):
                prefix_to_rules[left[:i]].append(rule)
                suffix_to_rules[left[i:]].append(rule)

        critical_pairs = []
        for overlap in sorted(prefix_to_rules.keys() & suffix_to_rules.keys()):
            for left1, right1 in prefix_to_rules[overlap]:
                tail = left1[len(overlap):]
                for left2, right2 in suffix_to_rules[overlap]:
                    head = left2[:-len(overlap)]
                    crit1 = reduced(right2 + tail, rule_list)
                    crit2 = reduced(head + right1, rule_list)
                    if crit1 != crit2:
                        critical_pairs.append(shortlex_ordered(crit1, crit2))

        if not critical_pairs:
            break
        for pair in critical_pairs:
            if pair not in rule_set:
                rule_set.add(pair)
                rule_list.append(pair)

    for left0, right0 in rules:
        assert reduced(left0, rule_list) == reduced(right0, rule_list)
    return sorted(rule_list, key=lambda r: (len(r[0]), r)), rounds


# ═══════════════════════════════════════════════════════════════
# COMPLETED SYSTEM
# ═══════════════════════════════════════════════════════════════

class RewritingSystem:
    """Shortlex-completed rules for one presentation"""

    def __init__(self, presentation: Presentation, rules: List[Tuple[str, str]],
                 completed: bool, rounds: int, reason: str = ""):
        self.presentation = presentation
        self.rules = rules
        self.completed = completed
        self.rounds = rounds
        self.reason = reason
        self._letters = tuple(sorted(presentation.alphabet))
        self._code = {s: chr(_CODE_BASE + k) for k, s in enumerate(self._letters)}
        self._decode = {c: s for s, c in self._code.items()}

    def encode(self, letters: Sequence[GeneratorSymbol]) -> str:
        return "".join(self._code[s] for s in letters)

    def decode(self, text: str) -> Tuple[GeneratorSymbol, ...]:
        return tuple(self._decode[c] for c in text)

    def reduce(self, w: Word) -> Word:
        return w.replace(self.decode(reduced(self.encode(w.letters), self.rules)))

    def equal(self, u: Word, v: Word) -> bool:
        return reduced(self.encode(u.letters), self.rules) == reduced(self.encode(v.letters), self.rules)

    def count_irreducible(self, max_states: int) -> int:
        """Breadth-first count of words with no left side as a factor"""
        lefts = {left for left, _ in self.rules}
        lengths = sorted({len(left) for left in lefts})
        chars = [self._code[s] for s in self._letters]

        count = 1
        frontier = [""]
        while frontier:
            grown = []
            for w in frontier:
                for c in chars:
                    x = w + c
                    # w is irreducible, so only factors ending at c can match
                    if any(x[-k:] in lefts for k in lengths if k <= len(x)):
                        continue
                    grown.append(x)
            count += len(grown)
            if count > max_states:
                raise _Exhausted(f"more than {max_states} irreducible words")
            frontier = grown
        return count


def complete(p: Presentation, limits: CongruenceLimits = None) -> RewritingSystem:
    """Shortlex completion of the presentation's relations"""
    limits = limits or CongruenceLimits()
    cache_key = ("completion", limits)
    if cache_key in p.derived_cache:
        return p.derived_cache[cache_key]

    encoder = RewritingSystem(p, [], False, 0)
    rules = [(encoder.encode(r.lhs.letters), encoder.encode(r.rhs.letters)) for r in p.relations]
    try:
        completed_rules, rounds = kb_complete(rules, limits)
        system = RewritingSystem(p, completed_rules, True, rounds)
        logger.info(f"{p.family.value}_{p.n}: completed in {rounds} rounds, {len(completed_rules)} rules")
    except _Exhausted as e:
        system = RewritingSystem(p, [], False, limits.max_steps, reason=str(e))
        logger.warning(f"{p.family.value}_{p.n}: completion exhausted ({e})")

    p.derived_cache[cache_key] = system
    return system


def presented_size(p: Presentation, limits: CongruenceLimits = None) -> PresentedSizeResult:
    """|A*/rho| for the presentation, or status 'exhausted' when limits run out"""
    limits = limits or CongruenceLimits()
    system = complete(p, limits)
    if not system.completed:
        return PresentedSizeResult("exhausted", None)
    try:
        size = system.count_irreducible(limits.max_states)
    except _Exhausted as e:
        logger.warning(f"{p.family.value}_{p.n}: {e}")
        return PresentedSizeResult("exhausted", None, rules=len(system.rules))
    logger.info(f"{p.family.value}_{p.n}: presented size {size}")
    return PresentedSizeResult("completed", size, rules=len(system.rules))
