"""
model_validation/run_verification.py
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
Verification Pipeline - checks each presentation by the counting argument

For one (family, n) a report collects the three premises:
    relations_sound      every defining relation holds between concrete maps
    generators_generate  the letters' maps generate the whole family
    completeness         normal forms (or the presented size) count the family
plus the normalizer audit over an exhaustive and a random word sample.
"""

import sys
sys.path.append('.')

import json
import os
from math import factorial
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from src.algebra.chain_maps import (Family, PartialMap, adjoin_bottom, brute_force_enumerate,
                                    compose, generators, identity)
from src.algebra.congruence import CongruenceLimits, presented_size
from src.algebra.derivations import check_derivation
from src.algebra.normal_forms import (NORMAL_FORM_FAMILIES, NORMALIZER_FAMILIES,
                                      enumerate_normal_forms, normal_form_of, normalize)
from src.algebra.presentations import build_presentation, check_soundness
from src.algebra.reference_counts import reference_size
from src.algebra.words import Word, all_words, alphabet, evaluate
from src.config import VERIFICATION_CONFIG
from src.errors import ResourceLimitError, TerminationGuardError, UnsupportedFamilyError
from src.utils.logger import get_module_logger

logger = get_module_logger("verification")

PRESENTED_FAMILIES = (Family.D, Family.ID, Family.C, Family.IC, Family.PC)


class JsonEncoder(json.JSONEncoder):
    """Encoder for numpy types and result objects"""
    def default(self, obj):
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, Family):
            return obj.value
        if hasattr(obj, "to_dict"):
            return obj.to_dict()
        return super(JsonEncoder, self).default(obj)


def to_json(obj) -> str:
    """Indented JSON text for reports and result dictionaries"""
    return json.dumps(obj, indent=2, cls=JsonEncoder)


# ═══════════════════════════════════════════════════════════════
# GENERATION
# ═══════════════════════════════════════════════════════════════

def generated_closure(fam: Family, n: int) -> List[PartialMap]:
    """Breadth-first product closure of the letters' maps, seeded with the identity"""
    fam = Family(fam)
    if fam not in PRESENTED_FAMILIES:
        raise UnsupportedFamilyError(f"{fam.value} has no generating letters; see verify_pd_iso")
    maps = [g for _, g in generators(fam, n)]
    seen = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        grown = []
        for alpha in frontier:
            for g in maps:
                beta = compose(alpha, g)
                if beta not in seen:
                    seen.add(beta)
                    grown.append(beta)
        frontier = grown
    return sorted(seen)


def generators_generate(fam: Family, n: int) -> bool:
    """True when the letters' closure is the whole family"""
    elements = brute_force_enumerate(fam, n)
    closure = generated_closure(fam, n)
    logger.info(f"{Family(fam).value}_{n}: closure {len(closure)}, family {len(elements)}")
    return tuple(closure) == elements


def family_sizes(fam: Family, ns: Iterable[int]) -> List[Dict]:
    """Brute-force size next to the closed-form reference, per n"""
    return [{"n": n, "size": len(brute_force_enumerate(fam, n)), "reference": reference_size(fam, n)}
            for n in ns]


# ═══════════════════════════════════════════════════════════════
# NORMALIZER AUDIT
# ═══════════════════════════════════════════════════════════════

@dataclass
class NormalizerAudit:
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    def check(self, w: Word, memo: Dict) -> Optional[Word]:
        """Normalize w and test it against evaluation, the decoder and replay"""
        if w.letters in memo:
            return memo[w.letters]
        try:
            result, derivation = normalize(w)
        except TerminationGuardError as e:
            self.failures.append(f"{w}: {e}")
            memo[w.letters] = None
            return None
        p = build_presentation(w.family, w.n)
        self.checked += 1
        if not check_derivation(derivation, p):
            self.failures.append(f"{w}: derivation does not replay")
        if evaluate(result) != evaluate(w):
            self.failures.append(f"{w}: normal form {result} evaluates differently")
        elif result != normal_form_of(evaluate(w), w.family):
            self.failures.append(f"{w}: {result} is not the normal form of its value")
        memo[w.letters] = result
        return result


def random_words(fam: Family, n: int, count: int, max_length: int, seed: int) -> List[Word]:
    """Seeded uniform words of length up to max_length"""
    rng = np.random.default_rng(seed)
    letters = alphabet(fam, n)
    if not letters:
        return [Word((), Family(fam), n)] * count
    words = []
    for _ in range(count):
        length = int(rng.integers(0, max_length + 1))
        picks = rng.integers(0, len(letters), size=length)
        words.append(Word(tuple(letters[k] for k in picks), Family(fam), n))
    return words


def audit_normalizer(fam: Family, n: int, random_samples: int = None,
                     path_independence: bool = None) -> NormalizerAudit:
    """Exhaustive short words, then seeded random longer words"""
    cfg = VERIFICATION_CONFIG
    fam = Family(fam)
    random_samples = cfg["random_samples"] if random_samples is None else random_samples
    path_independence = cfg["path_independence"] if path_independence is None else path_independence
    audit, memo = NormalizerAudit(), {}
    p = build_presentation(fam, n)

    if n <= cfg["exhaustive_max_n"]:
        sample = all_words(fam, n, cfg["exhaustive_max_length"])
        for w in tqdm(sample, desc=f"{fam.value}_{n} exhaustive", disable=not cfg["progress"]):
            target = audit.check(w, memo)
            if not path_independence or target is None:
                continue
            for pos in range(len(w)):
                for rel_id, _, length, other in p.rewrites_at(w.letters, pos):
                    neighbour = w.replace(w.letters[:pos] + other + w.letters[pos + length:])
                    if audit.check(neighbour, memo) != target:
                        audit.failures.append(f"{w}: rewriting by {rel_id} at {pos} changes the normal form")

    if n <= cfg["random_max_n"] and random_samples:
        sample = random_words(fam, n, random_samples, cfg["random_max_length"], cfg["seed"] + n)
        for w in tqdm(sample, desc=f"{fam.value}_{n} random", disable=not cfg["progress"]):
            audit.check(w, memo)

    logger.info(f"{fam.value}_{n}: {audit.checked} derivations checked, {len(audit.failures)} failures")
    return audit


# ═══════════════════════════════════════════════════════════════
# REPORTS
# ═══════════════════════════════════════════════════════════════

@dataclass
class VerificationReport:
    family: Family
    n: int
    relations_sound: bool = False
    generators_generate: bool = False
    concrete_size: int = 0
    normal_form_count: Optional[int] = None
    presented_size: Optional[int] = None
    derivations_checked: int = 0
    verdict: str = "incomplete"
    incomplete_stage: Optional[str] = None
    problems: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict:
        data = {
            "family": Family(self.family).value,
            "n": self.n,
            "relations_sound": self.relations_sound,
            "generators_generate": self.generators_generate,
            "concrete_size": self.concrete_size,
            "normal_form_count": self.normal_form_count,
            "presented_size": self.presented_size,
            "derivations_checked": self.derivations_checked,
            "verdict": self.verdict,
        }
        if self.incomplete_stage:
            data["incomplete_stage"] = self.incomplete_stage
        return data


def _decide(report: VerificationReport) -> str:
    """pass, fail, or incomplete when completeness hangs on an exhausted completion"""
    counts = [c for c in (report.normal_form_count, report.presented_size) if c is not None]
    complete = any(c == report.concrete_size for c in counts)
    sound = report.relations_sound and report.generators_generate and not report.problems
    if sound and complete:
        return "pass"
    if sound and report.incomplete_stage and report.normal_form_count is None:
        return "incomplete"
    return "fail"


def verify_presentation(fam: Family, n: int, limits: CongruenceLimits = None,
                        random_samples: int = None, path_independence: bool = None) -> VerificationReport:
    """Soundness, generation, completeness and the normalizer audit for one (family, n)"""
    fam = Family(fam)
    if fam not in PRESENTED_FAMILIES:
        raise UnsupportedFamilyError(f"{fam.value} has no presentation; use verify_pd_iso")
    report = VerificationReport(fam, n)
    stage = "soundness"
    try:
        p = build_presentation(fam, n)
        soundness = check_soundness(p)
        report.relations_sound = soundness.passed
        report.problems += [f"{c.relation_id} fails at x={c.witness}" for c in soundness.failures]

        stage = "concrete_size"
        elements = brute_force_enumerate(fam, n)
        report.concrete_size = len(elements)

        stage = "generation"
        report.generators_generate = generators_generate(fam, n)

        if fam in NORMAL_FORM_FAMILIES:
            stage = "normal_forms"
            values = [evaluate(w) for w in enumerate_normal_forms(fam, n)]
            report.normal_form_count = len(values)
            if len(set(values)) != len(values):
                report.problems.append("distinct normal forms evaluate to the same map")

        if fam is Family.C or n <= VERIFICATION_CONFIG["cross_check_max_n"]:
            stage = "presented_size"
            result = presented_size(p, limits)
            report.presented_size = result.size
            if result.status == "exhausted":
                logger.warning(f"{fam.value}_{n}: completion exhausted its limits")
                report.incomplete_stage = stage
            if result.status == "completed" and result.size != report.concrete_size:
                report.problems.append(f"presented size {result.size} != concrete size {report.concrete_size}")

        if fam in NORMALIZER_FAMILIES:
            stage = "normalizer"
            audit = audit_normalizer(fam, n, random_samples, path_independence)
            report.derivations_checked = audit.checked
            report.problems += audit.failures[:20]
    except ResourceLimitError as e:
        logger.warning(f"{fam.value}_{n}: {stage} stopped: {e}")
        report.verdict = "incomplete"
        report.incomplete_stage = stage
        return report

    report.verdict = _decide(report)
    if report.verdict != "incomplete":
        report.incomplete_stage = None
    for problem in report.problems:
        logger.warning(f"{fam.value}_{n}: {problem}")
    logger.info(f"{fam.value}_{n}: verdict {report.verdict}")
    return report


@dataclass(frozen=True)
class PdIsoReport:
    n: int
    pd_size: int
    d_size: int
    size_match: bool
    bijective: bool
    homomorphic: bool
    pairs_checked: int

    @property
    def verdict(self) -> str:
        return "pass" if self.size_match and self.bijective and self.homomorphic else "fail"

    def to_dict(self) -> Dict:
        return {
            "family": Family.PD.value,
            "n": self.n,
            "pd_size": self.pd_size,
            "d_size": self.d_size,
            "size_match": self.size_match,
            "bijective": self.bijective,
            "homomorphic": self.homomorphic,
            "pairs_checked": self.pairs_checked,
            "verdict": self.verdict,
        }


def _pairs(elements: Sequence[PartialMap], n: int) -> Iterable[Tuple[PartialMap, PartialMap]]:
    cfg = VERIFICATION_CONFIG
    if n <= cfg["pd_exhaustive_max_n"]:
        for alpha in elements:
            for beta in elements:
                yield alpha, beta
        return
    rng = np.random.default_rng(cfg["seed"] + n)
    picks = rng.integers(0, len(elements), size=(cfg["pd_pair_samples"], 2))
    for i, j in picks:
        yield elements[i], elements[j]


def verify_pd_iso(n: int) -> PdIsoReport:
    """Check that adjoining a bottom point maps PD_n isomorphically onto D_(n+1)"""
    pd = brute_force_enumerate(Family.PD, n)
    d = brute_force_enumerate(Family.D, n + 1)
    lifted = {alpha: adjoin_bottom(alpha) for alpha in pd}
    bijective = len(set(lifted.values())) == len(pd) and set(lifted.values()) == set(d)

    homomorphic, checked = True, 0
    for alpha, beta in _pairs(pd, n):
        checked += 1
        if adjoin_bottom(compose(alpha, beta)) != compose(lifted[alpha], lifted[beta]):
            logger.warning(f"PD_{n}: lift fails on {alpha.key()} * {beta.key()}")
            homomorphic = False
            break
    size_match = len(pd) == len(d) == factorial(n + 1)
    return PdIsoReport(n, len(pd), len(d), size_match, bijective, homomorphic, checked)


# ═══════════════════════════════════════════════════════════════
# PIPELINE
# ═══════════════════════════════════════════════════════════════

class VerificationPipeline:
    """Run verify_presentation (verify_pd_iso for PD) over a grid of (family, n) jobs"""

    def __init__(self, families: Sequence[Family], ns: Sequence[int], limits: CongruenceLimits = None):
        self.jobs = [(Family(fam), n) for fam in families for n in ns]
        self.limits = limits
        self.results: List = []

    def run_single(self, fam: Family, n: int, **kwargs):
        if fam is Family.PD:
            return verify_pd_iso(n)
        return verify_presentation(fam, n, self.limits, **kwargs)

    def run_all(self, **kwargs) -> List:
        logger.info(f"verifying {len(self.jobs)} presentations")
        self.results = [
            self.run_single(fam, n, **kwargs)
            for fam, n in tqdm(self.jobs, desc="verify", disable=not VERIFICATION_CONFIG["progress"])
        ]
        return self.results

    def check_acceptance_criteria(self) -> Dict:
        verdicts = [r.verdict for r in self.results]
        return {
            "all_criteria_met": bool(verdicts) and all(v == "pass" for v in verdicts),
            "passed": verdicts.count("pass"),
            "failed": verdicts.count("fail"),
            "incomplete": verdicts.count("incomplete"),
        }

    def exit_code(self) -> int:
        acceptance = self.check_acceptance_criteria()
        if acceptance["all_criteria_met"]:
            return 0
        if acceptance["failed"] == 0 and acceptance["incomplete"]:
            return 3
        return 1

    def output(self) -> Dict:
        return {
            "acceptance_criteria": self.check_acceptance_criteria(),
            "reports": [r.to_dict() for r in self.results],
        }

    def save_results(self, filepath: str = None) -> str:
        if filepath is None:
            filepath = os.path.join(VERIFICATION_CONFIG["results_dir"], "verification.json")
        directory = os.path.dirname(filepath)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(filepath, "w") as f:
            f.write(to_json(self.output()) + "\n")
        logger.info(f"results saved to {filepath}")
        return filepath
