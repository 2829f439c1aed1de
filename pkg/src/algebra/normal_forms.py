"""
algebra/normal_forms.py
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
Normal forms: descriptors, recognizers, enumerators, decoders and
proof-logging normalizers

    D   e[i1,j1] ... e[ik,jk]                 j strictly increasing, i_s < j_s
    ID  f[..] a[t1,j1] ... a[tr,jr]           j increasing, t distinct,
                                              f disjoint from all t and j
    IC  e[..] (a[j1]..a[t1]) ... (a[jp]..a[tp])  j and t increasing,
                                              e disjoint from every a index and j+1
    PC  f[..] (e[j1]..e[i1]) ... (e[jk]..e[ik])  i and j increasing,
                                              f disjoint from every j+1

Prefix indices are strictly ascending. Runs are maximal descending segments.
"""

import sys
sys.path.append('.')

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from src.algebra.chain_maps import Family, PartialMap, in_family
from src.algebra.derivations import Derivation, Rewriter
from src.algebra.presentations import build_presentation
from src.algebra.words import GeneratorSymbol, Word, evaluate, make_word, sym
from src.errors import UnsupportedFamilyError, ValidationError
from src.utils.logger import get_module_logger

logger = get_module_logger("normal_forms")

NORMAL_FORM_FAMILIES = (Family.D, Family.ID, Family.IC, Family.PC)
NORMALIZER_FAMILIES = (Family.D, Family.ID, Family.IC)

Letters = Tuple[GeneratorSymbol, ...]


def _e(*idx):
    return sym("e", *idx)


def _f(i):
    return sym("f", i)


def _a(*idx):
    return sym("a", *idx)


# ═══════════════════════════════════════════════════════════════
# DESCRIPTORS
# ═══════════════════════════════════════════════════════════════

@dataclass(frozen=True)
class DNormalForm:
    pairs: Tuple[Tuple[int, int], ...]

    def letters(self) -> Letters:
        return tuple(_e(i, j) for i, j in self.pairs)

    def to_dict(self) -> Dict:
        return {"pairs": [list(p) for p in self.pairs]}


@dataclass(frozen=True)
class IDNormalForm:
    f_indices: Tuple[int, ...]
    a_pairs: Tuple[Tuple[int, int], ...]   # (t, j)

    def letters(self) -> Letters:
        return tuple(_f(i) for i in self.f_indices) + tuple(_a(t, j) for t, j in self.a_pairs)

    def to_dict(self) -> Dict:
        return {"f_indices": list(self.f_indices), "a_pairs": [list(p) for p in self.a_pairs]}


@dataclass(frozen=True)
class ICNormalForm:
    e_indices: Tuple[int, ...]
    runs: Tuple[Tuple[int, int], ...]      # (j, t): a[j] a[j-1] ... a[t]

    def letters(self) -> Letters:
        return (tuple(_e(i) for i in self.e_indices)
                + tuple(_a(m) for j, t in self.runs for m in range(j, t - 1, -1)))

    def to_dict(self) -> Dict:
        return {"e_indices": list(self.e_indices), "runs": [list(r) for r in self.runs]}


@dataclass(frozen=True)
class PCNormalForm:
    f_indices: Tuple[int, ...]
    runs: Tuple[Tuple[int, int], ...]      # (j, i): e[j] e[j-1] ... e[i]

    def letters(self) -> Letters:
        return (tuple(_f(p) for p in self.f_indices)
                + tuple(_e(m) for j, i in self.runs for m in range(j, i - 1, -1)))

    def to_dict(self) -> Dict:
        return {"f_indices": list(self.f_indices), "runs": [list(r) for r in self.runs]}


NormalForm = Union[DNormalForm, IDNormalForm, ICNormalForm, PCNormalForm]


# ═══════════════════════════════════════════════════════════════
# RECOGNIZERS
# ═══════════════════════════════════════════════════════════════

def _increasing(values: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(values, values[1:]))


def _split_prefix(letters: Letters, prefix_kind: str) -> Optional[Tuple[List[int], Letters]]:
    """Indices of the leading prefix_kind letters and the rest, or None if they interleave"""
    k = 0
    while k < len(letters) and letters[k].kind == prefix_kind:
        k += 1
    rest = letters[k:]
    if any(s.kind == prefix_kind for s in rest):
        return None
    return [s.first for s in letters[:k]], rest


def descending_runs(values: Sequence[int]) -> List[Tuple[int, int]]:
    """Maximal segments v, v-1, ..., as (top, bottom) pairs"""
    runs = []
    for v in values:
        if runs and v == runs[-1][1] - 1:
            runs[-1] = (runs[-1][0], v)
        else:
            runs.append((v, v))
    return runs


def _recognize_d(letters: Letters) -> Optional[DNormalForm]:
    pairs = tuple(s.indices for s in letters)
    if not _increasing([j for _, j in pairs]):
        return None
    return DNormalForm(pairs)


def _recognize_id(letters: Letters) -> Optional[IDNormalForm]:
    split = _split_prefix(letters, "f")
    if split is None:
        return None
    fs, rest = split
    pairs = tuple(s.indices for s in rest)
    ts = [t for t, _ in pairs]
    js = [j for _, j in pairs]
    if not _increasing(fs) or not _increasing(js) or len(set(ts)) != len(ts):
        return None
    if set(fs) & (set(ts) | set(js)):
        return None
    return IDNormalForm(tuple(fs), pairs)


def _recognize_ic(letters: Letters) -> Optional[ICNormalForm]:
    split = _split_prefix(letters, "e")
    if split is None:
        return None
    es, rest = split
    ms = [s.first for s in rest]
    runs = descending_runs(ms)
    if not _increasing(es):
        return None
    if not _increasing([j for j, _ in runs]) or not _increasing([t for _, t in runs]):
        return None
    if set(es) & ({m for m in ms} | {m + 1 for m in ms}):
        return None
    return ICNormalForm(tuple(es), tuple(runs))


def _recognize_pc(letters: Letters) -> Optional[PCNormalForm]:
    split = _split_prefix(letters, "f")
    if split is None:
        return None
    fs, rest = split
    runs = descending_runs([s.first for s in rest])
    if not _increasing(fs):
        return None
    if not _increasing([j for j, _ in runs]) or not _increasing([i for _, i in runs]):
        return None
    if set(fs) & {j + 1 for j, _ in runs}:
        return None
    return PCNormalForm(tuple(fs), tuple(runs))


_RECOGNIZERS = {
    Family.D: _recognize_d,
    Family.ID: _recognize_id,
    Family.IC: _recognize_ic,
    Family.PC: _recognize_pc,
}


def _require(fam: Family, allowed: Sequence[Family], what: str) -> Family:
    fam = Family(fam)
    if fam not in allowed:
        raise UnsupportedFamilyError(
            f"{what} is not defined for {fam.value}; "
            f"supported: {', '.join(f.value for f in allowed)}")
    return fam


def recognize(w: Word) -> Optional[NormalForm]:
    """Structured descriptor if w is a normal form of its family, else None"""
    fam = _require(w.family, NORMAL_FORM_FAMILIES, "a normal form")
    return _RECOGNIZERS[fam](tuple(w.letters))


# ═══════════════════════════════════════════════════════════════
# ENUMERATION
# ═══════════════════════════════════════════════════════════════

def _subsets(pool: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    for r in range(len(pool) + 1):
        yield from itertools.combinations(pool, r)


def _d_forms(n: int) -> Iterator[DNormalForm]:
    # for each j in 2..n: absent (0) or some i < j
    for choice in itertools.product(*[range(j) for j in range(2, n + 1)]):
        yield DNormalForm(tuple((i, j) for j, i in zip(range(2, n + 1), choice) if i))


def _id_forms(n: int) -> Iterator[IDNormalForm]:
    def pairs_from(j: int, used: frozenset):
        if j > n:
            yield ()
            return
        yield from pairs_from(j + 1, used)
        for t in range(1, j):
            if t not in used:
                for rest in pairs_from(j + 1, used | {t}):
                    yield ((t, j),) + rest

    for pairs in pairs_from(2, frozenset()):
        touched = {x for pair in pairs for x in pair}
        pool = [x for x in range(1, n + 1) if x not in touched]
        for fs in _subsets(pool):
            yield IDNormalForm(fs, pairs)


def _run_sequences(n: int, min_top: int = 1, min_bottom: int = 1):
    """Runs (top, bottom) on 1..n-1 with tops and bottoms strictly increasing"""
    yield ()
    for top in range(min_top, n):
        for bottom in range(min_bottom, top + 1):
            for rest in _run_sequences(n, top + 1, bottom + 1):
                yield ((top, bottom),) + rest


def _ic_forms(n: int) -> Iterator[ICNormalForm]:
    for runs in _run_sequences(n):
        blocked = {x for j, t in runs for x in range(t, j + 2)}
        pool = [x for x in range(1, n + 1) if x not in blocked]
        for es in _subsets(pool):
            yield ICNormalForm(es, runs)


def _pc_forms(n: int) -> Iterator[PCNormalForm]:
    for runs in _run_sequences(n):
        blocked = {j + 1 for j, _ in runs}
        pool = [x for x in range(1, n + 1) if x not in blocked]
        for fs in _subsets(pool):
            yield PCNormalForm(fs, runs)


_FORM_GENERATORS = {
    Family.D: _d_forms,
    Family.ID: _id_forms,
    Family.IC: _ic_forms,
    Family.PC: _pc_forms,
}


def shortlex_key(letters: Sequence[GeneratorSymbol]):
    """Sort key: length first, then letters"""
    return (len(letters), tuple(letters))


def enumerate_normal_forms(fam: Family, n: int) -> Iterator[Word]:
    """Every normal-form word of the family on [n], in shortlex order"""
    fam = _require(fam, NORMAL_FORM_FAMILIES, "normal-form enumeration")
    words = sorted((form.letters() for form in _FORM_GENERATORS[fam](n)), key=shortlex_key)
    logger.debug(f"{fam.value}_{n}: {len(words)} normal forms")
    for letters in words:
        yield Word(letters, fam, n)


# ═══════════════════════════════════════════════════════════════
# DECODING A CONCRETE ELEMENT
# ═══════════════════════════════════════════════════════════════

def _moved(alpha: PartialMap) -> List[int]:
    return [x for x in alpha.domain if alpha(x) != x]


@lru_cache(maxsize=None)
def _pc_table(n: int) -> Dict[PartialMap, Word]:
    return {evaluate(w): w for w in enumerate_normal_forms(Family.PC, n)}


def normal_form_of(alpha: PartialMap, fam: Family) -> Word:
    """The unique normal-form word evaluating to alpha"""
    fam = _require(fam, NORMAL_FORM_FAMILIES, "a normal form")
    if not in_family(alpha, fam):
        raise ValidationError(f"{alpha.key()} is not in {fam.value}_{alpha.n}")
    n = alpha.n
    undefined = [x for x in range(1, n + 1) if not alpha(x)]

    if fam is Family.D:
        form = DNormalForm(tuple((alpha(x), x) for x in _moved(alpha)))
    elif fam is Family.ID:
        pairs = tuple((alpha(j), j) for j in _moved(alpha))
        targets = {t for t, _ in pairs}
        form = IDNormalForm(tuple(x for x in undefined if x not in targets), pairs)
    elif fam is Family.IC:
        runs = tuple((d - 1, alpha(d)) for d in _moved(alpha))
        covered = {x for j, t in runs for x in range(t, j + 1)}
        form = ICNormalForm(tuple(x for x in undefined if x not in covered), runs)
    else:
        return _pc_table(n)[alpha]
    return Word(form.letters(), fam, n)


# ═══════════════════════════════════════════════════════════════
# IC FACTORIZATION
# ═══════════════════════════════════════════════════════════════

def factorize_ic(alpha: PartialMap) -> Word:
    """Partial identities for the points outside the domain, then one run per moved point"""
    if not in_family(alpha, Family.IC):
        raise ValidationError(f"{alpha.key()} is not in IC_{alpha.n}")
    letters = [_e(x) for x in range(1, alpha.n + 1) if not alpha(x)]
    for d in _moved(alpha):
        # a[d-1] ... a[alpha(d)] carries d down to alpha(d)
        letters += [_a(m) for m in range(d - 1, alpha(d) - 1, -1)]
    return make_word(letters, Family.IC, alpha.n)


# ═══════════════════════════════════════════════════════════════
# NORMALIZERS
# ═══════════════════════════════════════════════════════════════

def _swap(rw: Rewriter, pos: int):
    rw.replace(pos, 2, [rw.letters[pos + 1], rw.letters[pos]])


def _leading(letters: Sequence[GeneratorSymbol], kind: str) -> int:
    k = 0
    while k < len(letters) and letters[k].kind == kind:
        k += 1
    return k


# ─────────────────────────────────────────────────────────────
# D: sort by second index, dropping repeats
# ─────────────────────────────────────────────────────────────

def _normalize_d(rw: Rewriter):
    while True:
        letters = rw.letters
        for pos in range(len(letters) - 1):
            (k, l), (i, j) = letters[pos].indices, letters[pos + 1].indices
            if l < j:
                continue
            if l == j:
                rw.replace(pos, 2, [letters[pos]])
            elif not {k, l} & {i, j}:
                _swap(rw, pos)
            elif k == j:
                rw.replace(pos, 2, [_e(i, j), _e(i, l)])
            else:
                # k == i
                rw.replace(pos, 2, [_e(j, l), _e(i, j)])
                rw.replace(pos, 2, [_e(i, j), _e(i, l)])
            break
        else:
            return


# ─────────────────────────────────────────────────────────────
# ID
# ─────────────────────────────────────────────────────────────

def _id_local(rw: Rewriter) -> bool:
    letters = rw.letters
    for pos in range(len(letters) - 1):
        x, y = letters[pos], letters[pos + 1]
        new = None
        if x.kind == "f" and y.kind == "f":
            if x == y:
                new = [x]
            elif x.first > y.first:
                new = [y, x]
        elif x.kind == "a" and y.kind == "f":
            (t, j), k = x.indices, y.first
            if k == j:
                new = [x]
            elif k == t:
                new = [_f(t), _f(j)]
            else:
                new = [y, x]
        elif x.kind == "f" and y.kind == "a":
            k, (t, j) = x.first, y.indices
            if k == t:
                new = [y]
            elif k == j:
                rw.replace(pos, 2, [y, _f(t)])
                rw.replace(pos, 2, [_f(t), _f(j)])
                return True
        else:
            (t1, j1), (t2, j2) = x.indices, y.indices
            if j1 == j2:
                new = [_f(t1), _f(j1)] if t1 == t2 else [_f(t2), _a(t1, j1)]
            elif j1 > j2:
                if not {t1, j1} & {t2, j2}:
                    new = [y, x]
                elif t1 == t2:
                    new = [_f(j1), _a(t2, j2)]
                elif t1 == j2:
                    new = [_f(j2), _a(t2, j1)]
            elif t1 == t2:
                new = [_f(j1), _a(t2, j2)]
        if new is not None:
            rw.replace(pos, 2, new)
            return True
    return False


def _id_f_conflict(rw: Rewriter) -> bool:
    """Carry an f that meets a later a-letter's indices up to it and absorb it"""
    letters = rw.letters
    nf = _leading(letters, "f")
    for idx in range(nf - 1, -1, -1):
        k = letters[idx].first
        hit = next((q for q in range(nf, len(letters)) if k in letters[q].indices), None)
        if hit is None:
            continue
        pos = idx
        while pos < hit - 1:
            _swap(rw, pos)
            pos += 1
        t, j = rw.letters[pos + 1].indices
        if k == t:
            rw.replace(pos, 2, [_a(t, j)])
        else:
            rw.replace(pos, 2, [_a(t, j), _f(t)])
            rw.replace(pos, 2, [_f(t), _f(j)])
        return True
    return False


def _id_repeated_target(rw: Rewriter) -> bool:
    """Merge two a-letters sharing a first index"""
    letters = rw.letters
    nf = _leading(letters, "f")
    for u in range(nf, len(letters)):
        t = letters[u].first
        v = next((q for q in range(u + 1, len(letters)) if letters[q].first == t), None)
        if v is None:
            continue
        while v > u + 1:
            _swap(rw, v - 1)
            v -= 1
        x, y = rw.letters[u], rw.letters[v]
        rw.replace(u, 2, [_f(x.last), y])
        return True
    return False


def _normalize_id(rw: Rewriter):
    while _id_local(rw) or _id_f_conflict(rw) or _id_repeated_target(rw):
        pass


# ─────────────────────────────────────────────────────────────
# IC
# ─────────────────────────────────────────────────────────────

def _ic_local(rw: Rewriter) -> bool:
    letters = rw.letters
    for pos in range(len(letters) - 1):
        x, y = letters[pos], letters[pos + 1]
        new = None
        if x.kind == "e" and y.kind == "e":
            if x == y:
                new = [x]
            elif x.first > y.first:
                new = [y, x]
        elif x.kind == "a" and y.kind == "e":
            m, i = x.first, y.first
            if i == m + 1:
                new = [x]
            elif i == m:
                new = [_e(m), _e(m + 1)]
            else:
                new = [y, x]
        elif x.kind == "e" and y.kind == "a":
            i, m = x.first, y.first
            if i == m:
                new = [y]
            elif i == m + 1:
                rw.replace(pos, 2, [y, _e(m)])
                rw.replace(pos, 2, [_e(m), _e(m + 1)])
                return True
        else:
            p, q = x.first, y.first
            if p == q:
                new = [_e(p), _e(p + 1)]
            elif p >= q + 2:
                new = [y, x]
            elif (abs(p - q) == 1 and pos + 2 < len(letters)
                  and letters[pos + 2].kind == "a" and letters[pos + 2].first == p):
                # a[m+1] a[m] a[m+1] or a[m] a[m+1] a[m]
                rw.replace(pos, 3, [x, y] if p == q + 1 else [y, x])
                return True
        if new is not None:
            rw.replace(pos, 2, new)
            return True
    return False


def _ic_e_conflict(rw: Rewriter) -> bool:
    """Carry an e that meets a later a[m] (as m or m+1) up to it and absorb it"""
    letters = rw.letters
    ne = _leading(letters, "e")
    for idx in range(ne - 1, -1, -1):
        k = letters[idx].first
        hit = next((q for q in range(ne, len(letters)) if k in (letters[q].first, letters[q].first + 1)), None)
        if hit is None:
            continue
        pos = idx
        while pos < hit - 1:
            _swap(rw, pos)
            pos += 1
        m = rw.letters[pos + 1].first
        if k == m:
            rw.replace(pos, 2, [_a(m)])
        else:
            rw.replace(pos, 2, [_a(m), _e(m)])
            rw.replace(pos, 2, [_e(m), _e(m + 1)])
        return True
    return False


def _ic_run_order(rw: Rewriter) -> bool:
    """Repair adjacent runs whose tops or bottoms fail to increase"""
    letters = rw.letters
    ne = _leading(letters, "e")
    spans = []
    for pos in range(ne, len(letters)):
        if spans and letters[pos].first == letters[pos - 1].first - 1:
            spans[-1][1] = pos
        else:
            spans.append([pos, pos])

    for (s0, s1), (r0, r1) in zip(spans, spans[1:]):
        top_s, bottom_s = letters[s0].first, letters[s1].first
        top_r, bottom_r = letters[r0].first, letters[r1].first
        if top_r < bottom_s + 2:
            continue
        if top_r <= top_s:
            # a[top_r] commutes down to a[top_r - 1]; then a[y] a[y-1] a[y] -> a[y] a[y-1]
            pos = r0
            while rw.letters[pos - 1].first <= top_r - 2:
                _swap(rw, pos - 1)
                pos -= 1
            rw.replace(pos - 2, 3, [rw.letters[pos - 2], rw.letters[pos - 1]])
            return True
        if bottom_r <= bottom_s:
            # a[t] commutes up to a[t + 1]; then a[t] a[t+1] a[t] -> a[t+1] a[t]
            pos = s1
            while rw.letters[pos + 1].first >= bottom_s + 2:
                _swap(rw, pos)
                pos += 1
            rw.replace(pos, 3, [rw.letters[pos + 1], rw.letters[pos]])
            return True
    return False


def _normalize_ic(rw: Rewriter):
    while _ic_local(rw) or _ic_e_conflict(rw) or _ic_run_order(rw):
        pass


_NORMALIZERS = {
    Family.D: _normalize_d,
    Family.ID: _normalize_id,
    Family.IC: _normalize_ic,
}


def normalize(w: Word) -> Tuple[Word, Derivation]:
    """Rewrite w to its normal form, logging every step against the family presentation"""
    fam = _require(w.family, NORMALIZER_FAMILIES, "normalization")
    rw = Rewriter(build_presentation(fam, w.n), w)
    _NORMALIZERS[fam](rw)
    result = rw.word()
    assert recognize(result) is not None, f"normalizer stopped at non-normal word {result}"
    logger.debug(f"{w} -> {result} in {len(rw.steps)} steps")
    return result, rw.derivation()
