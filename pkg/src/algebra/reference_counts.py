"""
algebra/reference_counts.py
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
Closed-form sequences that the family sizes are checked against

Brute force stays authoritative; these are printed next to it by `count`.
"""

import sys
sys.path.append('.')

from math import comb, factorial

from src.algebra.chain_maps import Family
from src.errors import ValidationError

_bell = [1]
_schroeder = [1, 2]


def catalan(n: int) -> int:
    """The n-th Catalan number"""
    return comb(2 * n, n) // (n + 1)


def bell(n: int) -> int:
    """Number of set partitions of an n-set"""
    while len(_bell) <= n:
        m = len(_bell)
        _bell.append(sum(comb(m - 1, k) * _bell[k] for k in range(m)))
    return _bell[n]


def large_schroeder(n: int) -> int:
    """1, 2, 6, 22, 90, 394, ... (lattice paths with diagonal steps)"""
    while len(_schroeder) <= n:
        m = len(_schroeder)
        # (m+1) S_m = 3(2m-1) S_{m-1} - (m-2) S_{m-2}
        _schroeder.append((3 * (2 * m - 1) * _schroeder[m - 1] - (m - 2) * _schroeder[m - 2]) // (m + 1))
    return _schroeder[n]


_REFERENCE = {
    Family.D: lambda n: factorial(n),
    Family.PD: lambda n: factorial(n + 1),
    Family.C: catalan,
    Family.IC: lambda n: catalan(n + 1),
    Family.PC: large_schroeder,
    Family.ID: lambda n: bell(n + 1),
}


def reference_size(fam: Family, n: int) -> int:
    """Closed-form size of the family on [n]"""
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"chain size must be a positive integer, got {n!r}")
    return _REFERENCE[Family(fam)](n)
