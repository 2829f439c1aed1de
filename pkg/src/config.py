"""
config.py - System Configuration
Limits, sampling policy and logging for the order-decreasing monoid toolkit
"""

import os
import logging

# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
# CHAIN MAPS (brute-force oracle)
# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

CHAIN_CONFIG = {
    # Candidate maps examined by brute force; (n+1)! at n=8 is 362880
    "max_candidates": int(os.getenv("ORDMON_MAX_CANDIDATES", 10_000_000))
}

# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
# CONGRUENCE (completion + irreducible word count)
# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

CONGRUENCE_CONFIG = {
    "max_states": int(os.getenv("ORDMON_MAX_STATES", 200_000)),
    "max_steps": int(os.getenv("ORDMON_MAX_STEPS", 400)),   # completion rounds
    "max_rules": 50_000
}

# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
# NORMALIZERS
# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

NORMALIZER_CONFIG = {
    "step_cap_factor": 10,            # cap = factor * max(len, 2)^2
    "lemma_search_slack": 2,          # extra letters allowed while searching
    "lemma_search_max_words": 200_000
}

# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
# VERIFICATION
# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

VERIFICATION_CONFIG = {
    "exhaustive_max_length": 4,
    "exhaustive_max_n": 4,
    "random_samples": 10_000,
    "random_max_length": 12,
    "random_max_n": 5,
    "seed": 1729,
    "cross_check_max_n": 4,           # presented_size for families other than C
    "path_independence": True,        # renormalize every one-step rewrite of the exhaustive sample
    "pd_exhaustive_max_n": 4,         # all |PD_n|^2 pairs up to here, sampled above
    "pd_pair_samples": 20_000,
    "progress": os.getenv("ORDMON_PROGRESS", "0") == "1",
    "results_dir": "results"
}

# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
# LOGGING CONFIG
# ━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━

LOGGING_CONFIG = {
    "level": getattr(logging, os.getenv("ORDMON_LOG_LEVEL", "WARNING").upper(), logging.WARNING),
    "log_file": os.getenv("ORDMON_LOG_FILE", "logs/ordmon.log")
}
