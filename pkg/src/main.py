"""
main.py - Command-line front end
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
Run: python -m src.main <command> --family <F> --n <n | a..b> [...]

    enumerate   elements of the family (or its normal-form words with --forms)
    normalize   normal form of --word plus its derivation
    verify      verification reports (--family all for every family)
    count       brute-force sizes over an n-range next to the reference sequence
    cayley      right Cayley graph as DOT
    factorize   IC factorization of the map given by --images

Exit codes: 0 pass, 1 failed verification, 2 usage error, 3 resource cap.
"""

import sys
sys.path.append('.')

import argparse
import dataclasses
from typing import List, Optional, Tuple

from src.algebra.chain_maps import Family, PartialMap, brute_force_enumerate
from src.algebra.congruence import CongruenceLimits
from src.algebra.normal_forms import enumerate_normal_forms, factorize_ic, normalize
from src.algebra.words import format_word, parse_word
from src.config import CONGRUENCE_CONFIG
from src.errors import ResourceLimitError, TerminationGuardError, ValidationError, UnsupportedFamilyError
from src.model_validation.cayley import cayley_dot
from src.model_validation.run_verification import VerificationPipeline, family_sizes, to_json
from src.utils.logger import get_system_logger

logger = get_system_logger()

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
COMMANDS = ("enumerate", "normalize", "verify", "count", "cayley", "factorize")


class UsageError(ValidationError):
    pass


def parse_n_range(text: str) -> List[int]:
    """'5' -> [5]; '1..6' -> [1, 2, 3, 4, 5, 6]"""
    try:
        if ".." in text:
            low, high = (int(part) for part in text.split("..", 1))
        else:
            low = high = int(text)
    except ValueError:
        raise UsageError(f"--n expects an integer or a range a..b, got {text!r}")
    if low < 1 or high < low:
        raise UsageError(f"--n range {text!r} must satisfy 1 <= a <= b")
    return list(range(low, high + 1))


def parse_images(text: str) -> PartialMap:
    """Parse "0,1,2" into a partial map; 0 means undefined"""
    try:
        images = tuple(int(y) for y in text.split(","))
    except ValueError:
        raise UsageError(f"--images expects comma-separated integers, got {text!r}")
    return PartialMap(len(images), images)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per operation"""
    parser = argparse.ArgumentParser(prog="ordmon", description="Order-decreasing transformation monoids")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--family", required=True, help="D, PD, ID, C, IC, PC (verify also accepts 'all')")
    parser.add_argument("--n", help="chain size, or an inclusive range a..b for count and verify")
    parser.add_argument("--word", help="word such as \"a[2,3] a[1,2]\"; the empty word is 1")
    parser.add_argument("--images", help="factorize: image sequence such as 0,1,2 (0 = undefined)")
    parser.add_argument("--forms", action="store_true", help="enumerate: list normal-form words")
    parser.add_argument("--format", choices=("json", "text", "dot"), default=None)
    parser.add_argument("--output", help="write to this file instead of stdout")
    parser.add_argument("--max-states", type=int, default=None,
                        help=f"congruence state cap (default {CONGRUENCE_CONFIG['max_states']})")
    parser.add_argument("--random-samples", type=int, default=None,
                        help="verify: random words per normalizer audit")
    return parser


# ═══════════════════════════════════════════════════════════════
# COMMANDS: each returns (output text, exit code)
# ═══════════════════════════════════════════════════════════════

def _single_n(args) -> int:
    if args.n is None:
        raise UsageError(f"{args.command} needs --n")
    ns = parse_n_range(args.n)
    if len(ns) != 1:
        raise UsageError(f"{args.command} takes a single --n, got {args.n!r}")
    return ns[0]


def _family(args) -> Family:
    return Family.parse(args.family)


def cmd_enumerate(args) -> Tuple[str, int]:
    fam, n = _family(args), _single_n(args)
    if args.forms:
        words = [format_word(w) for w in enumerate_normal_forms(fam, n)]
        if args.format == "json":
            return to_json({"family": fam.value, "n": n, "count": len(words), "normal_forms": words}), EXIT_PASS
        return "\n".join(words), EXIT_PASS
    elements = brute_force_enumerate(fam, n)
    if args.format == "json":
        return to_json({"family": fam.value, "n": n, "count": len(elements),
                        "elements": [list(a.images) for a in elements]}), EXIT_PASS
    return "\n".join(a.key() for a in elements), EXIT_PASS


def cmd_normalize(args) -> Tuple[str, int]:
    fam, n = _family(args), _single_n(args)
    if args.word is None:
        raise UsageError("normalize needs --word")
    word = parse_word(args.word, fam, n)
    result, derivation = normalize(word)
    if args.format == "json":
        return to_json({"family": fam.value, "n": n, "word": format_word(word),
                        "normal_form": format_word(result), "derivation": derivation}), EXIT_PASS
    return format_word(result), EXIT_PASS


def cmd_verify(args) -> Tuple[str, int]:
    families = list(Family) if args.family.strip().lower() == "all" else [_family(args)]
    if args.n is None:
        raise UsageError("verify needs --n")
    limits = None
    if args.max_states is not None:
        limits = dataclasses.replace(CongruenceLimits(), max_states=args.max_states)
    pipeline = VerificationPipeline(families, parse_n_range(args.n), limits)
    reports = pipeline.run_all(**({"random_samples": args.random_samples}
                                  if args.random_samples is not None else {}))
    code = pipeline.exit_code()

    if args.format == "json":
        payload = reports[0] if len(reports) == 1 else reports
        return to_json(payload), code
    lines = []
    for r in reports:
        data = r.to_dict()
        details = " ".join(f"{k}={v}" for k, v in data.items() if k not in ("family", "n", "verdict"))
        lines.append(f"{data['family']}_{data['n']}: {data['verdict']} {details}")
    return "\n".join(lines), code


def cmd_count(args) -> Tuple[str, int]:
    fam = _family(args)
    if args.n is None:
        raise UsageError("count needs --n")
    rows = family_sizes(fam, parse_n_range(args.n))
    if args.format == "json":
        return to_json({"family": fam.value, "counts": rows}), EXIT_PASS
    return "\n".join(f"{r['n']}\t{r['size']}\t{r['reference']}" for r in rows), EXIT_PASS


def cmd_cayley(args) -> Tuple[str, int]:
    if args.format not in (None, "dot"):
        raise UsageError("cayley only writes --format dot")
    return cayley_dot(_family(args), _single_n(args)).rstrip("\n"), EXIT_PASS


def cmd_factorize(args) -> Tuple[str, int]:
    if _family(args) is not Family.IC:
        raise UsageError("factorize is defined for --family IC only")
    if args.images is None:
        raise UsageError("factorize needs --images")
    alpha = parse_images(args.images)
    if args.n is not None and _single_n(args) != alpha.n:
        raise UsageError(f"--images has {alpha.n} entries but --n is {args.n}")
    word = factorize_ic(alpha)
    if args.format == "json":
        return to_json({"images": list(alpha.images), "word": format_word(word)}), EXIT_PASS
    return format_word(word), EXIT_PASS


HANDLERS = {
    "enumerate": cmd_enumerate,
    "normalize": cmd_normalize,
    "verify": cmd_verify,
    "count": cmd_count,
    "cayley": cmd_cayley,
    "factorize": cmd_factorize,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the exit code"""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.format == "dot" and args.command != "cayley":
        print("error: --format dot is only valid for cayley", file=sys.stderr)
        return EXIT_USAGE

    try:
        text, code = HANDLERS[args.command](args)
    except (ValidationError, UnsupportedFamilyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except TerminationGuardError as e:
        logger.error(f"normalizer gave up: {e}")
        return EXIT_FAIL

    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        logger.info(f"wrote {args.command} output to {args.output}")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
