"""Command line front end.

Subcommands:
  expand     continued fraction elements of the target number
  words      the binary word family driven by slope and digits
  ostrowski  numeration digits and derived counting sequences
  approx     the five approximant families by three independent routes
  eval       certified series evaluation (direct and accelerated)
  verify     identity bundle on one parameter set, or the whole grid
  exponent   irrationality exponent by two routes
  suite      invariant suite over a parameter grid, optional fuzzing

Exit codes: 0 success, 2 bad input, 3 undecidable at the precision cap,
4 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import (
    DivergenceError,
    HeckeMahlerError,
    LengthCapExceeded,
    NonPositiveResidual,
    ParseError,
    SizeBudgetExceeded,
    UndecidableDigit,
    UndecidableLetter,
)
from .cf import Convergents, SlopeSpec, parse_slope
from .ostrowski import (
    DerivedSequences,
    InterceptSpec,
    as_provider,
    digit_list,
    parse_intercept,
    validate_digits,
)
from .words import build_word_family
from .expansion import (
    ELEMENT_BITS_DEFAULT,
    element_quads,
    expand_log,
    expand_xi,
    raw_stream,
)
from .approximants import (
    FAMILY_NAMES,
    farey_chain,
    identity_difference,
    matrix_convergents,
    sigma_gamma,
)
from .analysis import (
    DEFAULT_BITS,
    eval_fast,
    eval_to_width,
    exponent_by_convergents,
    exponent_by_formula,
    oracle_quotients,
    verify_functional_equation,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNDECIDABLE = 3
EXIT_MISMATCH = 4

UNDECIDABLE_ERRORS = (
    UndecidableDigit,
    UndecidableLetter,
    LengthCapExceeded,
    SizeBudgetExceeded,
    DivergenceError,
    NonPositiveResidual,
)


@dataclass
class RunConfig:
    """Validated inputs for one command; parsing happens before any math."""

    slope_text: Optional[str] = None
    rho_text: Optional[str] = None
    b: int = 2
    a: int = 1
    K: int = 8
    N: int = 20
    J: int = 200
    m: int = 2
    bits: int = DEFAULT_BITS
    json_out: bool = False
    seeds: List[int] = field(default_factory=list)
    slope: Optional[SlopeSpec] = None
    rho: Optional[InterceptSpec] = None

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        cfg = cls()
        if getattr(args, "slope", None) is not None:
            cfg.slope_text = args.slope
            cfg.slope = parse_slope(args.slope)
        if getattr(args, "rho", None) is not None:
            cfg.rho_text = args.rho
            cfg.rho = parse_intercept(args.rho)
        for name in ("b", "a"):
            if getattr(args, name, None) is not None:
                setattr(cfg, name, int(getattr(args, name)))
        if cfg.b < 2:
            raise ParseError(f"b must be at least 2, got {cfg.b}")
        if cfg.a < 1:
            raise ParseError(f"a must be at least 1, got {cfg.a}")
        for name in ("K", "N", "J", "m", "bits"):
            val = getattr(args, name.lower(), None)
            if val is not None:
                if int(val) < 1:
                    raise ParseError(f"{name} must be at least 1, got {val}")
                setattr(cfg, name, int(val))
        cfg.json_out = bool(getattr(args, "json", False))
        raw_seeds = getattr(args, "seed", None)
        if raw_seeds:
            cfg.seeds = [int(s) for s in raw_seeds.split(",") if s]
        return cfg


def _frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _interval_json(iv, bits: int) -> dict:
    iv = iv.round_to(bits + 8)
    return {"lo": _frac_str(iv.lo), "hi": _frac_str(iv.hi), "bits": bits}


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _float_str(x: Optional[float]) -> str:
    return "n/a" if x is None else f"{x:.6f}"


# -- expand ----------------------------------------------------------------


def cmd_expand(cfg: RunConfig, args) -> int:
    stream = expand_xi(cfg.slope, cfg.rho, cfg.b, cfg.a,
                       max_bits=args.max_bits)
    elems = stream.take(cfg.N, allow_partial=args.partial)
    head: Optional[Fraction] = None
    tail = elems
    if stream.improper:
        head = elems[0]
        tail = elems[1:]

    report: dict = {
        "slope": cfg.slope_text,
        "rho": cfg.rho_text,
        "b": cfg.b,
        "a": cfg.a,
        "head": None if head is None else _frac_str(head),
        "elements": [str(x) for x in tail],
        "case_log": [[k, name] for k, name in stream.case_log],
    }

    code = EXIT_OK
    if args.verify:
        d10 = args.digits10
        oracle = oracle_quotients(cfg.slope, cfg.rho, cfg.b, cfg.a,
                                  digits10=d10)
        # elements can grow doubly exponentially; retry with doubled
        # precision while the requested prefix is still uncertified
        for _ in range(5):
            if oracle.certified >= len(tail):
                break
            d10 *= 2
            oracle = oracle_quotients(cfg.slope, cfg.rho, cfg.b, cfg.a,
                                      digits10=d10)
        compare = min(len(tail), oracle.certified)
        matched = 0
        for i in range(compare):
            if tail[i] != oracle.elements[i]:
                break
            matched += 1
        head_ok = (head is None) == (oracle.head is None) and head == oracle.head
        report["verify"] = {
            "oracle_bits": oracle.bits,
            "oracle_terms": oracle.n_terms,
            "certified": oracle.certified,
            "compared": compare,
            "matched": matched,
            "head_ok": head_ok,
        }
        if not head_ok or matched < compare:
            code = EXIT_MISMATCH

    if cfg.json_out:
        _emit(report)
        return code
    if head is not None:
        print(f"head {head.numerator}/{head.denominator}")
    for x in tail:
        print(x)
    if args.verify:
        v = report["verify"]
        print(f"# oracle certified {v['certified']} elements "
              f"at {v['oracle_bits']} bits ({v['oracle_terms']} series terms)")
        print(f"# matched prefix {v['matched']} of {v['compared']} compared")
        if code != EXIT_OK:
            print("# MISMATCH", file=sys.stderr)
    return code


# -- words -----------------------------------------------------------------


def cmd_words(cfg: RunConfig, args) -> int:
    provider = as_provider(cfg.slope, cfg.rho)
    fam = build_word_family(cfg.slope, provider, 0, max_len=args.max_len)
    reached = 0
    try:
        fam.ensure(cfg.K)
        reached = cfg.K
    except LengthCapExceeded as exc:
        reached = exc.last_index
    rows = []
    for k in range(reached + 1):
        V = fam.V(k)
        rows.append({
            "k": k,
            "length": str(V.length),
            "ones": str(V.ones()),
            "letters": V.to_string() if V.length <= args.letters_max else None,
        })
    if cfg.json_out:
        _emit({
            "slope": cfg.slope_text,
            "rho": cfg.rho_text,
            "depth": reached,
            "rows": rows,
        })
        return EXIT_OK
    for row in rows:
        tailtxt = row["letters"] if row["letters"] is not None else "..."
        print(f"k={row['k']:3d} len={row['length']:>12} "
              f"ones={row['ones']:>12} {tailtxt}")
    if reached < cfg.K:
        print(f"# length cap {args.max_len} reached at k={reached}")
    return EXIT_OK


# -- ostrowski ---------------------------------------------------------------


def cmd_ostrowski(cfg: RunConfig, args) -> int:
    digits = digit_list(cfg.slope, cfg.rho, cfg.K)
    provider = as_provider(cfg.slope, digits)
    seq = DerivedSequences(provider)
    conv = provider.conv
    rows = []
    for k in range(1, cfg.K + 1):
        rows.append({
            "k": k,
            "digit": digits[k - 1],
            "a": conv.a(k),
            "q": str(conv.q(k)),
            "t": str(seq.t(k)),
            "r": str(seq.r(k)),
        })
    if cfg.json_out:
        _emit({
            "slope": cfg.slope_text,
            "rho": cfg.rho_text,
            "digits": digits,
            "rows": rows,
        })
        return EXIT_OK
    print("digits:", " ".join(str(d) for d in digits))
    for row in rows:
        print(f"k={row['k']:3d} b_k={row['digit']} a_k={row['a']} "
              f"q_k={row['q']} t_k={row['t']} r_k={row['r']}")
    return EXIT_OK


# -- approx ------------------------------------------------------------------


def cmd_approx(cfg: RunConfig, args) -> int:
    fams = farey_chain(cfg.slope, cfg.rho, cfg.b, cfg.a, cfg.K,
                       cross_check=True, max_bits=args.max_bits)
    quads = element_quads(cfg.slope, cfg.rho, cfg.b, cfg.a, cfg.K,
                          max_bits=args.max_bits)
    elems = list(raw_stream(quads))
    P, Q = matrix_convergents(elems, cfg.b)
    for k in range(cfg.K + 1):
        for i, name in enumerate(FAMILY_NAMES):
            j = 5 * k + i + 2  # positions 0, 1 are the seeds
            fr = fams[name][k]
            if P[j] != fr.num or Q[j] != fr.den:
                print(f"route mismatch at family {name}, k={k}",
                      file=sys.stderr)
                return EXIT_MISMATCH
    if cfg.json_out:
        _emit({
            "slope": cfg.slope_text,
            "rho": cfg.rho_text,
            "b": cfg.b,
            "a": cfg.a,
            "depth": cfg.K,
            "families": {
                name: [{"num": str(fr.num), "den": str(fr.den)}
                       for fr in fams[name]]
                for name in FAMILY_NAMES
            },
            "routes_checked": ["word", "farey", "matrix"],
        })
        return EXIT_OK
    for k in range(cfg.K + 1):
        parts = ", ".join(
            f"({name}) {fams[name][k].num}/{fams[name][k].den}"
            for name in FAMILY_NAMES)
        print(f"k={k}: {parts}")
    print("# word, farey and matrix routes agree")
    return EXIT_OK


# -- eval --------------------------------------------------------------------


def cmd_eval(cfg: RunConfig, args) -> int:
    report: dict = {
        "slope": cfg.slope_text,
        "rho": cfg.rho_text,
        "b": cfg.b,
        "a": cfg.a,
        "bits": cfg.bits,
    }
    scale = cfg.b - 1
    direct = fast = None
    if args.route in ("direct", "both"):
        direct, n_terms = eval_to_width(cfg.slope, cfg.rho, cfg.b, cfg.a,
                                        cfg.bits)
        report["direct"] = _interval_json(direct, cfg.bits)
        report["direct"]["n_terms"] = n_terms
        report["xi"] = _interval_json(direct * scale, cfg.bits)
    if args.route in ("fast", "both"):
        fast = eval_fast(cfg.slope, cfg.rho, cfg.b, cfg.a, cfg.K)
        report["fast"] = _interval_json(fast, cfg.bits)
        report["fast"]["depth"] = cfg.K
        if "xi" not in report:
            report["xi"] = _interval_json(fast * scale, cfg.bits)
    if direct is not None and fast is not None and not direct.overlaps(fast):
        print("direct and accelerated enclosures do not overlap",
              file=sys.stderr)
        return EXIT_MISMATCH
    if cfg.json_out:
        _emit(report)
        return EXIT_OK
    for route in ("direct", "fast"):
        if route in report:
            iv = report[route]
            print(f"{route}: [{iv['lo']}, {iv['hi']}] at {cfg.bits} bits")
    iv = report["xi"]
    print(f"xi = (b-1)*series: [{iv['lo']}, {iv['hi']}]")
    return EXIT_OK


# -- exponent ----------------------------------------------------------------


def cmd_exponent(cfg: RunConfig, args) -> int:
    report: dict = {
        "slope": cfg.slope_text,
        "rho": cfg.rho_text,
        "b": cfg.b,
        "a": cfg.a,
    }
    est_f = est_c = None
    if args.route in ("formula", "both"):
        rep = exponent_by_formula(cfg.slope, cfg.rho, cfg.K)
        est_f = rep.estimate
        report["formula"] = {
            "depth": rep.depth,
            "window_skip": rep.window_skip,
            "maxima": rep.maxima,
            "estimate": rep.estimate,
            "notes": rep.notes,
        }
    if args.route in ("convergents", "both"):
        stream = expand_log(cfg.slope, cfg.rho, cfg.b, cfg.a)
        rep = exponent_by_convergents(stream, cfg.J, cfg.b)
        est_c = rep.estimate
        report["convergents"] = {
            "depth": rep.depth,
            "window_skip": rep.window_skip,
            "estimate": rep.estimate,
            "notes": rep.notes,
        }
    if est_f is not None and est_c is not None:
        report["difference"] = abs(est_f - est_c)
    if cfg.json_out:
        _emit(report)
        return EXIT_OK
    if "formula" in report:
        rf = report["formula"]
        fams = " ".join(f"nu{i}={_float_str(rf['maxima'].get('nu%d' % i))}"
                        for i in range(1, 5))
        print(f"formula route, depth {rf['depth']}: "
              f"estimate {_float_str(rf['estimate'])} ({fams})")
        for note in rf["notes"]:
            print(f"#   {note}")
    if "convergents" in report:
        rc = report["convergents"]
        print(f"convergents route, depth {rc['depth']}: "
              f"estimate {_float_str(rc['estimate'])}")
    if "difference" in report:
        print(f"route difference {report['difference']:.6f}")
    return EXIT_OK


# -- verify / suite -----------------------------------------------------------

GRID_SLOPES = ("per:[;1]", "per:[;2]", "surd:(-3,13,2)")
GRID_PATTERNS = ("digits[]", "digits[1,0]", "digits[0,2]")
GRID_PAIRS = ((2, 1), (2, 3), (3, 3))

FULL_DEPTHS = {
    "words_k": 12, "chain_k": 12, "q_cap": 20_000,
    "fe_m": 2, "fe_bits": 256, "exp_k": 30, "exp_j": 120,
}
QUICK_DEPTHS = {
    "words_k": 8, "chain_k": 8, "q_cap": 2_000,
    "fe_m": 1, "fe_bits": 192, "exp_k": 20, "exp_j": 60,
}


def _admissible(slope: SlopeSpec, pattern: List[int]) -> bool:
    try:
        return validate_digits(slope, list(pattern) + [0])
    except HeckeMahlerError:
        return False


def _pattern_digits(text: str) -> List[int]:
    body = text[text.index("[") + 1:text.rindex("]")]
    return [int(x) for x in body.split(",") if x.strip() != ""]


def _chain_depth(provider, k_target: int, q_cap: int) -> int:
    conv = provider.conv
    k = 0
    while k < k_target and conv.q(k + 3) <= q_cap:
        k += 1
    return k


def run_case(case: tuple) -> dict:
    """One grid case; returns check-by-check status strings."""
    slope_text, rho_text, b, a, depths = case
    out = {"slope": slope_text, "rho": rho_text, "b": b, "a": a}
    checks: dict = {}
    t0 = time.time()
    try:
        slope = parse_slope(slope_text)
        icept = parse_intercept(rho_text)
        provider = as_provider(slope, icept)
        k_words = _chain_depth(provider, depths["words_k"], 4096)
        k_chain = _chain_depth(provider, depths["chain_k"], depths["q_cap"])

        try:
            build_word_family(slope, provider, k_words, max_len=4096)
            checks["words"] = f"pass (k<={k_words})"
        except AssertionError as exc:
            checks["words"] = f"fail: {exc}"

        fams = None
        try:
            fams = farey_chain(slope, provider, b, a, k_chain,
                               cross_check=True)
            quads = element_quads(slope, provider, b, a, k_chain)
            P, Q = matrix_convergents(list(raw_stream(quads)), b)
            for k in range(k_chain + 1):
                for i, name in enumerate(FAMILY_NAMES):
                    j = 5 * k + i + 2  # positions 0, 1 are the seeds
                    fr = fams[name][k]
                    assert P[j] == fr.num and Q[j] == fr.den, (name, k)
            checks["chain"] = f"pass (k<={k_chain})"
        except AssertionError as exc:
            checks["chain"] = f"fail: {exc}"

        try:
            sg = sigma_gamma(slope, provider, b, a, k_chain)
            ok = fams is not None and all(
                identity_difference(k, sg, fams) for k in range(k_chain + 1))
            checks["identities"] = f"pass (k<={k_chain})" if ok else "fail"
        except AssertionError as exc:
            checks["identities"] = f"fail: {exc}"

        resid = verify_functional_equation(slope, provider, b, a,
                                           depths["fe_m"],
                                           bits=depths["fe_bits"])
        if 0 in resid and resid.width() <= Fraction(1, 10 ** 30):
            checks["functional"] = f"pass (m={depths['fe_m']})"
        else:
            checks["functional"] = f"fail: width {float(resid.width()):.3e}"

        repf = exponent_by_formula(slope, provider, depths["exp_k"])
        repc = exponent_by_convergents(
            expand_log(slope, icept, b, a), depths["exp_j"], b)
        if repf.estimate is None or repc.estimate is None:
            checks["exponent"] = "fail: missing estimate"
        elif abs(repf.estimate - repc.estimate) <= 0.05:
            checks["exponent"] = (f"pass ({repf.estimate:.4f} vs "
                                  f"{repc.estimate:.4f})")
        else:
            checks["exponent"] = (f"fail: {repf.estimate:.4f} vs "
                                  f"{repc.estimate:.4f}")
    except UNDECIDABLE_ERRORS as exc:
        checks["error"] = f"undecidable: {exc}"
    except HeckeMahlerError as exc:
        checks["error"] = f"error: {exc}"
    out["checks"] = checks
    out["ok"] = all(v.startswith("pass") for v in checks.values())
    out["seconds"] = round(time.time() - t0, 2)
    return out


def _grid_cases(slopes, patterns, pairs, depths) -> Tuple[list, list]:
    cases, skipped = [], []
    for slope_text in slopes:
        slope = parse_slope(slope_text)
        for pattern_text in patterns:
            pattern = _pattern_digits(pattern_text)
            if not _admissible(slope, pattern):
                skipped.append((slope_text, pattern_text))
                continue
            for b, a in pairs:
                cases.append((slope_text, pattern_text, b, a, depths))
    return cases, skipped


def _fuzz_cases(count: int, seeds: List[int], depths) -> list:
    cases = []
    for seed in seeds:
        rng = random.Random(seed)
        for _ in range(count):
            period = [rng.randint(1, 3)
                      for _ in range(rng.randint(1, 2))]
            slope_text = "per:[;" + ",".join(map(str, period)) + "]"
            slope = parse_slope(slope_text)
            conv = Convergents(slope)
            digits = []
            limit = rng.randint(0, 4)
            for k in range(1, limit + 1):
                if k == 1:
                    hi = conv.a(1) - 1
                else:
                    # b_k = a_k is admissible only after a zero digit
                    hi = conv.a(k) - (1 if digits[-1] != 0 else 0)
                digits.append(rng.randint(0, max(0, hi)))
            rho_text = "digits[" + ",".join(map(str, digits)) + "]"
            b = rng.choice((2, 3))
            a = rng.randint(1, 4)
            cases.append((slope_text, rho_text, b, a, depths))
    return cases


def _run_suite(cases: list, skipped: list, json_out: bool,
               workers: int) -> int:
    results = []
    if workers > 1 and len(cases) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_case, cases))
    else:
        for case in cases:
            results.append(run_case(case))
    passed = sum(1 for r in results if r["ok"])
    failed = len(results) - passed
    if json_out:
        _emit({
            "cases": results,
            "skipped": [{"slope": s, "rho": r} for s, r in skipped],
            "passed": passed,
            "failed": failed,
        })
    else:
        for r in results:
            status = "PASS" if r["ok"] else "FAIL"
            print(f"{status} slope={r['slope']} rho={r['rho']} "
                  f"b={r['b']} a={r['a']} ({r['seconds']}s)")
            if not r["ok"]:
                for name, msg in r["checks"].items():
                    if not msg.startswith("pass"):
                        print(f"    {name}: {msg}")
        for s, rho in skipped:
            print(f"SKIP slope={s} rho={rho} (digits not admissible)")
        print(f"{len(results)} cases: {passed} passed, {failed} failed, "
              f"{len(skipped)} skipped")
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


def cmd_verify(cfg: RunConfig, args) -> int:
    depths = dict(FULL_DEPTHS)
    depths["chain_k"] = cfg.K
    depths["words_k"] = cfg.K
    depths["fe_m"] = cfg.m
    depths["fe_bits"] = cfg.bits
    if args.all:
        cases, skipped = _grid_cases(GRID_SLOPES, GRID_PATTERNS, GRID_PAIRS,
                                     FULL_DEPTHS)
        return _run_suite(cases, skipped, cfg.json_out, args.workers)
    if cfg.slope is None or cfg.rho is None:
        raise ParseError("verify needs --slope and --rho (or --all)")
    result = run_case((cfg.slope_text, cfg.rho_text, cfg.b, cfg.a, depths))
    if cfg.json_out:
        _emit(result)
    else:
        for name, msg in result["checks"].items():
            print(f"{name}: {msg}")
    return EXIT_OK if result["ok"] else EXIT_MISMATCH


def cmd_suite(cfg: RunConfig, args) -> int:
    depths = QUICK_DEPTHS if args.quick else FULL_DEPTHS
    slopes = GRID_SLOPES
    patterns = GRID_PATTERNS
    pairs = GRID_PAIRS
    if args.quick:
        slopes = ("per:[;1]", "per:[;2]")
        patterns = ("digits[]", "digits[0,2]")
        pairs = ((2, 1), (2, 3))
    if args.slopes is not None:
        slopes = tuple(s for s in args.slopes.split(",") if s)
    if args.patterns is not None:
        patterns = tuple(p for p in args.patterns.split(",") if p)
    if args.pairs is not None:
        pairs = tuple(
            tuple(int(x) for x in pair.split(":"))
            for pair in args.pairs.split(",") if pair
        )
        for pair in pairs:
            if len(pair) != 2 or pair[0] < 2 or pair[1] < 1:
                raise ParseError(f"bad b:a pair {pair}")
    cases, skipped = _grid_cases(slopes, patterns, pairs, depths)
    if args.fuzz:
        if not cfg.seeds:
            raise ParseError("--fuzz requires an explicit --seed")
        cases.extend(_fuzz_cases(args.fuzz, cfg.seeds, QUICK_DEPTHS))
    if not cases:
        if cfg.json_out:
            _emit({"cases": [], "skipped": [], "passed": 0, "failed": 0})
        else:
            print("0 cases")
        return EXIT_OK
    return _run_suite(cases, skipped, cfg.json_out, args.workers)


# -- parser -------------------------------------------------------------------


def _add_common(sub, slope=True, series=True) -> None:
    if slope:
        sub.add_argument("--slope", required=False,
                         help="per:[prefix;period] or surd:(P,D,Q)")
        sub.add_argument("--rho", required=False, default="digits[]",
                         help="rat(p/q), surd(P,D,Q) or digits[...]")
    if series:
        sub.add_argument("--b", type=int, default=2)
        sub.add_argument("--a", type=int, default=1)
    sub.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckemahler",
        description="Continued fractions and irrationality exponents of "
                    "Mahler-series values at rational points",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("expand", help="contracted continued fraction")
    _add_common(p)
    p.add_argument("-n", type=int, default=20, help="element count")
    p.add_argument("--verify", action="store_true",
                   help="cross-check against the series oracle")
    p.add_argument("--digits10", type=int, default=800,
                   help="oracle precision in decimal digits")
    p.add_argument("--max-bits", type=int, default=ELEMENT_BITS_DEFAULT)
    p.add_argument("--partial", action="store_true",
                   help="stop quietly at the bit budget")
    p.set_defaults(func=cmd_expand)

    p = subs.add_parser("words", help="word family V_k")
    _add_common(p, series=False)
    p.add_argument("-k", type=int, default=8, help="depth")
    p.add_argument("--letters-max", type=int, default=64)
    p.add_argument("--max-len", type=int, default=100_000)
    p.set_defaults(func=cmd_words)

    p = subs.add_parser("ostrowski", help="numeration digits")
    _add_common(p, series=False)
    p.add_argument("-k", type=int, default=20, help="digit count")
    p.set_defaults(func=cmd_ostrowski)

    p = subs.add_parser("approx", help="approximant families, three routes")
    _add_common(p)
    p.add_argument("-k", type=int, default=8, help="depth")
    p.add_argument("--max-bits", type=int, default=ELEMENT_BITS_DEFAULT)
    p.set_defaults(func=cmd_approx)

    p = subs.add_parser("eval", help="certified evaluation")
    _add_common(p)
    p.add_argument("--bits", type=int, default=DEFAULT_BITS)
    p.add_argument("--route", choices=("direct", "fast", "both"),
                   default="direct")
    p.add_argument("-k", type=int, default=12,
                   help="depth for the accelerated route")
    p.set_defaults(func=cmd_eval)

    p = subs.add_parser("verify", help="identity bundle")
    _add_common(p)
    p.add_argument("-k", type=int, default=10)
    p.add_argument("-m", type=int, default=2)
    p.add_argument("--bits", type=int, default=256)
    p.add_argument("--all", action="store_true", help="whole default grid")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("exponent", help="irrationality exponent")
    _add_common(p)
    p.add_argument("-k", type=int, default=40, help="formula route depth")
    p.add_argument("-j", type=int, default=200,
                   help="convergents route depth")
    p.add_argument("--route", choices=("formula", "convergents", "both"),
                   default="both")
    p.set_defaults(func=cmd_exponent)

    p = subs.add_parser("suite", help="invariant suite over a grid")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--slopes", help="comma list, empty for none")
    p.add_argument("--patterns", help="comma list of digits[...] specs")
    p.add_argument("--pairs", help="comma list of b:a pairs")
    p.add_argument("--fuzz", type=int, default=0,
                   help="extra random cases per seed")
    p.add_argument("--seed", help="comma list of fuzz seeds")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(cfg, args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UNDECIDABLE_ERRORS as exc:
        print(f"undecidable: {exc}", file=sys.stderr)
        return EXIT_UNDECIDABLE


if __name__ == "__main__":
    raise SystemExit(main())
