"""Command line surface: load a presentation, build or reuse the table
cache, and run word-problem, classification, conjugacy, and cross-check
queries.

Output discipline: stdout carries machine-parseable key=value lines only
(or a single JSON object with --json) and is byte-identical for identical
inputs; the wall-clock timing line goes to stderr.  Exit status is 0
exactly when the command status is ok.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass

from . import conjugacy, metric_oracle, shortening, tables
from .errors import (
    BudgetExceededError,
    MissingTablesError,
    NotConjugateError,
    OracleUnavailableError,
    ParseError,
    RelconjError,
    UnknownLetterError,
)
from .presentation import load_presentation

_ERROR_KINDS = (
    (ParseError, "parse"),
    (UnknownLetterError, "parse"),
    (BudgetExceededError, "budget"),
    (OracleUnavailableError, "oracle"),
    (MissingTablesError, "tables"),
    (NotConjugateError, "conjugacy"),
    (RelconjError, "internal"),
    (OSError, "io"),
)


@dataclass
class CommandResult:
    status: str  # "ok" or "error"
    payload: dict
    timing: float = 0.0


def _error_result(exc) -> CommandResult:
    for cls, kind in _ERROR_KINDS:
        if isinstance(exc, cls):
            return CommandResult("error",
                                 {"error": kind, "message": str(exc)})
    raise exc


def _read_profile_overrides(path):
    """key=value per line, # comments and blank lines ignored."""
    if path is None:
        return []
    out = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError("expected key=value", lineno)
            key, _, value = line.partition("=")
            try:
                out.append((key.strip(), int(value)))
            except ValueError:
                raise ParseError("value of %r is not an integer" % key.strip(),
                                 lineno)
    return out


def _setup(presentation_path, profile_path):
    p = load_presentation(presentation_path)
    profile = tables.profile_for(p, _read_profile_overrides(profile_path))
    return p, profile


def _tables_for(p, profile, cache_path):
    """Load a valid cache or rebuild; a cache built for another
    presentation or profile is silently replaced."""
    if cache_path and os.path.exists(cache_path):
        try:
            return tables.load_tables(cache_path, p, profile)
        except RelconjError:
            pass
    built = tables.precompute(p, profile)
    if cache_path:
        tables.save_tables(cache_path, built)
    return built


def cmd_wp(presentation_path, word, profile_path=None) -> CommandResult:
    p, profile = _setup(presentation_path, profile_path)
    res = shortening.shorten(p, word, k=profile.k)
    trivial = shortening.word_problem(p, word, k=profile.k)
    return CommandResult("ok", {
        "trivial": trivial,
        "shortened": res.output,
        "steps": len(res.steps),
    })


def cmd_classify(presentation_path, word, profile_path=None,
                 cache_path=None) -> CommandResult:
    p, profile = _setup(presentation_path, profile_path)
    t = _tables_for(p, profile, cache_path)
    c = conjugacy.classify(p, t, word)
    return CommandResult("ok", {
        "verdict": c.verdict,
        "identity": c.identity,
        "index": c.index,
        "representative": c.representative,
        "conjugator": c.conjugator,
    })


def cmd_conj(presentation_path, word_u, word_v, do_search=False,
             profile_path=None, cache_path=None) -> CommandResult:
    p, profile = _setup(presentation_path, profile_path)
    t = _tables_for(p, profile, cache_path)
    cert = conjugacy.decide(p, t, word_u, word_v)
    if do_search:
        conjugacy.search(p, t, word_u, word_v, certificate=cert)
    return CommandResult("ok", {
        "u": cert.u,
        "v": cert.v,
        "answer": cert.answer,
        "witness": cert.witness,
        "reason": cert.reason,
        "regime": cert.regime,
        "lbar": cert.lbar,
        "L": cert.length,
        "profile": cert.profile,
        "verified": cert.verified,
    })


def cmd_precompute(presentation_path, cache_path=None,
                   profile_path=None) -> CommandResult:
    p, profile = _setup(presentation_path, profile_path)
    t = tables.precompute(p, profile)
    if cache_path:
        tables.save_tables(cache_path, t)
    payload = {"presentation": t.p_hash,
               "profile": tables.profile_hash(t.profile)}
    for name, size in t.sizes().items():
        payload["size_" + name] = size
    payload["k_i"] = ",".join(str(v) for v in t.profile.k_i) or "-"
    payload["k_hyp_4delta"] = t.k_hyp_4delta
    payload["k_4delta"] = t.k_4delta
    payload["cache"] = cache_path
    return CommandResult("ok", payload)


def cmd_crosscheck(presentation_path, max_word_length, profile_path=None,
                   cache_path=None, sample=None, seed=0) -> CommandResult:
    """decide() against the brute conjugation-closure oracle over all
    ordered pairs of ball elements, or a seeded sample of them."""
    p, profile = _setup(presentation_path, profile_path)
    t = _tables_for(p, profile, cache_path)
    index = metric_oracle.ball(p, max_word_length, budget=profile.budget)
    elements = sorted(index.elements, key=p.shortlex_key)
    n = len(elements)
    if sample is None and n * n > profile.budget:
        raise BudgetExceededError("crosscheck pairs", profile.budget)
    classes = metric_oracle.conjugacy_classes(p, max_word_length,
                                              budget=profile.budget)
    engine = conjugacy.ConjugacyEngine(p, t)
    if sample is None:
        pairs = [(u, v) for u in elements for v in elements]
    else:
        rng = random.Random(seed)
        pairs = [(elements[rng.randrange(n)], elements[rng.randrange(n)])
                 for _ in range(sample)]
    mismatches = 0
    counterexample = None
    for u, v in pairs:
        expected = classes[u] == classes[v]
        got = conjugacy.decide(p, t, u, v, engine=engine).answer == "conjugate"
        if expected != got:
            mismatches += 1
            if counterexample is None:
                counterexample = "%s|%s" % (u, v)
    agreement = 1.0 if not pairs else 1.0 - mismatches / len(pairs)
    return CommandResult("ok", {
        "elements": n,
        "pairs": len(pairs),
        "agreement": "%.6f" % agreement,
        "mismatches": mismatches,
        "counterexample": counterexample,
    })


def _format_value(value):
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _emit(result: CommandResult, as_json: bool):
    if as_json:
        body = {"status": result.status}
        body.update(result.payload)
        sys.stdout.write(json.dumps(body, sort_keys=True) + "\n")
    else:
        sys.stdout.write("status=%s\n" % result.status)
        for key, value in result.payload.items():
            sys.stdout.write("%s=%s\n" % (key, _format_value(value)))
    sys.stderr.write("elapsed_ms=%.1f\n" % (result.timing * 1000.0))


def _add_common(parser, suppress):
    """The global flags, attached to the main parser with real defaults and
    to every subparser with suppressed ones, so they parse in either
    position without the subparser clobbering main-level values."""
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--profile", metavar="PATH",
                        default=d,
                        help="constants overrides, one key=value per line "
                             "(default: the presentation's constants block)")
    parser.add_argument("--cache", metavar="PATH",
                        default=d,
                        help="tables cache file; stale caches are rebuilt "
                             "(default: tables are built in memory)")
    parser.add_argument("--json", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="emit one JSON object instead of key=value "
                             "lines (default: key=value)")
    parser.add_argument("--seed", type=int,
                        default=argparse.SUPPRESS if suppress else 0,
                        help="seed for sampled crosscheck pairs (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relconj",
        description="Word problem and conjugacy for relatively hyperbolic "
                    "groups with free, free-abelian, or finite parabolics.",
    )
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        _add_common(sp, suppress=True)
        return sp

    sp = add_parser("wp", help="word problem: is the word trivial?")
    sp.add_argument("presentation")
    sp.add_argument("word")

    sp = add_parser("classify", help="hyperbolic or parabolic?")
    sp.add_argument("presentation")
    sp.add_argument("word")

    sp = add_parser("conj", help="decide conjugacy of two words")
    sp.add_argument("presentation")
    sp.add_argument("u")
    sp.add_argument("v")
    sp.add_argument("--search", action="store_true",
                    help="fail unless a verified witness is produced")

    sp = add_parser("precompute", help="build tables, print sizes")
    sp.add_argument("presentation")
    sp.add_argument("cachefile", nargs="?", default=None,
                    help="where to write the cache (default: --cache value)")

    sp = add_parser("crosscheck",
                   help="decide vs the brute-force oracle on all pairs")
    sp.add_argument("presentation")
    sp.add_argument("maxlen", type=int)
    sp.add_argument("--sample", type=int, default=None,
                    help="check this many seeded random pairs instead of "
                         "all of them (default: exhaustive)")

    return parser


def run(args) -> CommandResult:
    start = time.perf_counter()
    try:
        if args.command == "wp":
            result = cmd_wp(args.presentation, args.word, args.profile)
        elif args.command == "classify":
            result = cmd_classify(args.presentation, args.word,
                                  args.profile, args.cache)
        elif args.command == "conj":
            result = cmd_conj(args.presentation, args.u, args.v,
                              args.search, args.profile, args.cache)
        elif args.command == "precompute":
            result = cmd_precompute(args.presentation,
                                    args.cachefile or args.cache,
                                    args.profile)
        else:
            result = cmd_crosscheck(args.presentation, args.maxlen,
                                    args.profile, args.cache,
                                    args.sample, args.seed)
    except Exception as exc:  # noqa: BLE001 - mapped to typed payloads
        result = _error_result(exc)
    result.timing = time.perf_counter() - start
    return result


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    result = run(args)
    _emit(result, args.json)
    return 0 if result.status == "ok" else 1


if __name__ == "__main__":
    sys.exit(main())
