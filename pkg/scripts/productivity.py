#!/usr/bin/env python3
"""Productivity experiment: encode random never-curated sentences against a
generated lexicon and verify every licensed query against the brute-force
triple store. No sentence is seen twice on purpose; none is curated."""

import argparse
import random
import time

from nba.blackboard import Blackboard
from nba.config import Config
from nba.corpus import build_lexicon, make_word_lists, random_template_sentence
from nba.encoder import compile, execute
from nba.oracle import OracleStore
from nba.query import Query, run_query


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sentences", type=int, default=10_000)
    parser.add_argument("--nouns", type=int, default=100)
    parser.add_argument("--verbs", type=int, default=100)
    parser.add_argument("--adjectives", type=int, default=100)
    parser.add_argument("--seed", type=int, default=2024)
    args = parser.parse_args()

    nouns, verbs, adjs = make_word_lists(args.nouns, args.verbs, args.adjectives)
    lex = build_lexicon(nouns, verbs, adjs)
    bb = Blackboard(lex, Config(k_n=4, k_v=2, k_c=1, relations=("agent", "theme", "modifier")))
    rng = random.Random(args.seed)

    agree = total = 0
    start = time.perf_counter()
    for _ in range(args.sentences):
        tokens, arcs, triples = random_template_sentence(rng, nouns, verbs, adjs)
        execute(compile(tokens, arcs), bb)
        oracle = OracleStore()
        for s, r, o in triples:
            oracle.record(s, r, o)
        queries = [Query(s, r) for (s, r, _) in triples]
        queries += [Query(o, r, direction="reverse") for (_, r, o) in triples]
        for q in queries:
            expected = oracle.query(q).word_set() - {q.cue}
            total += 1
            agree += run_query(bb, q).word_set() == expected
        bb.release_all()
    elapsed = time.perf_counter() - start

    print(f"lexicon: {args.nouns} nouns, {args.verbs} verbs, {args.adjectives} adjectives")
    print(f"sentences: {args.sentences} random adjective-noun-verb-noun")
    print(f"queries agreeing with the oracle: {agree}/{total} ({100.0 * agree / total:.2f}%)")
    print(f"elapsed: {elapsed:.1f}s ({1000.0 * elapsed / args.sentences:.2f} ms/sentence)")
    return 0 if agree == total else 1


if __name__ == "__main__":
    raise SystemExit(main())
