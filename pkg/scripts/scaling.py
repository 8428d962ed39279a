#!/usr/bin/env python3
"""Connection scaling table: fixed hub pools keep wiring linear in lexicon
size while the expressible word-pair relations grow with the product."""

import argparse

from nba.blackboard import Blackboard
from nba.config import Config
from nba.corpus import build_lexicon, make_word_lists


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[10, 100, 1000])
    parser.add_argument("--k", type=int, default=4, help="hub pool capacity")
    args = parser.parse_args()

    config = Config(k_n=args.k, k_v=args.k, k_c=1, relations=("agent", "theme"))
    print(f"{'lexicon':>8} {'gated links':>12} {'direct wiring':>14} {'expressible':>12}")
    for size in args.sizes:
        nouns, verbs, _ = make_word_lists(size // 2, size - size // 2, 0)
        bb = Blackboard(build_lexicon(nouns, verbs, []), config)
        direct = len(nouns) * len(verbs) * 2  # every noun to every verb, both relations
        print(
            f"{size:>8} {bb.connection_count():>12} {direct:>14} {bb.expressible_bindings():>12}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
