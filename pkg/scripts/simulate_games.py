#!/usr/bin/env python3
"""Simulate scripted dictionary-game sessions and print the average
structure row (total / rest / kernel / satellites / core / minset splits).

The scripted player reuses common words: vocabulary indices are drawn with
a power-law skew toward the front of the list, definition lengths lean
short. Everything is seeded and reproducible.

Usage:
    python scripts/simulate_games.py --sessions 100 --vocab 500 --seed 1
"""

import argparse
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from lexgraph.game import SessionStore, analyze_session, next_prompt  # noqa: E402


def scripted_tokens(rng: random.Random, vocabulary: list[str],
                    lengths: list[int], skew: float) -> list[str]:
    count = rng.choice(lengths)
    return [
        vocabulary[int(len(vocabulary) * rng.random() ** skew)]
        for _ in range(count)
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sessions", type=int, default=100)
    parser.add_argument("--vocab", type=int, default=500)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--skew", type=float, default=2.5,
                        help="power-law exponent for word reuse")
    parser.add_argument("--budget", type=float, default=60.0,
                        help="exact-minset budget per session (seconds)")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    vocabulary = [f"word{i:04d}" for i in range(args.vocab)]
    lengths = [1] * 9 + [2] * 9 + [3] * 2
    store = SessionStore(data_dir=None)

    keys = ("rest", "kernel", "satellites", "core", "minset",
            "satellites_minset", "core_minset")
    totals = {key: 0.0 for key in keys}
    words_total = 0.0
    for index in range(args.sessions):
        session = store.create_session(rng.choice(vocabulary))
        while (prompt := next_prompt(session)) is not None:
            store.submit_definition(
                session.id, prompt,
                scripted_tokens(rng, vocabulary, lengths, args.skew))
        report = analyze_session(session, budget=args.budget)
        words_total += report["words"]
        for key in keys:
            totals[key] += report[key]["count"]

    n = args.sessions
    words_avg = words_total / n
    print(f"sessions: {n} (vocab {args.vocab}, seed {args.seed})")
    print(f"{'structure':<20}{'avg count':>12}{'avg %':>9}")
    print(f"{'total words':<20}{words_avg:>12.2f}{'':>9}")
    for key in keys:
        avg = totals[key] / n
        if key in ("satellites_minset", "core_minset"):
            denominator = totals["minset"] / n
        else:
            denominator = words_avg
        pct = 100.0 * avg / denominator if denominator else 0.0
        print(f"{key:<20}{avg:>12.2f}{pct:>8.1f}%")
    return 0


if __name__ == "__main__":
    sys.exit(main())
