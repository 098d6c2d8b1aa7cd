#!/usr/bin/env python3
"""Build the desk-scale graph grid and print one summary line per instance.

Covers every family at the sizes used by the acceptance suite; rank-1
elliptic spaces are reported as the clean builder error they raise.
"""

import json
import sys
import time

from polareig import cli

GRID = [
    ("sp", 2, 2), ("sp", 2, 3),
    ("o+", 2, 2), ("o+", 2, 3), ("o+", 2, 4),
    ("o-", 1, 2), ("o-", 1, 3), ("o-", 2, 2),
    ("u", 2, 4), ("u", 2, 9),
    ("vo+", 2, 2), ("vo-", 2, 2), ("vo+", 2, 3), ("vo-", 2, 3),
]


def main():
    start = time.time()
    for family, size, q in GRID:
        n = size if family not in ("vo+", "vo-") else None
        m = size if family in ("vo+", "vo-") else None
        label = f"{family}:{size}:{q}"
        try:
            g = cli.build_graph(family, q, n, m)
        except cli.ConfigError as exc:
            print(f"{label:12s} builder error (expected for rank < 2): {exc}")
            continue
        summary = cli.build_summary(g)
        print(f"{label:12s} {json.dumps(summary, sort_keys=True)}")
    print(f"total {time.time() - start:.1f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
