#!/usr/bin/env python3
"""Regenerate the frozen witness fixtures used by the test suite.

Both searches are seeded, so reruns reproduce the committed files exactly.
"""

import json
import sys
from pathlib import Path

from sandpark import (
    find_nonunique_decomposition_witness,
    find_quantifier_gap_witness,
    graph_to_dict,
)

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

GAP_SEED = 2026
DECOMPOSITION_SEED = 7


def main() -> int:
    FIXTURES.mkdir(parents=True, exist_ok=True)

    gap = find_quantifier_gap_witness(GAP_SEED)
    if gap is None:
        print("no quantifier gap witness found", file=sys.stderr)
        return 1
    path = FIXTURES / "quantifier_gap_witness.json"
    path.write_text(json.dumps(gap.to_dict(), indent=2) + "\n")
    print(f"wrote {path}")

    found = find_nonunique_decomposition_witness(DECOMPOSITION_SEED)
    if found is None:
        print("no non-unique decomposition witness found", file=sys.stderr)
        return 1
    g, parking, decompositions = found
    data = {
        "seed": DECOMPOSITION_SEED,
        "graph": graph_to_dict(g),
        "parking": {"values": dict(zip(g.nonsink, parking))},
        "decompositions": [[list(block) for block in blocks]
                           for blocks in decompositions],
    }
    path = FIXTURES / "decomposition_witness.json"
    path.write_text(json.dumps(data, indent=2) + "\n")
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
