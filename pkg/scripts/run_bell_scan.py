#!/usr/bin/env python3
"""Random scan of Bayes-rule vs quantum conditional discrepancies.

Usage: python scripts/run_bell_scan.py [trials] [seed]

Prints the maximal-discrepancy triple and the 20-bin histogram as JSON.
"""

import json
import sys

from hardylab import bellhv


def main():
    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 10_000
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 42
    result = bellhv.scan_discrepancy(trials, seed)
    print(json.dumps({"trials": trials, "seed": seed,
                      "max": result.max.to_dict(),
                      "histogram": list(result.histogram)}, indent=2))


if __name__ == "__main__":
    main()
