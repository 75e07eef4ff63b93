#!/usr/bin/env python3
"""Run the full analysis over the fixture corpus and print a summary table.

Usage: python3 scripts/analyze_corpus.py [--json] [--cross-check]
"""

import argparse
import json
import time

from bigraded.corpus import default_corpus
from bigraded.oracle import cross_check
from bigraded.rcm import rcm_report


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", action="store_true", help="emit one JSON blob")
    parser.add_argument(
        "--cross-check", action="store_true", help="also run the duality oracle comparison"
    )
    args = parser.parse_args()

    results = {}
    t0 = time.time()
    for entry in default_corpus():
        report = rcm_report(entry.module)
        record = {"report": report.to_dict()}
        if args.cross_check:
            record["crossCheck"] = cross_check(entry.module).to_dict()
        results[entry.name] = record

    if args.json:
        print(json.dumps(results, sort_keys=True, indent=2))
        return

    header = "%-18s %4s %5s %4s %7s %7s %6s %6s" % (
        "name", "dim", "depth", "CM", "rcm(P)", "rcm(Q)", "rdimQ", "checks")
    print(header)
    print("-" * len(header))
    for name, record in results.items():
        r = record["report"]
        checks_ok = all(c["holds"] for c in r["identityChecks"])
        line = "%-18s %4s %5s %4s %7s %7s %6s %6s" % (
            name, r["dim"], r["depth"], r["isCM"], r["isRCM_P"], r["isRCM_Q"],
            r["rdimQ"] if r["rdimQ"] is not None else "-", "ok" if checks_ok else "FAIL")
        if args.cross_check:
            cc = record["crossCheck"]
            line += "  oracle: %d mismatches / %d" % (len(cc["mismatches"]), cc["checked"])
        print(line)
    print("total %.1fs" % (time.time() - t0))


if __name__ == "__main__":
    main()
