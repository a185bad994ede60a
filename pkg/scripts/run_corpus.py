#!/usr/bin/env python3
"""Run the bundled corpus, write the JSON report and print one line per claim."""

import argparse
import json
import sys
from pathlib import Path

from ringcheck.corpus import run_corpus, strip_volatile


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("corpus_report.json"))
    ap.add_argument("--directory", type=Path, default=None)
    ap.add_argument("--no-timing", action="store_true")
    args = ap.parse_args()

    report = run_corpus(args.directory)
    if args.no_timing:
        report = strip_volatile(report)
    args.out.write_text(json.dumps(report, sort_keys=True, indent=2) + "\n")
    for item in report["items"]:
        for c in item["claims"]:
            flag = "" if c["status"] == c["expected"] else "   <-- unexpected"
            print(f"{c['anchor']:45s} {c['status']:14s} computed={c['computed']}{flag}")
    print(f"expected: {report['expected']}  ({args.out})")
    return 0 if report["expected"] else 2


if __name__ == "__main__":
    sys.exit(main())
