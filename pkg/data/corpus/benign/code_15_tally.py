"""Aggregate record counts by a key column."""

import json
import sys
from pathlib import Path


def load_records(path):
    """Read newline-delimited records, skipping blanks."""
    records = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        records.append(json.loads(line))
    return records


def summarize(records, key="status"):
    totals = {}
    for record in records:
        bucket = record.get(key, "unknown")
        totals[bucket] = totals.get(bucket, 0) + 1
    return dict(sorted(totals.items()))


def main(argv):
    if len(argv) != 2:
        print("usage: tally.py <records.jsonl>", file=sys.stderr)
        return 2
    totals = summarize(load_records(argv[1]))
    for bucket, count in totals.items():
        print(f"{bucket}\t{count}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
