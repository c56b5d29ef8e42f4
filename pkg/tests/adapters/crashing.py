#!/usr/bin/env python3
"""Adapter that dies mid-protocol after two clean cycles."""
import json
import sys


def main():
    init = json.loads(sys.stdin.readline())
    mid = [(lo + hi) / 2 for lo, hi in init["domain"]]
    for _ in range(2):
        print(json.dumps({"type": "suggest", "x": mid}), flush=True)
        sys.stdin.readline()
    print("deliberate crash for testing", file=sys.stderr, flush=True)
    sys.exit(3)


if __name__ == "__main__":
    main()
