#!/usr/bin/env python3
"""Adapter that emits one valid suggestion, then a non-JSON line."""
import json
import sys


def main():
    init = json.loads(sys.stdin.readline())
    mid = [(lo + hi) / 2 for lo, hi in init["domain"]]
    print(json.dumps({"type": "suggest", "x": mid}), flush=True)
    sys.stdin.readline()
    print("definitely not json", flush=True)


if __name__ == "__main__":
    main()
