#!/usr/bin/env python3
"""Validate msab JSON output files against the shipped schema."""
import json
import sys

import jsonschema


def main() -> int:
    if len(sys.argv) < 3:
        print("usage: validate_json.py SCHEMA FILE...", file=sys.stderr)
        return 2
    with open(sys.argv[1]) as f:
        schema = json.load(f)
    for path in sys.argv[2:]:
        with open(path) as f:
            jsonschema.validate(json.load(f), schema)
        print(f"{path}: valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
