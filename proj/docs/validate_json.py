"""Validate emitted JSON files against the shipped schemas.

usage: validate_json.py SCHEMA FILE [FILE ...]
"""
import json
import sys

import jsonschema


def main(argv):
    if len(argv) < 3:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    with open(argv[1]) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    for path in argv[2:]:
        with open(path) as f:
            doc = json.load(f)
        errors = list(validator.iter_errors(doc))
        for e in errors:
            print(f"{path}: {e.json_path}: {e.message}")
        bad += bool(errors)
    print(f"validated {len(argv) - 2} file(s), {bad} invalid")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
