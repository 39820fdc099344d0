"""Validates scenario files against docs/scenario.schema.json."""

import json
import sys

import jsonschema


def main(argv):
    with open(argv[1]) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    for path in argv[2:]:
        with open(path) as f:
            errors = list(validator.iter_errors(json.load(f)))
        for e in errors:
            print(f"{path}: {'/'.join(map(str, e.absolute_path)) or '/'}: {e.message}")
        bad += bool(errors)
    print(f"{len(argv) - 2 - bad} of {len(argv) - 2} scenario files valid")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
