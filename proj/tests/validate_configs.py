"""Validate every JSON config under the given directories against the schema."""
import json
import pathlib
import sys

import jsonschema


def main() -> int:
    schema = json.loads(pathlib.Path(sys.argv[1]).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    bad = 0
    files = sorted(p for d in sys.argv[2:] for p in pathlib.Path(d).rglob("*.json"))
    for path in files:
        errors = list(validator.iter_errors(json.loads(path.read_text())))
        for e in errors:
            print(f"{path}: {'/'.join(map(str, e.absolute_path))}: {e.message}")
        bad += bool(errors)
    # a misspelt key must not slip through
    probe = {"params": {"n": 3, "N": "inf"}, "model": {"phi": {"family": "euclidean"}},
             "kappa": {"kind": "constant", "value": 0, "valeu": 1}}
    if validator.is_valid(probe):
        print("schema accepts an unknown key")
        bad += 1
    print(f"{len(files)} configs checked, {bad} invalid")
    return 1 if bad or not files else 0


if __name__ == "__main__":
    sys.exit(main())
