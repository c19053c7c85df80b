"""Validates every *.json report in a directory against the report schema."""
import json
import pathlib
import sys

import jsonschema


def main(schema_path, report_dir):
    schema = json.loads(pathlib.Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)
    reports = [p for p in sorted(pathlib.Path(report_dir).glob("*.json")) if not p.name.endswith(".netlist.json")]
    if not reports:
        print(f"no reports in {report_dir}")
        return 1
    bad = 0
    for path in reports:
        errors = list(validator.iter_errors(json.loads(path.read_text())))
        for e in errors:
            print(f"{path.name}: {'/'.join(map(str, e.path))}: {e.message}")
        bad += bool(errors)
        print(f"{path.name}: {'ok' if not errors else 'INVALID'}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:3]))
