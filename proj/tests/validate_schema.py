"""Runs the CLI on the sample operators and validates every JSON output
against the schemas in docs/schema.

usage: validate_schema.py JOSTLT SCHEMA_DIR DATA_DIR
"""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def load_schemas(schema_dir):
    schemas = {}
    for path in sorted(schema_dir.glob("*.schema.json")):
        schema = json.loads(path.read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        schemas[path.name.removesuffix(".schema.json")] = schema
    return schemas


def run(tool, args):
    proc = subprocess.run([tool, *args], capture_output=True, text=True)
    if proc.returncode != 0:
        raise RuntimeError(f"{' '.join(args)} exited {proc.returncode}: {proc.stderr}")
    return proc.stdout


def main():
    tool, schema_dir, data_dir = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    schemas = load_schemas(schema_dir)
    ops = sorted(str(p) for p in data_dir.glob("*.json"))
    cases = []
    for op in ops:
        cases += [
            ("jost", ["--format", "json", "jost", "--op", op, "--z", "0.3,0.2"]),
            ("jost", ["--format", "json", "jost", "--op", op, "--z", "0.5,-0.5", "--method", "volterra"]),
            ("jost", ["--format", "json", "jost", "--op", op, "--z", "1,0"]),
            ("spectrum", ["spectrum", "--op", op]),
            ("lt-sum", ["--format", "json", "lt-sum", "--op", op, "--eps", "0.1,0.5,0.9"]),
            ("enclosure", ["enclosure", "--op", op]),
            ("oracle", ["--format", "json", "oracle", "--op", op, "--n-trunc", "60"]),
        ]
    cases += [
        ("steppot", ["--format", "json", "steppot", "--n", "300"]),
        ("steppot", ["--format", "json", "steppot", "--n", "12", "--all-roots"]),
        ("sharpness-sweep", ["--format", "json", "sharpness-sweep", "--n-list", "16,64,256"]),
        ("sharpness-sweep", ["--format", "json", "sharpness-sweep", "--n-list", "200", "--a", "0.1"]),
    ]

    failures = 0
    used = set()
    for name, args in cases:
        used.add(name)
        try:
            jsonschema.validate(json.loads(run(tool, args)), schemas[name])
        except Exception as exc:  # noqa: BLE001
            failures += 1
            print(f"FAIL {name}: {' '.join(args)}\n  {exc}")

    with tempfile.TemporaryDirectory() as tmp:
        summary = pathlib.Path(tmp) / "summary.json"
        used.add("steppot-summary")
        try:
            run(tool, ["steppot", "--n", "40", "--all-roots", "--summary", str(summary)])
            jsonschema.validate(json.loads(summary.read_text()), schemas["steppot-summary"])
        except Exception as exc:  # noqa: BLE001
            failures += 1
            print(f"FAIL steppot-summary\n  {exc}")

    unused = set(schemas) - used
    if unused:
        failures += 1
        print(f"FAIL schemas never exercised: {sorted(unused)}")
    print(f"{len(cases) + 1} outputs checked, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
