"""Runs the CLI in JSON mode and validates each report against its schema."""
import json
import pathlib
import subprocess
import sys

import jsonschema

CASES = [
    ("grassmann-count", ["grassmann", "count", "-q", "2", "-n", "4", "-i", "1"]),
    ("grassmann-count", ["grassmann", "count", "-q", "3", "-n", "40", "-i", "20"]),
    ("grassmann-enum", ["grassmann", "enum", "-q", "4", "-n", "3", "-i", "1"]),
    ("nest-match", ["nest", "match", "-q", "2", "-n", "4", "-i", "1", "-j", "3"]),
    ("nest-match", ["nest", "match", "-p", "2", "-k", "2", "-n", "3", "-i", "1", "-j", "2"]),
    ("nest-hall", ["nest", "hall", "-q", "3", "-n", "4", "-i", "1", "-j", "3", "--samples", "100"]),
    ("nest-perp", ["nest", "perp", "-q", "2", "-n", "6"]),
    ("nest-linear-check", ["nest", "linear-check", "-q", "3", "-n", "2", "--gram", "0,1,2,0"]),
    ("nest-linear-check", ["nest", "linear-check", "-q", "2", "-n", "2", "--sweep"]),
    ("chern-verify", ["chern", "verify", "--d-max", "6"]),
    ("chern-certificate", ["chern", "certificate", "--d-max", "10"]),
    ("chern-obstruction", ["chern", "obstruction", "-n", "4", "-i", "2", "-j", "3"]),
    ("chern-obstruction", ["chern", "obstruction", "-n", "6", "-i", "1", "-j", "2"]),
    ("schw-check", ["schw", "check", "--poly", "1,1,1", "-m", "4"]),
    ("schw-check", ["schw", "check", "--poly", "1,0,-1", "-m", "5", "--s-first", "-3", "--s-last", "3"]),
    ("schw-trace", ["schw", "trace", "--poly", "1,1,1", "-m", "6"]),
    ("schw-classify", ["schw", "classify", "-n", "12"]),
]


def main() -> int:
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    failures = 0
    for name, args in CASES:
        schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
        for extra in ([], ["--timing"]):
            proc = subprocess.run([exe, *args, "--format", "json", *extra], capture_output=True, text=True)
            if proc.returncode not in (0, 1):
                print(f"FAIL {name} {args}: exit {proc.returncode}: {proc.stderr.strip()}")
                failures += 1
                continue
            try:
                jsonschema.validate(json.loads(proc.stdout), schema)
            except jsonschema.ValidationError as e:
                print(f"FAIL {name} {args}: {e.message}")
                failures += 1
                continue
            print(f"ok   {name} {' '.join(args + extra)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
