#!/usr/bin/env python3
"""Validate binx mapspec exports against the Vega-Lite v5 JSON schema.

usage: validate_mapspec.py --schema vega-lite-v5.json [--binx PATH --data CSV --geo GEOJSON ...] [FILE ...]

Files given positionally are validated as-is. With --binx, mapspecs are also
exported (inline geometry and geometry by URL) into a temp dir and validated.
"""

import argparse
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def export(binx, args, out, extra):
    cmd = [binx, "export", "--format", "mapspec", "--out", str(out),
           "--data", args.data, "--geo", args.geo, "--id-col", args.id_col, "--value-col", args.value_col] + extra
    subprocess.run(cmd, check=True, stderr=subprocess.DEVNULL)
    return out / "mapspec.vl.json"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--schema", required=True)
    ap.add_argument("--binx")
    ap.add_argument("--data")
    ap.add_argument("--geo")
    ap.add_argument("--id-col", default="id")
    ap.add_argument("--value-col", default="")
    ap.add_argument("files", nargs="*")
    args = ap.parse_args()

    schema = json.loads(Path(args.schema).read_text())
    validator = jsonschema.Draft7Validator(schema)
    files = [Path(f) for f in args.files]

    with tempfile.TemporaryDirectory() as tmp:
        if args.binx:
            runs = {
                "inline": ["--method", "quantile", "--bins", "5"],
                "url": ["--method", "natural_breaks", "--bins", "6", "--geometry-url", "counties.geojson",
                        "--palette", "RdBu", "--reverse"],
                "unclassed": ["--method", "unclassed"],
            }
            for name, extra in runs.items():
                out = Path(tmp) / name
                files.append(export(args.binx, args, out, extra))

        failed = 0
        for f in files:
            doc = json.loads(f.read_text())
            errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
            if errors:
                failed += 1
                print("FAIL %s" % f)
                for e in errors[:5]:
                    print("  at /%s: %s" % ("/".join(map(str, e.absolute_path)), e.message[:200]))
            else:
                print("ok   %s" % f)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
