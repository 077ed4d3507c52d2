#!/usr/bin/env python3
"""Generate the bundled synthetic county sample.

Writes data/samples/{life_expectancy.csv, us_counties.geojson, manifest.json}.
Values are synthetic: a normal bulk with a sparse low tail and a few widely
spaced high outliers. A handful of named counties carry fixed values so the
worked examples in the README stay reproducible.

usage: make_sample.py [--seed N] [--out DIR]
"""

import argparse
import json
import os
import random

STATES = [1, 2, 4, 5, 6, 8, 9, 10, 11, 12, 13, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28,
          29, 30, 31, 32, 33, 34, 35, 36, 37, 38, 39, 40, 41, 42, 44, 45, 46, 47, 48, 49, 50, 51, 53, 54,
          55, 56]

NAMED = {
    "46102": ("Oglala Lakota County, SD", 62.44),
    "20171": ("Scott County, KS", 80.85),
    "37113": ("Macon County, NC", 78.12),
    "13089": ("DeKalb County, GA", 77.31),
}
# Values above the bulk, spaced so the largest gaps sit in the upper tail.
HIGH_TAIL = [84.02, 86.27, 88.61, 91.03, 93.58]
LOW_TAIL = [64.87, 66.1, 67.02, 67.9, 68.55, 69.2, 69.71, 70.3]

COUNTY_COUNT = 3140          # attribute rows that also have geometry
GEOMETRY_ONLY = ["72001", "72003"]
ATTRIBUTE_ONLY = ["02270"]
NA_ROWS = 7
GRID_COLUMNS = 56
CELL = 0.5


def county_ids(rng):
    ids = list(NAMED)
    per_state = {s: 1 for s in STATES}
    while len(ids) < COUNTY_COUNT:
        s = rng.choice(STATES)
        code = "%02d%03d" % (s, 2 * per_state[s] - 1)
        per_state[s] += 1
        if code not in NAMED and code not in ATTRIBUTE_ONLY:
            ids.append(code)
    return sorted(ids)


def values(rng, ids, mean, sd):
    fixed = {i: v for i, (_, v) in NAMED.items()}
    free = [i for i in ids if i not in fixed]
    rng.shuffle(free)
    out = dict(fixed)
    tail = LOW_TAIL + HIGH_TAIL
    for i, v in zip(free, tail):
        out[i] = v
    missing = set(free[len(tail):len(tail) + NA_ROWS])
    for i in free[len(tail):]:
        if i in missing:
            out[i] = None
            continue
        while True:
            v = round(rng.gauss(mean, sd), 2)
            if 70.8 <= v <= 83.4:
                break
        out[i] = v
    return out


def square(col, row):
    x0 = -124.0 + col * CELL
    y0 = 49.0 - row * CELL
    ring = [[x0, y0], [x0 + CELL, y0], [x0 + CELL, y0 - CELL], [x0, y0 - CELL], [x0, y0]]
    return {"type": "Polygon", "coordinates": [ring]}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--mean", type=float, default=77.8)
    ap.add_argument("--sd", type=float, default=3.0)
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "samples"))
    args = ap.parse_args()
    rng = random.Random(args.seed)

    ids = county_ids(rng)
    vals = values(rng, ids, args.mean, args.sd)
    os.makedirs(args.out, exist_ok=True)

    rows = ids + ATTRIBUTE_ONLY
    with open(os.path.join(args.out, "life_expectancy.csv"), "w", newline="") as f:
        f.write("fips,name,life_expectancy\n")
        for i in rows:
            name = NAMED[i][0] if i in NAMED else "County %s" % i
            v = vals.get(i, 79.5)
            f.write('%s,"%s",%s\n' % (i, name, "NA" if v is None else repr(v)))

    geo_ids = sorted(ids + GEOMETRY_ONLY)
    features = []
    for n, i in enumerate(geo_ids):
        features.append({
            "type": "Feature",
            "properties": {"fips": i},
            "geometry": square(n % GRID_COLUMNS, n // GRID_COLUMNS),
        })
    with open(os.path.join(args.out, "us_counties.geojson"), "w") as f:
        json.dump({"type": "FeatureCollection", "features": features}, f, separators=(",", ":"))
        f.write("\n")

    manifest = {
        "datasetId": "sample",
        "attributes": "life_expectancy.csv",
        "geometry": "us_counties.geojson",
        "idColumn": "fips",
        "idProperty": "fips",
        "valueColumn": "life_expectancy",
        "rows": len(rows),
        "naRows": NA_ROWS,
        "geometryFeatures": len(geo_ids),
        "matched": len(ids),
        "unmatchedGeometryIds": GEOMETRY_ONLY,
        "unmatchedAttributeIds": ATTRIBUTE_ONLY,
        "seed": args.seed,
    }
    with open(os.path.join(args.out, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
