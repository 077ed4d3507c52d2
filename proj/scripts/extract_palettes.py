#!/usr/bin/env python3
"""Regenerate data/palettes/builtin.json.

ColorBrewer schemes come from palettable's bundled copy of the ColorBrewer
tables; the continuous ramps are matplotlib's 256-entry lookup tables.

usage: extract_palettes.py <colorbrewer_all_schemes.json> > data/palettes/builtin.json
"""

import json
import sys

import matplotlib._cm_listed as listed

SINGLE_HUE = {"Blues", "Greens", "Greys", "Oranges", "Purples", "Reds"}

# Schemes usable by readers with red-green colour vision deficiency.
COLORBLIND = {
    "BrBG", "PiYG", "PRGn", "PuOr", "RdBu", "RdYlBu",
    "Dark2", "Paired", "Set2",
}
# Qualitative schemes that survive greyscale or low-gamut printing.
PRINTABLE_QUAL = {"Dark2", "Paired", "Set1"}

RAMPS = {
    "viridis": ("sequential_multi_hue", True),
    "magma": ("sequential_multi_hue", True),
    "inferno": ("sequential_multi_hue", True),
    "plasma": ("sequential_multi_hue", True),
    "cividis": ("sequential_multi_hue", True),
    "twilight": ("cyclical", False),
}


def hexify(rgb):
    return "#%02x%02x%02x" % tuple(int(round(c)) for c in rgb)


def brewer(path):
    src = json.load(open(path))
    out = []
    kinds = {"Sequential": None, "Diverging": "diverging", "Qualitative": "categorical"}
    for kind, schemes in src.items():
        for name in sorted(schemes):
            scale = kinds[kind] or ("sequential_single_hue" if name in SINGLE_HUE else "sequential_multi_hue")
            colors = {}
            for k in sorted(schemes[name], key=int):
                colors[k] = [hexify(c) for c in schemes[name][k]["Colors"]]
            sequential = kind == "Sequential"
            out.append({
                "name": name,
                "scaleType": scale,
                "flags": {
                    "web": True,
                    "colorblind": sequential or name in COLORBLIND,
                    "print": kind != "Qualitative" or name in PRINTABLE_QUAL,
                },
                "colors": colors,
            })
    return out


def ramps():
    out = []
    for name, (scale, colorblind) in RAMPS.items():
        data = getattr(listed, "_%s_data" % name)
        if len(data) > 256:
            data = data[::2]
        out.append({
            "name": name,
            "scaleType": scale,
            "flags": {"web": True, "colorblind": colorblind, "print": True},
            "interpolator": {"stops": [hexify([255 * c for c in rgb]) for rgb in data]},
        })
    return out


def main():
    palettes = ramps() + brewer(sys.argv[1])
    json.dump({"palettes": palettes}, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
