"""Run every verification on the desk-scale structures and write one JSON report per run.

    python3 scripts/verify_all.py --out reports --samples 10000 --seed 0
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from pivotal import characterize as ch
from pivotal.semantics import Structure

RUNS = [
    ("mupp", None),
    ("rep-dp", ("classical", ("p",))),
    ("rep-dp", ("classical", ("p", "q"))),
    ("rep-dp", ("j3", ("p",))),
    ("rep-general", ("classical", ("p",))),
    ("rep-general", ("four", ("p",))),
    ("rep-general", ("j3", ("p",))),
    ("rep-disc-dp", ("j3", ("p",))),
    ("rep-disc-dp", ("four", ("p",))),
    ("rep-disc", ("j3", ("p",))),
    ("rep-disc", ("four", ("p",))),
    ("xlogic", ("classical", ("p", "q"))),
    ("xlogic", ("j3", ("p",))),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("reports"))
    ap.add_argument("--samples", type=int, default=ch.DEFAULT_SAMPLES)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--omit-runtime", action="store_true")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    timing = not args.omit_runtime
    bad = 0
    for prop, where in RUNS:
        s = Structure(*where) if where else None
        kw = {"seed": args.seed, "timing": timing}
        if prop.startswith("rep"):
            kw["samples"] = args.samples
        r = ch.verify(prop, s, **kw)
        name = prop if s is None else f"{prop}-{s.kind}-{'-'.join(s.atoms)}"
        (args.out / f"{name}.json").write_text(json.dumps(r.to_json(), indent=2) + "\n", encoding="utf-8")
        print(r.summary())
        bad += not r.ok
    for row in ch.property_suites(seed=args.seed):
        print(f"{'OK' if row['failures'] == 0 else 'FAIL'} {row['suite']}: {row['failures']}/{row['draws']}")
        bad += row["failures"] != 0
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
