"""Write the Nixon configurations under configs/ (pivot, premise files, batch queries).

A valuation is kept in the pivot when it makes Nixon a normal member of every
class he belongs to: a republican is normal when not a pacifist, a quaker when
a pacifist.  Run from the repository root:

    python3 scripts/make_nixon_pivots.py
"""

from __future__ import annotations

import json
from pathlib import Path

from pivotal import Structure, ValuationSet
from pivotal.consequence import write_pivot

ROOT = Path(__file__).resolve().parent.parent / "configs"
ATOMS = ("r", "q", "p")

PREMISES = {
    "empty": [],
    "r": ["r"],
    "q": ["q"],
    "r_p": ["r", "p"],
    "q_notp": ["q", "~p"],
    "q_r": ["q", "r"],
    "p_notp_q": ["p", "~p", "q"],
    "notr_rorq": ["~r", "r | q"],
}

CLASSICAL = [
    ("r", "~p", True),
    ("r", "p", False),
    ("q", "p", True),
    ("q", "~p", False),
    ("r_p", "false", True),
    ("r_p", "~r", True),
    ("r_p", "q & ~q", True),
    ("q_notp", "false", True),
    ("q_notp", "~q", True),
    ("q_r", "false", True),
    ("q_r", "p & ~p", True),
    ("empty", "r", False),
    ("empty", "p | ~p", True),
]

FOUR = [
    ("r", "~p", True),
    ("q", "p", True),
    ("r_p", "p", True),
    ("r_p", "~p", True),
    ("r_p", "r", True),
    ("r_p", "~r", False),
    ("p_notp_q", "p", True),
    ("p_notp_q", "~p", True),
    ("p_notp_q", "q", True),
    ("p_notp_q", "~q", False),
    ("q_r", "p", True),
    ("q_r", "~p", True),
    ("q_r", "q", True),
    ("q_r", "~q", False),
    ("q_r", "r", True),
    ("q_r", "~r", False),
    ("notr_rorq", "q", False),
]

FOUR_DISCRIMINATIVE = [
    ("p_notp_q", "q", True),
    ("p_notp_q", "p", False),
    ("p_notp_q", "~p", False),
    ("r", "~p", True),
    ("q_r", "q", True),
    ("q_r", "p", False),
]


def nixon_pivot(s: Structure) -> int:
    keep = []
    for v in ValuationSet.universe(s):
        republican_ok = not v["r"].has_true or v["p"].has_false
        quaker_ok = not v["q"].has_true or v["p"].has_true
        if republican_ok and quaker_ok:
            keep.append(v)
    return ValuationSet.of(s, keep).mask


def write_batch(path: Path, rows):
    lines = [f"premises/{g}.txt :: {a}  # expect: {str(e).lower()}" for g, a, e in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_config(kind: str, folder: str, batches: dict[str, list]):
    out = ROOT / folder
    (out / "premises").mkdir(parents=True, exist_ok=True)
    s = Structure(kind, ATOMS)
    header = f"# Nixon pivot over {kind}; atoms {', '.join(ATOMS)}\n"
    (out / "nixon.pivot").write_text(header + write_pivot(s, nixon_pivot(s)), encoding="utf-8")
    config = {"structure": kind, "atoms": list(ATOMS), "pivot": "nixon.pivot", "mode": "pivotal"}
    (out / "config.json").write_text(json.dumps(config, indent=2) + "\n", encoding="utf-8")
    for name, formulas in PREMISES.items():
        (out / "premises" / f"{name}.txt").write_text("".join(f + "\n" for f in formulas), encoding="utf-8")
    for name, rows in batches.items():
        write_batch(out / name, rows)


def main():
    write_config("classical", "nixon-classical", {"queries.batch": CLASSICAL})
    write_config("four", "nixon-four", {"queries.batch": FOUR, "discriminative.batch": FOUR_DISCRIMINATIVE})
    print(f"wrote {ROOT / 'nixon-classical'} and {ROOT / 'nixon-four'}")


if __name__ == "__main__":
    main()
