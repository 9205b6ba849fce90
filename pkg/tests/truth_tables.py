"""Connective tables for FOUR and J3, one string per row (rows and columns in f, t, B, N order)."""

FOUR_NOT = {"f": "t", "t": "f", "B": "B", "N": "N"}
FOUR_OR = {
    "f": "ftBN",
    "t": "tttt",
    "B": "BtBt",
    "N": "NttN",
}
FOUR_AND = {
    "f": "ffff",
    "t": "ftBN",
    "B": "fBBf",
    "N": "fNfN",
}

J3_NOT = {"f": "t", "t": "f", "B": "B"}
J3_OR = {
    "f": "ftB",
    "t": "ttt",
    "B": "BtB",
}
J3_AND = {
    "f": "fff",
    "t": "ftB",
    "B": "fBB",
}

CLASSICAL_NOT = {"f": "t", "t": "f"}
CLASSICAL_OR = {"f": "ft", "t": "tt"}
CLASSICAL_AND = {"f": "ff", "t": "ft"}


def cells(kind):
    """Yield (connective, left, right or None, expected) for every table cell."""
    tables = {
        "four": (FOUR_NOT, FOUR_OR, FOUR_AND, "ftBN"),
        "j3": (J3_NOT, J3_OR, J3_AND, "ftB"),
        "classical": (CLASSICAL_NOT, CLASSICAL_OR, CLASSICAL_AND, "ft"),
    }[kind]
    neg, disj, conj, order = tables
    for a, out in neg.items():
        yield "~", a, None, out
    for name, table in (("|", disj), ("&", conj)):
        for a, row in table.items():
            for b, out in zip(order, row):
                yield name, a, b, out
