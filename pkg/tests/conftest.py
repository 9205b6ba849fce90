from functools import lru_cache

import pytest
from hypothesis import settings, strategies as st

from pivotal.formula import FALSE, TRUE, And, Atom, Not, Or
from pivotal.semantics import Structure, compute_clone

settings.register_profile("default", deadline=None, max_examples=150)
settings.load_profile("default")


@lru_cache(maxsize=None)
def clone_for(kind: str, atoms: tuple[str, ...]):
    return compute_clone(Structure(kind, atoms))


def formulas(atoms=("p", "q", "r"), max_leaves=12):
    leaves = st.sampled_from([Atom(a) for a in atoms] + [TRUE, FALSE])
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            kids.map(Not),
            st.tuples(kids, kids).map(lambda t: Or(*t)),
            st.tuples(kids, kids).map(lambda t: And(*t)),
        ),
        max_leaves=max_leaves,
    )


@pytest.fixture(scope="session")
def nixon_classical():
    from pathlib import Path

    from pivotal.consequence import read_pivot

    s = Structure("classical", ("r", "q", "p"))
    root = Path(__file__).resolve().parent.parent / "configs" / "nixon-classical"
    return s, read_pivot(s, root / "nixon.pivot")


@pytest.fixture(scope="session")
def nixon_four():
    from pathlib import Path

    from pivotal.consequence import read_pivot

    s = Structure("four", ("r", "q", "p"))
    root = Path(__file__).resolve().parent.parent / "configs" / "nixon-four"
    return s, read_pivot(s, root / "nixon.pivot")
