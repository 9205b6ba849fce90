from itertools import product

import pytest
from hypothesis import given, strategies as st

import truth_tables
from conftest import clone_for, formulas
from pivotal.consequence import is_consistent
from pivotal.formula import FALSE, TRUE, Atom, Not, Or, And, disjoin_sets, parse, parse_list
from pivotal.semantics import (
    CapExceeded,
    IncompleteClone,
    Structure,
    TruthValue,
    UnknownAtom,
    Valuation,
    ValuationSet,
    check_assumptions,
    compute_clone,
    definable_family,
    enumerate_valuations,
    eval_formula,
    is_coherent_set,
    mod,
    satisfies,
    theory_contains,
    theory_d_contains,
)

TV = TruthValue.from_literal
OPS = {"~": lambda a, b: Not(a), "|": Or, "&": And}


# --- truth tables -----------------------------------------------------------------


@pytest.mark.parametrize("kind", ["four", "j3", "classical"])
def test_every_table_cell(kind):
    s = Structure(kind, ("a", "b"))
    a, b = Atom("a"), Atom("b")
    for op, x, y, expected in truth_tables.cells(kind):
        v = s.parse_valuation(f"a={x} b={y or 'f'}")
        f = OPS[op](a, b)
        assert eval_formula(s, v, f) == TV(expected), (op, x, y)
        t, fl = s.masks(f)
        i = s.index_of(v)
        assert TruthValue.from_bits(bool(t >> i & 1), bool(fl >> i & 1)) == TV(expected)


def test_table_cell_count():
    assert sum(1 for _ in truth_tables.cells("four")) == 4 + 16 + 16
    assert sum(1 for _ in truth_tables.cells("j3")) == 3 + 9 + 9


def test_constants():
    for kind in ("classical", "four", "j3"):
        s = Structure(kind, ("p",))
        for v in enumerate_valuations(s):
            assert eval_formula(s, v, TRUE) is TruthValue.T
            assert eval_formula(s, v, FALSE) is TruthValue.F


# --- valuations ----------------------------------------------------------------------


def test_universe_sizes():
    assert len(enumerate_valuations(Structure("classical", ("p",)))) == 2
    assert len(enumerate_valuations(Structure("four", ("r", "q", "p")))) == 64
    assert len(enumerate_valuations(Structure("j3", ()))) == 1


def test_canonical_order():
    s = Structure("four", ("p", "q"))
    vs = [str(v) for v in enumerate_valuations(s)]
    assert vs[:5] == ["p=f q=f", "p=f q=t", "p=f q=B", "p=f q=N", "p=t q=f"]
    assert all(s.index_of(v) == i for i, v in enumerate(enumerate_valuations(s)))


def test_valuation_literals():
    s = Structure("j3", ("p", "q"))
    assert str(s.parse_valuation("q=B p=t")) == "p=t q=B"
    with pytest.raises(ValueError):
        s.parse_valuation("p=t")
    with pytest.raises(ValueError):
        s.index_of(Valuation(("p", "q"), (TV("N"), TV("f"))))
    with pytest.raises(UnknownAtom):
        s.parse_valuation("p=t q=f z=t")


def test_universe_cap():
    s = Structure("four", tuple(f"a{i}" for i in range(11)), universe_cap=2**20)
    with pytest.raises(CapExceeded):
        enumerate_valuations(s)


def test_unknown_atom():
    s = Structure("four", ("p",))
    with pytest.raises(UnknownAtom):
        mod(s, [parse("z")])
    with pytest.raises(UnknownAtom):
        eval_formula(s, s.valuation(0), parse("z"))


def test_satisfaction_is_membership_of_one():
    s = Structure("four", ("p",))
    both, neither = s.parse_valuation("p=B"), s.parse_valuation("p=N")
    assert satisfies(s, both, parse("p")) and satisfies(s, both, parse("~p"))
    assert not satisfies(s, neither, parse("p")) and not satisfies(s, neither, parse("~p"))
    c = Structure("classical", ("p",))
    one = c.parse_valuation("p=t")
    assert satisfies(c, one, parse("p")) and not satisfies(c, one, parse("~p"))


# --- Mod, Th, Th^d --------------------------------------------------------------------


def test_mod_examples():
    for kind in ("classical", "four", "j3"):
        s = Structure(kind, ("p", "q"))
        assert mod(s, []).mask == s.full
        assert mod(s, [FALSE]).mask == 0
    s = Structure("four", ("p",))
    assert [str(v) for v in mod(s, parse_list("p, ~p"))] == ["p=B"]


def test_theory_examples():
    s = Structure("four", ("p",))
    empty = ValuationSet(s, 0)
    both = mod(s, parse_list("p, ~p"))
    assert theory_contains(s, empty, parse("p & ~p"))
    assert not theory_d_contains(s, empty, parse("p"))
    assert theory_contains(s, both, parse("~p"))
    assert not theory_d_contains(s, both, parse("p"))
    c = Structure("classical", ("p",))
    assert theory_contains(c, ValuationSet.universe(c), TRUE)
    assert not theory_contains(c, ValuationSet.universe(c), parse("p"))
    assert theory_d_contains(c, mod(c, [parse("p")]), parse("p"))


@given(formulas(("p", "q")), st.sampled_from(["classical", "four", "j3"]))
def test_masks_agree_with_pointwise_evaluation(f, kind):
    s = Structure(kind, ("p", "q"))
    t, fl = s.masks(f)
    for i, v in enumerate(enumerate_valuations(s)):
        value = eval_formula(s, v, f)
        assert bool(t >> i & 1) == value.has_true
        assert bool(fl >> i & 1) == value.has_false


@given(formulas(("p", "q")), formulas(("p", "q")), st.sampled_from(["four", "j3"]))
def test_de_morgan_and_double_negation(a, b, kind):
    s = Structure(kind, ("p", "q"))
    M = lambda f: mod(s, [f]).mask
    assert M(Not(Not(a))) == M(a)
    assert M(Not(Or(a, b))) == M(And(Not(a), Not(b)))
    assert M(Not(And(a, b))) == M(Or(Not(a), Not(b)))


@given(st.lists(formulas(("p", "q")), max_size=3), st.lists(formulas(("p", "q")), max_size=3),
       st.sampled_from(["classical", "four", "j3"]))
def test_premise_union_and_disjunction_laws(gamma, delta, kind):
    s = Structure(kind, ("p", "q"))
    assert mod(s, gamma + delta).mask == mod(s, gamma).mask & mod(s, delta).mask
    assert mod(s, disjoin_sets(gamma, delta)).mask == mod(s, gamma).mask | mod(s, delta).mask


# --- clone quotient ----------------------------------------------------------------------


def _clone_oracle(kind, atoms):
    """Closure of value vectors under the connective tables, with no formulas involved."""
    tables = {"four": truth_tables.FOUR_NOT, "j3": truth_tables.J3_NOT, "classical": truth_tables.CLASSICAL_NOT}
    order = {"four": "ftBN", "j3": "ftB", "classical": "ft"}[kind]
    neg = tables[kind]
    disj = {"four": truth_tables.FOUR_OR, "j3": truth_tables.J3_OR, "classical": truth_tables.CLASSICAL_OR}[kind]
    conj = {"four": truth_tables.FOUR_AND, "j3": truth_tables.J3_AND, "classical": truth_tables.CLASSICAL_AND}[kind]
    points = list(product(order, repeat=len(atoms)))
    seeds = {tuple("t" for _ in points), tuple("f" for _ in points)}
    seeds |= {tuple(pt[i] for pt in points) for i in range(len(atoms))}
    found = set(seeds)
    frontier = set(seeds)
    while frontier:
        new = set()
        for x in frontier:
            new.add(tuple(neg[c] for c in x))
            for y in found:
                new.add(tuple(disj[a][order.index(b)] for a, b in zip(x, y)))
                new.add(tuple(conj[a][order.index(b)] for a, b in zip(x, y)))
        frontier = new - found
        found |= frontier
    return found


@pytest.mark.parametrize("kind,atoms,expected", [
    ("classical", ("p",), 4),
    ("classical", ("p", "q"), 16),
    ("four", ("p",), 6),
    ("j3", ("p",), 6),
    ("j3", ("p", "q"), 84),
])
def test_clone_size_matches_table_closure(kind, atoms, expected):
    clone = clone_for(kind, atoms)
    assert clone.complete
    assert len(clone) == expected == len(_clone_oracle(kind, atoms))
    # every class witness evaluates to the class's stored function
    s = clone.structure
    for c in clone.classes:
        assert s.masks(c.witness) == (c.true_mask, c.false_mask)


def test_classical_clone_is_every_boolean_function():
    assert len(clone_for("classical", ("r", "q", "p"))) == 2 ** 8


def test_clone_cap_marks_incomplete():
    clone = compute_clone(Structure("four", ("p", "q")), cap=50)
    assert not clone.complete
    with pytest.raises(IncompleteClone):
        clone.definable


def test_empty_atom_structure():
    clone = clone_for("four", ())
    assert len(clone) == 2 and clone.definable == (0, 1)


@given(formulas(("p", "q")), st.integers(0, 2**9 - 1))
def test_quotient_soundness(f, V):
    clone = clone_for("j3", ("p", "q"))
    s = clone.structure
    w = clone.witness(clone.class_of(f))
    vs = ValuationSet(s, V)
    assert mod(s, [f]) == mod(s, [w])
    assert theory_contains(s, vs, f) == theory_contains(s, vs, w)
    assert theory_d_contains(s, vs, f) == theory_d_contains(s, vs, w)


# --- definable and coherent families ---------------------------------------------------------


def test_classical_definable_is_every_subset():
    clone = clone_for("classical", ("p", "q"))
    assert len(clone.definable) == 16


@pytest.mark.parametrize("kind,atoms", [("four", ("p",)), ("j3", ("p",)), ("j3", ("p", "q")), ("four", ("p", "q"))])
def test_definable_family_is_exactly_the_closed_sets(kind, atoms):
    clone = clone_for(kind, atoms)
    U = clone.full
    D = clone.definable_set
    assert U in D and 0 in D
    assert all(V & W in D for V in D for W in D)
    # V is definable iff it is the model set of its own theory
    closed = {V for V in range(U + 1) if clone.models(clone.theory(V)) == V}
    assert closed == D


def test_four_one_atom_definable_sets():
    clone = clone_for("four", ("p",))
    s = clone.structure
    assert [sorted(str(v) for v in V) for V in definable_family(s, clone)] == [
        [], ["p=B"], ["p=B", "p=f"], ["p=B", "p=t"], ["p=B", "p=f", "p=t"], ["p=B", "p=N", "p=f", "p=t"],
    ]
    only_t = ValuationSet.of(s, [s.parse_valuation("p=t")]).mask
    assert only_t not in clone.definable_set


def test_galois_connection():
    clone = clone_for("j3", ("p", "q"))
    for V in range(clone.full + 1):
        th = clone.theory(V)
        assert V & ~clone.models(th) == 0
        assert clone.theory(clone.models(th)) == th


def test_coherent_family():
    for kind in ("classical", "four", "j3"):
        clone = clone_for(kind, ("p",))
        assert not clone.is_coherent(0)
    classical = clone_for("classical", ("p", "q"))
    assert all(classical.is_coherent(V) for V in range(1, classical.full + 1))
    four = clone_for("four", ("p",))
    s = four.structure
    assert not is_coherent_set(s, mod(s, parse_list("p, ~p")), four)


@pytest.mark.parametrize("kind", ["classical", "four", "j3"])
def test_consistency_equals_coherence(kind):
    clone = clone_for(kind, ("p",))
    s = clone.structure
    for i in range(len(clone)):
        for j in range(len(clone)):
            gamma = [clone.witness(i), clone.witness(j)]
            assert is_consistent(s, gamma, clone) == clone.is_coherent(mod(s, gamma).mask)


# --- assumptions ------------------------------------------------------------------------


def _a2_violated(s, gamma, alpha):
    """Direct reading: alpha, ~alpha both outside Th(Mod gamma) yet Mod(gamma, alpha) inside Mod(~alpha)."""
    V = mod(s, gamma)
    return (not theory_contains(s, V, alpha) and not theory_contains(s, V, Not(alpha))
            and mod(s, gamma + [alpha]) <= mod(s, [Not(alpha)]))


@pytest.mark.parametrize("kind,atoms,failing", [
    ("classical", ("p",), set()),
    ("classical", ("p", "q"), set()),
    ("j3", ("p",), set()),
    ("j3", ("p", "q"), set()),
    ("four", ("p",), {"A2"}),
    ("four", ("p", "q"), {"A2"}),
])
def test_assumption_matrix(kind, atoms, failing):
    clone = clone_for(kind, atoms)
    results = check_assumptions(clone.structure, clone)
    assert {k for k, r in results.items() if not r.holds} == failing
    if "A2" in failing:
        cex = results["A2"].counterexample
        if atoms == ("p",):
            assert cex == {"gamma": [], "alpha": "p & ~p"}
        assert _a2_violated(clone.structure, parse_list(",".join(cex["gamma"])), parse(cex["alpha"]))


def test_a2_by_brute_force_on_formulas():
    for kind, expect in (("four", True), ("j3", False), ("classical", False)):
        clone = clone_for(kind, ("p",))
        s = clone.structure
        ws = [c.witness for c in clone.classes]
        found = any(_a2_violated(s, [g1, g2], a) for g1 in ws + [TRUE] for g2 in ws for a in ws)
        assert found == expect, kind
