"""Pivotal consequence relations over finite semantic structures."""

from pivotal.choice import ChoiceFunction, Pivot, nu, pivot_representation
from pivotal.consequence import (
    PertinenceRelation,
    PivotalRelation,
    TheorySet,
    consequence_set,
    entails_basic,
    entails_discriminative,
    entails_pertinence,
    entails_pivotal,
    h_sets,
    read_pivot,
)
from pivotal.formula import FALSE, TRUE, And, Atom, Const, Not, Or, parse, parse_list, to_text
from pivotal.semantics import (
    Clone,
    Structure,
    TruthValue,
    Valuation,
    ValuationSet,
    check_assumptions,
    compute_clone,
    eval_formula,
    mod,
)

__all__ = [
    "And", "Atom", "ChoiceFunction", "Clone", "Const", "FALSE", "Not", "Or", "PertinenceRelation",
    "Pivot", "PivotalRelation", "Structure", "TRUE", "TheorySet", "TruthValue", "Valuation",
    "ValuationSet", "check_assumptions", "compute_clone", "consequence_set", "entails_basic",
    "entails_discriminative", "entails_pertinence", "entails_pivotal", "eval_formula", "h_sets", "mod",
    "nu", "parse", "parse_list", "pivot_representation", "read_pivot", "to_text",
]
