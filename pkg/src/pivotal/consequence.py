"""Basic, pivotal, pivotal-discriminative and pertinence entailment."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from pivotal.choice import Pivot
from pivotal.formula import Formula, parse
from pivotal.semantics import Clone, FormulaClass, Structure, ValuationSet, bits, mod, popcount

MODES = ("plain", "discriminative")


@dataclass(frozen=True)
class TheorySet:
    """A set of formulas, represented by the clone classes it contains."""

    clone: Clone
    mask: int

    @classmethod
    def of(cls, clone: Clone, formulas: Iterable[Formula]) -> "TheorySet":
        m = 0
        for f in formulas:
            m |= 1 << clone.class_of(f)
        return cls(clone, m)

    @classmethod
    def theory(cls, clone: Clone, V: ValuationSet | int) -> "TheorySet":
        vmask = V.mask if isinstance(V, ValuationSet) else V
        return cls(clone, clone.theory(vmask))

    def __contains__(self, f: Formula | int) -> bool:
        i = f if isinstance(f, int) else self.clone.class_of(f)
        return bool(self.mask >> i & 1)

    def __iter__(self) -> Iterator[FormulaClass]:
        for i in bits(self.mask):
            yield self.clone.classes[i]

    def __len__(self):
        return popcount(self.mask)

    def __le__(self, other: "TheorySet") -> bool:
        return self.mask & ~other.mask == 0

    def __or__(self, other: "TheorySet") -> "TheorySet":
        return TheorySet(self.clone, self.mask | other.mask)

    def __and__(self, other: "TheorySet") -> "TheorySet":
        return TheorySet(self.clone, self.mask & other.mask)

    def witnesses(self) -> list[Formula]:
        return [c.witness for c in self]

    def models(self) -> ValuationSet:
        return ValuationSet(self.clone.structure, self.clone.models(self.mask))


@dataclass(frozen=True)
class PivotalRelation:
    structure: Structure
    pivot: int
    mode: str = "plain"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if isinstance(self.pivot, (Pivot, ValuationSet)):
            object.__setattr__(self, "pivot", self.pivot.mask)

    def chosen(self, gamma: Sequence[Formula]) -> int:
        return mod(self.structure, gamma).mask & self.pivot

    def entails(self, gamma: Sequence[Formula], alpha: Formula) -> bool:
        X = self.chosen(gamma)
        t, fl = self.structure.masks(alpha)
        if X & ~t:
            return False
        return self.mode == "plain" or X & ~fl != 0


def read_pivot(s: Structure, path: str | Path) -> int:
    """Load a pivot file.

    Either every line is a valuation literal (``r=t q=f p=B``), listing the
    pivot's members, or every line is ``@ formula``, and the pivot is the set
    of valuations satisfying all of them.  ``#`` starts a comment.
    """
    literals, formulas = [], []
    for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("@"):
            formulas.append(parse(line[1:]))
        else:
            literals.append(s.parse_valuation(line))
        if literals and formulas:
            raise ValueError(f"{path}:{n}: pivot files list valuations or formulas, not both")
    if formulas:
        return mod(s, formulas).mask
    return ValuationSet.of(s, literals).mask


def write_pivot(s: Structure, mask: int) -> str:
    return "".join(f"{v}\n" for v in ValuationSet(s, mask))


def entails_basic(s: Structure, gamma: Sequence[Formula], alpha: Formula) -> bool:
    return mod(s, gamma).mask & ~s.masks(alpha)[0] == 0


def entails_pivotal(rel: PivotalRelation, gamma: Sequence[Formula], alpha: Formula) -> bool:
    if rel.mode != "plain":
        raise ValueError("entails_pivotal needs a plain relation")
    return rel.entails(gamma, alpha)


def entails_discriminative(rel: PivotalRelation, gamma: Sequence[Formula], alpha: Formula) -> bool:
    if rel.mode != "discriminative":
        raise ValueError("entails_discriminative needs a discriminative relation")
    return rel.entails(gamma, alpha)


def consequence_set(rel: PivotalRelation, gamma: Sequence[Formula], clone: Clone) -> TheorySet:
    clone.require_complete()
    X = rel.chosen(gamma)
    m = clone.theory(X) if rel.mode == "plain" else clone.theory_d(X)
    return TheorySet(clone, m)


def is_consistent(s: Structure, gamma: Sequence[Formula], clone: Clone) -> bool:
    clone.require_complete()
    V = mod(s, gamma).mask
    return clone.theory(V) & clone.theory_f(V) == 0


def h_stages(clone: Clone, vmask: int, conclusions: int) -> list[int]:
    """Stages H_1, H_2, ... for premises with models ``vmask`` and consequence set ``conclusions``.

    Stage i holds the negations of formulas entailed by the premises, the
    conclusions and the earlier stages that are not themselves concluded,
    and whose negation is not entailed.  Iteration stops at the first stage
    adding nothing new; the base set cannot shrink further after that.
    """
    base = vmask & clone.models(conclusions)
    stages: list[int] = []
    union = 0
    while True:
        th = clone.theory(base)
        th_neg = clone.theory_f(base)
        stage = clone.negations(th & ~conclusions & ~th_neg)
        stages.append(stage)
        if stage & ~union == 0:
            return stages
        union |= stage
        base &= clone.models(stage)


@dataclass
class HSets:
    total: TheorySet
    stages: list[TheorySet]


def h_sets(rel: PivotalRelation, gamma: Sequence[Formula], clone: Clone) -> HSets:
    clone.require_complete()
    V = mod(rel.structure, gamma).mask
    C = consequence_set(rel, gamma, clone).mask
    stages = h_stages(clone, V, C)
    total = 0
    for st in stages:
        total |= st
    return HSets(TheorySet(clone, total), [TheorySet(clone, st) for st in stages])


@dataclass(frozen=True)
class PertinenceRelation:
    """Conclude ``alpha`` when adding it yields no new pertinent consequence."""

    clone: Clone
    pertinent: int

    @classmethod
    def of(cls, clone: Clone, formulas: Iterable[Formula], close: bool = False) -> "PertinenceRelation":
        E = TheorySet.of(clone, formulas).mask
        if close:
            E = clone.theory(clone.models(E))
        return cls(clone, E)

    @property
    def closed(self) -> bool:
        return self.clone.theory(self.clone.models(self.pertinent)) == self.pertinent

    def entails_mask(self, vmask: int, alpha: int) -> bool:
        c = self.clone
        gained = c.theory(vmask & c.T[alpha]) & self.pertinent
        return gained & ~c.theory(vmask) == 0


def entails_pertinence(rel: PertinenceRelation, gamma: Sequence[Formula], alpha: Formula,
                       clone: Clone) -> bool:
    clone.require_complete()
    V = mod(clone.structure, gamma).mask
    return rel.entails_mask(V, clone.class_of(alpha))
