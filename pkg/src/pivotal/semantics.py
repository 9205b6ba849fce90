"""Semantic structures for classical, four-valued (FOUR) and three-valued (J3) logic.

Valuations of a structure are enumerated in a fixed order (lexicographic over
the atom list, values ordered f < t < B < N) and a set of valuations is an
``int`` bitmask over that enumeration.  A formula is evaluated over the whole
universe at once into two masks: the valuations where ``1`` belongs to its
value (its models) and the valuations where ``0`` does (the models of its
negation).  Every question the rest of the package asks about a formula
factors through that pair, which is what makes the finite clone quotient
possible.
"""

from __future__ import annotations

import enum
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from pivotal.formula import And, Atom, Const, Formula, Not, Or, IDENT_RE, RESERVED

DEFAULT_UNIVERSE_CAP = int(os.environ.get("PIVOTAL_UNIVERSE_CAP", 2**20))
DEFAULT_CLONE_CAP = int(os.environ.get("PIVOTAL_CLONE_CAP", 200_000))

KINDS = ("classical", "four", "j3")


class CapExceeded(RuntimeError):
    pass


class IncompleteClone(RuntimeError):
    pass


class UnknownAtom(KeyError):
    pass


class TruthValue(enum.Enum):
    """A truth value as the subset of {0, 1} it contains."""

    F = "f"
    T = "t"
    BOTH = "B"
    NEITHER = "N"

    @property
    def has_true(self) -> bool:
        return self in (TruthValue.T, TruthValue.BOTH)

    @property
    def has_false(self) -> bool:
        return self in (TruthValue.F, TruthValue.BOTH)

    @classmethod
    def from_bits(cls, has_true: bool, has_false: bool) -> "TruthValue":
        return _FROM_BITS[has_true, has_false]

    @classmethod
    def from_literal(cls, text: str) -> "TruthValue":
        try:
            return _LITERALS[text]
        except KeyError:
            raise ValueError(f"unknown truth value {text!r} (expected f, t, B or N)") from None

    def __str__(self):
        return self.value


_FROM_BITS = {
    (False, True): TruthValue.F,
    (True, False): TruthValue.T,
    (True, True): TruthValue.BOTH,
    (False, False): TruthValue.NEITHER,
}
_LITERALS = {"f": TruthValue.F, "t": TruthValue.T, "B": TruthValue.BOTH, "N": TruthValue.NEITHER,
             "0": TruthValue.F, "1": TruthValue.T}

VALUE_ORDER = (TruthValue.F, TruthValue.T, TruthValue.BOTH, TruthValue.NEITHER)
DOMAINS = {
    "classical": VALUE_ORDER[:2],
    "j3": VALUE_ORDER[:3],
    "four": VALUE_ORDER,
}


def negate(a: TruthValue) -> TruthValue:
    return TruthValue.from_bits(a.has_false, a.has_true)


def join(a: TruthValue, b: TruthValue) -> TruthValue:
    """Value of a disjunction."""
    return TruthValue.from_bits(a.has_true or b.has_true, a.has_false and b.has_false)


def meet(a: TruthValue, b: TruthValue) -> TruthValue:
    """Value of a conjunction."""
    return TruthValue.from_bits(a.has_true and b.has_true, a.has_false or b.has_false)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, ascending, including 0 and ``mask``."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


@dataclass(frozen=True)
class Valuation:
    atoms: tuple[str, ...]
    values: tuple[TruthValue, ...]

    def __getitem__(self, atom: str) -> TruthValue:
        try:
            return self.values[self.atoms.index(atom)]
        except ValueError:
            raise UnknownAtom(atom) from None

    def items(self):
        return zip(self.atoms, self.values)

    def __str__(self):
        return " ".join(f"{a}={v}" for a, v in self.items())


@dataclass(frozen=True)
class Structure:
    kind: str
    atoms: tuple[str, ...]
    universe_cap: int = DEFAULT_UNIVERSE_CAP

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown structure kind {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError(f"duplicate atoms in {self.atoms}")
        for a in self.atoms:
            if not IDENT_RE.fullmatch(a) or a in RESERVED:
                raise ValueError(f"invalid atom name {a!r}")
        if self.universe_cap <= 0:
            raise ValueError("universe cap must be positive")

    @property
    def domain(self) -> tuple[TruthValue, ...]:
        return DOMAINS[self.kind]

    @property
    def size(self) -> int:
        return len(self.domain) ** len(self.atoms)

    @property
    def full(self) -> int:
        self._check_cap()
        return (1 << self.size) - 1

    def describe(self) -> dict:
        return {"kind": self.kind, "atoms": list(self.atoms)}

    def _check_cap(self):
        if self.size > self.universe_cap:
            raise CapExceeded(
                f"{self.kind} over {len(self.atoms)} atoms has {self.size} valuations, "
                f"above the universe cap {self.universe_cap}"
            )

    def valuation(self, index: int) -> Valuation:
        base = len(self.domain)
        digits = []
        for _ in self.atoms:
            index, d = divmod(index, base)
            digits.append(self.domain[d])
        return Valuation(self.atoms, tuple(reversed(digits)))

    def index_of(self, v: Valuation | dict) -> int:
        base = len(self.domain)
        idx = 0
        for a in self.atoms:
            value = v[a]
            if value not in self.domain:
                raise ValueError(f"value {value} is outside the {self.kind} domain")
            idx = idx * base + self.domain.index(value)
        return idx

    def parse_valuation(self, text: str) -> Valuation:
        """Parse a literal such as ``p=t q=B r=f``; every atom must be assigned."""
        assigned = {}
        for item in text.split():
            name, sep, val = item.partition("=")
            if not sep:
                raise ValueError(f"bad valuation item {item!r}")
            if name not in self.atoms:
                raise UnknownAtom(name)
            if name in assigned:
                raise ValueError(f"atom {name!r} assigned twice")
            assigned[name] = TruthValue.from_literal(val)
        missing = [a for a in self.atoms if a not in assigned]
        if missing:
            raise ValueError(f"valuation leaves {missing} unassigned")
        return Valuation(self.atoms, tuple(assigned[a] for a in self.atoms))

    @cached_property
    def atom_masks(self) -> dict[str, tuple[int, int]]:
        self._check_cap()
        base = len(self.domain)
        n = len(self.atoms)
        out = {}
        for i, a in enumerate(self.atoms):
            stride = base ** (n - 1 - i)
            period = stride * base
            reps = self.size // period
            block = (1 << stride) - 1
            t_pat = f_pat = 0
            for d, value in enumerate(self.domain):
                if value.has_true:
                    t_pat |= block << (d * stride)
                if value.has_false:
                    f_pat |= block << (d * stride)
            repunit = ((1 << (period * reps)) - 1) // ((1 << period) - 1)
            out[a] = (t_pat * repunit, f_pat * repunit)
        return out

    def masks(self, f: Formula) -> tuple[int, int]:
        """(models of f, models of ~f) as bitmasks over the universe."""
        if isinstance(f, Atom):
            try:
                return self.atom_masks[f.name]
            except KeyError:
                raise UnknownAtom(f.name) from None
        if isinstance(f, Const):
            return (self.full, 0) if f.value else (0, self.full)
        if isinstance(f, Not):
            t, fl = self.masks(f.child)
            return fl, t
        lt, lf = self.masks(f.left)
        rt, rf = self.masks(f.right)
        if isinstance(f, Or):
            return lt | rt, lf & rf
        if isinstance(f, And):
            return lt & rt, lf | rf
        raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class ValuationSet:
    structure: Structure
    mask: int

    @classmethod
    def of(cls, s: Structure, valuations: Iterable[Valuation]) -> "ValuationSet":
        mask = 0
        for v in valuations:
            mask |= 1 << s.index_of(v)
        return cls(s, mask)

    @classmethod
    def universe(cls, s: Structure) -> "ValuationSet":
        return cls(s, s.full)

    def __contains__(self, v: Valuation) -> bool:
        return bool(self.mask >> self.structure.index_of(v) & 1)

    def __iter__(self) -> Iterator[Valuation]:
        for i in bits(self.mask):
            yield self.structure.valuation(i)

    def __len__(self):
        return popcount(self.mask)

    def __le__(self, other: "ValuationSet") -> bool:
        return self.mask & ~other.mask == 0

    def __and__(self, other: "ValuationSet") -> "ValuationSet":
        return ValuationSet(self.structure, self.mask & other.mask)

    def __or__(self, other: "ValuationSet") -> "ValuationSet":
        return ValuationSet(self.structure, self.mask | other.mask)

    def __sub__(self, other: "ValuationSet") -> "ValuationSet":
        return ValuationSet(self.structure, self.mask & ~other.mask)

    def __str__(self):
        return "{" + ", ".join(f"[{v}]" for v in self) + "}"


# --- direct queries -----------------------------------------------------------


def enumerate_valuations(s: Structure) -> list[Valuation]:
    s._check_cap()
    return [s.valuation(i) for i in range(s.size)]


def eval_formula(s: Structure, v: Valuation, f: Formula) -> TruthValue:
    """Value of ``f`` under ``v``, computed one connective at a time."""
    if isinstance(f, Atom):
        if f.name not in s.atoms:
            raise UnknownAtom(f.name)
        return v[f.name]
    if isinstance(f, Const):
        return TruthValue.T if f.value else TruthValue.F
    if isinstance(f, Not):
        return negate(eval_formula(s, v, f.child))
    a = eval_formula(s, v, f.left)
    b = eval_formula(s, v, f.right)
    return join(a, b) if isinstance(f, Or) else meet(a, b)


def satisfies(s: Structure, v: Valuation, f: Formula) -> bool:
    return eval_formula(s, v, f).has_true


def mod(s: Structure, gamma: Iterable[Formula]) -> ValuationSet:
    mask = s.full
    for f in gamma:
        mask &= s.masks(f)[0]
    return ValuationSet(s, mask)


def theory_contains(s: Structure, V: ValuationSet, f: Formula) -> bool:
    return V.mask & ~s.masks(f)[0] == 0


def theory_d_contains(s: Structure, V: ValuationSet, f: Formula) -> bool:
    t, fl = s.masks(f)
    return V.mask & ~t == 0 and V.mask & ~fl != 0


# --- clone quotient -------------------------------------------------------------


@dataclass(frozen=True)
class FormulaClass:
    """Semantic function of a formula, stored as its (true-part, false-part) masks."""

    true_mask: int
    false_mask: int
    witness: Formula = field(compare=False)

    def value_at(self, index: int) -> TruthValue:
        return TruthValue.from_bits(bool(self.true_mask >> index & 1), bool(self.false_mask >> index & 1))

    def values(self, size: int) -> tuple[TruthValue, ...]:
        return tuple(self.value_at(i) for i in range(size))


class Clone:
    """All formula classes of a structure, with the set-level operations on them.

    Class sets (theories) are ``int`` bitmasks over class indices; valuation
    sets are bitmasks over the universe.
    """

    def __init__(self, structure: Structure, classes: Sequence[FormulaClass], complete: bool):
        self.structure = structure
        self.classes = tuple(classes)
        self.complete = complete
        self.full = structure.full
        self.T = [c.true_mask for c in self.classes]
        self.F = [c.false_mask for c in self.classes]
        self.index = {(c.true_mask, c.false_mask): i for i, c in enumerate(self.classes)}
        self.all_classes = (1 << len(self.classes)) - 1
        if complete:
            self.neg = [self.index[fl, t] for t, fl in zip(self.T, self.F)]
        self._theory: dict[int, int] = {}
        self._theory_f: dict[int, int] = {}
        self._models: dict[int, int] = {}
        self._disj: dict[tuple[int, int], int] = {}

    def __len__(self):
        return len(self.classes)

    def require_complete(self):
        if not self.complete:
            raise IncompleteClone(
                f"clone of {self.structure.kind} over {self.structure.atoms} stopped at the cap "
                f"({len(self.classes)} classes); this operation needs the full quotient"
            )

    def class_of(self, f: Formula) -> int:
        key = self.structure.masks(f)
        try:
            return self.index[key]
        except KeyError:
            self.require_complete()
            raise

    def witness(self, i: int) -> Formula:
        return self.classes[i].witness

    def disj(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._disj.get(key)
        if r is None:
            r = self.index[self.T[i] | self.T[j], self.F[i] & self.F[j]]
            self._disj[key] = r
        return r

    def theory(self, vmask: int) -> int:
        """Classes satisfied throughout ``vmask``."""
        r = self._theory.get(vmask)
        if r is None:
            r = 0
            for i, t in enumerate(self.T):
                if vmask & ~t == 0:
                    r |= 1 << i
            self._theory[vmask] = r
        return r

    def theory_f(self, vmask: int) -> int:
        """Classes whose negation is satisfied throughout ``vmask``."""
        r = self._theory_f.get(vmask)
        if r is None:
            r = 0
            for i, fl in enumerate(self.F):
                if vmask & ~fl == 0:
                    r |= 1 << i
            self._theory_f[vmask] = r
        return r

    def theory_d(self, vmask: int) -> int:
        return self.theory(vmask) & ~self.theory_f(vmask)

    def models(self, cmask: int) -> int:
        """Intersection of the models of every class in ``cmask``."""
        r = self._models.get(cmask)
        if r is None:
            r = self.full
            for i in bits(cmask):
                r &= self.T[i]
            self._models[cmask] = r
        return r

    def negations(self, cmask: int) -> int:
        out = 0
        for i in bits(cmask):
            out |= 1 << self.neg[i]
        return out

    @cached_property
    def definable(self) -> tuple[int, ...]:
        """The definable family, ascending by mask."""
        self.require_complete()
        family = {self.full}
        for t in sorted(set(self.T)):
            family |= {m & t for m in family}
        return tuple(sorted(family))

    @cached_property
    def definable_set(self) -> frozenset[int]:
        return frozenset(self.definable)

    @cached_property
    def definable_index(self) -> dict[int, int]:
        return {V: i for i, V in enumerate(self.definable)}

    @cached_property
    def _both_masks(self) -> tuple[int, ...]:
        both = {t & fl for t, fl in zip(self.T, self.F)}
        # only maximal ones matter for the subset test
        return tuple(b for b in both if not any(b != o and b & ~o == 0 for o in both))

    def is_coherent(self, vmask: int) -> bool:
        self.require_complete()
        return all(vmask & ~b != 0 for b in self._both_masks)

    def generators(self, vmask: int) -> list[Formula]:
        """A short list of class witnesses whose models intersect to ``vmask``.

        ``vmask`` must be definable; the empty list stands for the universe.
        """
        if vmask == self.full:
            return []
        th = [i for i in bits(self.theory(vmask))]
        th.sort(key=lambda i: (popcount(self.T[i]), i))
        out, cur = [], self.full
        for i in th:
            if cur & ~self.T[i]:
                out.append(self.witness(i))
                cur &= self.T[i]
                if cur == vmask:
                    break
        if cur != vmask:
            raise ValueError("valuation set is not definable")
        return out

    def info(self) -> dict:
        return {
            "structure": self.structure.describe(),
            "universe": self.structure.size,
            "classes": len(self.classes),
            "complete": self.complete,
        }


def compute_clone(s: Structure, cap: int = DEFAULT_CLONE_CAP) -> Clone:
    """Least set of formula classes containing constants and atoms, closed under ~, |, &."""
    if cap <= 0:
        raise ValueError("clone cap must be positive")
    full = s.full
    seen: dict[tuple[int, int], Formula] = {}
    queue: deque[tuple[int, int]] = deque()

    def add(key, witness) -> bool:
        if key not in seen:
            seen[key] = witness
            queue.append(key)
        return len(seen) > cap

    over = False
    for key, w in [((0, full), Const(False)), ((full, 0), Const(True))] + [
        (s.atom_masks[a], Atom(a)) for a in s.atoms
    ]:
        over = add(key, w) or over
    processed: list[tuple[int, int]] = []
    while queue and not over:
        k = queue.popleft()
        processed.append(k)
        kt, kf = k
        wk = seen[k]
        over = add((kf, kt), Not(wk))
        for j in processed:
            if over:
                break
            jt, jf = j
            wj = seen[j]
            over = add((jt | kt, jf & kf), Or(wj, wk)) or add((jt & kt, jf | kf), And(wj, wk))
    complete = not over and not queue
    size = s.size
    classes = [FormulaClass(t, fl, w) for (t, fl), w in seen.items()]
    if complete:
        classes.sort(key=lambda c: _value_key(c, size))
    return Clone(s, classes, complete)


def _value_key(c: FormulaClass, size: int) -> tuple[int, ...]:
    return tuple(VALUE_ORDER.index(c.value_at(i)) for i in range(size))


def definable_family(s: Structure, clone: Clone) -> list[ValuationSet]:
    return [ValuationSet(s, m) for m in clone.definable]


def is_coherent_set(s: Structure, V: ValuationSet, clone: Clone) -> bool:
    return clone.is_coherent(V.mask)


# --- assumptions ------------------------------------------------------------------


@dataclass
class AssumptionResult:
    name: str
    holds: bool
    counterexample: dict | None = None
    note: str = ""

    def to_json(self) -> dict:
        return {"assumption": self.name, "holds": self.holds, "counterexample": self.counterexample,
                "note": self.note}


def check_assumptions(s: Structure, clone: Clone) -> dict[str, AssumptionResult]:
    """Decide (A0)-(A4) by exhaustive search over the clone and the definable family."""
    clone.require_complete()
    out = {}
    everything = clone.models(clone.all_classes)
    out["A0"] = AssumptionResult(
        "A0", everything == 0,
        None if everything == 0 else {"models_of_all_formulas": [str(v) for v in ValuationSet(s, everything)]},
    )
    out["A1"] = AssumptionResult("A1", True, note=f"{s.size} valuations")
    out["A2"] = _check_a2(s, clone)
    out["A3"] = _check_a3(s, clone, full_list=True)
    out["A4"] = _check_a3(s, clone, full_list=False)
    return out


def _check_a2(s: Structure, clone: Clone) -> AssumptionResult:
    T, F = clone.T, clone.F
    # largest sets first so that the empty premise set is tried before anything else
    for V in sorted(clone.definable, reverse=True):
        for a in range(len(clone)):
            if V & ~T[a] == 0 or V & ~F[a] == 0:
                continue
            if V & T[a] & ~F[a] == 0:
                return AssumptionResult("A2", False, {
                    "gamma": [str(g) for g in clone.generators(V)],
                    "alpha": str(clone.witness(a)),
                })
    return AssumptionResult("A2", True)


def _check_a3(s: Structure, clone: Clone, full_list: bool) -> AssumptionResult:
    name = "A3" if full_list else "A4"
    T, F = clone.T, clone.F
    n = len(clone)
    for a in range(n):
        if full_list and T[clone.neg[clone.neg[a]]] != T[a]:
            return AssumptionResult(name, False, {"law": "double negation", "alpha": str(clone.witness(a))})
        for b in range(n):
            d = clone.disj(a, b)
            checks = [("disjunction", T[d] == T[a] | T[b])]
            if full_list:
                c = clone.index[T[a] & T[b], F[a] | F[b]]
                na, nb = clone.neg[a], clone.neg[b]
                checks += [
                    ("conjunction", T[c] == T[a] & T[b]),
                    ("negated disjunction", T[clone.neg[d]] == T[na] & T[nb]),
                    ("negated conjunction", T[clone.neg[c]] == T[na] | T[nb]),
                ]
            for law, ok in checks:
                if not ok:
                    return AssumptionResult(name, False, {
                        "law": law, "alpha": str(clone.witness(a)), "beta": str(clone.witness(b))})
    return AssumptionResult(name, True)
