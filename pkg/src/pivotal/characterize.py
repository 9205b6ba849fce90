"""Conditions (|~0)-(|~12) on finite relation tables, and exhaustive or sampled
verification of the representation theorems built from them.

A relation under test is a table from the definable family to sets of
formula classes: ``table[i]`` is the consequence set of any premise set whose
models are ``clone.definable[i]``.  Premise sets are quantified through the
representative ``Th(V)`` (the largest premise set with models ``V``), and
formulas through clone classes.  Every condition set checked here contains
(|~0), (|~4) or (|~11), each of which forces a relation to factor through the
models of its premises and through formula classes; pivotal relations factor by
definition.  So restricting attention to such tables drops only relations that
sit on neither side of any equivalence being verified.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from pivotal import choice
from pivotal.consequence import h_stages
from pivotal.semantics import CapExceeded, Clone, Structure, bits, compute_clone, popcount, submasks

CONDITION_IDS = tuple(f"c{i}" for i in range(13))
CONDITION_NAMES = {cid: f"(|~{cid[1:]})" for cid in CONDITION_IDS}

SOUNDNESS_NOTE = (
    "Tables range over maps from definable sets to sets of formula classes. Each condition set "
    "verified contains (|~0), (|~4) or (|~11), which force a relation to factor through the models "
    "of its premises and through formula classes, and pivotal relations factor by definition; so "
    "the restriction only drops relations on neither side of the equivalence."
)
SAMPLED_NOTE = "sampled completeness: the relation space is too large to enumerate"

DEFAULT_ENUM_CAP = 2**20
DEFAULT_SAMPLES = 10_000
MAX_VERIFY_UNIVERSE = 16


class AssumptionNotMet(ValueError):
    pass


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Counterexample:
    gamma: int | None = None
    delta: int | None = None
    alpha: int | None = None
    beta: int | None = None

    def describe(self, clone: Clone) -> dict:
        out = {}
        for name in ("gamma", "delta"):
            V = getattr(self, name)
            if V is not None:
                out[name] = [str(f) for f in clone.generators(V)]
        for name in ("alpha", "beta"):
            i = getattr(self, name)
            if i is not None:
                out[name] = str(clone.witness(i))
        return out


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    holds: bool
    counterexample: Counterexample | None = None

    def describe(self, clone: Clone) -> dict:
        return {
            "condition": CONDITION_NAMES[self.condition],
            "holds": self.holds,
            "counterexample": self.counterexample.describe(clone) if self.counterexample else None,
        }


class RelationUnderTest:
    """A consequence relation given by its consequence set on each definable set."""

    def __init__(self, clone: Clone, table: Sequence[int]):
        clone.require_complete()
        self.clone = clone
        self.domain = clone.definable
        if len(table) != len(self.domain):
            raise ValueError("table must have one entry per definable set")
        self.table = tuple(table)
        self.mc = [clone.models(c) for c in self.table]
        self.x = [V & m for V, m in zip(self.domain, self.mc)]
        self._h: list[int] | None = None

    @classmethod
    def from_pivot(cls, clone: Clone, pivot: int, discriminative: bool = False) -> "RelationUnderTest":
        th = clone.theory_d if discriminative else clone.theory
        return cls(clone, [th(V & pivot) for V in clone.definable])

    @classmethod
    def from_choice(cls, clone: Clone, mu: Callable[[int], int],
                    discriminative: bool = False) -> "RelationUnderTest":
        th = clone.theory_d if discriminative else clone.theory
        return cls(clone, [th(mu(V)) for V in clone.definable])

    def conclusions(self, V: int) -> int:
        return self.table[self.clone.definable_index[V]]

    @property
    def h(self) -> list[int]:
        if self._h is None:
            out = []
            for V, c in zip(self.domain, self.table):
                total = 0
                for st in h_stages(self.clone, V, c):
                    total |= st
                out.append(total)
            self._h = out
        return self._h

    @property
    def mh(self) -> list[int]:
        return [self.clone.models(h) for h in self.h]

    def keep_set(self, with_h: bool = False) -> int:
        """Valuations that survive every definable set containing them."""
        keep = self.clone.full
        mh = self.mh if with_h else None
        for i, V in enumerate(self.domain):
            image = self.mc[i] & mh[i] if with_h else self.mc[i]
            keep &= ~V | image
        return keep & self.clone.full

    def check(self, cid: str) -> ConditionReport:
        if cid not in _FAST:
            raise KeyError(f"unknown condition {cid!r}")
        cex = _FAST[cid](self)
        return ConditionReport(cid, cex is None, cex)

    def first_failure(self, cids: Iterable[str]) -> ConditionReport | None:
        for cid in cids:
            r = self.check(cid)
            if not r.holds:
                return r
        return None


def check_condition(cid: str, rel: RelationUnderTest) -> ConditionReport:
    return rel.check(cid)


# --- fast route: bitmask evaluation over the whole table ---------------------------


def _c0(rel):
    c = rel.clone
    ths = [c.theory(V) for V in rel.domain]
    for i, j in product(range(len(rel.domain)), repeat=2):
        if ths[i] == ths[j] and rel.table[i] != rel.table[j]:
            return Counterexample(gamma=rel.domain[i], delta=rel.domain[j])
    return None


def _c1(rel):
    for V, C, M in zip(rel.domain, rel.table, rel.mc):
        if rel.clone.theory(M) != C:
            return Counterexample(gamma=V)
    return None


def _c2(rel):
    for V, C in zip(rel.domain, rel.table):
        missing = rel.clone.theory(V) & ~C
        if missing:
            return Counterexample(gamma=V, alpha=_low(missing))
    return None


def _c3(rel):
    c = rel.clone
    for Vg, Cg in zip(rel.domain, rel.table):
        for Vd, Md in zip(rel.domain, rel.mc):
            missing = Cg & ~c.theory(Md & Vg)
            if missing:
                return Counterexample(gamma=Vg, delta=Vd, alpha=_low(missing))
    return None


def _c4(rel):
    keep = rel.keep_set()
    for V, C in zip(rel.domain, rel.table):
        if rel.clone.theory(V & keep) != C:
            return Counterexample(gamma=V)
    return None


def _c5(rel):
    if rel.clone.full & ~rel.keep_set() not in rel.clone.definable_set:
        return Counterexample()
    return None


def _c6(rel):
    c = rel.clone
    for V, C, X in zip(rel.domain, rel.table, rel.x):
        for b in bits(c.theory(X) & ~C):
            bad = c.theory_f(X & c.F[b]) & C
            if bad:
                return Counterexample(gamma=V, alpha=_low(bad), beta=b)
    return None


def _c7(rel):
    c = rel.clone
    for V, C, X in zip(rel.domain, rel.table, rel.x):
        for a in bits(c.theory(X) & ~C):
            for b in bits(c.theory(X & c.F[a]) & ~C):
                if C >> c.disj(a, b) & 1:
                    return Counterexample(gamma=V, alpha=a, beta=b)
    return None


def _c8(rel):
    c = rel.clone
    for V, C, X in zip(rel.domain, rel.table, rel.x):
        bad = C & c.theory_f(X)
        if bad:
            return Counterexample(gamma=V, alpha=_low(bad))
    return None


def _c9(rel):
    c = rel.clone
    h, mh = rel.h, rel.mh
    for i, Vg in enumerate(rel.domain):
        need = rel.table[i] | h[i]
        for j, Vd in enumerate(rel.domain):
            missing = need & ~c.theory(rel.x[j] & mh[j] & Vg)
            if missing:
                return Counterexample(gamma=Vg, delta=Vd, alpha=_low(missing))
    return None


def _c10(rel):
    c = rel.clone
    for V, C, M in zip(rel.domain, rel.table, rel.mc):
        if not c.is_coherent(V):
            continue
        if not c.is_coherent(M) or c.theory(V) & ~C or c.theory(M) != C:
            return Counterexample(gamma=V)
    return None


def _c11(rel):
    c = rel.clone
    keep = rel.keep_set(with_h=True)
    for V, X, MH in zip(rel.domain, rel.x, rel.mh):
        if c.theory(X & MH) != c.theory(V & keep):
            return Counterexample(gamma=V)
    return None


def _c12(rel):
    if rel.clone.full & ~rel.keep_set(with_h=True) not in rel.clone.definable_set:
        return Counterexample()
    return None


_FAST = {"c0": _c0, "c1": _c1, "c2": _c2, "c3": _c3, "c4": _c4, "c5": _c5, "c6": _c6,
         "c7": _c7, "c8": _c8, "c9": _c9, "c10": _c10, "c11": _c11, "c12": _c12}


# --- direct route: one instance at a time with plain sets ---------------------------


class _Direct:
    """Evaluates a single instance of a condition straight from the definitions."""

    def __init__(self, rel: RelationUnderTest):
        self.rel = rel
        self.c = rel.clone
        self.n = len(rel.clone)
        self.full = rel.clone.full

    def th(self, V: int) -> set[int]:
        return {g for g in range(self.n) if V & ~self.c.T[g] == 0}

    def mod(self, S: Iterable[int]) -> int:
        m = self.full
        for g in S:
            m &= self.c.T[g]
        return m

    def neg(self, g: int) -> int:
        return self.c.index[self.c.F[g], self.c.T[g]]

    def disj(self, a: int, b: int) -> int:
        return self.c.index[self.c.T[a] | self.c.T[b], self.c.F[a] & self.c.F[b]]

    def consistent(self, V: int) -> bool:
        th = self.th(V)
        return not any(self.neg(g) in th for g in th)

    def C(self, V: int) -> set[int]:
        return set(bits(self.rel.conclusions(V)))

    def H(self, V: int) -> set[int]:
        C = self.C(V)
        known: set[int] = set()
        while True:
            base = self.th(self.mod(self.th(V) | C | known))
            stage = {self.neg(b) for b in base - C if self.neg(b) not in base}
            if stage <= known:
                return known
            known |= stage

    def survivors(self, with_h: bool) -> int:
        keep = 0
        for v in range(self.c.structure.size):
            bit = 1 << v
            ok = True
            for W in self.rel.domain:
                if W & bit:
                    S = self.C(W) | (self.H(W) if with_h else set())
                    if not self.mod(S) & bit:
                        ok = False
                        break
            if ok:
                keep |= bit
        return keep

    def violates(self, cid: str, x: Counterexample) -> bool:
        G, Dl, a, b = x.gamma, x.delta, x.alpha, x.beta
        C = self.C(G) if G is not None else None
        base = (G & self.mod(C)) if G is not None else None
        if cid == "c0":
            return self.th(G) == self.th(Dl) and C != self.C(Dl)
        if cid == "c1":
            return C != self.th(self.mod(C))
        if cid == "c2":
            return not self.th(G) <= C
        if cid == "c3":
            return not C <= self.th(self.mod(self.C(Dl)) & G)
        if cid == "c4":
            return C != self.th(G & self.survivors(False))
        if cid == "c5":
            return self.full & ~self.survivors(False) not in self.c.definable_set
        if cid == "c6":
            return (b in self.th(base) - C and self.neg(a) in self.th(base & self.c.T[self.neg(b)])
                    and a in C)
        if cid == "c7":
            return (a in self.th(base) - C and b in self.th(base & self.c.T[self.neg(a)]) - C
                    and self.disj(a, b) in C)
        if cid == "c8":
            return a in C and self.neg(a) in self.th(base)
        if cid == "c9":
            need = C | self.H(G)
            have = self.th(self.mod(self.th(Dl) | self.C(Dl) | self.H(Dl)) & G)
            return not need <= have
        if cid == "c10":
            if not self.consistent(G):
                return False
            return not self.consistent(self.mod(C)) or not self.th(G) <= C or self.th(self.mod(C)) != C
        if cid == "c11":
            lhs = self.th(self.mod(self.th(G) | C | self.H(G)))
            return lhs != self.th(G & self.survivors(True))
        if cid == "c12":
            return self.full & ~self.survivors(True) not in self.c.definable_set
        raise KeyError(cid)


def recheck(rel: RelationUnderTest, report: ConditionReport) -> bool:
    """True when the report's counterexample is a genuine violation."""
    if report.holds:
        return False
    return _Direct(rel).violates(report.condition, report.counterexample)


_SHAPES = {
    "c0": ("gamma", "delta"), "c1": ("gamma",), "c2": ("gamma",), "c3": ("gamma", "delta"),
    "c4": ("gamma",), "c5": (), "c6": ("gamma", "alpha", "beta"), "c7": ("gamma", "alpha", "beta"),
    "c8": ("gamma", "alpha"), "c9": ("gamma", "delta"), "c10": ("gamma",), "c11": ("gamma",), "c12": (),
}


def holds_directly(rel: RelationUnderTest, cid: str) -> bool:
    """Decide a condition by trying every instance through the direct route."""
    direct = _Direct(rel)
    ranges = {"gamma": rel.domain, "delta": rel.domain,
              "alpha": range(len(rel.clone)), "beta": range(len(rel.clone))}
    shape = _SHAPES[cid]
    for values in product(*(ranges[k] for k in shape)):
        if direct.violates(cid, Counterexample(**dict(zip(shape, values)))):
            return False
    return True


# --- proof constructions -------------------------------------------------------------


def _choice_problems(clone: Clone, table: dict[int, int]) -> list[str]:
    problems = []
    for V, chosen in table.items():
        if chosen & ~V:
            problems.append("constructed map is not a choice function")
            break
    return problems


def _sc_problems(mu: choice.ChoiceFunction) -> list[str]:
    return [] if choice.is_strongly_coherent(mu) else ["constructed choice function is not SC"]


def reconstruct_dp(rel: RelationUnderTest, **_) -> list[str]:
    """mu(Mod G) = Mod(C(G)); must be a DP SC choice function regenerating the table."""
    c = rel.clone
    table = dict(zip(rel.domain, rel.mc))
    problems = _choice_problems(c, table)
    if problems:
        return problems
    mu = choice.ChoiceFunction(c.structure.size, table)
    problems += _sc_problems(mu)
    if not choice.is_definability_preserving(mu, c.definable_set):
        problems.append("constructed choice function is not DP")
    if any(c.theory(mu(V)) != C for V, C in zip(rel.domain, rel.table)):
        problems.append("constructed choice function does not regenerate the relation")
    return problems


def reconstruct_general(rel: RelationUnderTest, uc: bool = False, **_) -> list[str]:
    """nu of f(Mod G) = Mod(C(G)); must be SC (and UC) and regenerate the table."""
    c = rel.clone
    mu = choice.nu(dict(zip(rel.domain, rel.mc)), c.structure.size)
    problems = _sc_problems(mu)
    if any(c.theory(mu(V)) != C for V, C in zip(rel.domain, rel.table)):
        problems.append("nu_f does not regenerate the relation")
    if uc and not choice.is_universe_codefinable(mu, c.definable_set):
        problems.append("nu_f is not UC")
    return problems


def _disc_base(rel: RelationUnderTest) -> dict[int, int]:
    return {V: X & MH for V, X, MH in zip(rel.domain, rel.x, rel.mh)}


def reconstruct_disc_dp(rel: RelationUnderTest, cp: bool = False, **_) -> list[str]:
    """mu(Mod G) = Mod(G, C(G), H(G)); DP SC (and CP), regenerating through Th^d."""
    c = rel.clone
    mu = choice.ChoiceFunction(c.structure.size, _disc_base(rel))
    problems = _sc_problems(mu)
    if not choice.is_definability_preserving(mu, c.definable_set):
        problems.append("constructed choice function is not DP")
    if cp and not choice.is_coherency_preserving(mu, c.definable_set, c.is_coherent):
        problems.append("constructed choice function is not CP")
    if any(c.theory_d(mu(V)) != C for V, C in zip(rel.domain, rel.table)):
        problems.append("constructed choice function does not regenerate the relation")
    return problems


def reconstruct_disc(rel: RelationUnderTest, cp: bool = False, uc: bool = False, **_) -> list[str]:
    """nu of f(Mod G) = Mod(G, C(G), H(G)); SC (CP, UC as asked), regenerating through Th^d."""
    c = rel.clone
    mu = choice.nu(_disc_base(rel), c.structure.size)
    problems = _sc_problems(mu)
    if cp and not choice.is_coherency_preserving(mu, c.definable_set, c.is_coherent):
        problems.append("nu_f is not CP")
    if uc and not choice.is_universe_codefinable(mu, c.definable_set):
        problems.append("nu_f is not UC")
    if any(c.theory_d(mu(V)) != C for V, C in zip(rel.domain, rel.table)):
        problems.append("nu_f does not regenerate the relation")
    return problems


# --- pivot families ------------------------------------------------------------------


def pivot_is_dp(clone: Clone, I: int) -> bool:
    return I in clone.definable_set


def pivot_is_uc(clone: Clone, I: int) -> bool:
    return clone.full & ~I in clone.definable_set


def pivot_is_cp(clone: Clone, I: int) -> bool:
    return all(clone.is_coherent(V & I) for V in clone.definable if clone.is_coherent(V))


@dataclass(frozen=True)
class PartRule:
    part: int
    conditions: tuple[str, ...]
    requires: tuple[str, ...]
    pivot_props: tuple[str, ...]
    reconstruct: Callable[..., list[str]]

    def pivot_ok(self, clone: Clone, I: int) -> bool:
        tests = {"DP": pivot_is_dp, "UC": pivot_is_uc, "CP": pivot_is_cp}
        return all(tests[p](clone, I) for p in self.pivot_props)

    def rebuild(self, rel: RelationUnderTest) -> list[str]:
        return self.reconstruct(rel, cp="CP" in self.pivot_props, uc="UC" in self.pivot_props)


def _c(*nums: int) -> tuple[str, ...]:
    return tuple(f"c{n}" for n in nums)


PROPOSITIONS: dict[str, tuple[str, list[PartRule]]] = {
    "rep-dp": ("plain", [
        PartRule(0, _c(0, 1, 2, 3), (), ("DP",), reconstruct_dp),
    ]),
    "rep-general": ("plain", [
        PartRule(0, _c(4), (), (), reconstruct_general),
        PartRule(1, _c(4, 5), ("A0",), ("UC",), reconstruct_general),
    ]),
    "rep-disc-dp": ("discriminative", [
        PartRule(0, _c(0, 6, 7, 8, 9, 10), ("A3", "A1"), ("CP", "DP"), reconstruct_disc_dp),
        PartRule(1, _c(0, 6, 7, 8, 9), ("A3", "A1", "A2"), ("DP",), reconstruct_disc_dp),
    ]),
    "rep-disc": ("discriminative", [
        PartRule(0, _c(0, 6, 7, 8, 10, 11), ("A3", "A1"), ("CP",), reconstruct_disc),
        PartRule(1, _c(0, 6, 7, 8, 10, 11, 12), ("A0", "A3", "A1"), ("CP", "UC"), reconstruct_disc),
        PartRule(2, _c(0, 6, 7, 8, 11), ("A3", "A1", "A2"), (), reconstruct_disc),
        PartRule(3, _c(0, 6, 7, 8, 11, 12), ("A0", "A3", "A1", "A2"), ("UC",), reconstruct_disc),
    ]),
}

ALL_PROPOSITIONS = ("mupp",) + tuple(PROPOSITIONS) + ("xlogic",)


# --- reports ---------------------------------------------------------------------------


@dataclass
class VerifyReport:
    proposition: str
    structure: dict | list
    mode: str = "exhaustive"
    candidates: int = 0
    failures: list[dict] = field(default_factory=list)
    runtime_ms: int | None = None
    seed: int = 0
    parts: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    failure_count: int = 0

    max_recorded = 100

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def fail(self, **info):
        self.failure_count += 1
        if len(self.failures) < self.max_recorded:
            self.failures.append(info)

    def to_json(self) -> dict:
        return {
            "proposition": self.proposition,
            "structure": self.structure,
            "mode": self.mode,
            "candidates": self.candidates,
            "failures": self.failures,
            "runtime_ms": self.runtime_ms,
            "seed": self.seed,
            "failure_count": self.failure_count,
            "parts": self.parts,
            "notes": self.notes,
        }

    def summary(self) -> str:
        verdict = "OK" if self.ok else "FAIL"
        where = self.structure if isinstance(self.structure, list) else [self.structure]
        names = "; ".join(f"{s['kind']}[{','.join(s['atoms'])}]" if isinstance(s, dict) else str(s)
                          for s in where)
        return (f"{verdict} {self.proposition} on {names}: {self.mode}, "
                f"{self.candidates} candidates, {self.failure_count} failures")


def _timed(report: VerifyReport, start: float, timing: bool) -> VerifyReport:
    report.runtime_ms = round((time.perf_counter() - start) * 1000) if timing else None
    return report


def _require(clone: Clone, needed: Iterable[str]) -> list[str]:
    from pivotal.semantics import check_assumptions

    needed = list(needed)
    if not needed:
        return []
    results = check_assumptions(clone.structure, clone)
    return [a for a in needed if not results[a].holds]


def select_parts(proposition: str, clone: Clone, parts: Sequence[int] | None) -> tuple[list[PartRule], list[str]]:
    """Parts to run; explicitly requested parts must have their assumptions met."""
    _, rules = PROPOSITIONS[proposition]
    notes = []
    chosen = []
    for rule in rules:
        if parts is not None and rule.part not in parts:
            continue
        missing = _require(clone, rule.requires)
        if missing:
            msg = f"part ({rule.part}) refused: " + ", ".join(f"({a}) not satisfied" for a in missing)
            if parts is not None:
                raise AssumptionNotMet(msg)
            notes.append(msg)
            continue
        chosen.append(rule)
    if parts is not None:
        unknown = set(parts) - {s.part for s in rules}
        if unknown:
            raise ValueError(f"{proposition} has no part(s) {sorted(unknown)}")
    return chosen, notes


def _guard_universe(clone: Clone):
    if clone.structure.size > MAX_VERIFY_UNIVERSE:
        raise CapExceeded(
            f"verification enumerates all pivots; {clone.structure.size} valuations is above "
            f"the limit of {MAX_VERIFY_UNIVERSE}"
        )


def _candidate_tables(clone: Clone, discriminative: bool, enum_cap: int, samples: int,
                      rng: random.Random) -> tuple[str, Iterator[tuple[int, ...]], int]:
    D = clone.definable
    n = len(clone)
    space = (1 << n) ** len(D)
    if space <= enum_cap:
        return "exhaustive", product(range(1 << n), repeat=len(D)), space

    th = clone.theory_d if discriminative else clone.theory
    tables: dict[tuple[int, ...], None] = {}
    pivot_tables = [tuple(th(V & I) for V in D) for I in range(1 << clone.structure.size)]
    for t in pivot_tables:
        tables[t] = None
    # near misses: one class toggled in one entry of a pivot-induced table
    for t in pivot_tables:
        for _ in range(2):
            k = rng.randrange(len(D))
            perturbed = list(t)
            perturbed[k] ^= 1 << rng.randrange(n)
            tables[tuple(perturbed)] = None
    structured = 1
    for V in D:
        structured *= 1 << popcount(V)
    if structured <= enum_cap:
        for ws in product(*(list(submasks(V)) for V in D)):
            tables[tuple(th(W) for W in ws)] = None
    else:
        for _ in range(samples):
            tables[tuple(th(_random_submask(V, rng)) for V in D)] = None
    for _ in range(samples):
        tables[tuple(rng.getrandbits(n) for _ in D)] = None
    return "sampled", iter(tables), len(tables)


def _random_submask(V: int, rng: random.Random) -> int:
    return V & rng.getrandbits(max(V.bit_length(), 1))


def verify_representation(proposition: str, clone: Clone, parts: Sequence[int] | None = None,
                          enum_cap: int = DEFAULT_ENUM_CAP, samples: int = DEFAULT_SAMPLES,
                          seed: int = 0, timing: bool = True) -> VerifyReport:
    """Forward over pivots, backward over candidate tables, with a pivot-existence oracle.

    Forward: every pivot of the part's family induces a table passing the
    part's conditions.  Backward: for every candidate table, passing the
    conditions must coincide with being induced by some pivot of the family
    (brute force over all pivots), and every passer must be regenerated by
    the construction used in the proof.  Counterexamples produced by failing
    candidates are re-evaluated instance by instance.
    """
    start = time.perf_counter()
    clone.require_complete()
    _guard_universe(clone)
    mode_name, _ = PROPOSITIONS[proposition]
    disc = mode_name == "discriminative"
    rules, notes = select_parts(proposition, clone, parts)
    report = VerifyReport(proposition, clone.structure.describe(), seed=seed, notes=[SOUNDNESS_NOTE] + notes)
    rng = random.Random(seed)
    pivots = range(1 << clone.structure.size)

    induced: dict[int, set[tuple[int, ...]]] = {}
    for rule in rules:
        family = [I for I in pivots if rule.pivot_ok(clone, I)]
        forward_fail = 0
        induced[rule.part] = set()
        for I in family:
            rel = RelationUnderTest.from_pivot(clone, I, disc)
            induced[rule.part].add(rel.table)
            bad = rel.first_failure(rule.conditions)
            if bad is not None:
                forward_fail += 1
                report.fail(part=rule.part, kind="forward", pivot=_mask_list(I),
                            **bad.describe(clone))
        report.parts.append({
            "part": rule.part,
            "conditions": [CONDITION_NAMES[c] for c in rule.conditions],
            "pivot_family": list(rule.pivot_props) or ["all"],
            "forward": {"pivots": len(family), "failures": forward_fail},
            "backward": {"candidates": 0, "passers": 0, "failures": 0},
            "distinct_induced_tables": len(induced[rule.part]),
        })

    if rules:
        mode, tables, count = _candidate_tables(clone, disc, enum_cap, samples, rng)
        report.mode = mode
        if mode == "sampled":
            report.notes.append(SAMPLED_NOTE)
        for table in tables:
            rel = RelationUnderTest(clone, table)
            for rule, part in zip(rules, report.parts):
                back = part["backward"]
                back["candidates"] += 1
                bad = rel.first_failure(rule.conditions)
                passes = bad is None
                oracle = table in induced[rule.part]
                before = report.failure_count
                if bad is not None and not recheck(rel, bad):
                    report.fail(part=rule.part, kind="unconfirmed counterexample",
                                table=list(table), **bad.describe(clone))
                if passes != oracle:
                    report.fail(part=rule.part, kind="verdict mismatch", table=list(table),
                                conditions_hold=passes, pivot_exists=oracle)
                if passes:
                    back["passers"] += 1
                    problems = rule.rebuild(rel)
                    if problems:
                        report.fail(part=rule.part, kind="reconstruction", table=list(table),
                                    problems=problems)
                back["failures"] += report.failure_count - before
        report.candidates = count
    return _timed(report, start, timing)


def _mask_list(mask: int) -> list[int]:
    return list(bits(mask))


def verify_rep_dp(clone: Clone, **kw) -> VerifyReport:
    return verify_representation("rep-dp", clone, **kw)


def verify_rep_general(clone: Clone, **kw) -> VerifyReport:
    return verify_representation("rep-general", clone, **kw)


def verify_rep_disc_dp(clone: Clone, **kw) -> VerifyReport:
    return verify_representation("rep-disc-dp", clone, **kw)


def verify_rep_disc(clone: Clone, **kw) -> VerifyReport:
    return verify_representation("rep-disc", clone, **kw)


# --- pivot representation of choice functions --------------------------------------


def _pivot_exists(mu: choice.ChoiceFunction, pivots: Iterable[int]) -> bool:
    return any(all(chosen == V & I for V, chosen in mu.table.items()) for I in pivots)


def verify_mupp(max_universe: int = 3, structures: Sequence[Structure] | None = None,
                seed: int = 0, timing: bool = True) -> VerifyReport:
    """SC iff pivot-representable on abstract power sets; SC+DP and SC+UC on structures."""
    if max_universe > 3:
        raise CapExceeded("abstract universes are enumerated up to size 3")
    start = time.perf_counter()
    if structures is None:
        structures = [Structure("classical", ("p",)), Structure("four", ("p",))]
    report = VerifyReport("mupp", ["abstract"] + [s.describe() for s in structures], seed=seed)

    for n in range(max_universe + 1):
        before, count = report.failure_count, 0
        for mu in choice.all_choice_functions(choice.power_set(n), n):
            count += 1
            sc = choice.is_strongly_coherent(mu)
            exists = _pivot_exists(mu, range(1 << n))
            rep = choice.pivot_representation(mu)
            if sc != exists:
                report.fail(part=0, universe=n, kind="verdict mismatch", table=_table_json(mu),
                            strongly_coherent=sc, pivot_exists=exists)
            if sc and (rep is None or any(c != V & rep for V, c in mu.table.items())):
                report.fail(part=0, universe=n, kind="canonical pivot does not represent",
                            table=_table_json(mu))
            if not sc and rep is not None:
                report.fail(part=0, universe=n, kind="representation for non-SC function",
                            table=_table_json(mu))
        report.candidates += count
        report.parts.append({"part": 0, "universe": n, "choice_functions": count,
                             "failures": report.failure_count - before})

    for s in structures:
        clone = compute_clone(s)
        clone.require_complete()
        D = clone.definable
        Dset = clone.definable_set
        U = clone.full
        pivots = range(1 << s.size)
        dp_pivots = [I for I in pivots if I in Dset]
        uc_pivots = [I for I in pivots if U & ~I in Dset]
        before, count = report.failure_count, 0
        for mu in choice.all_choice_functions(D, s.size):
            count += 1
            sc = choice.is_strongly_coherent(mu)
            dp = choice.is_definability_preserving(mu, Dset)
            uc = choice.is_universe_codefinable(mu, Dset)
            if (sc and dp) != _pivot_exists(mu, dp_pivots):
                report.fail(part=1, structure=s.describe(), kind="verdict mismatch", table=_table_json(mu))
            if (sc and uc) != _pivot_exists(mu, uc_pivots):
                report.fail(part=2, structure=s.describe(), kind="verdict mismatch", table=_table_json(mu))
        report.candidates += count
        report.parts.append({"part": [1, 2], "structure": s.describe(), "definable_sets": len(D),
                             "choice_functions": count, "failures": report.failure_count - before})
    return _timed(report, start, timing)


def _table_json(mu: choice.ChoiceFunction) -> list[list[int]]:
    return [[V, c] for V, c in mu.table.items()]


# --- pertinence relations ----------------------------------------------------------------


def verify_xlogic(clone: Clone, seed: int = 0, timing: bool = True) -> VerifyReport:
    """Closed pertinence relations coincide with UC pivotal relations, both ways."""
    from pivotal.consequence import PertinenceRelation

    start = time.perf_counter()
    clone.require_complete()
    _guard_universe(clone)
    missing = _require(clone, ["A4"])
    if missing:
        raise AssumptionNotMet("(A4) not satisfied")
    report = VerifyReport("xlogic", clone.structure.describe(), seed=seed, notes=[SOUNDNESS_NOTE])
    U, D, T = clone.full, clone.definable, clone.T
    n = len(clone)

    def compare(direction: str, E: int, I: int):
        rel = PertinenceRelation(clone, E)
        for V in D:
            for a in range(n):
                pert = rel.entails_mask(V, a)
                piv = V & I & ~T[a] == 0
                if pert != piv:
                    report.fail(kind="verdict mismatch", direction=direction, pivot=_mask_list(I),
                                gamma=[str(f) for f in clone.generators(V)], alpha=str(clone.witness(a)),
                                pertinence=pert, pivotal=piv)
                    return

    subsets = range(U + 1)
    for W in subsets:
        E = clone.theory(W)
        if not PertinenceRelation(clone, E).closed:
            report.fail(kind="theory not closed", W=_mask_list(W))
        I = U & ~clone.models(E)
        if not pivot_is_uc(clone, I):
            report.fail(kind="pivot not UC", W=_mask_list(W))
        compare("pertinence->pivotal", E, I)
    uc = [I for I in subsets if pivot_is_uc(clone, I)]
    for I in uc:
        compare("pivotal->pertinence", clone.theory(U & ~I), I)
    report.candidates = len(subsets) + len(uc)
    report.parts.append({"closed_pertinence_sets": len(subsets), "uc_pivots": len(uc),
                         "pairs_per_relation": len(D) * n})
    return _timed(report, start, timing)


def verify(proposition: str, structure: Structure | None = None, parts: Sequence[int] | None = None,
           clone_cap: int | None = None, **kw) -> VerifyReport:
    if proposition == "mupp":
        if parts is not None and set(parts) - {0, 1, 2}:
            raise ValueError("mupp has parts 0, 1 and 2")
        structures = [structure] if structure is not None else None
        return verify_mupp(structures=structures, seed=kw.get("seed", 0), timing=kw.get("timing", True))
    if structure is None:
        raise ValueError(f"{proposition} needs a structure")
    clone = compute_clone(structure) if clone_cap is None else compute_clone(structure, clone_cap)
    if proposition == "xlogic":
        return verify_xlogic(clone, seed=kw.get("seed", 0), timing=kw.get("timing", True))
    if proposition not in PROPOSITIONS:
        raise KeyError(f"unknown proposition {proposition!r}; expected one of {ALL_PROPOSITIONS}")
    return verify_representation(proposition, clone, parts=parts, **kw)


# --- headless property suites ---------------------------------------------------------


def property_suites(seed: int = 0, draws: int = 1000) -> list[dict]:
    """Randomized checks of nu_f SC-ness, monotonicity, supraclassicality, self-exclusion."""
    rng = random.Random(seed)
    clones = [compute_clone(Structure("classical", ("p", "q"))),
              compute_clone(Structure("j3", ("p",))),
              compute_clone(Structure("four", ("p",)))]
    results = []

    four = clones[2]
    bad = 0
    for _ in range(draws):
        f = {V: rng.getrandbits(four.structure.size) for V in four.definable}
        if not choice.is_strongly_coherent(choice.nu(f, four.structure.size)):
            bad += 1
    results.append({"suite": "nu_f strongly coherent", "draws": draws, "failures": bad})

    mono = supra = excl = 0
    for k in range(draws):
        c = clones[k % len(clones)]
        n = len(c)
        I = rng.getrandbits(c.structure.size)
        gamma = {rng.randrange(n) for _ in range(rng.randint(0, 3))}
        delta = gamma | {rng.randrange(n) for _ in range(rng.randint(0, 2))}
        Vg = c.models(sum(1 << g for g in gamma))
        Vd = c.models(sum(1 << g for g in delta))
        Cg, Cd = c.theory(Vg & I), c.theory(Vd & I)
        if Cg & ~Cd:
            mono += 1
        if c.theory(Vg) & ~Cg:
            supra += 1
        Cdisc = c.theory_d(Vg & I)
        if Cdisc & c.negations(Cdisc):
            excl += 1
    results.append({"suite": "monotonicity of plain pivotal relations", "draws": draws, "failures": mono})
    results.append({"suite": "supraclassicality of plain pivotal relations", "draws": draws, "failures": supra})
    results.append({"suite": "discriminative self-exclusion", "draws": draws, "failures": excl})
    return results
