"""Choice functions over finite universes, pivots, and the properties SC/DP/UC/CP.

Sets of valuations are bitmasks; a universe of size ``n`` is ``range(n)``.
Nothing here needs a semantic structure except where a definable family or
a coherence test is passed in, so abstract universes work directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Collection, Iterator, Mapping

from pivotal.semantics import ValuationSet, submasks


def _mask(x) -> int:
    return x.mask if isinstance(x, (ValuationSet, Pivot)) else int(x)


@dataclass(frozen=True)
class Pivot:
    mask: int
    size: int

    def __post_init__(self):
        if self.mask >> self.size:
            raise ValueError("pivot is not a subset of the universe")

    @classmethod
    def of(cls, V: ValuationSet) -> "Pivot":
        return cls(V.mask, V.structure.size)

    @property
    def universe(self) -> int:
        return (1 << self.size) - 1


def pivot_choice(I: Pivot | int, V) -> int:
    """Choose the pivot members of ``V``."""
    return _mask(V) & _mask(I)


@dataclass(frozen=True)
class ChoiceFunction:
    """An explicit table ``V -> mu(V)`` with ``mu(V)`` a subset of ``V``."""

    size: int
    table: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "table", dict(self.table))
        for V, chosen in self.table.items():
            if chosen & ~V:
                raise ValueError(f"choice law violated: mu({V:#b}) = {chosen:#b} is not a subset")

    @property
    def universe(self) -> int:
        return (1 << self.size) - 1

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(self.table)

    def __call__(self, V) -> int:
        return self.table[_mask(V)]

    @classmethod
    def from_pivot(cls, I: Pivot | int, domain: Collection[int], size: int) -> "ChoiceFunction":
        I = _mask(I)
        return cls(size, {V: V & I for V in domain})


def strong_coherence_violation(mu: ChoiceFunction) -> tuple[int, int, int] | None:
    """First ``(V, W, v)`` with ``v`` in ``mu(W) & V`` but not in ``mu(V)``."""
    for V, muV in mu.table.items():
        for W, muW in mu.table.items():
            bad = muW & V & ~muV
            if bad:
                return V, W, (bad & -bad).bit_length() - 1
    return None


def is_strongly_coherent(mu: ChoiceFunction) -> bool:
    return strong_coherence_violation(mu) is None


def is_definability_preserving(mu: ChoiceFunction, definable: Collection[int]) -> bool:
    return all(chosen in definable for V, chosen in mu.table.items() if V in definable)


def is_universe_codefinable(mu: ChoiceFunction, definable: Collection[int]) -> bool:
    U = mu.universe
    if U not in mu.table:
        raise ValueError("the universe is not in the domain")
    return U & ~mu.table[U] in definable


def is_coherency_preserving(mu: ChoiceFunction, definable: Collection[int],
                            coherent: Callable[[int], bool]) -> bool:
    return all(coherent(chosen) for V, chosen in mu.table.items() if V in definable and coherent(V))


def nu(f: Mapping[int, int], size: int) -> ChoiceFunction:
    """Keep ``v`` in ``V`` only if every domain set containing ``v`` maps to a set containing it.

    ``f`` is any map on sets; it need not satisfy the choice law.
    """
    U = (1 << size) - 1
    keep = U
    for W, fW in f.items():
        keep &= ~W | fW
    return ChoiceFunction(size, {V: V & keep for V in f})


def pivot_representation(mu: ChoiceFunction) -> int | None:
    """The canonical pivot (union of all chosen sets) when ``mu`` is SC, else None."""
    if not is_strongly_coherent(mu):
        return None
    I = 0
    for chosen in mu.table.values():
        I |= chosen
    return I


def all_choice_functions(domain: Collection[int], size: int) -> Iterator[ChoiceFunction]:
    domain = list(domain)
    for images in product(*(list(submasks(V)) for V in domain)):
        yield ChoiceFunction(size, dict(zip(domain, images)))


def power_set(size: int) -> list[int]:
    return list(range(1 << size))
