"""Finite models of proper-state spaces and their transition quantale.

A proper-state space is a finite set of states with a map assigning each
state its strongest actual property in a finite lattice. The admissible
state transitions are the union-preserving subset maps compatible with the
induced closure; under union and composition they form a quantale, and
reading each transition at the property level yields a join-preserving
propagation of properties. That reading is a quantale morphism, which
:func:`epimorphism_check` verifies on explicit samples.

Subsets of the state space are represented as bitmasks throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import IllDefined, NotMember, TooLarge
from .galois import JoinMap
from .lattice import FiniteLattice

ENUMERATION_GUARD = 4


@dataclass(frozen=True, eq=False)
class ProperStateSpace:
    """States, a property lattice, and the strongest-property assignment."""

    states: tuple[str, ...]
    lattice: FiniteLattice
    c_map: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.states)) != len(self.states):
            raise ValueError("state labels must be distinct")
        if len(self.c_map) != len(self.states):
            raise ValueError("c_map must assign a property to every state")
        for value in self.c_map:
            self.lattice.check_element(value)

    def __len__(self) -> int:
        return len(self.states)

    def mask(self, labels: Iterable[str]) -> int:
        """Bitmask of the subset named by ``labels``."""
        out = 0
        for label in labels:
            out |= 1 << self.states.index(label)
        return out

    def subset_labels(self, mask: int) -> tuple[str, ...]:
        return tuple(s for i, s in enumerate(self.states) if mask >> i & 1)

    @cached_property
    def _strongest_by_mask(self) -> tuple[int, ...]:
        out = [self.lattice.bottom]
        join2 = self.lattice.join_table
        for mask in range(1, 1 << len(self.states)):
            low = (mask & -mask).bit_length() - 1
            out.append(int(join2[out[mask & (mask - 1)], self.c_map[low]]))
        return tuple(out)

    def strongest_property(self, mask: int) -> int:
        """C(T): the join of the states' properties; C of empty is bottom."""
        return self._strongest_by_mask[mask]

    @cached_property
    def _closure_by_property(self) -> tuple[int, ...]:
        out = []
        for prop in range(len(self.lattice)):
            mask = 0
            for i, value in enumerate(self.c_map):
                if self.lattice.leq[value, prop]:
                    mask |= 1 << i
            out.append(mask)
        return tuple(out)

    def closure(self, mask: int) -> int:
        """The induced closure: every state whose property is below C(T)."""
        return self._closure_by_property[self._strongest_by_mask[mask]]

    def all_subsets(self) -> range:
        return range(1 << len(self.states))


@dataclass(frozen=True, eq=False)
class TransitionMap:
    """A union-preserving subset map, given by its images on singletons."""

    space: ProperStateSpace
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.images) != len(self.space):
            raise ValueError("need one image per state")
        full = (1 << len(self.space)) - 1
        for image in self.images:
            if image & ~full:
                raise ValueError(f"image mask {image:b} mentions unknown states")

    @classmethod
    def from_images(cls, space: ProperStateSpace,
                    images: Sequence[Iterable[str]]) -> "TransitionMap":
        return cls(space, tuple(space.mask(img) for img in images))

    def act(self, mask: int) -> int:
        out = 0
        for i in range(len(self.space)):
            if mask >> i & 1:
                out |= self.images[i]
        return out

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{s}->{{{','.join(self.space.subset_labels(img))}}}"
            for s, img in zip(self.space.states, self.images)
        )
        return f"TransitionMap({parts})"


def identity_transition(space: ProperStateSpace) -> TransitionMap:
    return TransitionMap(space, tuple(1 << i for i in range(len(space))))


def empty_transition(space: ProperStateSpace) -> TransitionMap:
    return TransitionMap(space, (0,) * len(space))


def is_member(f: TransitionMap) -> bool:
    """Closure compatibility: f(cl(T)) is contained in cl(f(T)) for all T."""
    space = f.space
    for mask in space.all_subsets():
        if f.act(space.closure(mask)) & ~space.closure(f.act(mask)):
            return False
    return True


def compose(outer: TransitionMap, inner: TransitionMap,
            check: bool = True) -> TransitionMap:
    """(outer o inner)(T) = outer(inner(T)); membership is preserved."""
    if outer.space is not inner.space and outer.space.states != inner.space.states:
        raise NotMember("transition maps act on different state spaces")
    if check and not (is_member(outer) and is_member(inner)):
        raise NotMember("can only compose closure-compatible transition maps")
    images = tuple(outer.act(inner.images[i]) for i in range(len(inner.space)))
    result = TransitionMap(inner.space, images)
    if check and not is_member(result):
        raise NotMember("composition left the quantale; closure check failed")
    return result


def union_join(maps: Sequence[TransitionMap],
               space: ProperStateSpace | None = None,
               check: bool = True) -> TransitionMap:
    """Pointwise union; the empty union is the constant-empty bottom map."""
    maps = list(maps)
    if not maps:
        if space is None:
            raise ValueError("the empty union needs an explicit state space")
        return empty_transition(space)
    if check and not all(is_member(f) for f in maps):
        raise NotMember("can only join closure-compatible transition maps")
    n = len(maps[0].space)
    images = tuple(
        int(np.bitwise_or.reduce([f.images[i] for f in maps])) for i in range(n)
    )
    return TransitionMap(maps[0].space, images)


def property_propagation(f: TransitionMap) -> JoinMap:
    """Read a transition at the property level: C(T) maps to C(f(T)).

    Well-definedness (equal strongest properties give equal images) is
    checked over all subsets; a violation raises IllDefined with a witness
    pair. The table extends to the whole lattice by sending x to
    C(f({states below x})), which is join-preserving whenever the state
    properties join-generate the lattice.
    """
    space = f.space
    lattice = space.lattice
    seen: dict[int, tuple[int, int]] = {}
    for mask in space.all_subsets():
        prop = space.strongest_property(mask)
        value = space.strongest_property(f.act(mask))
        if prop in seen and seen[prop][0] != value:
            raise IllDefined(
                "propagation is not well defined on equal-property subsets",
                witness=(space.subset_labels(seen[prop][1]),
                         space.subset_labels(mask)),
            )
        seen.setdefault(prop, (value, mask))
    table = tuple(
        space.strongest_property(f.act(space._closure_by_property[x]))
        for x in range(len(lattice))
    )
    return JoinMap(source=lattice, target=lattice, table=table)


def enumerate_members(space: ProperStateSpace,
                      max_states: int = ENUMERATION_GUARD) -> tuple[TransitionMap, ...]:
    """All closure-compatible transition maps, in a canonical order."""
    n = len(space)
    if n > max_states:
        raise TooLarge(f"enumeration guard is {max_states} states, got {n}")
    members = []
    for images in itertools.product(range(1 << n), repeat=n):
        candidate = TransitionMap(space, images)
        if is_member(candidate):
            members.append(candidate)
    return tuple(members)


@dataclass(frozen=True)
class PairFailure:
    """A law violation on a specific pair of transition maps."""

    law: str
    left: str
    right: str


@dataclass(frozen=True)
class EpimorphismReport:
    """Outcome of checking that propagation is a quantale morphism."""

    pairs: int
    failures: tuple[PairFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def epimorphism_check(space: ProperStateSpace,
                      sample: Sequence[TransitionMap]) -> EpimorphismReport:
    """Verify propagation respects composition and union on all pairs."""
    props = [property_propagation(f) for f in sample]
    prop_cache: dict[tuple[int, ...], tuple[int, ...]] = {
        f.images: p.table for f, p in zip(sample, props)
    }

    def propagation_table(f: TransitionMap) -> tuple[int, ...]:
        table = prop_cache.get(f.images)
        if table is None:
            table = property_propagation(f).table
            prop_cache[f.images] = table
        return table

    n_lattice = len(space.lattice)
    failures: list[PairFailure] = []
    for (i, f), (j, g) in itertools.product(enumerate(sample), repeat=2):
        composed = propagation_table(compose(f, g, check=False))
        expected = tuple(props[i].table[props[j].table[x]] for x in range(n_lattice))
        if composed != expected:
            failures.append(PairFailure("composition", repr(f), repr(g)))
        joined = propagation_table(union_join([f, g], check=False))
        join2 = space.lattice.join_table
        expected = tuple(
            int(join2[props[i].table[x], props[j].table[x]]) for x in range(n_lattice)
        )
        if joined != expected:
            failures.append(PairFailure("union", repr(f), repr(g)))
    return EpimorphismReport(pairs=len(sample) ** 2, failures=tuple(failures))


@dataclass(frozen=True)
class QuantaleLawReport:
    """Exhaustive law check over the full set of enumerated members."""

    members: int
    associative: bool
    left_distributive: bool
    right_distributive: bool
    union_closed: bool
    bottom_is_empty: bool
    epimorphism: EpimorphismReport

    @property
    def ok(self) -> bool:
        return (self.associative and self.left_distributive
                and self.union_closed and self.bottom_is_empty
                and self.epimorphism.ok)


def transition_tables(members: Sequence[TransitionMap]) -> tuple[np.ndarray, np.ndarray]:
    """Index tables for composition and union over ``members``.

    ``comp[i, j]`` is the index of members[i] o members[j] and
    ``union[i, j]`` of their pointwise union; both products stay inside
    the member set, which these tables implicitly verify.
    """
    index = {f.images: i for i, f in enumerate(members)}
    m = len(members)
    if m > 350:
        raise TooLarge(f"exhaustive triple checks are guarded to 350 members, got {m}")
    comp = np.empty((m, m), dtype=np.int16)
    union = np.empty((m, m), dtype=np.int16)
    for i, f in enumerate(members):
        for j, g in enumerate(members):
            composed = tuple(f.act(g.images[k]) for k in range(len(g.space)))
            comp[i, j] = index[composed]
            union[i, j] = index[tuple(a | b for a, b in zip(f.images, g.images))]
    return comp, union


def check_quantale_laws(space: ProperStateSpace,
                        members: Sequence[TransitionMap] | None = None) -> QuantaleLawReport:
    """Exhaustively verify the quantale laws on a small state space.

    Associativity and both distributivity sides are checked over every
    triple of members via vectorized index tables; closure under arbitrary
    unions is checked on the full member set; the propagation morphism is
    checked on every pair.
    """
    if members is None:
        members = enumerate_members(space)
    comp, union = transition_tables(members)

    associative = bool(np.array_equal(comp[comp], comp[:, comp]))
    left = bool(np.array_equal(comp[:, union],
                               union[comp[:, :, None], comp[:, None, :]]))
    right = bool(np.array_equal(comp[union],
                                union[comp[:, None, :], comp[None, :, :]]))

    total = union_join(members, space=space, check=False)
    union_closed = is_member(total) and total.images in {f.images for f in members}
    bottom_ok = empty_transition(space).images in {f.images for f in members}
    epi = epimorphism_check(space, members)
    return QuantaleLawReport(
        members=len(members),
        associative=associative,
        left_distributive=left,
        right_distributive=right,
        union_closed=union_closed,
        bottom_is_empty=bottom_ok,
        epimorphism=epi,
    )
