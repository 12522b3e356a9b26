"""Join-preserving maps between finite lattices and their Galois duals.

A join-preserving map from a property lattice L1 to a property lattice L2
models how actuality of a property of one part of a two-part system forces
actuality of a property of the other. Its Galois dual runs the other way
and assigns to each property its weakest cause. The collection of all such
maps is itself a complete lattice under the pointwise order, with the
separation map on top and the constant-bottom (absurd) map at the bottom.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    MixedSignatures,
    NotJoinPreserving,
    NotMeetPreserving,
    TooLarge,
)
from .lattice import FiniteLattice, lattice_from_order

ENUMERATION_GUARD = 8


def is_join_preserving(table: Sequence[int], source: FiniteLattice,
                       target: FiniteLattice) -> bool:
    """Whether ``table`` sends the bottom to the bottom and preserves all
    binary joins (sufficient for all joins between finite lattices)."""
    n = len(source)
    if len(table) != n:
        return False
    for v in table:
        if not 0 <= v < len(target):
            return False
    if table[source.bottom] != target.bottom:
        return False
    for x in range(n):
        for y in range(x, n):
            if table[source.join2(x, y)] != target.join2(table[x], table[y]):
                return False
    return True


def is_meet_preserving(table: Sequence[int], source: FiniteLattice,
                       target: FiniteLattice) -> bool:
    """Dual of :func:`is_join_preserving`: top to top, binary meets kept."""
    n = len(source)
    if len(table) != n:
        return False
    for v in table:
        if not 0 <= v < len(target):
            return False
    if table[source.top] != target.top:
        return False
    for x in range(n):
        for y in range(x, n):
            if table[source.meet2(x, y)] != target.meet2(table[x], table[y]):
                return False
    return True


@dataclass(frozen=True, eq=False)
class JoinMap:
    """A validated join-preserving map between two finite lattices."""

    source: FiniteLattice
    target: FiniteLattice
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_join_preserving(self.table, self.source, self.target):
            raise NotJoinPreserving(f"table {self.table} does not preserve joins")

    def __repr__(self) -> str:
        return f"JoinMap({self.table})"

    def __call__(self, x: int) -> int:
        self.source.check_element(x)
        return self.table[x]

    def same_signature(self, other: "JoinMap") -> bool:
        return self.source.same_structure(other.source) and self.target.same_structure(
            other.target
        )


@dataclass(frozen=True, eq=False)
class MeetMap:
    """A validated meet-preserving map; source and target play reversed
    roles relative to the join map it is dual to."""

    source: FiniteLattice
    target: FiniteLattice
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_meet_preserving(self.table, self.source, self.target):
            raise NotMeetPreserving(f"table {self.table} does not preserve meets")

    def __repr__(self) -> str:
        return f"MeetMap({self.table})"

    def __call__(self, x: int) -> int:
        self.source.check_element(x)
        return self.table[x]


def map_leq(f: JoinMap, g: JoinMap) -> bool:
    """Pointwise order on join maps: f <= g iff f(x) <= g(x) everywhere."""
    if not f.same_signature(g):
        raise MixedSignatures("maps have different source or target lattices")
    return all(f.target.leq[f.table[x], g.table[x]] for x in range(len(f.source)))


def meetmap_leq(f: MeetMap, g: MeetMap) -> bool:
    if not (f.source.same_structure(g.source) and f.target.same_structure(g.target)):
        raise MixedSignatures("maps have different source or target lattices")
    return all(f.target.leq[f.table[x], g.table[x]] for x in range(len(f.source)))


def galois_dual(f: JoinMap) -> MeetMap:
    """The unique meet-preserving adjoint of ``f``.

    f*(b) is the join of every a with f(a) <= b, i.e. the weakest cause of
    b; the pair satisfies a <= f*(b) iff f(a) <= b.
    """
    table = []
    for b in range(len(f.target)):
        causes = [a for a in range(len(f.source)) if f.target.leq[f.table[a], b]]
        table.append(f.source.join(causes))
    return MeetMap(source=f.target, target=f.source, table=tuple(table))


def adjoint_of_meetmap(g: MeetMap) -> JoinMap:
    """Recover the join-preserving adjoint of a meet-preserving map.

    f(a) is the minimum of every b with a <= g(b); that minimum exists
    because g preserves meets. Round-trips with :func:`galois_dual`.
    """
    l2, l1 = g.source, g.target
    table = []
    for a in range(len(l1)):
        candidates = [b for b in range(len(l2)) if l1.leq[a, g.table[b]]]
        table.append(l2.meet(candidates))
    return JoinMap(source=l1, target=l2, table=tuple(table))


def separation_state(source: FiniteLattice, target: FiniteLattice) -> JoinMap:
    """The top of the map lattice: every nonzero property maps to the top,
    so neither side induces anything nontrivial on the other."""
    table = tuple(
        target.bottom if x == source.bottom else target.top
        for x in range(len(source))
    )
    return JoinMap(source=source, target=target, table=table)


def absurd_state(source: FiniteLattice, target: FiniteLattice) -> JoinMap:
    """The bottom of the map lattice: the constant-bottom map, whose dual
    makes every property a consequence of mere existence."""
    return JoinMap(
        source=source, target=target, table=(target.bottom,) * len(source)
    )


def pointwise_join(maps: Sequence[JoinMap], source: FiniteLattice | None = None,
                   target: FiniteLattice | None = None) -> JoinMap:
    """Least upper bound of ``maps`` in the pointwise order.

    The empty join is the absurd (constant-bottom) map; in that case the
    source and target lattices must be passed explicitly.
    """
    maps = list(maps)
    if not maps:
        if source is None or target is None:
            raise MixedSignatures(
                "the empty pointwise join needs explicit source and target"
            )
        return absurd_state(source, target)
    head = maps[0]
    for f in maps[1:]:
        if not head.same_signature(f):
            raise MixedSignatures("maps have different source or target lattices")
    if source is not None and not head.source.same_structure(source):
        raise MixedSignatures("explicit source disagrees with the maps")
    if target is not None and not head.target.same_structure(target):
        raise MixedSignatures("explicit target disagrees with the maps")
    table = tuple(
        head.target.join([f.table[x] for f in maps])
        for x in range(len(head.source))
    )
    return JoinMap(source=head.source, target=head.target, table=table)


def compose_join_maps(outer: JoinMap, inner: JoinMap) -> JoinMap:
    """(outer o inner)(x) = outer(inner(x))."""
    if not inner.target.same_structure(outer.source):
        raise MixedSignatures("inner target does not match outer source")
    table = tuple(outer.table[inner.table[x]] for x in range(len(inner.source)))
    return JoinMap(source=inner.source, target=outer.target, table=table)


@dataclass(frozen=True, eq=False)
class QLattice:
    """All join-preserving maps between two lattices, ordered pointwise.

    ``lattice`` is the (validated) finite lattice whose element i stands
    for ``maps[i]``; its top is the separation map and its bottom the
    absurd map.
    """

    lattice: FiniteLattice
    maps: tuple[JoinMap, ...]

    def __len__(self) -> int:
        return len(self.maps)

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {f.table: i for i, f in enumerate(self.maps)}

    def index_of(self, f: JoinMap | tuple[int, ...]) -> int:
        table = f.table if isinstance(f, JoinMap) else tuple(f)
        try:
            return self._index[table]
        except KeyError:
            raise NotJoinPreserving(
                f"table {table} is not one of the enumerated maps"
            ) from None

    @property
    def top_map(self) -> JoinMap:
        return self.maps[self.lattice.top]

    @property
    def bottom_map(self) -> JoinMap:
        return self.maps[self.lattice.bottom]


def enumerate_Q(source: FiniteLattice, target: FiniteLattice,
                max_side: int = ENUMERATION_GUARD) -> QLattice:
    """Enumerate every join-preserving map from ``source`` to ``target``.

    Candidates are generated by choosing images for the join-irreducible
    elements only and extending by joins, then filtered by the full
    preservation check. Guarded to ``max_side`` elements per lattice.
    """
    if len(source) > max_side or len(target) > max_side:
        raise TooLarge(
            f"enumeration guard is {max_side} elements per side, got "
            f"{len(source)} and {len(target)}"
        )
    jis = source.join_irreducibles()
    below = [
        [i for i, ji in enumerate(jis) if source.leq[ji, x]]
        for x in range(len(source))
    ]
    tables = set()
    for assign in itertools.product(range(len(target)), repeat=len(jis)):
        table = tuple(
            target.join([assign[i] for i in below[x]]) for x in range(len(source))
        )
        if table not in tables and is_join_preserving(table, source, target):
            tables.add(table)
    ordered = sorted(tables)
    maps = tuple(JoinMap(source=source, target=target, table=t) for t in ordered)

    arr = np.array(ordered, dtype=np.intp).reshape(len(ordered), len(source))
    order = target.leq[arr[:, None, :], arr[None, :, :]].all(axis=2)
    labels = [",".join(str(v) for v in t) for t in ordered]
    lat = lattice_from_order(labels, order)
    q = QLattice(lattice=lat, maps=maps)
    assert q.top_map.table == separation_state(source, target).table
    assert q.bottom_map.table == absurd_state(source, target).table
    return q


def order_antitone_check(f: JoinMap, g: JoinMap) -> bool:
    """Law check: (f <= g pointwise) iff (g* <= f* pointwise).

    Always true for valid join maps; exposed so suites can assert it.
    """
    if not f.same_signature(g):
        raise MixedSignatures("maps have different source or target lattices")
    lhs = map_leq(f, g)
    rhs = meetmap_leq(galois_dual(g), galois_dual(f))
    return lhs == rhs


ATOMISTIC = "atomistic"
SEPARATION_LIKE = "separation-like"
OTHER = "other"


def classify_map(f: JoinMap) -> tuple[str, ...]:
    """Classify a join map by how it treats atoms.

    ``atomistic`` maps send every atom to an atom or the bottom (the
    maximal-determinism pattern); ``separation-like`` means the map is
    exactly the separation state. Both flags can hold at once; a map with
    neither is labelled ``other``.
    """
    target_atoms = set(f.target.atoms())
    atomistic = all(
        f.table[a] in target_atoms or f.table[a] == f.target.bottom
        for a in f.source.atoms()
    )
    separation_like = f.table == separation_state(f.source, f.target).table
    flags = []
    if atomistic:
        flags.append(ATOMISTIC)
    if separation_like:
        flags.append(SEPARATION_LIKE)
    return tuple(flags) if flags else (OTHER,)
