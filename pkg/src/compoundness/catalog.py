"""Small stock lattices used throughout the tests and verification suites."""

from __future__ import annotations

import itertools

from .lattice import FiniteLattice, OrthoLattice, attach_ortho, build_lattice


def chain(n: int) -> FiniteLattice:
    """The n-element chain 0 < 1 < ... < n-1."""
    labels = [str(i) for i in range(n)]
    pairs = [(i, i + 1) for i in range(n - 1)]
    return build_lattice(labels, pairs)


def boolean(num_atoms: int) -> OrthoLattice:
    """The powerset of ``num_atoms`` generators with set complement.

    boolean(2) is the four-element lattice {0, a, b, 1}.
    """
    names = "abcdefgh"[:num_atoms]

    def label(mask: int) -> str:
        if mask == 0:
            return "0"
        if mask == (1 << num_atoms) - 1 and num_atoms > 0:
            return "1"
        return "".join(names[i] for i in range(num_atoms) if mask >> i & 1)

    masks = list(range(1 << num_atoms))
    labels = [label(m) for m in masks]
    pairs = [
        (labels[lo], labels[hi])
        for lo, hi in itertools.product(masks, masks)
        if lo & hi == lo
    ]
    base = build_lattice(labels, pairs)
    full = (1 << num_atoms) - 1
    ortho = [labels.index(label(full & ~m)) for m in masks]
    return attach_ortho(base, ortho)


def mo(n: int) -> OrthoLattice:
    """The horizontal sum MO_n: 2n pairwise incomparable atoms x, x'.

    mo(2) is the six-element lattice {0, a, a', b, b', 1}; every atom's
    complement is its primed partner. Orthomodular but not distributive.
    """
    names = "abcdefgh"[:n]
    labels = ["0"]
    for c in names:
        labels += [c, c + "'"]
    labels.append("1")
    pairs = [("0", lab) for lab in labels[1:-1]] + [(lab, "1") for lab in labels[1:-1]]
    pairs.append(("0", "1"))
    base = build_lattice(labels, pairs)
    ortho = [labels.index("1")] + [0] * (2 * n) + [labels.index("0")]
    for c in names:
        ortho[labels.index(c)] = labels.index(c + "'")
        ortho[labels.index(c + "'")] = labels.index(c)
    return attach_ortho(base, ortho)


def standard_lattices() -> dict[str, FiniteLattice]:
    """The four-lattice family the exhaustive map checks run over."""
    return {
        "2-chain": chain(2),
        "3-chain": chain(3),
        "B2": boolean(2).base,
        "MO2": mo(2).base,
    }
