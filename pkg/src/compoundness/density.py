"""Density operators as proper states, carriers, and projective updates.

A proper state of one part of a compound system is a density operator;
its carrier (the range of the operator) is the strongest property that is
actual in that state. The projective update implements the minimal
disturbance transition onto a measured or induced property.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadShape, DimensionMismatch, NotADensity, ZeroVector
from .hilbert import DEFAULT_TOL, Subspace, _as_complex_matrix

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10

# Outcomes with probability at or below this cutoff count as orthogonal
# (empty) outcomes. Kept well under DEFAULT_TOL so that truncated branches
# never move probability sums by more than the advertised 1e-9.
ORTHOGONAL_CUTOFF = 1e-12


@dataclass(frozen=True, eq=False)
class DensityState:
    """A validated density operator: Hermitian, PSD, unit trace."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = _as_complex_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if m.shape[0] != m.shape[1]:
            raise BadShape(f"density operator must be square, got {m.shape}")
        if np.linalg.norm(m - m.conj().T) > HERMITIAN_TOL:
            raise NotADensity("density operator is not Hermitian within 1e-12")
        trace = float(np.trace(m).real)
        if abs(trace - 1.0) > TRACE_TOL:
            raise NotADensity(f"density operator has trace {trace}, expected 1")
        if float(np.linalg.eigvalsh(m)[0]) < EIGENVALUE_FLOOR:
            raise NotADensity("density operator has a significantly negative eigenvalue")

    @classmethod
    def pure(cls, vector) -> "DensityState":
        v = np.asarray(vector, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise ZeroVector("cannot build a pure state from the zero vector")
        v = v / norm
        return cls(np.outer(v, v.conj()))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityState":
        return cls(np.eye(dim, dtype=complex) / dim)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self) -> str:
        return f"DensityState(dim {self.dim})"


def carrier(rho: DensityState, tol: float = DEFAULT_TOL) -> Subspace:
    """The range of ``rho``: its strongest actual property.

    Spanned by the eigenvectors whose eigenvalues exceed ``tol`` relative
    to the largest one.
    """
    w, v = np.linalg.eigh(rho.matrix)
    top = float(w[-1])
    if top <= 0.0:
        return Subspace.zero(rho.dim, tol)
    keep = w > tol * top
    return Subspace(v[:, keep].copy(), tol)


def transition_probability(rho: DensityState, a: Subspace) -> float:
    """Probability of the outcome ``a``: Tr(P_a rho), clipped to [0, 1]."""
    if a.ambient_dim != rho.dim:
        raise DimensionMismatch(
            f"property lives in C^{a.ambient_dim}, state in C^{rho.dim}"
        )
    p = float(np.trace(a.projector() @ rho.matrix).real)
    return min(max(p, 0.0), 1.0)


def lueders(rho: DensityState, a: Subspace,
            cutoff: float = ORTHOGONAL_CUTOFF) -> DensityState | None:
    """Projective update of ``rho`` onto ``a``.

    Returns None when the outcome is (numerically) orthogonal, i.e. when
    Tr(P_a rho) <= cutoff; otherwise P_a rho P_a renormalized. The carrier
    of the result is always contained in ``a``.
    """
    p = transition_probability(rho, a)
    if p <= cutoff:
        return None
    proj = a.projector()
    updated = proj @ rho.matrix @ proj
    updated = (updated + updated.conj().T) / 2.0
    updated = updated / float(np.trace(updated).real)
    return DensityState(updated)
