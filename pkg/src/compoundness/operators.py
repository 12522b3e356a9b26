"""Linear and anti-linear operators as atomic states of compoundness.

An operator F from H1 to H2 encodes how atoms (rays) of the first space
induce atoms of the second: the induced subspace map sends A to the span
of F applied to a frame of A. Operators correspond to coefficient vectors
over paired orthonormal bases; the linear flag pairs with the dual-space
form <psi_i|-> and the anti-linear flag with the <-|psi_i> form, and the
Hilbert-Schmidt norm of the operator equals the norm of the coefficients.

An anti-linear operator is stored as (matrix, flag) and acts as
``matrix @ conj(vector)``. Note that at the subspace level conjugation is
invisible only on subspaces with real-coefficient frames; on a general
complex subspace the anti-linear action spans M @ conj(frame), which can
differ from the linear action with the same matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .density import DensityState
from .errors import (
    BadBasis,
    BadShape,
    DimensionMismatch,
    MixedSignatures,
    NonFinite,
    ZeroOperator,
)
from .hilbert import DEFAULT_TOL, Subspace, _as_complex_matrix, span

LINEAR = "linear"
ANTILINEAR = "antilinear"


@dataclass(frozen=True, eq=False)
class CompoundOperator:
    """A linear or anti-linear map between two finite-dimensional spaces."""

    matrix: np.ndarray
    linearity: str = LINEAR

    def __post_init__(self) -> None:
        m = _as_complex_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if self.linearity not in (LINEAR, ANTILINEAR):
            raise ValueError(f"linearity must be {LINEAR!r} or {ANTILINEAR!r}")

    @property
    def dim_in(self) -> int:
        return self.matrix.shape[1]

    @property
    def dim_out(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self) -> str:
        return f"CompoundOperator({self.dim_in}->{self.dim_out}, {self.linearity})"

    def is_zero(self) -> bool:
        return not np.any(self.matrix)

    def apply(self, vector) -> np.ndarray:
        """Apply to a vector; anti-linear operators conjugate first."""
        v = np.asarray(vector, dtype=complex).reshape(-1)
        if v.shape[0] != self.dim_in:
            raise BadShape(f"vector has length {v.shape[0]}, expected {self.dim_in}")
        if self.linearity == ANTILINEAR:
            v = v.conj()
        return self.matrix @ v

    def compose(self, inner: "CompoundOperator") -> "CompoundOperator":
        """self o inner. Two anti-linear factors make a linear composite."""
        if inner.dim_out != self.dim_in:
            raise DimensionMismatch(
                f"cannot compose {self.dim_in}->{self.dim_out} after "
                f"{inner.dim_in}->{inner.dim_out}"
            )
        if self.linearity == LINEAR:
            matrix = self.matrix @ inner.matrix
        else:
            matrix = self.matrix @ inner.matrix.conj()
        flag = LINEAR if self.linearity == inner.linearity else ANTILINEAR
        return CompoundOperator(matrix, flag)

    def adjoint(self) -> "CompoundOperator":
        """Adjoint with the same linearity flag.

        Linear: <phi, F psi> = <F' phi, psi>. Anti-linear: the pairing
        swaps, <phi, F psi> = <psi, F' phi>, which makes the adjoint
        matrix the plain transpose.
        """
        if self.linearity == LINEAR:
            return CompoundOperator(self.matrix.conj().T.copy(), LINEAR)
        return CompoundOperator(self.matrix.T.copy(), ANTILINEAR)


def induced_map(op: CompoundOperator) -> Callable[[Subspace], Subspace]:
    """The subspace map A -> span(F applied to a frame of A).

    Sends the zero subspace to the zero subspace, rays to rays or zero,
    and preserves joins.
    """

    def act(a: Subspace) -> Subspace:
        if a.ambient_dim != op.dim_in:
            raise DimensionMismatch(
                f"subspace lives in C^{a.ambient_dim}, operator expects C^{op.dim_in}"
            )
        frame = a.frame.conj() if op.linearity == ANTILINEAR else a.frame
        return span(op.matrix @ frame, a.tol)

    return act


@dataclass(frozen=True, eq=False)
class TensorVector:
    """Coefficients over a pair of orthonormal bases, one per side."""

    coefficients: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.coefficients, dtype=complex).reshape(-1)
        left = _check_basis(self.left_basis, "left")
        right = _check_basis(self.right_basis, "right")
        if left.shape[1] != c.shape[0] or right.shape[1] != c.shape[0]:
            raise BadBasis(
                f"{c.shape[0]} coefficients need bases with that many columns, "
                f"got {left.shape[1]} and {right.shape[1]}"
            )
        if not np.all(np.isfinite(c.real)) or not np.all(np.isfinite(c.imag)):
            raise NonFinite("coefficients contain NaN or infinite entries")
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "left_basis", left)
        object.__setattr__(self, "right_basis", right)

    @property
    def terms(self) -> int:
        return self.coefficients.shape[0]

    def __repr__(self) -> str:
        return (
            f"TensorVector({self.terms} terms, "
            f"C^{self.left_basis.shape[0]} x C^{self.right_basis.shape[0]})"
        )


def _check_basis(basis, name: str) -> np.ndarray:
    arr = _as_complex_matrix(basis)
    gram = arr.conj().T @ arr
    if gram.shape[0] and np.abs(gram - np.eye(gram.shape[0])).max() > 1e-9:
        raise BadBasis(f"{name} basis columns are not orthonormal")
    return arr


def from_tensor(tv: TensorVector, linearity: str) -> CompoundOperator:
    """Build the operator sum of c_i times the rank-one term pairing the
    i-th left basis vector with the i-th right basis vector.

    The linear flag uses the dual-space pairing <psi_i|->; the anti-linear
    flag uses <-|psi_i>, so the operator acts on conjugated input.
    """
    c = tv.coefficients
    if linearity == LINEAR:
        matrix = (tv.right_basis * c) @ tv.left_basis.conj().T
    elif linearity == ANTILINEAR:
        matrix = (tv.right_basis * c) @ tv.left_basis.T
    else:
        raise ValueError(f"linearity must be {LINEAR!r} or {ANTILINEAR!r}")
    return CompoundOperator(matrix, linearity)


def to_tensor(op: CompoundOperator, left_basis, right_basis) -> TensorVector:
    """Read coefficients of ``op`` off a pair of orthonormal bases.

    The bases must diagonalize the operator (a Schmidt pair); otherwise
    the single-index form cannot represent it and BadBasis is raised.
    Round-trips with :func:`from_tensor` in the same bases.
    """
    left = _check_basis(left_basis, "left")
    right = _check_basis(right_basis, "right")
    if left.shape[1] != right.shape[1]:
        raise BadBasis("left and right bases must have the same number of columns")
    if left.shape[0] != op.dim_in or right.shape[0] != op.dim_out:
        raise BadBasis(
            f"bases of shape {left.shape} and {right.shape} do not fit a "
            f"{op.dim_in}->{op.dim_out} operator"
        )
    source = left.conj() if op.linearity == ANTILINEAR else left
    coeff_matrix = right.conj().T @ op.matrix @ source
    c = np.diagonal(coeff_matrix).copy()
    tv = TensorVector(c, left, right)
    residual = np.linalg.norm(from_tensor(tv, op.linearity).matrix - op.matrix)
    if residual > 1e-9 * max(1.0, float(np.linalg.norm(op.matrix))):
        raise BadBasis(
            f"operator is not diagonal over the given bases (residual {residual:.3e})"
        )
    return tv


def schmidt_tensor(op: CompoundOperator) -> TensorVector:
    """Canonical coefficient form of any operator via singular values.

    The bases are the singular vector pairs, so the coefficients are the
    (nonnegative) singular values; zero singular values are kept to match
    the smaller dimension.
    """
    u, s, vh = np.linalg.svd(op.matrix, full_matrices=False)
    left = vh.conj().T if op.linearity == LINEAR else vh.T
    return TensorVector(s.astype(complex), left, u)


def hs_norm(op: CompoundOperator) -> float:
    """Hilbert-Schmidt norm; equals the 2-norm of any coefficient form."""
    return float(np.linalg.norm(op.matrix))


class Quadruple(NamedTuple):
    """An operator state with both reduced proper states and its adjoint."""

    f12: CompoundOperator
    rho1: DensityState
    rho2: DensityState
    f21: CompoundOperator


def quadruple(op: CompoundOperator) -> Quadruple:
    """Unpack an operator state into (F, F'F/Tr, FF'/Tr, F').

    The two middle entries are the trace-normalized reduced proper states
    of the two sides; both are valid density operators for any nonzero F.
    """
    if op.is_zero():
        raise ZeroOperator("the zero operator has no associated proper states")
    adj = op.adjoint()
    m1 = adj.compose(op).matrix
    m2 = op.compose(adj).matrix
    m1 = (m1 + m1.conj().T) / 2.0
    m2 = (m2 + m2.conj().T) / 2.0
    rho1 = DensityState(m1 / float(np.trace(m1).real))
    rho2 = DensityState(m2 / float(np.trace(m2).real))
    return Quadruple(op, rho1, rho2, adj)


@dataclass(frozen=True)
class AtomicityReport:
    """Outcome of sampling two operators' induced maps on random rays.

    ``ordered_on_samples``: the first map stayed below the second on every
    sampled ray. ``equal_on_samples``: they agreed on every sampled ray.
    ``witness`` is the first ray where they differed, if any. A strictly
    ordered, unequal, nonzero first map would contradict atomicity of
    ray-preserving maps; ``consistent`` records that no such configuration
    was observed.
    """

    samples: int
    ordered_on_samples: bool
    equal_on_samples: bool
    zero_operator: bool
    witness: np.ndarray | None

    @property
    def consistent(self) -> bool:
        return self.zero_operator or self.equal_on_samples or not self.ordered_on_samples


def atomicity_probe(f_op: CompoundOperator, g_op: CompoundOperator,
                    ray_samples: int, rng: np.random.Generator | None = None,
                    tol: float = DEFAULT_TOL) -> AtomicityReport:
    """Sample rays and compare the induced maps of two operators.

    Checks, ray by ray, whether span(F v) is contained in span(G v) and
    whether the two spans are equal. A nonzero F that stays strictly below
    G on the samples would be a counterexample to atomicity; the report
    says whether the samples are consistent with there being none.
    """
    if f_op.matrix.shape != g_op.matrix.shape or f_op.linearity != g_op.linearity:
        raise MixedSignatures("operators must share shape and linearity")
    if rng is None:
        rng = np.random.default_rng(0)
    scale_f = max(1.0, float(np.linalg.norm(f_op.matrix)))
    scale_g = max(1.0, float(np.linalg.norm(g_op.matrix)))

    ordered = True
    equal = True
    witness = None
    dim = f_op.dim_in
    for _ in range(ray_samples):
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        v /= np.linalg.norm(v)
        fv = f_op.apply(v)
        gv = g_op.apply(v)
        f_zero = np.linalg.norm(fv) <= 1e-12 * scale_f
        g_zero = np.linalg.norm(gv) <= 1e-12 * scale_g
        if f_zero:
            ray_equal = g_zero
            ray_ordered = True
        elif g_zero:
            ray_equal = False
            ray_ordered = False
        else:
            ghat = gv / np.linalg.norm(gv)
            residual = np.linalg.norm(fv - ghat * (ghat.conj() @ fv))
            parallel = residual <= tol * np.linalg.norm(fv)
            ray_equal = parallel
            ray_ordered = parallel
        if not ray_equal and witness is None:
            witness = v
        equal = equal and bool(ray_equal)
        ordered = ordered and bool(ray_ordered)
    return AtomicityReport(
        samples=ray_samples,
        ordered_on_samples=ordered,
        equal_on_samples=equal,
        zero_operator=bool(f_op.is_zero()),
        witness=witness,
    )
