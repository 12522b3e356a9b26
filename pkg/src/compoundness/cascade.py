"""The measurement cascade on a two-part system and its Born-rule oracle.

Measuring an atom on one side of a compound state collapses that side's
proper state, makes the collapsed carrier actual, and thereby induces a
property on the other side through the operator state; the other side
updates projectively and is then measured in turn. The product of the
measurement-step probabilities reproduces the tensor-product transition
probability, which :func:`born_probability` computes independently via an
explicit Kronecker construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import (
    DensityState,
    carrier,
    lueders,
    transition_probability,
)
from .errors import BadShape, DimensionMismatch, ZeroOperator, ZeroVector
from .hilbert import DEFAULT_TOL, Subspace, sasaki_s
from .operators import CompoundOperator, TensorVector, induced_map, quadruple
from .reporting import LawFailure
from .sampling import (
    random_density,
    random_density_in,
    random_subspace,
    random_subspace_in,
    random_unitary,
)

LEFT_FIRST = "left-first"
RIGHT_FIRST = "right-first"

MEASURE = "measure"
INDUCE = "induce"


@dataclass(frozen=True)
class CascadeStep:
    """One transition in a cascade run.

    Measurement steps carry the outcome probability; induction steps are
    deterministic consequences and carry probability one.
    """

    side: int
    kind: str
    measured_property: Subspace
    pre_state: DensityState
    post_state: DensityState | None
    probability: float
    carrier_pre: Subspace
    carrier_post: Subspace


@dataclass(frozen=True)
class CascadeTrace:
    """The recorded steps of a cascade and their joint probability."""

    steps: tuple[CascadeStep, ...]
    joint_probability: float


def _post_carrier(state: DensityState | None, ambient: int, tol: float) -> Subspace:
    if state is None:
        return Subspace.zero(ambient, tol)
    return carrier(state, tol)


def run_cascade(op: CompoundOperator, left_atom: Subspace, right_atom: Subspace,
                order: str = LEFT_FIRST, tol: float = DEFAULT_TOL) -> CascadeTrace:
    """Measure one atom per side, propagating the collapse across sides.

    With the default order: measure ``left_atom`` on the first reduced
    state, induce the image of the collapsed carrier on the second side,
    update the second state projectively, then measure ``right_atom``.
    An orthogonal outcome terminates the run with joint probability zero.
    """
    if op.is_zero():
        raise ZeroOperator("cannot run a cascade from the zero operator")
    if left_atom.dim != 1 or right_atom.dim != 1:
        raise BadShape("measured properties must be atoms (rays)")
    if left_atom.ambient_dim != op.dim_in or right_atom.ambient_dim != op.dim_out:
        raise DimensionMismatch(
            f"atoms must live in C^{op.dim_in} and C^{op.dim_out}"
        )
    quad = quadruple(op)
    if order == LEFT_FIRST:
        plan = [(1, quad.rho1, left_atom, quad.f12), (2, quad.rho2, right_atom, None)]
    elif order == RIGHT_FIRST:
        plan = [(2, quad.rho2, right_atom, quad.f21), (1, quad.rho1, left_atom, None)]
    else:
        raise ValueError(f"order must be {LEFT_FIRST!r} or {RIGHT_FIRST!r}")

    steps: list[CascadeStep] = []
    first_side, first_state, first_atom, bridge = plan[0]
    second_side, second_state, second_atom, _ = plan[1]

    p_first = transition_probability(first_state, first_atom)
    collapsed = lueders(first_state, first_atom)
    steps.append(CascadeStep(
        side=first_side,
        kind=MEASURE,
        measured_property=first_atom,
        pre_state=first_state,
        post_state=collapsed,
        probability=p_first if collapsed is not None else 0.0,
        carrier_pre=carrier(first_state, tol),
        carrier_post=_post_carrier(collapsed, first_atom.ambient_dim, tol),
    ))
    if collapsed is None:
        return CascadeTrace(tuple(steps), 0.0)

    induced = induced_map(bridge)(carrier(collapsed, tol))
    updated = lueders(second_state, induced)
    steps.append(CascadeStep(
        side=second_side,
        kind=INDUCE,
        measured_property=induced,
        pre_state=second_state,
        post_state=updated,
        probability=1.0 if updated is not None else 0.0,
        carrier_pre=carrier(second_state, tol),
        carrier_post=_post_carrier(updated, second_atom.ambient_dim, tol),
    ))
    if updated is None:
        return CascadeTrace(tuple(steps), 0.0)

    p_second = transition_probability(updated, second_atom)
    final = lueders(updated, second_atom)
    steps.append(CascadeStep(
        side=second_side,
        kind=MEASURE,
        measured_property=second_atom,
        pre_state=updated,
        post_state=final,
        probability=p_second if final is not None else 0.0,
        carrier_pre=carrier(updated, tol),
        carrier_post=_post_carrier(final, second_atom.ambient_dim, tol),
    ))
    joint = 1.0
    for step in steps:
        joint *= step.probability
    return CascadeTrace(tuple(steps), joint)


def born_probability(tv: TensorVector, psi, phi) -> float:
    """Transition probability computed directly in the tensor space.

    |<psi x phi, sum_i c_i psi_i x phi_i>|^2 normalized by the squared
    norms of the outcome vectors and of the compound state. Built with an
    explicit Kronecker product, independent of the cascade machinery.
    """
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    phi = np.asarray(phi, dtype=complex).reshape(-1)
    if not np.any(psi) or not np.any(phi):
        raise ZeroVector("measurement outcomes must be nonzero vectors")
    if psi.shape[0] != tv.left_basis.shape[0] or phi.shape[0] != tv.right_basis.shape[0]:
        raise DimensionMismatch("outcome vectors do not match the state's spaces")
    state = np.zeros(psi.shape[0] * phi.shape[0], dtype=complex)
    for i in range(tv.terms):
        state += tv.coefficients[i] * np.kron(tv.left_basis[:, i], tv.right_basis[:, i])
    norm2 = float(np.vdot(state, state).real)
    if norm2 == 0.0:
        raise ZeroOperator("the compound state has zero norm")
    outcome = np.kron(psi, phi)
    overlap = np.vdot(outcome, state)
    value = float(abs(overlap) ** 2) / (
        float(np.vdot(psi, psi).real) * float(np.vdot(phi, phi).real) * norm2
    )
    return min(max(value, 0.0), 1.0)


def chain_order_check(trace: CascadeTrace, tol: float | None = None) -> bool:
    """Whether carriers weakly descend along each side's subchain.

    Each step's post-carrier must be contained in its pre-carrier, and
    consecutive steps on the same side must join up (the later pre-carrier
    contained in the earlier post-carrier). Zero-probability terminations
    descend trivially.
    """
    per_side: dict[int, list[CascadeStep]] = {}
    for step in trace.steps:
        per_side.setdefault(step.side, []).append(step)
    for steps in per_side.values():
        for step in steps:
            post = step.carrier_post
            pre = step.carrier_pre
            if tol is not None:
                post = Subspace(post.frame, tol)
                pre = Subspace(pre.frame, tol)
            if not post.leq(pre):
                return False
        for earlier, later in zip(steps, steps[1:]):
            if not later.carrier_pre.leq(earlier.carrier_post):
                return False
    return True


@dataclass(frozen=True)
class UpdateLawReport:
    """Randomized verification of the projective-update ordering laws."""

    dim: int
    trials: int
    failures: tuple[LawFailure, ...]
    max_discrepancy: float

    @property
    def ok(self) -> bool:
        return not self.failures


def _describe(**parts) -> str:
    rendered = []
    for key in sorted(parts):
        value = parts[key]
        if isinstance(value, (int, float, str)):
            rendered.append(f"{key}={value}")
        else:
            arr = np.array2string(np.asarray(value), precision=6,
                                  separator=",", suppress_small=True)
            rendered.append(f"{key}={arr}")
    return " ".join(rendered).replace("\n", "")


def check_prop2(dim: int, trials: int, rng: np.random.Generator | None = None,
                tol: float = 1e-9) -> UpdateLawReport:
    """Randomized checks that projective updates order proper states.

    Per trial: (i) states supported inside the updated property are fixed
    points; (ii) with commuting projectors and the state supported in b,
    updating by a keeps the carrier inside b; (iii) updating by a then by
    a nested a' equals updating by a' alone; and the carrier of an update
    equals the Sasaki projection of the carrier onto the property.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    failures: list[LawFailure] = []
    worst = 0.0

    def record(law: str, discrepancy: float, **inputs) -> None:
        nonlocal worst
        worst = max(worst, discrepancy)
        if discrepancy > tol:
            failures.append(LawFailure(law, _describe(**inputs), discrepancy))

    for _ in range(trials):
        # (i) fixed point: carrier(rho) inside a
        a = random_subspace(rng, dim, rank=int(rng.integers(1, dim + 1)))
        rho = random_density_in(rng, a)
        updated = lueders(rho, a)
        gap = (np.linalg.norm(updated.matrix - rho.matrix)
               if updated is not None else np.inf)
        record("fixed-point", float(gap), a=a.frame, rho=rho.matrix)

        # carrier bridge: carrier of the update is the Sasaki projection
        rho = random_density(rng, dim, rank=int(rng.integers(1, dim + 1)))
        a = random_subspace(rng, dim, rank=int(rng.integers(1, dim + 1)))
        if transition_probability(rho, a) > 0.05:
            updated = lueders(rho, a)
            lhs = carrier(updated)
            rhs = sasaki_s(a, carrier(rho))
            gap = np.linalg.norm(lhs.projector() - rhs.projector())
            record("carrier-bridge", float(gap), a=a.frame, rho=rho.matrix)

        # (ii) commuting compatibility: shared eigenbasis projectors
        basis = random_unitary(rng, dim)
        cols = rng.permutation(dim)
        nb = int(rng.integers(1, dim + 1))
        na = int(rng.integers(1, dim + 1))
        b = Subspace(basis[:, np.sort(cols[:nb])])
        a_cols = np.sort(rng.permutation(dim)[:na])
        a = Subspace(basis[:, a_cols])
        rho = random_density_in(rng, b)
        if transition_probability(rho, a) > 0.05:
            updated = lueders(rho, a)
            moved = carrier(updated)
            gap = np.linalg.norm(
                (np.eye(dim) - b.projector()) @ moved.projector()
            )
            record("commuting-stability", float(gap),
                   a=a.frame, b=b.frame, rho=rho.matrix)

        # (iii) nested composition: a' inside a absorbs the outer update
        na = int(rng.integers(1, dim + 1))
        a = random_subspace(rng, dim, rank=na)
        a_inner = random_subspace_in(rng, a, rank=int(rng.integers(1, na + 1)))
        rho = random_density(rng, dim, rank=int(rng.integers(1, dim + 1)))
        if transition_probability(rho, a_inner) > 0.05:
            once = lueders(rho, a_inner)
            twice = lueders(lueders(rho, a), a_inner)
            gap = (np.linalg.norm(twice.matrix - once.matrix)
                   if once is not None and twice is not None else np.inf)
            record("nested-composition", float(gap),
                   a=a.frame, a_inner=a_inner.frame, rho=rho.matrix)

    return UpdateLawReport(dim=dim, trials=trials,
                           failures=tuple(failures), max_discrepancy=worst)
