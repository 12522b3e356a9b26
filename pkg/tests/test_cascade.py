"""Proper states, projective updates, the cascade, and the Born oracle."""

from __future__ import annotations

import numpy as np
import pytest

from compoundness.cascade import (
    LEFT_FIRST,
    RIGHT_FIRST,
    born_probability,
    chain_order_check,
    check_prop2,
    run_cascade,
)
from compoundness.density import (
    DensityState,
    carrier,
    lueders,
    transition_probability,
)
from compoundness.errors import BadShape, NotADensity, ZeroOperator, ZeroVector
from compoundness.hilbert import Subspace, ortho_s, ray, span
from compoundness.operators import (
    ANTILINEAR,
    CompoundOperator,
    TensorVector,
    from_tensor,
)
from compoundness.sampling import (
    random_density,
    random_state_vector,
    random_subspace,
    random_tensor_vector,
    random_unitary,
)

from oracles import kron_state

E1 = np.array([1, 0], dtype=complex)
E2 = np.array([0, 1], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)


# -- density states ------------------------------------------------------------


def test_density_validation_rejects_bad_matrices():
    with pytest.raises(NotADensity):
        DensityState(np.array([[1.0, 0.5], [0.0, 0.0]]))  # not Hermitian
    with pytest.raises(NotADensity):
        DensityState(IDENTITY2)  # trace 2
    with pytest.raises(NotADensity):
        DensityState(np.diag([1.5, -0.5]).astype(complex))  # negative eigenvalue
    with pytest.raises(BadShape):
        DensityState(np.ones((2, 3)))


def test_carrier_of_pure_state_is_its_ray():
    psi = random_state_vector(np.random.default_rng(0), 3)
    assert carrier(DensityState.pure(psi)).approx_equal(ray(psi))


def test_carrier_of_maximally_mixed_is_full():
    assert carrier(DensityState.maximally_mixed(2)).approx_equal(Subspace.full(2))


def test_carrier_threshold_drops_negligible_weight():
    rho = DensityState(np.diag([0.999999, 1e-15]) / (0.999999 + 1e-15))
    assert carrier(rho).approx_equal(ray(E1))


def test_lueders_fixes_states_supported_inside():
    rho = DensityState.pure(E1)
    result = lueders(rho, span(np.column_stack([E1, E2])))
    assert np.allclose(result.matrix, rho.matrix)


def test_lueders_collapses_mixed_state_to_ray():
    result = lueders(DensityState.maximally_mixed(2), ray(E1))
    assert np.allclose(result.matrix, np.outer(E1, E1.conj()))


def test_lueders_orthogonal_outcome_is_empty():
    assert lueders(DensityState.pure(E1), ray(E2)) is None


def test_lueders_is_idempotent():
    rng = np.random.default_rng(1)
    for _ in range(50):
        dim = int(rng.integers(2, 5))
        rho = random_density(rng, dim)
        a = random_subspace(rng, dim, rank=int(rng.integers(1, dim + 1)))
        once = lueders(rho, a)
        if once is None:
            continue
        twice = lueders(once, a)
        assert np.linalg.norm(twice.matrix - once.matrix) <= 1e-9


def test_nested_updates_collapse_to_the_inner_one():
    # updating by the full space and then by a contained ray equals the
    # single update by the ray
    rho = DensityState.maximally_mixed(2)
    outer = Subspace.full(2)
    inner = ray(E1)
    via_both = lueders(lueders(rho, outer), inner)
    direct = lueders(rho, inner)
    assert np.allclose(via_both.matrix, direct.matrix)
    assert np.allclose(direct.matrix, np.outer(E1, E1.conj()))


def test_transition_probability_examples():
    rho = DensityState.pure(E1)
    assert transition_probability(rho, Subspace.full(2)) == pytest.approx(1.0)
    assert transition_probability(rho, ray(E2)) == pytest.approx(0.0)
    mixed = DensityState.maximally_mixed(2)
    assert transition_probability(mixed, ray(E1 + E2)) == pytest.approx(0.5)


def test_probabilities_of_complementary_outcomes_sum_to_one():
    rng = np.random.default_rng(2)
    for _ in range(100):
        dim = int(rng.integers(2, 5))
        rho = random_density(rng, dim)
        a = random_subspace(rng, dim)
        total = transition_probability(rho, a) + transition_probability(rho, ortho_s(a))
        assert abs(total - 1.0) <= 1e-12


# -- worked cascade examples ------------------------------------------------------


def uniform_pair_state() -> CompoundOperator:
    return CompoundOperator(IDENTITY2 / np.sqrt(2), ANTILINEAR)


def test_uniform_state_aligned_outcomes():
    trace = run_cascade(uniform_pair_state(), ray(E1), ray(E1))
    assert trace.joint_probability == pytest.approx(0.5, abs=1e-12)
    kinds = [(s.side, s.kind) for s in trace.steps]
    assert kinds == [(1, "measure"), (2, "induce"), (2, "measure")]
    assert trace.steps[0].probability == pytest.approx(0.5, abs=1e-12)
    assert trace.steps[2].probability == pytest.approx(1.0, abs=1e-12)


def test_uniform_state_crossed_outcomes_are_impossible():
    trace = run_cascade(uniform_pair_state(), ray(E1), ray(E2))
    assert trace.joint_probability == pytest.approx(0.0, abs=1e-12)


def test_product_state_factorizes():
    rng = np.random.default_rng(3)
    psi1 = random_state_vector(rng, 2)
    phi1 = random_state_vector(rng, 2)
    tv = TensorVector(np.array([1.0]), psi1[:, None], phi1[:, None])
    op = from_tensor(tv, ANTILINEAR)
    for _ in range(10):
        left = random_state_vector(rng, 2)
        right = random_state_vector(rng, 2)
        joint = run_cascade(op, ray(left), ray(right)).joint_probability
        expected = abs(np.vdot(left, psi1)) ** 2 * abs(np.vdot(right, phi1)) ** 2
        assert joint == pytest.approx(expected, abs=1e-12)


def test_product_state_chain_descends_with_aligned_or_orthogonal_atoms():
    rng = np.random.default_rng(15)
    psi1 = random_state_vector(rng, 2)
    phi1 = random_state_vector(rng, 2)
    tv = TensorVector(np.array([1.0]), psi1[:, None], phi1[:, None])
    op = from_tensor(tv, ANTILINEAR)
    aligned = run_cascade(op, ray(psi1), ray(phi1))
    assert chain_order_check(aligned)
    # both per-side chains collapse immediately: two distinct carriers at most
    for side in (1, 2):
        dims = [s.carrier_pre.dim for s in aligned.steps if s.side == side]
        dims += [s.carrier_post.dim for s in aligned.steps if s.side == side]
        assert len(set(dims)) <= 2
    crossed = run_cascade(op, ray(psi1), ray(ortho_s(ray(phi1)).frame[:, 0]))
    assert crossed.joint_probability == pytest.approx(0.0, abs=1e-12)
    assert chain_order_check(crossed)


def test_cascade_rejects_zero_operator_and_non_rays():
    with pytest.raises(ZeroOperator):
        run_cascade(CompoundOperator(np.zeros((2, 2))), ray(E1), ray(E1))
    with pytest.raises(BadShape):
        run_cascade(uniform_pair_state(), Subspace.full(2), ray(E1))


def test_joint_probability_is_the_product_of_step_probabilities():
    rng = np.random.default_rng(4)
    tv = random_tensor_vector(rng, 3, 3, 2)
    op = from_tensor(tv, ANTILINEAR)
    trace = run_cascade(op, ray(random_state_vector(rng, 3)),
                        ray(random_state_vector(rng, 3)))
    product = 1.0
    for step in trace.steps:
        product *= step.probability
    assert trace.joint_probability == pytest.approx(product, abs=1e-15)


# -- born oracle -------------------------------------------------------------------


def test_born_single_term_is_certain():
    tv = TensorVector(np.array([1.0]), E1[:, None], E2[:, None])
    assert born_probability(tv, E1, E2) == pytest.approx(1.0)


def test_born_on_anticorrelated_coefficients():
    tv = TensorVector(
        np.array([1 / np.sqrt(2), -1 / np.sqrt(2)]), IDENTITY2, IDENTITY2
    )
    # paired outcomes carry the coefficient weight, crossed outcomes none
    assert born_probability(tv, E1, E1) == pytest.approx(0.5, abs=1e-12)
    assert born_probability(tv, E1, E2) == pytest.approx(0.0, abs=1e-12)


def test_born_is_scale_invariant_in_the_outcomes():
    rng = np.random.default_rng(5)
    tv = random_tensor_vector(rng, 3, 2, 2)
    psi = random_state_vector(rng, 3)
    phi = random_state_vector(rng, 2)
    base = born_probability(tv, psi, phi)
    assert born_probability(tv, 3.7 * psi, (0.2 - 2j) * phi) == pytest.approx(base)


def test_born_rejects_zero_vectors():
    tv = random_tensor_vector(np.random.default_rng(6), 2, 2, 1)
    with pytest.raises(ZeroVector):
        born_probability(tv, np.zeros(2), E1)


def test_born_matches_direct_kronecker_computation():
    rng = np.random.default_rng(7)
    for _ in range(50):
        d1, d2 = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        tv = random_tensor_vector(rng, d1, d2, int(rng.integers(1, min(d1, d2) + 1)))
        psi = random_state_vector(rng, d1)
        phi = random_state_vector(rng, d2)
        state = kron_state(tv)
        expected = abs(np.vdot(np.kron(psi, phi), state)) ** 2 / np.vdot(state, state).real
        assert born_probability(tv, psi, phi) == pytest.approx(expected, abs=1e-12)


# -- cascade against the oracle ------------------------------------------------------


def test_cascade_reproduces_born_probabilities():
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(100):
        d1, d2 = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        m = int(rng.integers(1, min(d1, d2, 4) + 1))
        tv = random_tensor_vector(rng, d1, d2, m)
        op = from_tensor(tv, ANTILINEAR)
        psi = random_state_vector(rng, d1)
        phi = random_state_vector(rng, d2)
        joint = run_cascade(op, ray(psi), ray(phi)).joint_probability
        worst = max(worst, abs(joint - born_probability(tv, psi, phi)))
    assert worst <= 1e-9


def test_left_first_and_right_first_agree():
    rng = np.random.default_rng(9)
    for _ in range(50):
        d1, d2 = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        tv = random_tensor_vector(rng, d1, d2, int(rng.integers(1, min(d1, d2) + 1)))
        op = from_tensor(tv, ANTILINEAR)
        psi = random_state_vector(rng, d1)
        phi = random_state_vector(rng, d2)
        left = run_cascade(op, ray(psi), ray(phi), order=LEFT_FIRST)
        right = run_cascade(op, ray(psi), ray(phi), order=RIGHT_FIRST)
        assert abs(left.joint_probability - right.joint_probability) <= 1e-9


def test_joint_probabilities_sum_to_one_over_product_bases():
    rng = np.random.default_rng(10)
    for _ in range(20):
        d1, d2 = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        tv = random_tensor_vector(rng, d1, d2, int(rng.integers(1, min(d1, d2) + 1)))
        op = from_tensor(tv, ANTILINEAR)
        basis1 = random_unitary(rng, d1)
        basis2 = random_unitary(rng, d2)
        total = sum(
            run_cascade(op, ray(basis1[:, i]), ray(basis2[:, j])).joint_probability
            for i in range(d1)
            for j in range(d2)
        )
        assert abs(total - 1.0) <= 1e-9


# -- chain ordering -------------------------------------------------------------------


def test_cascade_traces_descend_when_atoms_refine_the_carriers():
    # full Schmidt rank makes the first measurement and the induction
    # refine their carriers; picking the final atom on (or orthogonal to)
    # the induced ray keeps the last step inside the descending regime
    rng = np.random.default_rng(11)
    for _ in range(25):
        d = int(rng.integers(2, 4))
        tv = random_tensor_vector(rng, d, d, d)
        op = from_tensor(tv, ANTILINEAR)
        psi = random_state_vector(rng, d)
        induced_ray = ray(op.apply(psi))
        aligned = run_cascade(op, ray(psi), induced_ray)
        assert aligned.joint_probability > 0.0
        assert chain_order_check(aligned)
        perp_frame = ortho_s(induced_ray).frame
        orthogonal = run_cascade(op, ray(psi), ray(perp_frame[:, 0]))
        assert orthogonal.joint_probability == pytest.approx(0.0, abs=1e-12)
        assert chain_order_check(orthogonal)


def test_first_measurement_and_induction_always_descend_for_full_rank():
    rng = np.random.default_rng(14)
    for _ in range(25):
        d = int(rng.integers(2, 4))
        tv = random_tensor_vector(rng, d, d, d)
        op = from_tensor(tv, ANTILINEAR)
        trace = run_cascade(op, ray(random_state_vector(rng, d)),
                            ray(random_state_vector(rng, d)))
        for step in trace.steps[:2]:
            assert step.carrier_post.leq(step.carrier_pre)


def test_zero_probability_branches_descend_trivially():
    trace = run_cascade(uniform_pair_state(), ray(E1), ray(E2))
    assert chain_order_check(trace)


def test_manually_reversed_trace_fails_the_chain_check():
    trace = run_cascade(uniform_pair_state(), ray(E1), ray(E1))
    reversed_steps = []
    for step in trace.steps:
        reversed_steps.append(
            type(step)(
                side=step.side,
                kind=step.kind,
                measured_property=step.measured_property,
                pre_state=step.pre_state,
                post_state=step.post_state,
                probability=step.probability,
                carrier_pre=step.carrier_post,
                carrier_post=step.carrier_pre,
            )
        )
    assert not chain_order_check(type(trace)(tuple(reversed_steps), trace.joint_probability))


def test_misaligned_measurement_on_deficient_state_breaks_descent():
    # a rank-one compound state measured at a skew atom has positive
    # probability, but the collapsed carrier escapes the original one;
    # the check honestly reports that the descending regime was left
    tv = TensorVector(np.array([1.0]), E1[:, None], E1[:, None])
    op = from_tensor(tv, ANTILINEAR)
    trace = run_cascade(op, ray(E1 + E2), ray(E1))
    assert trace.joint_probability == pytest.approx(0.5, abs=1e-12)
    assert not chain_order_check(trace)


# -- randomized update law report ------------------------------------------------------


@pytest.mark.parametrize("dim", [2, 3])
def test_update_laws_hold_at_small_dimension(dim):
    report = check_prop2(dim, 120, rng=np.random.default_rng(12 + dim))
    assert report.ok, report.failures[:3]
    assert report.max_discrepancy <= 1e-9


def test_update_law_report_records_failures_under_impossible_tolerance():
    report = check_prop2(2, 20, rng=np.random.default_rng(13), tol=0.0)
    assert not report.ok  # float noise alone must trip an exact tolerance
    assert report.max_discrepancy > 0.0
