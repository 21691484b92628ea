import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entcharge import (
    BipartiteDims,
    InfoInterval,
    OptimizerConfig,
    PreconditionError,
    ShapeError,
    ValidationError,
    accessible_info_exact_orthogonal,
    bell_basis,
    delta_epsilon,
    density_of,
    equal_probs,
    estimate_accessible_info,
    holevo_chi,
    lower_bound_general,
    lower_bound_pure,
    make_ensemble,
    make_povm,
    mutual_information_of_measurement,
    quantum_mutual_information,
    shannon_entropy,
    validate_state,
    von_neumann_entropy,
)
from helpers import random_orthogonal_pure_ensemble

D12 = BipartiteDims(1, 2)
D22 = BipartiteDims(2, 2)


def two_state_ensemble(gamma: float):
    """Two equal-prob pure qubit states with overlap cos(gamma), dims 1x2."""
    s0 = validate_state(D12, [1, 0])
    s1 = validate_state(D12, [np.cos(gamma), np.sin(gamma)])
    return make_ensemble([(0.5, s0), (0.5, s1)])


def grid_best_projective(gamma: float, points: int = 10_000) -> float:
    """1-D sweep over projective measurement angles; independent oracle."""
    angles = np.linspace(0.0, np.pi, points, endpoint=False)
    q0 = np.cos(angles) ** 2
    q1 = (np.cos(gamma) * np.cos(angles) + np.sin(gamma) * np.sin(angles)) ** 2
    table = np.stack([0.5 * q0, 0.5 * (1 - q0), 0.5 * q1, 0.5 * (1 - q1)])

    def h(p):
        safe = np.where(p > 0, p, 1.0)
        return -(safe * np.log2(safe))

    h_y = h(table[0] + table[2]) + h(table[1] + table[3])
    h_xy = h(table).sum(axis=0)
    return float((1.0 + h_y - h_xy).max())


def test_make_povm_validation():
    make_povm(D12, [np.eye(2)])
    with pytest.raises(ValidationError, match="identity"):
        make_povm(D12, [np.eye(2) / 2])
    with pytest.raises(ValidationError, match="negative eigenvalue"):
        make_povm(D12, [np.diag([1.5, 1.0]), np.diag([-0.5, 0.0])])
    with pytest.raises(ShapeError):
        make_povm(D22, [np.eye(2)])


def test_optimizer_config_validation():
    with pytest.raises(ValidationError):
        OptimizerConfig(outcomes=1)
    with pytest.raises(ValidationError):
        OptimizerConfig(restarts=0)


def test_mutual_information_identity_povm_is_zero():
    e = bell_basis(equal_probs(4))
    m = make_povm(D22, [np.eye(4)])
    assert mutual_information_of_measurement(e, m) == 0.0


def test_mutual_information_own_projectors_extract_everything():
    e = bell_basis([0.5, 0.25, 0.125, 0.125])
    m = make_povm(D22, [density_of(s) for s in e.states])
    assert mutual_information_of_measurement(e, m) == pytest.approx(1.75, abs=1e-9)


def test_mutual_information_zero_plus_ensemble_computational_basis():
    s0 = validate_state(D12, [1, 0])
    plus = validate_state(D12, np.array([1, 1]) / np.sqrt(2))
    e = make_ensemble([(0.5, s0), (0.5, plus)])
    m = make_povm(D12, [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    # explicit probability-table oracle: rows (1/2, 0) and (1/4, 1/4)
    table = np.array([[0.5, 0.0], [0.25, 0.25]])
    expected = (
        shannon_entropy(table.sum(axis=1))
        + shannon_entropy(table.sum(axis=0))
        - shannon_entropy(table.ravel())
    )
    assert expected == pytest.approx(1 + shannon_entropy([0.75, 0.25]) - 1.5, abs=1e-12)
    assert mutual_information_of_measurement(e, m) == pytest.approx(expected, abs=1e-12)


def test_mutual_information_dims_mismatch():
    e = bell_basis(equal_probs(4))
    with pytest.raises(ShapeError):
        mutual_information_of_measurement(e, make_povm(D12, [np.eye(2)]))


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_mutual_information_caps(seed):
    rng = np.random.default_rng(seed)
    vectors = [rng.standard_normal(2) + 1j * rng.standard_normal(2) for _ in range(3)]
    states = [validate_state(D12, v / np.linalg.norm(v)) for v in vectors]
    probs = rng.dirichlet(np.ones(3))
    e = make_ensemble(zip(probs, states))
    g = rng.standard_normal((3, 2, 2)) + 1j * rng.standard_normal((3, 2, 2))
    mats = np.einsum("yki,ykj->yij", g.conj(), g)
    total = mats.sum(axis=0)
    w, v = np.linalg.eigh((total + total.conj().T) / 2)
    inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    povm = make_povm(D12, list(np.einsum("ab,ybc,cd->yad", inv_sqrt, mats, inv_sqrt)))
    value = mutual_information_of_measurement(e, povm)
    hx = shannon_entropy(probs)
    chi = holevo_chi(probs, [density_of(s) for s in e.states])
    assert value <= hx + 1e-9
    assert value <= chi + 1e-9
    assert value >= 0.0


def test_refining_a_povm_never_loses_information():
    e = two_state_ensemble(np.pi / 8)
    p0 = np.diag([1.0, 0.0])
    p1 = np.diag([0.0, 1.0])
    coarse = make_povm(D12, [p0 + 0.5 * p1, 0.5 * p1])
    base = mutual_information_of_measurement(e, coarse)
    # split the first element into two nonproportional positive parts
    refined = make_povm(D12, [p0, 0.5 * p1, 0.5 * p1])
    assert mutual_information_of_measurement(e, refined) >= base - 1e-9


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_refinement_monotonicity_random_splits(seed):
    rng = np.random.default_rng(seed)
    vectors = [rng.standard_normal(2) + 1j * rng.standard_normal(2) for _ in range(2)]
    e = make_ensemble([(0.5, validate_state(D12, v / np.linalg.norm(v))) for v in vectors])
    # random two-outcome POVM, then split element 0 as sqrt(M) P sqrt(M) + rest
    g = rng.standard_normal((2, 2, 2)) + 1j * rng.standard_normal((2, 2, 2))
    mats = np.einsum("yki,ykj->yij", g.conj(), g)
    total = mats.sum(axis=0)
    w, v = np.linalg.eigh((total + total.conj().T) / 2)
    inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    elements = list(np.einsum("ab,ybc,cd->yad", inv_sqrt, mats, inv_sqrt))
    coarse = make_povm(D12, elements)
    m0 = elements[0]
    we, ve = np.linalg.eigh((m0 + m0.conj().T) / 2)
    root = (ve * np.sqrt(np.clip(we, 0.0, None))) @ ve.conj().T
    u = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    proj = np.outer(u, u.conj()) / np.vdot(u, u).real
    part = root @ proj @ root
    refined = make_povm(D12, [part, m0 - part, elements[1]])
    base = mutual_information_of_measurement(e, coarse)
    assert mutual_information_of_measurement(e, refined) >= base - 1e-9


def test_accessible_info_exact_orthogonal():
    assert accessible_info_exact_orthogonal(bell_basis(equal_probs(4))) == pytest.approx(2.0, abs=1e-12)
    assert accessible_info_exact_orthogonal(bell_basis([1, 0, 0, 0])) == 0.0
    from entcharge import rotated_basis

    assert accessible_info_exact_orthogonal(rotated_basis(0.3, equal_probs(4))) == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(PreconditionError, match="orthogonality"):
        accessible_info_exact_orthogonal(two_state_ensemble(np.pi / 8))


def test_estimate_orthogonal_short_circuit():
    info = estimate_accessible_info(bell_basis(equal_probs(4)))
    assert info.lo == info.hi == pytest.approx(2.0, abs=1e-12)


def test_estimate_identical_states_interval_is_zero():
    bell = bell_basis(equal_probs(4)).states[0]
    e = make_ensemble([(0.5, bell), (0.5, bell)])
    info = estimate_accessible_info(e, OptimizerConfig(restarts=2, max_iters=40))
    assert info.hi == 0.0
    assert info.lo == pytest.approx(0.0, abs=1e-9)


def test_estimate_two_state_matches_grid_oracle():
    gamma = np.pi / 8
    e = two_state_ensemble(gamma)
    info = estimate_accessible_info(e)
    best = grid_best_projective(gamma)
    assert abs(info.lo - best) <= 1e-3
    assert info.lo <= info.hi + 1e-9
    chi = holevo_chi([0.5, 0.5], [density_of(s) for s in e.states])
    assert info.hi == pytest.approx(min(1.0, chi), abs=1e-12)


def test_estimate_deterministic_for_fixed_seed():
    e = two_state_ensemble(np.pi / 8)
    cfg = OptimizerConfig(restarts=3, max_iters=120, seed=11)
    a = estimate_accessible_info(e, cfg)
    b = estimate_accessible_info(e, cfg)
    assert a.lo == b.lo and a.hi == b.hi
    other = estimate_accessible_info(e, OptimizerConfig(restarts=3, max_iters=120, seed=12))
    assert other.lo <= a.hi + 1e-9  # different seed still certified


def test_delta_epsilon_orthogonal_pure_is_zero():
    e = bell_basis(equal_probs(4))
    info = estimate_accessible_info(e)
    delta = delta_epsilon(e, info)
    assert delta.lo == pytest.approx(0.0, abs=1e-9)
    assert delta.hi == pytest.approx(0.0, abs=1e-9)
    # oracle: S(sum p |psi><psi|) = H(p) for orthogonal pure states
    from entcharge import average_state

    assert von_neumann_entropy(average_state(e)) == pytest.approx(shannon_entropy(equal_probs(4)), abs=1e-9)


def test_delta_epsilon_identical_pure_states_zero():
    s = validate_state(D12, [1, 0])
    e = make_ensemble([(0.5, s), (0.5, s)])
    delta = delta_epsilon(e, InfoInterval(0.0, 0.0))
    assert delta.lo == pytest.approx(0.0, abs=1e-12)
    assert delta.hi == pytest.approx(0.0, abs=1e-12)


def test_delta_epsilon_orthogonal_mixed_degenerate_nonzero():
    d = validate_state(D22, np.diag([0.5, 0.5, 0.0, 0.0]).astype(complex))
    o = validate_state(D22, np.diag([0.0, 0.0, 0.5, 0.5]).astype(complex))
    e = make_ensemble([(0.5, d), (0.5, o)])
    hx = 1.0
    delta = delta_epsilon(e, InfoInterval(hx, hx))
    assert delta.hi - delta.lo == pytest.approx(0.0, abs=1e-12)
    assert delta.lo == pytest.approx(1.0, abs=1e-9)  # S(rho_AB)=2, H(X)=1


def test_lower_bound_general_reduces_to_pure_bound_when_orthogonal():
    rng = np.random.default_rng(5)
    e = random_orthogonal_pure_ensemble(rng, 2)
    info = estimate_accessible_info(e)
    assert lower_bound_general(e, info) == pytest.approx(lower_bound_pure(e), abs=1e-9)


def test_lower_bound_general_identical_bell_states():
    # Entropy-oracle confirmation: each member's reduced entropy is 1,
    # I(A;B) of the (pure) average Bell state is 2, I_Global = 0, Delta = 0,
    # so the bound is 1 - 2 - 0 = -1.
    bell = bell_basis(equal_probs(4)).states[0]
    e = make_ensemble([(0.5, bell), (0.5, bell)])
    from entcharge import average_state

    assert quantum_mutual_information(average_state(e), D22) == pytest.approx(2.0, abs=1e-9)
    info = estimate_accessible_info(e, OptimizerConfig(restarts=2, max_iters=40))
    assert lower_bound_general(e, info) == pytest.approx(-1.0, abs=1e-9)


def test_lower_bound_general_two_state_composed_oracles():
    # value recomposed from independent pieces: the grid-backed info interval
    # plus entropy evaluations on explicit matrices
    gamma = np.pi / 8
    e = two_state_ensemble(gamma)
    info = estimate_accessible_info(e)
    from entcharge import average_state, partial_trace

    avg = average_state(e)
    avg_member = sum(
        0.5 * von_neumann_entropy(partial_trace(density_of(s), 1, 2, "B")) for s in e.states
    )
    mutual = quantum_mutual_information(avg, D12)
    delta_hi = von_neumann_entropy(avg) - info.lo
    expected = avg_member - mutual - delta_hi
    assert lower_bound_general(e, info) == pytest.approx(expected, abs=1e-12)
    # dims 1x2 means no correlations at all: bound reduces to -Delta.hi
    assert mutual == pytest.approx(0.0, abs=1e-12)
    assert avg_member == pytest.approx(0.0, abs=1e-12)


def test_lower_bound_general_requires_pure_members():
    d = validate_state(D22, np.eye(4) / 4)
    e = make_ensemble([(1.0, d)])
    with pytest.raises(PreconditionError, match="pure"):
        lower_bound_general(e, InfoInterval(0.0, 0.0))


def test_info_interval_rejects_inverted():
    with pytest.raises(ValidationError):
        InfoInterval(1.0, 0.0)
