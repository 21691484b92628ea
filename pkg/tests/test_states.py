import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entcharge import (
    BipartiteDims,
    ShapeError,
    UnsupportedFormError,
    ValidationError,
    density_of,
    entanglement_entropy,
    hermitian_eigenvalues,
    is_maximally_entangled,
    is_product,
    pairwise_orthogonal,
    partial_trace,
    schmidt_coefficients,
    validate_state,
    von_neumann_entropy,
)
from helpers import random_pure_vector

D22 = BipartiteDims(2, 2)


def rotated_pair_state(theta: float) -> np.ndarray:
    return np.array([np.cos(theta), 0, 0, -1j * np.sin(theta)])


def test_dims_validation():
    with pytest.raises(ValidationError):
        BipartiteDims(0, 2)
    with pytest.raises(ValidationError):
        BipartiteDims(9, 8)  # joint 72 > cap
    assert BipartiteDims(1, 2).joint == 2


def test_validate_pure_state():
    s = validate_state(D22, [1, 0, 0, 0])
    assert s.is_pure
    assert np.array_equal(s.vector, [1, 0, 0, 0])


def test_validate_density_maximally_mixed():
    s = validate_state(D22, np.eye(4) / 4)
    assert not s.is_pure
    assert np.allclose(s.matrix, np.eye(4) / 4)


def test_validate_rejects_negative_eigenvalue_density():
    with pytest.raises(ValidationError, match="negative eigenvalue"):
        validate_state(D22, np.diag([0.6, 0.6, -0.1, -0.1]))


def test_validate_rejects_bad_trace():
    with pytest.raises(ValidationError, match="trace_tol"):
        validate_state(D22, np.eye(4) / 5)


def test_validate_rejects_non_hermitian():
    m = np.eye(4, dtype=complex) / 4
    m[0, 1] = 0.2
    with pytest.raises(ValidationError, match="Hermitian"):
        validate_state(D22, m)


def test_validate_rejects_bad_norm_and_renormalizes_small_deviation():
    with pytest.raises(ValidationError, match="norm"):
        validate_state(D22, [1, 1, 0, 0])
    v = np.array([1.0 + 5e-10, 0, 0, 0])
    s = validate_state(D22, v)
    assert abs(np.linalg.norm(s.vector) - 1) < 1e-15


def test_validate_rejects_wrong_length():
    with pytest.raises(ShapeError, match="dims"):
        validate_state(BipartiteDims(2, 3), [1, 0, 0, 0])


def test_density_of_basis_state():
    s = validate_state(D22, [1, 0, 0, 0])
    assert np.array_equal(density_of(s), np.diag([1, 0, 0, 0]).astype(complex))


def test_density_of_bell_projector_corners():
    s = validate_state(D22, np.array([1, 0, 0, 1]) / np.sqrt(2))
    rho = density_of(s)
    for idx in ((0, 0), (0, 3), (3, 0), (3, 3)):
        assert rho[idx] == pytest.approx(0.5, abs=1e-15)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    # density input is passed through unchanged
    d = validate_state(D22, rho)
    assert density_of(d) is d.matrix


def test_schmidt_product_state():
    s = validate_state(D22, [1, 0, 0, 0])
    assert np.allclose(schmidt_coefficients(s), [1.0, 0.0], atol=1e-12)


def test_schmidt_rotated_state_at_pi_over_6():
    theta = np.pi / 6
    s = validate_state(D22, rotated_pair_state(theta))
    assert np.allclose(schmidt_coefficients(s), [np.cos(theta), np.sin(theta)], atol=1e-12)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_schmidt_squares_match_reduced_eigenvalues(seed):
    rng = np.random.default_rng(seed)
    dims = BipartiteDims(3, 3)
    s = validate_state(dims, random_pure_vector(rng, 9))
    coeffs = schmidt_coefficients(s)
    assert coeffs.sum() >= 0 and abs((coeffs**2).sum() - 1) < 1e-9
    reduced = partial_trace(density_of(s), 3, 3, "B")
    evals = np.sort(hermitian_eigenvalues(reduced))[::-1]
    assert np.allclose(coeffs**2, evals, atol=1e-9)


def test_schmidt_rejects_density_form():
    d = validate_state(D22, np.eye(4) / 4)
    with pytest.raises(UnsupportedFormError):
        schmidt_coefficients(d)


def test_is_maximally_entangled_examples():
    bell = validate_state(D22, np.array([1, 0, 0, 1]) / np.sqrt(2))
    assert is_maximally_entangled(bell)
    assert not is_maximally_entangled(validate_state(D22, [1, 0, 0, 0]))
    # rotated state at theta=pi/4: reduced state equals I/2 by the trace oracle
    s = validate_state(D22, rotated_pair_state(np.pi / 4))
    red = partial_trace(density_of(s), 2, 2, "B")
    assert np.allclose(red, np.eye(2) / 2, atol=1e-12)
    assert is_maximally_entangled(s)


def test_pairwise_orthogonal_bell_states():
    from helpers import bell_vectors

    states = [validate_state(D22, v) for v in bell_vectors()]
    ok, witness = pairwise_orthogonal(states)
    assert ok and witness is None


def test_pairwise_orthogonal_duplicate_witness():
    s = validate_state(D22, [1, 0, 0, 0])
    ok, witness = pairwise_orthogonal([s, s])
    assert not ok
    i, j, overlap = witness
    assert (i, j) == (0, 1)
    assert overlap == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("theta", np.linspace(0, np.pi / 2, 7))
def test_pairwise_orthogonal_rotated_pair_all_theta(theta):
    a = validate_state(D22, np.array([np.cos(theta), 0, 0, -1j * np.sin(theta)]))
    b = validate_state(D22, np.array([0, np.cos(theta), -1j * np.sin(theta), 0]))
    # direct inner-product oracle
    assert abs(np.vdot(a.vector, b.vector)) < 1e-15
    ok, _ = pairwise_orthogonal([a, b])
    assert ok


def test_pairwise_orthogonal_mixed_dims_rejected():
    a = validate_state(D22, [1, 0, 0, 0])
    b = validate_state(BipartiteDims(1, 2), [1, 0])
    with pytest.raises(ShapeError):
        pairwise_orthogonal([a, b])


def test_is_product_examples():
    assert is_product(validate_state(D22, [0, 1, 0, 0]))  # |01>
    bell = validate_state(D22, np.array([1, 0, 0, 1]) / np.sqrt(2))
    assert not is_product(bell)
    nearly = validate_state(D22, rotated_pair_state(0.01))
    assert not is_product(nearly)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_entanglement_entropy_cross_module_consistency(seed):
    rng = np.random.default_rng(seed)
    s = validate_state(D22, random_pure_vector(rng, 4))
    via_schmidt = entanglement_entropy(s)
    via_reduced = von_neumann_entropy(partial_trace(density_of(s), 2, 2, "B"))
    assert via_schmidt == pytest.approx(via_reduced, abs=1e-9)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=20, deadline=None)
def test_pairwise_orthogonal_permutation_symmetric(seed):
    rng = np.random.default_rng(seed)
    states = [validate_state(D22, random_pure_vector(rng, 4)) for _ in range(3)]
    perm = list(rng.permutation(3))
    ok1, _ = pairwise_orthogonal(states)
    ok2, _ = pairwise_orthogonal([states[i] for i in perm])
    assert ok1 == ok2


def test_maximally_entangled_implies_not_product():
    for theta in (np.pi / 4,):
        s = validate_state(D22, rotated_pair_state(theta))
        assert is_maximally_entangled(s)
        assert not is_product(s)
