"""Bipartite state model: validation plus the structural predicates that the
charge bounds condition on (purity, orthogonality, maximal entanglement,
product structure).

Pure states are stored as vectors, not projectors, so Schmidt structure stays
cheap. Global phase is never normalized away; every predicate here is
phase-invariant by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, UnsupportedFormError, ValidationError
from .linalg import (
    DEFAULT_TOLERANCES,
    MAX_JOINT_DIM,
    Tolerances,
    as_square_matrix,
    density_eigenvalues,
    frobenius,
    partial_trace,
)

# Below this deviation a pure vector is already unit to machine precision and
# is kept bit-identical, which keeps canonical file round-trips byte-stable.
_RENORM_FLOOR = 1e-15


@dataclass(frozen=True)
class BipartiteDims:
    """Local dimensions (dA, dB) of a bipartite system."""

    dA: int
    dB: int

    def __post_init__(self) -> None:
        if self.dA < 1 or self.dB < 1:
            raise ValidationError(f"local dims must be >= 1, got {self.dA}x{self.dB}")
        if self.dA * self.dB > MAX_JOINT_DIM:
            raise ValidationError(
                f"joint dimension {self.dA * self.dB} exceeds the cap {MAX_JOINT_DIM}"
            )

    @property
    def joint(self) -> int:
        return self.dA * self.dB


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """A validated bipartite state, either a pure vector or a density matrix.

    Construct through validate_state (or the generators); the arrays are
    marked read-only and must be treated as immutable.
    """

    dims: BipartiteDims
    vector: np.ndarray | None
    matrix: np.ndarray | None

    @property
    def is_pure(self) -> bool:
        return self.vector is not None


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def validate_state(dims: BipartiteDims, data, tol: Tolerances = DEFAULT_TOLERANCES) -> BipartiteState:
    """Validate raw amplitudes (1-D) or matrix entries (2-D) into a state.

    Pure inputs whose norm deviates from 1 by at most trace_tol are
    renormalized; larger deviations are rejected. Density inputs must be
    Hermitian within hermiticity_tol, PSD within eigenvalue_clamp and have
    unit trace within trace_tol.
    """
    a = np.asarray(data, dtype=complex)
    n = dims.joint
    if a.ndim == 1:
        if a.shape[0] != n:
            raise ShapeError(
                f"pure state has length {a.shape[0]}, but dims {dims.dA}x{dims.dB} require {n}"
            )
        if not np.all(np.isfinite(a)):
            raise ValidationError("pure-state amplitudes must be finite (no NaN/Inf)")
        norm = float(np.linalg.norm(a))
        dev = abs(norm - 1.0)
        if dev > tol.trace_tol:
            raise ValidationError(
                f"pure state norm {norm!r} deviates from 1 by {dev:.3e}, "
                f"beyond trace_tol={tol.trace_tol:.0e}"
            )
        if dev > _RENORM_FLOOR:
            a = a / norm
        return BipartiteState(dims, vector=_freeze(a), matrix=None)
    if a.ndim == 2:
        m = as_square_matrix(a)
        if m.shape[0] != n:
            raise ShapeError(
                f"density matrix dim {m.shape[0]} does not match dims {dims.dA}x{dims.dB} (joint {n})"
            )
        density_eigenvalues(m, tol)
        return BipartiteState(dims, vector=None, matrix=_freeze(m))
    raise ShapeError("state data must be a vector (pure) or a square matrix (density)")


def density_of(s: BipartiteState) -> np.ndarray:
    """Density matrix of a state; |psi><psi| for pure input, identity otherwise."""
    if s.is_pure:
        return np.outer(s.vector, s.vector.conj())
    return s.matrix


def schmidt_coefficients(s: BipartiteState) -> np.ndarray:
    """Descending Schmidt coefficients of a pure state (min(dA, dB) values)."""
    if not s.is_pure:
        raise UnsupportedFormError("Schmidt coefficients are defined for pure states only")
    return np.linalg.svd(s.vector.reshape(s.dims.dA, s.dims.dB), compute_uv=False)


def is_maximally_entangled(s: BipartiteState, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """True iff s is pure with dA = dB = d and both reduced states equal I/d."""
    if not s.is_pure or s.dims.dA != s.dims.dB:
        return False
    d = s.dims.dA
    rho = density_of(s)
    target = np.eye(d) / d
    for party in ("A", "B"):
        red = partial_trace(rho, d, d, party)
        if frobenius(red - target) > tol.orthogonality_tol:
            return False
    return True


def pairwise_orthogonal(
    states: list[BipartiteState] | tuple[BipartiteState, ...],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[bool, tuple[int, int, float] | None]:
    """Check Tr(rho_X rho_Y) <= orthogonality_tol for every pair X != Y.

    For PSD matrices this is support orthogonality, the standard
    perfectly-distinguishable criterion. Returns (True, None) on success,
    else (False, (i, j, overlap)) for the first violating pair.
    """
    if not states:
        return True, None
    dims = states[0].dims
    for k, s in enumerate(states):
        if s.dims != dims:
            raise ShapeError(f"state {k} has dims {s.dims.dA}x{s.dims.dB}, expected {dims.dA}x{dims.dB}")
    mats = [density_of(s) for s in states]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            overlap = float(np.real(np.trace(mats[i] @ mats[j])))
            if overlap > tol.orthogonality_tol:
                return False, (i, j, overlap)
    return True, None


def is_product(s: BipartiteState, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """True iff the largest Schmidt coefficient is within orthogonality_tol of 1."""
    coeffs = schmidt_coefficients(s)
    return bool(coeffs[0] >= 1.0 - tol.orthogonality_tol)
