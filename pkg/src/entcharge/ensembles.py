"""The ensemble data model {p_X, rho_X} with its derived objects: average
state, per-party reduced ensembles and structural classification flags.

Zero-probability members are retained: they affect orthogonality and
entanglement flags but contribute nothing to entropies. Member order is
preserved for reporting and witnesses but never changes computed values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entropy import shannon_entropy, valid_probs
from .errors import ShapeError, ValidationError
from .linalg import DEFAULT_TOLERANCES, Tolerances, partial_trace
from .states import (
    BipartiteDims,
    BipartiteState,
    density_of,
    is_maximally_entangled,
    is_product,
    pairwise_orthogonal,
)

# Probabilities at or below this floor count as numerically zero for support.
PROB_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class Ensemble:
    """A validated ensemble of bipartite states with probabilities.

    known_charge is an optional cited value attached by generators for
    families whose charge is known on other grounds; it is metadata, kept
    distinct from computed bounds, and never affects verdicts.
    """

    dims: BipartiteDims
    members: tuple[tuple[float, BipartiteState], ...]
    label: str | None = None
    known_charge: float | None = None
    known_charge_note: str | None = None

    @property
    def probs(self) -> np.ndarray:
        return np.array([p for p, _ in self.members])

    @property
    def states(self) -> list[BipartiteState]:
        return [s for _, s in self.members]


@dataclass(frozen=True)
class StructureFlags:
    """Structural predicates of an ensemble, as used by the bounds engine."""

    all_pure: bool
    mutually_orthogonal: bool
    all_maximally_entangled: bool
    all_product: bool
    support_size: int


def make_ensemble(
    members,
    label: str | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
    known_charge: float | None = None,
    known_charge_note: str | None = None,
) -> Ensemble:
    """Build an Ensemble from (prob, BipartiteState) pairs, validating probs and dims."""
    pairs = [(float(p), s) for p, s in members]
    if not pairs:
        raise ValidationError("ensemble must have at least one member")
    valid_probs([p for p, _ in pairs], tol)
    dims = pairs[0][1].dims
    for k, (_, s) in enumerate(pairs):
        if s.dims != dims:
            raise ShapeError(
                f"member {k} has dims {s.dims.dA}x{s.dims.dB}, expected {dims.dA}x{dims.dB}"
            )
    return Ensemble(
        dims=dims,
        members=tuple(pairs),
        label=label,
        known_charge=known_charge,
        known_charge_note=known_charge_note,
    )


def average_state(e: Ensemble) -> np.ndarray:
    """rho = sum_X p_X rho_X."""
    n = e.dims.joint
    out = np.zeros((n, n), dtype=complex)
    for p, s in e.members:
        if p != 0.0:
            out += p * density_of(s)
    return out


def reduced_ensemble(e: Ensemble, party: str) -> tuple[np.ndarray, list[np.ndarray]]:
    """Probabilities plus each member partial-traced down to the given party."""
    if party == "A":
        traced = "B"
    elif party == "B":
        traced = "A"
    else:
        raise ValidationError(f"party must be 'A' or 'B', got {party!r}")
    mats = [partial_trace(density_of(s), e.dims.dA, e.dims.dB, traced) for _, s in e.members]
    return e.probs, mats


def classify_structure(e: Ensemble, tol: Tolerances = DEFAULT_TOLERANCES) -> StructureFlags:
    """Compute the structure flags via the state-module predicates.

    Flags cover all members including zero-probability ones; support_size
    counts only members with probability above PROB_FLOOR.
    """
    states = e.states
    all_pure = all(s.is_pure for s in states)
    orthogonal, _ = pairwise_orthogonal(states, tol)
    all_max = all(is_maximally_entangled(s, tol) for s in states)
    all_prod = all_pure and all(is_product(s, tol) for s in states)
    support = int(sum(1 for p, _ in e.members if p > PROB_FLOOR))
    return StructureFlags(
        all_pure=all_pure,
        mutually_orthogonal=orthogonal,
        all_maximally_entangled=all_max,
        all_product=all_prod,
        support_size=support,
    )


def shannon_of(e: Ensemble, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """H(X) of the probability vector; zero-probability members contribute 0."""
    return shannon_entropy(e.probs, tol)
