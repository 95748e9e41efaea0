"""Stationary phase distribution of the arrival-free generator.

The phase marginal solves pi A = 0, pi e = 1 where A is the entrywise sum
of the level blocks (the arrival terms cancel between the diagonal blocks,
so they never appear). One equation of pi A = 0 is redundant; the one for
the highest-indexed phase is replaced by the normalization and the dense
system is factored with partial pivoting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveSolutionError, SingularSystemError
from .generator import QbdBlocks

# residual bound relative to the largest |A| entry; worse means model bug
RESIDUAL_RTOL = 1e-10
# entries at or below this are treated as genuinely negative, not roundoff
NEGATIVE_ENTRY_TOL = -1e-9


@dataclass(frozen=True)
class StationaryVector:
    """Solved phase distribution and the residual of the solve.

    ``pi`` sums to one; ``residual`` is the max-norm of pi A achieved by
    the returned (pre-clamping) solution.
    """

    pi: np.ndarray
    residual: float


def phase_generator(blocks: QbdBlocks) -> np.ndarray:
    """Dense generator of the phase marginal: level_same + level_down."""
    return np.asarray((blocks.level_same + blocks.level_down).todense())


def solve_stationary(A: np.ndarray) -> StationaryVector:
    """Solve pi A = 0, pi e = 1 for an irreducible generator A.

    Raises SingularSystemError when the factorization fails or the residual
    exceeds RESIDUAL_RTOL relative to max|A| (rank deficiency beyond the
    expected one-dimensional null space), and NonPositiveSolutionError when
    the solution carries an entry below NEGATIVE_ENTRY_TOL (reducibility or
    numerical failure). Roundoff-scale negatives are clamped to zero and
    the vector renormalized.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("generator must be square")

    system = A.T.copy()
    system[-1, :] = 1.0  # replace the last phase's equation with pi e = 1
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    try:
        pi = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"stationary system is singular: {exc}") from exc

    scale = float(np.max(np.abs(A)))
    residual = float(np.max(np.abs(pi @ A)))
    if scale > 0.0 and residual > RESIDUAL_RTOL * scale:
        raise SingularSystemError(
            f"stationary residual {residual:.3e} exceeds {RESIDUAL_RTOL:.0e} "
            f"of max|A| = {scale:.3e}"
        )
    if np.min(pi) < NEGATIVE_ENTRY_TOL:
        raise NonPositiveSolutionError(
            f"stationary vector has entry {np.min(pi):.3e} < {NEGATIVE_ENTRY_TOL:.0e}"
        )
    pi = np.where(pi < 0.0, 0.0, pi)
    pi /= pi.sum()
    return StationaryVector(pi=pi, residual=residual)
