"""Transition kernel and block assembly for the level/phase process.

With the first station saturated (level >= 1), the only events that change
the phase are service completions. A completion at server i either passes
the customer downstream, blocks server i when the next station is full, or
— when it frees space behind a chain of blocked servers — collapses the
whole chain in one atomic step. The level drops exactly when that chain
reaches station 0, i.e. when a customer leaves the first station.

Two blocks are assembled over the phase space: ``level_same`` for
phase-changing completions that keep the level, and ``level_down`` for the
ones that lower it by one. Arrivals would contribute a diagonal block
(arrival rate times identity); they cancel out of every stationary
computation done here, so no arrival rate is ever stored.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import IndexOutOfRangeError, IneligibleServerError
from .model import TandemConfig
from .phases import Phase, PhaseSpace


@dataclass(frozen=True)
class TransitionOutcome:
    """Result of one service completion: the new phase and the level step."""

    new_phase: Phase
    level_delta: int  # 0 or -1


@dataclass(frozen=True)
class QbdBlocks:
    """Sparse rate blocks of the repeating generator rows.

    ``level_same`` carries the level-preserving rates; its diagonal holds
    the negated total exit rate of each phase (arrival terms excluded, they
    cancel). ``level_down`` carries the level-decreasing rates and has at
    most one entry per row. Row r of level_same + level_down sums to zero.
    """

    level_same: sparse.csr_matrix
    level_down: sparse.csr_matrix
    num_phases: int


def is_blocked(config: TandemConfig, m: Phase, server: int) -> bool:
    """True iff ``server`` is idled because the next station is full.

    The last server can never be blocked. Server i < K is blocked exactly
    when coordinate i+1 carries the blocking sentinel B_{i+1} + 2.
    """
    k = config.num_buffers
    if not 0 <= server <= k:
        raise IndexOutOfRangeError(f"server index {server} outside 0..{k}")
    if server == k:
        return False
    return m[server] == config.buffer_capacities[server] + 2


def eligible_completions(config: TandemConfig, m: Phase) -> tuple[int, ...]:
    """Servers that can finish a service next, in ascending order.

    Server 0 always has work (the level is assumed >= 1) and is eligible
    unless blocked; a downstream server needs at least one customer and
    must not be blocked itself.
    """
    k = config.num_buffers
    out = []
    for i in range(k + 1):
        if i >= 1 and m[i - 1] == 0:
            continue
        if i < k and m[i] == config.buffer_capacities[i] + 2:
            continue
        out.append(i)
    return tuple(out)


def apply_completion(config: TandemConfig, m: Phase, server: int) -> TransitionOutcome:
    """Phase and level change when ``server`` completes a service.

    The completed customer enters the next station if there is room, turns
    ``server`` into a blocked one if the next station is full, or departs
    from the last server. Whenever the customer actually leaves its
    station, the freed slot is refilled from a blocked upstream server if
    one is waiting, and the refill cascades toward the front of the line.
    The level drops iff the cascade reaches station 0.
    """
    if server not in eligible_completions(config, m):
        raise IneligibleServerError(
            f"server {server} cannot complete a service in phase {m}"
        )
    caps = config.buffer_capacities
    k = config.num_buffers
    new = list(m)
    level_delta = 0

    def release(j: int) -> None:
        """Station j just lost a customer; pull from a blocked chain."""
        nonlocal level_delta
        if j == 0:
            level_delta = -1  # the customer left station 0
            return
        if new[j - 1] == caps[j - 1] + 2:
            new[j - 1] = caps[j - 1] + 1  # held customer slides in
            release(j - 1)
        else:
            new[j - 1] -= 1

    if server == k:
        release(k)  # departure from the line
    elif new[server] <= caps[server]:
        new[server] += 1  # room downstream: customer moves on
        release(server)
    else:
        # next station is at B+1: the server holds the customer and blocks
        new[server] = caps[server] + 2

    return TransitionOutcome(new_phase=tuple(new), level_delta=level_delta)


def build_blocks(config: TandemConfig, space: PhaseSpace) -> QbdBlocks:
    """Assemble the level-preserving and level-decreasing rate blocks.

    Rows are visited in phase order and servers in ascending order, so the
    triplet streams (and the canonicalized CSR matrices) are identical
    across runs.
    """
    rates = config.service_rates
    n = space.num_phases
    rows_s: list[int] = []
    cols_s: list[int] = []
    vals_s: list[float] = []
    rows_d: list[int] = []
    cols_d: list[int] = []
    vals_d: list[float] = []
    exit_rate = np.zeros(n)

    for r, m in enumerate(space.phases):
        for i in eligible_completions(config, m):
            out = apply_completion(config, m, i)
            c = space.index_of[out.new_phase]
            if out.level_delta == 0:
                rows_s.append(r)
                cols_s.append(c)
                vals_s.append(rates[i])
            else:
                rows_d.append(r)
                cols_d.append(c)
                vals_d.append(rates[i])
            exit_rate[r] += rates[i]

    # diagonal of the level-preserving block balances the row sums to zero
    rows_s.extend(range(n))
    cols_s.extend(range(n))
    vals_s.extend(-exit_rate)

    level_same = sparse.coo_matrix(
        (vals_s, (rows_s, cols_s)), shape=(n, n)
    ).tocsr()
    level_down = sparse.coo_matrix(
        (vals_d, (rows_d, cols_d)), shape=(n, n)
    ).tocsr()
    return QbdBlocks(level_same=level_same, level_down=level_down, num_phases=n)


def triplet_lines(matrix: sparse.csr_matrix) -> list[str]:
    """Render a sparse block as "row col value" lines, row-major.

    Values use 17 significant digits, enough to round-trip a double, so the
    dump is byte-stable for identical inputs.
    """
    coo = matrix.tocoo()
    order = np.lexsort((coo.col, coo.row))
    return [
        f"{coo.row[i]} {coo.col[i]} {coo.data[i]:.17g}"
        for i in order
    ]
