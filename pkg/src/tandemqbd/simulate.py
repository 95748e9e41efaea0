"""Event-driven simulation of the physical line, as an independent check.

The simulator works on the physical state (per-station headcounts and
blocked flags), not on the encoded phases, and implements the release
cascade over that state on purpose: the analytic kernel and this module are
written twice so each validates the other.

Randomness is pinned for reproducibility across machines: the master seed
feeds ``numpy.random.SeedSequence``, one spawned child per server (plus one
for the arrival process, when used) drives a PCG64 bit generator, and
exponential variates come from the inverse transform -log1p(-u)/rate.
Identical (config, seed, target) triples give bit-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import InputError, NegativeArrivalRateError, TargetTooSmallError
from .model import TandemConfig

MIN_TARGET_DEPARTURES = 10_000
WARMUP_FRACTION = 0.1
NUM_BATCHES = 20


@dataclass(frozen=True)
class SimResult:
    """Saturated-line throughput estimate with batch-means error bars.

    ``throughput_estimate`` counts ``departures_counted`` departures after
    the warm-up; ``ci_half_width`` is the 95% half-width over
    NUM_BATCHES equal batches. The injection/in-system tallies let callers
    audit customer conservation.
    """

    throughput_estimate: float
    ci_half_width: float
    departures_counted: int
    seed: int
    total_departures: int
    customers_injected: int
    customers_in_system: int


@dataclass(frozen=True)
class ArrivalSimResult:
    """Level trace summary for a run with an actual Poisson arrival stream."""

    mean_level: float
    final_level: int
    departures: int
    arrivals: int
    in_system: int
    horizon: float
    seed: int


class _ExpStream:
    """Block-buffered inverse-transform exponential sampler."""

    __slots__ = ("_rng", "_scale", "_buf", "_pos")
    _BLOCK = 4096

    def __init__(self, seed_seq: np.random.SeedSequence, rate: float):
        self._rng = np.random.Generator(np.random.PCG64(seed_seq))
        self._scale = 1.0 / rate
        self._buf: list[float] = []
        self._pos = 0

    def draw(self) -> float:
        if self._pos == len(self._buf):
            u = self._rng.random(self._BLOCK)
            self._buf = (-np.log1p(-u) * self._scale).tolist()
            self._pos = 0
        v = self._buf[self._pos]
        self._pos += 1
        return v


def _spawn_streams(
    config: TandemConfig, seed: int, extra: int
) -> tuple[list[_ExpStream], list[np.random.SeedSequence]]:
    """One independent stream per server, plus ``extra`` spare children."""
    root = np.random.SeedSequence(seed % 2**64)
    children = root.spawn(config.num_servers + extra)
    streams = [
        _ExpStream(children[i], rate) for i, rate in enumerate(config.service_rates)
    ]
    return streams, children[config.num_servers :]


def simulate_saturated(
    config: TandemConfig, target_departures: int, seed: int = 0
) -> SimResult:
    """Measure the saturation throughput with a never-empty first station.

    Because the first station always has a customer waiting, the departure
    rate converges to the saturation arrival rate directly; no search over
    arrival rates is needed. The run discards a warm-up of
    WARMUP_FRACTION * target departures, then counts ``target_departures``
    of them.
    """
    if target_departures < MIN_TARGET_DEPARTURES:
        raise TargetTooSmallError(
            f"need at least {MIN_TARGET_DEPARTURES} departures, "
            f"got {target_departures}"
        )
    k = config.num_buffers
    caps = [0] + [b + 1 for b in config.buffer_capacities]  # station capacity
    streams, _ = _spawn_streams(config, seed, extra=0)
    draw = [s.draw for s in streams]

    inf = math.inf
    tnext = [inf] * (k + 1)
    occupancy = [0] * (k + 1)  # occupancy[0] unused: station 0 is saturated
    blocked = [False] * (k + 1)

    t = 0.0
    injected = 1
    tnext[0] = draw[0]()

    warmup = int(round(target_departures * WARMUP_FRACTION))
    batch = target_departures // NUM_BATCHES
    total_needed = warmup + target_departures
    departures = 0
    t_warm = 0.0
    boundaries: list[float] = []

    while departures < total_needed:
        i = 0
        best = tnext[0]
        for j in range(1, k + 1):
            if tnext[j] < best:
                best = tnext[j]
                i = j
        t = best
        tnext[i] = inf

        if i < k and occupancy[i + 1] == caps[i + 1]:
            blocked[i] = True  # hold the customer, idle the server
            continue

        if i == k:
            departures += 1
            if departures == warmup:
                t_warm = t
            elif departures > warmup and (departures - warmup) % batch == 0:
                boundaries.append(t)
        else:
            occupancy[i + 1] += 1
            if tnext[i + 1] == inf and not blocked[i + 1]:
                tnext[i + 1] = t + draw[i + 1]()

        # the freed slot propagates up any chain of blocked servers
        j = i
        while True:
            if j == 0:
                injected += 1  # saturated source: a fresh customer steps in
                tnext[0] = t + draw[0]()
                break
            occupancy[j] -= 1
            if blocked[j - 1]:
                blocked[j - 1] = False
                occupancy[j] += 1  # held customer slides in
                if tnext[j] == inf and occupancy[j] >= 1:
                    tnext[j] = t + draw[j]()
                j -= 1
            else:
                if tnext[j] == inf and occupancy[j] >= 1:
                    tnext[j] = t + draw[j]()
                break

    elapsed = t - t_warm
    estimate = target_departures / elapsed
    edges = [t_warm] + boundaries
    rates = batch / np.diff(edges)
    t_crit = stats.t.ppf(0.975, NUM_BATCHES - 1)
    half_width = float(t_crit * rates.std(ddof=1) / math.sqrt(NUM_BATCHES))
    in_system = 1 + sum(occupancy[1:])  # station 0 always holds exactly one
    return SimResult(
        throughput_estimate=estimate,
        ci_half_width=half_width,
        departures_counted=target_departures,
        seed=seed,
        total_departures=departures,
        customers_injected=injected,
        customers_in_system=in_system,
    )


def simulate_with_arrivals(
    config: TandemConfig, arrival_rate: float, horizon: float, seed: int = 0
) -> ArrivalSimResult:
    """Run the line with a real Poisson arrival stream and track the level.

    The level (headcount at station 0, held customer included) stays
    bounded for arrival rates below the saturation rate and drifts upward
    roughly like (rate - saturation rate) * horizon above it; this run
    exists to demonstrate that empirically.
    """
    if arrival_rate < 0.0:
        raise NegativeArrivalRateError(
            f"arrival rate must be non-negative, got {arrival_rate}"
        )
    if not horizon > 0.0:
        raise InputError(f"horizon must be positive, got {horizon}")
    k = config.num_buffers
    caps = [0] + [b + 1 for b in config.buffer_capacities]
    streams, spare = _spawn_streams(config, seed, extra=1)
    draw = [s.draw for s in streams]
    arrival_stream = (
        _ExpStream(spare[0], arrival_rate) if arrival_rate > 0.0 else None
    )

    inf = math.inf
    tnext = [inf] * (k + 1)
    occupancy = [0] * (k + 1)
    blocked = [False] * (k + 1)

    t = 0.0
    level = 0
    area = 0.0
    arrivals = 0
    departures = 0
    t_arrival = arrival_stream.draw() if arrival_stream is not None else inf

    while True:
        i = 0
        best = tnext[0]
        for j in range(1, k + 1):
            if tnext[j] < best:
                best = tnext[j]
                i = j
        if t_arrival <= best:
            if t_arrival > horizon:
                break
            area += level * (t_arrival - t)
            t = t_arrival
            level += 1
            arrivals += 1
            if tnext[0] == inf and not blocked[0]:
                tnext[0] = t + draw[0]()
            t_arrival = t + arrival_stream.draw()
            continue
        if best > horizon:
            break
        area += level * (best - t)
        t = best
        tnext[i] = inf

        if i < k and occupancy[i + 1] == caps[i + 1]:
            blocked[i] = True
            continue

        if i == k:
            departures += 1
        else:
            occupancy[i + 1] += 1
            if tnext[i + 1] == inf and not blocked[i + 1]:
                tnext[i + 1] = t + draw[i + 1]()

        j = i
        while True:
            if j == 0:
                level -= 1
                if level >= 1 and tnext[0] == inf:
                    tnext[0] = t + draw[0]()
                break
            occupancy[j] -= 1
            if blocked[j - 1]:
                blocked[j - 1] = False
                occupancy[j] += 1
                if tnext[j] == inf and occupancy[j] >= 1:
                    tnext[j] = t + draw[j]()
                j -= 1
            else:
                if tnext[j] == inf and occupancy[j] >= 1:
                    tnext[j] = t + draw[j]()
                break

    area += level * (horizon - t)
    return ArrivalSimResult(
        mean_level=area / horizon,
        final_level=level,
        departures=departures,
        arrivals=arrivals,
        in_system=level + sum(occupancy[1:]),
        horizon=horizon,
        seed=seed,
    )
