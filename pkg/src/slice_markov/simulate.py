"""Monte-Carlo simulation of synchronous slice admission.

The simulator is the ground truth the analytical chain is checked against:
it draws real timestamped request traffic (Poisson creations, exponential
slice lifetimes), folds each period's queue through the strategy, and
records the state at every period boundary. Creation counts are never
truncated here.

Within-period mechanics: a slice admitted during period t becomes active at
the t+1 boundary and its lifetime starts counting there, matching the
synchronous model where decisions take effect at period ends. A slice active
at a boundary with remaining lifetime below one period emits a release event
inside the period at an offset equal to that remaining lifetime; survivors
carry their lifetime forward reduced by one period. Equal timestamps (a
measure-zero event) resolve by generation order via the stable sort.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from operator import itemgetter

import numpy as np
from scipy.stats import chi2, chi2_contingency

from .arrivals import DemandScenario
from .domain import (
    AdmissibilityRegion,
    Request,
    ResourceModel,
    State,
    Strategy,
    apply_request,
    validate_strategy,
)
from .errors import InvalidStrategyError


@dataclass(frozen=True)
class SimConfig:
    """Simulation protocol: run count, horizon, seeding, and start policy.

    ``initial_state=None`` starts each run in a state drawn uniformly from
    the region; a fixed tuple starts every run there.
    """

    num_runs: int
    periods_per_run: int
    seed: int
    initial_state: State | None = None

    def __post_init__(self):
        if self.num_runs < 1:
            raise ValueError(f"num_runs must be positive, got {self.num_runs}")
        if self.periods_per_run < 1:
            raise ValueError(f"periods_per_run must be positive, got {self.periods_per_run}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")
        if self.initial_state is not None:
            object.__setattr__(self, "initial_state", tuple(self.initial_state))


@dataclass
class EmpiricalMatrix:
    """Transition estimates from counted boundary-state pairs.

    Rows with no visits keep zero probabilities and are reported in
    ``zero_visit_rows`` rather than being filled with invented values.
    """

    counts: np.ndarray
    probs: np.ndarray
    visits: np.ndarray
    region: AdmissibilityRegion

    @property
    def zero_visit_rows(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.visits == 0))


def run_rng(seed: int, run_index: int) -> np.random.Generator:
    """Independent per-run substream derived from (seed, run index)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(run_index,))))


def generate_period_queue(
    state: State,
    scenario: DemandScenario,
    active_lifetimes: list[list[float]],
    rng: np.random.Generator,
) -> list[tuple[float, Request]]:
    """One period's request queue, sorted by within-period timestamp.

    Creation counts are Poisson per type with uniform timestamps; every
    active slice with remaining lifetime under one period emits a release at
    that offset. ``active_lifetimes`` must hold exactly ``state[n]`` entries
    for each type n.
    """
    events: list[tuple[float, Request]] = []
    for n, rate in enumerate(scenario.creation_rates):
        if len(active_lifetimes[n]) != state[n]:
            raise RuntimeError(
                f"lifetime bookkeeping holds {len(active_lifetimes[n])} slices of type {n + 1}, "
                f"state says {state[n]}"
            )
        count = rng.poisson(rate)
        if count:
            kind = n + 1
            for stamp in rng.random(count):
                events.append((stamp, kind))
    for n, lifetimes in enumerate(active_lifetimes):
        kind = -(n + 1)
        for remaining in lifetimes:
            if remaining < 1.0:
                events.append((remaining, kind))
    events.sort(key=itemgetter(0))
    return events


def run_episode(
    region: AdmissibilityRegion,
    scenario: DemandScenario,
    strategy: Strategy,
    periods: int,
    rng: np.random.Generator,
    initial_state: State | None = None,
) -> np.ndarray:
    """Simulate one run; returns region indices at each of periods+1 boundaries.

    Initial slices get fresh exponential lifetimes: the residual lifetime of
    an exponential in steady state is again exponential, so no aging needs
    to be modeled. A state outside the region indicates a bookkeeping bug
    and aborts.
    """
    if initial_state is None:
        state = region.states[int(rng.integers(len(region)))]
    else:
        state = tuple(initial_state)
        if state not in region.index_of:
            raise ValueError(f"initial state {state} not in region")
    means = scenario.mean_lifetimes
    lifetimes = [
        [float(rng.exponential(means[n])) for _ in range(state[n])]
        for n in range(scenario.num_types)
    ]
    trajectory = np.empty(periods + 1, dtype=np.int64)
    trajectory[0] = region.index_of[state]
    for t in range(periods):
        queue = generate_period_queue(state, scenario, lifetimes, rng)
        survivors = [
            [remaining - 1.0 for remaining in per_type if remaining >= 1.0]
            for per_type in lifetimes
        ]
        for _, kind in queue:
            if strategy.decide(kind, state):
                state = apply_request(state, kind, True)
                if kind > 0:
                    survivors[kind - 1].append(float(rng.exponential(means[kind - 1])))
        index = region.index_of.get(state)
        if index is None:
            raise RuntimeError(f"simulated state {state} left the region")
        lifetimes = survivors
        trajectory[t + 1] = index
    return trajectory


def _episode_batch(args) -> np.ndarray:
    region, scenario, strategy, sim, start, stop = args
    out = np.empty((stop - start, sim.periods_per_run + 1), dtype=np.int64)
    for offset, run in enumerate(range(start, stop)):
        out[offset] = run_episode(
            region, scenario, strategy, sim.periods_per_run, run_rng(sim.seed, run), sim.initial_state
        )
    return out


def simulate_episodes(
    model: ResourceModel,
    region: AdmissibilityRegion,
    scenario: DemandScenario,
    strategy: Strategy,
    sim: SimConfig,
    workers: int | None = None,
) -> np.ndarray:
    """All runs of a protocol; returns an array of shape (num_runs, periods+1).

    Run r always uses the substream (seed, r), so the result is independent
    of execution order and identical across worker counts.
    """
    if not validate_strategy(model, region, strategy):
        raise InvalidStrategyError("strategy leads outside the region")
    if workers is not None and workers > 1:
        bounds = np.linspace(0, sim.num_runs, min(workers, sim.num_runs) + 1, dtype=int)
        tasks = [
            (region, scenario, strategy, sim, int(start), int(stop))
            for start, stop in zip(bounds[:-1], bounds[1:])
            if stop > start
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return np.vstack(list(pool.map(_episode_batch, tasks)))
    return _episode_batch((region, scenario, strategy, sim, 0, sim.num_runs))


def estimate_empirical_matrix(region: AdmissibilityRegion, trajectories: np.ndarray) -> EmpiricalMatrix:
    """Count consecutive boundary pairs across all runs and row-normalize."""
    trajectories = np.asarray(trajectories)
    if trajectories.ndim == 1:
        trajectories = trajectories[None, :]
    if trajectories.size == 0 or trajectories.shape[1] < 2:
        raise ValueError("need at least one observed transition")
    size = len(region)
    src = trajectories[:, :-1].ravel()
    dst = trajectories[:, 1:].ravel()
    counts = np.bincount(src * size + dst, minlength=size * size).reshape(size, size)
    visits = counts.sum(axis=1)
    probs = np.zeros((size, size))
    visited = visits > 0
    probs[visited] = counts[visited] / visits[visited, None]
    return EmpiricalMatrix(counts=counts, probs=probs, visits=visits, region=region)


def rmse(analytical_probs: np.ndarray, empirical: EmpiricalMatrix) -> float:
    """Symmetric-relative root mean square error between the two matrices.

    Each entry contributes [2(a - e) / (a + e)]^2, with 0/0 counted as zero
    agreement (both sides call the transition impossible). Rows the
    simulation never visited are left out of the sum; the divisor stays the
    full squared region size.
    """
    analytical = np.asarray(analytical_probs, dtype=float)
    size = len(empirical.region)
    if analytical.shape != (size, size):
        raise ValueError(f"matrix shape {analytical.shape} does not match region size {size}")
    diff = 2.0 * (analytical - empirical.probs)
    denom = analytical + empirical.probs
    terms = np.zeros_like(denom)
    np.divide(diff, denom, out=terms, where=denom > 0)
    terms *= terms
    visited = empirical.visits > 0
    return float(np.sqrt(terms[visited].sum() / size**2))


def markov_order_test(trajectories: np.ndarray, num_states: int) -> tuple[float, int, float]:
    """Chi-square check that the next state depends on history only through
    the present: within each stratum of s(t), tests independence of s(t+1)
    from s(t-1) on the observed triple counts, then pools the statistics.

    Returns (statistic, degrees of freedom, p-value). Strata without at
    least a 2x2 table of occupied rows and columns carry no information and
    are skipped.
    """
    trajectories = np.asarray(trajectories)
    if trajectories.ndim == 1:
        trajectories = trajectories[None, :]
    if trajectories.shape[1] < 3:
        raise ValueError("need trajectories of at least 3 boundaries")
    prev = trajectories[:, :-2].ravel()
    mid = trajectories[:, 1:-1].ravel()
    nxt = trajectories[:, 2:].ravel()
    codes = (prev * num_states + mid) * num_states + nxt
    triples = np.bincount(codes, minlength=num_states**3).reshape(num_states, num_states, num_states)
    statistic = 0.0
    dof = 0
    for j in range(num_states):
        table = triples[:, j, :]
        rows = table.sum(axis=1) > 0
        cols = table.sum(axis=0) > 0
        table = table[np.ix_(rows, cols)]
        if table.shape[0] < 2 or table.shape[1] < 2:
            continue
        result = chi2_contingency(table, correction=False)
        statistic += float(result.statistic)
        dof += int(result.dof)
    pvalue = float(chi2.sf(statistic, dof)) if dof else 1.0
    return statistic, dof, pvalue
