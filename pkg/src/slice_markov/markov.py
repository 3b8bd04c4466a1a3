"""Synchronous transition-matrix construction and chain analytics.

The transition probability from one period-boundary state to the next
aggregates, over every request bag that can arrive within a period, the bag's
joint probability split across the states its equally likely orderings lead
to. Creation counts are unbounded, so bags are truncated at a per-type cap on
creation multiplicities; release multiplicities are naturally bounded by the
row state. Each row therefore sums to slightly less than one before
renormalization, and the shortfall (the truncated Poisson tail mass) is
recorded per row.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .arrivals import DemandScenario, creation_pmf, multiset_prob, request_kinds, sequence_prob
from .domain import (
    AdmissibilityRegion,
    ResourceModel,
    State,
    Strategy,
    apply_request,
    apply_sequence,
    state_label,
    validate_strategy,
)
from .errors import (
    ConvergenceError,
    GuardExceededError,
    InvalidStrategyError,
    ReducibleChainError,
)

ROW_SUM_TOL = 1e-12


@dataclass(eq=False)
class TransitionMatrix:
    """A row-indexed transition probability matrix over an enumerated region.

    ``probs[i, j]`` is the one-period probability of moving from region state
    ``i`` to ``j``. ``row_deficits`` holds the truncated tail mass of each row
    before any renormalization; when ``renormalized`` is set the rows have
    been scaled to sum to one.
    """

    probs: np.ndarray
    region: AdmissibilityRegion
    renormalized: bool
    row_deficits: np.ndarray

    def __post_init__(self):
        size = len(self.region)
        self.probs = np.asarray(self.probs, dtype=float)
        self.row_deficits = np.asarray(self.row_deficits, dtype=float)
        if self.probs.shape != (size, size):
            raise ValueError(f"matrix shape {self.probs.shape} does not match region size {size}")
        if self.row_deficits.shape != (size,):
            raise ValueError("row_deficits must have one entry per region state")
        if np.any(self.probs < -ROW_SUM_TOL) or np.any(self.probs > 1 + ROW_SUM_TOL):
            raise ValueError("matrix entries must lie in [0, 1]")
        if np.any(self.row_deficits < -ROW_SUM_TOL):
            raise ValueError("row deficits must be nonnegative")
        sums = self.probs.sum(axis=1)
        if self.renormalized:
            if np.any(np.abs(sums - 1.0) > ROW_SUM_TOL):
                raise ValueError("renormalized rows must sum to 1")
        elif np.any(sums > 1 + ROW_SUM_TOL):
            raise ValueError("raw rows must sum to at most 1")
        self.probs.setflags(write=False)
        self.row_deficits.setflags(write=False)

    @property
    def size(self) -> int:
        return len(self.region)


def _iter_request_bags(state: State, q_plus_max: int, num_types: int):
    """Yield per-kind count tuples aligned with ``request_kinds(num_types)``.

    Creations range over ``0..q_plus_max`` per type, releases over
    ``0..state[n]`` per type.
    """
    creation_ranges = [range(q_plus_max + 1)] * num_types
    release_ranges = [range(state[n] + 1) for n in range(num_types)]
    for counts in itertools.product(*creation_ranges, *release_ranges):
        yield counts


def _bag_to_mapping(counts: tuple[int, ...], kinds: tuple[int, ...]) -> dict[int, int]:
    return {kind: k for kind, k in zip(kinds, counts) if k}


def _ordering_distribution(
    counts: tuple[int, ...],
    state: State,
    kinds: tuple[int, ...],
    strategy: Strategy,
    memo: dict,
) -> dict[State, float]:
    """Distribution of final states over the equally likely bag orderings.

    Removes one request at a time, each remaining request equally likely to
    be next (probability proportional to its kind's remaining multiplicity),
    applies the strategy's decision, and recurses on the reduced bag. The
    memo key is (remaining bag, current state), so shared sub-bags collapse
    the factorial ordering count to polynomial work.
    """
    key = (counts, state)
    cached = memo.get(key)
    if cached is not None:
        return cached
    total = sum(counts)
    if total == 0:
        result = {state: 1.0}
        memo[key] = result
        return result
    result = {}
    for i, k in enumerate(counts):
        if not k:
            continue
        kind = kinds[i]
        pick = k / total
        next_state = apply_request(state, kind, strategy.decide(kind, state))
        reduced = counts[:i] + (k - 1,) + counts[i + 1:]
        for final, weight in _ordering_distribution(reduced, next_state, kinds, strategy, memo).items():
            result[final] = result.get(final, 0.0) + pick * weight
    memo[key] = result
    return result


def _transition_row(
    region: AdmissibilityRegion,
    scenario: DemandScenario,
    strategy: Strategy,
    row_index: int,
    q_plus_max: int,
) -> np.ndarray:
    state = region.states[row_index]
    kinds = request_kinds(scenario.num_types)
    row = np.zeros(len(region))
    memo: dict = {}
    for counts in _iter_request_bags(state, q_plus_max, scenario.num_types):
        bag_prob = multiset_prob(scenario, _bag_to_mapping(counts, kinds), state)
        for final, weight in _ordering_distribution(counts, state, kinds, strategy, memo).items():
            row[region.index_of[final]] += bag_prob * weight
    return row


def _row_task(args) -> np.ndarray:
    region, scenario, strategy, row_index, q_plus_max = args
    return _transition_row(region, scenario, strategy, row_index, q_plus_max)


def build_transition_matrix(
    model: ResourceModel,
    region: AdmissibilityRegion,
    scenario: DemandScenario,
    strategy: Strategy,
    q_plus_max: int,
    renormalize: bool = True,
    workers: int | None = None,
) -> TransitionMatrix:
    """Build the one-period transition matrix under truncated bag traversal.

    Parameters
    ----------
    q_plus_max : per-type cap on creation-request multiplicities considered
        per period. Release multiplicities need no cap; they are bounded by
        the row state's active counts.
    renormalize : scale each row to sum to one. The raw shortfall is kept in
        ``row_deficits`` either way.
    workers : build rows in a process pool of this size when > 1. Rows are
        independent, so the result is identical to the serial build.
    """
    if len(region) == 0:
        raise ValueError("region is empty")
    if q_plus_max < 1:
        raise ValueError(f"q_plus_max must be >= 1, got {q_plus_max}")
    if not validate_strategy(model, region, strategy):
        raise InvalidStrategyError("strategy leads outside the region")
    size = len(region)
    if workers is not None and workers > 1:
        tasks = [(region, scenario, strategy, i, q_plus_max) for i in range(size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_task, tasks))
    else:
        rows = [_transition_row(region, scenario, strategy, i, q_plus_max) for i in range(size)]
    probs = np.vstack(rows)
    sums = probs.sum(axis=1)
    deficits = 1.0 - sums
    if renormalize:
        probs = probs / sums[:, None]
    return TransitionMatrix(probs=probs, region=region, renormalized=renormalize, row_deficits=deficits)


def brute_force_transition_matrix(
    model: ResourceModel,
    region: AdmissibilityRegion,
    scenario: DemandScenario,
    strategy: Strategy,
    q_plus_max: int,
    renormalize: bool = True,
    max_queue_length: int = 8,
) -> TransitionMatrix:
    """Reference builder: explicit enumeration of every bag ordering.

    Expands each admissible request bag into all Q! timestamped orderings
    (``itertools.permutations`` over the expanded bag, so same-kind swaps are
    counted separately), folds each ordering through the strategy and sums
    its sequence probability into the reached entry. Exponentially slower
    than the memoized builder; intended as an independent check at small
    truncation depths.
    """
    if not validate_strategy(model, region, strategy):
        raise InvalidStrategyError("strategy leads outside the region")
    if q_plus_max < 1:
        raise ValueError(f"q_plus_max must be >= 1, got {q_plus_max}")
    kinds = request_kinds(scenario.num_types)
    size = len(region)
    probs = np.zeros((size, size))
    for row_index, state in enumerate(region.states):
        for counts in _iter_request_bags(state, q_plus_max, scenario.num_types):
            total = sum(counts)
            if total > max_queue_length:
                raise GuardExceededError(
                    f"bag of {total} requests exceeds the brute-force guard of {max_queue_length}"
                )
            bag = [kind for kind, k in zip(kinds, counts) for _ in range(k)]
            for ordering in itertools.permutations(bag):
                final = apply_sequence(state, ordering, strategy)
                probs[row_index, region.index_of[final]] += sequence_prob(scenario, ordering, state)
    sums = probs.sum(axis=1)
    deficits = 1.0 - sums
    if renormalize:
        probs = probs / sums[:, None]
    return TransitionMatrix(probs=probs, region=region, renormalized=renormalize, row_deficits=deficits)


def truncation_tail_bound(scenario: DemandScenario, q_plus_max: int) -> float:
    """Upper bound on any row deficit: summed per-type Poisson tail masses.

    Each row's raw sum is the product over types of the Poisson mass kept
    below the cap, so the deficit is ``1 - prod(1 - tail_n) <= sum(tail_n)``.
    """
    total = 0.0
    for rate in scenario.creation_rates:
        kept = sum(creation_pmf(rate, k) for k in range(q_plus_max + 1))
        total += max(0.0, 1.0 - kept)
    return total


def distribution_after(matrix: TransitionMatrix, start_index: int, periods: int) -> np.ndarray:
    """State distribution after a number of periods from a point start.

    Computed by repeated vector-matrix products, never by materializing a
    matrix power. Requires a renormalized matrix; deficit rows would leak
    mass out of the distribution.
    """
    if not matrix.renormalized:
        raise ValueError("distribution_after requires a renormalized matrix")
    if periods < 0:
        raise ValueError(f"periods must be >= 0, got {periods}")
    if not 0 <= start_index < matrix.size:
        raise ValueError(f"start_index {start_index} outside region of size {matrix.size}")
    dist = np.zeros(matrix.size)
    dist[start_index] = 1.0
    for _ in range(periods):
        dist = dist @ matrix.probs
    return dist


def _closed_classes(matrix: TransitionMatrix) -> list[list[int]]:
    """Strongly connected components with no outgoing edges, as index lists."""
    adjacency = csr_matrix(matrix.probs > 0)
    count, labels = connected_components(adjacency, directed=True, connection="strong")
    members: list[list[int]] = [[] for _ in range(count)]
    for index, label in enumerate(labels):
        members[label].append(index)
    closed = []
    for label, indices in enumerate(members):
        rows = matrix.probs[indices]
        outside = [j for j in range(matrix.size) if labels[j] != label]
        if not outside or not np.any(rows[:, outside] > 0):
            closed.append(indices)
    return closed


def stationary_distribution(
    matrix: TransitionMatrix,
    tol: float = 1e-12,
    max_iterations: int = 10**6,
) -> np.ndarray:
    """Fixed point of the chain, by power iteration from the uniform vector.

    A unique fixed point needs exactly one closed communicating class; with
    several, the limit depends on the start and the call raises, reporting
    the closed classes by state label.
    """
    if not matrix.renormalized:
        raise ValueError("stationary_distribution requires a renormalized matrix")
    closed = _closed_classes(matrix)
    if len(closed) > 1:
        labels = [[state_label(matrix.region.states[i]) for i in cls] for cls in closed]
        raise ReducibleChainError(
            f"chain has {len(closed)} closed communicating classes: {labels}", classes=labels
        )
    dist = np.full(matrix.size, 1.0 / matrix.size)
    for _ in range(max_iterations):
        advanced = dist @ matrix.probs
        if np.abs(advanced - dist).sum() < tol:
            return advanced
        dist = advanced
    raise ConvergenceError(
        f"power iteration did not reach L1 tolerance {tol} in {max_iterations} iterations"
    )


def occupancy_mean(region: AdmissibilityRegion, distribution: np.ndarray) -> np.ndarray:
    """Expected active-slice count per type under a state distribution."""
    states = np.array(region.states, dtype=float)
    return distribution @ states
