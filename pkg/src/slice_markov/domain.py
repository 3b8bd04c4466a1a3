"""Resource model, allocation states, and admission strategies.

States are plain tuples of per-type active-slice counts, so they hash and
compare naturally and can index dictionaries. Requests are signed integers:
``+n`` asks to create a type-``n`` slice, ``-n`` to release one (types are
1-based). Decisions are booleans: ``True`` accepts, ``False`` declines.

All arithmetic on pool sizes and costs stays in pure Python: integer and
``fractions.Fraction`` inputs are compared exactly, while float inputs get a
small tolerance so boundary allocations (three 0.3-cost slices against a
pool of 1.0) are classified stably.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import DegenerateModelError, GuardExceededError, InvalidStrategyError

State = tuple[int, ...]
Request = int

# Slack tolerance for float-valued pools/costs; exact types use strict >= 0.
FEASIBILITY_TOL = 1e-9


@dataclass(frozen=True)
class ResourceModel:
    """A resource pool and the per-slice-type cost of drawing from it.

    ``resource_pool`` holds one capacity per resource dimension and
    ``cost_matrix`` one row per resource dimension with one column per slice
    type. Every slice type must have a strictly positive cost in at least one
    resource, otherwise the set of feasible allocations is infinite and the
    model is rejected.
    """

    resource_pool: tuple
    cost_matrix: tuple

    def __init__(self, resource_pool: Sequence, cost_matrix: Sequence[Sequence]):
        pool = tuple(resource_pool)
        costs = tuple(tuple(row) for row in cost_matrix)
        if not pool:
            raise ValueError("resource_pool must have at least one entry")
        if len(costs) != len(pool):
            raise ValueError(
                f"cost_matrix has {len(costs)} rows but resource_pool has "
                f"{len(pool)} entries"
            )
        width = len(costs[0]) if costs else 0
        if width == 0 or any(len(row) != width for row in costs):
            raise ValueError("cost_matrix rows must be nonempty and equal-length")
        for value in pool:
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"resource pool entries must be finite and >= 0, got {value!r}")
        for row in costs:
            for value in row:
                if not math.isfinite(value) or value < 0:
                    raise ValueError(f"cost entries must be finite and >= 0, got {value!r}")
        for n in range(width):
            if not any(costs[m][n] > 0 for m in range(len(costs))):
                raise DegenerateModelError(
                    f"slice type {n + 1} has zero cost in every resource; "
                    "the feasible allocation set would be unbounded"
                )
        object.__setattr__(self, "resource_pool", pool)
        object.__setattr__(self, "cost_matrix", costs)

    @property
    def num_resources(self) -> int:
        return len(self.resource_pool)

    @property
    def num_types(self) -> int:
        return len(self.cost_matrix[0])


def check_feasible(model: ResourceModel, counts: Sequence[int]) -> bool:
    """Return True iff the allocation fits inside the resource pool.

    For every resource the pool minus the summed per-type costs must be
    nonnegative. Exact (int/Fraction) inputs are compared exactly; any float
    in the computation switches the comparison to a ``-FEASIBILITY_TOL``
    threshold.
    """
    if len(counts) != model.num_types:
        raise ValueError(
            f"allocation has {len(counts)} components, model has {model.num_types} slice types"
        )
    for m in range(model.num_resources):
        row = model.cost_matrix[m]
        slack = model.resource_pool[m] - sum(row[n] * counts[n] for n in range(len(counts)))
        tol = FEASIBILITY_TOL if isinstance(slack, float) else 0
        if slack < -tol:
            return False
    return True


@dataclass(frozen=True)
class AdmissibilityRegion:
    """The finite set of feasible allocation states, canonically ordered.

    ``states`` is sorted ascending lexicographically; the position of a state
    in that ordering is its index, and ``index_of`` inverts the mapping.
    """

    states: tuple[State, ...]
    index_of: dict[State, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index_of", {s: i for i, s in enumerate(self.states)})

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self) -> Iterator[State]:
        return iter(self.states)

    def __contains__(self, state: State) -> bool:
        return state in self.index_of

    def index(self, state: State) -> int:
        return self.index_of[state]


def state_label(state: Sequence[int]) -> str:
    """Render a state as ``s=[n1,...,nN]`` for headers and traces."""
    return "s=[" + ",".join(str(c) for c in state) + "]"


def enumerate_region(model: ResourceModel) -> AdmissibilityRegion:
    """Enumerate every feasible allocation in ascending lexicographic order.

    Feasibility is downward closed (removing slices never hurts), so a
    depth-first scan can stop raising a component at the first infeasible
    value.
    """
    num_types = model.num_types
    states: list[State] = []
    counts = [0] * num_types

    def scan(level: int) -> None:
        if level == num_types:
            states.append(tuple(counts))
            return
        value = 0
        while True:
            counts[level] = value
            if not check_feasible(model, counts):
                break
            scan(level + 1)
            value += 1
        counts[level] = 0

    scan(0)
    return AdmissibilityRegion(tuple(states))


def apply_request(state: State, request: Request, accept: bool) -> State:
    """Apply one decided request: add or remove one slice of the given type.

    A declined request leaves the state untouched. Accepting a release when
    no slice of that type is active would drive the count negative and
    raises.
    """
    slice_type = abs(request)
    if request == 0 or slice_type > len(state):
        raise ValueError(f"request {request!r} does not address a slice type in 1..{len(state)}")
    if not accept:
        return state
    index = slice_type - 1
    delta = 1 if request > 0 else -1
    if state[index] + delta < 0:
        raise ValueError(
            f"cannot accept release of type {slice_type}: no active slice in state {state}"
        )
    return state[:index] + (state[index] + delta,) + state[index + 1:]


@dataclass(frozen=True)
class Strategy:
    """A consistent admission rule over an enumerated region.

    Only creation requests carry a degree of freedom: ``creation_accept`` has
    one row per region state and one column per slice type. Releases are
    accepted unconditionally by construction, so the release half of the
    decision table never needs storing; a region with ``k`` free creation
    decisions therefore stands for ``2**k`` raw accept/decline tables whose
    release bits are all forced to accept.
    """

    region: AdmissibilityRegion
    creation_accept: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        if len(self.creation_accept) != len(self.region):
            raise InvalidStrategyError(
                f"decision table has {len(self.creation_accept)} rows, "
                f"region has {len(self.region)} states"
            )
        if len({len(row) for row in self.creation_accept}) > 1:
            raise InvalidStrategyError("decision table rows differ in length")

    @property
    def num_types(self) -> int:
        return len(self.creation_accept[0]) if self.creation_accept else 0

    def decide(self, request: Request, state: State) -> bool:
        """The accept/decline decision for one request in one state."""
        if request < 0:
            return True
        try:
            row = self.region.index_of[state]
        except KeyError:
            raise InvalidStrategyError(f"strategy not defined for state {state}") from None
        return self.creation_accept[row][request - 1]

    @property
    def bits(self) -> int:
        """Stable integer id: creation bit (row, type) maps to 2**(row*N + type-1)."""
        num_types = self.num_types
        value = 0
        for row_index, row in enumerate(self.creation_accept):
            for type_index, accept in enumerate(row):
                if accept:
                    value |= 1 << (row_index * num_types + type_index)
        return value


def strategy_from_bits(region: AdmissibilityRegion, num_types: int, bits: int) -> Strategy:
    """Inverse of :attr:`Strategy.bits`."""
    if bits < 0 or bits >= 1 << (len(region) * num_types):
        raise InvalidStrategyError(
            f"bits {bits} outside [0, 2**{len(region) * num_types})"
        )
    table = tuple(
        tuple(bool(bits >> (row * num_types + col) & 1) for col in range(num_types))
        for row in range(len(region))
    )
    return Strategy(region, table)


def strategy_from_table(region: AdmissibilityRegion, table: Sequence[Sequence[bool]]) -> Strategy:
    rows = tuple(tuple(bool(x) for x in row) for row in table)
    widths = {len(row) for row in rows}
    if len(rows) != len(region) or (rows and widths != {len(rows[0])}):
        raise InvalidStrategyError("decision table shape does not match the region")
    return Strategy(region, rows)


def always_accept_strategy(model: ResourceModel, region: AdmissibilityRegion) -> Strategy:
    """Accept every creation whose resulting allocation stays feasible."""
    table = tuple(
        tuple(
            apply_request(state, n + 1, True) in region
            for n in range(model.num_types)
        )
        for state in region.states
    )
    return Strategy(region, table)


def decline_all_strategy(model: ResourceModel, region: AdmissibilityRegion) -> Strategy:
    table = tuple(tuple(False for _ in range(model.num_types)) for _ in region.states)
    return Strategy(region, table)


def validate_strategy(model: ResourceModel, region: AdmissibilityRegion, strategy: Strategy) -> bool:
    """Check that a strategy never leads outside the region.

    Releases are accepted by representation, so only accepted creations can
    escape: the strategy is valid iff every accepted creation lands on a
    state that is itself in the region. A table whose shape does not cover
    the whole region raises instead of returning False.
    """
    if strategy.region.states != region.states:
        raise InvalidStrategyError("strategy is defined over a different region")
    if strategy.num_types != model.num_types:
        raise InvalidStrategyError(
            f"decision table covers {strategy.num_types} slice types, model has {model.num_types}"
        )
    for state in region.states:
        row = strategy.creation_accept[region.index_of[state]]
        for n, accept in enumerate(row):
            if accept and apply_request(state, n + 1, True) not in region:
                return False
    return True


def enumerate_valid_strategies(
    model: ResourceModel,
    region: AdmissibilityRegion,
    max_candidates: int = 1 << 20,
) -> list[Strategy]:
    """All valid strategies, ordered by ascending decision-table bits.

    Scans every creation-only table; each scanned table stands for the
    ``2**(release bits)`` raw tables that agree on creations, all but one of
    which are ruled out by mandatory release acceptance.
    """
    num_types = model.num_types
    num_bits = len(region) * num_types
    if (1 << num_bits) > max_candidates:
        raise GuardExceededError(
            f"2**{num_bits} candidate tables exceed the cap of {max_candidates}"
        )
    # Validity is per-bit: a table is valid iff every set bit has an in-region target.
    allowed = 0
    for row_index, state in enumerate(region.states):
        for type_index in range(num_types):
            if apply_request(state, type_index + 1, True) in region:
                allowed |= 1 << (row_index * num_types + type_index)
    valid = []
    for bits in range(1 << num_bits):
        if bits & ~allowed:
            continue
        valid.append(strategy_from_bits(region, num_types, bits))
    return valid


def apply_sequence(state: State, requests: Sequence[Request], strategy: Strategy) -> State:
    """Fold a buffered request queue through the strategy, left to right.

    Each request is decided against the state produced by its predecessors.
    With a valid strategy and no more releases per type than the starting
    counts, every intermediate state stays in the region and no release ever
    underflows (apply_request raises if that contract is broken).
    """
    current = state
    for request in requests:
        current = apply_request(current, request, strategy.decide(request, current))
    return current
