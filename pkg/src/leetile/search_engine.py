"""Exhaustive, pruned backtracking search for arm sets over all abelian
groups of order 2n^2 + 2n + 1.

The arm set has the shape {identity} plus n inverse pairs, so the search
chooses pairs.  Every pair is represented by its lexicographically smaller
member, and pairs are chosen in strictly increasing representative order,
which removes all set-permutation symmetry.

Pruning invariant: adding a pair only ever increases coefficients of the
partial convolution square, and a valid final square carries coefficient at
most 2 on every non-identity element and exactly 1 on the double of every
arm.  A branch dies the moment a running coefficient exceeds the cap that
the final set would have to satisfy.  A counting argument shows the caps
are tight at full depth, so any surviving leaf is a solution; each reported
set is still re-verified post hoc through the independent verifier.

Groups are flattened to integer-encoded elements with a precomputed
addition table, so the group order must stay modest (a few thousand); the
orders reachable by this search are far below that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .abelian_groups import AbelianGroup, GroupElement, enumerate_groups
from .errors import LeeTileError
from .tiling_core import TilingCandidate, check_conditions, radius2_group_order

_MAX_TABLE_ORDER = 4096
_BUDGET_REQUIRED_FROM = 7  # combinatorial growth: demand an explicit cap


@dataclass
class SearchOptions:
    """Knobs for ``search_group``/``search_all``.

    Automorphism reduction applies to cyclic groups only (multiplication by
    units); for other groups the flag is ignored.  ``worker_partitions``
    splits the top-level pair choices into independent slices whose merged
    result is identical for every partition count.  ``node_budget`` caps
    explored nodes; budgeted runs always traverse subtrees in canonical
    order so the cut-off point does not depend on the partition count.
    """

    use_automorphism_reduction: bool = True
    worker_partitions: int = 1
    node_budget: Optional[int] = None

    def __post_init__(self):
        if self.worker_partitions < 1:
            raise ValueError(f"worker_partitions must be >= 1, got {self.worker_partitions}")
        if self.node_budget is not None and self.node_budget < 0:
            raise ValueError(f"node_budget must be >= 0, got {self.node_budget}")


@dataclass(frozen=True)
class SearchOutcome:
    """Solutions found in one group, with the explored-node counter.

    ``exhausted`` is True exactly when the node budget was not hit, i.e.
    the reported solutions are provably all of them (up to automorphism
    reduction when enabled)."""

    group: AbelianGroup
    n: int
    solutions: tuple[tuple[GroupElement, ...], ...]
    nodes_explored: int
    exhausted: bool

    def to_dict(self) -> dict:
        return {
            "group": list(self.group.invariant_factors),
            "group_spec": self.group.spec_string(),
            "n": self.n,
            "solutions": [[list(g) for g in sol] for sol in self.solutions],
            "nodes_explored": self.nodes_explored,
            "exhausted": self.exhausted,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SearchOutcome":
        group = AbelianGroup(tuple(data["group"]))
        return cls(
            group=group,
            n=data["n"],
            solutions=tuple(
                tuple(tuple(g) for g in sol) for sol in data["solutions"]
            ),
            nodes_explored=data["nodes_explored"],
            exhausted=data["exhausted"],
        )


class _Abort(Exception):
    """Internal: node budget exhausted."""


class _State:
    __slots__ = ("add", "neg", "coeff", "is_square", "members", "chosen", "nodes", "budget")

    def __init__(self, add, neg, order, budget):
        self.add = add
        self.neg = neg
        self.coeff = [0] * order
        self.is_square = [False] * order
        self.members = [0]  # identity is always an arm
        self.chosen: list[int] = []
        self.nodes = 0
        self.budget = budget

    def try_add(self, g: int):
        """Place the pair {g, -g}; returns (ok, undo_log).  The caller must
        undo regardless of ok."""
        ng = self.neg[g]
        coeff = self.coeff
        log = []
        row_g = self.add[g]
        row_ng = self.add[ng]
        for row in (row_g, row_ng):
            for s in self.members:
                h = row[s]
                coeff[h] += 2
                log.append(h)
                log.append(h)  # two units, undone one at a time
        dg = row_g[g]
        dng = row_ng[ng]
        coeff[dg] += 1
        log.append(dg)
        coeff[dng] += 1
        log.append(dng)
        squares_marked = []
        for h in (dg, dng):
            if not self.is_square[h]:
                self.is_square[h] = True
                squares_marked.append(h)
        ok = True
        is_square = self.is_square
        for h in log:
            if coeff[h] > (1 if is_square[h] else 2):
                ok = False
                break
        if ok:
            self.members.append(g)
            self.members.append(ng)
            self.chosen.append(g)
        return ok, (log, squares_marked, ok)

    def undo(self, undo_log):
        log, squares_marked, ok = undo_log
        if ok:
            self.chosen.pop()
            self.members.pop()
            self.members.pop()
        for h in squares_marked:
            self.is_square[h] = False
        coeff = self.coeff
        for h in log:
            coeff[h] -= 1


def _encode(group: AbelianGroup):
    order = group.order
    if order > _MAX_TABLE_ORDER:
        raise LeeTileError(
            f"group order {order} too large for the table-driven search (max {_MAX_TABLE_ORDER})"
        )
    elems = list(group.elements())
    index = {g: i for i, g in enumerate(elems)}
    add = [[index[group.add(a, b)] for b in elems] for a in elems]
    neg = [index[group.neg(g)] for g in elems]
    return elems, add, neg


def _cyclic_first_pair_whitelist(group: AbelianGroup, reps: list[int]) -> set[int]:
    """Representatives allowed as the first (smallest) chosen pair under
    unit-multiplication reduction: exactly those minimal in their own unit
    orbit.  In Z_m the unit orbit of r is all elements with the same gcd
    with m, so the orbit minimum is gcd(r, m) itself."""
    m = group.order
    return {r for r in reps if r == math.gcd(r, m)}


def _orbit_minimal(group: AbelianGroup, solution_indices: tuple[int, ...]) -> bool:
    """True when the (cyclic-group) solution is the lexicographic minimum of
    its orbit under multiplication by units."""
    m = group.order
    sol = tuple(sorted(solution_indices))
    for u in range(2, m):
        if math.gcd(u, m) != 1:
            continue
        image = tuple(sorted(u * x % m for x in sol))
        if image < sol:
            return False
    return True


def search_group(group: AbelianGroup, n: int, options: Optional[SearchOptions] = None) -> SearchOutcome:
    """Every arm set over ``group`` passing the radius-2 verifier, up to
    unit-multiplication reduction when enabled and the group is cyclic.

    Deterministic: elements are ordered lexicographically, pairs by their
    smaller member, and solutions are reported in canonical sorted order
    with a node counter that is identical across runs and across
    ``worker_partitions`` values.
    """
    opts = options or SearchOptions()
    expected = radius2_group_order(n)
    if group.order != expected:
        raise ValueError(f"group order {group.order} != {expected} = 2n^2+2n+1 for n={n}")
    if n >= _BUDGET_REQUIRED_FROM and opts.node_budget is None:
        raise ValueError(
            f"an explicit node_budget is required for n >= {_BUDGET_REQUIRED_FROM}"
        )
    elems, add, neg = _encode(group)
    reps = [i for i in range(1, group.order) if i < neg[i]]
    reduce_orbits = opts.use_automorphism_reduction and group.is_cyclic() and group.order > 1
    whitelist = _cyclic_first_pair_whitelist(group, reps) if reduce_orbits else None

    top_indices = [
        i for i in range(len(reps)) if whitelist is None or reps[i] in whitelist
    ]
    if opts.node_budget is None and opts.worker_partitions > 1:
        k = opts.worker_partitions
        buckets = [top_indices[p::k] for p in range(k)]
    else:
        # Budgeted runs consume the cap in canonical subtree order so the
        # result does not depend on the partition count.
        buckets = [top_indices]

    state = _State(add, neg, group.order, opts.node_budget)
    found: list[tuple[int, ...]] = []
    exhausted = True

    def dfs(start: int, remaining: int):
        if remaining == 0:
            found.append(tuple(state.chosen))
            return
        last = len(reps) - remaining
        for idx in range(start, last + 1):
            if state.budget is not None and state.nodes >= state.budget:
                raise _Abort
            state.nodes += 1
            ok, undo_log = state.try_add(reps[idx])
            if ok:
                dfs(idx + 1, remaining - 1)
            state.undo(undo_log)

    try:
        for bucket in buckets:
            for ti in bucket:
                if state.budget is not None and state.nodes >= state.budget:
                    raise _Abort
                state.nodes += 1
                ok, undo_log = state.try_add(reps[ti])
                if ok:
                    dfs(ti + 1, n - 1)
                state.undo(undo_log)
    except _Abort:
        exhausted = False

    solutions = []
    for sel in found:
        indices = [0]
        for g in sel:
            indices.append(g)
            indices.append(neg[g])
        indices = tuple(sorted(indices))
        if reduce_orbits and not _orbit_minimal(group, indices):
            continue
        solutions.append(tuple(elems[i] for i in indices))
    solutions.sort()

    for sol in solutions:
        report = check_conditions(TilingCandidate(group, n, sol))
        if not report.accepted:
            raise LeeTileError(
                f"internal error: search emitted a set the verifier rejects ({report.failed_condition})"
            )
    return SearchOutcome(
        group=group,
        n=n,
        solutions=tuple(solutions),
        nodes_explored=state.nodes,
        exhausted=exhausted,
    )


def search_all(n: int, options: Optional[SearchOptions] = None) -> list[SearchOutcome]:
    """Run the search over every isomorphism class of abelian groups of
    order 2n^2 + 2n + 1, one outcome per class in canonical group order."""
    order = radius2_group_order(n)
    return [search_group(g, n, options) for g in enumerate_groups(order)]


def brute_force_search(group: AbelianGroup, n: int) -> tuple[tuple[GroupElement, ...], ...]:
    """Pruning-free reference search: test every n-subset of inverse pairs
    through the verifier.  Only feasible for tiny n; used to validate the
    pruned engine."""
    expected = radius2_group_order(n)
    if group.order != expected:
        raise ValueError(f"group order {group.order} != {expected} = 2n^2+2n+1 for n={n}")
    elems = sorted(group.elements())
    identity = group.identity()
    reps = [g for g in elems if g != identity and g < group.neg(g)]
    solutions = []
    for combo in combinations(reps, n):
        arms = [identity]
        for g in combo:
            arms.append(g)
            arms.append(group.neg(g))
        candidate = TilingCandidate(group, n, tuple(sorted(arms)))
        if check_conditions(candidate).accepted:
            solutions.append(candidate.arms)
    solutions.sort()
    return tuple(solutions)
