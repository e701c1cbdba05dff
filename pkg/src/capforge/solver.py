"""Maximum-independent-set computation: exhaustive oracles, an exact
branch-and-bound, a local-search heuristic, and a clique-cover upper bound.

The exact solver works on the complement (max clique): the constructions
here are dense, so complements are sparse and greedy-coloring bounds bite.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, PowerGraphView, is_independent

BRUTE_FORCE_LIMIT = 24
MITM_LIMIT = 40

_POPCOUNT16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)


@dataclass
class SolverBudget:
    """Limits for a single solve; exceeding one is a normal result, not an error."""

    max_nodes: int | None = None
    max_time: float | None = None
    target: int | None = None  # stop once a set of this size is found or refuted


@dataclass
class MISResult:
    members: frozenset
    size: int
    status: str  # exact | lower_bound | upper_bound_certified
    certified_upper: int | None = None
    search_nodes: int = 0
    elapsed: float = 0.0


def brute_force_mis(g: Graph) -> MISResult:
    """Exhaustive sweep over all 2^n vertex subsets (vectorized); reports the
    lexicographically smallest maximum independent set."""
    t0 = time.perf_counter()
    n = g.n
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force capped at {BRUTE_FORCE_LIMIT} vertices, got {n}")
    total = 1 << n
    indep = np.zeros(total, dtype=bool)
    indep[0] = True
    # indep[m] for lsb(m) = b depends on indep[m - 2^b], whose lsb is larger,
    # so fill descending by lowest set bit
    for b in range(n - 1, -1, -1):
        bit = 1 << b
        idx = np.arange(bit, total, bit << 1, dtype=np.uint32)
        nbr_free = (idx & np.uint32(g.adj[b])) == 0
        indep[idx] = indep[idx - bit] & nbr_free
    masks = np.arange(total, dtype=np.uint32)
    sizes = _POPCOUNT16[masks & 0xFFFF] + _POPCOUNT16[masks >> 16]
    best = int(sizes[indep].max())
    cand = masks[indep & (sizes == best)]
    # lexicographically smallest member list == largest bit-reversed mask
    rev = np.zeros(len(cand), dtype=np.uint32)
    for i in range(n):
        rev |= ((cand >> i) & 1) << (n - 1 - i)
    winner = int(cand[int(rev.argmax())])
    members = frozenset(v for v in range(n) if winner >> v & 1)
    return MISResult(
        members=members,
        size=best,
        status="exact",
        search_nodes=total,
        elapsed=time.perf_counter() - t0,
    )


def mitm_mis(g: Graph) -> MISResult:
    """Exhaustive meet-in-the-middle oracle: enumerate one half, table the
    other. Handles graphs the plain sweep cannot (up to 40 vertices)."""
    t0 = time.perf_counter()
    n = g.n
    if n > MITM_LIMIT:
        raise ValueError(f"meet-in-the-middle capped at {MITM_LIMIT} vertices, got {n}")
    nb = n // 2
    na = n - nb
    # A = vertices [0, na), B = vertices [na, n) reindexed to [0, nb)
    adj_a = [g.adj[v] & ((1 << na) - 1) for v in range(na)]
    adj_ab = [g.adj[v] >> na for v in range(na)]
    adj_b = [g.adj[na + v] >> na for v in range(nb)]

    dp = [0] * (1 << nb)
    for m in range(1, 1 << nb):
        low = m & -m
        v = low.bit_length() - 1
        skip = dp[m ^ low]
        take = 1 + dp[m & ~adj_b[v] & ~low]
        dp[m] = take if take > skip else skip

    full_b = (1 << nb) - 1
    best = -1
    best_a = 0
    best_b_mask = 0
    indep_a = bytearray(1 << na)
    indep_a[0] = 1
    nbr_b = [0] * (1 << na)
    size_a = [0] * (1 << na)
    for m in range(1, 1 << na):
        low = m & -m
        v = low.bit_length() - 1
        prev = m ^ low
        size_a[m] = size_a[prev] + 1
        nbr_b[m] = nbr_b[prev] | adj_ab[v]
        if not indep_a[prev] or (m & adj_a[v]):
            continue
        indep_a[m] = 1
        allowed = full_b & ~nbr_b[m]
        score = size_a[m] + dp[allowed]
        if score > best:
            best = score
            best_a = m
            best_b_mask = allowed
    if dp[full_b] > best:  # empty A side
        best = dp[full_b]
        best_a = 0
        best_b_mask = full_b
    members = {v for v in range(na) if best_a >> v & 1}
    m = best_b_mask
    while m and dp[m] > 0:
        low = m & -m
        v = low.bit_length() - 1
        if dp[m] == dp[m ^ low]:
            m ^= low
        else:
            members.add(na + v)
            m &= ~adj_b[v] & ~low
    assert is_independent(g, members) and len(members) == best
    return MISResult(
        members=frozenset(members),
        size=best,
        status="exact",
        search_nodes=(1 << na) + (1 << nb),
        elapsed=time.perf_counter() - t0,
    )


class _Abort(Exception):
    pass


class _TargetHit(Exception):
    pass


def max_independent_set(g: Graph, budget: SolverBudget | None = None) -> MISResult:
    """Branch-and-bound maximum clique on the complement, greedy-coloring
    bound recomputed at every node, root order by descending complement
    degree (ties by ascending index).

    With ``budget.target`` set, the search additionally prunes below the
    target, so it terminates once a set of that size is found (status
    lower_bound) or refuted (certified_upper = target - 1). Exhausting
    max_nodes/max_time yields status lower_bound.
    """
    t0 = time.perf_counter()
    budget = budget or SolverBudget()
    target = budget.target
    if target is not None and target < 1:
        raise ValueError("target must be >= 1")
    n = g.n
    comp = g.complement_adjacency()
    root_order = sorted(range(n), key=lambda v: (-comp[v].bit_count(), v))
    pos = [0] * n
    for i, v in enumerate(root_order):
        pos[v] = i
    adj = [0] * n
    for i, v in enumerate(root_order):
        row = comp[v]
        m = 0
        while row:
            low = row & -row
            row ^= low
            m |= 1 << pos[low.bit_length() - 1]
        adj[i] = m
    notadj = [~a for a in adj]
    full = (1 << n) - 1

    # greedy clique in the complement as the incumbent
    p = full
    mask = 0
    while p:
        low = p & -p
        mask |= low
        p &= adj[low.bit_length() - 1]
    best_mask = mask
    best = mask.bit_count()

    floor_prune = target - 1 if target is not None else 0
    max_nodes = budget.max_nodes
    deadline = t0 + budget.max_time if budget.max_time is not None else None
    nodes = 0

    def expand(r_mask: int, size: int, cands: int) -> None:
        nonlocal best, best_mask, nodes
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise _Abort
        if deadline is not None and nodes & 63 == 0 and time.perf_counter() > deadline:
            raise _Abort
        cutoff = best if best > floor_prune else floor_prune
        if size + cands.bit_count() <= cutoff:
            return
        order = []
        colors = []
        color = 0
        rest = cands
        while rest:
            color += 1
            q = rest
            while q:
                low = q & -q
                v = low.bit_length() - 1
                order.append(v)
                colors.append(color)
                rest ^= low
                q ^= low
                q &= notadj[v]
        local = cands
        for i in range(len(order) - 1, -1, -1):
            cutoff = best if best > floor_prune else floor_prune
            if size + colors[i] <= cutoff:
                break
            v = order[i]
            low = 1 << v
            sub = local & adj[v]
            if sub:
                expand(r_mask | low, size + 1, sub)
            elif size + 1 > best:
                best = size + 1
                best_mask = r_mask | low
                if target is not None and best >= target:
                    raise _TargetHit
            local ^= low

    completed = False
    hit_target = target is not None and best >= target
    if not hit_target:
        try:
            expand(0, 0, full)
            completed = True
        except _Abort:
            pass
        except _TargetHit:
            hit_target = True

    members = frozenset(root_order[i] for i in range(n) if best_mask >> i & 1)
    certified_upper = None
    if completed:
        if target is None:
            status = "exact"
        else:
            certified_upper = target - 1
            status = "exact" if best == certified_upper else "upper_bound_certified"
    else:
        status = "lower_bound"
    return MISResult(
        members=members,
        size=best,
        status=status,
        certified_upper=certified_upper,
        search_nodes=nodes,
        elapsed=time.perf_counter() - t0,
    )


def clique_cover_upper_bound(g: Graph) -> int:
    """Greedy partition of the vertices into cliques; the part count bounds
    the independence number from above (an independent set meets each clique
    at most once)."""
    uncovered = (1 << g.n) - 1
    count = 0
    while uncovered:
        low = uncovered & -uncovered
        v = low.bit_length() - 1
        uncovered ^= low
        common = g.adj[v] & uncovered
        while common:
            ulow = common & -common
            u = ulow.bit_length() - 1
            uncovered ^= ulow
            common = common & g.adj[u] & ~ulow
        count += 1
    return count


def _greedy_is(g: Graph) -> tuple[list[int], int]:
    order = sorted(range(g.n), key=lambda v: (g.degree(v), v))
    mask = 0
    members = []
    for v in order:
        if not (g.adj[v] & mask):
            members.append(v)
            mask |= 1 << v
    return members, mask


def _neighbor_union(g: Graph, mask: int) -> int:
    acc = 0
    m = mask
    while m:
        low = m & -m
        m ^= low
        acc |= g.adj[low.bit_length() - 1]
    return acc


def _local_search_graph(g: Graph, steps: int, rng: random.Random, start_mask: int) -> int:
    full = (1 << g.n) - 1
    mask = start_mask
    budget = steps
    improved = True
    while improved and budget > 0:
        improved = False
        # free insertions
        free = full & ~mask & ~_neighbor_union(g, mask)
        while free:
            low = free & -free
            mask |= low
            free &= ~g.adj[low.bit_length() - 1] & ~low
            improved = True
        # remove one, insert two
        members = mask
        while members and budget > 0:
            low = members & -members
            members ^= low
            budget -= 1
            rest = mask ^ low
            cand = full & ~rest & ~_neighbor_union(g, rest) & ~low
            c1 = cand
            swapped = False
            while c1 and not swapped:
                u1 = c1 & -c1
                c1 ^= u1
                pair = cand & ~g.adj[u1.bit_length() - 1] & ~u1 & -(u1 << 1)
                if pair:
                    u2 = pair & -pair
                    mask = rest | u1 | u2
                    improved = True
                    swapped = True
            if swapped:
                break
        # remove two, insert three (sampled)
        if not improved and mask.bit_count() >= 2 and budget > 0:
            members = [v for v in range(g.n) if mask >> v & 1]
            for _ in range(min(budget, 4 * len(members))):
                budget -= 1
                v1, v2 = rng.sample(members, 2)
                rest = mask & ~(1 << v1) & ~(1 << v2)
                cand = full & ~rest & ~_neighbor_union(g, rest) & ~(1 << v1) & ~(1 << v2)
                u1m = cand & -cand
                if not u1m:
                    continue
                c2 = cand & ~g.adj[u1m.bit_length() - 1] & ~u1m
                u2m = c2 & -c2
                if not u2m:
                    continue
                c3 = c2 & ~g.adj[u2m.bit_length() - 1] & ~u2m
                u3m = c3 & -c3
                if not u3m:
                    continue
                mask = rest | u1m | u2m | u3m
                improved = True
                break
    return mask


def local_search_lower_bound(
    g: Graph | PowerGraphView,
    budget: SolverBudget | None = None,
    seed: int = 0,
    warm_start=None,
) -> MISResult:
    """Greedy construction plus swap-based local search; never worse than the
    warm start. On a PowerGraphView the candidate pool is random tuples, so
    results are a heuristic lower bound only."""
    t0 = time.perf_counter()
    budget = budget or SolverBudget()
    steps = budget.max_nodes if budget.max_nodes is not None else 5000
    rng = random.Random(seed)
    if isinstance(g, Graph):
        if warm_start is not None:
            start = 0
            for v in warm_start:
                start |= 1 << v
            if not is_independent(g, set(warm_start)):
                raise ValueError("warm start is not independent")
        else:
            _, start = _greedy_is(g)
        mask = _local_search_graph(g, steps, rng, start)
        members = frozenset(v for v in range(g.n) if mask >> v & 1)
        return MISResult(
            members=members,
            size=len(members),
            status="lower_bound",
            search_nodes=steps,
            elapsed=time.perf_counter() - t0,
        )
    if not isinstance(g, PowerGraphView):
        raise TypeError(f"expected Graph or PowerGraphView, got {type(g).__name__}")
    base_n = g.base.n
    members: list[tuple] = []
    if warm_start is not None:
        members = list(dict.fromkeys(tuple(t) for t in warm_start))
        if not is_independent(g, members):
            raise ValueError("warm start is not independent")
    adj = g.adjacent
    memset = set(members)
    for _ in range(steps):
        t = tuple(rng.randrange(base_n) for _ in range(g.k))
        if t in memset:
            continue
        if all(not adj(t, u) for u in members):
            members.append(t)
            memset.add(t)
    # sampled one-out-two-in swaps
    for _ in range(steps // 4):
        if not members:
            break
        v = members[rng.randrange(len(members))]
        t1 = tuple(rng.randrange(base_n) for _ in range(g.k))
        t2 = tuple(rng.randrange(base_n) for _ in range(g.k))
        if t1 == t2 or t1 in memset or t2 in memset or adj(t1, t2):
            continue
        others = [u for u in members if u != v]
        if all(not adj(t1, u) and not adj(t2, u) for u in others):
            members = others + [t1, t2]
            memset = set(members)
    return MISResult(
        members=frozenset(members),
        size=len(members),
        status="lower_bound",
        search_nodes=steps,
        elapsed=time.perf_counter() - t0,
    )
