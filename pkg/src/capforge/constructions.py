"""Random graph constructions whose strong-power independence series jumps.

All three constructions start from the complete graph on N = n*nu vertices
and delete a small, audited set of edges:

* canonical: partition the unordered vertex pairs into orbits of the shift
  (x, y) -> (x+n, y+n) mod N and delete one uniformly chosen edge per orbit.
  The tuples (x, x+n, ..., x+(nu-1)n) then form an independent set of size N
  in the nu-th strong power, while small powers keep tiny independence
  numbers with overwhelming probability.
* simple: arrange vertices in n rows of length nu and delete one edge per
  row pair, in a uniformly chosen column. Weaker (row set gives only n in
  the nu-th power) but easier to reason about.
* product: strong product of independently sampled canonical graphs with
  increasing jump indices, sized so each factor's jump survives in the
  product series.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .graphs import DEFAULT_CAP, Graph, complete_graph, strong_product


@dataclass(frozen=True)
class JumpParams:
    """Parameters of one jump construction: N = n * nu vertices, jump at nu."""

    nu: int
    n: int
    seed: int = 0

    def __post_init__(self):
        if self.nu < 2:
            raise ValueError(f"nu must be >= 2, got {self.nu}")
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not (0 <= self.seed < 1 << 64):
            raise ValueError("seed must fit in 64 bits")

    @property
    def N(self) -> int:
        return self.n * self.nu


@dataclass
class EdgeClass:
    """One orbit of the shift relation on unordered vertex pairs."""

    representative: tuple[int, int]
    members: list[tuple[int, int]]

    @property
    def size(self) -> int:
        return len(self.members)


def _norm_pair(x: int, y: int) -> tuple[int, int]:
    return (x, y) if x < y else (y, x)


def shift_orbit(x: int, y: int, nu: int, n: int) -> list[tuple[int, int]]:
    """Orbit of the pair (x, y) under simultaneous shift by n modulo N,
    as distinct unordered pairs in first-appearance order."""
    N = n * nu
    seen = []
    seen_set = set()
    for t in range(nu):
        p = _norm_pair((x + t * n) % N, (y + t * n) % N)
        if p not in seen_set:
            seen_set.add(p)
            seen.append(p)
    return seen


def equivalence_classes(nu: int, n: int) -> list[EdgeClass]:
    """Partition all unordered pairs of distinct vertices into shift orbits,
    ordered by ascending representative (the lexicographically smallest member).

    Orbits have size nu, except that for even nu the pairs with
    y = x + nu*n/2 (mod N) close early and have size nu/2; there are exactly
    n such short orbits.
    """
    if nu < 2 or n < 2:
        raise ValueError(f"need nu >= 2 and n >= 2, got nu={nu}, n={n}")
    N = n * nu
    assigned = set()
    classes = []
    for x in range(N):
        for y in range(x + 1, N):
            if (x, y) in assigned:
                continue
            members = shift_orbit(x, y, nu, n)
            rep = min(members)
            assigned.update(members)
            classes.append(EdgeClass(representative=rep, members=members))
    classes.sort(key=lambda c: c.representative)
    return classes


def expected_class_count(nu: int, n: int) -> int:
    """Closed-form orbit count: C(N,2)/nu, plus N/(2 nu) extra when nu is even
    (the N/2 early-closing pairs sit in n orbits of size nu/2). The terms can
    be half-integral individually, so evaluate the sum exactly."""
    N = n * nu
    pairs = N * (N - 1) // 2
    if nu % 2 == 1:
        assert pairs % nu == 0
        return pairs // nu
    assert (2 * pairs + N) % (2 * nu) == 0
    return (2 * pairs + N) // (2 * nu)


@dataclass
class MultiJumpSpec:
    """Product construction: factor i is a canonical jump graph at nus[i].

    Factor sizes follow N_i = round(N_{i-1} ** (alpha * nus[i] / nus[i-1])),
    rounded up to the next multiple of nus[i]; rounding up keeps every
    certificate a valid lower bound. N1 = n1 * nus[0] is given directly.
    """

    nus: tuple[int, ...]
    n1: int
    alpha: float
    seeds: tuple[int, ...]

    def __post_init__(self):
        self.nus = tuple(self.nus)
        self.seeds = tuple(self.seeds)
        if not self.nus:
            raise ValueError("need at least one jump index")
        if any(v < 2 for v in self.nus):
            raise ValueError("every jump index must be >= 2")
        if any(a >= b for a, b in zip(self.nus, self.nus[1:])):
            raise ValueError(f"jump indices must be strictly increasing, got {self.nus}")
        if self.n1 < 2:
            raise ValueError("n1 must be >= 2")
        if len(self.nus) > 1 and self.alpha <= 1:
            raise ValueError("alpha must exceed 1")
        if len(self.seeds) != len(self.nus):
            raise ValueError(f"need {len(self.nus)} seeds, got {len(self.seeds)}")

    @property
    def N1(self) -> int:
        return self.n1 * self.nus[0]

    def sizes(self) -> list[int]:
        out = [self.N1]
        for prev_nu, cur_nu in zip(self.nus, self.nus[1:]):
            raw = round(math.exp(self.alpha * cur_nu / prev_nu * math.log(out[-1])))
            out.append(-(-raw // cur_nu) * cur_nu)
        return out

    def factor_params(self) -> list[JumpParams]:
        params = []
        for nu, size, seed in zip(self.nus, self.sizes(), self.seeds):
            if size % nu or size // nu < 2:
                raise ValueError(f"factor size {size} not realizable for nu={nu}")
            params.append(JumpParams(nu=nu, n=size // nu, seed=seed))
        return params


@dataclass
class ConstructedGraph:
    """A sampled graph plus everything needed to audit and reproduce it."""

    graph: Graph
    kind: str  # canonical | simple | product
    params: JumpParams | MultiJumpSpec
    removed_edges: list[tuple[int, int]]
    factors: list["ConstructedGraph"] = field(default_factory=list)

    def metadata(self) -> dict:
        if self.kind == "product":
            spec = self.params
            return {
                "construction": "product",
                "nu_list": list(spec.nus),
                "n": spec.n1,
                "N": self.graph.n,
                "alpha": spec.alpha,
                "sizes": spec.sizes(),
                "seed": None,
                "seeds": list(spec.seeds),
                "removed_edges": [],
                "factors": [f.metadata() for f in self.factors],
            }
        return {
            "construction": self.kind,
            "nu": self.params.nu,
            "n": self.params.n,
            "N": self.graph.n,
            "seed": self.params.seed,
            "removed_edges": [list(e) for e in self.removed_edges],
        }


def sample_jump_graph(params: JumpParams) -> ConstructedGraph:
    """Complete graph minus one uniformly chosen edge per shift orbit.

    Orbits are processed in ascending representative order and each consumes
    exactly one PRNG draw, so the seed pins down the graph.
    """
    classes = equivalence_classes(params.nu, params.n)
    rng = random.Random(params.seed)
    removed = [cls.members[rng.randrange(cls.size)] for cls in classes]
    g = complete_graph(params.N)
    for u, v in removed:
        g.adj[u] &= ~(1 << v)
        g.adj[v] &= ~(1 << u)
    return ConstructedGraph(graph=g, kind="canonical", params=params, removed_edges=removed)


def explicit_power_set(params: JumpParams, k: int) -> set[tuple[int, ...]]:
    """Certificate for the k-th strong power of a canonical jump graph.

    For k = nu this is the N tuples (x, x+n, ..., x+(nu-1)n) mod N: between
    any two of them the coordinate pairs sweep a whole shift orbit, so the
    orbit's deleted edge shows up in some coordinate. For larger k, take
    floor(k/nu) independent blocks and pad the last k mod nu coordinates with
    vertex 0. Size N ** floor(k/nu); empty below the jump (k < nu).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    nu, n, N = params.nu, params.n, params.N
    if k < nu:
        return set()
    blocks, pad = divmod(k, nu)
    base = [tuple((x + t * n) % N for t in range(nu)) for x in range(N)]
    out = set()
    stack = [()]
    for _ in range(blocks):
        stack = [acc + b for acc in stack for b in base]
    padding = (0,) * pad
    for acc in stack:
        out.add(acc + padding)
    return out


def explicit_power_set_size(params: JumpParams, k: int) -> int:
    """Size the certificate would have, without materializing it."""
    if k < params.nu:
        return 0
    return params.N ** (k // params.nu)


def sample_simple_jump_graph(params: JumpParams) -> ConstructedGraph:
    """Row/column variant: vertices in n rows of length nu (vertex = row*nu +
    col); for each row pair delete the edge in one uniformly chosen column.
    Leaves C(N,2) - C(n,2) edges."""
    nu, n = params.nu, params.n
    rng = random.Random(params.seed)
    removed = []
    for i in range(n):
        for j in range(i + 1, n):
            col = rng.randrange(nu)
            removed.append(_norm_pair(i * nu + col, j * nu + col))
    g = complete_graph(params.N)
    for u, v in removed:
        g.adj[u] &= ~(1 << v)
        g.adj[v] &= ~(1 << u)
    return ConstructedGraph(graph=g, kind="simple", params=params, removed_edges=removed)


def simple_explicit_set(params: JumpParams, g: ConstructedGraph) -> set[tuple[int, ...]]:
    """The n row tuples (row*nu, ..., row*nu + nu - 1); each row pair is
    non-adjacent in its deleted column, so the set is independent in the
    nu-th power."""
    if g.kind != "simple":
        raise ValueError(f"expected a simple construction, got kind={g.kind!r}")
    if g.params != params:
        raise ValueError("params do not match the construction")
    nu = params.nu
    return {tuple(range(i * nu, (i + 1) * nu)) for i in range(params.n)}


def multi_jump_product(spec: MultiJumpSpec, cap: int = DEFAULT_CAP) -> ConstructedGraph:
    """Strong product of independently sampled canonical jump graphs."""
    factor_params = spec.factor_params()
    total = math.prod(p.N for p in factor_params)
    if total > cap:
        raise ValueError(f"product would have {total} vertices, cap is {cap}")
    factors = [sample_jump_graph(p) for p in factor_params]
    g = factors[0].graph
    for f in factors[1:]:
        g = strong_product(g, f.graph, cap=cap)
    return ConstructedGraph(
        graph=g, kind="product", params=spec, removed_edges=[], factors=factors
    )


def product_certificate(cg: ConstructedGraph, k: int) -> set[tuple[int, ...]]:
    """Combine factor certificates into one for the product's k-th power.

    Factors below their jump (k < nu_i) contribute the all-zeros tuple, so the
    combined size is the product of max(|certificate_i|, 1).
    """
    if cg.kind != "product":
        raise ValueError(f"expected a product construction, got kind={cg.kind!r}")
    factor_sizes = [f.graph.n for f in cg.factors]
    certs = []
    for f in cg.factors:
        c = explicit_power_set(f.params, k)
        certs.append(sorted(c) if c else [(0,) * k])
    combos = [()]
    for c in certs:
        combos = [acc + (t,) for acc in combos for t in c]
    out = set()
    for combo in combos:
        coords = []
        for j in range(k):
            flat = 0
            for i, size in enumerate(factor_sizes):
                flat = flat * size + combo[i][j]
            coords.append(flat)
        out.add(tuple(coords))
    return out


def certificate_for(cg: ConstructedGraph, k: int) -> set[tuple[int, ...]]:
    """Best explicit certificate available for cg's k-th power (may be empty)."""
    if cg.kind == "canonical":
        return explicit_power_set(cg.params, k)
    if cg.kind == "simple":
        if k == cg.params.nu:
            return simple_explicit_set(cg.params, cg)
        return set()
    if cg.kind == "product":
        cert = product_certificate(cg, k)
        return cert if len(cert) > 1 else set()
    raise ValueError(f"unknown construction kind {cg.kind!r}")


def certificate_size_for(cg: ConstructedGraph, k: int) -> int:
    """Size certificate_for(cg, k) would have, without materializing it."""
    if cg.kind == "canonical":
        return explicit_power_set_size(cg.params, k)
    if cg.kind == "simple":
        return cg.params.n if k == cg.params.nu else 0
    if cg.kind == "product":
        total = math.prod(max(explicit_power_set_size(f.params, k), 1) for f in cg.factors)
        return total if total > 1 else 0
    raise ValueError(f"unknown construction kind {cg.kind!r}")


def from_metadata(graph: Graph, meta: dict) -> ConstructedGraph:
    """Rebuild a ConstructedGraph from a deserialized graph and its sidecar."""
    kind = meta.get("construction")
    if kind in ("canonical", "simple"):
        params = JumpParams(nu=meta["nu"], n=meta["n"], seed=meta["seed"])
        removed = [tuple(e) for e in meta["removed_edges"]]
        return ConstructedGraph(graph=graph, kind=kind, params=params, removed_edges=removed)
    if kind == "product":
        spec = MultiJumpSpec(
            nus=tuple(meta["nu_list"]),
            n1=meta["n"],
            alpha=meta["alpha"],
            seeds=tuple(meta["seeds"]),
        )
        factors = []
        for fmeta in meta["factors"]:
            fg = complete_graph(fmeta["N"])
            for u, v in fmeta["removed_edges"]:
                fg.adj[u] &= ~(1 << v)
                fg.adj[v] &= ~(1 << u)
            factors.append(from_metadata(fg, fmeta))
        return ConstructedGraph(
            graph=graph, kind="product", params=spec, removed_edges=[], factors=factors
        )
    raise ValueError(f"unknown construction kind {kind!r}")
