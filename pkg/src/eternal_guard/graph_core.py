"""Finite graphs, guard configurations, and brute-force static domination numbers.

Vertices are dense integers 0..n-1; optional labels are cosmetic only.
Supports three kinds of domination (plain sets, Roman and Italian weight
functions into {0,1,2}) plus connected variants of each.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CapabilityError, ConfigError

# Default brute-force vertex limits for exhaustive static searches.
MAX_N_PLAIN = 20
MAX_N_WEIGHTED = 16


class Kind(Enum):
    DOMINATION = "domination"
    ROMAN = "roman"
    ITALIAN = "italian"


@dataclass(frozen=True)
class Variant:
    """Game variant: which dominating condition, connectivity, stacking mode.

    ``stacking`` only matters for the plain kind: by default guards may pile
    up on a vertex (multiset semantics); with ``stacking=False`` configurations
    are restricted to 0/1 counts.  Roman and Italian configurations are always
    capped at two guards per vertex.
    """

    kind: Kind = Kind.DOMINATION
    connected: bool = False
    stacking: bool = True

    def count_cap(self) -> Optional[int]:
        """Per-vertex guard cap, or None when unbounded."""
        if self.kind is Kind.DOMINATION:
            return None if self.stacking else 1
        return 2

    @property
    def code(self) -> str:
        tag = self.kind.value
        if self.connected:
            tag = "connected-" + tag
        if self.kind is Kind.DOMINATION and not self.stacking:
            tag += "/strict"
        return tag


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph with dense vertex ids.

    ``adjacency`` holds a sorted neighbor tuple per vertex.  Neighbor and
    closed-neighborhood bitmasks are precomputed for fast domination checks.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: Optional[tuple[str, ...]] = None
    neighbor_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    closed_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0 or len(self.adjacency) != self.n:
            raise ValueError("adjacency length must equal vertex count")
        nbr, clo = [], []
        for u, row in enumerate(self.adjacency):
            if list(row) != sorted(set(row)):
                raise ValueError(f"adjacency of {u} must be sorted and duplicate-free")
            m = 0
            for v in row:
                if not 0 <= v < self.n:
                    raise ValueError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise ValueError(f"self-loop at {u}")
                if u not in self.adjacency[v]:
                    raise ValueError(f"asymmetric edge {u}-{v}")
                m |= 1 << v
            nbr.append(m)
            clo.append(m | (1 << u))
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels length must equal vertex count")
        object.__setattr__(self, "neighbor_masks", tuple(nbr))
        object.__setattr__(self, "closed_masks", tuple(clo))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Optional[Sequence[str]] = None) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop ({u},{v})")
            if v in adj[u]:
                raise ValueError(f"duplicate edge ({u},{v})")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in adj),
                   None if labels is None else tuple(labels))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.neighbor_masks[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    @property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.adjacency) // 2

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return self.mask_connected(self.full_mask)

    def mask_connected(self, mask: int) -> bool:
        """True iff the subgraph induced by the mask's vertices is connected.

        An empty mask counts as connected (vacuous); a single vertex does too.
        """
        if mask == 0:
            return True
        start = (mask & -mask).bit_length() - 1
        seen = 1 << start
        frontier = seen
        while frontier:
            nxt = 0
            m = frontier
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                nxt |= self.neighbor_masks[u] & mask
            frontier = nxt & ~seen
            seen |= frontier
        return seen == mask

    def bipartition(self) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
        """A 2-coloring as (side0, side1) tuples, or None if not bipartite."""
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] != -1:
                continue
            color[s] = 0
            queue = [s]
            while queue:
                u = queue.pop()
                for v in self.adjacency[u]:
                    if color[v] == -1:
                        color[v] = color[u] ^ 1
                        queue.append(v)
                    elif color[v] == color[u]:
                        return None
        side0 = tuple(v for v in range(self.n) if color[v] == 0)
        side1 = tuple(v for v in range(self.n) if color[v] != 0)
        return side0, side1

    def diameter(self) -> int:
        """Longest shortest-path distance; raises on disconnected graphs."""
        best = 0
        for s in range(self.n):
            dist = {s: 0}
            queue = [s]
            for u in queue:
                for v in self.adjacency[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        queue.append(v)
            if len(dist) != self.n:
                raise ValueError("diameter of a disconnected graph")
            best = max(best, max(dist.values()))
        return best


@dataclass(frozen=True)
class GuardConfig:
    """A guard placement: per-vertex non-negative multiplicities."""

    counts: tuple[int, ...]

    @classmethod
    def from_support(cls, n: int, vertices: Iterable[int]) -> "GuardConfig":
        counts = [0] * n
        for v in vertices:
            counts[v] += 1
        return cls(tuple(counts))

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "GuardConfig":
        return cls(tuple(counts))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def support(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.counts) if c)

    def support_mask(self) -> int:
        m = 0
        for v, c in enumerate(self.counts):
            if c:
                m |= 1 << v
        return m

    def check_wellformed(self, g: Graph, variant: Variant) -> None:
        """Raise ConfigError unless the configuration is structurally legal."""
        if len(self.counts) != g.n:
            raise ConfigError(f"expected {g.n} counts, got {len(self.counts)}")
        cap = variant.count_cap()
        for v, c in enumerate(self.counts):
            if c < 0:
                raise ConfigError(f"negative count at vertex {v}")
            if cap is not None and c > cap:
                raise ConfigError(
                    f"count {c} at vertex {v} exceeds the cap of {cap} "
                    f"for variant {variant.code}")


def counts_valid(g: Graph, counts: Sequence[int], variant: Variant) -> bool:
    """Dominating-condition check on a raw count vector (assumed well-formed).

    Hot path for enumeration; see validate_config for the checked API.
    """
    support_mask = 0
    for v, c in enumerate(counts):
        if c:
            support_mask |= 1 << v
    if variant.kind is Kind.DOMINATION:
        covered = 0
        m = support_mask
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            covered |= g.closed_masks[u]
        if covered != g.full_mask:
            return False
    elif variant.kind is Kind.ROMAN:
        twos = 0
        for v, c in enumerate(counts):
            if c == 2:
                twos |= 1 << v
        for v, c in enumerate(counts):
            if c == 0 and not (g.neighbor_masks[v] & twos):
                return False
    else:  # Italian
        for v, c in enumerate(counts):
            if c == 0 and sum(counts[u] for u in g.adjacency[v]) < 2:
                return False
    if variant.connected and not g.mask_connected(support_mask):
        return False
    return True


def validate_config(g: Graph, config: GuardConfig, variant: Variant) -> bool:
    """True iff the configuration satisfies the variant's dominating condition.

    Plain: every vertex outside the support has a guarded neighbor.
    Roman: every zero vertex has a neighbor with two guards.
    Italian: every zero vertex's neighbor counts sum to at least two.
    With ``variant.connected``, the support must induce a connected subgraph.

    Malformed configurations (counts above the variant cap, wrong length,
    negative entries) raise ConfigError rather than returning False.
    """
    config.check_wellformed(g, variant)
    return counts_valid(g, config.counts, variant)


def _check_size(g: Graph, variant: Variant, max_n: Optional[int]) -> None:
    limit = max_n if max_n is not None else (
        MAX_N_PLAIN if variant.kind is Kind.DOMINATION else MAX_N_WEIGHTED)
    if g.n > limit:
        raise CapabilityError(
            f"graph has {g.n} vertices, above the brute-force limit {limit}",
            estimate=g.n, limit=limit)


def iter_weight_vectors(n: int, weight: int, cap: int) -> Iterator[tuple[int, ...]]:
    """All count vectors of the given total in lexicographic tuple order."""
    vec = [0] * n

    def rec(i: int, rem: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            if rem == 0:
                yield tuple(vec)
            return
        hi = min(cap, rem)
        lo = max(0, rem - cap * (n - i - 1))
        for c in range(lo, hi + 1):
            vec[i] = c
            yield from rec(i + 1, rem - c)
        vec[i] = 0

    return rec(0, weight)


def static_number(g: Graph, variant: Variant,
                  max_n: Optional[int] = None) -> tuple[int, GuardConfig]:
    """Minimum weight of a valid configuration, with a witness.

    Exhaustive search in increasing weight, lexicographic within a weight, so
    the witness is deterministic.  Plain variants search vertex subsets;
    Roman/Italian search {0,1,2} count vectors.  Raises CapabilityError above
    the documented vertex limit (overridable via ``max_n``) and ValueError if
    no valid configuration exists at any weight (only possible for connected
    variants on disconnected graphs).
    """
    if g.n == 0:
        raise ValueError("static number of the empty graph")
    _check_size(g, variant, max_n)
    if variant.kind is Kind.DOMINATION:
        for w in range(1, g.n + 1):
            for combo in itertools.combinations(range(g.n), w):
                counts = [0] * g.n
                for v in combo:
                    counts[v] = 1
                if counts_valid(g, counts, variant):
                    return w, GuardConfig(tuple(counts))
    else:
        for w in range(1, 2 * g.n + 1):
            for counts in iter_weight_vectors(g.n, w, 2):
                if counts_valid(g, counts, variant):
                    return w, GuardConfig(counts)
    raise ValueError(f"no valid {variant.code} configuration exists")


def min_connected_dominating_set(g: Graph, max_n: Optional[int] = None) -> tuple[int, ...]:
    """Minimum-cardinality connected dominating set, lexicographic tie-break."""
    if g.n == 0 or not g.is_connected():
        raise ValueError("connected dominating set requires a connected graph")
    _check_size(g, Variant(Kind.DOMINATION), max_n)
    for size in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            mask = 0
            covered = 0
            for v in combo:
                mask |= 1 << v
                covered |= g.closed_masks[v]
            if covered == g.full_mask and g.mask_connected(mask):
                return combo
    raise AssertionError("unreachable: V itself is a connected dominating set")


def min_connected_italian_function(g: Graph,
                                   max_n: Optional[int] = None) -> tuple[int, GuardConfig]:
    """Minimum-weight Italian dominating function with connected support."""
    if g.n == 0 or not g.is_connected():
        raise ValueError("requires a connected graph")
    _check_size(g, Variant(Kind.ITALIAN), max_n)
    return static_number(g, Variant(Kind.ITALIAN, connected=True), max_n=max_n)


# ---------------------------------------------------------------------------
# Small-graph catalog used by tests, verification harnesses, and the CLI docs.

def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves: int) -> Graph:
    """Star with the center at vertex 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def pentagon_with_chord() -> Graph:
    """The 5-cycle 0-1-2-3-4-0 plus the chord 0-3.

    Its minimum dominating sets have size 2 (for example {1, 3}).
    """
    return Graph.from_edges(
        5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 3)],
        labels=("v1", "v2", "v3", "v4", "v5"))


def _canonical_form(n: int, edge_set: frozenset[tuple[int, int]]) -> frozenset:
    best = None
    for perm in itertools.permutations(range(n)):
        mapped = frozenset(tuple(sorted((perm[u], perm[v]))) for u, v in edge_set)
        if best is None or sorted(mapped) < sorted(best):
            best = mapped
    return best


def connected_graphs(n: int) -> list[Graph]:
    """All connected graphs on n vertices up to isomorphism (small n only)."""
    if n > 5:
        raise CapabilityError("connected-graph enumeration supported for n <= 5",
                              estimate=n, limit=5)
    if n == 1:
        return [Graph.from_edges(1, [])]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    out = []
    for r in range(n - 1, len(pairs) + 1):
        for combo in itertools.combinations(pairs, r):
            g = Graph.from_edges(n, combo)
            if not g.is_connected():
                continue
            canon = _canonical_form(n, frozenset(combo))
            if canon not in seen:
                seen.add(canon)
                out.append(g)
    return out


def random_connected_graph(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    """Random connected graph: random recursive tree plus p-density extra edges."""
    if n < 1:
        raise ValueError("need at least one vertex")
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        j = rng.randrange(i)
        edges.add(tuple(sorted((order[i], order[j]))))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))
