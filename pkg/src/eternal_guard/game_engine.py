"""Turn semantics for the eternal domination games.

An attack targets an unguarded vertex.  A defense moves any number of guards
simultaneously, each to a neighbor of its current vertex (or staying put),
with at least one guard landing on the attacked vertex.  Whether one
configuration can transition into another is an integer-flow feasibility
question decided by augmenting-path matching over guard units.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import IllegalMoveError
from .graph_core import Graph, GuardConfig, Variant


def legal_attacks(g: Graph, config: GuardConfig) -> tuple[int, ...]:
    """The vertices the attacker may assail: exactly the unguarded ones.

    An empty result means the attacker has no move, which the solver treats
    as a defender win.
    """
    return tuple(v for v, c in enumerate(config.counts) if c == 0)


@dataclass(frozen=True)
class DefenseMove:
    """One (from, to) pair per guard; stay moves have from == to.

    The multiset of 'from' endpoints must equal the pre-move configuration.
    Moves are stored sorted so equal multisets compare equal.
    """

    moves: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, pairs) -> "DefenseMove":
        return cls(tuple(sorted(pairs)))


def apply_defense(g: Graph, config: GuardConfig, move: DefenseMove,
                  attacked: int, variant: Variant) -> GuardConfig:
    """Apply a simultaneous multi-guard move, validating legality.

    Rejects (IllegalMoveError): a 'from' multiset that differs from the
    configuration, any non-stay move along a non-edge, no guard landing on the
    attacked vertex, or a destination count above the variant's cap.  The
    result is the post-move configuration; whether it is a valid dominating
    configuration is judged separately.
    """
    sources = [0] * g.n
    after = [0] * g.n
    for u, v in move.moves:
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise IllegalMoveError(f"move endpoint out of range: ({u},{v})", (u, v))
        if u != v and not g.has_edge(u, v):
            raise IllegalMoveError(f"({u},{v}) is not an edge", (u, v))
        sources[u] += 1
        after[v] += 1
    if tuple(sources) != config.counts:
        bad = next((u for u in range(g.n) if sources[u] != config.counts[u]), None)
        raise IllegalMoveError(
            f"'from' multiset does not match the configuration at vertex {bad}",
            (bad, bad))
    if after[attacked] == 0:
        raise IllegalMoveError(f"no guard moved to the attacked vertex {attacked}",
                               (attacked, attacked))
    cap = variant.count_cap()
    if cap is not None:
        for v, c in enumerate(after):
            if c > cap:
                raise IllegalMoveError(
                    f"destination {v} would hold {c} guards (cap {cap})", (v, v))
    return GuardConfig(tuple(after))


def _unit_matching_feasible(g: Graph, c1: tuple[int, ...], c2: tuple[int, ...]) -> bool:
    """Perfect matching of c1's guard units onto c2's, each unit staying or
    crossing one edge."""
    src = [u for u, c in enumerate(c1) for _ in range(c)]
    snk = [v for v, c in enumerate(c2) for _ in range(c)]
    k = len(src)
    allowed = [g.closed_masks[u] for u in src]
    match_of_sink = [-1] * k

    def augment(i: int, visited: list[bool]) -> bool:
        for j in range(k):
            if not visited[j] and (allowed[i] >> snk[j]) & 1:
                visited[j] = True
                if match_of_sink[j] < 0 or augment(match_of_sink[j], visited):
                    match_of_sink[j] = i
                    return True
        return False

    for i in range(k):
        if not augment(i, [False] * k):
            return False
    return True


def flow_feasible(g: Graph, c1: tuple[int, ...], c2: tuple[int, ...],
                  cache: Optional[dict] = None) -> bool:
    """Can c1's guards be routed onto c2, each along at most one edge?

    Symmetric in its two arguments (unit moves reverse along the same edges).
    Pass a dict to memoize per (c1, c2) pair within a solver run.
    """
    if cache is not None:
        key = (c1, c2)
        hit = cache.get(key)
        if hit is not None:
            return hit
    # Cheap necessary conditions before running the matching.
    m1 = m2 = 0
    for v, c in enumerate(c1):
        if c:
            m1 |= 1 << v
    for v, c in enumerate(c2):
        if c:
            m2 |= 1 << v
    reach1 = 0
    m = m1
    while m:
        u = (m & -m).bit_length() - 1
        m &= m - 1
        reach1 |= g.closed_masks[u]
    if m2 & ~reach1:
        ok = False
    else:
        reach2 = 0
        m = m2
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            reach2 |= g.closed_masks[u]
        ok = not (m1 & ~reach2) and _unit_matching_feasible(g, c1, c2)
    if cache is not None:
        cache[key] = ok
        cache[(c2, c1)] = ok
    return ok


def transition_feasible(g: Graph, config: GuardConfig, target: GuardConfig,
                        attacked: int, *, require_cover: bool = True,
                        cache: Optional[dict] = None) -> bool:
    """True iff the defense can turn ``config`` into ``target`` against the attack.

    Requires (a) the target to cover the attacked vertex and (b) an integer
    flow routing each guard to itself or a neighbor.  Since the attacked
    vertex is unguarded before the move, (a)+(b) force a real guard arrival.
    ``require_cover=False`` drops condition (a), leaving pure move feasibility.
    """
    if config.total != target.total:
        raise ValueError("configurations with different guard totals")
    if require_cover and target.counts[attacked] == 0:
        return False
    return flow_feasible(g, config.counts, target.counts, cache)


def reachable_configs(g: Graph, counts: tuple[int, ...],
                      cap: Optional[int]) -> set[tuple[int, ...]]:
    """All post-move count vectors reachable in one defense turn.

    Dynamic program over guarded vertices: the guards on each vertex scatter
    into its closed neighborhood; partial results are deduplicated so the
    state space stays bounded by the count-vector universe.
    """
    n = len(counts)
    states = {tuple([0] * n)}
    for u, m in enumerate(counts):
        if not m:
            continue
        dests = g.adjacency[u] + (u,)
        spreads = list(itertools.combinations_with_replacement(dests, m))
        nxt = set()
        for st in states:
            base = list(st)
            for spread in spreads:
                vec = base.copy()
                ok = True
                for v in spread:
                    vec[v] += 1
                    if cap is not None and vec[v] > cap:
                        ok = False
                        break
                if ok:
                    nxt.add(tuple(vec))
        states = nxt
    return states


def all_defense_moves(g: Graph, config: GuardConfig,
                      variant: Variant) -> Iterator[DefenseMove]:
    """Every distinct legal defense move (ignoring the cover requirement).

    Exhaustive; intended for cross-checking transition feasibility on tiny
    instances only.
    """
    cap = variant.count_cap()
    unit_sources = [u for u, c in enumerate(config.counts) for _ in range(c)]
    choices = [g.adjacency[u] + (u,) for u in unit_sources]
    seen = set()
    for combo in itertools.product(*choices):
        move = DefenseMove.of(zip(unit_sources, combo))
        if move in seen:
            continue
        seen.add(move)
        if cap is not None:
            after = [0] * g.n
            for _, v in move.moves:
                after[v] += 1
            if any(c > cap for c in after):
                continue
        yield move
