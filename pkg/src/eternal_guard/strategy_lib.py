"""Executable floating-guard defender policies and a simulation harness.

Each policy keeps an invariant core fully guarded (a connected dominating set
with one guard per vertex, the same set with two guards per vertex, or an
Italian weight function with connected support) plus one floating guard.  An
attack is absorbed by shifting guards along a path from the float through the
core's interior to the attacked vertex, which restores the core and leaves
the float on the attacked vertex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Union

from .errors import IllegalAttackError
from .game_engine import DefenseMove, apply_defense, legal_attacks, reachable_configs
from .graph_core import (Graph, GuardConfig, Kind, Variant, counts_valid,
                         validate_config)


class PolicyKind(Enum):
    FLOATING_PLAIN = "floating-plain"
    FLOATING_ROMAN = "floating-roman"
    FLOATING_ITALIAN = "floating-italian"


_KIND_FOR_VARIANT = {
    Kind.DOMINATION: PolicyKind.FLOATING_PLAIN,
    Kind.ROMAN: PolicyKind.FLOATING_ROMAN,
    Kind.ITALIAN: PolicyKind.FLOATING_ITALIAN,
}


@dataclass
class Policy:
    """Mutable floating-guard policy state.

    ``core`` is the invariant part: a vertex tuple for plain/Roman policies,
    a full count vector for Italian ones.  ``float_at`` tracks the floating
    guard; ``config`` is the current configuration.
    """

    kind: PolicyKind
    variant: Variant
    graph: Graph
    core: tuple
    core_support: tuple[int, ...]
    float_at: int
    config: GuardConfig

    @property
    def budget(self) -> int:
        return self.config.total


def make_floating_policy(g: Graph, variant: Variant, core) -> Policy:
    """Build a floating-guard policy from its core.

    Plain: core is a connected dominating set Z; budget |Z|+1.
    Roman: the same Z with two guards per vertex; budget 2|Z|+1.
    Italian: core is an Italian dominating function (count vector) whose
    support induces a connected subgraph; budget weight+1.
    The float starts on the lowest-id vertex outside the core support.
    """
    kind = _KIND_FOR_VARIANT[variant.kind]
    counts = [0] * g.n
    if kind is PolicyKind.FLOATING_ITALIAN:
        f = tuple(core)
        if len(f) != g.n or any(c not in (0, 1, 2) for c in f):
            raise ValueError("Italian core must be a {0,1,2} count vector")
        if not counts_valid(g, f, Variant(Kind.ITALIAN)):
            raise ValueError("core is not an Italian dominating function")
        support = tuple(v for v, c in enumerate(f) if c)
        smask = 0
        for v in support:
            smask |= 1 << v
        if not support or not g.mask_connected(smask):
            raise ValueError("Italian core support must be non-empty and connected")
        for v, c in enumerate(f):
            counts[v] = c
        core_data: tuple = f
    else:
        z = tuple(sorted(set(core)))
        if not z or any(not 0 <= v < g.n for v in z):
            raise ValueError("core must be a non-empty vertex set")
        zmask = 0
        covered = 0
        for v in z:
            zmask |= 1 << v
            covered |= g.closed_masks[v]
        if covered != g.full_mask or not g.mask_connected(zmask):
            raise ValueError("core must be a connected dominating set")
        per_vertex = 2 if kind is PolicyKind.FLOATING_ROMAN else 1
        for v in z:
            counts[v] = per_vertex
        support = z
        core_data = z
    outside = [v for v in range(g.n) if counts[v] == 0]
    if not outside:
        raise ValueError("no vertex left for the floating guard")
    float_at = outside[0]
    counts[float_at] += 1
    config = GuardConfig(tuple(counts))
    config.check_wellformed(g, variant)
    return Policy(kind=kind, variant=variant, graph=g, core=core_data,
                  core_support=support, float_at=float_at, config=config)


def _chain_path(g: Graph, start: int, goal: int, interior: tuple[int, ...]) -> list[int]:
    """Shortest start-to-goal path whose interior stays in the core support.

    BFS visiting neighbors in ascending id order, so ties break toward the
    lowest-id path.
    """
    allowed = set(interior)
    parent = {start: None}
    queue = [start]
    for u in queue:
        for v in g.adjacency[u]:
            if v in parent:
                continue
            if v == goal:
                parent[v] = u
                path = [v]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if v in allowed:
                parent[v] = u
                queue.append(v)
    raise ValueError(f"no core path from {start} to {goal}")


def policy_defend(policy: Policy, attacked: int) -> DefenseMove:
    """Defense move for an attack: chain shift from the float to the target.

    One guard moves along each edge of the path; all other guards stay, so
    interior core vertices keep their guard totals, the old float vertex
    empties, and the attacked vertex becomes the new float.
    """
    g = policy.graph
    counts = policy.config.counts
    if not 0 <= attacked < g.n:
        raise IllegalAttackError(f"vertex {attacked} out of range")
    if counts[attacked] != 0:
        raise IllegalAttackError(f"vertex {attacked} is guarded")
    path = _chain_path(g, policy.float_at, attacked, policy.core_support)
    moving = list(zip(path[:-1], path[1:]))
    stays = [0] * g.n
    for v, c in enumerate(counts):
        stays[v] = c
    for u, _ in moving:
        stays[u] -= 1
    pairs = moving + [(v, v) for v, c in enumerate(stays) for _ in range(c)]
    return DefenseMove.of(pairs)


def policy_step(policy: Policy, attacked: int) -> tuple[DefenseMove, GuardConfig]:
    """Defend and advance the policy state."""
    move = policy_defend(policy, attacked)
    after = apply_defense(policy.graph, policy.config, move, attacked, policy.variant)
    policy.config = after
    policy.float_at = attacked
    return move, after


# ---------------------------------------------------------------------------
# Attackers

@dataclass
class ScriptAttacker:
    """Plays a fixed vertex list; attacks on guarded vertices are forfeited."""

    script: Sequence[int]
    _pos: int = 0

    def next_attack(self, g: Graph, config: GuardConfig) -> Optional[int]:
        if self._pos >= len(self.script):
            return None
        v = self.script[self._pos]
        self._pos += 1
        return v


@dataclass
class RandomAttacker:
    """Uniform choice among unguarded vertices, seeded for reproducibility."""

    seed: int
    _rng: random.Random = field(init=False, repr=False)

    def __post_init__(self):
        self._rng = random.Random(self.seed)

    def next_attack(self, g: Graph, config: GuardConfig) -> Optional[int]:
        candidates = legal_attacks(g, config)
        if not candidates:
            return None
        return candidates[self._rng.randrange(len(candidates))]


@dataclass
class AdversarialAttacker:
    """Greedy adversary: attacks the vertex minimizing the defender's
    feasible-response count (valid reachable configurations covering the
    target), lowest id on ties.  ``depth`` is recorded for the attack-script
    format; the selection rule itself is single-step.
    """

    depth: int = 1

    def next_attack(self, g: Graph, config: GuardConfig,
                    variant: Variant = Variant()) -> Optional[int]:
        candidates = legal_attacks(g, config)
        if not candidates:
            return None
        reach = reachable_configs(g, config.counts, variant.count_cap())
        valid_reach = [c for c in reach if counts_valid(g, c, variant)]
        best_v, best_score = None, None
        for v in candidates:
            score = sum(1 for c in valid_reach if c[v])
            if best_score is None or score < best_score:
                best_v, best_score = v, score
        return best_v


AttackerType = Union[ScriptAttacker, RandomAttacker, AdversarialAttacker]


@dataclass(frozen=True)
class Round:
    before: GuardConfig
    attacked: int
    move: DefenseMove
    after: GuardConfig
    valid: bool


@dataclass(frozen=True)
class Transcript:
    """Record of a simulation: defended rounds, forfeited attacks, outcome."""

    rounds: tuple[Round, ...]
    forfeits: tuple[tuple[int, int], ...]
    outcome: bool

    def to_dict(self, round_limit: int = 64) -> dict:
        rounds = [{
            "attacked": r.attacked,
            "before": list(r.before.counts),
            "after": list(r.after.counts),
            "valid": r.valid,
        } for r in self.rounds[:round_limit]]
        return {
            "rounds": len(self.rounds),
            "forfeits": [list(f) for f in self.forfeits],
            "outcome": self.outcome,
            "detail": rounds,
            "detail_truncated": len(self.rounds) > round_limit,
        }


def simulate(g: Graph, policy: Policy, attacker: AttackerType,
             rounds: int) -> Transcript:
    """Run up to ``rounds`` attacks against the policy.

    Scripted attacks on guarded vertices are logged as forfeits and consume
    the round without a defense.  The outcome is False iff some defense left
    an invalid configuration (the policy never should); play stops there.
    """
    played: list[Round] = []
    forfeits: list[tuple[int, int]] = []
    outcome = True
    for i in range(rounds):
        if isinstance(attacker, AdversarialAttacker):
            attacked = attacker.next_attack(g, policy.config, policy.variant)
        else:
            attacked = attacker.next_attack(g, policy.config)
        if attacked is None:
            break
        if policy.config.counts[attacked] != 0:
            forfeits.append((i, attacked))
            continue
        before = policy.config
        move, after = policy_step(policy, attacked)
        ok = validate_config(g, after, policy.variant)
        played.append(Round(before, attacked, move, after, ok))
        if not ok:
            outcome = False
            break
    return Transcript(tuple(played), tuple(forfeits), outcome)
