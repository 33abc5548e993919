"""Exact computation of defender-win families and eternal domination numbers.

The production algorithm is a greatest-fixed-point elimination: start from
every valid configuration of the given weight and repeatedly delete any
configuration that has an attack with no feasible transition into the current
family.  Deletion is round-synchronous (round i deletes against the family of
round i-1) and the fixed point is unique regardless of order, so results are
deterministic.  An independent minimax oracle recomputes the winning set by
naive full-universe iteration for cross-checks on tiny instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import CapabilityError, InvariantViolation
from .game_engine import flow_feasible, legal_attacks, transition_feasible
from .graph_core import (Graph, GuardConfig, Kind, Variant, counts_valid,
                         iter_weight_vectors, static_number)

DEFAULT_CONFIG_BUDGET = 2_000_000
DEFAULT_ORACLE_CAP = 50_000
# Above this many (config, attack) pairs the post-hoc closure recheck is skipped.
RECHECK_PAIR_LIMIT = 250_000


def count_configs(n: int, k: int, variant: Variant) -> int:
    """Number of raw count vectors of weight k (before validity filtering)."""
    cap = variant.count_cap()
    if cap is None or cap >= k:
        return math.comb(n + k - 1, k)
    if cap == 1:
        return math.comb(n, k) if k <= n else 0
    total = 0
    for twos in range(k // 2 + 1):
        ones = k - 2 * twos
        if twos + ones <= n:
            total += math.comb(n, twos) * math.comb(n - twos, ones)
    return total


def _effective_cap(variant: Variant, k: int) -> int:
    cap = variant.count_cap()
    return k if cap is None else cap


def enumerate_valid_configs(g: Graph, variant: Variant, k: int) -> list[tuple[int, ...]]:
    """All valid weight-k count vectors, in lexicographic order."""
    cap = _effective_cap(variant, k)
    return [c for c in iter_weight_vectors(g.n, k, cap)
            if counts_valid(g, c, variant)]


@dataclass(frozen=True)
class SafeFamily:
    """The surviving configurations after fixed-point elimination.

    Non-empty configs certify a defender win with k guards: every member is
    valid and every attack on a member admits a feasible transition to some
    member.  ``witnesses`` records one such target per (member, attack) pair.
    """

    variant: Variant
    k: int
    configs: tuple[GuardConfig, ...]
    defender_win: bool
    initial_count: int = 0
    rounds: int = 0
    witnesses: dict = field(default_factory=dict, repr=False, compare=False)

    def to_dict(self, config_limit: int = 256) -> dict:
        out = {
            "variant": self.variant.code,
            "k": self.k,
            "defender_win": self.defender_win,
            "valid_configs": self.initial_count,
            "surviving_configs": len(self.configs),
            "elimination_rounds": self.rounds,
        }
        if len(self.configs) <= config_limit:
            out["configs"] = [list(c.counts) for c in self.configs]
        else:
            import hashlib
            blob = ";".join(",".join(map(str, c.counts)) for c in self.configs)
            out["configs_sha256"] = hashlib.sha256(blob.encode()).hexdigest()
        return out


def _budget_check(g: Graph, variant: Variant, k: int, budget: Optional[int],
                  limit_default: int) -> int:
    estimate = count_configs(g.n, k, variant)
    limit = budget if budget is not None else limit_default
    if estimate > limit:
        raise CapabilityError(
            f"estimated {estimate} configurations exceeds the budget {limit}",
            estimate=estimate, limit=limit)
    return estimate


def safe_family(g: Graph, variant: Variant, k: int,
                budget: Optional[int] = None,
                recheck: bool = True) -> SafeFamily:
    """Greatest fixed point of the one-round defensibility operator.

    Starts from every valid weight-k configuration and deletes, round by
    round, any configuration with an undefendable attack.  Witness targets are
    searched in ascending configuration order with a persistent cursor per
    (configuration, attack) pair; dead or flow-infeasible candidates are
    permanently skipped, so the total scan work is linear in the candidate
    lists.  When ``recheck`` is set the returned witnesses are re-verified
    through the public transition test.
    """
    if k < 1:
        raise ValueError("guard budget must be at least 1")
    estimate = _budget_check(g, variant, k, budget, DEFAULT_CONFIG_BUDGET)
    valid = enumerate_valid_configs(g, variant, k)
    n_valid = len(valid)
    attacks = [tuple(v for v, c in enumerate(cfg) if c == 0) for cfg in valid]
    covers: list[list[int]] = [[] for _ in range(g.n)]
    for i, cfg in enumerate(valid):
        for v, c in enumerate(cfg):
            if c:
                covers[v].append(i)

    alive = [True] * n_valid
    cursor: dict[tuple[int, int], int] = {}
    witness: dict[tuple[int, int], int] = {}
    flow_cache: dict = {}
    rounds = 0
    changed = True
    while changed:
        rounds += 1
        changed = False
        prev_alive = alive[:]
        deaths = []
        for i in range(n_valid):
            if not alive[i]:
                continue
            ci = valid[i]
            for v in attacks[i]:
                w = witness.get((i, v))
                if w is not None and prev_alive[w]:
                    continue
                pos = cursor.get((i, v), 0)
                cand = covers[v]
                found = -1
                while pos < len(cand):
                    j = cand[pos]
                    if prev_alive[j] and flow_feasible(g, ci, valid[j], flow_cache):
                        found = j
                        break
                    pos += 1
                cursor[(i, v)] = pos
                if found < 0:
                    deaths.append(i)
                    break
                witness[(i, v)] = found
        for i in deaths:
            alive[i] = False
            changed = True

    survivors = [i for i in range(n_valid) if alive[i]]
    configs = tuple(GuardConfig(valid[i]) for i in survivors)
    witness_map = {}
    for i in survivors:
        for v in attacks[i]:
            witness_map[(valid[i], v)] = valid[witness[(i, v)]]
    family = SafeFamily(variant=variant, k=k, configs=configs,
                        defender_win=bool(survivors), initial_count=n_valid,
                        rounds=rounds, witnesses=witness_map)
    if recheck and survivors:
        pairs = sum(len(attacks[i]) for i in survivors)
        if pairs <= RECHECK_PAIR_LIMIT and not verify_closure(g, family):
            raise InvariantViolation("safe family failed its closure recheck")
    return family


def verify_closure(g: Graph, family: SafeFamily) -> bool:
    """Re-check the SafeFamily closure property through the public transition test."""
    member_counts = {c.counts for c in family.configs}
    for c in family.configs:
        if not counts_valid(g, c.counts, family.variant):
            return False
        for v in legal_attacks(g, c):
            target = family.witnesses.get((c.counts, v))
            if target is not None and target in member_counts:
                if transition_feasible(g, c, GuardConfig(target), v):
                    continue
            if not any(transition_feasible(g, c, GuardConfig(t), v)
                       for t in member_counts):
                return False
    return True


def oracle_minimax(g: Graph, variant: Variant, k: int,
                   cap: int = DEFAULT_ORACLE_CAP) -> bool:
    """Defender-win decision by naive iteration over the full configuration
    universe.

    Independent of the elimination machinery in safe_family: every pass
    rescans all currently-winning configurations and keeps those whose every
    attack can transition to some winning configuration; repetition is
    implicitly safe because surviving the fixed point means surviving forever.
    Intended for tiny instances (count capped by ``cap``).
    """
    if k < 1:
        raise ValueError("guard budget must be at least 1")
    _budget_check(g, variant, k, cap, DEFAULT_ORACLE_CAP)
    valid = enumerate_valid_configs(g, variant, k)
    attacks = {c: tuple(v for v, x in enumerate(c) if x == 0) for c in valid}
    winning = set(valid)
    flow_cache: dict = {}
    while True:
        keep = set()
        for c in winning:
            ok = True
            for v in attacks[c]:
                if not any(t[v] and flow_feasible(g, c, t, flow_cache)
                           for t in winning):
                    ok = False
                    break
            if ok:
                keep.add(c)
        if keep == winning:
            return bool(winning)
        winning = keep


@dataclass(frozen=True)
class EternalResult:
    """Outcome of an eternal-number search up to a guard budget.

    ``value`` is None when no winning budget was found up to ``k_max`` (a
    bounded failure, not a proof the defender always loses).
    """

    variant: Variant
    static_weight: int
    value: Optional[int]
    witness: Optional[SafeFamily]
    evaluated: dict
    k_max: int
    non_monotone: tuple = ()

    @property
    def bounded_failure(self) -> bool:
        return self.value is None

    def to_dict(self) -> dict:
        return {
            "variant": self.variant.code,
            "static_weight": self.static_weight,
            "value": self.value,
            "k_max": self.k_max,
            "evaluated": {str(k): w for k, w in sorted(self.evaluated.items())},
            "non_monotone": [list(p) for p in self.non_monotone],
            "witness": self.witness.to_dict() if self.witness else None,
        }


def default_k_max(g: Graph, variant: Variant) -> int:
    # All-vertices-guarded leaves the attacker no legal move, so these always win.
    return g.n if variant.kind is Kind.DOMINATION else 2 * g.n


def eternal_number(g: Graph, variant: Variant, k_max: Optional[int] = None,
                   budget: Optional[int] = None,
                   recheck: bool = True) -> EternalResult:
    """Minimum guard budget/weight with which the defender wins.

    Non-connected variants scan k upward from the static number and stop at
    the first win (the first win found scanning upward is the minimum by
    construction).  Connected variants evaluate every k in range independently
    because a parked extra guard can break support connectivity; any window
    where a larger budget loses after a smaller one won is reported.
    """
    if not g.is_connected():
        raise ValueError("eternal numbers are computed on connected graphs")
    # The scan start is a cheap low-weight search even on graphs above the
    # user-facing static_number limit; the config-count budget guards cost.
    w0, _ = static_number(g, variant, max_n=g.n)
    if k_max is None:
        k_max = default_k_max(g, variant)
    evaluated: dict[int, bool] = {}
    value = None
    witness = None
    for k in range(w0, k_max + 1):
        fam = safe_family(g, variant, k, budget=budget, recheck=recheck)
        evaluated[k] = fam.defender_win
        if fam.defender_win and value is None:
            value = k
            witness = fam
            if not variant.connected:
                break
    non_monotone = ()
    if variant.connected and value is not None:
        non_monotone = tuple((value, k) for k, win in sorted(evaluated.items())
                             if k > value and not win)
    return EternalResult(variant=variant, static_weight=w0, value=value,
                         witness=witness, evaluated=evaluated, k_max=k_max,
                         non_monotone=non_monotone)
