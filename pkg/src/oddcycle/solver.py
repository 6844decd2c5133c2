"""Exact small-board solvers and exhaustive strategy verification.

Game values are computed by memoized search over edge-ownership masks.  The
blocker's multi-claim turn is expanded one claim at a time with the number of
claims left in the memo key, so different orderings of the same claim set
collapse to one state.  Two sound shortcuts speed up the Maker-Breaker
search: a position where the builder's edges plus all unclaimed edges are
2-colorable can never produce an odd cycle, and on the blocker's turn any
surviving cycle-closing edge must be covered this turn, so claims are
restricted to those while they exist.

verify_strategy pins one side to a fixed strategy and expands every legal
move of the other side with no shortcuts at all, reporting the first losing
line as a replayable transcript.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

from .board import (
    UNCLAIMED,
    GameConfig,
    GameState,
    Role,
    Rules,
    Status,
    Variant,
    edge_count,
)
from .engine import (
    Choose,
    ClaimEdge,
    Forfeit,
    Move,
    Offer,
    Transcript,
    _ScriptedPlayer,
    offerable_edges,
    run_client_waiter,
    run_maker_breaker,
    validate_offer,
)
from .errors import CapacityError, StateError

DEFAULT_CAPACITY = {
    "mb_max_n": 6,
    "cw_max_n": 5,
    "verify_mb_max_n": 6,
    "verify_cw_max_n": 6,
    "solve_node_cap": 50_000_000,
    "verify_node_cap": 100_000_000,
}

ENV_OVERRIDE = "ODDCYCLE_CAPACITY_OVERRIDE"


def capacity_limits() -> dict:
    """Capacity defaults, adjusted by the ODDCYCLE_CAPACITY_OVERRIDE variable
    (comma-separated key=value pairs)."""
    caps = dict(DEFAULT_CAPACITY)
    raw = os.environ.get(ENV_OVERRIDE, "")
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in caps:
            raise ValueError(f"bad {ENV_OVERRIDE} entry: {part!r}")
        caps[key] = int(value.strip())
    return caps


def _check_size(config: GameConfig, caps: dict, kind: str = ""):
    if config.variant is Variant.MAKER_BREAKER:
        limit = caps[kind + "mb_max_n"]
    else:
        limit = caps[kind + "cw_max_n"]
    if config.n > limit:
        raise CapacityError(
            f"n={config.n} beyond the exact-search limit {limit} for "
            f"{config.variant.value}; raise it via {ENV_OVERRIDE}")


class _EdgeTables:
    """Bitmask geometry of K_n shared by the solvers."""

    def __init__(self, n: int):
        self.n = n
        self.E = edge_count(n)
        self.full = (1 << self.E) - 1
        self.pairs = []
        self.at_vertex = [0] * n
        eid = 0
        for u in range(n):
            for v in range(u + 1, n):
                self.pairs.append((u, v))
                self.at_vertex[u] |= 1 << eid
                self.at_vertex[v] |= 1 << eid
                eid += 1

    def closer_mask(self, bld: int) -> int:
        """Edges whose endpoints are joined with equal parity by bld."""
        n = self.n
        parent = list(range(n))
        parity = [0] * n

        def find(x):
            p = 0
            while parent[x] != x:
                p ^= parity[x]
                x = parent[x]
            return x, p

        m = bld
        while m:
            e = (m & -m).bit_length() - 1
            m &= m - 1
            u, v = self.pairs[e]
            ru, pu = find(u)
            rv, pv = find(v)
            if ru != rv:
                parent[rv] = ru
                parity[rv] = pu ^ pv ^ 1
        out = 0
        for e in range(self.E):
            if bld >> e & 1:
                continue
            u, v = self.pairs[e]
            ru, pu = find(u)
            rv, pv = find(v)
            if ru == rv and pu == pv:
                out |= 1 << e
        return out

    def odd_cycle_possible(self, edges: int) -> bool:
        """Can the edge set (as one graph) contain an odd cycle?"""
        n = self.n
        parent = list(range(n))
        parity = [0] * n

        def find(x):
            p = 0
            while parent[x] != x:
                p ^= parity[x]
                x = parent[x]
            return x, p

        m = edges
        while m:
            e = (m & -m).bit_length() - 1
            m &= m - 1
            u, v = self.pairs[e]
            ru, pu = find(u)
            rv, pv = find(v)
            if ru == rv:
                if pu == pv:
                    return True
            else:
                parent[rv] = ru
                parity[rv] = pu ^ pv ^ 1
        return False

    def vertex_edges(self, vmask_vertices) -> int:
        out = 0
        for v in vmask_vertices:
            out |= self.at_vertex[v]
        return out

    def touched_vertices(self, edges: int) -> set[int]:
        out = set()
        m = edges
        while m:
            e = (m & -m).bit_length() - 1
            m &= m - 1
            u, v = self.pairs[e]
            out.add(u)
            out.add(v)
        return out

    def bits(self, mask: int) -> list[int]:
        out = []
        while mask:
            e = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            out.append(e)
        return out


_TABLES: dict[int, _EdgeTables] = {}


def _tables(n: int) -> _EdgeTables:
    if n not in _TABLES:
        _TABLES[n] = _EdgeTables(n)
    return _TABLES[n]


# -- Maker-Breaker ----------------------------------------------------------------


class MBSolver:
    """Memoized game value of Maker-Breaker positions on K_n."""

    def __init__(self, config: GameConfig, node_cap: int | None = None):
        caps = capacity_limits()
        _check_size(config, caps)
        self.config = config
        self.t = _tables(config.n)
        self.node_cap = node_cap if node_cap is not None else caps["solve_node_cap"]
        self.nodes = 0
        self.memo: dict = {}
        self.closers_cache: dict[int, int] = {}

    def _closers(self, bld: int) -> int:
        m = self.closers_cache.get(bld)
        if m is None:
            m = self.t.closer_mask(bld)
            self.closers_cache[bld] = m
        return m

    def _legal(self, bld: int, unclaimed: int) -> int:
        if self.config.rules is Rules.CONNECTED and bld:
            return unclaimed & self.t.vertex_edges(self.t.touched_vertices(bld))
        return unclaimed

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise CapacityError(
                f"exact search exceeded {self.node_cap} nodes; raise "
                f"solve_node_cap via {ENV_OVERRIDE}")

    def builder_wins(self, bld: int, blk: int) -> bool:
        """Value with the builder to move."""
        key = (bld, blk, -1)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self._tick()
        unclaimed = self.t.full & ~(bld | blk)
        result = None
        if unclaimed == 0:
            result = False
        else:
            legal = self._legal(bld, unclaimed)
            if legal == 0:
                result = False
            elif self._closers(bld) & legal:
                result = True
            elif not self.t.odd_cycle_possible(bld | unclaimed):
                result = False
        if result is None:
            result = False
            for e in self.t.bits(legal):
                nb = bld | (1 << e)
                left = min(self.config.b, bin(unclaimed).count("1") - 1)
                if self.blocker_turn(nb, blk, left):
                    result = True
                    break
        self.memo[key] = result
        return result

    def blocker_turn(self, bld: int, blk: int, claims_left: int) -> bool:
        """Value mid blocker turn; True means the builder wins."""
        if claims_left == 0:
            return self.builder_wins(bld, blk)
        unclaimed = self.t.full & ~(bld | blk)
        if unclaimed == 0:
            return self.builder_wins(bld, blk)
        key = (bld, blk, claims_left)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self._tick()
        live = self._closers(bld) & self._legal(bld, unclaimed)
        if bin(live).count("1") > claims_left:
            self.memo[key] = True
            return True
        moves = live if live else unclaimed
        result = True
        for m in self.t.bits(moves):
            if not self.blocker_turn(bld, blk | (1 << m), claims_left - 1):
                result = False
                break
        self.memo[key] = result
        return result

    def from_state(self, state: GameState, mover: Role, claims_left: int | None = None):
        bld = blk = 0
        for e in range(state.E):
            if state.own[e] == 1:
                bld |= 1 << e
            elif state.own[e] == 2:
                blk |= 1 << e
        if mover is Role.BUILDER:
            return self.builder_wins(bld, blk)
        return self.blocker_turn(bld, blk, claims_left)


# -- Client-Waiter ------------------------------------------------------------------


class CWSolver:
    """Memoized game value of monotone Client-Waiter positions on K_n."""

    def __init__(self, config: GameConfig, node_cap: int | None = None):
        caps = capacity_limits()
        _check_size(config, caps)
        self.config = config
        self.t = _tables(config.n)
        self.node_cap = node_cap if node_cap is not None else caps["solve_node_cap"]
        self.nodes = 0
        self.memo: dict = {}
        self.closers_cache: dict[int, int] = {}

    def _closers(self, cli: int) -> int:
        m = self.closers_cache.get(cli)
        if m is None:
            m = self.t.closer_mask(cli)
            self.closers_cache[cli] = m
        return m

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise CapacityError(
                f"exact search exceeded {self.node_cap} nodes; raise "
                f"solve_node_cap via {ENV_OVERRIDE}")

    def _offerable(self, cli: int, unclaimed: int) -> int:
        if self.config.rules is Rules.CONNECTED and cli:
            return unclaimed & self.t.vertex_edges(self.t.touched_vertices(cli))
        return unclaimed

    def offers(self, cli: int, unclaimed: int):
        """All sets the waiter may put on the table, deterministically ordered."""
        b = self.config.b
        if self.config.rules is Rules.CONNECTED and cli == 0:
            seen = set()
            out = []
            for v in range(self.t.n):
                star = self.t.bits(self.t.at_vertex[v] & unclaimed)
                for size in range(1, min(b + 1, len(star)) + 1):
                    for comb in itertools.combinations(star, size):
                        if comb not in seen:
                            seen.add(comb)
                            out.append(comb)
            out.sort(key=lambda c: (len(c), c))
            return out
        pool = self.t.bits(self._offerable(cli, unclaimed))
        out = []
        for size in range(1, min(b + 1, len(pool)) + 1):
            out.extend(itertools.combinations(pool, size))
        return out

    def client_wins(self, cli: int, wtr: int) -> bool:
        """Value with the waiter about to offer."""
        unclaimed = self.t.full & ~(cli | wtr)
        if unclaimed == 0:
            return False
        if self._offerable(cli, unclaimed) == 0:
            return True
        key = (cli, wtr)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self._tick()
        closing = self._closers(cli)
        result = True
        for offer in self.offers(cli, unclaimed):
            offer_mask = 0
            for e in offer:
                offer_mask |= 1 << e
            good = False
            for e in offer:
                if closing >> e & 1:
                    good = True
                    break
                if self.client_wins(cli | (1 << e), wtr | (offer_mask & ~(1 << e))):
                    good = True
                    break
            if not good:
                result = False
                break
        self.memo[key] = result
        return result


# -- top-level solve and thresholds ---------------------------------------------------


@dataclass
class SolveResult:
    config: GameConfig
    winner: Role
    nodes: int


_SOLVER_CACHE: dict = {}


def _solver_for(config: GameConfig):
    key = (config.n, config.b, config.variant, config.rules)
    solver = _SOLVER_CACHE.get(key)
    if solver is None:
        if config.variant is Variant.MAKER_BREAKER:
            solver = MBSolver(config)
        else:
            solver = CWSolver(config)
        _SOLVER_CACHE[key] = solver
    return solver


def solve_game(config: GameConfig) -> SolveResult:
    """Winner of the game from the empty board under optimal play."""
    # the cache may hold boards solved under a looser limit; gate every call
    _check_size(config, capacity_limits())
    solver = _solver_for(config)
    if config.variant is Variant.MAKER_BREAKER:
        win = solver.builder_wins(0, 0)
    else:
        win = solver.client_wins(0, 0)
    return SolveResult(config=config, winner=Role.BUILDER if win else Role.BLOCKER,
                       nodes=solver.nodes)


def exact_threshold(n: int, variant: Variant, rules: Rules) -> int:
    """Least bias at which the blocker side wins under optimal play.

    Blocker strength grows with the bias in both variants, so a linear scan
    from the smallest legal bias finds the threshold.
    """
    variant = Variant(variant)
    rules = Rules(rules)
    start = 1 if variant is Variant.MAKER_BREAKER else 0
    for b in range(start, edge_count(n) + 1):
        cfg = GameConfig(n=n, b=b, variant=variant, rules=rules)
        if solve_game(cfg).winner is Role.BLOCKER:
            return b
    raise StateError(f"no blocker-winning bias found for n={n}")


# -- oracle moves -----------------------------------------------------------------------


def _masks(state: GameState) -> tuple[int, int]:
    bld = blk = 0
    for e in range(state.E):
        if state.own[e] == 1:
            bld |= 1 << e
        elif state.own[e] == 2:
            blk |= 1 << e
    return bld, blk


def best_claim(state: GameState, role: Role, claims_left: int | None = None):
    """Optimal claim for a Maker-Breaker position, or None to concede."""
    solver = _solver_for(state.config)
    bld, blk = _masks(state)
    unclaimed = solver.t.full & ~(bld | blk)
    if role is Role.BUILDER:
        legal = solver._legal(bld, unclaimed)
        if legal == 0:
            return None
        close = solver._closers(bld) & legal
        if close:
            return (close & -close).bit_length() - 1
        for e in solver.t.bits(legal):
            left = min(state.config.b, bin(unclaimed).count("1") - 1)
            if solver.blocker_turn(bld | (1 << e), blk, left):
                return e
        return (legal & -legal).bit_length() - 1
    if claims_left is None:
        claims_left = min(state.config.b, bin(unclaimed).count("1"))
    for m in solver.t.bits(unclaimed):
        if not solver.blocker_turn(bld, blk | (1 << m), claims_left - 1):
            return m
    return (unclaimed & -unclaimed).bit_length() - 1


def best_offer(state: GameState) -> tuple[int, ...]:
    """Waiter offer minimizing the client's chances; in a lost position the
    first offer without an instant closing edge."""
    solver = _solver_for(state.config)
    cli, wtr = _masks(state)
    unclaimed = solver.t.full & ~(cli | wtr)
    closing = solver._closers(cli)
    offers = solver.offers(cli, unclaimed)
    fallback = None
    for offer in offers:
        offer_mask = 0
        for e in offer:
            offer_mask |= 1 << e
        if any(closing >> e & 1 for e in offer):
            continue
        if fallback is None:
            fallback = offer
        if all(not solver.client_wins(cli | (1 << e), wtr | (offer_mask & ~(1 << e)))
               for e in offer):
            return tuple(offer)
    return tuple(fallback if fallback is not None else offers[0])


def best_choice(state: GameState, offered) -> int:
    """Client pick from an offer: close a cycle, else keep a winning line."""
    solver = _solver_for(state.config)
    cli, wtr = _masks(state)
    closing = solver._closers(cli)
    ordered = sorted(offered)
    for e in ordered:
        if closing >> e & 1:
            return e
    offer_mask = 0
    for e in ordered:
        offer_mask |= 1 << e
    for e in ordered:
        if solver.client_wins(cli | (1 << e), wtr | (offer_mask & ~(1 << e))):
            return e
    return ordered[0]


# -- exhaustive strategy verification --------------------------------------------------


@dataclass
class VerificationResult:
    config: GameConfig
    side: Role
    verified: bool
    nodes: int
    counterexample: Transcript | None = None
    violations: list = field(default_factory=list)


class _VerifyContext:
    def __init__(self, node_cap: int):
        self.node_cap = node_cap
        self.nodes = 0
        self.memo: dict = {}
        self.path: list[Move] = []
        self.failure: list[Move] | None = None

    def tick(self):
        self.nodes += 1
        if self.nodes > self.node_cap:
            raise CapacityError(
                f"verification exceeded {self.node_cap} nodes; raise "
                f"verify_node_cap via {ENV_OVERRIDE}")

    def push(self, s, role, action, branch=None):
        self.path.append(Move(s, len(self.path), role, action, branch))

    def pop(self):
        self.path.pop()

    def fail(self):
        if self.failure is None:
            self.failure = list(self.path)


def _strategy_key(strategy, side_fixed: bool):
    return strategy.state_key() if side_fixed else None


def _verify_mb(config: GameConfig, strategy, side: Role, hooks, ctx: _VerifyContext):
    def builder_node(state: GameState) -> bool:
        if ctx.failure is not None:
            return False
        s = state.builder_edge_count + 1
        if state.unclaimed_count == 0 or not state.has_legal_builder_move():
            if side is Role.BUILDER:
                ctx.fail()
                return False
            return True
        key = (bytes(state.own), "B", strategy.state_key())
        hit = ctx.memo.get(key)
        if hit is not None:
            if hit is False:
                ctx.fail()
            return hit
        ctx.tick()
        for h in hooks:
            h.after_round(state, s - 1)
        claims_after = lambda st: min(config.b, st.unclaimed_count)
        if side is Role.BUILDER:
            snap = strategy.snapshot()
            action, branch = _decide(strategy.claim_edge(state))
            if isinstance(action, Forfeit):
                ctx.push(s, Role.BUILDER, action, branch)
                for h in hooks:
                    h.after_claim(state, ctx.path[-1])
                ctx.fail()
                ctx.pop()
                strategy.restore(snap)
                ctx.memo[key] = False
                return False
            clone = state.clone()
            clone.apply_claim(Role.BUILDER, action.edge)
            ctx.push(s, Role.BUILDER, action, branch)
            for h in hooks:
                h.after_claim(clone, ctx.path[-1])
            if clone.status is Status.BUILDER_WIN:
                result = True
            else:
                result = blocker_phase(clone, claims_after(clone))
            ctx.pop()
            strategy.restore(snap)
            ctx.memo[key] = result
            return result
        result = True
        for e in sorted(state.legal_builder_moves()):
            clone = state.clone()
            clone.apply_claim(Role.BUILDER, e)
            ctx.push(s, Role.BUILDER, ClaimEdge(e))
            if clone.status is Status.BUILDER_WIN:
                ctx.fail()
                ctx.pop()
                result = False
                break
            sub = blocker_phase(clone, claims_after(clone))
            ctx.pop()
            if not sub:
                result = False
                break
        ctx.memo[key] = result
        return result

    def blocker_phase(state: GameState, claims_left: int) -> bool:
        if ctx.failure is not None:
            return False
        if claims_left == 0 or state.unclaimed_count == 0:
            return builder_node(state)
        key = (bytes(state.own), claims_left, strategy.state_key())
        hit = ctx.memo.get(key)
        if hit is not None:
            if hit is False:
                ctx.fail()
            return hit
        ctx.tick()
        s = state.builder_edge_count
        if side is Role.BLOCKER:
            snap = strategy.snapshot()
            action, branch = _decide(strategy.claim_edge(state, claims_left))
            if isinstance(action, Forfeit):
                ctx.push(s, Role.BLOCKER, action, branch)
                for h in hooks:
                    h.after_claim(state, ctx.path[-1])
                ctx.fail()
                ctx.pop()
                strategy.restore(snap)
                ctx.memo[key] = False
                return False
            clone = state.clone()
            clone.apply_claim(Role.BLOCKER, action.edge)
            ctx.push(s, Role.BLOCKER, action, branch)
            for h in hooks:
                h.after_claim(clone, ctx.path[-1])
            result = blocker_phase(clone, claims_left - 1)
            ctx.pop()
            strategy.restore(snap)
            ctx.memo[key] = result
            return result
        result = True
        for e in range(state.E):
            if state.own[e] != UNCLAIMED:
                continue
            clone = state.clone()
            clone.apply_claim(Role.BLOCKER, e)
            ctx.push(s, Role.BLOCKER, ClaimEdge(e))
            sub = blocker_phase(clone, claims_left - 1)
            ctx.pop()
            if not sub:
                result = False
                break
        ctx.memo[key] = result
        return result

    state = GameState(config)
    if hasattr(strategy, "start"):
        strategy.start(state)
    return builder_node(state)


def _verify_cw(config: GameConfig, strategy, side: Role, hooks, ctx: _VerifyContext):
    t = _tables(config.n)

    def offers_for(state: GameState):
        unclaimed_mask = 0
        for e in range(state.E):
            if state.own[e] == UNCLAIMED:
                unclaimed_mask |= 1 << e
        cli = 0
        for e in range(state.E):
            if state.own[e] == 1:
                cli |= 1 << e
        solver_like = CWSolver.__new__(CWSolver)
        solver_like.config = config
        solver_like.t = t
        return CWSolver.offers(solver_like, cli, unclaimed_mask)

    def waiter_node(state: GameState) -> bool:
        if ctx.failure is not None:
            return False
        s = state.builder_edge_count
        if state.unclaimed_count == 0:
            if side is Role.BUILDER:
                ctx.fail()
                return False
            return True
        if not offerable_edges(state):
            if side is Role.BLOCKER:
                ctx.fail()
                return False
            return True
        key = (bytes(state.own), strategy.state_key())
        hit = ctx.memo.get(key)
        if hit is not None:
            if hit is False:
                ctx.fail()
            return hit
        ctx.tick()
        for h in hooks:
            h.after_round(state, s)
        if side is Role.BUILDER:
            result = True
            for offer in offers_for(state):
                snap = strategy.snapshot()
                action, branch = _decide(strategy.choose_from(state, offer))
                ctx.push(s + 1, Role.BLOCKER, Offer(tuple(offer)))
                if isinstance(action, Forfeit):
                    ctx.push(s + 1, Role.BUILDER, action, branch)
                    for h in hooks:
                        h.after_claim(state, ctx.path[-1])
                    ctx.fail()
                    ctx.pop()
                    ctx.pop()
                    strategy.restore(snap)
                    result = False
                    break
                clone = state.clone()
                clone.apply_claim(Role.BUILDER, action.edge)
                ctx.push(s + 1, Role.BUILDER, action, branch)
                for h in hooks:
                    h.after_claim(clone, ctx.path[-1])
                if clone.status is not Status.BUILDER_WIN:
                    for e in offer:
                        if e != action.edge:
                            clone.apply_claim(Role.BLOCKER, e)
                    sub = waiter_node(clone)
                else:
                    sub = True
                ctx.pop()
                ctx.pop()
                strategy.restore(snap)
                if not sub:
                    result = False
                    break
            ctx.memo[key] = result
            return result
        snap = strategy.snapshot()
        action, branch = _decide(strategy.make_offer(state))
        if isinstance(action, Forfeit):
            ctx.push(s + 1, Role.BLOCKER, action, branch)
            ctx.fail()
            ctx.pop()
            strategy.restore(snap)
            ctx.memo[key] = False
            return False
        offer = validate_offer(state, action.edges)
        result = True
        for e in sorted(offer):
            clone = state.clone()
            clone.apply_claim(Role.BUILDER, e)
            ctx.push(s + 1, Role.BLOCKER, Offer(offer), branch)
            ctx.push(s + 1, Role.BUILDER, Choose(e))
            if clone.status is Status.BUILDER_WIN:
                ctx.fail()
                ctx.pop()
                ctx.pop()
                result = False
                break
            for m in offer:
                if m != e:
                    clone.apply_claim(Role.BLOCKER, m)
            sub = waiter_node(clone)
            ctx.pop()
            ctx.pop()
            if not sub:
                result = False
                break
        strategy.restore(snap)
        ctx.memo[key] = result
        return result

    state = GameState(config)
    if hasattr(strategy, "start"):
        strategy.start(state)
    return waiter_node(state)


def _decide(raw):
    if isinstance(raw, tuple):
        return raw
    return raw, None


def verify_strategy(config: GameConfig, strategy_factory, side: Role,
                    hooks=(), node_cap: int | None = None) -> VerificationResult:
    """Check a fixed strategy against every legal line of the other side.

    strategy_factory is a zero-argument callable producing a fresh strategy;
    it is called once for the search and once more to rebuild a losing line
    into a transcript when one is found.
    """
    caps = capacity_limits()
    _check_size(config, caps, kind="verify_")
    cap = node_cap if node_cap is not None else caps["verify_node_cap"]
    ctx = _VerifyContext(cap)
    strategy = strategy_factory()
    if config.variant is Variant.MAKER_BREAKER:
        ok = _verify_mb(config, strategy, side, hooks, ctx)
    else:
        ok = _verify_cw(config, strategy, side, hooks, ctx)
    counterexample = None
    if not ok and ctx.failure is not None:
        fresh = strategy_factory()
        opponent_role = side.opponent
        scripted = _ScriptedPlayer(ctx.failure, opponent_role)
        if config.variant is Variant.MAKER_BREAKER:
            if side is Role.BUILDER:
                counterexample = run_maker_breaker(config, fresh, scripted)
            else:
                counterexample = run_maker_breaker(config, scripted, fresh)
        else:
            if side is Role.BUILDER:
                counterexample = run_client_waiter(config, scripted, fresh)
            else:
                counterexample = run_client_waiter(config, fresh, scripted)
    violations = []
    for h in hooks:
        violations.extend(h.violations)
    return VerificationResult(config=config, side=side, verified=bool(ok),
                              nodes=ctx.nodes, counterexample=counterexample,
                              violations=violations)
