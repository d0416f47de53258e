"""The recursive attractor-based solver and its optional enhancements.

The baseline procedure is the classic divide-and-conquer one: remove the
attractor of the maximal-priority positions, solve the rest, and either
conclude directly or cut the opponent's winning part and recurse once
more.  Three independently switchable layers wrap it:

* memoization caches the winning partition of every alive set solved
  within one top-level call;
* SCC decomposition splits the current subgame into strongly connected
  components at every entry and solves terminal components first;
* dominion decomposition brute-force searches each entered subgame for a
  small dominion before doing anything else.

None of the layers ever changes the returned regions, only the shape and
amount of work, which the returned ``SolveStats`` makes observable.

Everything here is mask-based: the recursion carries plain integers and
only converts to ``PositionSet`` at the public boundary.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from math import isqrt
from time import perf_counter
from typing import Callable, Iterable, Optional

from .core import (
    GameError,
    ParityGame,
    Player,
    PositionSet,
    Regions,
    Subgame,
    _attractor_mask,
    _bits,
    _max_priority_mask,
    attractor,
    max_priority,
    remove,
)


class CallLimitExceeded(GameError):
    """The configured cap on recursive calls was hit.

    Carries the counters gathered so far in ``stats``.
    """

    def __init__(self, limit: int, stats: "SolveStats") -> None:
        super().__init__(f"solver exceeded the call limit of {limit}")
        self.limit = limit
        self.stats = stats


def default_dominion_bound(n: int) -> int:
    """Ceiling of the square root, the usual preprocessing search bound."""
    return isqrt(n - 1) + 1 if n >= 1 else 1


@dataclass(frozen=True)
class SolverConfig:
    """Which enhancement layers to enable and how far they may go.

    ``dominion_bound`` maps the size of the entered subgame to the
    largest dominion the preprocessing searches for; it must return at
    least 1 on every positive size.
    """

    memoization: bool = False
    scc_decomposition: bool = False
    dominion_decomposition: bool = False
    dominion_bound: Callable[[int], int] = default_dominion_bound
    call_limit: Optional[int] = None


@dataclass
class SolveStats:
    """Instrumentation counters for one top-level solve."""

    total_calls: int = 0
    distinct_subgames: int = 0
    memo_hits: int = 0
    max_depth: int = 0
    dominion_probes: int = 0
    wall_time: float = 0.0


class MemoTable:
    """Cache of solved subgames within one master game.

    Maps an alive mask to the pair of winning-region masks; ``store``
    rejects entries that do not partition their alive set.
    """

    __slots__ = ("_table",)

    def __init__(self) -> None:
        self._table: dict[int, tuple[int, int]] = {}

    def lookup(self, alive: int) -> Optional[tuple[int, int]]:
        return self._table.get(alive)

    def store(self, alive: int, w0: int, w1: int) -> None:
        if w0 & w1 or w0 | w1 != alive:
            raise ValueError("regions must partition the alive set")
        self._table[alive] = (w0, w1)

    def __len__(self) -> int:
        return len(self._table)

    def __contains__(self, alive: int) -> bool:
        return alive in self._table

    def items(self) -> Iterable[tuple[int, tuple[int, int]]]:
        return self._table.items()


# ---------------------------------------------------------------------------
# single steps, exposed for the structural checks in the analyzer


def left_step(g: Subgame) -> tuple[Subgame, Player, PositionSet]:
    """Remove the attractor of the maximal-priority positions.

    Returns the remaining subgame, the player attracting (the parity of
    the maximal priority) and the removed set.
    """
    pr, holders = max_priority(g)
    p = Player(pr & 1)
    removed = attractor(g, holders, p)
    return remove(g, removed), p, removed


def right_step(g: Subgame, w_opp: PositionSet, opp: Player | int) -> Subgame:
    """Remove the opponent's attractor of their already-won part."""
    return remove(g, attractor(g, w_opp, opp))


# ---------------------------------------------------------------------------
# strongly connected components (iterative Tarjan on masks)


def _scc_masks(game: ParityGame, alive: int) -> list[int]:
    # Iterative Tarjan on masks.  Emission order is reverse topological:
    # every component only reaches components emitted before it, so the
    # first one is terminal.
    succ_masks = game.succ_masks
    n = game.n
    index = [0] * n
    low = [0] * n
    on = bytearray(n)
    stack: list[int] = []
    comps: list[int] = []
    counter = 1
    wv: list[int] = []  # DFS node stack
    wm: list[int] = []  # unexplored-successor masks, parallel to wv
    roots = alive
    while roots:
        rl = roots & -roots
        roots ^= rl
        root = rl.bit_length() - 1
        if index[root]:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on[root] = 1
        wv.append(root)
        wm.append(succ_masks[root] & alive)
        while wv:
            v = wv[-1]
            m = wm[-1]
            lv = low[v]
            descended = False
            while m:
                sl = m & -m
                m ^= sl
                s = sl.bit_length() - 1
                si = index[s]
                if not si:
                    wm[-1] = m
                    low[v] = lv
                    index[s] = low[s] = counter
                    counter += 1
                    stack.append(s)
                    on[s] = 1
                    wv.append(s)
                    wm.append(succ_masks[s] & alive)
                    descended = True
                    break
                if si < lv and on[s]:
                    lv = si
            if descended:
                continue
            low[v] = lv
            wv.pop()
            wm.pop()
            if wv:
                u = wv[-1]
                if lv < low[u]:
                    low[u] = lv
            if lv == index[v]:
                mcomp = 0
                while True:
                    w = stack.pop()
                    on[w] = 0
                    mcomp |= 1 << w
                    if w == v:
                        break
                comps.append(mcomp)
    return comps


def scc_split(g: Subgame) -> list[PositionSet]:
    """Strongly connected components of the alive part, terminal first.

    The emitted order is reverse topological, so the first component has
    no moves into any other and can be solved as a standalone game.
    """
    return [PositionSet(g.game, m) for m in _scc_masks(g.game, g.alive.mask)]


# ---------------------------------------------------------------------------
# bounded dominion search
#
# A candidate grows as a closure: positions of the searched player pick
# one successor each (a branch point), opponent positions pull in all
# their alive successors.  A completed closure is certified exactly, so
# anything returned really is a dominion; the search is complete because
# the closure following a winning strategy never trips a prune.


def _certify(game: ParityGame, p: int, members: int, edge: dict[int, int]) -> bool:
    # every cycle of the chosen-move graph must have max priority of parity p
    prs = game.priorities
    bad = {prs[v] for v in _bits(members) if prs[v] & 1 != p}
    for q in bad:
        sub = 0
        for v in _bits(members):
            if prs[v] <= q:
                sub |= 1 << v
        for x in _bits(sub):
            if prs[x] != q:
                continue
            seen = 0
            front = edge[x] & sub
            while front:
                if front >> x & 1:
                    return False
                seen |= front
                nxt = 0
                for v in _bits(front):
                    nxt |= edge[v] & sub
                front = nxt & ~seen
    return True


def _search_dominion(
    game: ParityGame,
    alive: int,
    seed: int,
    p: int,
    budget: int,
    stats: SolveStats,
) -> Optional[int]:
    """First closure of size <= budget whose minimum member is ``seed``.

    Restricting each seed to sets it is the minimum of partitions the
    candidate space, so enumerating seeds in ascending order never
    revisits a candidate.  The search is depth-first in successor-list
    order, branching only at positions of player ``p``; opponent
    positions pull in all their alive successors at once.  ``committed``
    tracks members plus everything opponent members will force in later,
    which cuts oversized branches before they unfold.
    """
    prs = game.priorities
    succ_masks = game.succ_masks
    succ_lists = game.successors
    forbidden = (1 << seed) - 1
    opp_mask = game.owner_masks[1 - p] & alive
    edge: dict[int, int] = {}

    def bad_edge(u: int, targets: int) -> bool:
        # a cycle already present in the partial graph can never go away
        if targets >> u & 1 and prs[u] & 1 != p:
            return True
        t = targets
        while t:
            low = t & -t
            s = low.bit_length() - 1
            if edge.get(s, 0) >> u & 1:
                m = prs[u] if prs[u] >= prs[s] else prs[s]
                if m & 1 != p:
                    return True
            t ^= low
        return False

    def grow(members: int, processed: int, committed: int) -> Optional[int]:
        stats.dominion_probes += 1
        mine: list[int] = []
        viable = True
        while viable:
            forced = members & ~processed & opp_mask
            if not forced:
                break
            low = forced & -forced
            u = low.bit_length() - 1
            t = succ_masks[u] & alive
            if t & forbidden or bad_edge(u, t):
                viable = False
                break
            fresh = t & ~members
            members |= t
            processed |= low
            edge[u] = t
            mine.append(u)
            committed |= t
            nb = fresh & opp_mask
            while nb:
                l2 = nb & -nb
                committed |= succ_masks[l2.bit_length() - 1] & alive
                nb ^= l2
            if committed & forbidden or committed.bit_count() > budget:
                viable = False
        if viable:
            unproc = members & ~processed
            if not unproc:
                if _certify(game, p, members, edge):
                    return members
            else:
                low = unproc & -unproc
                u = low.bit_length() - 1
                nproc = processed | low
                pu = prs[u]
                u_loop_ok = pu & 1 == p
                for s in succ_lists[u]:
                    t = 1 << s
                    if not alive & t or t & forbidden:
                        continue
                    if s == u:
                        if not u_loop_ok:
                            continue
                    elif edge.get(s, 0) >> u & 1:
                        m = pu if pu >= prs[s] else prs[s]
                        if m & 1 != p:
                            continue
                    ncom = committed | t
                    if t & ~members and t & opp_mask:
                        ncom |= succ_masks[s] & alive
                    if ncom & forbidden or ncom.bit_count() > budget:
                        continue
                    edge[u] = t
                    res = grow(members | t, nproc, ncom)
                    del edge[u]
                    if res is not None:
                        return res
        for x in mine:
            del edge[x]
        return None

    committed = 1 << seed
    if committed & opp_mask:
        committed |= succ_masks[seed] & alive
        if committed & forbidden or committed.bit_count() > budget:
            return None
    return grow(1 << seed, 0, committed)


def _find_dominion_mask(
    game: ParityGame,
    alive: int,
    max_size: int,
    players: tuple[int, ...],
    stats: SolveStats,
) -> Optional[tuple[int, int]]:
    m = alive
    while m:
        low = m & -m
        seed = low.bit_length() - 1
        for p in players:
            res = _search_dominion(game, alive, seed, p, max_size, stats)
            if res is not None:
                return res, p
        m ^= low
    return None


def find_dominion(
    g: Subgame,
    max_size: int,
    stats: Optional[SolveStats] = None,
    players: tuple[int, ...] = (0, 1),
) -> Optional[tuple[PositionSet, Player]]:
    """Search for a dominion of at most ``max_size`` positions.

    Candidates are enumerated deterministically (seed position ascending,
    then player order as given); the first certified one is returned.
    ``stats.dominion_probes`` counts the examined search states.
    """
    if max_size < 1:
        raise ValueError(f"max_size must be >= 1, got {max_size}")
    if stats is None:
        stats = SolveStats()
    found = _find_dominion_mask(g.game, g.alive.mask, max_size, players, stats)
    if found is None:
        return None
    d, p = found
    return PositionSet(g.game, d), Player(p)


# ---------------------------------------------------------------------------
# the solver proper


def _run(
    game: ParityGame,
    alive0: int,
    cfg: SolverConfig,
    seen_out: Optional[set[int]],
    scc_wise_top: bool,
) -> tuple[Regions, SolveStats]:
    stats = SolveStats()
    memo = MemoTable() if cfg.memoization else None
    table = memo._table if memo is not None else None
    seen: set[int] = set()
    limit = cfg.call_limit
    dom_on = cfg.dominion_decomposition
    scc_on = cfg.scc_decomposition
    bound_fn = cfg.dominion_bound

    def scc_loop(rem: int, depth: int) -> tuple[int, int]:
        w0 = w1 = 0
        while rem:
            comp = _scc_masks(game, rem)[0]
            c0, c1 = recurse(comp, depth)
            a0 = _attractor_mask(game, rem, c0, 0) if c0 else 0
            rem &= ~a0
            a1 = _attractor_mask(game, rem, c1, 1) if c1 else 0
            rem &= ~a1
            w0 |= a0
            w1 |= a1
        return w0, w1

    def recurse(alive: int, depth: int) -> tuple[int, int]:
        stats.total_calls += 1
        if depth > stats.max_depth:
            stats.max_depth = depth
        if limit is not None and stats.total_calls > limit:
            raise CallLimitExceeded(limit, stats)
        if table is not None:
            hit = table.get(alive)
            if hit is not None:
                stats.memo_hits += 1
                return hit
        if alive not in seen:
            seen.add(alive)
            stats.distinct_subgames += 1

        if not alive:
            result = (0, 0)
        else:
            result = None
            if dom_on:
                bound = bound_fn(alive.bit_count())
                if bound < 1:
                    raise ValueError("dominion_bound must be >= 1 on positive sizes")
                found = _find_dominion_mask(game, alive, bound, (0, 1), stats)
                if found is not None:
                    d, p = found
                    a = _attractor_mask(game, alive, d, p)
                    r0, r1 = recurse(alive & ~a, depth + 1)
                    result = (r0 | a, r1) if p == 0 else (r0, r1 | a)
            if result is None and scc_on:
                comps = _scc_masks(game, alive)
                if len(comps) > 1:
                    result = scc_loop(alive, depth + 1)
            if result is None:
                pr, holders = _max_priority_mask(game, alive)
                p = pr & 1
                a = _attractor_mask(game, alive, holders, p)
                l0, l1 = recurse(alive & ~a, depth + 1)
                w_opp = l1 if p == 0 else l0
                b = _attractor_mask(game, alive, w_opp, 1 - p) if w_opp else 0
                if b == w_opp:
                    wp = alive & ~w_opp
                    result = (wp, w_opp) if p == 0 else (w_opp, wp)
                else:
                    r0, r1 = recurse(alive & ~b, depth + 1)
                    wp = r0 if p == 0 else r1
                    result = (wp, alive & ~wp) if p == 0 else (alive & ~wp, wp)

        if memo is not None:
            memo.store(alive, *result)
        return result

    need = 3 * game.n + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)

    t0 = perf_counter()
    try:
        if scc_wise_top and alive0:
            w0, w1 = scc_loop(alive0, 1)
        else:
            w0, w1 = recurse(alive0, 1)
    finally:
        stats.wall_time = perf_counter() - t0
    if seen_out is not None:
        seen_out |= seen
    return Regions(PositionSet(game, w0), PositionSet(game, w1)), stats


def solve(
    g: Subgame,
    cfg: SolverConfig = SolverConfig(),
    seen_out: Optional[set[int]] = None,
) -> tuple[Regions, SolveStats]:
    """Winning regions of ``g`` plus instrumentation counters.

    The answer does not depend on ``cfg``; the counters do.  When
    ``seen_out`` is given, every distinct alive mask entered by the
    recursion is added to it.  Raises ``CallLimitExceeded`` (carrying the
    partial stats) when ``cfg.call_limit`` is hit.
    """
    return _run(g.game, g.alive.mask, cfg, seen_out, scc_wise_top=False)


def solve_scc_wise(
    g: Subgame,
    cfg: SolverConfig = SolverConfig(),
    seen_out: Optional[set[int]] = None,
) -> tuple[Regions, SolveStats]:
    """Solve by repeatedly splitting off a terminal component.

    Each terminal strongly connected component is solved as a game in its
    own right (with ``cfg`` as given), its winning regions are attracted
    within the whole remaining subgame, both attractors are removed, and
    the loop continues.  On a game that is a single component this does
    exactly one plain ``solve``.
    """
    return _run(g.game, g.alive.mask, cfg, seen_out, scc_wise_top=True)
