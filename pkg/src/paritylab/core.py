"""Game arenas, position sets, and the primitive set operators.

The model is deliberately small.  A game is a finite directed graph whose
positions carry an owner (player 0 or player 1) and a natural priority,
with the guarantee that every position has at least one outgoing move.
A play follows moves forever, the owner of the current position choosing
the next one; player 0 wins a play exactly when the highest priority seen
infinitely often is even.

Everything else in the library works on *subgames*: one fixed master game
plus the set of positions still alive.  Removing an attractor always
leaves a valid subgame, so alive sets are closed under the operators
defined here and double as cheap, exact cache keys.

Positions are dense integer indices into the master game.  Position sets
are immutable bit masks over those indices; iteration is always in
ascending index order, which keeps every computation in the library
deterministic.  All classes are immutable after construction and all
functions are pure, so instances can be shared freely between threads.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Iterable, Iterator, Optional, Sequence


class GameError(Exception):
    """Base class for all errors raised by this package."""


class EmptyGame(GameError):
    """An operation that needs at least one alive position got none."""


class OutOfSubgame(GameError):
    """A position set strays outside the alive part of its subgame."""


class NotAGame(GameError):
    """A position set does not induce a playable game (it has dead ends)."""


class Player(IntEnum):
    """One of the two players.  Even priorities favour player ``EVEN``."""

    EVEN = 0
    ODD = 1

    @property
    def opponent(self) -> "Player":
        return Player(1 - self._value_)


def _bits(mask: int) -> Iterator[int]:
    # ascending-index iteration over the set bits of a mask
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class ParityGame:
    """An immutable master arena.

    Construction precomputes predecessor lists, per-position successor
    masks and a priority-descending index used by ``max_priority``, so the
    solver can run on raw masks without touching Python-level sets.

    Successor lists keep their given order (deduplicated); that order is
    part of the deterministic behaviour of everything built on top.
    """

    __slots__ = (
        "n",
        "owners",
        "priorities",
        "successors",
        "predecessors",
        "succ_masks",
        "priority_levels",
        "owner_masks",
        "labels",
        "source_ids",
        "full_mask",
    )

    def __init__(
        self,
        owners: Sequence[int],
        priorities: Sequence[int],
        successors: Sequence[Sequence[int]],
        labels: Optional[Sequence[object]] = None,
        source_ids: Optional[Sequence[int]] = None,
    ) -> None:
        n = len(owners)
        if len(priorities) != n or len(successors) != n:
            raise ValueError("owners, priorities and successors must have equal length")
        owners_t = tuple(int(o) for o in owners)
        for v, o in enumerate(owners_t):
            if o not in (0, 1):
                raise ValueError(f"position {v}: owner must be 0 or 1, got {o!r}")
        priorities_t = tuple(int(p) for p in priorities)
        for v, p in enumerate(priorities_t):
            if p < 0:
                raise ValueError(f"position {v}: priority must be non-negative")

        succ_t = []
        for v, raw in enumerate(successors):
            seen: set[int] = set()
            row = []
            for s in raw:
                s = int(s)
                if not 0 <= s < n:
                    raise ValueError(f"position {v}: successor {s} out of range")
                if s not in seen:
                    seen.add(s)
                    row.append(s)
            if not row:
                raise NotAGame(f"position {v} has no moves")
            succ_t.append(tuple(row))

        preds: list[list[int]] = [[] for _ in range(n)]
        masks = []
        for v, row in enumerate(succ_t):
            m = 0
            for s in row:
                preds[s].append(v)
                m |= 1 << s
            masks.append(m)

        by_pr: dict[int, int] = {}
        for v, p in enumerate(priorities_t):
            by_pr[p] = by_pr.get(p, 0) | (1 << v)

        owner_masks = [0, 0]
        for v, o in enumerate(owners_t):
            owner_masks[o] |= 1 << v

        object.__setattr__(self, "n", n)
        object.__setattr__(self, "owners", owners_t)
        object.__setattr__(self, "priorities", priorities_t)
        object.__setattr__(self, "successors", tuple(succ_t))
        object.__setattr__(self, "predecessors", tuple(tuple(p) for p in preds))
        object.__setattr__(self, "succ_masks", tuple(masks))
        object.__setattr__(
            self, "priority_levels", tuple(sorted(by_pr.items(), reverse=True))
        )
        object.__setattr__(self, "owner_masks", (owner_masks[0], owner_masks[1]))
        object.__setattr__(self, "labels", tuple(labels) if labels is not None else None)
        object.__setattr__(
            self, "source_ids", tuple(int(i) for i in source_ids) if source_ids is not None else None
        )
        object.__setattr__(self, "full_mask", (1 << n) - 1)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("ParityGame is immutable")

    def __len__(self) -> int:
        return self.n

    @property
    def move_count(self) -> int:
        return sum(len(row) for row in self.successors)

    def label_of(self, v: int) -> Optional[object]:
        return self.labels[v] if self.labels is not None else None

    def __repr__(self) -> str:
        return f"ParityGame(n={self.n}, moves={self.move_count})"


class PositionSet:
    """An immutable subset of the positions of one master game.

    Supports membership, boolean algebra, ascending iteration, equality
    and hashing, which makes it directly usable as a memo key.
    """

    __slots__ = ("game", "mask")

    def __init__(self, game: ParityGame, mask: int) -> None:
        if mask & ~game.full_mask:
            raise OutOfSubgame(f"mask {bin(mask)} has bits outside the game")
        object.__setattr__(self, "game", game)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("PositionSet is immutable")

    @classmethod
    def empty(cls, game: ParityGame) -> "PositionSet":
        return cls(game, 0)

    @classmethod
    def full(cls, game: ParityGame) -> "PositionSet":
        return cls(game, game.full_mask)

    @classmethod
    def of(cls, game: ParityGame, indices: Iterable[int]) -> "PositionSet":
        m = 0
        for i in indices:
            if not 0 <= i < game.n:
                raise OutOfSubgame(f"position {i} out of range")
            m |= 1 << i
        return cls(game, m)

    def _same(self, other: "PositionSet") -> None:
        if self.game is not other.game:
            raise ValueError("position sets belong to different master games")

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.game.n and bool(self.mask >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return _bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: "PositionSet") -> "PositionSet":
        self._same(other)
        return PositionSet(self.game, self.mask | other.mask)

    def __and__(self, other: "PositionSet") -> "PositionSet":
        self._same(other)
        return PositionSet(self.game, self.mask & other.mask)

    def __sub__(self, other: "PositionSet") -> "PositionSet":
        self._same(other)
        return PositionSet(self.game, self.mask & ~other.mask)

    def issubset(self, other: "PositionSet") -> bool:
        self._same(other)
        return not (self.mask & ~other.mask)

    def isdisjoint(self, other: "PositionSet") -> bool:
        self._same(other)
        return not (self.mask & other.mask)

    def indices(self) -> tuple[int, ...]:
        return tuple(_bits(self.mask))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PositionSet)
            and self.game is other.game
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((id(self.game), self.mask))

    def __repr__(self) -> str:
        idx = self.indices()
        shown = ", ".join(map(str, idx[:12]))
        if len(idx) > 12:
            shown += f", ... ({len(idx)} total)"
        return f"PositionSet{{{shown}}}"


class Subgame:
    """A master game restricted to an alive set of positions.

    Construction validates that every alive position keeps at least one
    alive successor, so a ``Subgame`` is always a playable game.
    """

    __slots__ = ("game", "alive")

    def __init__(self, game: ParityGame, alive: PositionSet) -> None:
        if alive.game is not game:
            raise ValueError("alive set belongs to a different master game")
        bad = _left_total_violation(game, alive.mask)
        if bad is not None:
            raise NotAGame(f"position {bad} would have no alive successor")
        object.__setattr__(self, "game", game)
        object.__setattr__(self, "alive", alive)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Subgame is immutable")

    @classmethod
    def whole(cls, game: ParityGame) -> "Subgame":
        return cls(game, PositionSet.full(game))

    def __len__(self) -> int:
        return len(self.alive)

    @property
    def is_empty(self) -> bool:
        return not self.alive

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgame)
            and self.game is other.game
            and self.alive.mask == other.alive.mask
        )

    def __hash__(self) -> int:
        return hash((id(self.game), self.alive.mask))

    def __repr__(self) -> str:
        return f"Subgame({len(self.alive)}/{self.game.n} alive)"


class Regions:
    """The two winning regions of a solved subgame (a partition of alive)."""

    __slots__ = ("w0", "w1")

    def __init__(self, w0: PositionSet, w1: PositionSet) -> None:
        object.__setattr__(self, "w0", w0)
        object.__setattr__(self, "w1", w1)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("Regions is immutable")

    def of(self, p: int) -> PositionSet:
        return self.w0 if p == 0 else self.w1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Regions) and self.w0 == other.w0 and self.w1 == other.w1

    def __hash__(self) -> int:
        return hash((self.w0, self.w1))

    def __repr__(self) -> str:
        return f"Regions(w0={len(self.w0)}, w1={len(self.w1)})"


# ---------------------------------------------------------------------------
# mask-level internals, shared by the public operators and the solver


def _left_total_violation(game: ParityGame, alive: int) -> Optional[int]:
    succ_masks = game.succ_masks
    m = alive
    while m:
        low = m & -m
        v = low.bit_length() - 1
        if not succ_masks[v] & alive:
            return v
        m ^= low
    return None


def _max_priority_mask(game: ParityGame, alive: int) -> tuple[int, int]:
    if not alive:
        raise EmptyGame("empty subgame has no maximal priority")
    for pr, mask in game.priority_levels:
        hit = mask & alive
        if hit:
            return pr, hit
    raise AssertionError("unreachable")  # pragma: no cover


def _predecessor_mask(game: ParityGame, alive: int, target: int, p: int) -> int:
    # positions whose owner can force the next move into `target`
    owners = game.owners
    succ_masks = game.succ_masks
    res = 0
    m = alive
    while m:
        low = m & -m
        v = low.bit_length() - 1
        sm = succ_masks[v] & alive
        if owners[v] == p:
            if sm & target:
                res |= low
        elif not sm & ~target:
            res |= low
        m ^= low
    return res


def _attractor_mask(game: ParityGame, alive: int, seed: int, p: int) -> int:
    result = seed
    stack = list(_bits(seed))
    owners = game.owners
    preds = game.predecessors
    succ_masks = game.succ_masks
    counts: dict[int, int] = {}
    while stack:
        v = stack.pop()
        for u in preds[v]:
            bit = 1 << u
            if not alive & bit or result & bit:
                continue
            if owners[u] == p:
                result |= bit
                stack.append(u)
            else:
                c = counts.get(u)
                if c is None:
                    # alive successors not yet attracted, counting this one
                    c = (succ_masks[u] & alive).bit_count()
                c -= 1
                if c == 0:
                    result |= bit
                    stack.append(u)
                else:
                    counts[u] = c
    return result


def _require_inside(g: Subgame, s: PositionSet, what: str) -> None:
    if s.game is not g.game:
        raise ValueError(f"{what} belongs to a different master game")
    if s.mask & ~g.alive.mask:
        raise OutOfSubgame(f"{what} contains positions outside the subgame")


# ---------------------------------------------------------------------------
# public operators


def max_priority(g: Subgame) -> tuple[int, PositionSet]:
    """Highest priority among alive positions and the set of its holders."""
    pr, mask = _max_priority_mask(g.game, g.alive.mask)
    return pr, PositionSet(g.game, mask)


def predecessor(g: Subgame, target: PositionSet, p: Player | int) -> PositionSet:
    """One-step forcing set for player ``p``.

    Alive positions of ``p`` with some alive move into ``target``, plus
    alive positions of the opponent whose every alive move lands in
    ``target``.  By left-totality the predecessor of the empty set is
    empty.
    """
    _require_inside(g, target, "target")
    return PositionSet(
        g.game, _predecessor_mask(g.game, g.alive.mask, target.mask, int(p))
    )


def attractor(g: Subgame, seed: PositionSet, p: Player | int) -> PositionSet:
    """Least superset of ``seed`` closed under ``predecessor`` for ``p``.

    Computed by backward propagation with per-position successor counters,
    O(n + m) per call.
    """
    _require_inside(g, seed, "seed")
    return PositionSet(
        g.game, _attractor_mask(g.game, g.alive.mask, seed.mask, int(p))
    )


def remove(g: Subgame, a: PositionSet) -> Subgame:
    """Subgame induced by the alive positions outside ``a``.

    Raises ``NotAGame`` if some surviving position loses all its moves;
    complements of attractors never do.
    """
    _require_inside(g, a, "removed set")
    return Subgame(g.game, PositionSet(g.game, g.alive.mask & ~a.mask))


def is_dominion(g: Subgame, d: PositionSet, p: Player | int) -> bool:
    """Whether ``d`` is a dominion for player ``p`` inside ``g``.

    Three conditions: the opponent cannot leave ``d`` (every alive move of
    an opponent position in ``d`` stays in ``d``), player ``p`` can stay
    (every ``p`` position in ``d`` keeps a move into ``d``), and ``p``
    wins the whole subgame induced by ``d``.
    """
    _require_inside(g, d, "candidate dominion")
    if not d:
        raise EmptyGame("a dominion must be non-empty")
    p = int(p)
    game = g.game
    alive = g.alive.mask
    dm = d.mask
    owners = game.owners
    succ_masks = game.succ_masks
    m = dm
    while m:
        low = m & -m
        v = low.bit_length() - 1
        sm = succ_masks[v] & alive
        if owners[v] == p:
            if not sm & dm:
                return False
        elif sm & ~dm:
            return False
        m ^= low

    from .solver import SolverConfig, solve  # deferred: solver builds on this module

    regions, _ = solve(Subgame(game, d), SolverConfig())
    return regions.of(p).mask == dm
