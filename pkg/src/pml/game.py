"""The poison game: legality, solving, and the semi-kernel bridge.

Rules. The proponent opens by selecting any node. The opponent then moves
the token to a successor and poisons it; the proponent may only move the
token to unpoisoned successors; poison never goes away. The opponent wins
exactly when the proponent has no move. Every other outcome, including
infinite play and a stuck opponent, goes to the proponent. The opponent
may re-enter poisoned nodes (re-poisoning is a no-op).

All game operations read relation index 0 of the model.

Solving is a reachability-attractor computation over positions
``(poisoned set, token, side to move)``; the space has size ``2^n * n * 2``
plus the opening position.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import BudgetError, IllegalMoveError
from .kripke import KripkeModel, ModelGenSpec, bits_of, enumerate_models, inverted

DEFAULT_POSITION_BUDGET = 1 << 22
DEFAULT_SUBSET_BUDGET = 1 << 22


class Player(str, enum.Enum):
    PROPONENT = "proponent"
    OPPONENT = "opponent"

    def other(self) -> "Player":
        return Player.OPPONENT if self is Player.PROPONENT else Player.PROPONENT


@dataclass(frozen=True)
class GamePosition:
    """poisoned is a state bitmask; token is None only in the opening position."""

    poisoned: int
    token: int | None
    to_move: Player
    started: bool

    @staticmethod
    def opening() -> "GamePosition":
        return GamePosition(0, None, Player.PROPONENT, False)


OPENING = GamePosition.opening()


def legal_moves(position: GamePosition, model: KripkeModel) -> list[int]:
    if not position.started:
        return list(range(model.n))
    succs = model.successors(position.token, 0)
    if position.to_move is Player.OPPONENT:
        return list(succs)
    return [v for v in succs if not position.poisoned >> v & 1]


def apply_move(position: GamePosition, state: int, model: KripkeModel) -> GamePosition:
    """Validate and apply one move; raises IllegalMoveError naming the rule."""
    if not (0 <= state < model.n):
        raise IllegalMoveError(f"state {state} does not exist", "unknown-state")
    if not position.started:
        return GamePosition(0, state, Player.OPPONENT, True)
    succs = model.successors(position.token, 0)
    if state not in succs:
        raise IllegalMoveError(
            f"{model.names[state]} is not a successor of {model.names[position.token]}",
            "not-a-successor",
        )
    if position.to_move is Player.OPPONENT:
        return GamePosition(
            position.poisoned | 1 << state, state, Player.PROPONENT, True
        )
    if position.poisoned >> state & 1:
        raise IllegalMoveError(
            f"{model.names[state]} is poisoned", "poisoned-target"
        )
    return GamePosition(position.poisoned, state, Player.OPPONENT, True)


def winner_at(position: GamePosition, model: KripkeModel) -> Player | None:
    """The winner if the side to move is stuck, else None (play continues)."""
    if legal_moves(position, model):
        return None
    return position.to_move.other()


# ---------------------------------------------------------------------------
# Solving

_P, _O = 0, 1


class GameSolution:
    """Winning regions and deterministic strategies for one model.

    Strategies are defined exactly on the positions their player both moves
    at and wins: the opponent's moves strictly decrease the distance to a
    stuck proponent; the proponent's moves stay outside the opponent's
    winning region. Ties break toward the lowest state id.
    """

    def __init__(self, model: KripkeModel, in_attr: bytearray, rank: list[int]):
        self.model = model
        self._in_attr = in_attr
        self._rank = rank
        self._n = model.n

    def _pid(self, position: GamePosition) -> int:
        turn = _P if position.to_move is Player.PROPONENT else _O
        return (position.poisoned * self._n + position.token) * 2 + turn

    def opponent_wins_position(self, position: GamePosition) -> bool:
        if not position.started:
            return all(w is Player.OPPONENT for w in self.per_initial_node.values())
        return bool(self._in_attr[self._pid(position)])

    def winner_from(self, position: GamePosition) -> Player:
        return (
            Player.OPPONENT
            if self.opponent_wins_position(position)
            else Player.PROPONENT
        )

    @cached_property
    def per_initial_node(self) -> dict[int, Player]:
        n = self._n
        out = {}
        for v in range(n):
            pid = v * 2 + _O  # mask 0, token v, opponent to move
            out[v] = Player.OPPONENT if self._in_attr[pid] else Player.PROPONENT
        return out

    @property
    def opponent_wins_game(self) -> bool:
        return all(w is Player.OPPONENT for w in self.per_initial_node.values())

    @cached_property
    def opponent_winning_positions(self) -> frozenset[GamePosition]:
        n = self._n
        out = set()
        for pid, flag in enumerate(self._in_attr):
            if not flag:
                continue
            turn = pid & 1
            rest = pid >> 1
            tok = rest % n
            mask = rest // n
            out.add(
                GamePosition(
                    mask, tok, Player.PROPONENT if turn == _P else Player.OPPONENT, True
                )
            )
        if self.opponent_wins_game:
            out.add(OPENING)
        return frozenset(out)

    def rank(self, position: GamePosition) -> int | None:
        """Opponent's distance to a stuck proponent; None outside her region."""
        if not position.started:
            return None
        pid = self._pid(position)
        return self._rank[pid] if self._in_attr[pid] else None

    def opponent_move(self, position: GamePosition) -> int | None:
        """Rank-decreasing move; defined on opponent-winning opponent turns."""
        if (
            not position.started
            or position.to_move is not Player.OPPONENT
            or not self._in_attr[self._pid(position)]
        ):
            return None
        n = self._n
        best = None
        for v in self.model.successors(position.token, 0):
            mask2 = position.poisoned | 1 << v
            pid2 = (mask2 * n + v) * 2 + _P
            if self._in_attr[pid2]:
                key = (self._rank[pid2], v)
                if best is None or key < best:
                    best = key
        return best[1] if best is not None else None

    def proponent_move(self, position: GamePosition) -> int | None:
        """A safe move; defined on proponent-winning proponent turns."""
        if position.to_move is not Player.PROPONENT:
            return None
        n = self._n
        if not position.started:
            for v in range(n):
                if not self._in_attr[(v * 2) + _O]:
                    return v
            return None
        if self._in_attr[self._pid(position)]:
            return None
        mask = position.poisoned
        for v in self.model.successors(position.token, 0):
            if mask >> v & 1:
                continue
            pid2 = (mask * n + v) * 2 + _O
            if not self._in_attr[pid2]:
                return v
        return None


def solve(model: KripkeModel, *, budget: int = DEFAULT_POSITION_BUDGET) -> GameSolution:
    """Backward attractor over the full position space."""
    n = model.n
    total = (1 << n) * n * 2
    if total > budget:
        raise BudgetError("position space too large", total, budget)
    succ = model.succ[0]
    succ_mask = model.succ_mask[0]
    pred = model.pred[0]

    in_attr = bytearray(total)
    rank = [0] * total
    counter = [0] * total
    queue = deque()

    for mask in range(1 << n):
        base = mask * n
        for tok in range(n):
            pid = (base + tok) * 2 + _P
            free = (succ_mask[tok] & ~mask).bit_count()
            counter[pid] = free
            if free == 0:
                in_attr[pid] = 1
                queue.append(pid)

    while queue:
        pid = queue.popleft()
        turn = pid & 1
        rest = pid >> 1
        tok = rest % n
        mask = rest // n
        r = rank[pid]
        if turn == _P:
            # opponent predecessors: they moved to tok, poisoning it
            if mask >> tok & 1:
                for prev_mask in (mask, mask ^ (1 << tok)):
                    pbase = prev_mask * n
                    for u in pred[tok]:
                        opid = (pbase + u) * 2 + _O
                        if not in_attr[opid]:
                            in_attr[opid] = 1
                            rank[opid] = r + 1
                            queue.append(opid)
        else:
            # proponent predecessors: tok must have been unpoisoned for them
            if not mask >> tok & 1:
                pbase = mask * n
                for u in pred[tok]:
                    ppid = (pbase + u) * 2 + _P
                    if not in_attr[ppid]:
                        counter[ppid] -= 1
                        if counter[ppid] == 0:
                            in_attr[ppid] = 1
                            rank[ppid] = r + 1
                            queue.append(ppid)

    return GameSolution(model, in_attr, rank)


@dataclass(frozen=True)
class EngineMove:
    """``move`` is None exactly when resigning (no legal move at all)."""

    move: int | None
    resign: bool
    losing: bool


def best_move(
    position: GamePosition, model: KripkeModel, solution: GameSolution
) -> EngineMove:
    """Winning move when one exists, else a resistance heuristic.

    Losing proponents maximize the opponent's remaining distance to a stuck
    position; losing opponents maximize pressure by minimizing the escape
    count after their poisoning move. Never silent: ``losing`` flags it.
    """
    moves = legal_moves(position, model)
    if not moves:
        return EngineMove(None, True, True)
    mover = position.to_move
    n = model.n

    if mover is Player.PROPONENT:
        win = solution.proponent_move(position)
        if win is not None:
            return EngineMove(win, False, False)
        if not position.started:
            # every opening is losing; stall the longest
            best = max(moves, key=lambda v: (solution._rank[(v * 2) + _O], -v))
            return EngineMove(best, False, True)
        mask = position.poisoned
        best = max(
            moves, key=lambda v: (solution._rank[(mask * n + v) * 2 + _O], -v)
        )
        return EngineMove(best, False, True)

    win = solution.opponent_move(position)
    if win is not None:
        return EngineMove(win, False, False)
    mask = position.poisoned

    def escape_count(v: int) -> int:
        after = mask | 1 << v
        return (model.succ_mask[0][v] & ~after).bit_count()

    best = min(moves, key=lambda v: (escape_count(v), v))
    return EngineMove(best, False, True)


# ---------------------------------------------------------------------------
# Semi-kernels and admissible sets


def semi_kernels(
    model: KripkeModel, *, budget: int = DEFAULT_SUBSET_BUDGET
) -> list[frozenset[int]]:
    """All nonempty semi-kernels: independent sets X such that every
    successor of a member has a successor back in X. Sorted canonically."""
    n = model.n
    if (1 << n) > budget:
        raise BudgetError("subset space too large", 1 << n, budget)
    succ_mask = model.succ_mask[0]
    found = []
    for mask in range(1, 1 << n):
        if _is_semi_kernel(mask, succ_mask, n):
            found.append(frozenset(bits_of(mask)))
    found.sort(key=lambda s: sorted(s))
    return found


def _is_semi_kernel(mask: int, succ_mask, n: int) -> bool:
    m = mask
    while m:
        x = (m & -m).bit_length() - 1
        m &= m - 1
        out = succ_mask[x]
        if out & mask:
            return False  # not independent
        rest = out
        while rest:
            y = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if not succ_mask[y] & mask:
                return False  # y cannot be answered from inside
    return True


def has_semi_kernel(model: KripkeModel, *, budget: int = DEFAULT_SUBSET_BUDGET) -> bool:
    """Early-exit existence variant of ``semi_kernels``."""
    n = model.n
    if (1 << n) > budget:
        raise BudgetError("subset space too large", 1 << n, budget)
    succ_mask = model.succ_mask[0]
    return any(_is_semi_kernel(mask, succ_mask, n) for mask in range(1, 1 << n))


def admissible_sets(
    attack_model: KripkeModel, *, budget: int = DEFAULT_SUBSET_BUDGET
) -> list[frozenset[int]]:
    """Admissible sets of an attack graph (edges mean "attacks").

    Conflict-free sets that counterattack every attacker of a member.
    Includes the empty set. Equals the semi-kernels of the inverted graph
    plus the empty set; computed directly here so the two stay independent
    checks of each other.
    """
    n = attack_model.n
    if (1 << n) > budget:
        raise BudgetError("subset space too large", 1 << n, budget)
    attacks = attack_model.succ_mask[0]  # attacks[a] = set attacked by a
    attackers = inverted(attack_model).succ_mask[0]
    found = []
    for mask in range(1 << n):
        ok = True
        m = mask
        while ok and m:
            x = (m & -m).bit_length() - 1
            m &= m - 1
            if attacks[x] & mask:
                ok = False
                break
            threats = attackers[x] & ~mask
            while threats:
                y = (threats & -threats).bit_length() - 1
                threats &= threats - 1
                if not attacks_from_set(attacks, mask, y):
                    ok = False
                    break
        if ok:
            found.append(frozenset(bits_of(mask)))
    found.sort(key=lambda s: sorted(s))
    return found


def attacks_from_set(attacks, mask: int, y: int) -> bool:
    """Does some member of ``mask`` attack ``y``?"""
    m = mask
    while m:
        z = (m & -m).bit_length() - 1
        m &= m - 1
        if attacks[z] >> y & 1:
            return True
    return False


# ---------------------------------------------------------------------------
# The semi-kernel equivalence harness


@dataclass
class EquivalenceReport:
    """Exhaustive cross-check of game solving against semi-kernel search."""

    max_states: int
    graphs_checked: int
    proponent_winning_graphs: int
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_duchet_meyniel(
    max_states: int = 4, *, budget: int = DEFAULT_POSITION_BUDGET
) -> EquivalenceReport:
    """Check, on every digraph up to ``max_states`` nodes, the Duchet-Meyniel
    equivalence: some opening node wins for the proponent iff the graph has a
    nonempty semi-kernel. The two sides come from unrelated algorithms."""
    graphs = 0
    p_wins = 0
    violations = []
    for n in range(1, max_states + 1):
        spec = ModelGenSpec(n)
        for model in enumerate_models(spec):
            graphs += 1
            sol = solve(model, budget=budget)
            game_says = any(
                w is Player.PROPONENT for w in sol.per_initial_node.values()
            )
            kernel_says = has_semi_kernel(model)
            if game_says:
                p_wins += 1
            if game_says != kernel_says:
                violations.append(
                    f"n={n} edges={sorted(model.edges[0])} "
                    f"game={game_says} semi-kernel={kernel_says}"
                )
    return EquivalenceReport(max_states, graphs, p_wins, violations)
