"""Poison bisimulation over configuration pairs.

The back-and-forth clauses relate poisoned variants of the two models, so
the fixpoint's carrier is pairs of configurations, not pairs of states.
Starting from the pair of initial configurations we close under joint
plain steps and joint poison steps, seed with the atom-consistent pairs,
and delete pairs violating a Zig/Zag clause round by round (deletions of
one round are applied together, so round numbers equal modal depth).

Every deleted pair gets a distinguishing formula, true on the left and
false on the right, assembled from the formulas of the pairs that caused
the deletion and minimized by modal depth, then syntax-tree size.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import syntax as S
from .errors import BudgetError, EvalError
from .kripke import Configuration, KripkeModel

DEFAULT_PAIR_BUDGET = 1 << 20

# internal key for a configuration: (poison mask tuple, state)
_Conf = tuple[tuple[int, ...], int]
_Pair = tuple[_Conf, _Conf]


@dataclass(frozen=True, slots=True)
class ConfigPair:
    left: Configuration
    right: Configuration


@dataclass(frozen=True)
class BisimResult:
    """Outcome of a bisimilarity check.

    ``relation`` is the greatest bisimulation over the jointly reachable
    configuration pairs when the start pair survives; ``witness`` is a
    formula true at the left start and false at the right start when it
    does not. ``rounds`` counts completed deletion rounds.
    """

    bisimilar: bool
    relation: frozenset[ConfigPair] | None
    witness: S.Pml | None
    rounds: int
    pairs_explored: int


def _indices(m1: KripkeModel, m2: KripkeModel, multi_modal: bool) -> range:
    if m1.relation_count != m2.relation_count:
        raise EvalError(
            "models disagree on relation count: "
            f"{m1.relation_count} vs {m2.relation_count}"
        )
    if not multi_modal and m1.relation_count != 1:
        raise EvalError(
            "multi-relation models need multi_modal=True; the clause-per-index "
            "reading is an extension of the single-relation definition"
        )
    return range(m1.relation_count)


def _poisoned(pois: tuple[int, ...], index: int, state: int) -> tuple[int, ...]:
    return pois[:index] + (pois[index] | (1 << state),) + pois[index + 1:]


def _min_formula(cands: list[S.Pml]) -> S.Pml:
    return min(cands, key=lambda f: (S.modal_depth(f), S.formula_size(f)))


class _Engine:
    """One bisimilarity run: universe closure plus round-based deletion."""

    def __init__(self, m1, w1, m2, w2, indices, budget):
        for m, w in ((m1, w1), (m2, w2)):
            if not 0 <= w < m.n:
                raise EvalError(f"state index {w} out of range")
            space = (1 << (m.n * m.relation_count)) * m.n
            if space > budget:
                raise BudgetError(
                    "configuration space too large", space, budget
                )
        self.m1, self.m2 = m1, m2
        self.indices = indices
        self.atoms = sorted(set(m1.atoms) | set(m2.atoms))
        self.start: _Pair = ((m1.poison_base, w1), (m2.poison_base, w2))
        self._close(budget)
        self._seed()
        self.rounds = 0

    def _close(self, budget: int) -> None:
        universe = {self.start}
        frontier = [self.start]
        succ1, succ2 = self.m1.succ, self.m2.succ
        while frontier:
            fresh: list[_Pair] = []
            for (pa, wa), (pb, wb) in frontier:
                for i in self.indices:
                    for va in succ1[i][wa]:
                        plain_a = (pa, va)
                        pois_a = (_poisoned(pa, i, va), va)
                        for vb in succ2[i][wb]:
                            for pair in (
                                (plain_a, (pb, vb)),
                                (pois_a, (_poisoned(pb, i, vb), vb)),
                            ):
                                if pair not in universe:
                                    universe.add(pair)
                                    fresh.append(pair)
            if len(universe) > budget:
                raise BudgetError(
                    "joint configuration pairs exceed budget",
                    len(universe),
                    budget,
                )
            frontier = fresh
        self.universe = universe

    def _atom_mismatch(self, pair: _Pair) -> S.Pml | None:
        (pa, wa), (pb, wb) = pair
        val1, val2 = self.m1.val, self.m2.val
        cands: list[S.Pml] = []
        for a in self.atoms:
            ta = bool(val1.get(a, 0) >> wa & 1)
            tb = bool(val2.get(a, 0) >> wb & 1)
            if ta != tb:
                cands.append(S.Atom(a) if ta else S.Not(S.Atom(a)))
        for i in self.indices:
            ta = bool(pa[i] >> wa & 1)
            tb = bool(pb[i] >> wb & 1)
            if ta != tb:
                cands.append(
                    S.PoisonAtom(i) if ta else S.Not(S.PoisonAtom(i))
                )
        return _min_formula(cands) if cands else None

    def _seed(self) -> None:
        self.deleted: dict[_Pair, tuple[int, S.Pml]] = {}
        self.alive: set[_Pair] = set()
        for pair in self.universe:
            lit = self._atom_mismatch(pair)
            if lit is None:
                self.alive.add(pair)
            else:
                self.deleted[pair] = (0, lit)

    def _violation(self, pair: _Pair) -> S.Pml | None:
        (pa, wa), (pb, wb) = pair
        alive, deleted = self.alive, self.deleted
        cands: list[S.Pml] = []
        for i in self.indices:
            sa = self.m1.succ[i][wa]
            sb = self.m2.succ[i][wb]
            for va in sa:
                ca = (pa, va)
                if all((ca, (pb, vb)) not in alive for vb in sb):
                    body = S.and_all(
                        deleted[(ca, (pb, vb))][1] for vb in sb
                    )
                    cands.append(S.Diamond(body, i))
            for vb in sb:
                cb = (pb, vb)
                if all(((pa, va), cb) not in alive for va in sa):
                    body = S.and_all(
                        S.Not(deleted[((pa, va), cb)][1]) for va in sa
                    )
                    cands.append(S.Not(S.Diamond(body, i)))
            for va in sa:
                ca = (_poisoned(pa, i, va), va)
                if all(
                    (ca, (_poisoned(pb, i, vb), vb)) not in alive for vb in sb
                ):
                    body = S.and_all(
                        deleted[(ca, (_poisoned(pb, i, vb), vb))][1]
                        for vb in sb
                    )
                    cands.append(S.PoisonDiamond(body, i))
            for vb in sb:
                cb = (_poisoned(pb, i, vb), vb)
                if all(
                    ((_poisoned(pa, i, va), va), cb) not in alive for va in sa
                ):
                    body = S.and_all(
                        S.Not(deleted[((_poisoned(pa, i, va), va), cb)][1])
                        for va in sa
                    )
                    cands.append(S.Not(S.PoisonDiamond(body, i)))
        return _min_formula(cands) if cands else None

    def run(self, max_rounds: int | None = None) -> None:
        while max_rounds is None or self.rounds < max_rounds:
            doomed = {}
            for pair in self.alive:
                witness = self._violation(pair)
                if witness is not None:
                    doomed[pair] = witness
            if not doomed:
                return
            self.rounds += 1
            for pair, witness in doomed.items():
                self.alive.discard(pair)
                self.deleted[pair] = (self.rounds, witness)


def p_bisimilar(
    m1: KripkeModel,
    w1: int,
    m2: KripkeModel,
    w2: int,
    *,
    multi_modal: bool = False,
    budget: int = DEFAULT_PAIR_BUDGET,
) -> BisimResult:
    """Decide whether the two pointed models are poison-bisimilar."""
    indices = _indices(m1, m2, multi_modal)
    eng = _Engine(m1, w1, m2, w2, indices, budget)
    eng.run()
    if eng.start in eng.alive:
        relation = frozenset(
            ConfigPair(
                Configuration(m1, pa, wa), Configuration(m2, pb, wb)
            )
            for (pa, wa), (pb, wb) in eng.alive
        )
        return BisimResult(True, relation, None, eng.rounds, len(eng.universe))
    return BisimResult(
        False, None, eng.deleted[eng.start][1], eng.rounds, len(eng.universe)
    )


def equivalent_up_to_depth(
    m1: KripkeModel,
    w1: int,
    m2: KripkeModel,
    w2: int,
    depth: int,
    *,
    multi_modal: bool = False,
    budget: int = DEFAULT_PAIR_BUDGET,
) -> bool:
    """True iff no formula of modal depth at most ``depth`` separates the
    two pointed models: the start pair survives that many deletion rounds."""
    if depth < 0:
        raise EvalError("depth must be nonnegative")
    indices = _indices(m1, m2, multi_modal)
    eng = _Engine(m1, w1, m2, w2, indices, budget)
    eng.run(max_rounds=depth)
    return eng.start in eng.alive


def audit_relation(
    pairs, *, multi_modal: bool = False
) -> list[str]:
    """Re-check every clause of the bisimulation definition on an explicit
    relation; returns human-readable violations, empty when it passes."""
    pairs = list(pairs)
    if not pairs:
        return ["relation is empty"]
    m1 = pairs[0].left.model
    m2 = pairs[0].right.model
    for p in pairs:
        if p.left.model is not m1 or p.right.model is not m2:
            return ["relation mixes models from different pairs"]
    indices = _indices(m1, m2, multi_modal)
    rel = {
        ((p.left.poison, p.left.current), (p.right.poison, p.right.current))
        for p in pairs
    }
    atoms = sorted(set(m1.atoms) | set(m2.atoms))
    out: list[str] = []

    def name(m, w):
        return m.names[w]

    for (pa, wa), (pb, wb) in sorted(rel):
        tag = f"({name(m1, wa)}, {name(m2, wb)})"
        for a in atoms:
            if bool(m1.val.get(a, 0) >> wa & 1) != bool(
                m2.val.get(a, 0) >> wb & 1
            ):
                out.append(f"Atom {tag}: disagree on {a}")
        for i in indices:
            if bool(pa[i] >> wa & 1) != bool(pb[i] >> wb & 1):
                out.append(f"Atom {tag}: disagree on poison atom {i + 1}")
            sa = m1.succ[i][wa]
            sb = m2.succ[i][wb]
            for va in sa:
                if not any(((pa, va), (pb, vb)) in rel for vb in sb):
                    out.append(f"Zig-plain {tag}: move to {name(m1, va)} unmatched")
            for vb in sb:
                if not any(((pa, va), (pb, vb)) in rel for va in sa):
                    out.append(f"Zag-plain {tag}: move to {name(m2, vb)} unmatched")
            for va in sa:
                ca = (_poisoned(pa, i, va), va)
                if not any(
                    (ca, (_poisoned(pb, i, vb), vb)) in rel for vb in sb
                ):
                    out.append(
                        f"Zig-poison {tag}: poisoning {name(m1, va)} unmatched"
                    )
            for vb in sb:
                cb = (_poisoned(pb, i, vb), vb)
                if not any(
                    ((_poisoned(pa, i, va), va), cb) in rel for va in sa
                ):
                    out.append(
                        f"Zag-poison {tag}: poisoning {name(m2, vb)} unmatched"
                    )
    return out
