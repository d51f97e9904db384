"""Formula families, fixture models, and random instance generators.

Everything here builds plain syntax-tree values; evaluation and solving
live elsewhere. The families:

- circuit formulas: detect closed walks of a given length through the
  poisoned entry point;
- winning-region formulas: finite prefixes of the infinitary descriptions
  of each player's winning opening nodes, plus a guarded fixpoint variant
  that excuses moves into already-poisoned states at every level;
- the admissibility formula: truth of it says the atom's extension is an
  admissible set of the underlying attack graph;
- grid-encoding formulas over three relations, used with torus models;
- a formula satisfiable only in infinite models (five conjuncts);
- six stock validities of the logic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import syntax as S
from .errors import EvalError
from .kripke import KripkeModel, bits_of

POISON = S.PoisonAtom(0)


# ---------------------------------------------------------------------------
# Circuit detection


def delta_n(n: int) -> S.Pml:
    """After poisoning an entry point, true iff a walk of length exactly
    ``n`` returns to it without touching it in between."""
    if n < 1:
        raise EvalError("circuit length must be at least 1")
    phi = S.Diamond(POISON)
    for _ in range(n - 1):
        phi = S.Diamond(S.And(S.Not(POISON), phi))
    return phi


def circuit_formula(n: int) -> S.Pml:
    """Existence, from the current state, of a length-``n`` circuit through
    some successor: the poison diamond wrapped around ``delta_n``."""
    return S.PoisonDiamond(delta_n(n))


def circuit_oracle(model: KripkeModel, v: int, n: int) -> bool:
    """Graph-side twin of ``delta_n``: closed walk of length exactly ``n``
    from ``v`` back to ``v`` whose interior avoids ``v`` (interior states
    may repeat among themselves). Layered bitmask reachability."""
    if n < 1:
        raise EvalError("circuit length must be at least 1")
    succ_mask = model.succ_mask[0]
    vbit = 1 << v
    layer = vbit
    for _ in range(n - 1):
        nxt = 0
        for u in bits_of(layer):
            nxt |= succ_mask[u]
        layer = nxt & ~vbit
        if not layer:
            return False
    return any(succ_mask[u] & vbit for u in bits_of(layer))


# ---------------------------------------------------------------------------
# Winning-region formulas


def win_formula(player, k: int) -> S.Pml:
    """The k-term prefix of the infinitary winning-region description.

    For the opponent: a disjunction of poison-diamond/box towers ending in
    the poison atom. For the proponent: the dual conjunction. Evaluated at
    an opening node (opponent to move, nothing poisoned).
    """
    from .game import Player

    if k < 1:
        raise EvalError("prefix length must be at least 1")
    if Player(player) is Player.OPPONENT:
        blocks = []
        f = POISON
        for _ in range(k):
            f = S.PoisonDiamond(S.Box(f))
            blocks.append(f)
        return S.or_all(blocks)
    blocks = []
    f = S.Not(POISON)
    for _ in range(k):
        f = S.PoisonBox(S.Diamond(f))
        blocks.append(f)
    return S.and_all(blocks)


def win_formula_guarded(player, k: int) -> S.Pml:
    """Fixpoint iterate of the winning-region operator with the poison
    guard kept at every level: a proponent move into poison is excused on
    the opponent side and forbidden on the proponent side. Unlike the
    plain prefixes, these match the game solver exactly."""
    from .game import Player

    if k < 1:
        raise EvalError("iterate count must be at least 1")
    if Player(player) is Player.OPPONENT:
        f = S.PoisonDiamond(S.Box(POISON))
        for _ in range(k - 1):
            f = S.PoisonDiamond(S.Box(S.Or(POISON, f)))
        return f
    f = S.PoisonBox(S.Diamond(S.Not(POISON)))
    for _ in range(k - 1):
        f = S.PoisonBox(S.Diamond(S.And(S.Not(POISON), f)))
    return f


# ---------------------------------------------------------------------------
# Admissibility


def admissibility_formula(atom: str = "p") -> S.Pml:
    """True (anywhere) iff the atom's extension is admissible in the attack
    graph whose inversion the model is."""
    p = S.Atom(atom)
    conflict_free = S.UBox(S.Implies(p, S.Not(S.Diamond(p))))
    defended = S.UBox(S.Implies(p, S.Box(S.Diamond(p))))
    return S.And(conflict_free, defended)


# ---------------------------------------------------------------------------
# Stock validities


def poison_validities(phi: S.Pml, psi: S.Pml, atom: str = "p") -> list[S.Pml]:
    """Six validities over the empty-poison model class. The second,
    fourth, fifth and sixth are schematic in ``phi``/``psi``; the third
    holds for an atom but fails as a scheme."""
    p = S.Atom(atom)
    return [
        S.And(S.Not(POISON), S.PoisonBox(POISON)),
        S.Implies(S.Box(S.BOT), S.PoisonBox(phi)),
        S.Iff(S.PoisonBox(p), S.Box(p)),
        S.Implies(S.Box(POISON), S.Iff(S.PoisonBox(phi), S.Box(phi))),
        S.Iff(
            S.PoisonBox(S.And(phi, psi)),
            S.And(S.PoisonBox(phi), S.PoisonBox(psi)),
        ),
        S.Implies(
            S.PoisonBox(S.Not(phi)),
            S.Or(S.Box(S.BOT), S.Not(S.PoisonBox(phi))),
        ),
    ]


# ---------------------------------------------------------------------------
# Grid encodings over three relations

HUB = 0  # relation index of the spoke relation
VERT = 1
HORIZ = 2


@dataclass(frozen=True)
class Tile:
    """A unit square with colored edges."""

    top: str
    right: str
    bottom: str
    left: str


def tile_atom(i: int) -> str:
    return f"p_t{i + 1}"


def tiling_formula(tiles: tuple[Tile, ...], *, uncorrected: bool = False) -> S.Pml:
    """Satisfiable over the intended three-relation frames iff the tile set
    tiles the discrete plane. ``uncorrected`` reproduces a variant whose
    compatibility disjunctions repeat the antecedent tile's atom; it is
    kept for auditing and is not faithful to tiling.
    """
    tiles = tuple(tiles)
    if not tiles:
        raise EvalError("tile set must be nonempty")
    q = S.Atom("q")

    def dia(i, body):
        return S.Diamond(body, i)

    def box(i, body):
        return S.Box(body, i)

    def pbox(i, body):
        return S.PoisonBox(body, i)

    def patom(i):
        return S.PoisonAtom(i)

    # the hub sees exactly the cells, and the cells are closed under both
    # grid relations (closure expressed by poisoning the reached cell and
    # spotting it again from the hub)
    alpha = S.and_all(
        [
            q,
            box(HUB, S.And(S.Not(q), dia(HUB, q))),
            box(HUB, pbox(VERT, dia(HUB, S.And(q, dia(HUB, patom(VERT)))))),
            box(HUB, pbox(HORIZ, dia(HUB, S.And(q, dia(HUB, patom(HORIZ)))))),
        ]
    )

    # both grid relations are total functions on cells
    beta = S.and_all(
        [
            S.And(
                box(HUB, dia(i, S.TOP)),
                pbox(
                    HUB,
                    box(
                        HUB,
                        S.Implies(
                            q,
                            box(
                                HUB,
                                S.Implies(dia(i, patom(HUB)), box(i, patom(HUB))),
                            ),
                        ),
                    ),
                ),
            )
            for i in (VERT, HORIZ)
        ]
    )

    # the two grid relations commute
    gamma = pbox(
        HUB,
        box(
            HUB,
            S.Implies(
                q,
                box(
                    HUB,
                    S.Or(
                        box(VERT, box(HORIZ, S.Not(patom(HUB)))),
                        box(HORIZ, box(VERT, patom(HUB))),
                    ),
                ),
            ),
        ),
    )

    # exactly one tile per cell
    delta1 = S.or_all(
        S.and_all(
            [S.Atom(tile_atom(i))]
            + [S.Not(S.Atom(tile_atom(j))) for j in range(len(tiles)) if j != i]
        )
        for i in range(len(tiles))
    )

    def compat(i: int, matches) -> S.Pml:
        inner = S.or_all(
            S.Atom(tile_atom(i if uncorrected else j)) for j in matches
        )
        return inner

    # horizontal compatibility: the right color meets the next left color
    delta2 = S.and_all(
        S.Implies(
            S.Atom(tile_atom(i)),
            box(
                HORIZ,
                compat(
                    i,
                    [
                        j
                        for j, t2 in enumerate(tiles)
                        if t2.left == tiles[i].right
                    ],
                ),
            ),
        )
        for i in range(len(tiles))
    )

    # vertical compatibility: the top color meets the next bottom color
    delta3 = S.and_all(
        S.Implies(
            S.Atom(tile_atom(i)),
            box(
                VERT,
                compat(
                    i,
                    [
                        j
                        for j, t2 in enumerate(tiles)
                        if t2.bottom == tiles[i].top
                    ],
                ),
            ),
        )
        for i in range(len(tiles))
    )

    return S.and_all(
        [alpha, beta, gamma, box(HUB, S.and_all([delta1, delta2, delta3]))]
    )


def torus_grid_model(
    k: int,
    tiles: tuple[Tile, ...] = (),
    assignment: list[list[int]] | None = None,
) -> KripkeModel:
    """A hub state plus a k-by-k torus of cells.

    The hub relation links the hub to every cell and back; the vertical
    relation steps one row down (wrapping), the horizontal one column
    right (wrapping). ``assignment[r][c]`` places a tile index on each
    cell; with it, each cell gets the matching tile atom.
    """
    if k < 1:
        raise EvalError("torus size must be at least 1")
    names = ["w"] + [f"c{r}_{c}" for r in range(k) for c in range(k)]

    def cell(r: int, c: int) -> int:
        return 1 + r * k + c

    hub_edges = []
    for r in range(k):
        for c in range(k):
            hub_edges.append((0, cell(r, c)))
            hub_edges.append((cell(r, c), 0))
    vert_edges = [
        (cell(r, c), cell((r + 1) % k, c)) for r in range(k) for c in range(k)
    ]
    horiz_edges = [
        (cell(r, c), cell(r, (c + 1) % k)) for r in range(k) for c in range(k)
    ]

    valuation: dict[str, list[int]] = {"q": [0]}
    if assignment is not None:
        if len(assignment) != k or any(len(row) != k for row in assignment):
            raise EvalError("assignment must be a k-by-k grid of tile indices")
        for i in range(len(tiles)):
            valuation[tile_atom(i)] = [
                cell(r, c)
                for r in range(k)
                for c in range(k)
                if assignment[r][c] == i
            ]
    return KripkeModel.build(
        [hub_edges, vert_edges, horiz_edges],
        names=names,
        valuation=valuation,
        poison_base=[[], [], []],
    )


def uniform_tile_set() -> tuple[Tile, ...]:
    """One tile whose four edges share a color; tiles every torus."""
    return (Tile("a", "a", "a", "a"),)


def vertically_incompatible_tile_set() -> tuple[Tile, ...]:
    """Top colors and bottom colors come from disjoint palettes, so no tile
    ever accepts a vertical neighbor; the set tiles nothing. Horizontal
    edges all share one color and are never the obstacle."""
    return (Tile("a", "c", "x", "c"), Tile("b", "c", "y", "c"))


# ---------------------------------------------------------------------------
# A formula without finite models


def fmp_conjuncts(atom: str = "q") -> tuple[S.Pml, ...]:
    """Five conjuncts whose conjunction has only infinite models."""
    q = S.Atom(atom)
    dia = S.Diamond
    box = S.Box
    pdia = S.PoisonDiamond
    pbox = S.PoisonBox
    a = S.and_all(
        [
            S.Not(q),
            dia(S.TOP),
            box(q),
            box(S.And(dia(S.TOP), box(S.Not(q)))),
        ]
    )
    b = pbox(box(dia(POISON)))
    c = S.And(
        pbox(box(dia(S.And(S.Not(q), dia(POISON))))),
        box(box(S.Not(pdia(dia(POISON))))),
    )
    d = box(box(pbox(box(S.Implies(q, dia(POISON))))))
    e = box(
        pdia(
            S.Not(dia(S.And(q, dia(S.And(S.Not(q), dia(POISON))))))
        )
    )
    return (a, b, c, d, e)


def fmp_formula(atom: str = "q") -> S.Pml:
    return S.and_all(fmp_conjuncts(atom))


# ---------------------------------------------------------------------------
# Fixture models


def demo_graph() -> KripkeModel:
    """The running six-node example graph: 1->2, 1->3, 2->5, 3->4, 5->4,
    and a two-cycle between 4 and 6."""
    return KripkeModel.build(
        [[(0, 1), (0, 2), (1, 4), (2, 3), (4, 3), (3, 5), (5, 3)]],
        names=["1", "2", "3", "4", "5", "6"],
    )


def diamond_unfolding_pair() -> tuple[tuple[KripkeModel, int], tuple[KripkeModel, int]]:
    """A diamond with a shared sink, and its tree unfolding. The pair is
    poison-bisimilar."""
    m = KripkeModel.build(
        [[(0, 1), (0, 2), (1, 3), (2, 3)]], names=["w1", "w2", "w3", "w4"]
    )
    m2 = KripkeModel.build(
        [[(0, 1), (0, 2), (1, 3), (2, 4)]],
        names=["w1'", "w2'", "w3'", "w4'", "w4''"],
    )
    return (m, 0), (m2, 0)


def memory_separation_pair() -> tuple[tuple[KripkeModel, int], tuple[KripkeModel, int]]:
    """A pair that is poison-bisimilar yet distinguished in memory logic by
    remembering the start and asking whether two steps return to it."""
    m = KripkeModel.build(
        [[(0, 1), (1, 2), (2, 1)]], names=["w1", "w2", "w3"]
    )
    m2 = KripkeModel.build([[(0, 1), (1, 0)]], names=["w1'", "w2'"])
    return (m, 0), (m2, 0)


def memory_separation_formula():
    """Remember the current state, then reach it back in two steps."""
    from . import targets as T

    return T.Remember(T.MDiamond(T.MDiamond(T.KNOWN)))


# ---------------------------------------------------------------------------
# Random formulas


def random_formula(
    rng: random.Random,
    depth: int,
    atoms: tuple[str, ...] = ("p", "q"),
    relation_count: int = 1,
    *,
    allow_universal: bool = False,
    allow_poison: bool = True,
) -> S.Pml:
    """A random formula of modal depth at most ``depth``; deterministic for
    a given generator state."""
    leaves = ["atom", "top", "bot"]
    if allow_poison:
        leaves += ["patom", "patom"]
    if depth == 0 or rng.random() < 0.25:
        kind = rng.choice(leaves)
        if kind == "atom" and atoms:
            return S.Atom(rng.choice(atoms))
        if kind == "patom":
            return S.PoisonAtom(rng.randrange(relation_count))
        if kind == "top":
            return S.TOP
        return S.BOT
    kinds = ["not", "and", "or", "implies", "iff", "dia", "box"]
    if allow_poison:
        kinds += ["pdia", "pbox"]
    if allow_universal:
        kinds += ["udia", "ubox"]
    kind = rng.choice(kinds)
    if kind == "not":
        return S.Not(random_formula(rng, depth, atoms, relation_count,
                                    allow_universal=allow_universal,
                                    allow_poison=allow_poison))
    if kind in ("and", "or", "implies", "iff"):
        cls = {"and": S.And, "or": S.Or, "implies": S.Implies, "iff": S.Iff}[kind]
        return cls(
            random_formula(rng, depth, atoms, relation_count,
                           allow_universal=allow_universal,
                           allow_poison=allow_poison),
            random_formula(rng, depth, atoms, relation_count,
                           allow_universal=allow_universal,
                           allow_poison=allow_poison),
        )
    body = random_formula(rng, depth - 1, atoms, relation_count,
                          allow_universal=allow_universal,
                          allow_poison=allow_poison)
    index = rng.randrange(relation_count)
    if kind == "dia":
        return S.Diamond(body, index)
    if kind == "box":
        return S.Box(body, index)
    if kind == "pdia":
        return S.PoisonDiamond(body, index)
    if kind == "pbox":
        return S.PoisonBox(body, index)
    if kind == "udia":
        return S.UDiamond(body)
    return S.UBox(body)
