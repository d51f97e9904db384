"""Tour of the game solver: winners, ranks, engine play, and the set oracles.

Run:  python3 demos/02_poison_game.py
"""

from pml import (
    KripkeModel,
    OPENING,
    Player,
    admissible_sets,
    apply_move,
    best_move,
    demo_graph,
    inverted,
    semi_kernels,
    solve,
    verify_duchet_meyniel,
    winner_at,
)


def names_of(model, state_set):
    return "{" + ", ".join(sorted(model.names[i] for i in state_set)) + "}"


def self_play(model, sol):
    pos = OPENING
    trace = []
    seen = set()
    while winner_at(pos, model) is None:
        if pos in seen:
            return trace, Player.PROPONENT  # a loop means play never ends
        seen.add(pos)
        engine = best_move(pos, model, sol)
        if engine.resign:
            return trace, pos.to_move.other()
        trace.append(model.names[engine.move])
        pos = apply_move(pos, engine.move, model)
    return trace, winner_at(pos, model)


def main():
    g = demo_graph()
    sol = solve(g)
    print("Opening evaluations on the six-state graph:")
    for i, name in enumerate(g.names):
        print(f"  open at {name}: {sol.per_initial_node[i].value} wins")

    print("\nSemi-kernels (independent, successors covered back):")
    for s in semi_kernels(g):
        print(f"  {names_of(g, s)}")

    print("\nAdmissible sets of the corresponding attack graph:")
    for s in admissible_sets(inverted(g)):
        print(f"  {names_of(g, s)}")

    print("\nBoth engines playing their best against each other:")
    trace, winner = self_play(g, sol)
    print(f"  {' -> '.join(trace)}  ... {winner.value} wins")

    two_roads = KripkeModel.build(
        [[(0, 0), (0, 1), (1, 1)]], names=("hub", "trap")
    )
    sol2 = solve(two_roads)
    print("\nA graph the opponent owns outright (hub->hub, hub->trap, trap->trap):")
    for i, name in enumerate(two_roads.names):
        print(f"  open at {name}: {sol2.per_initial_node[i].value} wins")
    trace, winner = self_play(two_roads, sol2)
    print(f"  self-play: {' -> '.join(trace)}  ... {winner.value} wins")

    print("\nCross-checking game solving against semi-kernel search,")
    print("every digraph on up to 3 nodes:")
    rep = verify_duchet_meyniel(3)
    verdict = "no violations" if rep.ok else f"{len(rep.violations)} violations"
    print(
        f"  {rep.graphs_checked} graphs, "
        f"{rep.proponent_winning_graphs} with a winning opening, {verdict}"
    )


if __name__ == "__main__":
    main()
