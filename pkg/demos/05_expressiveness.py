"""Tour of the formula constructions: circuits, admissibility, win
prefixes, the no-finite-model formula, and torus tilings.

Run:  python3 demos/05_expressiveness.py
"""

import itertools

from pml import (
    Configuration,
    KripkeModel,
    Player,
    check_sat,
    eval_pml,
    print_pml,
    solve,
)
from pml.generators import (
    admissibility_formula,
    circuit_formula,
    circuit_oracle,
    fmp_formula,
    tiling_formula,
    torus_grid_model,
    uniform_tile_set,
    vertically_incompatible_tile_set,
    win_formula,
    win_formula_guarded,
)


def main():
    ring = KripkeModel.build([[(0, 1), (1, 2), (2, 0)]], names=("a", "b", "c"))
    print("Closed-walk detectors on a 3-ring (a->b->c->a):")
    for n in (2, 3, 4):
        f = circuit_formula(n)
        got = eval_pml(Configuration.initial(ring, 0), f)
        oracle = any(circuit_oracle(ring, v, n) for v in ring.succ[0][0])
        print(f"  length {n}: formula {got}, walk oracle {oracle}")

    print("\nAdmissibility as a formula (atom p holds on the candidate set):")
    print(f"  {print_pml(admissibility_formula('p'))}")
    triangle = KripkeModel.build(
        [[(0, 1), (1, 2), (2, 0)]], n=3, valuation={"p": [0]}
    )
    print(
        "  on an attack triangle with p = {0}:",
        eval_pml(Configuration.initial(triangle, 0), admissibility_formula("p")),
        "(one vertex of an odd cycle cannot defend itself)",
    )

    print("\nWin prefixes vs the solver on a graph where they diverge:")
    odd = KripkeModel.build([[(0, 2), (1, 0), (1, 1)]], n=3)
    sol = solve(odd)
    f = win_formula(Player.OPPONENT, 3)
    g = win_formula_guarded(Player.OPPONENT, 3)
    w = 1
    print(f"  solver: opening at {odd.names[w]} -> {sol.per_initial_node[w].value} wins")
    print(f"  plain prefix:   {eval_pml(Configuration.initial(odd, w), f)}")
    print(f"  guarded prefix: {eval_pml(Configuration.initial(odd, w), g)}")

    print("\nThe infinity formula has no model with up to 3 states:")
    rep = check_sat(fmp_formula(), max_states=3)
    print(f"  {rep.verdict} after {rep.states_explored} pointed models")

    print("\nTorus tilings:")
    uni = uniform_tile_set()
    m = torus_grid_model(2, uni, [[0, 0], [0, 0]])
    print(
        "  one self-matching tile on the 2x2 torus:",
        eval_pml(Configuration.initial(m, 0), tiling_formula(uni)),
    )
    bad = vertically_incompatible_tile_set()
    results = set()
    for combo in itertools.product((0, 1), repeat=4):
        grid = [list(combo[:2]), list(combo[2:])]
        m = torus_grid_model(2, bad, grid)
        results.add(eval_pml(Configuration.initial(m, 0), tiling_formula(bad)))
    print(f"  clashing pair, all 16 assignments of the 2x2 torus: {results}")


if __name__ == "__main__":
    main()
