"""Tour of the model checker: plain modalities, poison, and bounded search.

Run:  python3 demos/01_model_checking.py
"""

from pml import Configuration, check_sat, check_validity, demo_graph, eval_pml, parse_pml


def show(model, text):
    f = parse_pml(text)
    row = {
        name: eval_pml(Configuration.initial(model, i), f)
        for i, name in enumerate(model.names)
    }
    cells = "  ".join(f"{k}:{'T' if v else '.'}" for k, v in row.items())
    print(f"  {text:<24} {cells}")


def main():
    g = demo_graph()
    print("The six-state example graph:")
    for i, name in enumerate(g.names):
        succs = ", ".join(g.names[j] for j in range(g.n) if g.succ_mask[0][i] >> j & 1)
        print(f"  {name} -> {succs or '-'}")

    print("\nPlain modal layer (poison plays no role yet):")
    show(g, "<>true")
    show(g, "<><>[]false")

    print("\nPoisoning: <#> moves and marks, #p reads the mark.")
    show(g, "<#>#p")          # some successor exists; it gets marked
    show(g, "<#><>~#p")       # after marking, a move to a clean state
    show(g, "<#><><>~#p")     # two clean steps: harder once cycles close
    show(g, "<#>[]#p")        # marking one successor traps the whole walk

    print("\nBounded validity search (all pointed models up to 3 states):")
    for text in ("[#](p & q) <-> ([#]p & [#]q)", "[#]#p <-> []#p"):
        r = check_validity(parse_pml(text), max_states=3)
        where = "" if r.verdict == "valid" else f"  (fails at n={r.model.n})"
        print(f"  {text:<28} {r.verdict}, {r.states_explored} pointed models{where}")

    print("\nBounded satisfiability:")
    r = check_sat(parse_pml("#p"), max_states=3)
    print(f"  #p at the start of play: {r.verdict} — nothing is poisoned yet")
    r = check_sat(parse_pml("<#>(#p & <>~#p)"), max_states=3)
    print(f"  <#>(#p & <>~#p): {r.verdict} after {r.states_explored} pointed models")


if __name__ == "__main__":
    main()
