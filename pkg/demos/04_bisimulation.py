"""Tour of p-bisimulation: verdicts, distinguishing formulas, audits.

Run:  python3 demos/04_bisimulation.py
"""

from pml import Configuration, KripkeModel, eval_pml, print_pml
from pml.bisim import ConfigPair, audit_relation, equivalent_up_to_depth, p_bisimilar
from pml.generators import diamond_unfolding_pair, memory_separation_pair


def report(title, m1, w1, m2, w2, **kw):
    res = p_bisimilar(m1, w1, m2, w2, **kw)
    print(f"{title}:")
    if res.bisimilar:
        print(
            f"  bisimilar after {res.rounds} refinement rounds, "
            f"{len(res.relation)} related pairs"
        )
    else:
        wit = print_pml(res.witness)
        left = eval_pml(Configuration.initial(m1, w1), res.witness)
        print(
            f"  not bisimilar, witness {wit} "
            f"(true on the {'first' if left else 'second'} side only)"
        )
    return res


def main():
    (m1, w1), (m2, w2) = diamond_unfolding_pair()
    report("Diamond vs its tree unfolding", m1, w1, m2, w2)

    (m1, w1), (m2, w2) = memory_separation_pair()
    res = report("Three-state cycle return vs two-cycle", m1, w1, m2, w2)
    print("  audit of the computed relation:", audit_relation(res.relation) or "clean")

    loop = KripkeModel.build([[(0, 0)]], names=("w",))
    chain = KripkeModel.build([[(0, 1)]], names=("a", "b"))
    res = report("Reflexive point vs its truncated unraveling", loop, 0, chain, 0)
    print("  depth-bounded equivalence:", {
        d: equivalent_up_to_depth(loop, 0, chain, 0, d) for d in (1, 2, 3)
    })

    # relate only the two start configurations and let the auditor name
    # every clause that a real bisimulation would also need
    violations = audit_relation([
        ConfigPair(Configuration.initial(loop, 0), Configuration.initial(chain, 0))
    ])
    print("\nAuditing a deliberately too-small relation for loop vs chain:")
    for v in violations:
        print(f"  {v}")


if __name__ == "__main__":
    main()
