"""Tour of the three translations: first-order, memory, hybrid.

Each target logic can see the poison set in its own vocabulary, and all
three agree with direct evaluation. Run:  python3 demos/03_translations.py
"""

import itertools
import random

from pml import (
    Configuration,
    HybridModel,
    MemoryModel,
    ModelGenSpec,
    enumerate_models,
    eval_fol,
    eval_hybrid,
    eval_memory,
    eval_pml,
    parse_pml,
    random_formula,
)
from pml.targets import print_fol, print_hybrid, print_memory
from pml.translate import ht_translate, mt_translate, st_translate

SAMPLES = ["#p", "<#>#p", "<#><>~#p", "[#](p -> <>#p)"]


def main():
    print("One formula, three targets:")
    for text in SAMPLES:
        f = parse_pml(text)
        print(f"  {text}")
        print(f"    first-order: {print_fol(st_translate(f))}")
        print(f"    memory:      {print_memory(mt_translate(f))}")
        print(f"    hybrid:      {print_hybrid(ht_translate(f))}")

    print("\nAgreement spot-check, 2000 random cases each way:")
    rng = random.Random(5)
    models = enumerate_models(ModelGenSpec(4, atoms=("p",), mode="random", seed=6))
    disagreements = 0
    for m in itertools.islice(models, 2000):
        f = random_formula(rng, 3, ("p",), 1, allow_universal=False, allow_poison=True)
        w = rng.randrange(m.n)
        direct = eval_pml(Configuration.initial(m, w), f)
        results = (
            eval_fol(m, {"x": w}, st_translate(f)),
            eval_memory(MemoryModel(m), w, mt_translate(f)),
            eval_hybrid(HybridModel(m), w, ht_translate(f)),
        )
        disagreements += sum(r != direct for r in results)
    print(f"  disagreements: {disagreements}")


if __name__ == "__main__":
    main()
