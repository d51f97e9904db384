"""Poison modal logic toolkit.

Model checking over finite Kripke models, the poison game (winning
regions, strategies, semi-kernels, admissible sets), poison
bisimulation, translations into first-order, memory, and hybrid logic,
formula generators, and an HTTP play service.
"""

from .bisim import (
    BisimResult,
    ConfigPair,
    audit_relation,
    equivalent_up_to_depth,
    p_bisimilar,
)
from .checker import (
    CheckReport,
    HybridModel,
    MemoryModel,
    check_sat,
    check_validity,
    eval_fol,
    eval_hybrid,
    eval_memory,
    eval_pml,
    eval_pml_at,
)
from .errors import (
    BudgetError,
    EvalError,
    IllegalMoveError,
    ModelFormatError,
    ParseError,
    PmlError,
    UnsupportedConstructError,
)
from .game import (
    EngineMove,
    GamePosition,
    GameSolution,
    OPENING,
    Player,
    admissible_sets,
    apply_move,
    best_move,
    has_semi_kernel,
    legal_moves,
    semi_kernels,
    solve,
    verify_duchet_meyniel,
    winner_at,
)
from .generators import (
    Tile,
    admissibility_formula,
    circuit_formula,
    circuit_oracle,
    delta_n,
    demo_graph,
    diamond_unfolding_pair,
    fmp_conjuncts,
    fmp_formula,
    memory_separation_formula,
    memory_separation_pair,
    poison_validities,
    random_formula,
    tiling_formula,
    torus_grid_model,
    uniform_tile_set,
    vertically_incompatible_tile_set,
    win_formula,
    win_formula_guarded,
)
from .kripke import (
    Configuration,
    KripkeModel,
    ModelGenSpec,
    enumerate_models,
    exhaustive_count,
    inverted,
    load_model,
    poison,
    poison_model,
    poison_successors,
    save_model,
    to_dot,
)
from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Box,
    Diamond,
    Iff,
    Implies,
    Not,
    Or,
    PoisonAtom,
    PoisonBox,
    PoisonDiamond,
    Top,
    UBox,
    UDiamond,
    and_all,
    atoms_of,
    flatten_and,
    formula_size,
    has_poison_modality,
    has_universal,
    max_relation_index,
    modal_depth,
    or_all,
    parse_pml,
    print_pml,
)
from .translate import (
    TranslationContext,
    ht_translate,
    hybrid_extension,
    mt_translate,
    st_translate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
