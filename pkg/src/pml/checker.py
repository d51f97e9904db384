"""Evaluators and bounded validity/satisfiability search.

``eval_pml`` is the reference semantics: the poison diamond moves to a
successor after adding it to the relevant poison set, and the poison atom
is true exactly on the accumulated poison set (which always contains the
model's poison base). The universal modalities quantify over all states
without touching poison.

The bounded searches only ever make claims about the model class they
enumerated; a ``valid`` verdict means "no countermodel up to the stated
size", never a theorem.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import syntax as S
from . import targets as T
from .errors import EvalError
from .kripke import Configuration, KripkeModel, ModelGenSpec, enumerate_models


def _check_indices(formula: S.Pml, model: KripkeModel):
    top = S.max_relation_index(formula)
    if top >= model.relation_count:
        raise EvalError(
            f"formula uses relation index {top} but model has "
            f"{model.relation_count} relation(s)"
        )


def eval_pml(config: Configuration, formula: S.Pml, *, memoize: bool | None = None) -> bool:
    """Truth of ``formula`` at ``config``. Pure: the configuration is not touched.

    ``memoize=None`` enables the cache only when the formula contains a
    poison modality; plain modal formulas are cheaper without it.
    """
    model = config.model
    _check_indices(formula, model)
    if memoize is None:
        memoize = S.has_poison_modality(formula)
    succ = model.succ
    val = model.val
    n = model.n
    cache: dict = {}

    def ev(f: S.Pml, w: int, pois: tuple[int, ...]) -> bool:
        t = type(f)
        if t is S.Atom:
            return bool(val.get(f.name, 0) >> w & 1)
        if t is S.PoisonAtom:
            return bool(pois[f.index] >> w & 1)
        if t is S.Not:
            return not ev(f.body, w, pois)
        if t is S.And:
            return ev(f.left, w, pois) and ev(f.right, w, pois)
        if t is S.Or:
            return ev(f.left, w, pois) or ev(f.right, w, pois)
        if t is S.Implies:
            return (not ev(f.left, w, pois)) or ev(f.right, w, pois)
        if t is S.Iff:
            return ev(f.left, w, pois) == ev(f.right, w, pois)
        if t is S.Top:
            return True
        if t is S.Bot:
            return False
        if memoize:
            key = (id(f), w, pois)
            hit = cache.get(key)
            if hit is not None:
                return hit
        if t is S.Diamond:
            out = any(ev(f.body, v, pois) for v in succ[f.index][w])
        elif t is S.Box:
            out = all(ev(f.body, v, pois) for v in succ[f.index][w])
        elif t is S.PoisonDiamond:
            i = f.index
            out = False
            for v in succ[i][w]:
                p2 = pois[:i] + (pois[i] | 1 << v,) + pois[i + 1:]
                if ev(f.body, v, p2):
                    out = True
                    break
        elif t is S.PoisonBox:
            i = f.index
            out = True
            for v in succ[i][w]:
                p2 = pois[:i] + (pois[i] | 1 << v,) + pois[i + 1:]
                if not ev(f.body, v, p2):
                    out = False
                    break
        elif t is S.UDiamond:
            out = any(ev(f.body, v, pois) for v in range(n))
        elif t is S.UBox:
            out = all(ev(f.body, v, pois) for v in range(n))
        else:
            raise EvalError(f"cannot evaluate node {f!r}")
        if memoize:
            cache[key] = out
        return out

    return ev(formula, config.current, config.poison)


def eval_pml_at(model: KripkeModel, state: int, formula: S.Pml) -> bool:
    """Shorthand: evaluate at the initial configuration over ``state``."""
    return eval_pml(Configuration.initial(model, state), formula)


# ---------------------------------------------------------------------------
# Memory logic


@dataclass(frozen=True)
class MemoryModel:
    """A single-relation model plus a remembered-state set (bitmask)."""

    model: KripkeModel
    memory: int = 0


def eval_memory(mm: MemoryModel, state: int, formula: T.Mem) -> bool:
    model = mm.model
    succ = model.succ[0]
    val = model.val

    def ev(f: T.Mem, w: int, memory: int) -> bool:
        match f:
            case T.MAtom(name):
                return bool(val.get(name, 0) >> w & 1)
            case T.Known():
                return bool(memory >> w & 1)
            case T.Remember(body):
                return ev(body, w, memory | 1 << w)
            case T.MNot(body):
                return not ev(body, w, memory)
            case T.MAnd(a, b):
                return ev(a, w, memory) and ev(b, w, memory)
            case T.MOr(a, b):
                return ev(a, w, memory) or ev(b, w, memory)
            case T.MImplies(a, b):
                return (not ev(a, w, memory)) or ev(b, w, memory)
            case T.MIff(a, b):
                return ev(a, w, memory) == ev(b, w, memory)
            case T.MDiamond(body):
                return any(ev(body, v, memory) for v in succ[w])
            case T.MBox(body):
                return all(ev(body, v, memory) for v in succ[w])
            case T.MTop():
                return True
            case T.MBot():
                return False
        raise EvalError(f"cannot evaluate node {f!r}")

    return ev(formula, state, mm.memory)


# ---------------------------------------------------------------------------
# Hybrid logic


@dataclass(frozen=True)
class HybridModel:
    """A single-relation model with nominal denotations and an assignment.

    The poison atom of hybrid formulas reads the base model's own poison
    base (its poison-atom valuation); nothing here accumulates.
    """

    model: KripkeModel
    nominals: tuple[tuple[str, int], ...] = ()
    assignment: tuple[tuple[str, int], ...] = ()

    def nominal_map(self) -> dict[str, int]:
        return dict(self.nominals)

    def with_assignment(self, g: dict[str, int]) -> "HybridModel":
        return HybridModel(self.model, self.nominals, tuple(sorted(g.items())))


def eval_hybrid(hm: HybridModel, state: int, formula: T.Hyb) -> bool:
    model = hm.model
    succ = model.succ[0]
    val = model.val
    nom = hm.nominal_map()
    base = model.poison_base[0]

    def ev(f: T.Hyb, w: int, g: dict[str, int]) -> bool:
        match f:
            case T.HAtom(name):
                return bool(val.get(name, 0) >> w & 1)
            case T.HPoisonAtom():
                return bool(base >> w & 1)
            case T.Nominal(name):
                if name not in nom:
                    raise EvalError(f"nominal {name!r} has no denotation")
                return nom[name] == w
            case T.HVar(name):
                if name not in g:
                    raise EvalError(f"state variable {name!r} is unbound")
                return g[name] == w
            case T.Binder(var, body):
                return ev(body, w, {**g, var: w})
            case T.HNot(body):
                return not ev(body, w, g)
            case T.HAnd(a, b):
                return ev(a, w, g) and ev(b, w, g)
            case T.HOr(a, b):
                return ev(a, w, g) or ev(b, w, g)
            case T.HImplies(a, b):
                return (not ev(a, w, g)) or ev(b, w, g)
            case T.HIff(a, b):
                return ev(a, w, g) == ev(b, w, g)
            case T.HDiamond(body):
                return any(ev(body, v, g) for v in succ[w])
            case T.HBox(body):
                return all(ev(body, v, g) for v in succ[w])
            case T.HTop():
                return True
            case T.HBot():
                return False
        raise EvalError(f"cannot evaluate node {f!r}")

    return ev(formula, state, dict(hm.assignment))


# ---------------------------------------------------------------------------
# First-order evaluation


def eval_fol(model: KripkeModel, assignment: dict[str, int], formula: T.Fol) -> bool:
    """Truth in the first-order companion structure of ``model``.

    The poison predicates denote the model's poison base; accumulated
    poison has no first-order counterpart (the translation encodes it in
    variables instead).
    """
    val = model.val
    n = model.n
    edges = model.edges

    def lookup(g, v):
        if v not in g:
            raise EvalError(f"variable {v!r} is unbound")
        return g[v]

    def ev(f: T.Fol, g: dict[str, int]) -> bool:
        match f:
            case T.Pred(atom, var):
                return bool(val.get(atom, 0) >> lookup(g, var) & 1)
            case T.PoisonPred(var, index):
                return bool(model.poison_base[index] >> lookup(g, var) & 1)
            case T.Equals(a, b):
                return lookup(g, a) == lookup(g, b)
            case T.Rel(a, b, index):
                return (lookup(g, a), lookup(g, b)) in edges[index]
            case T.FNot(body):
                return not ev(body, g)
            case T.FAnd(a, b):
                return ev(a, g) and ev(b, g)
            case T.FOr(a, b):
                return ev(a, g) or ev(b, g)
            case T.FImplies(a, b):
                return (not ev(a, g)) or ev(b, g)
            case T.FIff(a, b):
                return ev(a, g) == ev(b, g)
            case T.Exists(var, body):
                return any(ev(body, {**g, var: w}) for w in range(n))
            case T.Forall(var, body):
                return all(ev(body, {**g, var: w}) for w in range(n))
            case T.FTop():
                return True
            case T.FBot():
                return False
        raise EvalError(f"cannot evaluate node {f!r}")

    return ev(formula, dict(assignment))


# ---------------------------------------------------------------------------
# Bounded validity / satisfiability


@dataclass
class CheckReport:
    """Outcome of a bounded search over empty-poison pointed models.

    verdict is one of:
      - ``countermodel``: a pointed model falsifying the formula (validity search)
      - ``valid``: no countermodel up to the bound; a bounded claim only
      - ``satisfiable``: a pointed model satisfying the formula (sat search)
      - ``exhausted``: no witness up to the bound
    """

    verdict: str
    states_explored: int
    max_states: int
    model: KripkeModel | None = None
    state: int | None = None

    def found(self) -> bool:
        return self.verdict in ("countermodel", "satisfiable")


def _search_space(formula: S.Pml, gen: ModelGenSpec | None, max_states: int):
    if gen is None:
        atoms = tuple(sorted(S.atoms_of(formula)))
        rels = max(1, S.max_relation_index(formula) + 1)
        gen = ModelGenSpec(max_states, atoms, rels)
    if gen.mode != "exhaustive":
        raise EvalError("bounded search needs an exhaustive generation spec")
    for n in range(1, gen.max_states + 1):
        sub = ModelGenSpec(n, gen.atoms, gen.relation_count, budget=gen.budget)
        for model in enumerate_models(sub):
            for w in range(model.n):
                yield model, w


def check_validity(
    formula: S.Pml, gen: ModelGenSpec | None = None, *, max_states: int = 3
) -> CheckReport:
    """Search all empty-poison pointed models up to the bound for a countermodel."""
    bound = gen.max_states if gen is not None else max_states
    explored = 0
    for model, w in _search_space(formula, gen, max_states):
        explored += 1
        if not eval_pml(Configuration.initial(model, w), formula):
            return CheckReport("countermodel", explored, bound, model, w)
    return CheckReport("valid", explored, bound)


def check_sat(
    formula: S.Pml, gen: ModelGenSpec | None = None, *, max_states: int = 3
) -> CheckReport:
    """Search all empty-poison pointed models up to the bound for a witness."""
    bound = gen.max_states if gen is not None else max_states
    explored = 0
    for model, w in _search_space(formula, gen, max_states):
        explored += 1
        if eval_pml(Configuration.initial(model, w), formula):
            return CheckReport("satisfiable", explored, bound, model, w)
    return CheckReport("exhausted", explored, bound)
