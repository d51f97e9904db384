"""Truth-preserving translations out of poison modal logic.

Three targets:

- first-order logic: the standard translation, where each poison diamond
  binds a fresh variable and records it; the poison atom then means "the
  base poison predicate holds here, or this point is one of the recorded
  variables". Multi-index formulas keep one variable record per index.
- memory logic: poison diamonds become a diamond followed by a remember
  step, and the poison atom becomes the membership test.
- hybrid logic: poison diamonds become a diamond followed by a binder on a
  fresh state variable; the poison atom becomes a disjunction of the base
  poison atom with all recorded variables.

The universal modalities fall outside all three source fragments and are
rejected. Fresh variables come from a monotone counter and are never
reused within one context.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import syntax as S
from . import targets as T
from .errors import UnsupportedConstructError
from .kripke import KripkeModel
from .checker import HybridModel


@dataclass
class TranslationContext:
    """Carries fresh-variable state and the poison records.

    ``poisoned_vars`` maps a relation index to the tuple of first-order
    variables recorded for it so far; ``bound_vars`` is the hybrid
    counterpart (a single tuple: hybrid formulas are single-relation).
    """

    counter: int = 1
    poisoned_vars: dict[int, tuple[str, ...]] = field(default_factory=dict)
    bound_vars: tuple[str, ...] = ()

    def fresh(self, prefix: str) -> str:
        name = f"{prefix}{self.counter}"
        self.counter += 1
        return name


def _reject_universal(formula):
    raise UnsupportedConstructError(
        "universal modalities have no translation in this fragment"
    )


# ---------------------------------------------------------------------------
# Standard translation


def st_translate(
    phi: S.Pml, ctx: TranslationContext | None = None, x: str = "x"
) -> T.Fol:
    """First-order truth condition of ``phi`` at the point named ``x``."""
    if ctx is None:
        ctx = TranslationContext()
    return _st(phi, ctx, x, dict(ctx.poisoned_vars))


def _st(phi: S.Pml, ctx: TranslationContext, x: str, recorded: dict) -> T.Fol:
    t = type(phi)
    if t is S.Atom:
        return T.Pred(phi.name, x)
    if t is S.PoisonAtom:
        vs = recorded.get(phi.index, ())
        return T.FOr(
            T.PoisonPred(x, phi.index), T.fol_or_all(T.Equals(y, x) for y in vs)
        )
    if t is S.Top:
        return T.F_TOP
    if t is S.Bot:
        return T.F_BOT
    if t is S.Not:
        return T.FNot(_st(phi.body, ctx, x, recorded))
    if t is S.And:
        return T.FAnd(_st(phi.left, ctx, x, recorded), _st(phi.right, ctx, x, recorded))
    if t is S.Or:
        return T.FOr(_st(phi.left, ctx, x, recorded), _st(phi.right, ctx, x, recorded))
    if t is S.Implies:
        return T.FImplies(
            _st(phi.left, ctx, x, recorded), _st(phi.right, ctx, x, recorded)
        )
    if t is S.Iff:
        return T.FIff(_st(phi.left, ctx, x, recorded), _st(phi.right, ctx, x, recorded))
    if t is S.Diamond:
        y = ctx.fresh("y")
        return T.Exists(
            y, T.FAnd(T.Rel(x, y, phi.index), _st(phi.body, ctx, y, recorded))
        )
    if t is S.Box:
        y = ctx.fresh("y")
        return T.Forall(
            y, T.FImplies(T.Rel(x, y, phi.index), _st(phi.body, ctx, y, recorded))
        )
    if t is S.PoisonDiamond:
        y = ctx.fresh("y")
        rec2 = dict(recorded)
        rec2[phi.index] = rec2.get(phi.index, ()) + (y,)
        return T.Exists(
            y, T.FAnd(T.Rel(x, y, phi.index), _st(phi.body, ctx, y, rec2))
        )
    if t is S.PoisonBox:
        y = ctx.fresh("y")
        rec2 = dict(recorded)
        rec2[phi.index] = rec2.get(phi.index, ()) + (y,)
        return T.Forall(
            y, T.FImplies(T.Rel(x, y, phi.index), _st(phi.body, ctx, y, rec2))
        )
    _reject_universal(phi)


# ---------------------------------------------------------------------------
# Memory-logic translation


def mt_translate(phi: S.Pml) -> T.Mem:
    """Memory-logic counterpart; single-relation formulas only."""
    t = type(phi)
    if t is S.Atom:
        return T.MAtom(phi.name)
    if t is S.PoisonAtom:
        _require_single_index(phi.index)
        return T.KNOWN
    if t is S.Top:
        return T.M_TOP
    if t is S.Bot:
        return T.M_BOT
    if t is S.Not:
        return T.MNot(mt_translate(phi.body))
    if t is S.And:
        return T.MAnd(mt_translate(phi.left), mt_translate(phi.right))
    if t is S.Or:
        return T.MOr(mt_translate(phi.left), mt_translate(phi.right))
    if t is S.Implies:
        return T.MImplies(mt_translate(phi.left), mt_translate(phi.right))
    if t is S.Iff:
        return T.MIff(mt_translate(phi.left), mt_translate(phi.right))
    if t is S.Diamond:
        _require_single_index(phi.index)
        return T.MDiamond(mt_translate(phi.body))
    if t is S.Box:
        _require_single_index(phi.index)
        return T.MBox(mt_translate(phi.body))
    if t is S.PoisonDiamond:
        _require_single_index(phi.index)
        return T.MDiamond(T.Remember(mt_translate(phi.body)))
    if t is S.PoisonBox:
        # the remember step is self-dual, so the box case mirrors the diamond
        _require_single_index(phi.index)
        return T.MBox(T.Remember(mt_translate(phi.body)))
    _reject_universal(phi)


def _require_single_index(index: int):
    if index != 0:
        raise UnsupportedConstructError(
            "memory and hybrid translations cover single-relation formulas only"
        )


# ---------------------------------------------------------------------------
# Hybrid translation


def ht_translate(phi: S.Pml, ctx: TranslationContext | None = None) -> T.Hyb:
    """Hybrid counterpart with a binder per poison step."""
    if ctx is None:
        ctx = TranslationContext()
    return _ht(phi, ctx, ctx.bound_vars)


def _ht(phi: S.Pml, ctx: TranslationContext, bound: tuple[str, ...]) -> T.Hyb:
    t = type(phi)
    if t is S.Atom:
        return T.HAtom(phi.name)
    if t is S.PoisonAtom:
        _require_single_index(phi.index)
        return T.HOr(T.H_POISON, T.hyb_or_all(T.HVar(v) for v in bound))
    if t is S.Top:
        return T.H_TOP
    if t is S.Bot:
        return T.H_BOT
    if t is S.Not:
        return T.HNot(_ht(phi.body, ctx, bound))
    if t is S.And:
        return T.HAnd(_ht(phi.left, ctx, bound), _ht(phi.right, ctx, bound))
    if t is S.Or:
        return T.HOr(_ht(phi.left, ctx, bound), _ht(phi.right, ctx, bound))
    if t is S.Implies:
        return T.HImplies(_ht(phi.left, ctx, bound), _ht(phi.right, ctx, bound))
    if t is S.Iff:
        return T.HIff(_ht(phi.left, ctx, bound), _ht(phi.right, ctx, bound))
    if t is S.Diamond:
        _require_single_index(phi.index)
        return T.HDiamond(_ht(phi.body, ctx, bound))
    if t is S.Box:
        _require_single_index(phi.index)
        return T.HBox(_ht(phi.body, ctx, bound))
    if t is S.PoisonDiamond:
        _require_single_index(phi.index)
        v = ctx.fresh("x")
        return T.HDiamond(T.Binder(v, _ht(phi.body, ctx, bound + (v,))))
    if t is S.PoisonBox:
        # the binder is self-dual, so the box case mirrors the diamond
        _require_single_index(phi.index)
        v = ctx.fresh("x")
        return T.HBox(T.Binder(v, _ht(phi.body, ctx, bound + (v,))))
    _reject_universal(phi)


def hybrid_extension(model: KripkeModel) -> HybridModel:
    """Name every state with its own nominal (``i0``, ``i1``, ...)."""
    nominals = tuple((f"i{w}", w) for w in range(model.n))
    return HybridModel(model, nominals, ())
