"""Abstract syntax for the three translation targets.

First-order formulas live in the binary fragment with equality: unary
predicates for atoms, one unary poison predicate per relation index, one
binary relation symbol per index, equality, and quantifiers. Memory logic
adds a remember operator and a membership test to basic modal logic.
Hybrid logic adds nominals, state variables and a binder.

Printers here are deliberately fully parenthesized; they only need to be
unambiguous, not pretty, and no parser consumes them.
"""

from __future__ import annotations

from dataclasses import dataclass


# ---------------------------------------------------------------------------
# First-order formulas


class Fol:
    __slots__ = ()

    def __str__(self):
        return print_fol(self)


@dataclass(frozen=True, slots=True)
class Pred(Fol):
    atom: str
    var: str


@dataclass(frozen=True, slots=True)
class PoisonPred(Fol):
    var: str
    index: int = 0


@dataclass(frozen=True, slots=True)
class Equals(Fol):
    left: str
    right: str


@dataclass(frozen=True, slots=True)
class Rel(Fol):
    left: str
    right: str
    index: int = 0


@dataclass(frozen=True, slots=True)
class FTop(Fol):
    pass


@dataclass(frozen=True, slots=True)
class FBot(Fol):
    pass


@dataclass(frozen=True, slots=True)
class FNot(Fol):
    body: Fol


@dataclass(frozen=True, slots=True)
class FAnd(Fol):
    left: Fol
    right: Fol


@dataclass(frozen=True, slots=True)
class FOr(Fol):
    left: Fol
    right: Fol


@dataclass(frozen=True, slots=True)
class FImplies(Fol):
    left: Fol
    right: Fol


@dataclass(frozen=True, slots=True)
class FIff(Fol):
    left: Fol
    right: Fol


@dataclass(frozen=True, slots=True)
class Exists(Fol):
    var: str
    body: Fol


@dataclass(frozen=True, slots=True)
class Forall(Fol):
    var: str
    body: Fol


F_TOP = FTop()
F_BOT = FBot()

_FOL_BIN = {FAnd: "&", FOr: "|", FImplies: "->", FIff: "<->"}


def fol_or_all(parts) -> Fol:
    parts = list(parts)
    if not parts:
        return F_BOT
    out = parts[0]
    for p in parts[1:]:
        out = FOr(out, p)
    return out


def free_vars(psi: Fol) -> set[str]:
    t = type(psi)
    if t is Pred or t is PoisonPred:
        return {psi.var}
    if t is Equals or t is Rel:
        return {psi.left, psi.right}
    if t in (FTop, FBot):
        return set()
    if t is FNot:
        return free_vars(psi.body)
    if t in _FOL_BIN:
        return free_vars(psi.left) | free_vars(psi.right)
    if t in (Exists, Forall):
        return free_vars(psi.body) - {psi.var}
    raise TypeError(psi)


def _rel_symbol(index: int) -> str:
    return "R" if index == 0 else f"R{index + 1}"


def _poison_symbol(index: int) -> str:
    return "poison" if index == 0 else f"poison_{index + 1}"


def print_fol(psi: Fol) -> str:
    t = type(psi)
    if t is Pred:
        return f"{psi.atom}({psi.var})"
    if t is PoisonPred:
        return f"{_poison_symbol(psi.index)}({psi.var})"
    if t is Equals:
        return f"({psi.left} = {psi.right})"
    if t is Rel:
        return f"({psi.left} {_rel_symbol(psi.index)} {psi.right})"
    if t is FTop:
        return "true"
    if t is FBot:
        return "false"
    if t is FNot:
        return f"~{print_fol(psi.body)}"
    if t in _FOL_BIN:
        return f"({print_fol(psi.left)} {_FOL_BIN[t]} {print_fol(psi.right)})"
    if t is Exists:
        return f"exists {psi.var} {print_fol(psi.body)}"
    if t is Forall:
        return f"forall {psi.var} {print_fol(psi.body)}"
    raise TypeError(psi)


# ---------------------------------------------------------------------------
# Memory logic


class Mem:
    __slots__ = ()

    def __str__(self):
        return print_memory(self)


@dataclass(frozen=True, slots=True)
class MAtom(Mem):
    name: str


@dataclass(frozen=True, slots=True)
class MTop(Mem):
    pass


@dataclass(frozen=True, slots=True)
class MBot(Mem):
    pass


@dataclass(frozen=True, slots=True)
class MNot(Mem):
    body: Mem


@dataclass(frozen=True, slots=True)
class MAnd(Mem):
    left: Mem
    right: Mem


@dataclass(frozen=True, slots=True)
class MOr(Mem):
    left: Mem
    right: Mem


@dataclass(frozen=True, slots=True)
class MImplies(Mem):
    left: Mem
    right: Mem


@dataclass(frozen=True, slots=True)
class MIff(Mem):
    left: Mem
    right: Mem


@dataclass(frozen=True, slots=True)
class MDiamond(Mem):
    body: Mem


@dataclass(frozen=True, slots=True)
class MBox(Mem):
    body: Mem


@dataclass(frozen=True, slots=True)
class Remember(Mem):
    """Record the current state into memory, then evaluate the body."""

    body: Mem


@dataclass(frozen=True, slots=True)
class Known(Mem):
    """True iff the current state is in memory."""


M_TOP = MTop()
M_BOT = MBot()
KNOWN = Known()

_MEM_BIN = {MAnd: "&", MOr: "|", MImplies: "->", MIff: "<->"}


def print_memory(phi: Mem) -> str:
    t = type(phi)
    if t is MAtom:
        return phi.name
    if t is MTop:
        return "true"
    if t is MBot:
        return "false"
    if t is Known:
        return "@k"
    if t is MNot:
        return f"~{print_memory(phi.body)}"
    if t in _MEM_BIN:
        return f"({print_memory(phi.left)} {_MEM_BIN[t]} {print_memory(phi.right)})"
    if t is MDiamond:
        return f"<>{print_memory(phi.body)}"
    if t is MBox:
        return f"[]{print_memory(phi.body)}"
    if t is Remember:
        return f"@r{print_memory(phi.body)}"
    raise TypeError(phi)


# ---------------------------------------------------------------------------
# Hybrid logic with a binder


class Hyb:
    __slots__ = ()

    def __str__(self):
        return print_hybrid(self)


@dataclass(frozen=True, slots=True)
class HAtom(Hyb):
    name: str


@dataclass(frozen=True, slots=True)
class HPoisonAtom(Hyb):
    """The poison atom read from the model's own valuation."""


@dataclass(frozen=True, slots=True)
class Nominal(Hyb):
    name: str


@dataclass(frozen=True, slots=True)
class HVar(Hyb):
    name: str


@dataclass(frozen=True, slots=True)
class HTop(Hyb):
    pass


@dataclass(frozen=True, slots=True)
class HBot(Hyb):
    pass


@dataclass(frozen=True, slots=True)
class HNot(Hyb):
    body: Hyb


@dataclass(frozen=True, slots=True)
class HAnd(Hyb):
    left: Hyb
    right: Hyb


@dataclass(frozen=True, slots=True)
class HOr(Hyb):
    left: Hyb
    right: Hyb


@dataclass(frozen=True, slots=True)
class HImplies(Hyb):
    left: Hyb
    right: Hyb


@dataclass(frozen=True, slots=True)
class HIff(Hyb):
    left: Hyb
    right: Hyb


@dataclass(frozen=True, slots=True)
class HDiamond(Hyb):
    body: Hyb


@dataclass(frozen=True, slots=True)
class HBox(Hyb):
    body: Hyb


@dataclass(frozen=True, slots=True)
class Binder(Hyb):
    """Bind ``var`` to the current state, then evaluate the body."""

    var: str
    body: Hyb


H_TOP = HTop()
H_BOT = HBot()
H_POISON = HPoisonAtom()

_HYB_BIN = {HAnd: "&", HOr: "|", HImplies: "->", HIff: "<->"}


def hyb_or_all(parts) -> Hyb:
    parts = list(parts)
    if not parts:
        return H_BOT
    out = parts[0]
    for p in parts[1:]:
        out = HOr(out, p)
    return out


def print_hybrid(phi: Hyb) -> str:
    t = type(phi)
    if t is HAtom:
        return phi.name
    if t is HPoisonAtom:
        return "#p"
    if t is Nominal:
        return phi.name
    if t is HVar:
        return phi.name
    if t is HTop:
        return "true"
    if t is HBot:
        return "false"
    if t is HNot:
        return f"~{print_hybrid(phi.body)}"
    if t in _HYB_BIN:
        return f"({print_hybrid(phi.left)} {_HYB_BIN[t]} {print_hybrid(phi.right)})"
    if t is HDiamond:
        return f"<>{print_hybrid(phi.body)}"
    if t is HBox:
        return f"[]{print_hybrid(phi.body)}"
    if t is Binder:
        return f"down {phi.var} {print_hybrid(phi.body)}"
    raise TypeError(phi)
