"""Kripke models with poison bookkeeping.

States are dense integers ``0..n-1`` with a side table of display names.
Poison sets are integer bitmasks kept next to the model, one per relation;
the valuation proper is never rewritten when a state is poisoned.
"""

from __future__ import annotations

import itertools
import json
import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import BudgetError, EvalError, ModelFormatError

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")

DEFAULT_ENUM_BUDGET = 1 << 22


def mask_of(states: Iterable[int]) -> int:
    m = 0
    for s in states:
        m |= 1 << s
    return m


def bits_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class KripkeModel:
    """Immutable pointed-model carrier: names, edges, valuation, poison base.

    ``edges[i]`` is the i-th accessibility relation as a frozenset of
    ``(source, target)`` pairs. ``valuation`` maps atom names to state
    bitmasks (stored as a sorted tuple so the value is hashable).
    ``poison_base[i]`` is the poison atom's base extension for relation i;
    a model belongs to the empty-poison class iff every entry is zero.
    """

    names: tuple[str, ...]
    edges: tuple[frozenset[tuple[int, int]], ...]
    valuation: tuple[tuple[str, int], ...] = ()
    poison_base: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.names:
            raise ModelFormatError("model needs at least one state")
        if not self.edges:
            raise ModelFormatError("model needs at least one relation")
        if len(set(self.names)) != len(self.names):
            raise ModelFormatError("duplicate state names")
        if not self.poison_base:
            object.__setattr__(self, "poison_base", (0,) * len(self.edges))
        if len(self.poison_base) != len(self.edges):
            raise ModelFormatError("poison_base length must match relation count")
        n = len(self.names)
        for i, rel in enumerate(self.edges):
            for u, v in rel:
                if not (0 <= u < n and 0 <= v < n):
                    raise ModelFormatError(f"edge ({u},{v}) out of range", f"relations[{i}]")

    @staticmethod
    def build(
        relations: Iterable[Iterable[tuple[int, int]]],
        *,
        n: int | None = None,
        names: Iterable[str] | None = None,
        valuation: Mapping[str, Iterable[int]] | None = None,
        poison_base: Iterable[Iterable[int]] | None = None,
    ) -> "KripkeModel":
        """Normalising constructor taking plain iterables."""
        rels = tuple(frozenset((int(u), int(v)) for u, v in rel) for rel in relations)
        if names is None:
            if n is None:
                top = max((max(u, v) for rel in rels for u, v in rel), default=-1)
                n = top + 1 if top >= 0 else 1
            names = tuple(str(i + 1) for i in range(n))
        else:
            names = tuple(names)
        val = tuple(sorted((a, mask_of(ws)) for a, ws in (valuation or {}).items()))
        base = tuple(mask_of(ws) for ws in poison_base) if poison_base is not None else ()
        return KripkeModel(names, rels, val, base)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def relation_count(self) -> int:
        return len(self.edges)

    @cached_property
    def succ(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        out = []
        for rel in self.edges:
            per = [[] for _ in range(self.n)]
            for u, v in rel:
                per[u].append(v)
            out.append(tuple(tuple(sorted(vs)) for vs in per))
        return tuple(out)

    @cached_property
    def succ_mask(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(mask_of(vs) for vs in per) for per in self.succ)

    @cached_property
    def pred(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        out = []
        for rel in self.edges:
            per = [[] for _ in range(self.n)]
            for u, v in rel:
                per[v].append(u)
            out.append(tuple(tuple(sorted(us)) for us in per))
        return tuple(out)

    @cached_property
    def val(self) -> dict[str, int]:
        return dict(self.valuation)

    @property
    def atoms(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.valuation)

    def successors(self, w: int, index: int = 0) -> tuple[int, ...]:
        return self.succ[index][w]

    def state_id(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ModelFormatError(f"unknown state name {name!r}") from None


@dataclass(frozen=True)
class Configuration:
    """A model together with accumulated poison masks and a current state.

    Invariant: ``poison[i]`` always contains ``model.poison_base[i]``; the
    poison atom for relation i is true exactly at the states in ``poison[i]``.
    """

    model: KripkeModel
    poison: tuple[int, ...]
    current: int

    @staticmethod
    def initial(model: KripkeModel, current: int) -> "Configuration":
        if not (0 <= current < model.n):
            raise ModelFormatError(f"state {current} out of range")
        return Configuration(model, model.poison_base, current)

    def poisoned_states(self, index: int = 0) -> list[int]:
        return bits_of(self.poison[index])

    def at(self, current: int) -> "Configuration":
        return Configuration(self.model, self.poison, current)


def poison(config: Configuration, index: int, state: int) -> Configuration:
    """Add ``state`` to the poison set of relation ``index`` and move there."""
    if not (0 <= index < config.model.relation_count):
        raise EvalError(
            f"relation index {index} out of range "
            f"(model has {config.model.relation_count})"
        )
    if not (0 <= state < config.model.n):
        raise ModelFormatError(f"state {state} out of range")
    pois = list(config.poison)
    pois[index] |= 1 << state
    return Configuration(config.model, tuple(pois), state)


def poison_successors(config: Configuration, index: int = 0) -> list[Configuration]:
    """All one-step poison moves: each successor, poisoned and moved to."""
    return [
        poison(config, index, v)
        for v in config.model.successors(config.current, index)
    ]


def poison_model(model: KripkeModel, state: int, index: int = 0) -> KripkeModel:
    """A copy of ``model`` whose poison base additionally contains ``state``."""
    base = list(model.poison_base)
    base[index] |= 1 << state
    return KripkeModel(model.names, model.edges, model.valuation, tuple(base))


def inverted(model: KripkeModel) -> KripkeModel:
    """The model with every relation reversed (valuation and names kept)."""
    rels = tuple(frozenset((v, u) for u, v in rel) for rel in model.edges)
    return KripkeModel(model.names, rels, model.valuation, model.poison_base)


@dataclass
class ModelGenSpec:
    """Parameters for model generation.

    ``exhaustive`` mode yields every model with exactly ``max_states`` states
    (all relations times all valuations over ``atoms``, empty poison base).
    ``random`` mode yields a deterministic infinite stream, sizes drawn
    uniformly from ``1..max_states``.
    """

    max_states: int
    atoms: tuple[str, ...] = ()
    relation_count: int = 1
    seed: int = 0
    mode: str = "exhaustive"
    budget: int = DEFAULT_ENUM_BUDGET

    def __post_init__(self):
        if self.max_states < 1:
            raise ModelFormatError("max_states must be at least 1")
        if self.mode not in ("exhaustive", "random"):
            raise ModelFormatError(f"unknown generation mode {self.mode!r}")
        self.atoms = tuple(self.atoms)


def exhaustive_count(spec: ModelGenSpec) -> int:
    n = spec.max_states
    return 1 << (n * n * spec.relation_count + n * len(spec.atoms))


def enumerate_models(spec: ModelGenSpec) -> Iterator[KripkeModel]:
    if spec.mode == "random":
        yield from _random_models(spec)
        return
    count = exhaustive_count(spec)
    if count > spec.budget:
        raise BudgetError("exhaustive enumeration too large", count, spec.budget)
    n = spec.max_states
    names = tuple(str(i + 1) for i in range(n))
    pairs = [(u, v) for u in range(n) for v in range(n)]
    rel_masks = range(1 << (n * n))
    val_masks = range(1 << n)
    for rels in itertools.product(rel_masks, repeat=spec.relation_count):
        edges = tuple(
            frozenset(pairs[i] for i in range(n * n) if rm >> i & 1) for rm in rels
        )
        for vals in itertools.product(val_masks, repeat=len(spec.atoms)):
            valuation = tuple(sorted(zip(spec.atoms, vals)))
            yield KripkeModel(names, edges, valuation)


def _random_models(spec: ModelGenSpec) -> Iterator[KripkeModel]:
    rng = random.Random(spec.seed)
    while True:
        n = rng.randint(1, spec.max_states)
        density = rng.uniform(0.15, 0.85)
        edges = tuple(
            frozenset(
                (u, v)
                for u in range(n)
                for v in range(n)
                if rng.random() < density
            )
            for _ in range(spec.relation_count)
        )
        valuation = tuple(
            sorted((a, rng.getrandbits(n)) for a in spec.atoms)
        )
        yield KripkeModel(tuple(str(i + 1) for i in range(n)), edges, valuation)


# ---------------------------------------------------------------------------
# JSON model documents


def load_model(text: str) -> KripkeModel:
    """Parse a model document; raises ModelFormatError with a location."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(
            f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}"
        ) from None
    if not isinstance(doc, dict):
        raise ModelFormatError("model document must be a JSON object")

    states = doc.get("states")
    if not isinstance(states, list) or not states:
        raise ModelFormatError("'states' must be a nonempty list", "states")
    seen: dict[str, int] = {}
    for i, name in enumerate(states):
        if not isinstance(name, str):
            raise ModelFormatError("state names must be strings", f"states[{i}]")
        if name in seen:
            raise ModelFormatError(f"duplicate state name {name!r}", f"states[{i}]")
        seen[name] = i

    relations = doc.get("relations")
    if not isinstance(relations, list) or not relations:
        raise ModelFormatError("'relations' must be a nonempty list", "relations")
    edges = []
    for ri, rel in enumerate(relations):
        if not isinstance(rel, list):
            raise ModelFormatError("each relation must be a list of edges", f"relations[{ri}]")
        pairs = set()
        for ei, edge in enumerate(rel):
            loc = f"relations[{ri}][{ei}]"
            if not (isinstance(edge, list) and len(edge) == 2):
                raise ModelFormatError("edge must be a [from, to] pair", loc)
            for name in edge:
                if name not in seen:
                    raise ModelFormatError(f"unknown state {name!r}", loc)
            pairs.add((seen[edge[0]], seen[edge[1]]))
        edges.append(frozenset(pairs))

    valuation = {}
    for atom, extension in (doc.get("valuation") or {}).items():
        loc = f"valuation[{atom!r}]"
        if not ATOM_RE.match(atom):
            raise ModelFormatError(f"bad atom name {atom!r}", loc)
        if not isinstance(extension, list):
            raise ModelFormatError("atom extension must be a list of states", loc)
        for name in extension:
            if name not in seen:
                raise ModelFormatError(f"unknown state {name!r}", loc)
        valuation[atom] = mask_of(seen[nm] for nm in extension)

    raw_poison = doc.get("poison")
    base: tuple[int, ...] = ()
    if raw_poison is not None:
        if not isinstance(raw_poison, list) or len(raw_poison) != len(edges):
            raise ModelFormatError(
                "'poison' must list one state set per relation", "poison"
            )
        masks = []
        for pi, entry in enumerate(raw_poison):
            loc = f"poison[{pi}]"
            if not isinstance(entry, list):
                raise ModelFormatError("poison entry must be a list of states", loc)
            for name in entry:
                if name not in seen:
                    raise ModelFormatError(f"unknown state {name!r}", loc)
            masks.append(mask_of(seen[nm] for nm in entry))
        base = tuple(masks)

    return KripkeModel(
        tuple(states),
        tuple(edges),
        tuple(sorted(valuation.items())),
        base,
    )


def save_model(model: KripkeModel) -> str:
    """Serialise to the canonical document: ordered states, sorted edges."""
    doc = {
        "states": list(model.names),
        "relations": [
            [[model.names[u], model.names[v]] for u, v in sorted(rel)]
            for rel in model.edges
        ],
        "valuation": {
            atom: [model.names[w] for w in bits_of(mask)]
            for atom, mask in model.valuation
        },
        "poison": [[model.names[w] for w in bits_of(m)] for m in model.poison_base],
    }
    return json.dumps(doc, indent=2) + "\n"


DOT_STYLES = ["solid", "dashed", "dotted", "bold"]


def to_dot(model: KripkeModel) -> str:
    """GraphViz export; one edge style per relation index."""
    lines = ["digraph model {"]
    for w, name in enumerate(model.names):
        true_atoms = [a for a, m in model.valuation if m >> w & 1]
        label = name if not true_atoms else f"{name}\\n{','.join(true_atoms)}"
        lines.append(f'  s{w} [label="{label}"];')
    for i, rel in enumerate(model.edges):
        style = DOT_STYLES[i % len(DOT_STYLES)]
        for u, v in sorted(rel):
            lines.append(f"  s{u} -> s{v} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
