"""Command-line front end.

Subcommands: check, solve, semikernels, admissible, bisim, translate,
gen, verify, serve. Output is JSON by default (stable key order), or
plain text with ``--format text``. Exit codes: 0 on success (a found
countermodel is a success: the verdict is the answer), 1 on domain
errors, 2 on usage errors. Domain errors print a single line to stderr
shaped ``error:<kind>: message``.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bisim import equivalent_up_to_depth, p_bisimilar
from .checker import CheckReport, check_sat, check_validity, eval_pml_at
from .errors import (
    BudgetError,
    EvalError,
    IllegalMoveError,
    ModelFormatError,
    ParseError,
    PmlError,
    UnsupportedConstructError,
)
from .game import admissible_sets, semi_kernels, solve, verify_duchet_meyniel
from .generators import (
    Tile,
    admissibility_formula,
    circuit_formula,
    delta_n,
    demo_graph,
    fmp_conjuncts,
    fmp_formula,
    poison_validities,
    tiling_formula,
    torus_grid_model,
    uniform_tile_set,
    vertically_incompatible_tile_set,
    win_formula,
    win_formula_guarded,
)
from .kripke import KripkeModel, load_model, save_model
from .syntax import parse_pml
from .translate import ht_translate, mt_translate, st_translate


def _read_formula(arg: str):
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            arg = fh.read()
    return parse_pml(arg)


def _read_model(path: str) -> KripkeModel:
    with open(path, encoding="utf-8") as fh:
        return load_model(fh.read())


def _emit(args, obj, text: str | None = None) -> None:
    if args.format == "text" and text is not None:
        print(text)
    else:
        print(json.dumps(obj, indent=2, sort_keys=True))


def _emit_formula(args, phi) -> None:
    _emit(args, str(phi), text=str(phi))


def _emit_model(args, model: KripkeModel) -> None:
    # already canonical JSON; same in both formats
    sys.stdout.write(save_model(model))


def _report_payload(report: CheckReport, found_key: str) -> dict:
    out = {
        "verdict": report.verdict,
        "statesExplored": report.states_explored,
        "maxStates": report.max_states,
    }
    if report.found():
        out[found_key] = json.loads(save_model(report.model))
        out["state"] = report.model.names[report.state]
    return out


# ---------------------------------------------------------------------------
# Subcommands


def cmd_check(args) -> int:
    phi = _read_formula(args.formula)
    if args.model is not None:
        if args.sat:
            print("error:usage: --sat is for model-free search", file=sys.stderr)
            return 2
        model = _read_model(args.model)
        if args.state is not None:
            value = eval_pml_at(model, model.state_id(args.state), phi)
            _emit(args, value, text=str(value).lower())
            return 0
        results = {
            name: eval_pml_at(model, w, phi)
            for w, name in enumerate(model.names)
        }
        text = "\n".join(
            f"{name}: {str(v).lower()}" for name, v in results.items()
        )
        _emit(args, results, text)
        return 0
    search = check_sat if args.sat else check_validity
    report = search(phi, max_states=args.max_states)
    key = "witness" if args.sat else "countermodel"
    payload = _report_payload(report, key)
    lines = [f"{report.verdict} (explored {report.states_explored} pointed models"
             f" up to {report.max_states} states)"]
    if report.found():
        lines.append(f"state {report.model.names[report.state]} of:")
        lines.append(save_model(report.model).rstrip("\n"))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_solve(args) -> int:
    model = _read_model(args.model)
    solution = solve(model)
    per = {
        model.names[w]: winner.value
        for w, winner in solution.per_initial_node.items()
    }
    game = "opponent" if solution.opponent_wins_game else "proponent"
    payload = {"initialNodes": per, "gameWinner": game}
    text = "\n".join(f"{name}: {who}" for name, who in per.items())
    _emit(args, payload, text + f"\ngame: {game}")
    return 0


def _emit_sets(args, sets, model: KripkeModel) -> None:
    as_names = [[model.names[w] for w in sorted(s)] for s in sets]
    text = "\n".join("{" + ", ".join(row) + "}" for row in as_names)
    _emit(args, as_names, text)


def cmd_semikernels(args) -> int:
    model = _read_model(args.model)
    _emit_sets(args, semi_kernels(model), model)
    return 0


def cmd_admissible(args) -> int:
    model = _read_model(args.model)
    _emit_sets(args, admissible_sets(model), model)
    return 0


def cmd_bisim(args) -> int:
    m1 = _read_model(args.model)
    m2 = _read_model(args.model2)
    w1 = m1.state_id(args.state)
    w2 = m2.state_id(args.state2)
    if args.depth is not None:
        eq = equivalent_up_to_depth(
            m1, w1, m2, w2, args.depth, multi_modal=args.multi_modal
        )
        _emit(
            args,
            {"depth": args.depth, "equivalent": eq},
            f"equivalent up to depth {args.depth}: {str(eq).lower()}",
        )
        return 0
    result = p_bisimilar(m1, w1, m2, w2, multi_modal=args.multi_modal)
    payload = {
        "bisimilar": result.bisimilar,
        "rounds": result.rounds,
        "pairsExplored": result.pairs_explored,
    }
    if result.bisimilar:
        payload["relationSize"] = len(result.relation)
        text = f"bisimilar (relation over {len(result.relation)} configuration pairs)"
    else:
        payload["witness"] = str(result.witness)
        text = f"not bisimilar; distinguishing formula: {result.witness}"
    _emit(args, payload, text)
    return 0


def cmd_translate(args) -> int:
    phi = _read_formula(args.formula)
    if args.target == "st":
        result = str(st_translate(phi, x=args.var))
    elif args.target == "mt":
        result = str(mt_translate(phi))
    else:
        result = str(ht_translate(phi))
    _emit(args, {"target": args.target, "result": result}, result)
    return 0


def cmd_verify(args) -> int:
    report = verify_duchet_meyniel(args.max_states)
    payload = {
        "ok": report.ok,
        "maxStates": report.max_states,
        "graphsChecked": report.graphs_checked,
        "proponentWinningGraphs": report.proponent_winning_graphs,
        "violations": report.violations,
    }
    if report.ok:
        text = (
            f"ok: {report.graphs_checked} graphs checked, "
            f"{report.proponent_winning_graphs} proponent-winning"
        )
    else:
        text = "\n".join(["VIOLATIONS:"] + report.violations)
    _emit(args, payload, text)
    return 0


def cmd_serve(args) -> int:
    from .server import serve

    model = _read_model(args.model) if args.model else None
    serve(args.port, model, host=args.host)
    return 0


# -- gen families -----------------------------------------------------------


def cmd_gen_delta(args) -> int:
    _emit_formula(args, delta_n(args.n))
    return 0


def cmd_gen_circuit(args) -> int:
    _emit_formula(args, circuit_formula(args.n))
    return 0


def cmd_gen_win(args) -> int:
    build = win_formula_guarded if args.guarded else win_formula
    _emit_formula(args, build(args.player, args.k))
    return 0


def cmd_gen_admissibility(args) -> int:
    _emit_formula(args, admissibility_formula(args.atom))
    return 0


def cmd_gen_validities(args) -> int:
    phi = _read_formula(args.phi)
    psi = _read_formula(args.psi)
    forms = [str(f) for f in poison_validities(phi, psi)]
    _emit(args, forms, "\n".join(forms))
    return 0


def cmd_gen_fmp(args) -> int:
    if args.parts:
        forms = [str(f) for f in fmp_conjuncts()]
        _emit(args, forms, "\n".join(forms))
    else:
        _emit_formula(args, fmp_formula())
    return 0


def _tile_set(args) -> tuple[Tile, ...]:
    if args.tiles is not None:
        with open(args.tiles, encoding="utf-8") as fh:
            doc = json.load(fh)
        if not isinstance(doc, list) or not all(
            isinstance(t, list) and len(t) == 4 for t in doc
        ):
            raise ModelFormatError(
                "tile file must be a JSON list of [top, right, bottom, left]"
            )
        return tuple(Tile(*map(str, t)) for t in doc)
    if args.preset == "incompatible":
        return vertically_incompatible_tile_set()
    return uniform_tile_set()


def cmd_gen_tiling(args) -> int:
    tiles = _tile_set(args)
    _emit_formula(args, tiling_formula(tiles, uncorrected=args.uncorrected))
    return 0


def cmd_gen_torus(args) -> int:
    tiles = _tile_set(args)
    k = args.k
    if args.assignment is not None:
        rows = args.assignment.split(",")
        try:
            grid = [[int(ch) for ch in row] for row in rows]
        except ValueError:
            raise EvalError("assignment rows must be strings of tile digits")
        for row in grid:
            for idx in row:
                if not 0 <= idx < len(tiles):
                    raise EvalError(f"tile index {idx} out of range")
    else:
        grid = [[0] * k for _ in range(k)]
    _emit_model(args, torus_grid_model(k, tiles, grid))
    return 0


def cmd_gen_demo(args) -> int:
    _emit_model(args, demo_graph())
    return 0


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument(
        "--format", choices=("json", "text"), default="json",
        help="output format (default json)",
    )

    parser = argparse.ArgumentParser(
        prog="pml",
        description="Poison modal logic: model checking, the poison game, "
        "translations, and formula generators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "check", parents=[fmt],
        help="evaluate a formula on a model, or search for a (counter)model",
    )
    p.add_argument("--formula", required=True, help="formula text or @file")
    p.add_argument("--model", help="model JSON path (omit to search)")
    p.add_argument("--state", help="state name to evaluate at")
    p.add_argument("--sat", action="store_true",
                   help="model-free mode: search a satisfying model "
                   "instead of a countermodel")
    p.add_argument("--max-states", type=int, default=3,
                   help="search bound for model-free mode (default 3)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", parents=[fmt],
                       help="winning regions of the poison game")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("semikernels", parents=[fmt],
                       help="all nonempty semi-kernels of the graph")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_semikernels)

    p = sub.add_parser("admissible", parents=[fmt],
                       help="all admissible sets of the attack graph")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("bisim", parents=[fmt],
                       help="poison-bisimilarity of two pointed models")
    p.add_argument("--model", required=True, help="left model path")
    p.add_argument("--state", required=True, help="left state name")
    p.add_argument("--model2", required=True, help="right model path")
    p.add_argument("--state2", required=True, help="right state name")
    p.add_argument("--depth", type=int,
                   help="only check equivalence up to this modal depth")
    p.add_argument("--multi-modal", action="store_true",
                   help="allow several relations (clause per index)")
    p.set_defaults(func=cmd_bisim)

    p = sub.add_parser("translate", parents=[fmt],
                       help="translate into first-order, memory, or hybrid form")
    p.add_argument("--formula", required=True)
    p.add_argument("--target", choices=("st", "mt", "ht"), required=True)
    p.add_argument("--var", default="x",
                   help="free variable for the st target (default x)")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser(
        "verify", parents=[fmt],
        help="cross-check game solving against semi-kernel search on all "
        "small graphs",
    )
    p.add_argument("--max-states", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", parents=[fmt],
                       help="run the interactive play HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--model", help="model JSON path (default: demo graph)")
    p.set_defaults(func=cmd_serve)

    gen = sub.add_parser("gen", help="emit formula families and fixture models")
    gsub = gen.add_subparsers(dest="family", required=True)

    g = gsub.add_parser("delta", parents=[fmt],
                        help="circuit-detection formula body")
    g.add_argument("--n", type=int, required=True)
    g.set_defaults(func=cmd_gen_delta)

    g = gsub.add_parser("circuit", parents=[fmt],
                        help="poison-wrapped circuit formula")
    g.add_argument("--n", type=int, required=True)
    g.set_defaults(func=cmd_gen_circuit)

    g = gsub.add_parser("win", parents=[fmt],
                        help="winning-region formula prefix")
    g.add_argument("--player", choices=("proponent", "opponent"),
                   required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--guarded", action="store_true",
                   help="guarded fixpoint variant (matches the solver)")
    g.set_defaults(func=cmd_gen_win)

    g = gsub.add_parser("admissibility", parents=[fmt],
                        help="admissible-extension formula")
    g.add_argument("--atom", default="p")
    g.set_defaults(func=cmd_gen_admissibility)

    g = gsub.add_parser("validities", parents=[fmt],
                        help="the six stock validities")
    g.add_argument("--phi", default="p")
    g.add_argument("--psi", default="q")
    g.set_defaults(func=cmd_gen_validities)

    g = gsub.add_parser("fmp", parents=[fmt],
                        help="formula with only infinite models")
    g.add_argument("--parts", action="store_true",
                   help="emit the five conjuncts separately")
    g.set_defaults(func=cmd_gen_fmp)

    for name, fn, with_k in (
        ("tiling", cmd_gen_tiling, False),
        ("torus", cmd_gen_torus, True),
    ):
        g = gsub.add_parser(name, parents=[fmt])
        g.add_argument("--tiles", help="JSON file of [top,right,bottom,left] tiles")
        g.add_argument("--preset", choices=("uniform", "incompatible"),
                       default="uniform")
        if with_k:
            g.add_argument("--k", type=int, required=True)
            g.add_argument("--assignment",
                           help="rows of tile digits, e.g. 01,10")
        else:
            g.add_argument("--uncorrected", action="store_true",
                           help="reproduce the unfaithful compatibility "
                           "disjunctions for audit")
        g.set_defaults(func=fn)

    g = gsub.add_parser("demo", parents=[fmt],
                        help="the six-node demonstration graph")
    g.set_defaults(func=cmd_gen_demo)

    return parser


_KINDS = (
    (ParseError, "parse"),
    (ModelFormatError, "model"),
    (BudgetError, "budget"),
    (IllegalMoveError, "move"),
    (UnsupportedConstructError, "unsupported"),
    (EvalError, "eval"),
    (PmlError, "domain"),
)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error:io: {exc}", file=sys.stderr)
        return 1
    except PmlError as exc:
        kind = next(k for cls, k in _KINDS if isinstance(exc, cls))
        print(f"error:{kind}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
