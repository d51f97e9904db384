// Browser wiring: one session at a time, clicks gated by the client,
// every shown position taken verbatim from the server.

import { ModelDoc, PmlApi, Role } from "./api.js";
import { BOARDS, CLASSIC } from "./boards.js";
import { layoutGraph } from "./layout.js";
import { renderBoard, statusLine } from "./render.js";
import { GameClient } from "./state.js";

function apiBase(): string {
  const param = new URLSearchParams(window.location.search).get("api");
  return param ?? "http://127.0.0.1:8000";
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const api = new PmlApi(apiBase());
let client: GameClient | null = null;
let board: ModelDoc = CLASSIC;
let busy = false;

function edgesOf(model: ModelDoc): [string, string][] {
  return model.relations.flat();
}

function redraw(note = ""): void {
  if (!client) return;
  const doc = client.doc;
  const layout = layoutGraph(board.states, edgesOf(board));
  el("board").innerHTML = renderBoard(doc, board, layout);
  el("status").textContent = note || statusLine(doc);
  const history = doc.history
    .map((h) => `${h.mover === "proponent" ? "P" : "O"}:${h.to}`)
    .join("  ");
  el("history").textContent = history || "(no moves yet)";
  const evals = Object.entries(doc.evaluations)
    .map(([name, who]) => `${name}→${who === "proponent" ? "P" : "O"}`)
    .join("  ");
  el("evals").textContent = `openings: ${evals}`;
  (el("undo") as HTMLButtonElement).disabled =
    busy || client.humanMoves().length === 0;
  (el("hint") as HTMLButtonElement).disabled = busy || !client.myTurn;
}

async function guarded(work: () => Promise<string | void>): Promise<void> {
  if (busy) return;
  busy = true;
  let note = "";
  try {
    note = (await work()) ?? "";
  } catch (err) {
    note = err instanceof Error ? err.message : String(err);
  } finally {
    busy = false;
  }
  redraw(note);
}

async function newGame(): Promise<void> {
  const role = (el<HTMLSelectElement>("role")).value as Role;
  const boardName = el<HTMLSelectElement>("boardPick").value;
  board = BOARDS[boardName] ?? CLASSIC;
  await guarded(async () => {
    if (client) await client.close();
    client = await GameClient.create(api, { role, model: board });
  });
}

function onBoardClick(event: Event): void {
  const target = (event.target as Element).closest("[data-state]");
  if (!target || !client) return;
  const to = target.getAttribute("data-state");
  if (to === null) return;
  const reason = client.gate(to);
  if (reason !== null) {
    redraw(`Move to ${to} rejected: ${reason}.`);
    return;
  }
  void guarded(async () => {
    await client!.submit(to);
  });
}

async function onHint(): Promise<void> {
  if (!client) return;
  await guarded(async () => {
    const hint = await client!.hint();
    if (hint.move === null) return "No move available.";
    return `Hint: ${hint.move}${hint.losing ? " (position is lost anyway)" : ""}.`;
  });
}

function boot(): void {
  el("board").addEventListener("click", onBoardClick);
  el("newGame").addEventListener("click", () => void newGame());
  el("undo").addEventListener("click", () =>
    void guarded(async () => {
      await client!.undo();
    }),
  );
  el("hint").addEventListener("click", () => void onHint());
  void newGame();
}

document.addEventListener("DOMContentLoaded", boot);
