// Pure SVG rendering: session doc + board model in, markup out. Click
// targets carry data-state attributes; wiring them up is main's job.

import { ModelDoc, SessionDoc } from "./api.js";
import { Point } from "./layout.js";

const NODE_R = 22;

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function arrow(a: Point, b: Point, selfLoop: boolean): string {
  if (selfLoop) {
    const x = a.x;
    const y = a.y - NODE_R;
    return (
      `<path class="edge" d="M ${x - 8} ${y + 2} ` +
      `C ${x - 26} ${y - 30}, ${x + 26} ${y - 30}, ${x + 8} ${y + 2}" ` +
      `marker-end="url(#arrow)"/>`
    );
  }
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const dist = Math.sqrt(dx * dx + dy * dy) || 1;
  // stop at the node border so the arrowhead stays visible
  const sx = a.x + (dx / dist) * NODE_R;
  const sy = a.y + (dy / dist) * NODE_R;
  const tx = b.x - (dx / dist) * (NODE_R + 6);
  const ty = b.y - (dy / dist) * (NODE_R + 6);
  // bow the line slightly so opposite edges do not overlap
  const mx = (sx + tx) / 2 - dy / dist * 10;
  const my = (sy + ty) / 2 + dx / dist * 10;
  return (
    `<path class="edge" d="M ${sx} ${sy} Q ${mx} ${my} ${tx} ${ty}" ` +
    `marker-end="url(#arrow)"/>`
  );
}

export function renderBoard(
  doc: SessionDoc,
  model: ModelDoc,
  layout: Map<string, Point>,
  width = 640,
  height = 420,
): string {
  const pos = doc.position;
  const poisoned = new Set(pos.poisoned);
  const legal = new Set(doc.legalMoves);
  const clickable = pos.winner === undefined && pos.toMove === doc.role;

  const parts: string[] = [];
  parts.push(
    `<svg viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg">`,
    `<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" ` +
      `markerWidth="7" markerHeight="7" orient="auto-start-reverse">` +
      `<path d="M 0 0 L 10 5 L 0 10 z"/></marker></defs>`,
  );

  for (const rel of model.relations) {
    for (const [a, b] of rel) {
      const pa = layout.get(a);
      const pb = layout.get(b);
      if (pa && pb) parts.push(arrow(pa, pb, a === b));
    }
  }

  for (const name of model.states) {
    const p = layout.get(name);
    if (!p) continue;
    const classes = ["node"];
    if (poisoned.has(name)) classes.push("poisoned");
    if (pos.token === name) classes.push("token");
    if (clickable && legal.has(name)) classes.push("legal");
    parts.push(
      `<g class="${classes.join(" ")}" data-state="${esc(name)}">` +
        `<circle cx="${p.x}" cy="${p.y}" r="${NODE_R}"/>` +
        `<text x="${p.x}" y="${p.y}" dy="0.35em">${esc(name)}</text>` +
        `</g>`,
    );
  }

  parts.push("</svg>");
  return parts.join("");
}

export function statusLine(doc: SessionDoc): string {
  const pos = doc.position;
  if (pos.winner !== undefined) {
    const yours = pos.winner === doc.role;
    return `Game over: ${pos.winner} wins${yours ? " — that is you" : ""}.`;
  }
  if (!pos.started) {
    return doc.role === "proponent"
      ? "Place the token on any node to open."
      : "Waiting for the opening.";
  }
  return pos.toMove === doc.role
    ? "Your move: pick a highlighted node."
    : "Engine is thinking.";
}
