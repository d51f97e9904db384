// Thin typed client for the play service. Every call returns the server's
// JSON verbatim; the server is the single source of truth for rules.

export type Role = "proponent" | "opponent";

export interface Position {
  token: string | null;
  poisoned: string[];
  toMove: Role;
  started: boolean;
  winner?: Role;
}

export interface EngineMove {
  move: string | null;
  losing: boolean;
}

export interface HistoryEntry {
  mover: Role;
  to: string;
}

export interface SessionDoc {
  sessionId: string;
  role: Role;
  position: Position;
  legalMoves: string[];
  evaluations: Record<string, Role>;
  history: HistoryEntry[];
  engineMove?: EngineMove | null;
}

export interface ModelDoc {
  states: string[];
  relations: [string, string][][];
  valuation?: Record<string, string[]>;
  poison?: string[][];
}

export interface CreateOptions {
  role?: Role;
  model?: ModelDoc;
}

export interface WhatIf {
  to: string;
  legal: boolean;
  rule?: string;
  evaluation?: "winning" | "losing";
}

export interface Hint {
  move: string | null;
  losing: boolean;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly kind: string,
    message: string,
    readonly rule?: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function parse<T>(res: Response): Promise<T> {
  const body = (await res.json().catch(() => ({}))) as Record<string, unknown>;
  if (!res.ok) {
    throw new ApiError(
      res.status,
      typeof body.error === "string" ? body.error : "unknown",
      typeof body.message === "string" ? body.message : res.statusText,
      typeof body.rule === "string" ? body.rule : undefined,
    );
  }
  return body as T;
}

export class PmlApi {
  constructor(readonly base: string) {}

  private url(path: string): string {
    return this.base.replace(/\/$/, "") + path;
  }

  async health(): Promise<{ status: string; sessions: number }> {
    return parse(await fetch(this.url("/health")));
  }

  async createSession(opts: CreateOptions = {}): Promise<SessionDoc> {
    return parse(
      await fetch(this.url("/session"), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(opts),
      }),
    );
  }

  async getSession(id: string): Promise<SessionDoc> {
    return parse(await fetch(this.url(`/session/${id}`)));
  }

  async move(id: string, to: string): Promise<SessionDoc> {
    return parse(
      await fetch(this.url(`/session/${id}/move`), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ to }),
      }),
    );
  }

  async hint(id: string): Promise<Hint> {
    return parse(await fetch(this.url(`/session/${id}/hint`)));
  }

  async whatif(id: string, to: string): Promise<WhatIf> {
    const q = encodeURIComponent(to);
    return parse(await fetch(this.url(`/session/${id}/whatif?to=${q}`)));
  }

  async deleteSession(id: string): Promise<{ deleted: string }> {
    return parse(
      await fetch(this.url(`/session/${id}`), { method: "DELETE" }),
    );
  }
}
