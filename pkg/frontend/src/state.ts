// Client-side game state. The client never decides legality itself: it
// gates clicks on the legal-move list the server sent with the current
// position, and everything it displays comes from the last server doc.

import {
  ApiError,
  CreateOptions,
  PmlApi,
  Role,
  SessionDoc,
} from "./api.js";

/** Raised before any request is sent, when a move fails the local gate. */
export class RejectedMove extends Error {
  constructor(
    readonly to: string,
    readonly reason: "game-over" | "not-your-turn" | "not-legal",
  ) {
    super(`move to ${to} rejected: ${reason}`);
    this.name = "RejectedMove";
  }
}

export class GameClient {
  private constructor(
    private readonly api: PmlApi,
    private readonly opts: CreateOptions,
    private current: SessionDoc,
  ) {}

  static async create(api: PmlApi, opts: CreateOptions = {}): Promise<GameClient> {
    return new GameClient(api, opts, await api.createSession(opts));
  }

  get doc(): SessionDoc {
    return this.current;
  }

  get role(): Role {
    return this.current.role;
  }

  get winner(): Role | null {
    return this.current.position.winner ?? null;
  }

  get myTurn(): boolean {
    return this.winner === null && this.current.position.toMove === this.role;
  }

  /** Why a click on `to` would be rejected, or null if it may be sent. */
  gate(to: string): RejectedMove["reason"] | null {
    if (this.winner !== null) return "game-over";
    if (!this.myTurn) return "not-your-turn";
    if (!this.current.legalMoves.includes(to)) return "not-legal";
    return null;
  }

  canMove(to: string): boolean {
    return this.gate(to) === null;
  }

  /** Send a gated move; the reply (with any engine answer) replaces state. */
  async submit(to: string): Promise<SessionDoc> {
    const reason = this.gate(to);
    if (reason !== null) throw new RejectedMove(to, reason);
    this.current = await this.api.move(this.current.sessionId, to);
    return this.current;
  }

  /** The moves this client's human has made, in order. */
  humanMoves(): string[] {
    return this.current.history
      .filter((h) => h.mover === this.role)
      .map((h) => h.to);
  }

  /**
   * Take back the last human move by replaying everything before it into
   * a fresh session. Engine replies are deterministic, so the replay
   * reproduces the exact position.
   */
  async undo(): Promise<SessionDoc> {
    const moves = this.humanMoves();
    if (moves.length === 0) throw new RejectedMove("", "not-legal");
    let doc = await this.api.createSession(this.opts);
    for (const to of moves.slice(0, -1)) {
      doc = await this.api.move(doc.sessionId, to);
    }
    const old = this.current.sessionId;
    this.current = doc;
    await this.api.deleteSession(old).catch((e: unknown) => {
      if (!(e instanceof ApiError)) throw e;
    });
    return this.current;
  }

  async refresh(): Promise<SessionDoc> {
    this.current = await this.api.getSession(this.current.sessionId);
    return this.current;
  }

  async hint() {
    return this.api.hint(this.current.sessionId);
  }

  async whatif(to: string) {
    return this.api.whatif(this.current.sessionId, to);
  }

  async close(): Promise<void> {
    await this.api.deleteSession(this.current.sessionId).catch(() => undefined);
  }
}
