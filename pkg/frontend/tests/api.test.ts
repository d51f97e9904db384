import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError } from "../src/api.js";
import { STRONGHOLD } from "../src/boards.js";
import { Service, startService } from "./helpers.js";

let service: Service;

beforeAll(async () => {
  service = await startService();
});

afterAll(async () => {
  await service.stop();
});

describe("service client", () => {
  it("reports health", async () => {
    const h = await service.api.health();
    expect(h.status).toBe("ok");
  });

  it("creates a proponent session on the default board", async () => {
    const doc = await service.api.createSession();
    expect(doc.role).toBe("proponent");
    expect(doc.position.started).toBe(false);
    expect(doc.position.toMove).toBe("proponent");
    expect(doc.legalMoves).toEqual(["1", "2", "3", "4", "5", "6"]);
    expect(doc.engineMove).toBeUndefined();
    expect(Object.keys(doc.evaluations)).toHaveLength(6);
  });

  it("lets the engine open when the human is the opponent", async () => {
    const doc = await service.api.createSession({ role: "opponent" });
    expect(doc.role).toBe("opponent");
    expect(doc.engineMove?.move).toBeTypeOf("string");
    expect(doc.position.started).toBe(true);
    expect(doc.position.toMove).toBe("opponent");
    expect(doc.history).toHaveLength(1);
  });

  it("plays a move and gets the engine reply in the same response", async () => {
    const doc = await service.api.createSession();
    const after = await service.api.move(doc.sessionId, "1");
    expect(after.history[0]).toEqual({ mover: "proponent", to: "1" });
    expect(after.history).toHaveLength(2);
    expect(after.engineMove?.move).toBe(after.history[1]!.to);
    expect(after.position.poisoned).toContain(after.history[1]!.to);
  });

  it("surfaces rule violations with status and rule", async () => {
    const doc = await service.api.createSession();
    const err = await service.api.move(doc.sessionId, "zz").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(409);
    expect((err as ApiError).kind).toBe("illegal-move");
    expect((err as ApiError).rule).toBe("unknown-state");
  });

  it("accepts an inline model", async () => {
    const doc = await service.api.createSession({ model: STRONGHOLD });
    expect(doc.legalMoves).toEqual(["1", "2"]);
    expect(doc.evaluations).toEqual({ "1": "opponent", "2": "opponent" });
  });

  it("rejects a broken model", async () => {
    const err = await service.api
      .createSession({ model: { states: [], relations: [] } })
      .catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(400);
    expect((err as ApiError).kind).toBe("bad-model");
  });

  it("answers hints and hypotheticals", async () => {
    const doc = await service.api.createSession();
    const hint = await service.api.hint(doc.sessionId);
    expect(hint.move).toBeTypeOf("string");
    expect(hint.losing).toBe(false);
    const what = await service.api.whatif(doc.sessionId, hint.move!);
    expect(what.legal).toBe(true);
    expect(what.evaluation).toBe("winning");
  });

  it("deletes sessions", async () => {
    const doc = await service.api.createSession();
    const gone = await service.api.deleteSession(doc.sessionId);
    expect(gone.deleted).toBe(doc.sessionId);
    const err = await service.api.getSession(doc.sessionId).catch((e) => e);
    expect((err as ApiError).status).toBe(404);
    expect((err as ApiError).kind).toBe("unknown-session");
  });
});
