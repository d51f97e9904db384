// Scripted episodes against the live engine. The engine proponent must
// never lose the six-state board, and the engine opponent must win its
// stronghold every time, with the human side played adversarially from a
// seeded script.

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { CLASSIC, STRONGHOLD } from "../src/boards.js";
import { GameClient } from "../src/state.js";
import { pick, seededRandom, Service, startService } from "./helpers.js";

let service: Service;

beforeAll(async () => {
  service = await startService();
});

afterAll(async () => {
  await service.stop();
});

async function criterion(name: string, work: () => Promise<void>): Promise<void> {
  try {
    await work();
  } catch (err) {
    console.error(`acceptance FAIL: ${name}`);
    throw err;
  }
  console.error(`acceptance PASS: ${name}`);
}

describe("engine episodes", () => {
  it("the engine proponent never loses the six-state board", async () => {
    await criterion("engine-proponent-never-loses", async () => {
      const rand = seededRandom(42);
      for (let episode = 0; episode < 100; episode++) {
        const client = await GameClient.create(service.api, {
          role: "opponent",
          model: CLASSIC,
        });
        // the first 30 scripts consult the server's own evaluation and
        // play perfectly; the rest roam at random
        const perfect = episode < 30;
        for (let ply = 0; ply < 12 && client.winner === null; ply++) {
          const legal = client.doc.legalMoves;
          expect(legal.length).toBeGreaterThan(0);
          let move = pick(rand, legal);
          if (perfect) {
            for (const cand of legal) {
              const what = await client.whatif(cand);
              if (what.evaluation === "winning") {
                move = cand;
                break;
              }
            }
          }
          await client.submit(move);
          expect(client.winner).not.toBe("opponent");
        }
        expect(client.winner).not.toBe("opponent");
        await client.close();
      }
    });
  });

  it("the engine opponent wins its stronghold every time", async () => {
    await criterion("engine-opponent-always-wins", async () => {
      const rand = seededRandom(7);
      for (let episode = 0; episode < 100; episode++) {
        const client = await GameClient.create(service.api, {
          role: "proponent",
          model: STRONGHOLD,
        });
        let plies = 0;
        while (client.winner === null) {
          expect(plies++).toBeLessThan(20);
          const legal = client.doc.legalMoves;
          expect(legal.length).toBeGreaterThan(0);
          await client.submit(pick(rand, legal));
        }
        expect(client.winner).toBe("opponent");
        await client.close();
      }
    });
  });
});
