// Spawns the real play service for a test file and tears it down after.

import { ChildProcess, spawn } from "node:child_process";
import { setTimeout as sleep } from "node:timers/promises";

import { PmlApi } from "../src/api.js";

export interface Service {
  base: string;
  api: PmlApi;
  stop(): Promise<void>;
}

async function healthy(api: PmlApi, child: ChildProcess): Promise<boolean> {
  for (let i = 0; i < 100; i++) {
    if (child.exitCode !== null) return false;
    try {
      const h = await api.health();
      if (h.status === "ok") return true;
    } catch {
      // not listening yet
    }
    await sleep(100);
  }
  return false;
}

function shutdown(child: ChildProcess): Promise<void> {
  return new Promise((resolve) => {
    if (child.exitCode !== null) return resolve();
    const force = setTimeout(() => child.kill("SIGKILL"), 3000);
    child.once("exit", () => {
      clearTimeout(force);
      resolve();
    });
    child.kill("SIGTERM");
  });
}

export async function startService(): Promise<Service> {
  for (let attempt = 0; attempt < 3; attempt++) {
    const port = 17000 + Math.floor(Math.random() * 4000);
    const child = spawn(
      "python3",
      ["-m", "pml.cli", "serve", "--port", String(port)],
      { stdio: "ignore" },
    );
    const base = `http://127.0.0.1:${port}`;
    const api = new PmlApi(base);
    if (await healthy(api, child)) {
      return { base, api, stop: () => shutdown(child) };
    }
    await shutdown(child);
  }
  throw new Error("could not start the play service");
}

/** Deterministic uniform stream so episode scripts replay identically. */
export function seededRandom(seed: number): () => number {
  let s = seed >>> 0;
  return () => {
    s = (Math.imul(s, 1664525) + 1013904223) >>> 0;
    return s / 2 ** 32;
  };
}

export function pick<T>(rand: () => number, items: T[]): T {
  if (items.length === 0) throw new Error("empty choice");
  return items[Math.min(items.length - 1, Math.floor(rand() * items.length))]!;
}
