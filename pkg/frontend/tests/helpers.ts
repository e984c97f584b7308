// Spawns a real service process for the end-to-end tests and tears it
// down afterwards. The explorer talks to it over HTTP only.

import { execFile, spawn } from "node:child_process";
import type { ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";

export interface LiveService {
  base: string;
  stop: () => Promise<void>;
}

function waitForExit(child: ChildProcess): Promise<void> {
  return new Promise((resolve) => {
    if (child.exitCode !== null || child.signalCode !== null) {
      resolve();
      return;
    }
    child.once("exit", () => resolve());
  });
}

export async function startService(args: string[] = []): Promise<LiveService> {
  const child = spawn("densify", ["serve", "--port", "0", ...args], {
    stdio: ["ignore", "pipe", "pipe"],
  });

  const base = await new Promise<string>((resolve, reject) => {
    let seen = "";
    const timer = setTimeout(() => {
      reject(new Error(`service did not announce a port; output: ${seen}`));
    }, 20_000);
    child.stdout.on("data", (chunk: Buffer) => {
      seen += chunk.toString();
      const match = seen.match(/listening on (http:\/\/[\d.]+:\d+)/);
      if (match) {
        clearTimeout(timer);
        resolve(match[1]);
      }
    });
    child.stderr.on("data", (chunk: Buffer) => {
      seen += chunk.toString();
    });
    child.once("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`service exited early (${code}); output: ${seen}`));
    });
  });

  return {
    base,
    stop: async () => {
      child.kill("SIGTERM");
      await waitForExit(child);
    },
  };
}

export function fixturePath(name: string): string {
  return fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));
}

/** Write the clustered synthetic preset to a temp file via the CLI. */
export function generateParcel(total = 160_000, seed = 0): Promise<string> {
  const out = join(mkdtempSync(join(tmpdir(), "explorer-")), "parcel.csv");
  return new Promise((resolve, reject) => {
    execFile(
      "densify",
      ["generate", "--preset", "parcel", "--total", String(total), "--seed", String(seed), "--out", out],
      (error) => (error ? reject(error) : resolve(out))
    );
  });
}

/** Population variance of occupied-SA densities, from histogram bars. */
export function histogramVariance(
  bars: { density: number; saCount: number }[]
): number {
  const total = bars.reduce((s, b) => s + b.saCount, 0);
  if (total === 0) return 0;
  const mean = bars.reduce((s, b) => s + b.density * b.saCount, 0) / total;
  return (
    bars.reduce((s, b) => s + b.saCount * (b.density - mean) ** 2, 0) / total
  );
}
