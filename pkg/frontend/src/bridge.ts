/**
 * Line-oriented client for the blackbench stdio bridge.
 *
 * Spawns `python -m blackbench.bridge`, reads the one-line greeting,
 * then exchanges one JSON object per line. Requests are serialized:
 * a request is only written after the previous response arrived, which
 * also enforces the one-evaluation-at-a-time contract per handle.
 */

import { spawn, type ChildProcessByStdio } from "node:child_process";
import { createInterface, type Interface } from "node:readline";
import type { Readable, Writable } from "node:stream";

type BridgeProcess = ChildProcessByStdio<Writable, Readable, null>;

export interface BridgeGreeting {
  blackbench_bridge: number;
  backend: string;
}

interface BridgeResponse {
  id: number;
  ok: boolean;
  result?: Record<string, unknown>;
  error?: string;
}

export class BridgeError extends Error {}

export class Bridge {
  readonly greeting: BridgeGreeting;

  private proc: BridgeProcess;
  private lines: AsyncIterator<string>;
  private chain: Promise<unknown> = Promise.resolve();
  private nextId = 0;
  private closed = false;

  private constructor(
    proc: BridgeProcess,
    lines: AsyncIterator<string>,
    greeting: BridgeGreeting,
  ) {
    this.proc = proc;
    this.lines = lines;
    this.greeting = greeting;
  }

  static async start(python = "python3"): Promise<Bridge> {
    const proc = spawn(python, ["-m", "blackbench.bridge"], {
      stdio: ["pipe", "pipe", "inherit"],
    });
    const reader: Interface = createInterface({ input: proc.stdout });
    const lines = reader[Symbol.asyncIterator]();
    const first = await lines.next();
    if (first.done) {
      throw new BridgeError("bridge exited before greeting (is blackbench installed?)");
    }
    const greeting = JSON.parse(first.value) as BridgeGreeting;
    if (greeting.blackbench_bridge !== 1) {
      throw new BridgeError(`unsupported bridge protocol ${greeting.blackbench_bridge}`);
    }
    return new Bridge(proc, lines, greeting);
  }

  /** Send one request and await its result; rejects on error responses. */
  request(op: string, params: Record<string, unknown> = {}): Promise<Record<string, unknown>> {
    const run = async (): Promise<Record<string, unknown>> => {
      if (this.closed) {
        throw new BridgeError("bridge is closed");
      }
      const id = ++this.nextId;
      this.proc.stdin.write(JSON.stringify({ id, op, ...params }) + "\n");
      const next = await this.lines.next();
      if (next.done) {
        throw new BridgeError("bridge closed the stream mid-request");
      }
      const response = JSON.parse(next.value) as BridgeResponse;
      if (response.id !== id) {
        throw new BridgeError(`response id ${response.id} does not match request ${id}`);
      }
      if (!response.ok) {
        throw new BridgeError(response.error ?? "bridge error");
      }
      return response.result ?? {};
    };
    const result = this.chain.then(run, run);
    this.chain = result.catch(() => undefined);
    return result;
  }

  async close(): Promise<void> {
    if (this.closed) return;
    try {
      await this.request("shutdown");
    } catch {
      // the process may already be gone
    }
    this.closed = true;
    this.proc.stdin.end();
  }
}
