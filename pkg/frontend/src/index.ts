/**
 * Suite / Observer / Problem handles over the blackbench core.
 *
 * Mirrors the core experiment API: iterate a Suite, observe each
 * problem, call it like a black box, check `final_target_hit` and
 * `evaluations` for the restart loop. All numeric state lives in the
 * core; the handles cache only what the last response reported.
 */

import { Bridge } from "./bridge.js";

export { Bridge, BridgeError } from "./bridge.js";

export interface SuiteOptions {
  dimensions?: number[];
  instances?: number[];
}

export interface ObserverOptions {
  result_folder: string;
  algorithm_name: string;
  algorithm_info?: string;
}

interface ProblemAttrs {
  dimension: number;
  lower_bounds: number[];
  upper_bounds: number[];
  initial_solution: number[];
  evaluations: number;
  final_target_hit: boolean;
  final_target_offset: number;
}

export interface ProblemDescriptor {
  suite_index: number;
  function_id: number;
  dimension: number;
  instance_id: number;
}

export class Problem {
  readonly descriptor: ProblemDescriptor;
  readonly dimension: number;
  readonly lower_bounds: readonly number[];
  readonly upper_bounds: readonly number[];
  readonly final_target_offset: number;

  private bridge: Bridge;
  private attrs: ProblemAttrs;

  constructor(bridge: Bridge, descriptor: ProblemDescriptor, attrs: ProblemAttrs) {
    this.bridge = bridge;
    this.descriptor = descriptor;
    this.attrs = attrs;
    this.dimension = attrs.dimension;
    this.lower_bounds = attrs.lower_bounds;
    this.upper_bounds = attrs.upper_bounds;
    this.final_target_offset = attrs.final_target_offset;
  }

  /** Fresh copy of the suggested starting point (the box center). */
  get initial_solution(): number[] {
    return [...this.attrs.initial_solution];
  }

  get evaluations(): number {
    return this.attrs.evaluations;
  }

  get final_target_hit(): boolean {
    return this.attrs.final_target_hit;
  }

  async evaluate(x: readonly number[]): Promise<number> {
    const result = await this.bridge.request("evaluate", {
      index: this.descriptor.suite_index,
      x: [...x],
    });
    this.attrs.evaluations = result.evaluations as number;
    this.attrs.final_target_hit = result.final_target_hit as boolean;
    return result.f as number;
  }

  /** Close the observed run block; returns the budget written. */
  async finalize(): Promise<number> {
    const result = await this.bridge.request("finalize", {
      index: this.descriptor.suite_index,
    });
    return result.budget_used as number;
  }
}

export class Observer {
  readonly folder: string;
  private bridge: Bridge;

  private constructor(bridge: Bridge, folder: string) {
    this.bridge = bridge;
    this.folder = folder;
  }

  static async create(bridge: Bridge, options: ObserverOptions): Promise<Observer> {
    const result = await bridge.request("observer", {
      result_folder: options.result_folder,
      algorithm_name: options.algorithm_name,
      algorithm_info: options.algorithm_info ?? "",
    });
    return new Observer(bridge, result.folder as string);
  }

  /** Attach logging to a problem; evaluations flow through unchanged. */
  async observe(problem: Problem): Promise<Problem> {
    await this.bridge.request("observe", { index: problem.descriptor.suite_index });
    return problem;
  }
}

export class Suite implements AsyncIterable<Problem> {
  readonly name: string;
  readonly length: number;

  private bridge: Bridge;
  private descriptors: ProblemDescriptor[];

  private constructor(
    bridge: Bridge,
    name: string,
    descriptors: ProblemDescriptor[],
  ) {
    this.bridge = bridge;
    this.name = name;
    this.length = descriptors.length;
    this.descriptors = descriptors;
  }

  static async create(
    bridge: Bridge,
    name: string,
    options: SuiteOptions = {},
  ): Promise<Suite> {
    const created = await bridge.request("suite", {
      name,
      dimensions: options.dimensions ?? null,
      instances: options.instances ?? null,
    });
    const listed = await bridge.request("descriptors");
    const descriptors = listed.descriptors as ProblemDescriptor[];
    if (descriptors.length !== (created.count as number)) {
      throw new Error("suite descriptor count mismatch");
    }
    return new Suite(bridge, created.name as string, descriptors);
  }

  async problem(index: number): Promise<Problem> {
    const descriptor = this.descriptors[index];
    if (descriptor === undefined) {
      throw new RangeError(`suite index ${index} out of range [0, ${this.length})`);
    }
    const attrs = await this.bridge.request("problem", { index });
    return new Problem(this.bridge, descriptor, attrs as unknown as ProblemAttrs);
  }

  /** Problems in suite-index order, created lazily. */
  async *[Symbol.asyncIterator](): AsyncIterator<Problem> {
    for (let index = 0; index < this.length; index++) {
      yield await this.problem(index);
    }
  }
}
