/* tslint:disable */
/* eslint-disable */

/**
 * Connectivity, cut-set weights and the failure polynomial of a graph in
 * the `k n` / `i j` text format, evaluated at `eps`.
 */
export function analyze_graph_json(text: string, eps: string): string;

/**
 * Lower bound, upper bound, and (for small ensembles) the exact expected
 * failure probability on a log-spaced grid.
 */
export function bound_curve_json(k: number, n: number, min: number, max: number, points: number): string;

/**
 * Bounds on the probability that a graph drawn from the ensemble is
 * unconnected, with the exact value when the ensemble is small enough.
 */
export function unconnected_bounds_json(k: number, n: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_graph_json: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly bound_curve_json: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly unconnected_bounds_json: (a: number, b: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
