/* tslint:disable */
/* eslint-disable */

export class Solution {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Interleaved (data, approximation) pairs at `per_side` points on each of G1..G4.
     * The approximation side is u, du/dn or du/dn + b u according to the problem kind.
     */
    boundary_trace(per_side: number): Float64Array;
    /**
     * Row-major samples, x fastest, on an n x n grid over the closed rectangle.
     */
    grid(n: number): Float64Array;
    modes(): number;
    /**
     * `kind` is dirichlet, robin or neumann; `data` takes the command-line forms
     * (builtin:f1, expr:exp(x)*sin(y), or side JSON). `m` roots per family.
     */
    constructor(kind: string, data: string, h: number, m: number, b: number);
    value(x: number, y: number): number;
}

/**
 * `family, nu, delta` rows of the `count` smallest nonconstant eigenvalues, one per line.
 */
export function eigenvalues(h: number, count: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_solution_free: (a: number, b: number) => void;
    readonly eigenvalues: (a: number, b: number) => [number, number, number, number];
    readonly solution_boundary_trace: (a: number, b: number) => [number, number];
    readonly solution_grid: (a: number, b: number) => [number, number, number, number];
    readonly solution_modes: (a: number) => number;
    readonly solution_new: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly solution_value: (a: number, b: number, c: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
