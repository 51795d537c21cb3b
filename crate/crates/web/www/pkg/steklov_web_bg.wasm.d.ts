/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_solution_free: (a: number, b: number) => void;
export const eigenvalues: (a: number, b: number) => [number, number, number, number];
export const solution_boundary_trace: (a: number, b: number) => [number, number];
export const solution_grid: (a: number, b: number) => [number, number, number, number];
export const solution_modes: (a: number) => number;
export const solution_new: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const solution_value: (a: number, b: number, c: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
