/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curves_free: (a: number, b: number) => void;
export const curves_dd: (a: number) => [number, number];
export const curves_finite: (a: number) => [number, number];
export const curves_free_decay: (a: number) => [number, number];
export const curves_times: (a: number) => [number, number];
export const curves_zeno: (a: number) => [number, number];
export const fidelity_curves: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const oracle_deviation: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const recursion_table: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
