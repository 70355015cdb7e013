/* tslint:disable */
/* eslint-disable */

/**
 * Fidelity of the superradiant state on a uniform grid, one array per protocol.
 */
export class Curves {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly dd: Float64Array;
    /**
     * Empty when `n_duty` was 0.
     */
    readonly finite: Float64Array;
    readonly free_decay: Float64Array;
    readonly times: Float64Array;
    readonly zeno: Float64Array;
}

/**
 * Free, Zeno (interval `tau`), instantaneous and, for `n_duty > 0`,
 * finite-pulse decoupling curves over `[0, t_max]`.
 */
export function fidelity_curves(lambda: number, omega: number, tau: number, n_duty: number, t_max: number, samples: number): Curves;

/**
 * Largest gap between the closed-form decoupled amplitude and a direct
 * integration of the memory-kernel equations with step `dt`.
 */
export function oracle_deviation(lambda: number, omega: number, tau: number, t_max: number, dt: number): number;

/**
 * Rows `m, A_m, B_m` of the instantaneous-pulse recursion, tab separated.
 */
export function recursion_table(lambda: number, omega: number, tau: number, rows: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curves_free: (a: number, b: number) => void;
    readonly curves_dd: (a: number) => [number, number];
    readonly curves_finite: (a: number) => [number, number];
    readonly curves_free_decay: (a: number) => [number, number];
    readonly curves_times: (a: number) => [number, number];
    readonly curves_zeno: (a: number) => [number, number];
    readonly fidelity_curves: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly oracle_deviation: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly recursion_table: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
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
