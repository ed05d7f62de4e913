/* tslint:disable */
/* eslint-disable */

/**
 * `|xy - net(x, y)|` on an `n x n` grid over `[-1, 1]^2`, row-major with `y` varying fastest.
 */
export class ErrorMap {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly bound: number;
    readonly errors: Float64Array;
    readonly measured: number;
    readonly n: number;
    readonly summary: string;
}

/**
 * A net and its target sampled on a uniform 1-d grid.
 */
export class Profile {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly approx: Float64Array;
    readonly bound: number;
    readonly exact: Float64Array;
    /**
     * Largest absolute error over the samples.
     */
    readonly measured: number;
    readonly summary: string;
    readonly xs: Float64Array;
}

/**
 * Analytic construction for `exp`, `sin` or `rational` on `[-1+delta, 1-delta]`.
 */
export function analytic_profile(preset: string, eps: number, delta: number, samples: number): Profile;

/**
 * Error heatmap of the product construction.
 */
export function multiply_error_map(depth: number, n: number): ErrorMap;

/**
 * Square construction of the given depth sampled on `[-1, 1]`.
 */
export function square_profile(depth: number, samples: number): Profile;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_errormap_free: (a: number, b: number) => void;
    readonly __wbg_profile_free: (a: number, b: number) => void;
    readonly analytic_profile: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly errormap_bound: (a: number) => number;
    readonly errormap_errors: (a: number) => [number, number];
    readonly errormap_measured: (a: number) => number;
    readonly errormap_n: (a: number) => number;
    readonly errormap_summary: (a: number) => [number, number];
    readonly multiply_error_map: (a: number, b: number) => [number, number, number];
    readonly profile_approx: (a: number) => [number, number];
    readonly profile_bound: (a: number) => number;
    readonly profile_exact: (a: number) => [number, number];
    readonly profile_measured: (a: number) => number;
    readonly profile_summary: (a: number) => [number, number];
    readonly profile_xs: (a: number) => [number, number];
    readonly square_profile: (a: number, b: number) => [number, number, number];
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
