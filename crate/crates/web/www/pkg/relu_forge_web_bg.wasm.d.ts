/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_errormap_free: (a: number, b: number) => void;
export const __wbg_profile_free: (a: number, b: number) => void;
export const analytic_profile: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const errormap_bound: (a: number) => number;
export const errormap_errors: (a: number) => [number, number];
export const errormap_measured: (a: number) => number;
export const errormap_n: (a: number) => number;
export const errormap_summary: (a: number) => [number, number];
export const multiply_error_map: (a: number, b: number) => [number, number, number];
export const profile_approx: (a: number) => [number, number];
export const profile_bound: (a: number) => number;
export const profile_exact: (a: number) => [number, number];
export const profile_measured: (a: number) => number;
export const profile_summary: (a: number) => [number, number];
export const profile_xs: (a: number) => [number, number];
export const square_profile: (a: number, b: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
