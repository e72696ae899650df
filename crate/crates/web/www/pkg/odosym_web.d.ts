/* tslint:disable */
/* eslint-disable */

/**
 * Image of that fixed point under the local rule of `M`, with the
 * membership verdict; no cells when `M` is rejected.
 */
export function apply_symmetry(l: string, f: string, m: string, seed: string, radius: number): string;

/**
 * Normalizer group of a `2 x 2` expansion, e.g. `"2,-1;1,5"`.
 */
export function classify_matrix(matrix: string): string;

/**
 * Fixed point of the digit substitution of `(L, F)` on `[-radius, radius]^2`.
 * An empty `f` uses the Hermite box digits, an empty `seed` the first digit.
 */
export function fixed_point(l: string, f: string, seed: string, radius: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly apply_symmetry: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number];
    readonly classify_matrix: (a: number, b: number) => [number, number];
    readonly fixed_point: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
