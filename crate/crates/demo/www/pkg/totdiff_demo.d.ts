/* tslint:disable */
/* eslint-disable */

/**
 * Searches for a splitting of d^tot p and the Frobenius lift it defines.
 * A `degree_bound` of 0 uses the default bound.
 */
export function frobenius_lift(p: number, vars: string, relations: string, degree_bound: number): string;

/**
 * The presentation of the module of total p-differentials of
 * W2(F_p)[vars]/(relations).
 */
export function omega_presentation(p: number, vars: string, relations: string): string;

/**
 * Addition and multiplication tables of U_c(F_p), elements listed as
 * pairs (x0, x1) in lexicographic order.
 */
export function uc_tables(p: number, c: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly frobenius_lift: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly omega_presentation: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly uc_tables: (a: number, b: number) => [number, number];
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
