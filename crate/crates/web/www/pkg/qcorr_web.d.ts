/* tslint:disable */
/* eslint-disable */

/**
 * Full report for a StateSpec JSON document.
 */
export function analyze_state(spec: string): string;

/**
 * Pair PCCs in a frame given by two rotation vectors (`angles[0..3]` for
 * side A, `angles[3..6]` for side B) applied to the Pauli frame.
 */
export function frame_pccs(spec: string, angles: Float64Array): string;

/**
 * Sweep rows for `family` ("werner" or "horodecki") as a JSON array.
 */
export function sweep_family(family: string, p_min: number, p_max: number, steps: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_state: (a: number, b: number) => [number, number, number, number];
    readonly frame_pccs: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly sweep_family: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
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
