/* tslint:disable */
/* eslint-disable */

export class CascadePlot {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    column(i: number): Float64Array;
    column_count(): number;
    n(): number;
    /**
     * Right end of the numerical support of `φ`.
     */
    support_hi(): number;
    /**
     * `Ng − 1`.
     */
    window_hi(): number;
    xs(): Float64Array;
}

export class SpectrumComparison {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    closed_form(): Float64Array;
    /**
     * `[re₀, im₀, re₁, im₁, …]`.
     */
    computed(): Float64Array;
    /**
     * Optimal-matching distance between the two multisets.
     */
    distance(): number;
}

export class WindingTrace {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * McMillan degree read off the determinant polynomial.
     */
    degree(): number;
    /**
     * `det A(z)` at evenly spaced points of the circle, interleaved.
     */
    det(): Float64Array;
    /**
     * Winding number from the unwrapped phase.
     */
    winding(): number;
}

export function cascade_plot(re: Float64Array, im: Float64Array, n: number, levels: number): CascadePlot;

export function det_winding(n: number, factors: number, seed: number, samples: number): WindingTrace;

/**
 * Low-pass filter of a random loop, interleaved `[re₀, im₀, …]`.
 */
export function random_lowpass(n: number, genus: number, seed: number): Float64Array;

export function sigma_spectrum(n: number, seed: number): SpectrumComparison;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_cascadeplot_free: (a: number, b: number) => void;
    readonly __wbg_spectrumcomparison_free: (a: number, b: number) => void;
    readonly __wbg_windingtrace_free: (a: number, b: number) => void;
    readonly cascade_plot: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly cascadeplot_column: (a: number, b: number) => [number, number];
    readonly cascadeplot_column_count: (a: number) => number;
    readonly cascadeplot_n: (a: number) => number;
    readonly cascadeplot_support_hi: (a: number) => number;
    readonly cascadeplot_window_hi: (a: number) => number;
    readonly cascadeplot_xs: (a: number) => [number, number];
    readonly det_winding: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly random_lowpass: (a: number, b: number, c: number) => [number, number];
    readonly sigma_spectrum: (a: number, b: number) => [number, number, number];
    readonly spectrumcomparison_closed_form: (a: number) => [number, number];
    readonly spectrumcomparison_computed: (a: number) => [number, number];
    readonly spectrumcomparison_distance: (a: number) => number;
    readonly windingtrace_degree: (a: number) => number;
    readonly windingtrace_det: (a: number) => [number, number];
    readonly windingtrace_winding: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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
