/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_cascadeplot_free: (a: number, b: number) => void;
export const __wbg_spectrumcomparison_free: (a: number, b: number) => void;
export const __wbg_windingtrace_free: (a: number, b: number) => void;
export const cascade_plot: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const cascadeplot_column: (a: number, b: number) => [number, number];
export const cascadeplot_column_count: (a: number) => number;
export const cascadeplot_n: (a: number) => number;
export const cascadeplot_support_hi: (a: number) => number;
export const cascadeplot_window_hi: (a: number) => number;
export const cascadeplot_xs: (a: number) => [number, number];
export const det_winding: (a: number, b: number, c: number, d: number) => [number, number, number];
export const random_lowpass: (a: number, b: number, c: number) => [number, number];
export const sigma_spectrum: (a: number, b: number) => [number, number, number];
export const spectrumcomparison_closed_form: (a: number) => [number, number];
export const spectrumcomparison_computed: (a: number) => [number, number];
export const spectrumcomparison_distance: (a: number) => number;
export const windingtrace_degree: (a: number) => number;
export const windingtrace_det: (a: number) => [number, number];
export const windingtrace_winding: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
