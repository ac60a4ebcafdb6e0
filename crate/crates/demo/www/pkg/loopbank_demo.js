/* @ts-self-types="./loopbank_demo.d.ts" */

export class CascadePlot {
    static __wrap(ptr) {
        const obj = Object.create(CascadePlot.prototype);
        obj.__wbg_ptr = ptr;
        CascadePlotFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        CascadePlotFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_cascadeplot_free(ptr, 0);
    }
    /**
     * @param {number} i
     * @returns {Float64Array}
     */
    column(i) {
        const ret = wasm.cascadeplot_column(this.__wbg_ptr, i);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * @returns {number}
     */
    column_count() {
        const ret = wasm.cascadeplot_column_count(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * @returns {number}
     */
    n() {
        const ret = wasm.cascadeplot_n(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * Right end of the numerical support of `φ`.
     * @returns {number}
     */
    support_hi() {
        const ret = wasm.cascadeplot_support_hi(this.__wbg_ptr);
        return ret;
    }
    /**
     * `Ng − 1`.
     * @returns {number}
     */
    window_hi() {
        const ret = wasm.cascadeplot_window_hi(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {Float64Array}
     */
    xs() {
        const ret = wasm.cascadeplot_xs(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) CascadePlot.prototype[Symbol.dispose] = CascadePlot.prototype.free;

export class SpectrumComparison {
    static __wrap(ptr) {
        const obj = Object.create(SpectrumComparison.prototype);
        obj.__wbg_ptr = ptr;
        SpectrumComparisonFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        SpectrumComparisonFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_spectrumcomparison_free(ptr, 0);
    }
    /**
     * @returns {Float64Array}
     */
    closed_form() {
        const ret = wasm.spectrumcomparison_closed_form(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * `[re₀, im₀, re₁, im₁, …]`.
     * @returns {Float64Array}
     */
    computed() {
        const ret = wasm.spectrumcomparison_computed(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * Optimal-matching distance between the two multisets.
     * @returns {number}
     */
    distance() {
        const ret = wasm.spectrumcomparison_distance(this.__wbg_ptr);
        return ret;
    }
}
if (Symbol.dispose) SpectrumComparison.prototype[Symbol.dispose] = SpectrumComparison.prototype.free;

export class WindingTrace {
    static __wrap(ptr) {
        const obj = Object.create(WindingTrace.prototype);
        obj.__wbg_ptr = ptr;
        WindingTraceFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        WindingTraceFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_windingtrace_free(ptr, 0);
    }
    /**
     * McMillan degree read off the determinant polynomial.
     * @returns {number}
     */
    degree() {
        const ret = wasm.windingtrace_degree(this.__wbg_ptr);
        return ret >>> 0;
    }
    /**
     * `det A(z)` at evenly spaced points of the circle, interleaved.
     * @returns {Float64Array}
     */
    det() {
        const ret = wasm.windingtrace_det(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * Winding number from the unwrapped phase.
     * @returns {number}
     */
    winding() {
        const ret = wasm.windingtrace_winding(this.__wbg_ptr);
        return ret;
    }
}
if (Symbol.dispose) WindingTrace.prototype[Symbol.dispose] = WindingTrace.prototype.free;

/**
 * @param {Float64Array} re
 * @param {Float64Array} im
 * @param {number} n
 * @param {number} levels
 * @returns {CascadePlot}
 */
export function cascade_plot(re, im, n, levels) {
    const ptr0 = passArrayF64ToWasm0(re, wasm.__wbindgen_malloc);
    const len0 = WASM_VECTOR_LEN;
    const ptr1 = passArrayF64ToWasm0(im, wasm.__wbindgen_malloc);
    const len1 = WASM_VECTOR_LEN;
    const ret = wasm.cascade_plot(ptr0, len0, ptr1, len1, n, levels);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return CascadePlot.__wrap(ret[0]);
}

/**
 * @param {number} n
 * @param {number} factors
 * @param {number} seed
 * @param {number} samples
 * @returns {WindingTrace}
 */
export function det_winding(n, factors, seed, samples) {
    const ret = wasm.det_winding(n, factors, seed, samples);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return WindingTrace.__wrap(ret[0]);
}

/**
 * Low-pass filter of a random loop, interleaved `[re₀, im₀, …]`.
 * @param {number} n
 * @param {number} genus
 * @param {number} seed
 * @returns {Float64Array}
 */
export function random_lowpass(n, genus, seed) {
    const ret = wasm.random_lowpass(n, genus, seed);
    var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
    return v1;
}

/**
 * @param {number} n
 * @param {number} seed
 * @returns {SpectrumComparison}
 */
export function sigma_spectrum(n, seed) {
    const ret = wasm.sigma_spectrum(n, seed);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return SpectrumComparison.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./loopbank_demo_bg.js": import0,
    };
}

const CascadePlotFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_cascadeplot_free(ptr, 1));
const SpectrumComparisonFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_spectrumcomparison_free(ptr, 1));
const WindingTraceFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_windingtrace_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function passArrayF64ToWasm0(arg, malloc) {
    const ptr = malloc(arg.length * 8, 8) >>> 0;
    getFloat64ArrayMemory0().set(arg, ptr / 8);
    WASM_VECTOR_LEN = arg.length;
    return ptr;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

let WASM_VECTOR_LEN = 0;

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('loopbank_demo_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
