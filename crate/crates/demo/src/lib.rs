//! Three browser views over `loopbank`: a cascade plot, the genus-2 σ
//! spectrum against its closed form, and the winding of `det A(z)`.
//! The plain functions hold the logic; the `#[wasm_bindgen]` wrappers only
//! convert errors.

use std::f64::consts::PI;

use loopbank::cascade::cascade_wavelets;
use loopbank::cpoly::circle_points;
use loopbank::cuntz::{corner_isometries, sigma_matrix, spectrum, GenusTwoClosedForm};
use loopbank::filters::{complete_lowpass, loop_to_filters};
use loopbank::linalg::{c64, multiset_distance, C64};
use loopbank::polyloop::{compose, mcmillan_degree};
use loopbank::sample::Sampler;
use loopbank::{ElementaryFactor, LowPassCandidate, ScalarPoly};
use wasm_bindgen::prelude::*;

/// Largest cascade depth offered; keeps the grid small enough for a page.
pub const MAX_LEVELS: usize = 12;

#[wasm_bindgen]
pub struct CascadePlot {
    n: usize,
    xs: Vec<f64>,
    /// `φ` then `ψ₁ … ψ_{N−1}`, real parts, all on the grid `xs`.
    columns: Vec<Vec<f64>>,
    support_hi: f64,
    window_hi: f64,
}

#[wasm_bindgen]
impl CascadePlot {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn xs(&self) -> Vec<f64> {
        self.xs.clone()
    }

    pub fn column(&self, i: usize) -> Vec<f64> {
        self.columns.get(i).cloned().unwrap_or_default()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    /// Right end of the numerical support of `φ`.
    pub fn support_hi(&self) -> f64 {
        self.support_hi
    }

    /// `Ng − 1`.
    pub fn window_hi(&self) -> f64 {
        self.window_hi
    }
}

/// Complete the low-pass filter `m0 = re + i·im` at scale `n` and run
/// `levels` cascade steps from the box. A short `im` is padded with zeros.
pub fn cascade_plot_of(re: &[f64], im: &[f64], n: usize, levels: usize) -> loopbank::Result<CascadePlot> {
    let levels = levels.min(MAX_LEVELS);
    let m0 = ScalarPoly::new(re.iter().enumerate().map(|(k, &x)| c64(x, im.get(k).copied().unwrap_or(0.0))).collect());
    let bank = complete_lowpass(&LowPassCandidate::new(n, m0)?, 1e-9)?;
    let set = cascade_wavelets(&bank, levels)?;
    let level = set.wavelets.first().map_or(set.scaling.level(), |w| w.level());
    let phi = set.scaling.at_level(level)?;
    let len = std::iter::once(&phi).chain(&set.wavelets).map(|f| f.len()).max().unwrap_or(0);
    let xs = (0..len).map(|i| phi.x(i)).collect();
    let columns = std::iter::once(&phi)
        .chain(&set.wavelets)
        .map(|f| (0..len).map(|i| f.values().get(i).map_or(0.0, |v| v.re)).collect())
        .collect();
    let report = loopbank::cascade::support_report(&set.scaling, set.scaling.support_tol());
    Ok(CascadePlot {
        n,
        xs,
        columns,
        support_hi: report.interval.map_or(0.0, |(_, hi)| hi),
        window_hi: report.window.1,
    })
}

#[wasm_bindgen]
pub struct SpectrumComparison {
    computed: Vec<C64>,
    closed_form: Vec<C64>,
    distance: f64,
}

fn interleave(zs: &[C64]) -> Vec<f64> {
    zs.iter().flat_map(|z| [z.re, z.im]).collect()
}

#[wasm_bindgen]
impl SpectrumComparison {
    /// `[re₀, im₀, re₁, im₁, …]`.
    pub fn computed(&self) -> Vec<f64> {
        interleave(&self.computed)
    }

    pub fn closed_form(&self) -> Vec<f64> {
        interleave(&self.closed_form)
    }

    /// Optimal-matching distance between the two multisets.
    pub fn distance(&self) -> f64 {
        self.distance
    }
}

/// Eigenvalues of σ for a random genus-2 loop `V(1 − Q + zQ)` next to the
/// closed-form list.
pub fn sigma_spectrum_of(n: usize, seed: u32) -> loopbank::Result<SpectrumComparison> {
    if n < 3 {
        return Err(loopbank::Error::WrongDimension(format!("closed form needs N >= 3, got {n}")));
    }
    let (_, q, a) = Sampler::new(seed as u64).vq_loop(n);
    let m = corner_isometries(&a)?;
    let computed = spectrum(&sigma_matrix(&m, &m)?)?.eigenvalues;
    let closed_form = GenusTwoClosedForm::from_projection(&q)?.spectrum();
    let distance = multiset_distance(&computed, &closed_form);
    Ok(SpectrumComparison { computed, closed_form, distance })
}

#[wasm_bindgen]
pub struct WindingTrace {
    det: Vec<C64>,
    winding: i32,
    degree: usize,
}

#[wasm_bindgen]
impl WindingTrace {
    /// `det A(z)` at evenly spaced points of the circle, interleaved.
    pub fn det(&self) -> Vec<f64> {
        interleave(&self.det)
    }

    /// Winding number from the unwrapped phase.
    pub fn winding(&self) -> i32 {
        self.winding
    }

    /// McMillan degree read off the determinant polynomial.
    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Net phase change around the closed curve, in turns.
pub fn winding_number(values: &[C64]) -> i32 {
    let mut total = 0.0;
    for (i, z) in values.iter().enumerate() {
        let next = values[(i + 1) % values.len()];
        let mut d = next.arg() - z.arg();
        if d > PI {
            d -= 2.0 * PI;
        } else if d < -PI {
            d += 2.0 * PI;
        }
        total += d;
    }
    (total / (2.0 * PI)).round() as i32
}

/// A random `n×n` loop with `factors` rank-one elementary factors.
pub fn det_winding_of(n: usize, factors: usize, seed: u32, samples: usize) -> loopbank::Result<WindingTrace> {
    let mut s = Sampler::new(seed as u64);
    let fs = s
        .rank_one_projections(n, factors)
        .into_iter()
        .map(ElementaryFactor::new)
        .collect::<loopbank::Result<Vec<_>>>()?;
    let a = compose(&fs, &s.unitary(n))?;
    let det = a.body().det_poly()?;
    let values: Vec<C64> =
        circle_points(samples.max(8), 0.0).into_iter().map(|z| det.eval_unchecked(z)[(0, 0)]).collect();
    Ok(WindingTrace { winding: winding_number(&values), degree: mcmillan_degree(&a)?, det: values })
}

fn js(e: loopbank::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn cascade_plot(re: Vec<f64>, im: Vec<f64>, n: usize, levels: usize) -> Result<CascadePlot, JsError> {
    cascade_plot_of(&re, &im, n, levels).map_err(js)
}

#[wasm_bindgen]
pub fn sigma_spectrum(n: usize, seed: u32) -> Result<SpectrumComparison, JsError> {
    sigma_spectrum_of(n, seed).map_err(js)
}

#[wasm_bindgen]
pub fn det_winding(n: usize, factors: usize, seed: u32, samples: usize) -> Result<WindingTrace, JsError> {
    det_winding_of(n, factors, seed, samples).map_err(js)
}

/// Low-pass filter of a random loop, interleaved `[re₀, im₀, …]`.
#[wasm_bindgen]
pub fn random_lowpass(n: usize, genus: usize, seed: u32) -> Vec<f64> {
    let mut s = Sampler::new(seed as u64);
    let a = s.lowpass_loop(n.max(2), genus.max(1));
    interleave(loop_to_filters(&a).filter(0).coeffs())
}
