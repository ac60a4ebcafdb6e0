use crate::cpoly::ScalarPoly;
use crate::error::{Error, Result};
use crate::filters::{check_lowpass, check_qmf, FilterBank};
use crate::linalg::{c64, C64};
use crate::polyloop::CERT_TOL;

/// Iterations used when the caller has no preference.
pub const DEFAULT_LEVELS: usize = 10;
/// `|m₀(1) − √N|` allowed before the cascade refuses to run.
pub const LOWPASS_TOL: f64 = 1e-8;
/// Support threshold relative to the largest sample.
pub const SUPPORT_REL_TOL: f64 = 1e-9;
/// Largest grid the cascade will allocate.
pub const MAX_SAMPLES: usize = 1 << 26;

/// Step function on `[0, len·N^{−level})`, constant on each cell
/// `[i·N^{−level}, (i+1)·N^{−level})`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    n: usize,
    genus: usize,
    level: usize,
    values: Vec<C64>,
}

impl SampledFunction {
    pub fn new(n: usize, genus: usize, level: usize, values: Vec<C64>) -> Result<Self> {
        if n < 2 || genus == 0 {
            return Err(Error::WrongDimension(format!(
                "sampled function needs N >= 2 and g >= 1, got N = {n}, g = {genus}"
            )));
        }
        Ok(SampledFunction { n, genus, level, values })
    }

    /// Indicator of `[0, 1)`.
    pub fn unit_box(n: usize, genus: usize) -> Result<Self> {
        Self::new(n, genus, 0, vec![c64(1.0, 0.0)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Cell width `N^{−level}`.
    pub fn step(&self) -> f64 {
        (self.n as f64).powi(-(self.level as i32))
    }

    /// Left endpoint of cell `i`.
    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.step()
    }

    /// `[0, Ng − 1]`.
    pub fn support_window(&self) -> (f64, f64) {
        (0.0, (self.n * self.genus - 1) as f64)
    }

    /// `(Ng − 1)/(N − 1)`, the fixed point of `S ↦ (S + Ng − 1)/N`.
    pub fn sharper_bound(&self) -> f64 {
        (self.n * self.genus - 1) as f64 / (self.n - 1) as f64
    }

    /// `∫ f`.
    pub fn mass(&self) -> C64 {
        self.values.iter().sum::<C64>() * self.step()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Default absolute support threshold.
    pub fn support_tol(&self) -> f64 {
        SUPPORT_REL_TOL * self.max_abs()
    }

    /// Value at `x` (zero off the sampled range).
    pub fn value_at(&self, x: f64) -> C64 {
        if x < 0.0 {
            return c64(0.0, 0.0);
        }
        let i = (x / self.step()).floor() as usize;
        self.values.get(i).copied().unwrap_or(c64(0.0, 0.0))
    }

    /// The same step function written on the finer grid of `level`.
    pub fn at_level(&self, level: usize) -> Result<SampledFunction> {
        assert!(level >= self.level, "cannot coarsen a step function");
        let rep = self.n.pow((level - self.level) as u32);
        let len = self.values.len() * rep;
        if len > MAX_SAMPLES {
            return Err(Error::CascadeTooLarge(len));
        }
        let values = self.values.iter().flat_map(|&v| std::iter::repeat_n(v, rep)).collect();
        Ok(SampledFunction { level, values, ..*self })
    }
}

/// One application of the refinement mask: `g(x) = √N Σₖ aₖ f(Nx − k)`
/// where `aₖ` are the coefficients of `mask`. Exact on the grid one level up.
pub fn refine(mask: &ScalarPoly, f: &SampledFunction) -> Result<SampledFunction> {
    let n = f.n;
    let shift = n.pow(f.level as u32);
    let len = f.values.len() + mask.degree() * shift;
    if len > MAX_SAMPLES {
        return Err(Error::CascadeTooLarge(len));
    }
    // aₖ·N/√N rather than aₖ·√N: exact for the Haar taps 1/√2
    let root = (n as f64).sqrt();
    let mut out = vec![c64(0.0, 0.0); len];
    for (k, &a) in mask.coeffs().iter().enumerate() {
        if a == c64(0.0, 0.0) {
            continue;
        }
        let w = a * n as f64 / root;
        let dst = &mut out[k * shift..k * shift + f.values.len()];
        for (o, v) in dst.iter_mut().zip(&f.values) {
            *o += w * v;
        }
    }
    Ok(SampledFunction { n, genus: f.genus, level: f.level + 1, values: out })
}

fn lowpass_gap(m0: &ScalarPoly, n: usize) -> f64 {
    (m0.eval(c64(1.0, 0.0)) - c64((n as f64).sqrt(), 0.0)).norm()
}

fn cascade_from_box(m0: &ScalarPoly, n: usize, genus: usize, levels: usize) -> Result<SampledFunction> {
    let mut f = SampledFunction::unit_box(n, genus)?;
    for _ in 0..levels {
        f = refine(m0, &f)?;
    }
    Ok(f)
}

/// `levels` cascade steps from the indicator of `[0, 1)`.
pub fn cascade_scaling(m0: &ScalarPoly, n: usize, levels: usize) -> Result<SampledFunction> {
    if n < 2 {
        return Err(Error::WrongDimension(format!("cascade needs N >= 2, got {n}")));
    }
    let gap = lowpass_gap(m0, n);
    if !(gap <= LOWPASS_TOL) {
        return Err(Error::LowPassViolated(gap));
    }
    cascade_from_box(m0, n, m0.degree() / n + 1, levels)
}

/// `φ` after `levels` steps together with `ψᵢ = refine(mᵢ, φ)` for
/// `i = 1, …, N−1`. The wavelets live one level finer than `φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletSet {
    pub scaling: SampledFunction,
    pub wavelets: Vec<SampledFunction>,
}

pub fn cascade_wavelets(bank: &FilterBank, levels: usize) -> Result<WaveletSet> {
    let n = bank.n();
    if n < 2 {
        return Err(Error::WrongDimension(format!("cascade needs N >= 2, got {n}")));
    }
    let qmf = check_qmf(bank, CERT_TOL);
    if !qmf.pass {
        return Err(Error::BankNotUnitary(qmf.max_defect));
    }
    let m0 = bank.filter(0);
    if !check_lowpass(n, m0, LOWPASS_TOL).pass {
        return Err(Error::LowPassViolated(lowpass_gap(m0, n)));
    }
    let scaling = cascade_from_box(m0, n, bank.genus(), levels)?;
    let wavelets = (1..n).map(|i| refine(bank.filter(i), &scaling)).collect::<Result<Vec<_>>>()?;
    Ok(WaveletSet { scaling, wavelets })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportReport {
    /// Smallest grid interval outside which every sample is at most the
    /// threshold; `None` for the zero function.
    pub interval: Option<(f64, f64)>,
    /// `[0, Ng − 1]`.
    pub window: (f64, f64),
    /// `(Ng − 1)/(N − 1)`; the cascade limit cannot reach past it.
    pub sharper_bound: f64,
    pub within_window: bool,
    /// `hi ≤ (Ng−1)/(N−1) + N^{−level}`, which holds for every iterate from the box.
    pub within_sharper: bool,
    /// `∫ |f|` over the part of the grid outside the window.
    pub tail_mass: f64,
}

pub fn support_report(f: &SampledFunction, tol: f64) -> SupportReport {
    let step = f.step();
    let first = f.values.iter().position(|z| z.norm() > tol);
    let last = f.values.iter().rposition(|z| z.norm() > tol);
    let interval = first.zip(last).map(|(a, b)| (a as f64 * step, (b + 1) as f64 * step));
    let window = f.support_window();
    let sharper_bound = f.sharper_bound();
    let tail_mass = f
        .values
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            let x = i as f64 * step;
            x < window.0 || x + step > window.1 + 1e-12
        })
        .map(|(_, z)| z.norm() * step)
        .sum();
    let (within_window, within_sharper) = match interval {
        None => (true, true),
        Some((lo, hi)) => (lo >= window.0 && hi <= window.1 + 1e-12, hi <= sharper_bound + step + 1e-12),
    };
    SupportReport { interval, window, sharper_bound, within_window, within_sharper, tail_mass }
}

/// Integer-shift inner products `⟨f, f(· − k)⟩` for `|k| ≤ Ng`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoDiagnostic {
    pub shifts: Vec<(i64, C64)>,
}

impl OrthoDiagnostic {
    pub fn value(&self, k: i64) -> Option<C64> {
        self.shifts.iter().find(|(s, _)| *s == k).map(|(_, v)| *v)
    }

    /// `max_k |⟨f, f(· − k)⟩ − δₖ₀|`.
    pub fn max_deviation(&self) -> f64 {
        self.shifts
            .iter()
            .map(|&(k, v)| (v - if k == 0 { c64(1.0, 0.0) } else { c64(0.0, 0.0) }).norm())
            .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation() <= tol
    }
}

/// The products of step functions on a common grid are computed exactly, so
/// this is a plain cell sum rather than a quadrature approximation.
pub fn orthonormality_diagnostic(f: &SampledFunction) -> OrthoDiagnostic {
    let reach = (f.n * f.genus) as i64;
    let cells = f.n.pow(f.level as u32);
    let step = f.step();
    let shifts = (-reach..=reach)
        .map(|k| {
            let off = k.unsigned_abs() as usize * cells;
            let mut acc = c64(0.0, 0.0);
            if off < f.values.len() {
                let (a, b) = (&f.values[off..], &f.values[..f.values.len() - off]);
                // ⟨f, f(·−k)⟩ pairs f[i] with f[i − k·cells]
                for (x, y) in a.iter().zip(b) {
                    acc += if k >= 0 { x * y.conj() } else { y * x.conj() };
                }
            }
            (k, acc * step)
        })
        .collect();
    OrthoDiagnostic { shifts }
}
