//! Each command takes document text and returns output text, so the binary
//! only handles files, flags and exit codes.

use loopbank::cascade::{cascade_wavelets, orthonormality_diagnostic, support_report, SampledFunction};
use loopbank::cuntz::{analyze, intertwiner_space};
use loopbank::filters::{check_qmf, complete_lowpass, filters_to_loop, loop_to_filters};
use loopbank::polyloop::{factorize, mcmillan_degree};
use loopbank::{Error, FilterBank, LowPassCandidate, ScalarPoly};
use serde::Serialize;

use crate::doc::{
    pair, parse_bank, parse_document, parse_loop, parse_lowpass, unpair, BankDocument, Document, LoopDocument, Pair,
    SCHEMA_VERSION,
};
use crate::error::{CliError, CliResult};
use crate::report::{FactorizationDocument, RepReportView};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    pub tol: f64,
    /// Run the load-time QMF check on banks and the post-hoc check on results.
    pub verify: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { tol: loopbank::polyloop::CERT_TOL, verify: true }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("documents serialize");
    s.push('\n');
    s
}

fn load_bank(doc: &BankDocument, opts: Options) -> CliResult<FilterBank> {
    let bank = doc.to_bank()?;
    if opts.verify {
        let qmf = check_qmf(&bank, opts.tol);
        if !qmf.pass {
            return Err(Error::BankNotUnitary(qmf.max_defect).into());
        }
    }
    Ok(bank)
}

/// Loop document to bank document or the reverse, chosen by the input.
pub fn transform(text: &str, opts: Options) -> CliResult<String> {
    match parse_document(text)? {
        Document::Loop(doc) => Ok(json(&BankDocument::from_bank(&loop_to_filters(&doc.to_loop(opts.tol)?)))),
        Document::Bank(doc) => {
            let bank = load_bank(&doc, opts)?;
            Ok(json(&LoopDocument::from_loop(&filters_to_loop(&bank, opts.tol)?)))
        }
    }
}

pub fn complete(text: &str, n_flag: Option<usize>, opts: Options) -> CliResult<String> {
    let doc = parse_lowpass(text)?;
    let n = match (n_flag, doc.n) {
        (Some(a), Some(b)) if a != b => return Err(Error::ScaleMismatch(a, b).into()),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(CliError::Schema("N missing: give --n or an \"n\" field".into())),
    };
    if doc.m0.is_empty() {
        return Err(CliError::Schema("m0 needs at least one coefficient".into()));
    }
    let m0 = ScalarPoly::new(doc.m0.iter().map(unpair).collect());
    let bank = complete_lowpass(&LowPassCandidate::new(n, m0)?, opts.tol)?;
    if opts.verify {
        let qmf = check_qmf(&bank, opts.tol);
        if !qmf.pass {
            return Err(Error::FactorizationCheck(qmf.max_defect).into());
        }
    }
    Ok(json(&BankDocument::from_bank(&bank)))
}

pub fn factorize_cmd(text: &str, opts: Options) -> CliResult<String> {
    let a = parse_loop(text)?.to_loop(opts.tol)?;
    let f = factorize(&a)?;
    Ok(json(&FactorizationDocument::new(a.n(), &f)))
}

pub fn degree(text: &str, opts: Options) -> CliResult<String> {
    let a = parse_loop(text)?.to_loop(opts.tol)?;
    Ok(format!("{}\n", mcmillan_degree(&a)?))
}

pub fn analyze_rep(text: &str, against: Option<&str>, opts: Options) -> CliResult<String> {
    let a = parse_loop(text)?.to_loop(opts.tol)?;
    let report = analyze(&a)?;
    let inter = match against {
        Some(t) => Some(intertwiner_space(&a, &parse_loop(t)?.to_loop(opts.tol)?)?),
        None => None,
    };
    Ok(json(&RepReportView::new(&report, inter.as_ref())))
}

#[derive(Debug, Serialize)]
struct SupportView {
    interval: Option<(f64, f64)>,
    window: (f64, f64),
    sharper_bound: f64,
    within_window: bool,
    within_sharper: bool,
    tail_mass: f64,
}

#[derive(Debug, Serialize)]
struct FunctionView {
    name: String,
    level: usize,
    samples: usize,
    mass: Pair,
    max_abs: f64,
    support: SupportView,
}

#[derive(Debug, Serialize)]
struct CascadeReport {
    schema_version: &'static str,
    n: usize,
    genus: usize,
    iterations: usize,
    functions: Vec<FunctionView>,
    /// `⟨φ, φ(· − k)⟩` for `|k| ≤ Ng`.
    scaling_shifts: Vec<(i64, Pair)>,
    scaling_orthonormality_deviation: f64,
}

fn function_view(name: String, f: &SampledFunction) -> FunctionView {
    let r = support_report(f, f.support_tol());
    FunctionView {
        name,
        level: f.level(),
        samples: f.len(),
        mass: pair(f.mass()),
        max_abs: f.max_abs(),
        support: SupportView {
            interval: r.interval,
            window: r.window,
            sharper_bound: r.sharper_bound,
            within_window: r.within_window,
            within_sharper: r.within_sharper,
            tail_mass: r.tail_mass,
        },
    }
}

/// Returns the JSON report and the CSV table `x, φ, ψ₁ … ψ_{N−1}` (real and
/// imaginary columns) on the grid of the wavelets.
pub fn cascade(text: &str, iterations: usize, opts: Options) -> CliResult<(String, String)> {
    let bank = load_bank(&parse_bank(text)?, opts)?;
    let set = cascade_wavelets(&bank, iterations)?;
    let ortho = orthonormality_diagnostic(&set.scaling);
    let mut functions = vec![function_view("phi".into(), &set.scaling)];
    functions.extend(set.wavelets.iter().enumerate().map(|(i, w)| function_view(format!("psi{}", i + 1), w)));
    let report = CascadeReport {
        schema_version: SCHEMA_VERSION,
        n: bank.n(),
        genus: bank.genus(),
        iterations,
        functions,
        scaling_shifts: ortho.shifts.iter().map(|&(k, v)| (k, pair(v))).collect(),
        scaling_orthonormality_deviation: ortho.max_deviation(),
    };

    let level = set.wavelets.first().map_or(set.scaling.level(), |w| w.level());
    let mut columns = vec![set.scaling.at_level(level)?];
    columns.extend(set.wavelets.iter().cloned());
    let rows = columns.iter().map(|c| c.len()).max().unwrap_or(0);
    let mut csv = String::from("x,phi_re,phi_im");
    for i in 1..bank.n() {
        csv.push_str(&format!(",psi{i}_re,psi{i}_im"));
    }
    csv.push('\n');
    let grid = &columns[0];
    for i in 0..rows {
        csv.push_str(&grid.x(i).to_string());
        for c in &columns {
            let v = c.values().get(i).copied().unwrap_or_default();
            csv.push_str(&format!(",{},{}", v.re, v.im));
        }
        csv.push('\n');
    }
    Ok((json(&report), csv))
}

#[cfg(test)]
mod tests {
    use super::*;

    const HAAR: &str = r#"{"schema_version":"1","n":2,"filters":[[[0.7071067811865476,0],[0.7071067811865476,0]],[[0.7071067811865476,0],[-0.7071067811865476,0]]]}"#;

    #[test]
    fn haar_bank_is_a_constant_loop() {
        let out = transform(HAAR, Options::default()).unwrap();
        let doc = parse_loop(&out).unwrap();
        assert_eq!(doc.genus, 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(doc.coeffs[0], vec![vec![[s, 0.0], [s, 0.0]], vec![[s, 0.0], [-s, 0.0]]]);
        let back = parse_bank(&transform(&out, Options::default()).unwrap()).unwrap();
        assert_eq!(back, parse_bank(HAAR).unwrap());
    }

    #[test]
    fn identity_loop_gives_shift_bank() {
        let id = r#"{"schema_version":"1","n":3,"genus":1,"coeffs":[[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]]}"#;
        let bank = parse_bank(&transform(id, Options::default()).unwrap()).unwrap();
        for (i, f) in bank.filters.iter().enumerate() {
            assert_eq!(f.len(), i + 1);
            assert_eq!(f[i], [1.0, 0.0]);
        }
    }

    #[test]
    fn mismatched_scale_is_rejected() {
        let m0 = r#"{"schema_version":"1","n":2,"m0":[[1,0]]}"#;
        let err = complete(m0, Some(3), Options::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn haar_cascade_csv_is_exact() {
        let (report, csv) = cascade(HAAR, 3, Options::default()).unwrap();
        assert!(report.contains("\"within_window\":true"));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,phi_re,phi_im,psi1_re,psi1_im");
        assert_eq!(lines.len(), 1 + 16);
        assert_eq!(lines[1], "0,1,0,1,0");
        assert_eq!(lines[16], "0.9375,1,0,-1,0");
    }
}
