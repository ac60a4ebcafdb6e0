use crate::cpoly::ScalarPoly;
use crate::error::Result;
use crate::filters::loop_to_filters;
use crate::linalg::{c64, hermitian_eigen_desc, identity, CMat, CVec, C64};
use crate::polyloop::{coefficient_form, PolyLoop};

use super::corner::{corner_isometries, RepModel};
use super::reduce::{lambda0, reduce_scale, Reduction, LAMBDA0_TOL};
use super::sigma::{
    cluster, echelon_basis, fixed_point_space, off_diagonal, sigma_matrix, span_residual, spectrum, EigenCluster,
    FIXED_TOL,
};

/// Closure residual for the algebra and commutativity checks.
pub const CLOSURE_TOL: f64 = 1e-8;
/// Entries of a state column other than the diagonal one must vanish to this.
pub const STATE_TOL: f64 = 1e-10;

/// `e₋ₖ` with `Tᵢ* e₋ₖ = v̄ᵢ e₋ₖ` for all `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CuntzState {
    pub k: usize,
    pub v: Vec<C64>,
    /// Coefficient distance between `Σ v̄ᵢ mᵢ` and `z^{(N−1)k}`.
    pub filter_residual: f64,
}

/// Basis vectors `e₋ₖ` that are joint eigenvectors of every `Vᵢ*`.
pub fn cuntz_states_of(model: &RepModel, a: &PolyLoop) -> Vec<CuntzState> {
    let n = model.n();
    let bank = loop_to_filters(a);
    let mut out = Vec::new();
    for k in 0..model.dim() {
        let leak = (0..n)
            .flat_map(|i| {
                let col = model.v_adj(i).column(k);
                (0..model.dim()).filter(move |&m| m != k).map(move |m| col[m].norm())
            })
            .fold(0.0, f64::max);
        if leak > STATE_TOL {
            continue;
        }
        let c: Vec<C64> = (0..n).map(|i| model.v_adj(i)[(k, k)]).collect();
        let combo = (0..n).fold(ScalarPoly::new(vec![c64(0.0, 0.0)]), |acc, i| acc.add(&bank.filter(i).scale(c[i])));
        let filter_residual = combo.max_coeff_diff(&ScalarPoly::monomial((n - 1) * k));
        out.push(CuntzState { k, v: c.iter().map(|z| z.conj()).collect(), filter_residual });
    }
    out
}

pub fn cuntz_states(a: &PolyLoop) -> Result<Vec<CuntzState>> {
    Ok(cuntz_states_of(&corner_isometries(a)?, a))
}

/// A minimal projection of the fixed-point algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimalProjection {
    pub matrix: CMat,
    pub rank: usize,
    /// Diagonal in the basis `e₀, …, e₋ᵣ`.
    pub diagonal: bool,
    /// `k` with `e₋ₖ` in the range (meaningful for diagonal projections).
    pub basis_vectors: Vec<usize>,
    /// A unit vector in the range, cyclic for the corresponding summand.
    pub range_vector: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decomposition {
    Resolved(Vec<MinimalProjection>),
    /// The fixed set is not an abelian algebra, so no decomposition is claimed.
    NotResolved,
}

/// Explicit reducibility test for genus-2 loops `V(1 − Q + zQ)` with `N ≥ 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenusTwoCheck {
    pub q00: f64,
    pub q_last: f64,
    pub q_second_last: f64,
    pub predicted_reducible: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone)]
pub struct RepReport {
    pub n: usize,
    pub genus: usize,
    pub r: usize,
    pub spectrum: Vec<C64>,
    pub clusters: Vec<EigenCluster>,
    pub spectral_radius: f64,
    pub adjoint_mismatch: f64,
    /// Algebraic multiplicity of the eigenvalue 1.
    pub mult_one: usize,
    /// Orthonormal basis of the fixed points.
    pub fixed_basis: Vec<CMat>,
    /// Same span in reduced echelon form.
    pub fixed_echelon: Vec<CMat>,
    pub irreducible: bool,
    pub fixed_set_algebra: bool,
    pub fixed_set_abelian: bool,
    pub decomposition: Decomposition,
    pub cuntz_states: Vec<CuntzState>,
    pub lambda0: f64,
    pub reduction: Option<Reduction>,
    pub genus_two: Option<GenusTwoCheck>,
    /// Facts worth reporting that are not failures (e.g. spectral radius above
    /// 1 for higher genus).
    pub observations: Vec<String>,
}

/// Absolute distance to the span; products of basis elements from disjoint
/// summands are near zero, where a relative residual is meaningless.
fn outside_span(basis: &[CMat], x: &CMat) -> f64 {
    span_residual(basis, x) * x.norm()
}

fn closure_flags(basis: &[CMat]) -> (bool, bool) {
    let mut algebra = true;
    let mut abelian = true;
    for x in basis {
        if outside_span(basis, &x.adjoint()) > CLOSURE_TOL {
            algebra = false;
        }
        for y in basis {
            let xy = x * y;
            if outside_span(basis, &xy) > CLOSURE_TOL {
                algebra = false;
            }
            if (&xy - y * x).norm() > CLOSURE_TOL {
                abelian = false;
            }
        }
    }
    (algebra, abelian)
}

/// Spectral projections of a generic self-adjoint element of the fixed set.
fn minimal_projections(basis: &[CMat]) -> Vec<MinimalProjection> {
    let dim = basis[0].nrows();
    let golden = 0.618_033_988_749_895;
    let mut h = CMat::zeros(dim, dim);
    for (a, x) in basis.iter().enumerate() {
        let w1 = ((a as f64 + 1.0) * golden).fract() + 0.5;
        let w2 = ((a as f64 + 1.5) * golden * golden).fract() + 0.5;
        h += (x + x.adjoint()) * c64(w1, 0.0);
        h += (x - x.adjoint()) * c64(0.0, w2);
    }
    let (vals, vecs) = hermitian_eigen_desc(&h);
    let values: Vec<C64> = vals.iter().map(|&v| c64(v, 0.0)).collect();
    let groups = cluster(&values, 1e-6);
    let mut out: Vec<MinimalProjection> = groups
        .iter()
        .map(|g| {
            let idx: Vec<usize> = (0..vals.len()).filter(|&i| (vals[i] - g.value.re).abs() < 1e-6).collect();
            let mut p = CMat::zeros(dim, dim);
            for &i in &idx {
                let v = vecs.column(i);
                p += v * v.adjoint();
            }
            let diag: Vec<f64> = (0..dim).map(|k| p[(k, k)].re).collect();
            let basis_vectors: Vec<usize> = (0..dim).filter(|&k| diag[k] > 1e-8).collect();
            let best = (0..dim).max_by(|&a, &b| diag[a].total_cmp(&diag[b])).unwrap_or(0);
            let mut rv: CVec = p.column(best).into_owned();
            let norm = rv.norm();
            if norm > 0.0 {
                rv /= c64(norm, 0.0);
            }
            MinimalProjection {
                diagonal: off_diagonal(&p) < 1e-8,
                rank: idx.len(),
                basis_vectors,
                range_vector: rv.iter().copied().collect(),
                matrix: p,
            }
        })
        .collect();
    out.sort_by_key(|p| p.basis_vectors.first().copied().unwrap_or(usize::MAX));
    out
}

fn genus_two_check(a: &PolyLoop, irreducible: bool) -> Result<Option<GenusTwoCheck>> {
    let n = a.n();
    if a.genus() != 2 || n < 3 {
        return Ok(None);
    }
    let cf = coefficient_form(a)?;
    let q = &cf.projections[0];
    let q00 = q[(0, 0)].re;
    let q_last = q[(n - 1, n - 1)].re;
    let q_second_last = q[(n - 2, n - 2)].re;
    let eps = 1e-8;
    let predicted_reducible = q00.abs() < eps || (q_last.abs() < eps && (q_second_last - 1.0).abs() < eps);
    Ok(Some(GenusTwoCheck {
        q00,
        q_last,
        q_second_last,
        predicted_reducible,
        agrees: predicted_reducible != irreducible,
    }))
}

/// Full representation analysis of a certified loop.
pub fn analyze(a: &PolyLoop) -> Result<RepReport> {
    let model = corner_isometries(a)?;
    let s = sigma_matrix(&model, &model)?;
    let sp = spectrum(&s)?;
    let mult_one = sp.multiplicity(c64(1.0, 0.0));
    let fixed_basis = fixed_point_space(&s, FIXED_TOL);
    let fixed_echelon = echelon_basis(&fixed_basis, 1e-8);
    let id = identity(model.dim());
    let irreducible = fixed_basis.len() == 1 && span_residual(&fixed_basis, &id) < 1e-8;
    let (fixed_set_algebra, fixed_set_abelian) = closure_flags(&fixed_basis);
    let decomposition = if fixed_set_algebra && fixed_set_abelian && !fixed_basis.is_empty() {
        Decomposition::Resolved(minimal_projections(&fixed_basis))
    } else {
        Decomposition::NotResolved
    };

    let mut observations = Vec::new();
    let radius = sp.spectral_radius();
    if radius > 1.0 + 1e-8 {
        observations.push(format!("spectral radius {radius:.12} exceeds 1"));
    }
    if a.genus() > 2 && !(fixed_set_algebra && fixed_set_abelian) {
        observations.push("fixed-point set is not an abelian algebra".to_string());
    }
    if mult_one < fixed_basis.len() {
        observations.push(format!(
            "geometric multiplicity {} exceeds clustered algebraic multiplicity {}",
            fixed_basis.len(),
            mult_one
        ));
    }

    let genus_two = genus_two_check(a, irreducible)?;
    Ok(RepReport {
        n: a.n(),
        genus: a.genus(),
        r: model.r(),
        spectrum: sp.eigenvalues.clone(),
        clusters: sp.clusters.clone(),
        spectral_radius: radius,
        adjoint_mismatch: sp.adjoint_mismatch,
        mult_one,
        fixed_basis,
        fixed_echelon,
        irreducible,
        fixed_set_algebra,
        fixed_set_abelian,
        decomposition,
        cuntz_states: cuntz_states_of(&model, a),
        lambda0: lambda0(a),
        reduction: reduce_scale(a, LAMBDA0_TOL)?,
        genus_two,
        observations,
    })
}
