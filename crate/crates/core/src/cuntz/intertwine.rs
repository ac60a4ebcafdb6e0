use crate::error::{Error, Result};
use crate::linalg::{c64, CMat, C64};
use crate::polyloop::PolyLoop;

use super::corner::corner_isometries_padded;
use super::sigma::{echelon_basis, fixed_point_space, sigma_matrix, FIXED_TOL};

/// Fixed points of `σ^{(B,A)}`, which correspond to intertwiners from the
/// representation of `A` to that of `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntertwinerReport {
    pub padded_genus: usize,
    pub dimension: usize,
    pub basis: Vec<CMat>,
    pub disjoint: bool,
    /// `Σᵢ conj(A_{i,0}^{(0)}) B_{i,0}^{(0)}`, the eigenvalue of `E₀,₀`.
    pub e00_scalar: C64,
    pub e00_fixed: bool,
    /// `e00_fixed` holds exactly when the scalar is 1.
    pub scalar_consistent: bool,
}

pub fn intertwiner_space(a: &PolyLoop, b: &PolyLoop) -> Result<IntertwinerReport> {
    intertwiner_space_padded(a, b, a.genus().max(b.genus()))
}

/// As [`intertwiner_space`] with both corners sized for genus `g_pad`.
pub fn intertwiner_space_padded(a: &PolyLoop, b: &PolyLoop, g_pad: usize) -> Result<IntertwinerReport> {
    if a.n() != b.n() {
        return Err(Error::ScaleMismatch(a.n(), b.n()));
    }
    let g = g_pad.max(a.genus()).max(b.genus());
    let ma = corner_isometries_padded(a, g)?;
    let mb = corner_isometries_padded(b, g)?;
    let s = sigma_matrix(&mb, &ma)?;
    let fixed = fixed_point_space(&s, FIXED_TOL);
    let basis = echelon_basis(&fixed, 1e-8);

    let (a0, b0) = (a.coeff(0), b.coeff(0));
    let e00_scalar: C64 = (0..a.n()).map(|i| a0[(i, 0)].conj() * b0[(i, 0)]).sum();
    let mut e00 = CMat::zeros(mb.dim(), ma.dim());
    e00[(0, 0)] = c64(1.0, 0.0);
    let e00_fixed = (s.apply(&e00) - &e00).norm() < 1e-9;
    let scalar_is_one = (e00_scalar - 1.0).norm() < 1e-9;

    Ok(IntertwinerReport {
        padded_genus: g,
        dimension: fixed.len(),
        disjoint: fixed.is_empty(),
        basis,
        e00_scalar,
        e00_fixed,
        scalar_consistent: e00_fixed == scalar_is_one,
    })
}

/// Dimension of `span{f X e : X fixed}`: the intertwiners between the
/// subrepresentations cut out by fixed projections `e` and `f`.
pub fn summand_intertwiner_dim(fixed: &[CMat], e: &CMat, f: &CMat) -> usize {
    let images: Vec<CMat> = fixed.iter().map(|x| f * x * e).collect();
    if images.is_empty() {
        return 0;
    }
    let len = images[0].len();
    let m = CMat::from_fn(len, images.len(), |r, c| images[c].as_slice()[r]);
    let s = crate::linalg::svd_sorted(&m).0;
    s.iter().filter(|&&x| x > 1e-8).count()
}
