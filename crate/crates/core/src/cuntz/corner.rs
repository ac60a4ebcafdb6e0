use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{identity, op_norm, CMat};
use crate::polyloop::PolyLoop;

/// Residual allowed in `Σ VᵢVᵢ* = I` on the corner.
pub const ISOMETRY_TOL: f64 = 1e-10;

/// `r = g + ⌊(g−1)/(N−1)⌋`, so the corner is `span{e₀, e₋₁, …, e₋ᵣ}`.
pub fn corner_size(n: usize, g: usize) -> usize {
    assert!(n >= 2 && g >= 1, "corner size needs N >= 2 and g >= 1");
    (g * n - 1) / (n - 1)
}

/// Independent computation of the corner size: the largest set of integers
/// mapped onto itself by the branches `m ↦ (m − k)/N`, `k = 0, …, gN−1`
/// (integer results only). Found by pushing a wide window through the maps
/// until it stops changing; `r` is minus its smallest element.
pub fn corner_size_oracle(n: usize, g: usize) -> usize {
    assert!(n >= 2 && g >= 1, "corner size needs N >= 2 and g >= 1");
    let n = n as i64;
    let kmax = g as i64 * n - 1;
    let w = 4 * (kmax + n);
    let mut set: BTreeSet<i64> = (-w..=w).collect();
    loop {
        let mut next = BTreeSet::new();
        for &m in &set {
            for k in 0..=kmax {
                let t = m - k;
                if t.rem_euclid(n) == 0 {
                    next.insert(t.div_euclid(n));
                }
            }
        }
        if next == set {
            break;
        }
        set = next;
    }
    (-set.iter().next().copied().unwrap_or(0)).max(0) as usize
}

/// Compressions `Vᵢ = P_K Tᵢ P_K` of the Cuntz isometries to the corner
/// `K = span{e₀, …, e₋ᵣ}`. Basis index `m` stands for `e₋ₘ`.
#[derive(Debug, Clone)]
pub struct RepModel {
    n: usize,
    genus: usize,
    r: usize,
    v: Vec<CMat>,
    v_adj: Vec<CMat>,
    isometry_defect: f64,
}

impl RepModel {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Genus the corner was sized for (at least the loop's genus).
    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.r + 1
    }

    pub fn v(&self, i: usize) -> &CMat {
        &self.v[i]
    }

    pub fn v_adj(&self, i: usize) -> &CMat {
        &self.v_adj[i]
    }

    pub fn v_mats(&self) -> &[CMat] {
        &self.v
    }

    pub fn isometry_defect(&self) -> f64 {
        self.isometry_defect
    }
}

pub fn corner_isometries(a: &PolyLoop) -> Result<RepModel> {
    corner_isometries_padded(a, a.genus())
}

/// Corner model sized for genus `g_pad ≥ genus(A)`.
///
/// Columns of `Vᵢ*` come from `Tᵢ* e_{j+Nl} = Σ_k conj(A_{i,j}^{(k)}) e_{l−k}`.
pub fn corner_isometries_padded(a: &PolyLoop, g_pad: usize) -> Result<RepModel> {
    let n = a.n();
    if n < 2 {
        return Err(Error::WrongDimension("corner model needs N >= 2".into()));
    }
    let g = g_pad.max(a.genus());
    let r = corner_size(n, g);
    let dim = r + 1;
    let mut v_adj = vec![CMat::zeros(dim, dim); n];
    let ni = n as i64;
    for m in 0..dim {
        let idx = -(m as i64);
        let j = idx.rem_euclid(ni) as usize;
        let l = idx.div_euclid(ni);
        for k in 0..g {
            let target = k as i64 - l;
            if target < 0 || target > r as i64 {
                return Err(Error::CornerLeak(l - k as i64));
            }
            let coeff = a.coeff(k);
            for (i, va) in v_adj.iter_mut().enumerate() {
                va[(target as usize, m)] += coeff[(i, j)].conj();
            }
        }
    }
    let v: Vec<CMat> = v_adj.iter().map(|m| m.adjoint()).collect();
    let mut sum = CMat::zeros(dim, dim);
    for vi in &v {
        sum += vi * vi.adjoint();
    }
    let isometry_defect = op_norm(&(sum - identity(dim)));
    if isometry_defect > ISOMETRY_TOL {
        return Err(Error::IsometryDefect(isometry_defect));
    }
    Ok(RepModel { n, genus: g, r, v, v_adj, isometry_defect })
}
