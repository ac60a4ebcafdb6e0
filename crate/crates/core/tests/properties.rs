use loopbank::cascade::{cascade_scaling, refine, support_report, SampledFunction};
use loopbank::cpoly::circle_points;
use loopbank::cuntz::{
    analyze, corner_isometries, corner_isometries_padded, intertwiner_space, intertwiner_space_padded, lambda0,
    sigma_adjoint_direct, sigma_matrix, spectrum, Decomposition, GenusTwoClosedForm,
};
use loopbank::filters::{
    complete_lowpass, filters_to_loop, loop_to_filters, row_reduction_step, LowPassCandidate, RowData,
};
use loopbank::linalg::{c64, identity, multiset_distance, op_norm, CMat};
use loopbank::polyloop::{compose, factorize, mcmillan_degree, ElementaryFactor};
use loopbank::sample::{random_matpoly, Sampler};
use loopbank::{MatPoly, ScalarPoly};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn loop_dist(a: &MatPoly, b: &MatPoly) -> f64 {
    circle_points(16, 0.37)
        .into_iter()
        .map(|z| op_norm(&(a.eval_unchecked(z) - b.eval_unchecked(z))))
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn eval_is_a_homomorphism(seed in any::<u64>(), n in 1usize..5, dp in 0usize..4, dq in 0usize..4) {
        let mut s = Sampler::new(seed);
        let p = random_matpoly(&mut s, n, n, dp);
        let q = random_matpoly(&mut s, n, n, dq);
        let sum = p.add(&q).unwrap();
        let prod = p.mul(&q).unwrap();
        let adj = p.adjoint();
        prop_assert!(prod.degree() <= p.degree() + q.degree());
        for _ in 0..16 {
            let z = s.circle_point();
            let (pz, qz) = (p.eval(z).unwrap(), q.eval(z).unwrap());
            let scale = 1.0 + pz.norm() * qz.norm();
            prop_assert!((sum.eval(z).unwrap() - (&pz + &qz)).norm() < 1e-12 * scale);
            prop_assert!((prod.eval(z).unwrap() - &pz * &qz).norm() < 1e-12 * scale);
            prop_assert!((adj.eval(z).unwrap() - pz.adjoint()).norm() < 1e-12 * scale);
        }
    }

    #[test]
    fn trimming_keeps_values(seed in any::<u64>(), n in 1usize..4, d in 0usize..5) {
        let mut s = Sampler::new(seed);
        let mut coeffs = random_matpoly(&mut s, n, n, d).into_coeffs();
        coeffs.push(CMat::from_element(n, n, c64(1e-13, 0.0)));
        let raw = MatPoly::from_raw(coeffs.clone()).unwrap();
        let trimmed = MatPoly::new(coeffs).unwrap();
        prop_assert_eq!(trimmed.degree(), d);
        prop_assert!(loop_dist(&raw, &trimmed) < 1e-13 * (1 + n) as f64);
    }

    #[test]
    fn det_is_multiplicative(seed in any::<u64>(), n in 2usize..5, ga in 1usize..4, gb in 1usize..4) {
        let mut s = Sampler::new(seed);
        let a = s.genus_loop(n, ga);
        let b = s.genus_loop(n, gb);
        let ab = a.mul(&b).unwrap();
        let lhs = ab.body().det_poly().unwrap();
        let rhs = a.body().det_poly().unwrap().mul(&b.body().det_poly().unwrap()).unwrap();
        let len = lhs.degree().max(rhs.degree()) + 1;
        for k in 0..len {
            prop_assert!((lhs.coeff(k) - rhs.coeff(k)).norm() < 1e-10);
        }
    }

    #[test]
    fn factor_compose_round_trip(seed in any::<u64>(), n in 2usize..6, d in 0usize..7) {
        let mut s = Sampler::new(seed);
        let factors: Vec<ElementaryFactor> = s
            .rank_one_projections(n, d)
            .into_iter()
            .map(|p| ElementaryFactor::new(p).unwrap())
            .collect();
        let a = compose(&factors, &s.unitary(n)).unwrap();
        let f = factorize(&a).unwrap();
        prop_assert_eq!(f.rank_one_factors.len(), d);
        prop_assert!(f.rank_one_factors.iter().all(|e| e.rank() == 1));
        prop_assert!(loop_dist(&f.reconstruct(), a.body()) < 1e-9);
        let again = compose(&f.rank_one_factors, &f.constant).unwrap();
        prop_assert!(again.distance(&a) < 1e-9);
    }

    #[test]
    fn mcmillan_degree_is_additive(seed in any::<u64>(), n in 2usize..5, ga in 1usize..4, gb in 1usize..4) {
        let mut s = Sampler::new(seed);
        let a = s.genus_loop(n, ga);
        let b = s.genus_loop(n, gb);
        let da = mcmillan_degree(&a).unwrap();
        let db = mcmillan_degree(&b).unwrap();
        prop_assert_eq!(mcmillan_degree(&a.mul(&b).unwrap()).unwrap(), da + db);
    }

    #[test]
    fn outer_coefficients_are_orthogonal(seed in any::<u64>(), n in 2usize..6, g in 2usize..6) {
        let mut s = Sampler::new(seed);
        let a = s.genus_loop(n, g);
        let k = a.degree();
        prop_assert!(k >= 1);
        prop_assert!(op_norm(&(a.coeff(k).adjoint() * a.coeff(0))) < 1e-10);
    }

    #[test]
    fn transform_is_a_bijection(seed in any::<u64>(), n in 2usize..9, g in 1usize..7) {
        let mut s = Sampler::new(seed);
        let a = s.genus_loop(n, g);
        let bank = loop_to_filters(&a);
        prop_assert!(bank.max_degree() < g * n);
        let back = filters_to_loop(&bank, 1e-9).unwrap();
        prop_assert_eq!(back.genus(), a.genus());
        for k in 0..g {
            prop_assert_eq!(back.coeff(k), a.coeff(k));
        }
    }

    #[test]
    fn completion_keeps_lowpass(seed in any::<u64>(), n in 2usize..6, g in 1usize..5) {
        let mut s = Sampler::new(seed);
        let m0 = loop_to_filters(&s.lowpass_loop(n, g)).filter(0).clone();
        let bank = complete_lowpass(&LowPassCandidate::new(n, m0.clone()).unwrap(), 1e-9).unwrap();
        prop_assert_eq!(bank.filter(0), &m0);
        prop_assert!(bank.filters().iter().all(|f| f.degree() < n * g));
    }

    #[test]
    fn row_step_drops_one_degree(seed in any::<u64>(), n in 2usize..6, g in 2usize..6) {
        let mut s = Sampler::new(seed);
        let a = s.genus_loop(n, g);
        let rows = RowData::new((0..g).map(|k| a.coeff(k).row(0).iter().copied().collect()).collect()).unwrap();
        let (_, beta) = row_reduction_step(&rows).unwrap();
        prop_assert_eq!(beta.genus(), g - 1);
        prop_assert!(beta.residuals().iter().all(|&r| r < 1e-10));
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn corner_model_identities(seed in any::<u64>(), n in 2usize..5, g in 1usize..4) {
        let mut s = Sampler::new(seed);
        let a = s.genus_loop(n, g);
        let m = corner_isometries(&a).unwrap();
        let dim = m.dim();
        let sum = m.v_mats().iter().fold(CMat::zeros(dim, dim), |acc, v| acc + v * v.adjoint());
        prop_assert!((sum - identity(dim)).norm() < 1e-10);
        let sig = sigma_matrix(&m, &m).unwrap();
        prop_assert!((sig.apply(&identity(dim)) - identity(dim)).norm() < 1e-10);
        let direct = sigma_adjoint_direct(&m, &m).unwrap();
        prop_assert!((direct - sig.adjoint_matrix()).norm() < 1e-12);
        prop_assert!((sig.entry((0, 0), (0, 0)) - c64(lambda0(&a), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn genus_two_spectrum(seed in any::<u64>(), n in 3usize..7) {
        let mut s = Sampler::new(seed);
        let (_, q, a) = s.vq_loop(n);
        let m = corner_isometries(&a).unwrap();
        let sp = spectrum(&sigma_matrix(&m, &m).unwrap()).unwrap();
        prop_assert!(sp.spectral_radius() <= 1.0 + 1e-8);
        let expect = GenusTwoClosedForm::from_projection(&q).unwrap().spectrum();
        prop_assert!(multiset_distance(&sp.eigenvalues, &expect) < 1e-8);
    }

    #[test]
    fn genus_two_spectral_radius_n2(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let m = corner_isometries(&s.genus_loop(2, 2)).unwrap();
        let sp = spectrum(&sigma_matrix(&m, &m).unwrap()).unwrap();
        prop_assert!(sp.spectral_radius() <= 1.0 + 1e-8);
    }

    #[test]
    fn projection_entries_are_at_most_half(seed in any::<u64>(), n in 2usize..7) {
        let mut s = Sampler::new(seed);
        let rank = s.index(0, n);
        let p = s.projection(n, rank);
        let u = s.unitary(n);
        let (e1, e2) = (u.column(0), u.column(1));
        let v = (e1.adjoint() * &p * e2)[(0, 0)];
        prop_assert!(v.norm() <= 0.5 + 1e-12);
    }

    #[test]
    fn padding_keeps_intertwiner_dimension(seed in any::<u64>(), ga in 1usize..3, gb in 1usize..3) {
        let mut s = Sampler::new(seed);
        let a = s.genus_loop(2, ga);
        let b = s.genus_loop(2, gb);
        let base = intertwiner_space(&a, &b).unwrap();
        let padded = intertwiner_space_padded(&a, &b, base.padded_genus + 1).unwrap();
        prop_assert_eq!(base.dimension, padded.dimension);
        let m = corner_isometries_padded(&a, ga + 2).unwrap();
        prop_assert!(m.isometry_defect() < 1e-10);
    }

    #[test]
    fn one_dimensional_fixed_projections_are_diagonal(seed in any::<u64>(), n in 3usize..6, shape in 0usize..3) {
        let mut s = Sampler::new(seed);
        // Q with Q₀₀ = 0, or Q diagonal, or generic
        let q = match shape {
            0 => {
                let mut q = CMat::zeros(n, n);
                let rank = s.index(1, n - 2);
                let inner = s.projection(n - 1, rank);
                q.view_mut((1, 1), (n - 1, n - 1)).copy_from(&inner);
                q
            }
            1 => {
                let mut q = CMat::zeros(n, n);
                for k in 0..n {
                    if s.uniform(0.0, 1.0) < 0.5 {
                        q[(k, k)] = c64(1.0, 0.0);
                    }
                }
                if q.trace().re == 0.0 { q[(n - 1, n - 1)] = c64(1.0, 0.0); }
                if q.trace().re == n as f64 { q[(0, 0)] = c64(0.0, 0.0); }
                q
            }
            _ => {
                let rank = s.index(1, n - 1);
                s.projection(n, rank)
            }
        };
        let body = MatPoly::constant(s.unitary(n)).mul(&MatPoly::linear_factor(&q)).unwrap();
        let a = loopbank::certify_loop(body, 1e-9).unwrap();
        let rep = analyze(&a).unwrap();
        prop_assert!(rep.fixed_set_abelian && rep.fixed_set_algebra);
        match rep.decomposition {
            Decomposition::Resolved(ps) => {
                for p in ps.iter().filter(|p| p.rank == 1) {
                    prop_assert!(p.diagonal);
                }
            }
            Decomposition::NotResolved => prop_assert!(false, "genus 2 fixed set is abelian"),
        }
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn cascade_support_and_mass(seed in any::<u64>(), n in 2usize..4, g in 1usize..4, levels in 1usize..7) {
        let mut s = Sampler::new(seed);
        let m0 = loop_to_filters(&s.lowpass_loop(n, g)).filter(0).clone();
        let mut f = SampledFunction::unit_box(n, m0.degree() / n + 1).unwrap();
        for _ in 0..levels {
            f = refine(&m0, &f).unwrap();
            prop_assert!((f.mass() - c64(1.0, 0.0)).norm() < 1e-10);
            let rep = support_report(&f, 0.0);
            prop_assert!(rep.within_sharper && rep.within_window);
        }
        let direct = cascade_scaling(&m0, n, levels).unwrap();
        prop_assert_eq!(direct, f);
    }
}

#[test]
fn haar_box_maps_to_itself() {
    let s = 0.5f64.sqrt();
    let haar = ScalarPoly::new(vec![c64(s, 0.0), c64(s, 0.0)]);
    let f = refine(&haar, &SampledFunction::unit_box(2, 1).unwrap()).unwrap();
    assert_eq!(f.values(), &[c64(1.0, 0.0); 2]);
}
