//! Invariants under randomized inputs.

use num_complex::Complex64;
use proptest::prelude::*;
use psido11::cutoffs::{default_profiles, lp_project, telescope_check, Localization, LpFamily};
use psido11::operator::{
    apply, apply_fully_modulated, apply_modulated, paradiff_split, support_rule_xi, vanishing_limit,
};
use psido11::random::{hermitian_part, random_field, random_symbol, seeded};
use psido11::spectral::{DenseField, Frequency, SparseField};
use psido11::{CutoffProfile, SeparableSymbol};

fn field(seed: u64, dim: usize, radius: i128, modes: usize) -> SparseField {
    random_field(&mut seeded(seed), dim, radius, modes, false)
}

fn symbol(seed: u64, dim: usize) -> SeparableSymbol {
    random_symbol(&mut seeded(seed), dim, 4, 12, 3, 6, &CutoffProfile::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linearity(seed in any::<u64>(), dim in 1usize..=2, a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let s = symbol(seed, dim);
        let u = field(seed ^ 1, dim, 40, 10);
        let v = field(seed ^ 2, dim, 40, 10);
        let (al, be) = (Complex64::new(a, 0.5), Complex64::new(b, -1.0));
        let lhs = apply(&s, &u.scale(al).add(&v.scale(be)).unwrap()).unwrap();
        let rhs = apply(&s, &u).unwrap().scale(al).add(&apply(&s, &v).unwrap().scale(be)).unwrap();
        prop_assert!(lhs.max_rel_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn support_rule(seed in any::<u64>(), dim in 1usize..=2) {
        let s = symbol(seed, dim);
        let u = field(seed ^ 3, dim, 50, 12);
        let xi = support_rule_xi(&s, &u).unwrap();
        prop_assert!(apply(&s, &u).unwrap().spectrum().is_subset(&xi));
    }

    #[test]
    fn modulation_order(seed in any::<u64>(), dim in 1usize..=2, m in 0i64..8, poly in any::<bool>()) {
        let p = default_profiles()[usize::from(poly)];
        let s = symbol(seed, dim);
        let u = field(seed ^ 4, dim, 100, 12);
        let lhs = apply_modulated(&s, &u, &p, m).unwrap();
        let rhs = apply_fully_modulated(&s, &u, &p, m).unwrap();
        prop_assert!(lhs.max_rel_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn stabilization_matches_direct_apply(seed in any::<u64>(), dim in 1usize..=2) {
        let s = symbol(seed, dim);
        let u = field(seed ^ 5, dim, 60, 10);
        let diag = vanishing_limit(&s, &u, &default_profiles(), (0, 9), 0.0).unwrap();
        prop_assert!(diag.pass);
        prop_assert_eq!(diag.limit.max_rel_diff(&apply(&s, &u).unwrap()), 0.0);
    }

    #[test]
    fn paradiff_reconstruction(seed in any::<u64>(), dim in 1usize..=2, m in 3i64..9) {
        let fam = LpFamily::default();
        let s = symbol(seed, dim);
        let u = field(seed ^ 6, dim, 300, 20);
        let split = paradiff_split(&s, &u, &fam, m).unwrap();
        let direct = apply_modulated(&s, &u, fam.profile(), m).unwrap();
        prop_assert!(split.total().max_rel_diff(&direct) <= 1e-12);
    }

    #[test]
    fn blocks_sum_to_ball(seed in any::<u64>(), dim in 1usize..=2, m in 0i64..10) {
        let fam = LpFamily::default();
        let u = field(seed, dim, 1500, 30);
        let mut acc = SparseField::zero(dim);
        for k in 0..=m {
            acc = acc.add(&lp_project(&u, k, &fam, Localization::Block)).unwrap();
        }
        let ball = lp_project(&u, m, &fam, Localization::Ball);
        prop_assert!(acc.max_rel_diff(&ball) <= 1e-14);
    }

    #[test]
    fn telescoping_pointwise(x in -5000.0f64..5000.0, y in -5000.0f64..5000.0, m in 0i64..12) {
        for p in default_profiles() {
            prop_assert!(telescope_check(&p, m, &[vec![x, y], vec![x]]) <= 1e-15);
        }
    }

    #[test]
    fn pointwise_mul_commutes_and_associates(seed in any::<u64>(), dim in 1usize..=2) {
        let (u, v, w) = (field(seed, dim, 15, 6), field(seed ^ 7, dim, 15, 6), field(seed ^ 8, dim, 15, 6));
        let uv = u.pointwise_mul(&v).unwrap();
        prop_assert!(uv.max_rel_diff(&v.pointwise_mul(&u).unwrap()) <= 1e-12);
        let left = uv.pointwise_mul(&w).unwrap();
        let right = u.pointwise_mul(&v.pointwise_mul(&w).unwrap()).unwrap();
        prop_assert!(left.max_rel_diff(&right) <= 1e-12);
    }

    #[test]
    fn dense_round_trip(seed in any::<u64>(), dim in 1usize..=2) {
        let u = field(seed, dim, 20, 15);
        let back = DenseField::from_sparse(&u, 64).unwrap().to_sparse(1e-12);
        prop_assert!(back.max_rel_diff(&u) <= 1e-12);
    }

    #[test]
    fn hermitian_fields_are_real(seed in any::<u64>(), dim in 1usize..=2) {
        let u = hermitian_part(&field(seed, dim, 20, 10));
        prop_assert!(u.hermitian_defect() <= 1e-15);
        prop_assert!(DenseField::from_sparse(&u, 64).unwrap().max_imag() <= 1e-12);
    }

    #[test]
    fn json_round_trips(seed in any::<u64>(), dim in 1usize..=2) {
        let u = field(seed, dim, 1 << 40, 10);
        prop_assert_eq!(SparseField::from_json(&u.to_json()).unwrap(), u);
        let s = symbol(seed, dim);
        let text = s.to_json().unwrap();
        prop_assert_eq!(SeparableSymbol::from_json(&text).unwrap().to_json().unwrap(), text);
    }

    #[test]
    fn frequency_arithmetic(a in -(1i128 << 90)..(1i128 << 90), b in -(1i128 << 90)..(1i128 << 90)) {
        let (x, y) = (Frequency::d1(a), Frequency::d1(b));
        prop_assert_eq!(x.checked_add(&y).unwrap().checked_sub(&y).unwrap(), x);
        prop_assert_eq!(x <= y, !(y < x));
    }
}
