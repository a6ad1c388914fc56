//! Values checked against independently computed references (mpmath at 30
//! digits, closed forms).
#![allow(clippy::excessive_precision)]

use num_complex::Complex64;
use psido11::cutoffs::{smooth_transition, ProfileKind};
use psido11::families::{harmonic_ratio, unclosable_bandwidth, v_sequence};
use psido11::operator::{adjoint_apply_ching, adjoint_sobolev_norm_sq};
use psido11::random::{random_field, seeded};
use psido11::symbols::gauss_legendre;
use psido11::{ChingSymbol, CoronaBump, Frequency, SparseField};

#[test]
fn harmonic_ratios() {
    let oracle = [
        (5, 1.0765403443241661186),
        (6, 1.055513251606312956),
        (7, 1.0428052596953406671),
        (8, 1.0344285798536831553),
    ];
    for (n, r) in oracle {
        assert!((harmonic_ratio(n) - r).abs() <= 4e-16, "N={n}");
    }
}

#[test]
fn v_sequence_norms_with_unit_mode() {
    // v = {0 -> 1}: |v_N| = (1/ln N) (sum_{j=N}^{N^2} j^-2)^{1/2}
    let oracle = [
        (5, 0.26515230278804566488),
        (6, 0.21896679962155419616),
        (7, 0.18765653948102429149),
        (8, 0.16493723129569765461),
    ];
    let v = SparseField::mode(Frequency::zero(1), Complex64::new(1.0, 0.0));
    for (n, norm) in oracle {
        let vn = v_sequence(&v, &Frequency::d1(1), n, 0.0).unwrap();
        assert!((vn.sobolev_norm(0.0) - norm).abs() <= 1e-15, "N={n}");
    }
}

#[test]
fn bandwidths() {
    assert_eq!(unclosable_bandwidth(5), 1);
    assert_eq!(unclosable_bandwidth(6), 3);
    assert_eq!(unclosable_bandwidth(8), 12);
}

#[test]
fn two_point_gauss_legendre() {
    let nodes = gauss_legendre(2);
    let h = 3f64.sqrt() / 6.0;
    assert!((nodes[0].0 - (0.5 - h)).abs() < 1e-15);
    assert!((nodes[1].0 - (0.5 + h)).abs() < 1e-15);
    assert!(nodes.iter().all(|&(_, w)| (w - 0.5).abs() < 1e-15));
}

#[test]
fn transitions_are_symmetric() {
    for kind in [ProfileKind::Exp, ProfileKind::Poly7] {
        assert!((smooth_transition(kind, 0.5) - 0.5).abs() < 1e-15);
        for t in [0.1, 0.27, 0.4] {
            let s = smooth_transition(kind, t) + smooth_transition(kind, 1.0 - t);
            // poly7 at 1 - t cancels terms of size ~70
            assert!((s - 1.0).abs() < 1e-13, "{kind:?} t={t}: {s}");
        }
    }
}

#[test]
fn adjoint_norm_identity() {
    let b = ChingSymbol::new(0.5, Frequency::d1(1), 2, 8, CoronaBump::default()).unwrap();
    let v = random_field(&mut seeded(4), 1, 500, 80, false);
    for s in [-1.0, 0.0, 1.0] {
        let direct = adjoint_apply_ching(&b, &v).unwrap().sobolev_norm(s).powi(2);
        let formula = adjoint_sobolev_norm_sq(&b, &v, s).unwrap();
        assert!((direct - formula).abs() <= 1e-12 * formula);
    }
}
