//! Littlewood–Paley blocks of the two cutoff profiles and the telescoping
//! identity `psi(2^-m xi) = psi(xi) + sum_k phi(2^-k xi)`.

use psido11::cutoffs::{default_profiles, telescope_check, LpFamily};

fn main() {
    for profile in default_profiles() {
        let fam = LpFamily::new(profile);
        println!("{profile}");
        for k in 0..4 {
            let (lo, hi) = fam.block_support(k);
            println!("  block {k}: support [{lo:.3}, {hi:.3}]");
        }
        let samples: Vec<Vec<f64>> = (0..2000).map(|i| vec![i as f64 * 0.37]).collect();
        println!("  telescoping defect, m = 8: {:e}", telescope_check(&profile, 8, &samples));
    }
}
