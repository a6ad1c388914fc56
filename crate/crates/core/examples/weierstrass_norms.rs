//! Besov and Triebel–Lizorkin norms of a truncated Weierstrass function.

use psido11::cutoffs::LpFamily;
use psido11::families::weierstrass;
use psido11::spectral::{besov_norm, BlockAggregation};

fn main() -> psido11::Result<()> {
    let fam = LpFamily::default();
    let grid = 1 << 15;
    for d in [0.5, 1.0] {
        let f = weierstrass(d, 12)?;
        let b = besov_norm(&f, d, f64::INFINITY, &fam, grid, BlockAggregation::Besov { q: f64::INFINITY })?;
        print!("d={d}: B_inf,inf = {b:.12}");
        for p in [1.0, 2.0, 4.0] {
            let t = besov_norm(&f, d, p, &fam, grid, BlockAggregation::TriebelSup)?;
            print!("  F_{p},inf = {t:.12}");
        }
        println!();
    }
    Ok(())
}
