//! Seeded generators for random fields and symbols. Every draw goes through
//! [`ChaCha8Rng`], so results are reproducible across platforms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::cutoffs::CutoffProfile;
use crate::spectral::{Frequency, SparseField};
use crate::symbols::{CoronaBump, Multiplier, SeparableSymbol, Term};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn uniform_frequency(rng: &mut impl Rng, dim: usize, radius: i128) -> Frequency {
    let comps: Vec<i128> = (0..dim).map(|_| rng.random_range(-radius..=radius)).collect();
    Frequency::new(&comps).expect("radius within range")
}

/// `n_modes` draws from the box `[-radius, radius]^n` with i.i.d. complex
/// Gaussian coefficients; Hermitian-symmetrized when `real`.
pub fn random_field(rng: &mut impl Rng, dim: usize, radius: i128, n_modes: usize, real: bool) -> SparseField {
    let mut u = SparseField::zero(dim);
    for _ in 0..n_modes {
        let xi = uniform_frequency(rng, dim, radius);
        let c = gaussian_complex(rng);
        u.insert(xi, c).expect("dimension matches");
    }
    if real {
        hermitian_part(&u)
    } else {
        u
    }
}

/// `(u + conj-reflected u) / 2`, the coefficients of `Re u`.
pub fn hermitian_part(u: &SparseField) -> SparseField {
    u.add(&u.conjugate()).expect("same dimension").scale_real(0.5)
}

/// Frequencies with `log2 |xi|` uniform in `[0, cap]` and uniform direction,
/// rounded to the lattice.
pub fn log_uniform_field(rng: &mut impl Rng, dim: usize, cap: i64, n_modes: usize) -> SparseField {
    let mut u = SparseField::zero(dim);
    for _ in 0..n_modes {
        let rho = rng.random_range(0.0..cap as f64).exp2();
        let comps: Vec<i128> = if dim == 1 {
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            vec![(sign * rho).round() as i128]
        } else {
            let t = rng.random_range(0.0..std::f64::consts::TAU);
            vec![(rho * t.cos()).round() as i128, (rho * t.sin()).round() as i128]
        };
        let xi = Frequency::new(&comps).expect("cap within range");
        u.insert(xi, gaussian_complex(rng)).expect("dimension matches");
    }
    u
}

/// A random finite-term symbol: x-parts drawn from `[-x_radius, x_radius]^n`,
/// multipliers among unit, corona, block and ball kinds at scales `<= top`.
pub fn random_symbol(
    rng: &mut impl Rng,
    dim: usize,
    n_terms: usize,
    x_radius: i128,
    x_modes: usize,
    top: i64,
    profile: &CutoffProfile,
) -> SeparableSymbol {
    let terms = (0..n_terms)
        .map(|_| {
            let xpart = random_field(rng, dim, x_radius, x_modes.max(1), false);
            let j = rng.random_range(0..=top);
            let mult = match rng.random_range(0..4) {
                0 => Multiplier::unit(),
                1 => Multiplier::corona(j.max(1), CoronaBump::default()),
                2 => Multiplier::block(j, *profile),
                _ => Multiplier::ball(j, *profile),
            };
            Term::new(xpart, mult)
        })
        .collect();
    SeparableSymbol::new(dim, 0.0, terms).expect("dimension consistent")
}
