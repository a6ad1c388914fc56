//! Seeded property suites for the operator algebra: linearity, modulation
//! order, stabilization across profiles, Ching adjointness, spectral-kernel
//! consistency and partial associativity of `pi`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::product::associativity_defect;
use super::{Context, ExperimentReport, Table};
use crate::error::{Error, Result};
use crate::operator::{
    adjoint_apply_ching, apply, apply_fully_modulated, apply_modulated, frequency_window, spectral_kernel,
    vanishing_limit,
};
use crate::random::{gaussian_complex, random_field, random_symbol, seeded};
use crate::row;
use crate::spectral::Frequency;
use crate::symbols::{ChingSymbol, CoronaBump};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgebraParams {
    pub cases: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for AlgebraParams {
    fn default() -> Self {
        Self {
            cases: 200,
            tolerance: 1e-12,
            seed: 7,
        }
    }
}

type Rng8 = rand_chacha::ChaCha8Rng;

/// Worst defect of one seeded case and whether its structural checks held.
type Case = Result<(f64, bool)>;

type Suite = (&'static str, fn(&mut Rng8, &Context, usize) -> Case);

fn linearity(rng: &mut Rng8, ctx: &Context, dim: usize) -> Case {
    let a = random_symbol(rng, dim, 4, 10, 4, 6, &ctx.primary_profile());
    let u = random_field(rng, dim, 60, 12, false);
    let v = random_field(rng, dim, 60, 12, false);
    let (al, be) = (gaussian_complex(rng), gaussian_complex(rng));
    let lhs = apply(&a, &u.scale(al).add(&v.scale(be))?)?;
    let rhs = apply(&a, &u)?.scale(al).add(&apply(&a, &v)?.scale(be))?;
    Ok((lhs.max_rel_diff(&rhs), true))
}

fn modulation_order(rng: &mut Rng8, ctx: &Context, dim: usize) -> Case {
    let profile = ctx.profiles[rng.random_range(0..ctx.profiles.len())];
    let a = random_symbol(rng, dim, 4, 30, 4, 7, &profile);
    let u = random_field(rng, dim, 120, 16, false);
    let m = rng.random_range(0..8);
    let lhs = apply_modulated(&a, &u, &profile, m)?;
    let rhs = apply_fully_modulated(&a, &u, &profile, m)?;
    Ok((lhs.max_rel_diff(&rhs), true))
}

fn stabilization(rng: &mut Rng8, ctx: &Context, dim: usize) -> Case {
    let a = random_symbol(rng, dim, 3, 20, 3, 6, &ctx.primary_profile());
    let u = random_field(rng, dim, 80, 10, false);
    let diag = vanishing_limit(&a, &u, &ctx.profiles, (0, 9), 0.0)?;
    Ok((diag.limit.max_rel_diff(&apply(&a, &u)?), diag.pass))
}

fn adjointness(rng: &mut Rng8, _ctx: &Context, dim: usize) -> Case {
    let theta = match dim {
        1 => Frequency::d1(rng.random_range(1..=3) * if rng.random_bool(0.5) { 1 } else { -1 }),
        _ => Frequency::d2(rng.random_range(-2..=2), rng.random_range(1..=2)),
    };
    let d = rng.random_range(-1.0..=1.0);
    let lo = rng.random_range(1..=4);
    let b = ChingSymbol::new(d, theta, lo, lo + rng.random_range(0..=5), CoronaBump::default())?;
    let u = random_field(rng, dim, 400, 40, false);
    let v = random_field(rng, dim, 400, 40, false);
    let lhs = apply(&b.symbol(), &u)?.inner_product(&v);
    let rhs = u.inner_product(&adjoint_apply_ching(&b, &v)?);
    let scale = (u.energy() * v.energy()).sqrt();
    Ok(((lhs - rhs).norm() / scale.max(f64::MIN_POSITIVE), true))
}

fn kernel_consistency(rng: &mut Rng8, ctx: &Context, dim: usize) -> Case {
    let radius = if dim == 1 { 40 } else { 10 };
    let a = random_symbol(rng, dim, 4, radius / 2, 3, 3, &ctx.primary_profile());
    let u = random_field(rng, dim, radius / 2, 10, false);
    let w = frequency_window(dim, radius);
    let k = spectral_kernel(&a, &w, &w)?;
    Ok((k.apply(&u)?.max_rel_diff(&apply(&a, &u)?), true))
}

fn associativity(rng: &mut Rng8, ctx: &Context, dim: usize) -> Case {
    let f = random_field(rng, dim, 6, 4, false);
    let u = random_field(rng, dim, 12, 6, false);
    let v = random_field(rng, dim, 12, 6, false);
    associativity_defect(&f, &u, &v, ctx, 7)
}

pub(super) fn run(p: &AlgebraParams, ctx: &Context) -> Result<ExperimentReport> {
    if p.cases == 0 {
        return Err(Error::InvalidParameter("cases must be positive".into()));
    }
    let suites: [Suite; 6] = [
        ("linearity", linearity),
        ("modulation_order", modulation_order),
        ("stabilization", stabilization),
        ("adjointness", adjointness),
        ("kernel_consistency", kernel_consistency),
        ("pi_associativity", associativity),
    ];
    let mut rep = ExperimentReport::new("algebra", p);
    let mut table = Table::new("algebra", &["property", "cases", "max_defect", "structural_failures"]);
    for (i, (name, case)) in suites.iter().enumerate() {
        let mut rng = seeded(p.seed.wrapping_add(i as u64));
        let (mut worst, mut failures) = (0.0f64, 0);
        for c in 0..p.cases {
            let (defect, ok) = case(&mut rng, ctx, 1 + c % 2)?;
            worst = worst.max(defect);
            failures += usize::from(!ok);
        }
        rep.check_le(format!("{name}.defect"), worst, p.tolerance);
        rep.check_count(format!("{name}.structure"), failures);
        rep.metric(format!("{name}.cases"), p.cases as f64);
        table.push(row![name, p.cases, worst, failures]);
    }
    rep.tables.push(table);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn few_cases_pass() {
        let p = AlgebraParams {
            cases: 12,
            ..Default::default()
        };
        let rep = run(&p, &Context::default()).unwrap();
        assert!(rep.pass(), "{:#?}", rep.assertions);
        assert_eq!(rep.assertions.len(), 12);
    }

    #[test]
    fn zero_scalar_in_linearity() {
        // alpha = 0 reduces to homogeneity in v
        let a = random_symbol(&mut seeded(1), 1, 2, 5, 2, 3, &Context::default().primary_profile());
        let v = random_field(&mut seeded(2), 1, 9, 4, false);
        let zero = Complex64::default();
        let lhs = apply(&a, &v.scale(zero)).unwrap();
        assert!(lhs.is_empty());
    }
}
