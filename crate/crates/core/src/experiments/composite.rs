//! Composition `F(u) = a_u(x, D) u` with the Meyer symbol
//! `a_u = sum_k m_k Phi_k(xi)`, `m_k = int_0^1 F'(u^{k-1} + t u_k) dt`, plus
//! the Bessel norms of `F(u)` and a Lipschitz probe of `u -> F(u)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Context, ExperimentReport, Table};
use crate::cutoffs::LpFamily;
use crate::error::{Error, Result};
use crate::random::{random_field, seeded};
use crate::row;
use crate::spectral::{DenseField, SparseField};
use crate::symbols::meyer_symbol;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompositeParams {
    pub functions: Vec<String>,
    /// Top block of the symbol; `u` lives in blocks `<= K - 1`.
    #[serde(rename = "K")]
    pub top: i64,
    #[serde(rename = "M")]
    pub grid: usize,
    #[serde(rename = "Q")]
    pub nodes: usize,
    pub modes: usize,
    pub sup: f64,
    pub s: Vec<f64>,
    pub p: Vec<f64>,
    pub deltas: Vec<f64>,
    pub lipschitz_ratio: f64,
    pub tolerance_transcendental: f64,
    pub tolerance_polynomial: f64,
    pub tolerance_identity: f64,
    pub seed: u64,
}

impl Default for CompositeParams {
    fn default() -> Self {
        Self {
            functions: vec!["sin".into(), "square".into(), "tanh".into(), "id".into()],
            top: 5,
            grid: 256,
            nodes: 32,
            modes: 10,
            sup: 1.5,
            s: vec![0.0, 1.0],
            p: vec![2.0, 4.0],
            deltas: vec![1e-1, 1e-2, 1e-3, 1e-4],
            lipschitz_ratio: 2.0,
            tolerance_transcendental: 1e-8,
            tolerance_polynomial: 1e-10,
            tolerance_identity: 1e-13,
            seed: 4,
        }
    }
}

type RealFn = fn(f64) -> f64;

/// `(F, F', tolerance class)` for a named function.
fn lookup(name: &str) -> Result<(RealFn, RealFn, &'static str)> {
    Ok(match name {
        "sin" => (f64::sin, f64::cos, "transcendental"),
        "tanh" => (f64::tanh, |t| 1.0 - t.tanh().powi(2), "transcendental"),
        "square" => (|t| t * t, |t| 2.0 * t, "polynomial"),
        "cube" => (|t| t * t * t, |t| 3.0 * t * t, "polynomial"),
        "id" => (|t| t, |_| 1.0, "identity"),
        "exp" => (f64::exp, f64::exp, "transcendental"),
        "cos" => (f64::cos, |t| -t.sin(), "transcendental"),
        other => return Err(Error::InvalidParameter(format!("unknown function '{other}'"))),
    })
}

fn compose(u: &DenseField, f: RealFn) -> DenseField {
    u.map(|z| Complex64::new(f(z.re), 0.0))
}

/// Real field in blocks `<= K - 1`, scaled to grid sup `sup`.
fn real_input(rng: &mut rand_chacha::ChaCha8Rng, p: &CompositeParams, fam: &LpFamily, sup: f64) -> Result<DenseField> {
    let radius = (fam.profile().inner() * 2f64.powi(p.top as i32 - 1)).floor() as i128;
    let u = random_field(rng, 1, radius, p.modes, true);
    let g = DenseField::from_sparse(&u, p.grid)?;
    let scale = sup / g.max_abs();
    Ok(g.map(|z| Complex64::new(z.re * scale, 0.0)))
}

pub(super) fn run(p: &CompositeParams, ctx: &Context) -> Result<ExperimentReport> {
    if p.top < 1 || p.top > 30 {
        return Err(Error::InvalidParameter(format!("K = {} outside [1, 30]", p.top)));
    }
    if !(p.sup > 0.0 && p.sup <= 2.0) {
        return Err(Error::InvalidParameter(format!("sup {} outside (0, 2]", p.sup)));
    }
    let fam = LpFamily::new(ctx.primary_profile());
    let reach = fam.profile().outer() * 2f64.powi(p.top as i32);
    if reach >= (p.grid / 2) as f64 {
        return Err(Error::FrequencyOutOfRange {
            frequency: format!("radius {reach}"),
            grid: p.grid,
        });
    }
    let mut rng = seeded(p.seed);
    let u = real_input(&mut rng, p, &fam, p.sup)?;
    let w = real_input(&mut rng, p, &fam, 1.0)?;
    let mut rep = ExperimentReport::new("composite", p);
    rep.check_le("input_sup", u.max_abs(), 2.0);
    let mut ident = Table::new("identity", &["F", "Q", "sup_error", "tolerance"]);
    let mut norms = Table::new("norms", &["F", "s", "p", "norm_Fu", "norm_u"]);
    let mut lip = Table::new("lipschitz", &["F", "s", "p", "delta", "ratio"]);
    for name in &p.functions {
        let (f, fp, class) = lookup(name)?;
        let f0 = f(0.0);
        if f0 != 0.0 {
            return Err(Error::FNotVanishingAtZero(f0));
        }
        let tol = match class {
            "identity" => p.tolerance_identity,
            "polynomial" => p.tolerance_polynomial,
            _ => p.tolerance_transcendental,
        };
        let sym = meyer_symbol(&u, fp, &fam, p.top, p.nodes)?;
        let fu = compose(&u, f);
        let err = sym.apply(&u)?.zip_with(&fu, |a, b| a - b)?.max_abs();
        rep.check_le(format!("identity.{name}"), err, tol);
        ident.push(row![name, p.nodes, err, tol]);

        for &s in &p.s {
            for &q in &p.p {
                norms.push(row![name, s, q, fu.bessel_norm(s, q), u.bessel_norm(s, q)]);
                let ratios: Vec<f64> = p
                    .deltas
                    .iter()
                    .map(|&delta| {
                        let moved = u.zip_with(&w, |a, b| a + b * delta)?;
                        let diff = compose(&moved, f).zip_with(&fu, |a, b| a - b)?;
                        Ok(diff.bessel_norm(s, q) / delta)
                    })
                    .collect::<Result<_>>()?;
                for (delta, r) in p.deltas.iter().zip(&ratios) {
                    lip.push(row![name, s, q, delta, r]);
                }
                let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
                let spread = if lo > 0.0 { hi / lo } else { f64::INFINITY };
                rep.check_le(format!("lipschitz.{name}.s={s}.p={q}"), spread, p.lipschitz_ratio);
            }
        }
    }
    rep.tables.extend([ident, norms, lip]);
    Ok(rep)
}

/// The band-limited input used by the experiment, for external inspection.
pub fn composite_input(p: &CompositeParams, ctx: &Context) -> Result<SparseField> {
    let fam = LpFamily::new(ctx.primary_profile());
    let u = real_input(&mut seeded(p.seed), p, &fam, p.sup)?;
    Ok(u.to_sparse(1e-13))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes() {
        let rep = run(&CompositeParams::default(), &Context::default()).unwrap();
        assert!(rep.pass(), "{:#?}", rep.assertions);
    }

    #[test]
    fn rejects_nonvanishing_function() {
        let p = CompositeParams {
            functions: vec!["exp".into()],
            ..Default::default()
        };
        assert!(matches!(
            run(&p, &Context::default()),
            Err(Error::FNotVanishingAtZero(_))
        ));
    }

    #[test]
    fn input_respects_block_bound() {
        let p = CompositeParams::default();
        let ctx = Context::default();
        let u = composite_input(&p, &ctx).unwrap();
        let fam = LpFamily::new(ctx.primary_profile());
        assert!(fam.top_block(u.max_radius()) < p.top);
    }
}
