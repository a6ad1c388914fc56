//! Paradifferential splitting of `a^m(x, D) u^m = sum_{j,k<=m} a_j(x, D) u_k`
//! into the groups `j <= k-h` (T1), `|j-k| < h` (T2) and `k <= j-h` (T3).

use serde::Serialize;

use super::apply;
use crate::cutoffs::{lp_project, Localization, LpFamily};
use crate::error::Result;
use crate::spectral::SparseField;
use crate::symbols::{twisted_diagonal_check, SeparableSymbol};

#[derive(Clone, Debug)]
pub struct ParadiffSplit {
    pub m: i64,
    pub gap: u32,
    pub t1: SparseField,
    pub t2: SparseField,
    pub t3: SparseField,
    /// `(k, a^{k-h}(x,D) u_k)`.
    pub t1_parts: Vec<(i64, SparseField)>,
    /// `(k, a_k(x,D)(u^{k-1} - u^{k-h}) + (a^k - a^{k-h})(x,D) u_k)`.
    pub t2_parts: Vec<(i64, SparseField)>,
    /// `(j, a_j(x,D) u^{j-h})`.
    pub t3_parts: Vec<(i64, SparseField)>,
}

impl ParadiffSplit {
    pub fn total(&self) -> SparseField {
        self.t1
            .add(&self.t2)
            .and_then(|s| s.add(&self.t3))
            .expect("same dimension")
    }

    /// Number of nonzero summands across the three groups.
    pub fn nonzero_summands(&self) -> usize {
        [&self.t1_parts, &self.t2_parts, &self.t3_parts]
            .iter()
            .flat_map(|v| v.iter())
            .filter(|(_, f)| !f.is_empty())
            .count()
    }
}

fn ball_diff(u: &SparseField, hi: i64, lo: i64, fam: &LpFamily) -> SparseField {
    u.multiply_symbol(|xi| fam.ball(hi, xi) - fam.ball(lo, xi))
}

fn t2_summand(a: &SeparableSymbol, u: &SparseField, fam: &LpFamily, k: i64) -> Result<SparseField> {
    let h = fam.gap() as i64;
    let ak = a.localize_x(k, fam, Localization::Block);
    let first = apply(&ak, &ball_diff(u, k - 1, k - h, fam))?;
    let a_band = a.multiply_x(|xi| fam.ball(k, xi) - fam.ball(k - h, xi));
    let second = apply(&a_band, &lp_project(u, k, fam, Localization::Block))?;
    first.add(&second)
}

fn t1_summand(a: &SeparableSymbol, u: &SparseField, fam: &LpFamily, k: i64) -> Result<SparseField> {
    let h = fam.gap() as i64;
    apply(
        &a.localize_x(k - h, fam, Localization::Ball),
        &lp_project(u, k, fam, Localization::Block),
    )
}

fn t3_summand(a: &SeparableSymbol, u: &SparseField, fam: &LpFamily, j: i64) -> Result<SparseField> {
    let h = fam.gap() as i64;
    apply(
        &a.localize_x(j, fam, Localization::Block),
        &lp_project(u, j - h, fam, Localization::Ball),
    )
}

fn sum_parts(dim: usize, parts: &[(i64, SparseField)]) -> Result<SparseField> {
    let mut acc = SparseField::zero(dim);
    for (_, p) in parts {
        acc = acc.add(p)?;
    }
    Ok(acc)
}

pub fn paradiff_split(a: &SeparableSymbol, u: &SparseField, fam: &LpFamily, m: i64) -> Result<ParadiffSplit> {
    let h = fam.gap() as i64;
    let t1_parts = (h..=m)
        .map(|k| Ok((k, t1_summand(a, u, fam, k)?)))
        .collect::<Result<Vec<_>>>()?;
    let t2_parts = (0..=m)
        .map(|k| Ok((k, t2_summand(a, u, fam, k)?)))
        .collect::<Result<Vec<_>>>()?;
    let t3_parts = (h..=m)
        .map(|j| Ok((j, t3_summand(a, u, fam, j)?)))
        .collect::<Result<Vec<_>>>()?;
    let dim = u.dim();
    Ok(ParadiffSplit {
        m,
        gap: fam.gap(),
        t1: sum_parts(dim, &t1_parts)?,
        t2: sum_parts(dim, &t2_parts)?,
        t3: sum_parts(dim, &t3_parts)?,
        t1_parts,
        t2_parts,
        t3_parts,
    })
}

/// Radii `(min, max)` of the spectrum, `None` when empty.
fn radii(f: &SparseField) -> Option<(f64, f64)> {
    f.frequencies().map(|x| x.norm()).fold(None, |acc, r| match acc {
        None => Some((r, r)),
        Some((lo, hi)) => Some((lo.min(r), hi.max(r))),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoronaReport {
    pub k: i64,
    /// `[(r/4) 2^k, (5R/4) 2^k]`.
    pub annulus: [f64; 2],
    /// `2 R 2^k`.
    pub ball_radius: f64,
    pub t1_radii: Option<(f64, f64)>,
    pub t3_radii: Option<(f64, f64)>,
    pub t2_radii: Option<(f64, f64)>,
    /// `(r / (2^{h+1} C)) 2^k`, when the twisted diagonal condition holds and
    /// `k >= h + 1 + log2(C/r)`.
    pub refined_lower: Option<f64>,
    pub pass: bool,
}

/// Checks the dyadic corona bounds for the `k`-th summands; with `tdc = Some(C)`
/// the refined lower bound for the diagonal summand is checked as well when
/// it applies.
pub fn corona_check(
    a: &SeparableSymbol,
    u: &SparseField,
    fam: &LpFamily,
    k: i64,
    tdc: Option<f64>,
) -> Result<CoronaReport> {
    let (r, big_r) = (fam.profile().inner(), fam.profile().outer());
    let h = fam.gap() as i64;
    let s = 2f64.powi(k as i32);
    let annulus = [r / 4.0 * s, 5.0 * big_r / 4.0 * s];
    let ball_radius = 2.0 * big_r * s;
    let t1 = radii(&t1_summand(a, u, fam, k)?);
    let t3 = radii(&t3_summand(a, u, fam, k)?);
    let t2 = radii(&t2_summand(a, u, fam, k)?);
    let inside = |b: Option<(f64, f64)>| b.is_none_or(|(lo, hi)| lo >= annulus[0] && hi <= annulus[1]);
    let mut pass = inside(t1) && inside(t3) && t2.is_none_or(|(_, hi)| hi <= ball_radius);
    let refined_lower = match tdc {
        Some(c) if k as f64 >= h as f64 + 1.0 + (c / r).log2() && twisted_diagonal_check(a, c, 10_000).holds => {
            let bound = r / (2f64.powi(h as i32 + 1) * c) * s;
            pass &= t2.is_none_or(|(lo, _)| lo >= bound);
            Some(bound)
        }
        _ => None,
    };
    Ok(CoronaReport {
        k,
        annulus,
        ball_radius,
        t1_radii: t1,
        t3_radii: t3,
        t2_radii: t2,
        refined_lower,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cutoffs::CutoffProfile;
    use crate::operator::apply_modulated;
    use crate::random::{random_field, random_symbol, seeded};
    use crate::spectral::Frequency;
    use crate::symbols::{ching_symbol, CoronaBump};
    use num_complex::Complex64;

    #[test]
    fn reconstruction_is_exact() {
        let mut rng = seeded(31);
        let fam = LpFamily::default();
        for _ in 0..10 {
            let a = random_symbol(&mut rng, 1, 4, 40, 4, 6, fam.profile());
            let u = random_field(&mut rng, 1, 100, 20, false);
            let m = 8;
            let split = paradiff_split(&a, &u, &fam, m).unwrap();
            let direct = apply_modulated(&a, &u, fam.profile(), m).unwrap();
            assert!(split.total().max_rel_diff(&direct) <= 1e-12);
        }
    }

    #[test]
    fn ching_blocks_are_single_terms() {
        let fam = LpFamily::default();
        let a = ching_symbol(0.0, Frequency::d1(1), 2, 8, CoronaBump::default()).unwrap();
        for j in 2..=8i64 {
            let aj = a.localize_x(j, &fam, Localization::Block);
            assert_eq!(aj.terms().iter().filter(|t| !t.xpart.is_empty()).count(), 1);
            assert_eq!(aj.x_spectrum().into_iter().next(), Some(Frequency::d1(-(1 << j))));
        }
    }

    #[test]
    fn single_mode_has_few_summands() {
        let fam = LpFamily::default();
        let a = SeparableSymbol::identity(1);
        let u = SparseField::mode(Frequency::d1(37), Complex64::new(1.0, 0.0));
        let split = paradiff_split(&a, &u, &fam, 9).unwrap();
        assert!(split.nonzero_summands() <= fam.gap() as usize + 1);
        assert_eq!(split.total().max_rel_diff(&u), 0.0);
    }

    #[test]
    fn corona_bounds_hold() {
        let mut rng = seeded(32);
        let fam = LpFamily::default();
        for _ in 0..10 {
            let a = random_symbol(&mut rng, 2, 3, 8, 3, 5, fam.profile());
            let u = random_field(&mut rng, 2, 60, 20, false);
            for k in 0..=8 {
                assert!(corona_check(&a, &u, &fam, k, None).unwrap().pass);
            }
        }
    }

    #[test]
    fn refined_bound_for_doubled_ching() {
        let fam = LpFamily::new(CutoffProfile::default());
        let a = ching_symbol(0.0, Frequency::d1(2), 1, 10, CoronaBump::default()).unwrap();
        let u = random_field(&mut seeded(33), 1, 3000, 200, false);
        let mut refined = 0;
        for k in 0..=12 {
            let rep = corona_check(&a, &u, &fam, k, Some(2.0)).unwrap();
            assert!(rep.pass, "{rep:?}");
            refined += rep.refined_lower.is_some() as usize;
        }
        assert!(refined > 0);
        let empty = corona_check(&a, &SparseField::zero(1), &fam, 5, Some(2.0)).unwrap();
        assert!(empty.pass && empty.t1_radii.is_none());
    }
}
