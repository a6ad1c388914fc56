//! The explicit adjoint `b_theta(x, D)` of a Ching operator:
//! `(b v)^(xi) = sum_j 2^{jd} conj(chi(2^{-j} xi)) v(xi - 2^j theta)`.

use crate::error::Result;
use crate::spectral::{japanese_bracket_pow, SparseField};
use crate::symbols::ChingSymbol;

pub fn adjoint_apply_ching(b: &ChingSymbol, v: &SparseField) -> Result<SparseField> {
    let mut out = SparseField::with_threshold(v.dim(), v.threshold());
    for j in b.j_lo..=b.j_hi {
        let shift = b.shift(j);
        let coef = b.coefficient(j);
        let scale = (-(j as f64)).exp2();
        for (zeta, &c) in v.iter() {
            let xi = zeta.checked_add(&shift)?;
            // chi is real, so conjugation is the identity on it
            let w = b.chi.eval_radius(xi.norm() * scale);
            if w != 0.0 {
                out.accumulate(xi, c * (coef * w))?;
            }
        }
    }
    out.prune();
    Ok(out)
}

/// `|b v|_{H^s}^2` through the disjoint-support identity
/// `sum_zeta |v(zeta)|^2 sum_j <zeta + 2^j theta>^{2s} 4^{jd} |chi(2^{-j}(zeta + 2^j theta))|^2`.
pub fn adjoint_sobolev_norm_sq(b: &ChingSymbol, v: &SparseField, s: f64) -> Result<f64> {
    let mut total = 0.0;
    for (zeta, c) in v.iter() {
        let mut inner = 0.0;
        for j in b.j_lo..=b.j_hi {
            let xi = zeta.checked_add(&b.shift(j))?;
            let chi = b.chi.eval_radius(xi.norm() * (-(j as f64)).exp2());
            if chi != 0.0 {
                inner += japanese_bracket_pow(&xi, 2.0 * s) * (2.0 * j as f64 * b.d).exp2() * chi * chi;
            }
        }
        total += c.norm_sqr() * inner;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::apply;
    use crate::random::{random_field, seeded};
    use crate::spectral::Frequency;
    use crate::symbols::CoronaBump;
    use num_complex::Complex64;

    #[test]
    fn adjointness_on_random_fields() {
        let mut rng = seeded(11);
        for theta in [Frequency::d1(1), Frequency::d1(-2), Frequency::d2(1, 0)] {
            let b = ChingSymbol::new(0.5, theta, 2, 7, CoronaBump::default()).unwrap();
            let a = b.symbol();
            for _ in 0..20 {
                let u = random_field(&mut rng, theta.dim(), 200, 60, false);
                let v = random_field(&mut rng, theta.dim(), 200, 60, false);
                let lhs = apply(&a, &u).unwrap().inner_product(&v);
                let rhs = u.inner_product(&adjoint_apply_ching(&b, &v).unwrap());
                assert!((lhs - rhs).norm() <= 1e-12 * u.energy().sqrt() * v.energy().sqrt());
            }
        }
    }

    #[test]
    fn disjoint_spectrum_gives_zero() {
        let b = ChingSymbol::new(0.0, Frequency::d1(1), 4, 6, CoronaBump::default()).unwrap();
        // xi = zeta + 2^j lands at 2^j + 1000, outside every corona
        let v = SparseField::mode(Frequency::d1(1000), Complex64::new(1.0, 0.0));
        assert!(adjoint_apply_ching(&b, &v).unwrap().is_empty());
    }

    #[test]
    fn sobolev_identity_two_paths() {
        let mut rng = seeded(12);
        let b = ChingSymbol::new(1.0, Frequency::d2(0, 1), 1, 9, CoronaBump::with_zero(1)).unwrap();
        for s in [-1.0, 0.0, 0.5, 2.0] {
            let v = random_field(&mut rng, 2, 300, 80, false);
            let direct = adjoint_apply_ching(&b, &v).unwrap().sobolev_norm(s).powi(2);
            let formula = adjoint_sobolev_norm_sq(&b, &v, s).unwrap();
            assert!((direct - formula).abs() <= 1e-12 * formula.max(1e-300), "{direct} {formula}");
        }
    }
}
