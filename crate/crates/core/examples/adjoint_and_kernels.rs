//! The explicit adjoint of a Ching operator, its spectral kernel on a window
//! and the smooth spatial kernel of the modulated operator in one dimension.

use psido11::cutoffs::CutoffProfile;
use psido11::operator::{
    adjoint_apply_ching, apply, apply_modulated, frequency_window, kernel_pairing, spatial_kernel_1d,
    spectral_kernel,
};
use psido11::random::{random_field, seeded};
use psido11::{ChingSymbol, CoronaBump, Frequency};

fn main() -> psido11::Result<()> {
    let b = ChingSymbol::new(1.0, Frequency::d1(1), 2, 5, CoronaBump::default())?;
    let a = b.symbol();
    let mut rng = seeded(8);
    let u = random_field(&mut rng, 1, 60, 20, false);
    let v = random_field(&mut rng, 1, 60, 20, false);
    let lhs = apply(&a, &u)?.inner_product(&v);
    let rhs = u.inner_product(&adjoint_apply_ching(&b, &v)?);
    println!("<Au, v> = {lhs:.6}, <u, Bv> = {rhs:.6}");

    let w = frequency_window(1, 100);
    let k = spectral_kernel(&a, &w, &w)?;
    println!("spectral kernel defect: {:e}", k.apply(&u)?.max_rel_diff(&apply(&a, &u)?));

    let p = CutoffProfile::default();
    let km = spatial_kernel_1d(&a, 6, &p, 512)?;
    let exact = apply_modulated(&a, &u, &p, 6)?.inner_product(&v);
    println!("kernel pairing {:.6} vs operator {exact:.6}", kernel_pairing(&km, &u, &v)?);
    Ok(())
}
