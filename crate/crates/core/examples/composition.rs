//! `sin(u) = a_u(x, D) u` with the quadrature-built Meyer symbol.

use num_complex::Complex64;
use psido11::cutoffs::LpFamily;
use psido11::random::{random_field, seeded};
use psido11::spectral::DenseField;
use psido11::symbols::{meyer_symbol, DEFAULT_QUADRATURE_NODES};

fn main() -> psido11::Result<()> {
    let fam = LpFamily::default();
    let u = random_field(&mut seeded(3), 1, 17, 10, true);
    let mut g = DenseField::from_sparse(&u, 256)?;
    let scale = 1.5 / g.max_abs();
    g = g.map(|z| Complex64::new(z.re * scale, 0.0));
    let sym = meyer_symbol(&g, f64::cos, &fam, 5, DEFAULT_QUADRATURE_NODES)?;
    let direct = g.map(|z| Complex64::new(z.re.sin(), 0.0));
    let err = sym.apply(&g)?.zip_with(&direct, |a, b| a - b)?.max_abs();
    println!("blocks: {}, sup |sin(u) - a_u(x,D)u| = {err:e}", sym.blocks().len());
    Ok(())
}
