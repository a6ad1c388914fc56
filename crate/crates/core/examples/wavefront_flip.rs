//! `a_{2 theta}` maps the lacunary cone along `+theta` (decay `|xi|^-d`) onto
//! the cone along `-theta` without decay.

use psido11::families::{bump_field, w_field};
use psido11::operator::apply;
use psido11::spectral::cone_report;
use psido11::symbols::twisted_diagonal_check;
use psido11::{ching_symbol, CoronaBump, Frequency};

fn main() -> psido11::Result<()> {
    let (d, j0, top) = (0.5, 5, 20);
    let theta = Frequency::d1(1);
    let w = w_field(&bump_field(1, 1)?, &theta, d, j0, top)?;
    let a = ching_symbol(d, Frequency::d1(2), j0, top, CoronaBump::default())?;
    let out = apply(&a, &w)?;
    let expected = w_field(&bump_field(1, 1)?, &Frequency::d1(-1), 0.0, j0, top)?;
    println!("identity defect: {:e}", out.max_rel_diff(&expected));
    for (label, f) in [("input", &w), ("output", &out)] {
        for e in cone_report(f)?.entries {
            println!("{label}: direction {:?} slope {:?}", e.direction, e.slope);
        }
    }
    println!("twisted diagonal (C=2): {}", twisted_diagonal_check(&a, 2.0, 10_000).holds);
    Ok(())
}
