//! Splitting `a^m(x,D) u^m` into the three paradifferential groups and
//! checking the corona bounds scale by scale.

use psido11::cutoffs::LpFamily;
use psido11::operator::{apply_modulated, corona_check, paradiff_split};
use psido11::random::{random_field, seeded};
use psido11::{ching_symbol, CoronaBump, Frequency};

fn main() -> psido11::Result<()> {
    let fam = LpFamily::default();
    let a = ching_symbol(0.0, Frequency::d1(2), 1, 9, CoronaBump::default())?;
    let u = random_field(&mut seeded(5), 1, 600, 60, false);
    let m = 9;
    let split = paradiff_split(&a, &u, &fam, m)?;
    let direct = apply_modulated(&a, &u, fam.profile(), m)?;
    println!(
        "|T1|={:.3} |T2|={:.3} |T3|={:.3} reconstruction defect {:e}",
        split.t1.sobolev_norm(0.0),
        split.t2.sobolev_norm(0.0),
        split.t3.sobolev_norm(0.0),
        split.total().max_rel_diff(&direct)
    );
    for k in 0..=m {
        let c = corona_check(&a, &u, &fam, k, Some(2.0))?;
        println!("k={k}: pass={} refined lower bound {:?}", c.pass, c.refined_lower);
    }
    Ok(())
}
