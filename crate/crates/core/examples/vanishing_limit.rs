//! Exact stabilization of `a^m(x,D) u^m` in `m` and across profiles, and the
//! product `pi(u, v)`.

use psido11::cutoffs::default_profiles;
use psido11::operator::{pi_product, vanishing_limit};
use psido11::random::{random_field, seeded};
use psido11::{ching_symbol, CoronaBump, Frequency};

fn main() -> psido11::Result<()> {
    let profiles = default_profiles();
    let a = ching_symbol(0.5, Frequency::d2(1, 0), 2, 6, CoronaBump::default())?;
    let u = random_field(&mut seeded(1), 2, 90, 25, false);
    let diag = vanishing_limit(&a, &u, &profiles, (0, 10), 0.0)?;
    println!("{}", serde_json::to_string_pretty(&diag.to_json_value()).unwrap());

    let v = random_field(&mut seeded(2), 2, 30, 8, false);
    let w = random_field(&mut seeded(3), 2, 30, 8, false);
    let pi = pi_product(&v, &w, &profiles, (0, 8))?;
    println!("pi(v, w): m* = {:?}, equals vw: {}", pi.m_star, pi.limit.max_rel_diff(&v.pointwise_mul(&w)?) == 0.0);
    Ok(())
}
