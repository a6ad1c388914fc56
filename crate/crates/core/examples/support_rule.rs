//! The spectral support rule on a random symbol, with the candidate set Xi.

use psido11::cutoffs::CutoffProfile;
use psido11::operator::{apply, support_rule_xi};
use psido11::random::{random_field, random_symbol, seeded};

fn main() -> psido11::Result<()> {
    let mut rng = seeded(11);
    let a = random_symbol(&mut rng, 2, 3, 6, 3, 4, &CutoffProfile::default());
    let u = random_field(&mut rng, 2, 20, 10, false);
    let xi = support_rule_xi(&a, &u)?;
    let spec = apply(&a, &u)?.spectrum();
    println!("|Xi| = {}, |spec(Au)| = {}, contained: {}", xi.len(), spec.len(), spec.is_subset(&xi));
    Ok(())
}
