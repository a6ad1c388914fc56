//! `a_theta(x, D) v_N = r_N v` while `|v_N|` shrinks: the ratio grows with N.

use psido11::families::{bump_field, harmonic_ratio, unclosable_bandwidth, v_sequence};
use psido11::operator::apply;
use psido11::{ching_symbol, CoronaBump, Frequency};

fn main() -> psido11::Result<()> {
    let theta = Frequency::d1(1);
    let a = ching_symbol(0.0, theta, 1, 64, CoronaBump::default())?;
    for n in 5..=8 {
        let v = bump_field(1, unclosable_bandwidth(n))?;
        let vn = v_sequence(&v, &theta, n, 0.0)?;
        let out = apply(&a, &vn)?;
        let r = harmonic_ratio(n);
        println!(
            "N={n}: r_N={r:.6}  |v_N|={:.6}  |Av_N - r_N v|={:.1e}  ratio={:.4}",
            vn.sobolev_norm(0.0),
            out.sub(&v.scale_real(r))?.sobolev_norm(0.0),
            out.sobolev_norm(0.0) / vn.sobolev_norm(0.0),
        );
    }
    Ok(())
}
