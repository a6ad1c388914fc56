//! Round-tripping symbols and fields through their JSON formats, as consumed
//! by `psido11 apply`.

use psido11::families::{bump_field, w_field};
use psido11::{ching_symbol, CoronaBump, Frequency, SeparableSymbol, SparseField};

fn main() -> psido11::Result<()> {
    let a = ching_symbol(0.0, Frequency::d1(2), 5, 8, CoronaBump::default())?;
    let json = a.to_json()?;
    let back = SeparableSymbol::from_json(&json)?;
    println!("symbol: {} terms, round trip equal: {}", back.terms().len(), back.to_json()? == json);

    let w = w_field(&bump_field(1, 1)?, &Frequency::d1(1), 0.0, 5, 8)?;
    let text = w.to_json();
    println!("field: {} modes, round trip equal: {}", w.len(), SparseField::from_json(&text)? == w);
    println!("{}", &text[..text.len().min(200)]);
    Ok(())
}
