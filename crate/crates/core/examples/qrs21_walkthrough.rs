//! End to end on the [[21,3,5]] code: circuits, encoding check for all
//! eight logical inputs and correction of every weight-2 bit-flip pattern.

use qlfsr::circuit::ShiftStyle;
use qlfsr::code::coset_reps;
use qlfsr::presets;
use qlfsr::sim::{bit_flip_roundtrip, check_encoding, SyndromeTable};
use qlfsr::synth::{synth_decode_scheme, synth_encoder, synth_syndrome};

fn main() -> qlfsr::Result<()> {
    let css = presets::qrs21();
    println!(
        "{} with g_perp = {}, g~ = {}",
        css.parameters()?,
        css.g_perp(),
        css.g_tilde()
    );
    let style = ShiftStyle::Adjacent;
    println!("encoder:  {}", synth_encoder(&css, style)?.stats());
    println!("syndrome: {}", synth_syndrome(&css, style)?.stats());
    println!("decode:   {}", synth_decode_scheme(&css, style)?.stats());

    for j in coset_reps(&css)? {
        println!("encode j = {j}: {}", check_encoding(&css, &j)?);
    }

    let table = SyndromeTable::build(&css)?;
    let j = &coset_reps(&css)?[1];
    let mut fixed = 0;
    let mut total = 0;
    for a in 0..21 {
        for b in a + 1..21 {
            total += 1;
            if bit_flip_roundtrip(&css, &table, j, &[a, b], style)?.restored {
                fixed += 1;
            }
        }
    }
    println!("corrected {fixed} of {total} two-qubit bit flips");
    Ok(())
}
