//! Builds the Steane encoder, prints it and checks every logical input
//! against the expected coset-state support.

use qlfsr::circuit::ShiftStyle;
use qlfsr::code::coset_reps;
use qlfsr::presets;
use qlfsr::sim::{check_encoding_with, encode_affine};
use qlfsr::synth::synth_encoder;

fn main() -> qlfsr::Result<()> {
    let css = presets::steane();
    let enc = synth_encoder(&css, ShiftStyle::Adjacent)?;
    println!("{}", enc.stats());
    print!("{}", enc.to_netlist());

    for j in coset_reps(&css)? {
        let s = encode_affine(&css, &j, ShiftStyle::Adjacent)?;
        println!(
            "\nj = {j}: {} basis states, matches: {}",
            1 << s.dimension(),
            check_encoding_with(&css, &j, ShiftStyle::Adjacent)?
        );
        for m in s.members() {
            println!("  {m}");
        }
    }
    Ok(())
}
