//! Syndrome extraction and the full X/Z decode scheme on the Steane code,
//! simulated on a state vector.

use qlfsr::circuit::ShiftStyle;
use qlfsr::poly::Poly;
use qlfsr::presets;
use qlfsr::sim::{statevector_roundtrip, PauliError, SyndromeTable};
use qlfsr::synth::{synth_decode_scheme, synth_syndrome};

fn main() -> qlfsr::Result<()> {
    let css = presets::steane();
    let style = ShiftStyle::ConstantDepth;
    println!("syndrome circuit: {}", synth_syndrome(&css, style)?.stats());
    println!(
        "decode scheme:    {}",
        synth_decode_scheme(&css, style)?.stats()
    );

    let table = SyndromeTable::build(&css)?;
    println!(
        "lookup table with {} entries (t = {})",
        table.len(),
        table.t()
    );
    let j = Poly::one(*css.ctx());
    for q in 0..7 {
        for e in [PauliError::bit_flips(&[q]), PauliError::phase_flips(&[q])] {
            let r = statevector_roundtrip(&css, &table, &j, &e, style)?;
            println!(
                "{e:?}: bit syndrome {} phase syndrome {} fidelity {:.12}",
                r.bit_syndrome, r.phase_syndrome, r.fidelity
            );
        }
    }
    Ok(())
}
