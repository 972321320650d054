//! Cyclic shift circuits in the three styles, with gate counts and the
//! CNOT expansion of the constant-depth variant.

use qlfsr::circuit::ShiftStyle;
use qlfsr::gf2::BitVec;
use qlfsr::synth::synth_cyclic_shift;

fn main() -> qlfsr::Result<()> {
    for (n, k) in [(7, 1), (7, 3)] {
        for style in ShiftStyle::ALL {
            let c = synth_cyclic_shift(n, k, style)?;
            println!("shift {n} cells x {k} qubits, {style}: {}", c.stats());
        }
    }
    let c = synth_cyclic_shift(7, 1, ShiftStyle::ConstantDepth)?;
    print!("{}", c.expand().to_diagram());

    let input = BitVec::parse("1100000").expect("bit string");
    println!("{input} -> {}", c.apply_basis_logical(&input)?);
    Ok(())
}
