//! CSS decomposition and parameters of the [[21,3,5]] code built from the
//! length-7 Reed-Solomon code over GF(8).

use qlfsr::code::is_doubly_even;
use qlfsr::presets;

fn main() -> qlfsr::Result<()> {
    let css = presets::qrs21();
    let code = css.code();
    println!("g      = {}", code.generator());
    println!("h      = {}", code.check_poly());
    println!("g_perp = {}", css.g_perp());
    println!("g~     = {}", css.g_tilde());
    println!("weakly self-dual: {}", code.is_weakly_self_dual());
    println!("logical symbols:  {}", css.logical_count());
    println!("parameters:       {}", css.parameters()?);

    let steane = presets::steane();
    println!(
        "\nSteane: {} doubly even {}",
        steane.parameters()?,
        is_doubly_even(steane.code())?
    );
    Ok(())
}
