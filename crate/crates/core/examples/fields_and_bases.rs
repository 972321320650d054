//! GF(8) arithmetic, bases and the multiplication-by-constant matrices.

use qlfsr::gf::{dual_basis, find_self_dual_basis, is_self_dual, mult_matrix, Basis, FieldCtx};

fn main() -> qlfsr::Result<()> {
    let f = FieldCtx::new(3, 0b1011)?;
    let a = f.alpha();
    println!("GF(8) with modulus {:#b}", f.modulus());
    for e in 0..7 {
        let x = f.alpha_pow(e);
        let inv = f.inv(x).expect("nonzero");
        println!("a^{e} = {:03b}  inverse {}", x.0, f.format(inv));
    }

    let poly = Basis::polynomial(&f);
    let dual = dual_basis(&f, &poly);
    let show = |b: &Basis| {
        b.elements()
            .iter()
            .map(|&x| f.format(x))
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!(
        "polynomial basis ({}) has dual ({})",
        show(&poly),
        show(&dual)
    );

    let sd = find_self_dual_basis(&f)?;
    println!("self-dual basis ({}): {}", show(&sd), is_self_dual(&f, &sd));

    let b = Basis::from_alpha_powers(&f, &[3, 6, 5])?;
    println!(
        "multiplication by a in basis ({}):\n{}",
        show(&b),
        mult_matrix(&f, &b, a)
    );
    Ok(())
}
