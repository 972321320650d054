//! Classical register runs: multiplication, division and syndrome
//! extraction, with the per-step cell contents.

use qlfsr::gf::FieldCtx;
use qlfsr::lfsr::{div_run, mult_run, step_matrix, syndrome_run, StepKind};
use qlfsr::poly::Poly;

fn main() -> qlfsr::Result<()> {
    let f = FieldCtx::gf2();
    let g = Poly::from_bits(f, &[1, 1, 0, 1]);
    let n = 7;

    let i = Poly::from_bits(f, &[1, 0, 1, 1]);
    let e = step_matrix(StepKind::MultE, &g, n)?;
    let mut init = vec![Default::default(); 3];
    init.extend(i.to_vec(4));
    for (s, cells) in e.trace(&init, 4).iter().enumerate() {
        let bits: String = cells
            .iter()
            .map(|c| if c.0 == 1 { '1' } else { '0' })
            .collect();
        println!("mult step {s}: {bits}");
    }
    println!(
        "i*g             = {}",
        mult_run(&g, n, &Poly::zero(f), &i, 4)?
    );
    println!(
        "i*g + X^4*(1+X) = {}",
        mult_run(&g, n, &Poly::from_bits(f, &[1, 1]), &i, 4)?
    );

    let r = Poly::from_bits(f, &[0, 0, 0, 0, 1, 0, 1]);
    let (q, rem) = div_run(&g, n, &r)?;
    println!("{r} = ({q})({g}) + {rem}");
    let (data, syn) = syndrome_run(&g, n, &r)?;
    println!("syndrome register: data {data}, ancillas {syn}");

    let f8 = FieldCtx::gf8();
    let g8 = Poly::new(f8, vec![f8.alpha_pow(6), f8.alpha(), f8.alpha_pow(0)]);
    let r8 = Poly::new(
        f8,
        vec![
            f8.alpha(),
            Default::default(),
            f8.alpha_pow(4),
            f8.alpha_pow(2),
        ],
    );
    let (_, syn8) = syndrome_run(&g8, 7, &r8)?;
    println!("GF(8): ({r8}) mod ({g8}) = {syn8}");
    Ok(())
}
