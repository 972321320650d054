//! Factors X^n - 1 over GF(2) and GF(8) and lists the weakly self-dual
//! cyclic codes among the divisors.

use qlfsr::code::CyclicCode;
use qlfsr::gf::FieldCtx;
use qlfsr::poly::factor_xn_minus_1;

fn main() -> qlfsr::Result<()> {
    for (f, n) in [
        (FieldCtx::gf2(), 7),
        (FieldCtx::gf2(), 15),
        (FieldCtx::gf8(), 7),
    ] {
        let fact = factor_xn_minus_1(&f, n)?;
        println!("X^{n} - 1 over GF({}):", f.order());
        for p in fact.factors() {
            println!("  {p}");
        }
        let mut wsd = 0;
        for g in fact.divisors() {
            let Ok(code) = CyclicCode::new(f, n, &g) else {
                continue;
            };
            if code.is_weakly_self_dual() && code.dimension() > 0 {
                wsd += 1;
                println!(
                    "  weakly self-dual: g = {}, K = {}",
                    code.generator(),
                    code.dimension()
                );
            }
        }
        println!(
            "  {} divisors, {wsd} weakly self-dual codes",
            fact.divisors().len()
        );
    }
    Ok(())
}
