//! The two worked codes used throughout the examples and tests.

use crate::code::{CssCode, CyclicCode};
use crate::gf::{Basis, FieldCtx, FieldElement};
use crate::poly::Poly;

/// `[[7,1,3]]` from the binary cyclic code with `g = X⁴+X³+X²+1`.
pub fn steane() -> CssCode {
    let ctx = FieldCtx::gf2();
    let g = Poly::from_bits(ctx, &[1, 0, 1, 1, 1]);
    CyclicCode::new(ctx, 7, &g)
        .and_then(|c| c.to_css())
        .expect("valid preset")
}

/// GF(8) with `α³ + α + 1 = 0`.
pub fn gf8() -> FieldCtx {
    FieldCtx::gf8()
}

/// `(X-1)(X-α)(X-α²)(X-α³)`, the length-7 Reed-Solomon generator.
pub fn rs7_generator() -> Poly {
    let ctx = gf8();
    (0..4).fold(Poly::one(ctx), |acc, i| {
        acc.mul(&Poly::new(ctx, vec![ctx.alpha_pow(i), FieldElement::ONE]))
    })
}

/// The self-dual basis `(α³, α⁶, α⁵)` of GF(8).
pub fn gf8_self_dual_basis() -> Basis {
    Basis::from_alpha_powers(&gf8(), &[3, 6, 5]).expect("valid preset")
}

/// `[[21,3,5]]` quantum Reed-Solomon code, expanded in the self-dual basis.
pub fn qrs21() -> CssCode {
    CyclicCode::new(gf8(), 7, &rs7_generator())
        .and_then(|c| c.to_css())
        .and_then(|c| c.with_basis(gf8_self_dual_basis()))
        .expect("valid preset")
}

pub fn by_name(name: &str) -> Option<CssCode> {
    match name {
        "steane" => Some(steane()),
        "qrs21" => Some(qrs21()),
        _ => None,
    }
}
