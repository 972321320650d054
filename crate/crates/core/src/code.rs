//! Cyclic codes, their duals, and the CSS structure of weakly self-dual ones.
//!
//! A cyclic code of length `N` over GF(2^k) is the ideal generated by a
//! divisor `g` of `X^N - 1`. Generators are normalized to `g(0) = 1` at
//! construction; the dual generator `g⊥ = h₀⁻¹·h^rev` is normalized the
//! same way so that both can drive a multiplication register directly.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{dual_basis, Basis, FieldCtx, FieldElement};
use crate::gf2::{BitMatrix, BitVec};
use crate::poly::{factor_xn_minus_1, Poly};

/// Largest dimension enumerated exhaustively (2^20 words).
pub const MAX_ENUM_DIM: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCode {
    ctx: FieldCtx,
    n: usize,
    g: Poly,
    k: usize,
    h: Poly,
    g_perp: Poly,
}

/// Generator of the dual of the cyclic code generated by `g`, as
/// `h₀⁻¹ · h^rev(X)` with `g·h = X^N - 1` (no further normalization).
pub fn dual_generator(n: usize, g: &Poly) -> Result<Poly> {
    let xn1 = Poly::x_n_minus_1(*g.ctx(), n);
    let (h, r) = xn1.divmod(g)?;
    if !r.is_zero() {
        return Err(Error::NotADivisor {
            n,
            remainder: r.to_coeff_string(),
        });
    }
    let h0_inv = g
        .ctx()
        .inv(h.coeff(0))
        .expect("h(0) != 0 since h divides X^N-1");
    Ok(h.reciprocal().scale(h0_inv))
}

impl CyclicCode {
    pub fn new(ctx: FieldCtx, n: usize, g: &Poly) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroLength);
        }
        if n.is_multiple_of(2) {
            return Err(Error::EvenLength(n));
        }
        assert_eq!(*g.ctx(), ctx, "generator over a different field");
        if g.deg() > n as isize {
            return Err(Error::DegreeTooLarge {
                degree: g.deg(),
                limit: n,
            });
        }
        if g.is_zero() {
            return Err(Error::NotADivisor {
                n,
                remainder: "0".into(),
            });
        }
        if g.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let g = g.unit_constant().expect("nonzero constant term");
        let xn1 = Poly::x_n_minus_1(ctx, n);
        let (h, r) = xn1.divmod(&g)?;
        if !r.is_zero() {
            return Err(Error::NotADivisor {
                n,
                remainder: r.to_coeff_string(),
            });
        }
        let g_perp = dual_generator(n, &g)?
            .unit_constant()
            .expect("reciprocal of h has nonzero constant term");
        let k = n - g.degree().expect("nonzero");
        Ok(CyclicCode {
            ctx,
            n,
            g,
            k,
            h,
            g_perp,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// Generator with `g(0) = 1`.
    pub fn generator(&self) -> &Poly {
        &self.g
    }

    /// Check polynomial `h = (X^N - 1)/g`.
    pub fn check_poly(&self) -> &Poly {
        &self.h
    }

    /// Dual generator with `g⊥(0) = 1`.
    pub fn dual_generator(&self) -> &Poly {
        &self.g_perp
    }

    /// The dual code `C⊥`.
    pub fn dual(&self) -> CyclicCode {
        CyclicCode::new(self.ctx, self.n, &self.g_perp).expect("dual of a cyclic code is cyclic")
    }

    fn check_len(&self, r: &Poly) -> Result<()> {
        if r.deg() >= self.n as isize {
            return Err(Error::DegreeTooLarge {
                degree: r.deg(),
                limit: self.n - 1,
            });
        }
        Ok(())
    }

    /// Membership through the check polynomial: `r·h ≡ 0 mod X^N - 1`.
    pub fn is_member(&self, r: &Poly) -> Result<bool> {
        self.check_len(r)?;
        let xn1 = Poly::x_n_minus_1(self.ctx, self.n);
        Ok(r.mul(&self.h).rem(&xn1)?.is_zero())
    }

    /// `r mod g`.
    pub fn syndrome_poly(&self, r: &Poly) -> Result<Poly> {
        self.check_len(r)?;
        r.rem(&self.g)
    }

    /// `i·g` for a message `i` of degree below `K`.
    pub fn encode(&self, i: &Poly) -> Result<Poly> {
        if i.deg() >= self.k as isize {
            return Err(Error::DegreeTooLarge {
                degree: i.deg(),
                limit: self.k.saturating_sub(1),
            });
        }
        Ok(i.mul(&self.g))
    }

    /// Rows `X^i·g` for `i < K`, as field vectors of length `N`.
    pub fn generator_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.k)
            .map(|i| self.g.shift(i).to_vec(self.n))
            .collect()
    }

    /// Binary generator matrix; only for codes over GF(2).
    pub fn binary_generator_matrix(&self) -> Result<BitMatrix> {
        if !self.ctx.is_binary() {
            return Err(Error::NotBinary);
        }
        let rows = self
            .generator_rows()
            .into_iter()
            .map(|r| BitVec::from_bools(&r.iter().map(|c| c.0 == 1).collect::<Vec<_>>()))
            .collect();
        Ok(BitMatrix::from_rows(self.n, rows))
    }

    /// Weakly self-dual (`C ⊆ C⊥`) iff `g⊥` divides `g`.
    pub fn is_weakly_self_dual(&self) -> bool {
        self.g_perp.divides(&self.g)
    }

    pub fn to_css(&self) -> Result<CssCode> {
        css_decompose(self)
    }
}

impl fmt::Display for CyclicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]_{} g = {}",
            self.n,
            self.k,
            self.ctx.order(),
            self.g
        )
    }
}

/// A weakly self-dual cyclic code with its `g = g⊥ · g̃` decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    code: CyclicCode,
    g_tilde: Poly,
    logical_count: usize,
    basis: Option<Basis>,
}

/// Checks `C ⊆ C⊥`, splits `g = g⊥·g̃`, and verifies that every
/// self-reciprocal factor of `X^N - 1` divides `g̃`.
pub fn css_decompose(code: &CyclicCode) -> Result<CssCode> {
    let (g_tilde, r) = code.g.divmod(&code.g_perp)?;
    if !r.is_zero() {
        return Err(Error::NotWeaklySelfDual {
            remainder: r.to_coeff_string(),
        });
    }
    let fact = factor_xn_minus_1(&code.ctx, code.n)?;
    for f in &fact.self_reciprocal {
        if !f.divides(&g_tilde) {
            return Err(Error::NotWeaklySelfDual {
                remainder: format!("self-reciprocal factor {f} does not divide g~"),
            });
        }
    }
    let basis = code.ctx.is_binary().then(|| Basis::polynomial(&code.ctx));
    Ok(CssCode {
        logical_count: code.n - 2 * code.k,
        code: code.clone(),
        g_tilde,
        basis,
    })
}

impl CssCode {
    /// Attaches the basis used to expand field symbols into qubits.
    pub fn with_basis(mut self, basis: Basis) -> Result<Self> {
        if basis.len() != self.code.ctx.degree() {
            return Err(Error::BasisSize {
                expected: self.code.ctx.degree(),
                found: basis.len(),
            });
        }
        self.basis = Some(basis);
        Ok(self)
    }

    pub fn code(&self) -> &CyclicCode {
        &self.code
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.code.ctx
    }

    pub fn g_tilde(&self) -> &Poly {
        &self.g_tilde
    }

    pub fn g_perp(&self) -> &Poly {
        &self.code.g_perp
    }

    /// `N - 2K` field symbols of logical content.
    pub fn logical_count(&self) -> usize {
        self.logical_count
    }

    pub fn basis(&self) -> Option<&Basis> {
        self.basis.as_ref()
    }

    pub fn require_basis(&self) -> Result<&Basis> {
        self.basis
            .as_ref()
            .ok_or(Error::MissingBasis(self.code.ctx.degree()))
    }

    /// Qubits per register cell.
    pub fn cell_bits(&self) -> usize {
        self.code.ctx.degree()
    }

    pub fn expansion(&self) -> Result<BinaryExpansion> {
        Ok(binary_expansion(&self.code, self.require_basis()?))
    }

    /// `(n, k, d)` of the quantum code; `d` is the CSS distance
    /// `min wt(C₂⊥ \ C₂)`.
    pub fn parameters(&self) -> Result<QeccParams> {
        let exp = self.expansion()?;
        let d = css_distance(&exp.gen_matrix, &exp.dual_gen_matrix)?;
        let kb = self.cell_bits();
        Ok(QeccParams {
            n: kb * self.code.n,
            k: kb * self.logical_count,
            d,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QeccParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

impl fmt::Display for QeccParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{}]]", self.n, self.k, self.d)
    }
}

/// Enumerates every word in the span of `rows` (Gray-code order).
pub fn for_each_codeword(rows: &[BitVec], width: usize, mut f: impl FnMut(&BitVec)) {
    let mut cur = BitVec::zeros(width);
    f(&cur);
    for i in 1u64..1u64 << rows.len() {
        let bit = i.trailing_zeros() as usize;
        cur.xor_assign(&rows[bit]);
        f(&cur);
    }
}

/// True iff every codeword weight is divisible by four.
pub fn doubly_even_check(css: &CssCode) -> Result<bool> {
    is_doubly_even(&css.code)
}

/// Same as [`doubly_even_check`] for any binary cyclic code.
pub fn is_doubly_even(code: &CyclicCode) -> Result<bool> {
    if !code.ctx.is_binary() {
        return Err(Error::NotBinary);
    }
    if code.k > MAX_ENUM_DIM {
        return Err(Error::TooLarge {
            dim: code.k,
            limit: MAX_ENUM_DIM,
        });
    }
    let g = code.binary_generator_matrix()?;
    let mut ok = true;
    for_each_codeword(g.rows(), code.n, |w| ok &= w.weight() % 4 == 0);
    Ok(ok)
}

/// Binary images of a code and its dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryExpansion {
    pub basis: Basis,
    pub dual_basis: Basis,
    /// `kK × kN`, rows are expansions of `b_m · X^i · g(X)`.
    pub gen_matrix: BitMatrix,
    /// `k(N-K) × kN`, expansion of `C⊥` with respect to the dual basis.
    pub dual_gen_matrix: BitMatrix,
}

/// Coordinates of each symbol with respect to `basis`; symbol `i`, bit `j`
/// lands at index `i·k + j`.
pub fn expand_word(basis: &Basis, word: &[FieldElement]) -> BitVec {
    let k = basis.len();
    let mut v = BitVec::zeros(word.len() * k);
    for (i, &c) in word.iter().enumerate() {
        let coords = basis.coords(c);
        for j in 0..k {
            if (coords >> j) & 1 == 1 {
                v.set(i * k + j, true);
            }
        }
    }
    v
}

/// Inverse of [`expand_word`].
pub fn contract_word(basis: &Basis, bits: &BitVec) -> Vec<FieldElement> {
    let k = basis.len();
    (0..bits.len() / k)
        .map(|i| {
            let c = (0..k).fold(0u32, |acc, j| acc | (u32::from(bits.get(i * k + j)) << j));
            basis.from_coords(c)
        })
        .collect()
}

fn expand_generator(ctx: &FieldCtx, basis: &Basis, n: usize, g: &Poly, dim: usize) -> BitMatrix {
    let k = basis.len();
    let mut rows = Vec::with_capacity(dim * k);
    for i in 0..dim {
        let xg = g.shift(i);
        for &b in basis.elements() {
            rows.push(expand_word(basis, &xg.scale(b).to_vec(n)));
        }
    }
    let _ = ctx;
    BitMatrix::from_rows(k * n, rows)
}

pub fn binary_expansion(code: &CyclicCode, basis: &Basis) -> BinaryExpansion {
    let dual = dual_basis(&code.ctx, basis);
    let gen_matrix = expand_generator(&code.ctx, basis, code.n, &code.g, code.k);
    let dual_gen_matrix = expand_generator(&code.ctx, &dual, code.n, &code.g_perp, code.n - code.k);
    BinaryExpansion {
        basis: basis.clone(),
        dual_basis: dual,
        gen_matrix,
        dual_gen_matrix,
    }
}

fn check_dim(gen: &BitMatrix) -> Result<BitMatrix> {
    let (red, _) = gen.rref();
    if red.n_rows() > MAX_ENUM_DIM {
        return Err(Error::TooLarge {
            dim: red.n_rows(),
            limit: MAX_ENUM_DIM,
        });
    }
    Ok(red)
}

/// Minimum Hamming weight over the nonzero row space, by enumeration.
/// Returns 0 for the zero code.
pub fn min_distance(gen: &BitMatrix) -> Result<usize> {
    let red = check_dim(gen)?;
    let mut best = usize::MAX;
    for_each_codeword(red.rows(), gen.n_cols(), |w| {
        let wt = w.weight();
        if wt > 0 {
            best = best.min(wt);
        }
    });
    Ok(if best == usize::MAX { 0 } else { best })
}

/// `min wt(C₂⊥ \ C₂)` for `C₂ ⊆ C₂⊥` given by their generator matrices.
pub fn css_distance(inner: &BitMatrix, outer: &BitMatrix) -> Result<usize> {
    let red = check_dim(outer)?;
    let checks = inner.nullspace();
    let mut best = usize::MAX;
    for_each_codeword(red.rows(), outer.n_cols(), |w| {
        let wt = w.weight();
        if wt > 0 && wt < best && checks.rows().iter().any(|c| c.dot(w)) {
            best = wt;
        }
    });
    Ok(if best == usize::MAX { 0 } else { best })
}

/// Every `j(X)` with `deg j < N - 2K`, in base-q counting order.
pub fn coset_reps(css: &CssCode) -> Result<Vec<Poly>> {
    enumerate_polys(css.ctx(), css.logical_count)
}

/// All polynomials over `ctx` of degree below `len`.
pub fn enumerate_polys(ctx: &FieldCtx, len: usize) -> Result<Vec<Poly>> {
    let bits = ctx.degree() * len;
    if bits > MAX_ENUM_DIM {
        return Err(Error::TooLarge {
            dim: bits,
            limit: MAX_ENUM_DIM,
        });
    }
    let q = ctx.order();
    Ok((0..1u64 << bits)
        .map(|mut idx| {
            let coeffs = (0..len)
                .map(|_| {
                    let c = FieldElement((idx % q) as u32);
                    idx /= q;
                    c
                })
                .collect();
            Poly::new(*ctx, coeffs)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(bits: &[u8]) -> Poly {
        Poly::from_bits(FieldCtx::gf2(), bits)
    }

    fn steane() -> CyclicCode {
        CyclicCode::new(FieldCtx::gf2(), 7, &b(&[1, 0, 1, 1, 1])).unwrap()
    }

    pub(crate) fn rs_code() -> CyclicCode {
        let ctx = FieldCtx::gf8();
        let g = (0..4).fold(Poly::one(ctx), |acc, i| {
            acc.mul(&Poly::new(ctx, vec![ctx.alpha_pow(i), FieldElement::ONE]))
        });
        CyclicCode::new(ctx, 7, &g).unwrap()
    }

    #[test]
    fn steane_construction() {
        let c = steane();
        assert_eq!(c.dimension(), 3);
        assert_eq!(c.check_poly(), &b(&[1, 0, 1, 1]));
        assert_eq!(c.dual_generator(), &b(&[1, 1, 0, 1]));
    }

    #[test]
    fn rs_dual_generator() {
        let c = rs_code();
        let ctx = *c.ctx();
        assert_eq!(c.dimension(), 3);
        assert_eq!(c.dual_generator(), &Poly::parse(ctx, "1,a^2,1,a").unwrap());
        let css = c.to_css().unwrap();
        assert_eq!(css.g_tilde(), &Poly::parse(ctx, "1,1").unwrap());
        assert_eq!(css.logical_count(), 1);
    }

    #[test]
    fn construction_errors() {
        let gf2 = FieldCtx::gf2();
        assert_eq!(
            CyclicCode::new(gf2, 8, &b(&[1, 1])).unwrap_err(),
            Error::EvenLength(8)
        );
        assert_eq!(
            CyclicCode::new(gf2, 7, &b(&[0, 1])).unwrap_err(),
            Error::ZeroConstantTerm
        );
        assert!(matches!(
            CyclicCode::new(gf2, 7, &b(&[1, 0, 1])),
            Err(Error::NotADivisor { .. })
        ));
        let hamming = CyclicCode::new(gf2, 7, &b(&[1, 1, 0, 1])).unwrap();
        assert!(matches!(
            hamming.to_css(),
            Err(Error::NotWeaklySelfDual { .. })
        ));
    }

    #[test]
    fn unit_generator_is_full_space() {
        let c = CyclicCode::new(FieldCtx::gf2(), 7, &b(&[1])).unwrap();
        assert_eq!(c.dimension(), 7);
        assert_eq!(c.check_poly(), &Poly::x_n_minus_1(FieldCtx::gf2(), 7));
        assert_eq!(c.dual_generator(), &Poly::x_n_minus_1(FieldCtx::gf2(), 7));
    }

    #[test]
    fn membership_and_syndrome() {
        let c = steane();
        let g = c.generator().clone();
        assert!(c.is_member(&g).unwrap());
        assert!(c.is_member(&g.shift(1)).unwrap());
        let dual = c.dual();
        let x = b(&[0, 1]);
        assert!(!dual.is_member(&x).unwrap());
        assert_eq!(
            dual.syndrome_poly(&b(&[0, 0, 0, 0, 1])).unwrap(),
            b(&[0, 1, 1])
        );
        assert!(c
            .syndrome_poly(&Poly::zero(FieldCtx::gf2()))
            .unwrap()
            .is_zero());
        assert!(matches!(
            c.is_member(&b(&[0, 0, 0, 0, 0, 0, 0, 1])),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn steane_css() {
        let css = steane().to_css().unwrap();
        assert_eq!(css.g_tilde(), &b(&[1, 1]));
        assert_eq!(css.logical_count(), 1);
        assert!(doubly_even_check(&css).unwrap());
        assert_eq!(
            coset_reps(&css).unwrap(),
            vec![Poly::zero(FieldCtx::gf2()), Poly::one(FieldCtx::gf2())]
        );
        assert_eq!(css.parameters().unwrap().to_string(), "[[7,1,3]]");
    }

    #[test]
    fn zero_code_edge() {
        let gf2 = FieldCtx::gf2();
        let zero = CyclicCode::new(gf2, 7, &Poly::x_n_minus_1(gf2, 7)).unwrap();
        assert_eq!(zero.dimension(), 0);
        assert!(is_doubly_even(&zero).unwrap());
        assert_eq!(enumerate_polys(&gf2, 0).unwrap(), vec![Poly::zero(gf2)]);
    }

    #[test]
    fn min_distance_single_row() {
        let m = BitMatrix::from_u8_rows(&[&[1, 1, 1]]);
        assert_eq!(min_distance(&m).unwrap(), 3);
    }

    #[test]
    fn rs_coset_reps() {
        let css = rs_code().to_css().unwrap();
        assert_eq!(coset_reps(&css).unwrap().len(), 8);
    }

    #[test]
    fn binary_expansion_of_binary_code_is_itself() {
        let c = steane();
        let e = binary_expansion(&c, &Basis::polynomial(c.ctx()));
        assert_eq!(e.gen_matrix, c.binary_generator_matrix().unwrap());
    }

    #[test]
    fn expand_contract_roundtrip() {
        let ctx = FieldCtx::gf8();
        let basis = Basis::from_alpha_powers(&ctx, &[3, 6, 5]).unwrap();
        let w: Vec<FieldElement> = (0..7).map(|i| ctx.alpha_pow(i * 2)).collect();
        assert_eq!(contract_word(&basis, &expand_word(&basis, &w)), w);
    }
}
