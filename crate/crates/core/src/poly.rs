//! Polynomials over GF(2^k) and the factorization of `X^N - 1`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement, MAX_SPLITTING_DEGREE};

/// Dense polynomial, `coeffs[i]` is the coefficient of `X^i`. Never has
/// trailing zeros; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: FieldCtx,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(ctx: FieldCtx, mut coeffs: Vec<FieldElement>) -> Self {
        assert!(
            coeffs.iter().all(|&c| ctx.contains(c)),
            "coefficient outside the field"
        );
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { ctx, coeffs }
    }

    pub fn zero(ctx: FieldCtx) -> Self {
        Poly {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Self::constant(ctx, FieldElement::ONE)
    }

    pub fn constant(ctx: FieldCtx, c: FieldElement) -> Self {
        Self::new(ctx, vec![c])
    }

    /// `c · X^n`.
    pub fn monomial(ctx: FieldCtx, n: usize, c: FieldElement) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[n] = c;
        Self::new(ctx, coeffs)
    }

    /// `X^n - 1`.
    pub fn x_n_minus_1(ctx: FieldCtx, n: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[0] = ctx.neg(FieldElement::ONE);
        coeffs[n] = ctx.add(coeffs[n], FieldElement::ONE);
        Self::new(ctx, coeffs)
    }

    /// Binary polynomial from 0/1 coefficients, lowest degree first.
    pub fn from_bits(ctx: FieldCtx, bits: &[u8]) -> Self {
        Self::new(
            ctx,
            bits.iter().map(|&b| FieldElement(u32::from(b))).collect(),
        )
    }

    /// Parses a comma-separated coefficient list, lowest degree first.
    pub fn parse(ctx: FieldCtx, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::zero(ctx));
        }
        let coeffs = s
            .split(',')
            .map(|t| ctx.parse_element(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(ctx, coeffs))
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` standing in for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    /// Coefficients padded with zeros to length `n`.
    pub fn to_vec(&self, n: usize) -> Vec<FieldElement> {
        assert!(
            self.coeffs.len() <= n,
            "polynomial does not fit in {n} cells"
        );
        let mut v = self.coeffs.clone();
        v.resize(n, FieldElement::ZERO);
        v
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.ctx.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(self.ctx, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(
            self.ctx,
            self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.ctx);
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.ctx.add(out[i + j], self.ctx.mul(a, b));
            }
        }
        Poly::new(self.ctx, out)
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        Poly::new(
            self.ctx,
            self.coeffs.iter().map(|&a| self.ctx.mul(a, c)).collect(),
        )
    }

    /// `X^n · self`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElement::ZERO; n];
        coeffs.extend_from_slice(&self.coeffs);
        Poly::new(self.ctx, coeffs)
    }

    /// Schoolbook long division: `self = q·b + r` with `deg r < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = self.ctx.inv(b.lead()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let Some(da) = self.degree() else {
            return Ok((Poly::zero(self.ctx), Poly::zero(self.ctx)));
        };
        if da < db {
            return Ok((Poly::zero(self.ctx), self.clone()));
        }
        let mut q = vec![FieldElement::ZERO; da - db + 1];
        for s in (0..=da - db).rev() {
            let c = self.ctx.mul(r[s + db], inv_lead);
            if c.is_zero() {
                continue;
            }
            q[s] = c;
            for (j, &bj) in b.coeffs.iter().enumerate() {
                r[s + j] = self.ctx.add(r[s + j], self.ctx.neg(self.ctx.mul(c, bj)));
            }
        }
        r.truncate(db);
        Ok((Poly::new(self.ctx, q), Poly::new(self.ctx, r)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// `X^{deg h} · h(1/X)`: the coefficient list reversed.
    pub fn reciprocal(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(self.ctx, c)
    }

    pub fn monic(&self) -> Poly {
        match self.ctx.inv(self.lead()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Rescaled so the constant term is one (requires a nonzero constant term).
    pub fn unit_constant(&self) -> Option<Poly> {
        self.ctx.inv(self.coeff(0)).map(|inv| self.scale(inv))
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| {
                self.ctx.add(self.ctx.mul(acc, x), c)
            })
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Comma-separated coefficient list, lowest degree first (the text format).
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|&c| self.ctx.format(c))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Irreducibility by trial division against every monic polynomial of
    /// degree `1..=deg/2`. Only meant for small degrees and fields.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        let q = self.ctx.order();
        for dd in 1..=d / 2 {
            let count = q.pow(dd as u32);
            for idx in 0..count {
                let mut coeffs = Vec::with_capacity(dd + 1);
                let mut t = idx;
                for _ in 0..dd {
                    coeffs.push(FieldElement((t % q) as u32));
                    t /= q;
                }
                coeffs.push(FieldElement::ONE);
                let cand = Poly::new(self.ctx, coeffs);
                if cand.divides(self) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let cs = self.ctx.format(c);
            match (i, c == FieldElement::ONE) {
                (0, _) => f.write_str(&cs)?,
                (1, true) => f.write_str("X")?,
                (1, false) => write!(f, "{cs}*X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "{cs}*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Factorization of `X^N - 1` into monic irreducibles, split into
/// self-reciprocal factors and reciprocal pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub n: usize,
    pub self_reciprocal: Vec<Poly>,
    pub pairs: Vec<(Poly, Poly)>,
}

impl CyclotomicFactorization {
    /// All irreducible factors, self-reciprocal ones first.
    pub fn factors(&self) -> Vec<Poly> {
        let mut out = self.self_reciprocal.clone();
        for (p, q) in &self.pairs {
            out.push(p.clone());
            out.push(q.clone());
        }
        out
    }

    pub fn product(&self) -> Poly {
        let ctx = self
            .self_reciprocal
            .first()
            .map(|p| *p.ctx())
            .expect("X+1 always divides X^N-1");
        self.factors()
            .iter()
            .fold(Poly::one(ctx), |acc, f| acc.mul(f))
    }

    /// Every monic divisor of `X^N - 1`, indexed by subsets of [`Self::factors`].
    pub fn divisors(&self) -> Vec<Poly> {
        let f = self.factors();
        let ctx = *f[0].ctx();
        (0u64..1 << f.len())
            .map(|mask| {
                f.iter()
                    .enumerate()
                    .filter(|(i, _)| (mask >> i) & 1 == 1)
                    .fold(Poly::one(ctx), |acc, (_, p)| acc.mul(p))
            })
            .collect()
    }
}

/// q-cyclotomic cosets of `{0..n}` with `q = 2^k`, each sorted, ordered by leader.
pub fn cyclotomic_cosets(q: u64, n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut coset = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            coset.push(x);
            x = ((x as u64 * q) % n as u64) as usize;
        }
        coset.sort_unstable();
        out.push(coset);
    }
    out
}

fn mult_order(q: u64, n: usize) -> usize {
    if n == 1 {
        return 1;
    }
    let n = n as u64;
    let mut x = q % n;
    let mut ord = 1;
    while x != 1 {
        x = (x * q) % n;
        ord += 1;
    }
    ord
}

/// Factors `X^N - 1` over `ctx` via cyclotomic cosets in a splitting field.
pub fn factor_xn_minus_1(ctx: &FieldCtx, n: usize) -> Result<CyclotomicFactorization> {
    if n == 0 {
        return Err(Error::ZeroLength);
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenLength(n));
    }
    let k = ctx.degree();
    let q = ctx.order();
    let m = k * mult_order(q, n);
    if m > MAX_SPLITTING_DEGREE {
        return Err(Error::SplittingFieldTooLarge(m));
    }

    // Splitting field, a primitive n-th root of unity in it, and the
    // embedding of ctx back and forth.
    let (big, beta, back): (FieldCtx, FieldElement, HashMap<FieldElement, FieldElement>) = if m == k
    {
        let w = ctx.primitive_element();
        let beta = ctx.pow(w, (q - 1) / n as u64);
        let back = ctx.elements().map(|e| (e, e)).collect();
        (*ctx, beta, back)
    } else {
        let big = FieldCtx::first_irreducible(m)?;
        let w = big.primitive_element();
        let beta = big.pow(w, (big.order() - 1) / n as u64);
        let gamma = if k == 1 {
            FieldElement::ONE
        } else {
            let zeta = big.pow(w, (big.order() - 1) / (q - 1));
            let modulus: Vec<FieldElement> = (0..=k)
                .map(|i| FieldElement((ctx.modulus() >> i) & 1))
                .collect();
            let fpoly = Poly::new(big, modulus);
            (1..q)
                .map(|e| big.pow(zeta, e))
                .find(|&g| fpoly.eval(g).is_zero())
                .expect("modulus splits in the subfield")
        };
        let back = ctx
            .elements()
            .map(|e| {
                let img = (0..k)
                    .filter(|i| (e.0 >> i) & 1 == 1)
                    .fold(FieldElement::ZERO, |acc, i| {
                        big.add(acc, big.pow(gamma, i as u64))
                    });
                (img, e)
            })
            .collect();
        (big, beta, back)
    };

    let cosets = cyclotomic_cosets(q, n);
    let minpoly = |coset: &[usize]| -> Poly {
        let p = coset.iter().fold(Poly::one(big), |acc, &s| {
            let root = big.pow(beta, s as u64);
            acc.mul(&Poly::new(big, vec![big.neg(root), FieldElement::ONE]))
        });
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| {
                *back
                    .get(c)
                    .expect("minimal polynomial lies over the base field")
            })
            .collect();
        Poly::new(*ctx, coeffs)
    };

    let mut leader_of = vec![0usize; n];
    for (ci, c) in cosets.iter().enumerate() {
        for &s in c {
            leader_of[s] = ci;
        }
    }
    let mut self_reciprocal = Vec::new();
    let mut pairs = Vec::new();
    for (ci, c) in cosets.iter().enumerate() {
        let partner = leader_of[(n - c[0]) % n];
        if partner == ci {
            self_reciprocal.push(minpoly(c));
        } else if ci < partner {
            pairs.push((minpoly(c), minpoly(&cosets[partner])));
        }
    }
    Ok(CyclotomicFactorization {
        n,
        self_reciprocal,
        pairs,
    })
}
